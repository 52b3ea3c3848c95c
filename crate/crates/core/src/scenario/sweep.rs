use std::fmt::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;

use super::config::{PerMode, ScenarioConfig};
use super::run_scenario;
use crate::error::{Error, Result};
use crate::network::format_g17;

/// Config scalar varied by a sweep, applied uniformly to all modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepAxis {
    SqueezingDb,
    AntisqueezingDb,
    /// Transmissivity `eta`.
    Loss,
    /// Phase-jitter `sigma`.
    Jitter,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::SqueezingDb => "squeezing_db",
            SweepAxis::AntisqueezingDb => "antisqueezing_db",
            SweepAxis::Loss => "loss",
            SweepAxis::Jitter => "jitter",
        }
    }

    fn apply(self, cfg: &mut ScenarioConfig, value: f64) {
        let v = PerMode::Uniform(value);
        match self {
            SweepAxis::SqueezingDb => cfg.squeezing_db = v,
            SweepAxis::AntisqueezingDb => cfg.antisqueezing_db = Some(v),
            SweepAxis::Loss => cfg.loss = v,
            SweepAxis::Jitter => cfg.jitter = v,
        }
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "squeezing_db" | "squeezing" => Ok(SweepAxis::SqueezingDb),
            "antisqueezing_db" | "antisqueezing" => Ok(SweepAxis::AntisqueezingDb),
            "loss" | "eta" => Ok(SweepAxis::Loss),
            "jitter" | "sigma" => Ok(SweepAxis::Jitter),
            other => Err(Error::UnknownAxis(other.to_string())),
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Evenly spaced grid of `steps` points from `from` to `to` inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn grid(&self) -> Result<Vec<f64>> {
        if self.steps == 0 {
            return Err(Error::config("steps", "a sweep needs at least one step"));
        }
        for (field, v) in [("from", self.from), ("to", self.to)] {
            if !v.is_finite() {
                return Err(Error::config(field, "value must be finite"));
            }
        }
        if self.steps == 1 {
            return Ok(vec![self.from]);
        }
        let last = self.steps - 1;
        Ok((0..self.steps)
            .map(|i| {
                if i == last {
                    self.to
                } else {
                    self.from + (self.to - self.from) * i as f64 / last as f64
                }
            })
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub index: usize,
    pub value: f64,
    pub variances: Vec<f64>,
    pub levels_db: Vec<f64>,
    pub lhs: Vec<f64>,
    pub fully_inseparable: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub axis: SweepAxis,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// Column names: `index`, the axis name, `var_1..var_n`, `db_1..db_n`,
    /// then `lhs_1..lhs_k` and `fully_inseparable` when the witness is on.
    pub fn columns(&self) -> Vec<String> {
        let mut cols = vec!["index".to_string(), self.axis.name().to_string()];
        if let Some(first) = self.rows.first() {
            let n = first.variances.len();
            cols.extend((1..=n).map(|k| format!("var_{k}")));
            cols.extend((1..=n).map(|k| format!("db_{k}")));
            cols.extend((1..=first.lhs.len()).map(|k| format!("lhs_{k}")));
            if first.fully_inseparable.is_some() {
                cols.push("fully_inseparable".into());
            }
        }
        cols
    }

    /// CSV with 17 significant digits per number.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns().join(",");
        out.push('\n');
        for row in &self.rows {
            let mut fields = vec![row.index.to_string(), format_g17(row.value)];
            fields.extend(row.variances.iter().map(|v| format_g17(*v)));
            fields.extend(row.levels_db.iter().map(|v| format_g17(*v)));
            fields.extend(row.lhs.iter().map(|v| format_g17(*v)));
            if let Some(f) = row.fully_inseparable {
                fields.push(f.to_string());
            }
            writeln!(out, "{}", fields.join(",")).unwrap();
        }
        out
    }
}

/// Runs `cfg` at every grid point. Points are evaluated in parallel and
/// returned in grid order.
pub fn run_sweep(cfg: &ScenarioConfig, spec: &SweepSpec) -> Result<SweepTable> {
    let grid = spec.grid()?;
    let rows = grid
        .par_iter()
        .enumerate()
        .map(|(index, &value)| {
            let mut point = cfg.clone();
            spec.axis.apply(&mut point, value);
            let report = run_scenario(&point)?;
            Ok(SweepRow {
                index,
                value,
                variances: report.nullifiers.variances(),
                levels_db: report.nullifiers.levels_db(),
                lhs: report
                    .witness
                    .as_ref()
                    .map(|w| w.inequalities.iter().map(|i| i.lhs).collect())
                    .unwrap_or_default(),
                fully_inseparable: report.fully_inseparable,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        axis: spec.axis,
        rows,
    })
}
