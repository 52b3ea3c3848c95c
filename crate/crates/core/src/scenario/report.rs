use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::config::ScenarioConfig;
use crate::cluster::{EquivalenceCheck, NullifierReport, WitnessReport};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputLevel {
    /// One-based mode.
    pub mode: usize,
    pub squeezing_db: f64,
    pub antisqueezing_db: f64,
    /// `r` with `e^{−2r} = 10^{squeezing_db/10}`.
    pub squeezing_parameter: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionCheck {
    pub name: String,
    pub max_deviation: f64,
    /// Best-fit global phase as `[re, im]`.
    pub global_phase: [f64; 2],
    pub deviation_after_phase: f64,
    pub within_tolerance: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub tolerance: f64,
    pub checks: Vec<DecompositionCheck>,
    pub all_within_tolerance: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub config: ScenarioConfig,
    pub n_modes: usize,
    pub network: String,
    /// Element product in operator order, one-based modes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub program: Option<String>,
    pub inputs: Vec<InputLevel>,
    pub nullifiers: NullifierReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<EquivalenceCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fully_inseparable: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionReport>,
}

impl ScenarioReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::config("report", e))
    }

    /// Human-readable table: variances to 3 decimals, dB to 1 decimal,
    /// witness sums to 2 decimals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "network: {} ({} modes)", self.network, self.n_modes).unwrap();
        if let Some(p) = &self.program {
            writeln!(out, "program: {p}").unwrap();
        }
        writeln!(out, "\ninputs").unwrap();
        writeln!(out, "  mode  squeezing  antisqueezing").unwrap();
        for i in &self.inputs {
            writeln!(
                out,
                "  {:<4}  {:>6.1} dB  {:>+9.1} dB",
                i.mode, i.squeezing_db, i.antisqueezing_db
            )
            .unwrap();
        }

        writeln!(out, "\nnullifiers ({})", self.nullifiers.graph).unwrap();
        let width = self
            .nullifiers
            .entries
            .iter()
            .map(|e| e.combination.len())
            .max()
            .unwrap_or(0)
            .max("combination".len());
        writeln!(
            out,
            "  node  {:<width$}  variance  reference     level  ideal",
            "combination"
        )
        .unwrap();
        for e in &self.nullifiers.entries {
            let ideal = e.analytic.map_or("-".to_string(), |a| format!("{a:.3}"));
            writeln!(
                out,
                "  {:<4}  {:<width$}  {:>8.3}  {:>9.3}  {:>5.1} dB  {ideal}",
                e.node, e.combination, e.variance, e.reference, e.level_db
            )
            .unwrap();
        }

        if let Some(eq) = &self.equivalence {
            writeln!(out, "\nlinear/square identities").unwrap();
            for id in &eq.identities {
                writeln!(
                    out,
                    "  {} = {}  residual {:.1e}",
                    id.square_side, id.linear_side, id.residual
                )
                .unwrap();
            }
        }

        if let Some(w) = &self.witness {
            match &w.delegated_to {
                Some(g) => {
                    writeln!(out, "\nwitness (evaluated on the equivalent {g} state)").unwrap()
                }
                None => writeln!(out, "\nwitness").unwrap(),
            }
            for i in &w.inequalities {
                let terms = match i.nodes {
                    Some([a, b]) => format!("V{a} + V{b}"),
                    None => format!("#{}", i.id),
                };
                let mark = if i.satisfied { "<" } else { ">=" };
                writeln!(out, "  {terms}: {:.2} {mark} {}", i.lhs, i.bound).unwrap();
            }
            let verdict = if w.fully_inseparable {
                "fully inseparable"
            } else {
                "not certified"
            };
            writeln!(out, "verdict: {verdict}").unwrap();
        }

        if let Some(d) = &self.decomposition {
            out.push('\n');
            out.push_str(&d.to_text());
        }
        out
    }
}

impl DecompositionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "decompositions (tolerance {:e})", self.tolerance).unwrap();
        for c in &self.checks {
            let status = if c.within_tolerance { "ok" } else { "MISMATCH" };
            write!(
                out,
                "  {:<28} max deviation {:.2e}",
                c.name, c.max_deviation
            )
            .unwrap();
            if c.max_deviation >= self.tolerance {
                write!(
                    out,
                    ", global phase {:.6}{:+.6}i, residual {:.2e}",
                    c.global_phase[0], c.global_phase[1], c.deviation_after_phase
                )
                .unwrap();
            }
            writeln!(out, "  {status}").unwrap();
        }
        out
    }
}
