//! Plain-text netlist format, one element per line with one-based modes:
//!
//! ```text
//! # linear cluster
//! MODES 4
//! F 4
//! SWAP 1 2
//! Finv 1
//! BS+ 3 4 0.70710678118654746
//! BS- 2 3 0.44721359549995793
//! ```
//!
//! Elements are listed in operator-product order (the last line acts first).
//! `MODES` is optional; without it the mode count is the largest index used.
//! Blank lines and `#` comments are ignored. Transmittances are written with
//! 17 significant digits, so [`write_netlist`] and [`parse_netlist`]
//! round-trip bit-exactly.

use std::fmt::Write;

use super::{BsSign, NetworkElement, NetworkProgram};
use crate::error::{Error, Result};

pub fn parse_netlist(text: &str) -> Result<NetworkProgram> {
    let mut declared: Option<usize> = None;
    let mut elements = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Netlist {
            line: line_no,
            message,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let mode = |tok: &str| -> Result<usize> {
            match tok.parse::<usize>() {
                Ok(m) if m >= 1 => Ok(m - 1),
                _ => Err(err(format!("expected a one-based mode index, got `{tok}`"))),
            }
        };
        let expect_args = |n: usize| -> Result<()> {
            if tokens.len() != n + 1 {
                return Err(err(format!(
                    "`{}` takes {n} argument(s), got {}",
                    tokens[0],
                    tokens.len() - 1
                )));
            }
            Ok(())
        };
        let element = match tokens[0] {
            "MODES" => {
                expect_args(1)?;
                if declared.is_some() {
                    return Err(err("duplicate MODES line".into()));
                }
                declared = Some(
                    tokens[1]
                        .parse::<usize>()
                        .ok()
                        .filter(|&n| n >= 1)
                        .ok_or_else(|| err(format!("invalid mode count `{}`", tokens[1])))?,
                );
                continue;
            }
            "F" => {
                expect_args(1)?;
                NetworkElement::Fourier(mode(tokens[1])?)
            }
            "Finv" => {
                expect_args(1)?;
                NetworkElement::InverseFourier(mode(tokens[1])?)
            }
            "SWAP" => {
                expect_args(2)?;
                NetworkElement::Swap(mode(tokens[1])?, mode(tokens[2])?)
            }
            kind @ ("BS+" | "BS-") => {
                expect_args(3)?;
                let t: f64 = tokens[3]
                    .parse()
                    .map_err(|_| err(format!("invalid transmittance `{}`", tokens[3])))?;
                NetworkElement::BeamSplitter {
                    i: mode(tokens[1])?,
                    j: mode(tokens[2])?,
                    t,
                    sign: if kind == "BS+" {
                        BsSign::Plus
                    } else {
                        BsSign::Minus
                    },
                }
            }
            other => return Err(err(format!("unknown element `{other}`"))),
        };
        // range is checked against the final mode count below
        element
            .validate(usize::MAX)
            .map_err(|e| err(e.to_string()))?;
        elements.push((line_no, element));
    }

    let used = elements
        .iter()
        .flat_map(|(_, e)| e.modes())
        .max()
        .map(|m| m + 1);
    let n_modes = match (declared, used) {
        (Some(n), _) => n,
        (None, Some(n)) => n,
        (None, None) => {
            return Err(Error::Netlist {
                line: 0,
                message: "empty netlist without a MODES line".into(),
            })
        }
    };
    for (line, e) in &elements {
        e.validate(n_modes).map_err(|e| Error::Netlist {
            line: *line,
            message: e.to_string(),
        })?;
    }
    NetworkProgram::new(n_modes, elements.into_iter().map(|(_, e)| e).collect())
}

pub fn write_netlist(program: &NetworkProgram) -> String {
    let mut out = String::new();
    writeln!(out, "MODES {}", program.n_modes()).unwrap();
    for e in program.elements() {
        match *e {
            NetworkElement::Fourier(k) => writeln!(out, "F {}", k + 1),
            NetworkElement::InverseFourier(k) => writeln!(out, "Finv {}", k + 1),
            NetworkElement::Swap(i, j) => writeln!(out, "SWAP {} {}", i + 1, j + 1),
            NetworkElement::BeamSplitter { i, j, t, sign } => {
                let kind = if sign == BsSign::Plus { "BS+" } else { "BS-" };
                writeln!(out, "{kind} {} {} {}", i + 1, j + 1, format_g17(t))
            }
        }
        .unwrap();
    }
    out
}

/// C-style `%.17g`: 17 significant digits, trailing zeros removed.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
