use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::cluster::{ClusterKind, GraphSpec};
use crate::error::{Error, Result};
use crate::gaussian::{ComplexUnitary, SqueezedInputSpec};
use crate::network::{parse_netlist, NetworkProgram};

/// Which beam-splitter network to simulate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NetworkChoice {
    Named(ClusterKind),
    Netlist { netlist: PathBuf },
}

/// Graph whose nullifiers are reported; defaults to the named network's own.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphConfig {
    Named(ClusterKind),
    Custom {
        /// One-based node pairs.
        edges: Vec<[usize; 2]>,
        /// Node count; defaults to the network's mode count.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        nodes: Option<usize>,
    },
}

/// A scalar applied to every mode, or one value per mode.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PerMode {
    Uniform(f64),
    Each(Vec<f64>),
}

impl PerMode {
    pub fn resolve(&self, n_modes: usize, field: &str) -> Result<Vec<f64>> {
        let values = match self {
            PerMode::Uniform(v) => vec![*v; n_modes],
            PerMode::Each(v) if v.len() == 1 => vec![v[0]; n_modes],
            PerMode::Each(v) if v.len() == n_modes => v.clone(),
            PerMode::Each(v) => {
                return Err(Error::config(
                    field,
                    format!("expected 1 or {n_modes} values, got {}", v.len()),
                ))
            }
        };
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::config(
                format!("{field}[{}]", k + 1),
                "value must be finite",
            ));
        }
        Ok(values)
    }
}

impl From<f64> for PerMode {
    fn from(v: f64) -> Self {
        PerMode::Uniform(v)
    }
}

impl From<Vec<f64>> for PerMode {
    fn from(v: Vec<f64>) -> Self {
        PerMode::Each(v)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LossPlacement {
    /// Loss on the squeezed inputs, before the network.
    Pre,
    /// Loss on the output modes, after the network.
    #[default]
    Post,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

/// Seeded Monte-Carlo evaluation of the phase jitter instead of the closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JitterMonteCarlo {
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub network: NetworkChoice,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphConfig>,
    /// Input squeezing in dB (≤ 0).
    #[serde(default = "zero")]
    pub squeezing_db: PerMode,
    /// Input antisqueezing in dB; pure inputs when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antisqueezing_db: Option<PerMode>,
    /// Transmissivity per mode.
    #[serde(default = "one")]
    pub loss: PerMode,
    #[serde(default)]
    pub loss_placement: LossPlacement,
    /// Phase-jitter standard deviation per output mode, radians.
    #[serde(default = "zero")]
    pub jitter: PerMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jitter_mc: Option<JitterMonteCarlo>,
    #[serde(default = "yes")]
    pub witness: bool,
    #[serde(default)]
    pub verify_decomposition: bool,
    #[serde(default)]
    pub format: OutputFormat,
}

fn zero() -> PerMode {
    PerMode::Uniform(0.0)
}

fn one() -> PerMode {
    PerMode::Uniform(1.0)
}

fn yes() -> bool {
    true
}

impl ScenarioConfig {
    /// Ideal scenario on a named network with uniform pure squeezing.
    pub fn named(kind: ClusterKind, squeezing_db: f64) -> Self {
        Self {
            network: NetworkChoice::Named(kind),
            graph: None,
            squeezing_db: PerMode::Uniform(squeezing_db),
            antisqueezing_db: None,
            loss: one(),
            loss_placement: LossPlacement::Post,
            jitter: zero(),
            jitter_mc: None,
            witness: true,
            verify_decomposition: false,
            format: OutputFormat::Json,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::config("config", e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Loads the netlist, builds the graph and checks every per-mode value.
    pub fn resolve(&self) -> Result<ResolvedScenario> {
        let (unitary, program, kind) = match &self.network {
            NetworkChoice::Named(kind) => (kind.unitary(), Some(kind.program()), Some(*kind)),
            NetworkChoice::Netlist { netlist } => {
                let text = std::fs::read_to_string(netlist).map_err(|e| Error::Io {
                    path: netlist.display().to_string(),
                    message: e.to_string(),
                })?;
                let program = parse_netlist(&text).map_err(|e| Error::config("network", e))?;
                (program.matrix(), Some(program), None)
            }
        };
        let n = unitary.n_modes();

        let graph = match (&self.graph, kind) {
            (Some(GraphConfig::Named(g)), _) => {
                if n != 4 {
                    return Err(Error::config(
                        "graph",
                        format!("{g} needs 4 modes, network has {n}"),
                    ));
                }
                g.graph()
            }
            (Some(GraphConfig::Custom { edges, nodes }), _) => {
                let nodes = nodes.unwrap_or(n);
                if nodes != n {
                    return Err(Error::config(
                        "graph.nodes",
                        format!("graph has {nodes} nodes, network has {n} modes"),
                    ));
                }
                let mut zero_based = Vec::with_capacity(edges.len());
                for (k, &[a, b]) in edges.iter().enumerate() {
                    if a == 0 || b == 0 {
                        return Err(Error::config(
                            format!("graph.edges[{}]", k + 1),
                            "nodes are one-based",
                        ));
                    }
                    zero_based.push((a - 1, b - 1));
                }
                GraphSpec::custom(nodes, &zero_based)
                    .map_err(|e| Error::config("graph.edges", e))?
            }
            (None, Some(kind)) => kind.graph(),
            (None, None) => {
                return Err(Error::config(
                    "graph",
                    "a graph is required for netlist networks",
                ))
            }
        };

        let squeezing = self.squeezing_db.resolve(n, "squeezing_db")?;
        let antisqueezing = match &self.antisqueezing_db {
            Some(a) => Some(a.resolve(n, "antisqueezing_db")?),
            None => None,
        };
        let mut inputs = Vec::with_capacity(n);
        for (k, &s) in squeezing.iter().enumerate() {
            let spec = match &antisqueezing {
                None => SqueezedInputSpec::pure(s)
                    .map_err(|e| Error::config(format!("squeezing_db[{}]", k + 1), e))?,
                Some(a) => SqueezedInputSpec::impure(s, a[k]).map_err(|e| {
                    let field = match e {
                        Error::Unphysical { .. } => "antisqueezing_db",
                        _ => "squeezing_db",
                    };
                    Error::config(format!("{field}[{}]", k + 1), e)
                })?,
            };
            inputs.push(spec);
        }

        let eta = self.loss.resolve(n, "loss")?;
        if let Some(k) = eta.iter().position(|e| !(0.0..=1.0).contains(e)) {
            return Err(Error::config(
                format!("loss[{}]", k + 1),
                Error::Transmissivity(eta[k]),
            ));
        }
        let sigma = self.jitter.resolve(n, "jitter")?;
        if let Some(k) = sigma.iter().position(|s| *s < 0.0) {
            return Err(Error::config(
                format!("jitter[{}]", k + 1),
                Error::NegativeJitter(sigma[k]),
            ));
        }
        if let Some(mc) = &self.jitter_mc {
            if mc.samples == 0 {
                return Err(Error::config("jitter_mc.samples", Error::ZeroSamples));
            }
        }

        Ok(ResolvedScenario {
            kind,
            unitary,
            program,
            graph,
            inputs,
            eta,
            sigma,
        })
    }
}

/// A validated scenario ready to simulate.
#[derive(Clone, Debug)]
pub struct ResolvedScenario {
    /// Set when the network is one of the named cluster networks.
    pub kind: Option<ClusterKind>,
    pub unitary: ComplexUnitary,
    pub program: Option<NetworkProgram>,
    pub graph: GraphSpec,
    pub inputs: Vec<SqueezedInputSpec>,
    pub eta: Vec<f64>,
    pub sigma: Vec<f64>,
}
