//! Cluster graphs, nullifier variances and the full-inseparability witness.
//!
//! For a graph `G` the nullifier of node `a` is `p_a − Σ_{b∈N_a} x_b`; a
//! cluster state drives all of them to zero variance as squeezing grows.
//! Nodes are one-based in reports and labels, zero-based in the API.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{variance_to_db, ComplexUnitary, GaussianState, VACUUM_VARIANCE};
use crate::network;

/// Right-hand side of every witness inequality.
pub const WITNESS_BOUND: f64 = 1.0;

/// Tolerance for the linear/square operator identities.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

/// The three four-mode cluster states built here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClusterKind {
    #[serde(rename = "linear4")]
    Linear,
    #[serde(rename = "square4")]
    Square,
    #[serde(rename = "tshape4")]
    TShape,
}

impl ClusterKind {
    pub const ALL: [ClusterKind; 3] = [
        ClusterKind::Linear,
        ClusterKind::Square,
        ClusterKind::TShape,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClusterKind::Linear => "linear4",
            ClusterKind::Square => "square4",
            ClusterKind::TShape => "tshape4",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    pub fn graph(self) -> GraphSpec {
        GraphSpec::named(self)
    }

    pub fn unitary(self) -> ComplexUnitary {
        match self {
            ClusterKind::Linear => network::linear_cluster_unitary(),
            ClusterKind::Square => network::square_cluster_unitary(),
            ClusterKind::TShape => network::tshape_cluster_unitary(),
        }
    }

    pub fn program(self) -> network::NetworkProgram {
        match self {
            ClusterKind::Linear => network::linear_program(),
            ClusterKind::Square => network::square_program(),
            ClusterKind::TShape => network::tshape_program(),
        }
    }

    /// Zero-based node pairs summed in each witness inequality.
    pub fn witness_pairs(self) -> &'static [(usize, usize)] {
        match self {
            // square verdicts are evaluated on the locally equivalent linear state
            ClusterKind::Linear | ClusterKind::Square => &[(0, 1), (2, 1), (2, 3)],
            ClusterKind::TShape => &[(1, 0), (2, 0), (3, 0)],
        }
    }
}

impl fmt::Display for ClusterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Undirected simple graph on `n_nodes` nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSpec {
    n_nodes: usize,
    edges: BTreeSet<(usize, usize)>,
    kind: Option<ClusterKind>,
}

/// Graph label as it appears in configs and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Named(ClusterKind),
    Custom,
}

impl GraphSpec {
    fn named(kind: ClusterKind) -> Self {
        let edges: &[(usize, usize)] = match kind {
            ClusterKind::Linear => &[(0, 1), (1, 2), (2, 3)],
            ClusterKind::Square => &[(0, 2), (0, 3), (1, 2), (1, 3)],
            ClusterKind::TShape => &[(0, 1), (0, 2), (0, 3)],
        };
        Self {
            n_nodes: 4,
            edges: edges.iter().copied().collect(),
            kind: Some(kind),
        }
    }

    pub fn linear4() -> Self {
        Self::named(ClusterKind::Linear)
    }

    pub fn square4() -> Self {
        Self::named(ClusterKind::Square)
    }

    pub fn tshape4() -> Self {
        Self::named(ClusterKind::TShape)
    }

    /// Custom graph from zero-based edges; duplicates and orientation are
    /// ignored.
    pub fn custom(n_nodes: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n_nodes == 0 {
            return Err(Error::InvalidGraph("graph needs at least one node".into()));
        }
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on node {}", a + 1)));
            }
            if a >= n_nodes || b >= n_nodes {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) outside {n_nodes} nodes",
                    a + 1,
                    b + 1
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Self {
            n_nodes,
            edges: set,
            kind: None,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    /// Normalised zero-based edges `(a, b)` with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn kind(&self) -> GraphKind {
        match self.kind {
            Some(k) => GraphKind::Named(k),
            None => GraphKind::Custom,
        }
    }

    pub fn cluster_kind(&self) -> Option<ClusterKind> {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.map_or("custom", ClusterKind::name)
    }

    pub fn neighbors(&self, node: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match node {
                n if n == a => Some(b),
                n if n == b => Some(a),
                _ => None,
            })
            .collect()
    }

    fn check_node(&self, node: usize) -> Result<()> {
        if node >= self.n_nodes {
            return Err(Error::ModeOutOfRange {
                mode: node,
                n_modes: self.n_nodes,
            });
        }
        Ok(())
    }

    /// Coefficients of `p_a − Σ_{b∈N_a} x_b` over `(x_1..x_n, p_1..p_n)`.
    pub fn nullifier_coefficients(&self, node: usize) -> Result<Vec<f64>> {
        self.check_node(node)?;
        let n = self.n_nodes;
        let mut c = vec![0.0; 2 * n];
        c[n + node] = 1.0;
        for b in self.neighbors(node) {
            c[b] = -1.0;
        }
        Ok(c)
    }

    /// E.g. `p1 - x2 - x3`.
    pub fn nullifier_label(&self, node: usize) -> Result<String> {
        self.check_node(node)?;
        let mut s = format!("p{}", node + 1);
        for b in self.neighbors(node) {
            s.push_str(&format!(" - x{}", b + 1));
        }
        Ok(s)
    }

    /// Vacuum-input variance `k_a/4` with `k_a = 1 + |N_a|` unit terms.
    pub fn vacuum_reference(&self, node: usize) -> Result<f64> {
        self.check_node(node)?;
        Ok((1 + self.neighbors(node).len()) as f64 * VACUUM_VARIANCE)
    }
}

/// Free-function form of [`GraphSpec::nullifier_coefficients`].
pub fn nullifier_coefficients(g: &GraphSpec, node: usize) -> Result<Vec<f64>> {
    g.nullifier_coefficients(node)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NullifierEntry {
    /// One-based node label.
    pub node: usize,
    pub combination: String,
    pub variance: f64,
    pub reference: f64,
    pub level_db: f64,
    /// Closed-form ideal value, for the named cluster states.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analytic: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NullifierReport {
    pub graph: String,
    pub entries: Vec<NullifierEntry>,
}

impl NullifierReport {
    pub fn variances(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.variance).collect()
    }

    pub fn levels_db(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.level_db).collect()
    }

    pub fn attach_analytic(&mut self, values: &[f64]) -> Result<()> {
        if values.len() != self.entries.len() {
            return Err(Error::DimensionMismatch {
                expected: self.entries.len(),
                found: values.len(),
            });
        }
        for (e, v) in self.entries.iter_mut().zip(values) {
            e.analytic = Some(*v);
        }
        Ok(())
    }
}

pub fn nullifier_report(state: &GaussianState, g: &GraphSpec) -> Result<NullifierReport> {
    if state.n_modes() != g.n_nodes() {
        return Err(Error::DimensionMismatch {
            expected: g.n_nodes(),
            found: state.n_modes(),
        });
    }
    let entries = (0..g.n_nodes())
        .map(|a| {
            let variance = state.combination_variance(&g.nullifier_coefficients(a)?)?;
            let reference = g.vacuum_reference(a)?;
            Ok(NullifierEntry {
                node: a + 1,
                combination: g.nullifier_label(a)?,
                variance,
                reference,
                level_db: variance_to_db(variance, reference)?,
                analytic: None,
            })
        })
        .collect::<Result<_>>()?;
    Ok(NullifierReport {
        graph: g.name().to_string(),
        entries,
    })
}

/// Closed-form nullifier variances for pure `p`-squeezed inputs with
/// squeezing parameters `r`, read off the residual operator combinations
/// (each residual is a sum of `e^{−r_i} p_i^{(0)}` terms with vacuum
/// variance 1/4).
pub fn analytic_residual_variances(kind: ClusterKind, r: [f64; 4]) -> [f64; 4] {
    let v = r.map(|ri| (-2.0 * ri).exp() * VACUUM_VARIANCE);
    match kind {
        ClusterKind::Linear => [
            2.0 * v[0],
            2.5 * v[2] + 0.5 * v[3],
            0.5 * v[0] + 2.5 * v[1],
            2.0 * v[3],
        ],
        ClusterKind::Square => [
            0.5 * v[0] + 2.5 * v[1],
            0.5 * v[0] + 2.5 * v[1],
            2.5 * v[2] + 0.5 * v[3],
            2.5 * v[2] + 0.5 * v[3],
        ],
        ClusterKind::TShape => [
            4.0 * v[1],
            2.0 * v[0],
            0.5 * v[0] + v[2] + 0.5 * v[3],
            0.5 * v[0] + v[2] + 0.5 * v[3],
        ],
    }
}

/// Variances of both sides of one linear/square quadrature identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityResidual {
    pub square_side: String,
    pub linear_side: String,
    pub square_variance: f64,
    pub linear_variance: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceCheck {
    pub identities: Vec<IdentityResidual>,
    pub max_residual: f64,
    pub holds: bool,
}

/// Checks the four identities relating the square-cluster nullifiers to
/// combinations of linear-cluster quadratures, evaluating the square side on
/// `diag(−1, −i, i, 1)` applied to `linear_state`.
pub fn equivalence_identities_check(linear_state: &GaussianState) -> Result<EquivalenceCheck> {
    if linear_state.n_modes() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: linear_state.n_modes(),
        });
    }
    let square_state = linear_state.apply_unitary(&network::square_from_linear_phases())?;
    let square = GraphSpec::square4();

    // (x1..x4, p1..p4) coefficients of the linear-state combinations
    #[rustfmt::skip]
    let linear_sides: [([f64; 8], &str); 4] = [
        ([0.0, 0.0, 0.0, -1.0, -1.0, 0.0, 1.0, 0.0], "-pL1 + pL3 - xL4"),
        ([0.0, -1.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0], "-xL2 + pL3 - xL4"),
        ([1.0, 0.0, 1.0, 0.0, 0.0, -1.0, 0.0, 0.0], "xL1 - pL2 + xL3"),
        ([1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 1.0], "xL1 - pL2 + pL4"),
    ];

    let mut identities = Vec::with_capacity(4);
    let mut holds = true;
    let mut max_residual: f64 = 0.0;
    for (node, (coeffs, label)) in linear_sides.iter().enumerate() {
        let square_variance =
            square_state.combination_variance(&square.nullifier_coefficients(node)?)?;
        let linear_variance = linear_state.combination_variance(coeffs)?;
        let residual = (square_variance - linear_variance).abs();
        let scale = square_variance.abs().max(linear_variance.abs()).max(1.0);
        holds &= residual < IDENTITY_TOLERANCE * scale;
        max_residual = max_residual.max(residual);
        identities.push(IdentityResidual {
            square_side: square
                .nullifier_label(node)?
                .replace('p', "pS")
                .replace('x', "xS"),
            linear_side: label.to_string(),
            square_variance,
            linear_variance,
            residual,
        });
    }
    Ok(EquivalenceCheck {
        identities,
        max_residual,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessInequality {
    pub id: usize,
    /// One-based nodes whose nullifier variances are summed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<[usize; 2]>,
    pub lhs: f64,
    pub bound: f64,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub inequalities: Vec<WitnessInequality>,
    pub fully_inseparable: bool,
    /// Graph whose inequalities were evaluated when it differs from the
    /// requested one (square states are checked through the linear state).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delegated_to: Option<String>,
}

/// Sums each variance pair and compares against [`WITNESS_BOUND`].
pub fn witness_evaluate(pairs: &[(f64, f64)]) -> Result<WitnessReport> {
    if pairs.is_empty() {
        return Err(Error::InvalidGraph(
            "witness needs at least one inequality".into(),
        ));
    }
    let inequalities = pairs
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| {
            for v in [a, b] {
                if v.is_nan() || v <= 0.0 || !v.is_finite() {
                    return Err(Error::NonPositiveVariance(v));
                }
            }
            let lhs = a + b;
            Ok(WitnessInequality {
                id: k + 1,
                nodes: None,
                lhs,
                bound: WITNESS_BOUND,
                satisfied: lhs < WITNESS_BOUND,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let fully_inseparable = inequalities.iter().all(|i| i.satisfied);
    Ok(WitnessReport {
        inequalities,
        fully_inseparable,
        delegated_to: None,
    })
}

/// Evaluates the witness inequalities of the named cluster graph on `state`.
pub fn full_inseparability_verdict(state: &GaussianState, g: &GraphSpec) -> Result<WitnessReport> {
    let kind = g.cluster_kind().ok_or_else(|| {
        Error::UnsupportedGraph(format!(
            "no witness inequalities are defined for the {} graph",
            g.name()
        ))
    })?;
    if state.n_modes() != g.n_nodes() {
        return Err(Error::DimensionMismatch {
            expected: g.n_nodes(),
            found: state.n_modes(),
        });
    }
    let (eval_state, eval_graph, delegated_to) = match kind {
        ClusterKind::Square => (
            state.apply_unitary(&network::square_from_linear_phases().adjoint())?,
            GraphSpec::linear4(),
            Some(ClusterKind::Linear.name().to_string()),
        ),
        _ => (state.clone(), g.clone(), None),
    };
    let report = nullifier_report(&eval_state, &eval_graph)?;
    let v = report.variances();
    let pairs = kind.witness_pairs();
    let mut out = witness_evaluate(&pairs.iter().map(|&(a, b)| (v[a], v[b])).collect::<Vec<_>>())?;
    for (ineq, &(a, b)) in out.inequalities.iter_mut().zip(pairs) {
        ineq.nodes = Some([a + 1, b + 1]);
    }
    out.delegated_to = delegated_to;
    Ok(out)
}
