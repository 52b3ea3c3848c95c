//! Shared fixtures for the criterion benches.

use cvcluster::cluster::ClusterKind;
use cvcluster::scenario::{PerMode, ScenarioConfig};
use cvcluster::GaussianState;

/// Four pure squeezed inputs at `squeezing_db`.
pub fn squeezed_inputs(squeezing_db: f64) -> GaussianState {
    let r = cvcluster::gaussian::db_to_squeezing_parameter(squeezing_db);
    let mode = GaussianState::squeezed_vacuum(r).expect("finite r");
    GaussianState::tensor(&[mode.clone(), mode.clone(), mode.clone(), mode]).expect("non-empty")
}

/// Linear-cluster scenario with impure inputs, output loss and phase jitter.
pub fn imperfect_linear() -> ScenarioConfig {
    let mut cfg = ScenarioConfig::named(ClusterKind::Linear, -6.3);
    cfg.antisqueezing_db = Some(PerMode::Uniform(11.0));
    cfg.loss = PerMode::Uniform(0.93);
    cfg.jitter = PerMode::Uniform(0.02);
    cfg
}
