//! Batch front-end: scenario configuration, single runs, sweeps and the
//! decomposition check.
//!
//! A scenario prepares one squeezed input per mode, optionally applies loss
//! before the network, propagates through the network, applies output loss
//! and phase jitter, then evaluates the nullifiers and witness of its graph.

mod config;
mod report;
mod sweep;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cluster::{
    analytic_residual_variances, equivalence_identities_check, full_inseparability_verdict,
    nullifier_report, ClusterKind,
};
use crate::error::Result;
use crate::gaussian::{ComplexUnitary, GaussianState};
use crate::network::{self, compare_up_to_phase};

pub use config::{
    GraphConfig, JitterMonteCarlo, LossPlacement, NetworkChoice, OutputFormat, PerMode,
    ResolvedScenario, ScenarioConfig,
};
pub use report::{DecompositionCheck, DecompositionReport, InputLevel, ScenarioReport};
pub use sweep::{run_sweep, SweepAxis, SweepRow, SweepSpec, SweepTable};

/// Entrywise tolerance for program-versus-matrix comparisons.
pub const DECOMPOSITION_TOLERANCE: f64 = 1e-12;

/// Output state of a resolved scenario.
pub fn simulate_state(cfg: &ScenarioConfig, resolved: &ResolvedScenario) -> Result<GaussianState> {
    let inputs: Vec<GaussianState> = resolved
        .inputs
        .iter()
        .map(GaussianState::impure_squeezed_vacuum)
        .collect();
    let mut state = GaussianState::tensor(&inputs)?;
    let apply_loss = |mut s: GaussianState| -> Result<GaussianState> {
        for (mode, &eta) in resolved.eta.iter().enumerate() {
            s = s.lossy_channel(mode, eta)?;
        }
        Ok(s)
    };
    if cfg.loss_placement == LossPlacement::Pre {
        state = apply_loss(state)?;
    }
    state = state.apply_unitary(&resolved.unitary)?;
    if cfg.loss_placement == LossPlacement::Post {
        state = apply_loss(state)?;
    }
    match cfg.jitter_mc {
        None => {
            for (mode, &sigma) in resolved.sigma.iter().enumerate() {
                state = state.phase_jitter(mode, sigma)?;
            }
        }
        Some(mc) => {
            let mut rng = ChaCha8Rng::seed_from_u64(mc.seed);
            for (mode, &sigma) in resolved.sigma.iter().enumerate() {
                if sigma > 0.0 {
                    state = state.phase_jitter_sampled(mode, sigma, mc.samples, &mut rng)?;
                }
            }
        }
    }
    Ok(state)
}

/// Runs one scenario. Identical configs give identical reports.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    let resolved = cfg.resolve()?;
    let state = simulate_state(cfg, &resolved)?;
    let graph = &resolved.graph;

    let mut nullifiers = nullifier_report(&state, graph)?;
    let own_graph = resolved.kind.filter(|k| k.graph() == *graph);
    if let Some(kind) = own_graph {
        let r: [f64; 4] = std::array::from_fn(|k| resolved.inputs[k].squeezing_parameter());
        nullifiers.attach_analytic(&analytic_residual_variances(kind, r))?;
    }

    let equivalence = match resolved.kind {
        Some(ClusterKind::Linear) => Some(equivalence_identities_check(&state)?),
        _ => None,
    };

    let witness = if cfg.witness {
        Some(full_inseparability_verdict(&state, graph)?)
    } else {
        None
    };

    let network = match (&cfg.network, resolved.kind) {
        (_, Some(kind)) => kind.name().to_string(),
        (NetworkChoice::Netlist { netlist }, None) => netlist.display().to_string(),
        (NetworkChoice::Named(kind), None) => kind.name().to_string(),
    };

    Ok(ScenarioReport {
        config: cfg.clone(),
        n_modes: state.n_modes(),
        network,
        program: resolved.program.as_ref().map(|p| p.to_string()),
        inputs: resolved
            .inputs
            .iter()
            .enumerate()
            .map(|(k, spec)| InputLevel {
                mode: k + 1,
                squeezing_db: spec.squeezing_db(),
                antisqueezing_db: spec.antisqueezing_db(),
                squeezing_parameter: spec.squeezing_parameter(),
            })
            .collect(),
        nullifiers,
        equivalence,
        fully_inseparable: witness.as_ref().map(|w| w.fully_inseparable),
        witness,
        decomposition: cfg.verify_decomposition.then(verify_decompositions),
    })
}

fn decomposition_check(
    name: &str,
    program: &ComplexUnitary,
    target: &ComplexUnitary,
) -> DecompositionCheck {
    let cmp = compare_up_to_phase(program, target);
    DecompositionCheck {
        name: name.to_string(),
        max_deviation: cmp.max_deviation,
        global_phase: [cmp.global_phase.re, cmp.global_phase.im],
        deviation_after_phase: cmp.deviation_after_phase,
        within_tolerance: cmp.max_deviation < DECOMPOSITION_TOLERANCE
            || cmp.deviation_after_phase < DECOMPOSITION_TOLERANCE,
    }
}

/// Compares each element program against its constant matrix, and the
/// local-phase relation between the linear and square unitaries.
pub fn verify_decompositions() -> DecompositionReport {
    let linear = network::linear_cluster_unitary();
    let square = network::square_cluster_unitary();
    let checks = vec![
        decomposition_check(
            "linear4 program",
            &network::linear_program().matrix(),
            &linear,
        ),
        decomposition_check(
            "tshape4 program",
            &network::tshape_program().matrix(),
            &network::tshape_cluster_unitary(),
        ),
        decomposition_check(
            "square4 program",
            &network::square_program().matrix(),
            &square,
        ),
        decomposition_check(
            "diag(-1,-i,i,1) * linear4",
            &network::square_from_linear_phases()
                .compose(&linear)
                .expect("both are 4x4"),
            &square,
        ),
    ];
    DecompositionReport {
        tolerance: DECOMPOSITION_TOLERANCE,
        all_within_tolerance: checks.iter().all(|c| c.within_tolerance),
        checks,
    }
}
