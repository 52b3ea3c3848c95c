//! Simulation of four-mode continuous-variable cluster states generated from
//! off-line squeezed light and beam-splitter networks.
//!
//! The crate is organised bottom-up:
//!
//! - [`gaussian`]: Gaussian states, passive unitaries and their symplectic
//!   images, loss and phase-jitter channels.
//! - [`network`]: the linear, square and T-shape cluster unitaries, both as
//!   constant matrices and as products of Fourier, beam-splitter and swap
//!   elements, plus a plain-text netlist format.
//! - [`cluster`]: cluster graphs, nullifier variances, closed-form residuals,
//!   the linear/square equivalence identities and the full-inseparability
//!   witness.
//! - [`scenario`]: configuration, single runs, parameter sweeps and report
//!   serialization used by the command-line front-end.

pub mod cluster;
pub mod error;
pub mod gaussian;
pub mod network;
pub mod scenario;

pub use nalgebra::Complex;

/// Complex scalar used for mode-operator unitaries.
pub type C64 = nalgebra::Complex<f64>;

pub use cluster::{GraphKind, GraphSpec, NullifierReport, WitnessReport};
pub use error::{Error, Result};
pub use gaussian::{ComplexUnitary, GaussianState, SqueezedInputSpec, SymplecticMap};
pub use network::{NetworkElement, NetworkProgram};
