//! Multimode Gaussian states in the `ħ = 1/2` convention (vacuum quadrature
//! variance 1/4), passive linear optics, and the loss and phase-jitter
//! imperfection channels.

mod channels;
mod state;
mod symplectic;

pub use state::{
    db_to_squeezing_parameter, db_to_variance, variance_to_db, GaussianState, SqueezedInputSpec,
    VACUUM_VARIANCE,
};
pub use symplectic::{
    omega, unitary_to_symplectic, ComplexUnitary, SymplecticMap, CONSTRUCTION_TOLERANCE,
};
