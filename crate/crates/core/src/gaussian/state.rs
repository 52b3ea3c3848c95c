use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::symplectic::{omega, ComplexUnitary, SymplecticMap};
use crate::error::{Error, Result};

/// Quadrature variance of the vacuum with `ħ = 1/2`.
pub const VACUUM_VARIANCE: f64 = 0.25;

const SYMMETRY_TOLERANCE: f64 = 1e-12;
const UNCERTAINTY_TOLERANCE: f64 = 1e-10;

/// Single-mode squeezed input, described by its measured quadrature levels
/// relative to vacuum. The `p` quadrature is the squeezed one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezedInputSpec {
    squeezing_db: f64,
    antisqueezing_db: f64,
    pure: bool,
}

impl SqueezedInputSpec {
    /// Minimum-uncertainty input: antisqueezing mirrors squeezing.
    pub fn pure(squeezing_db: f64) -> Result<Self> {
        check_squeezing(squeezing_db)?;
        Ok(Self {
            squeezing_db,
            antisqueezing_db: -squeezing_db,
            pure: true,
        })
    }

    pub fn impure(squeezing_db: f64, antisqueezing_db: f64) -> Result<Self> {
        check_squeezing(squeezing_db)?;
        if !antisqueezing_db.is_finite() {
            return Err(Error::NonFinite {
                what: "antisqueezing level",
                value: antisqueezing_db,
            });
        }
        // a small slack absorbs decimal round-off in configs like (-6.3, 6.3)
        if antisqueezing_db < -squeezing_db - 1e-12 * squeezing_db.abs().max(1.0) {
            return Err(Error::Unphysical {
                squeezing_db,
                antisqueezing_db,
            });
        }
        Ok(Self {
            squeezing_db,
            antisqueezing_db,
            pure: antisqueezing_db == -squeezing_db,
        })
    }

    pub fn squeezing_db(&self) -> f64 {
        self.squeezing_db
    }

    pub fn antisqueezing_db(&self) -> f64 {
        self.antisqueezing_db
    }

    pub fn is_pure(&self) -> bool {
        self.pure
    }

    /// Squeezing parameter `r` with `e^{-2r} = 10^{s/10}`.
    pub fn squeezing_parameter(&self) -> f64 {
        db_to_squeezing_parameter(self.squeezing_db)
    }
}

fn check_squeezing(squeezing_db: f64) -> Result<()> {
    if !squeezing_db.is_finite() {
        return Err(Error::NonFinite {
            what: "squeezing level",
            value: squeezing_db,
        });
    }
    if squeezing_db > 0.0 {
        return Err(Error::SqueezingSign(squeezing_db));
    }
    Ok(())
}

/// `r` such that a pure squeezed vacuum has `p` variance `10^{db/10}/4`.
pub fn db_to_squeezing_parameter(db: f64) -> f64 {
    -db * std::f64::consts::LN_10 / 20.0
}

/// `10·log₁₀(v / v_ref)`.
pub fn variance_to_db(variance: f64, reference: f64) -> Result<f64> {
    for v in [variance, reference] {
        if v.is_nan() || v <= 0.0 || !v.is_finite() {
            return Err(Error::NonPositiveVariance(v));
        }
    }
    Ok(10.0 * (variance / reference).log10())
}

/// Inverse of [`variance_to_db`]: the variance at `db` relative to `reference`.
pub fn db_to_variance(db: f64, reference: f64) -> f64 {
    reference * 10f64.powf(db / 10.0)
}

/// Multimode Gaussian state in quadrature ordering `(x_1..x_n, p_1..p_n)`.
///
/// The covariance is held as a square-root factor `F` with `cov = F·Fᵀ`.
/// Passive optics act as `F → S·F`, and the variance of a quadrature
/// combination is `‖Fᵀc‖²`. Nullifier variances of strongly squeezed states
/// are differences of terms of order `e^{+2r}` in the covariance picture, and
/// the factor keeps them accurate to machine precision instead.
#[derive(Clone, Debug)]
pub struct GaussianState {
    n_modes: usize,
    mean: DVector<f64>,
    factor: DMatrix<f64>,
}

impl PartialEq for GaussianState {
    fn eq(&self, other: &Self) -> bool {
        self.n_modes == other.n_modes && self.mean == other.mean && self.cov() == other.cov()
    }
}

impl GaussianState {
    pub fn vacuum(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::ZeroModes);
        }
        Ok(Self {
            n_modes,
            mean: DVector::zeros(2 * n_modes),
            factor: DMatrix::identity(2 * n_modes, 2 * n_modes) * VACUUM_VARIANCE.sqrt(),
        })
    }

    /// Pure single-mode squeezed vacuum, `cov = diag(e^{2r}/4, e^{-2r}/4)`.
    pub fn squeezed_vacuum(r: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::NonFinite {
                what: "squeezing parameter",
                value: r,
            });
        }
        Ok(Self::diagonal_single_mode(0.5 * r.exp(), 0.5 * (-r).exp()))
    }

    /// Single-mode state with independent `x` (antisqueezed) and `p`
    /// (squeezed) levels.
    pub fn impure_squeezed_vacuum(spec: &SqueezedInputSpec) -> Self {
        Self::diagonal_single_mode(
            0.5 * 10f64.powf(spec.antisqueezing_db / 20.0),
            0.5 * 10f64.powf(spec.squeezing_db / 20.0),
        )
    }

    fn diagonal_single_mode(std_x: f64, std_p: f64) -> Self {
        Self {
            n_modes: 1,
            mean: DVector::zeros(2),
            factor: DMatrix::from_diagonal(&DVector::from_vec(vec![std_x, std_p])),
        }
    }

    /// Product state; mode order follows the slice order.
    pub fn tensor(states: &[GaussianState]) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::EmptyTensor);
        }
        let n: usize = states.iter().map(|s| s.n_modes).sum();
        let cols: usize = states.iter().map(|s| s.factor.ncols()).sum();
        let mut mean = DVector::zeros(2 * n);
        let mut factor = DMatrix::zeros(2 * n, cols);
        let (mut mode_offset, mut col_offset) = (0, 0);
        for s in states {
            let k = s.n_modes;
            for local in 0..2 * k {
                let global = if local < k {
                    mode_offset + local
                } else {
                    n + mode_offset + (local - k)
                };
                mean[global] = s.mean[local];
                for c in 0..s.factor.ncols() {
                    factor[(global, col_offset + c)] = s.factor[(local, c)];
                }
            }
            mode_offset += k;
            col_offset += s.factor.ncols();
        }
        let mut out = Self {
            n_modes: n,
            mean,
            factor,
        };
        out.compress();
        Ok(out)
    }

    /// Builds a state from an explicit mean and covariance, validating
    /// symmetry and the uncertainty relation.
    pub fn from_covariance(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self> {
        if !cov.is_square() || !cov.nrows().is_multiple_of(2) || cov.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: cov.nrows().max(2) + cov.nrows() % 2,
                found: cov.ncols(),
            });
        }
        if mean.len() != cov.nrows() {
            return Err(Error::DimensionMismatch {
                expected: cov.nrows(),
                found: mean.len(),
            });
        }
        if let Some(bad) = mean.iter().chain(cov.iter()).find(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "state entry",
                value: *bad,
            });
        }
        let scale = cov.amax().max(1.0);
        let asym = (&cov - cov.transpose()).amax();
        if asym > SYMMETRY_TOLERANCE * scale {
            return Err(Error::NotSymmetric { deviation: asym });
        }
        let sym = (&cov + cov.transpose()) * 0.5;
        let min_eig = uncertainty_min_eigenvalue(&sym);
        if min_eig < -UNCERTAINTY_TOLERANCE * scale {
            return Err(Error::Uncertainty {
                min_eigenvalue: min_eig,
            });
        }
        let eig = SymmetricEigen::new(sym);
        let roots = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
        let factor = eig.eigenvectors * DMatrix::from_diagonal(&roots);
        Ok(Self {
            n_modes: mean.len() / 2,
            mean,
            factor,
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    /// Square-root factor `F` with `cov = F·Fᵀ`.
    pub fn factor(&self) -> &DMatrix<f64> {
        &self.factor
    }

    pub fn cov(&self) -> DMatrix<f64> {
        &self.factor * self.factor.transpose()
    }

    /// Index of `x_mode` in the quadrature vector.
    pub fn x_index(&self, mode: usize) -> usize {
        mode
    }

    /// Index of `p_mode` in the quadrature vector.
    pub fn p_index(&self, mode: usize) -> usize {
        self.n_modes + mode
    }

    pub fn displaced(&self, shift: &[f64]) -> Result<Self> {
        self.check_len(shift.len())?;
        let mut out = self.clone();
        out.mean += DVector::from_column_slice(shift);
        Ok(out)
    }

    pub fn apply_symplectic(&self, s: &SymplecticMap) -> Result<Self> {
        if s.n_modes() != self.n_modes {
            return Err(Error::DimensionMismatch {
                expected: self.n_modes,
                found: s.n_modes(),
            });
        }
        Ok(Self {
            n_modes: self.n_modes,
            mean: s.matrix() * &self.mean,
            factor: s.matrix() * &self.factor,
        })
    }

    /// Passive evolution `a' = U a`, i.e. `cov' = S·cov·Sᵀ`, `mean' = S·mean`.
    pub fn apply_unitary(&self, u: &ComplexUnitary) -> Result<Self> {
        self.apply_symplectic(&SymplecticMap::from_unitary(u))
    }

    /// Variance of `Σ c_i q_i`; independent of the mean.
    pub fn combination_variance(&self, coeffs: &[f64]) -> Result<f64> {
        self.check_len(coeffs.len())?;
        let c = DVector::from_column_slice(coeffs);
        Ok((self.factor.transpose() * c).norm_squared())
    }

    pub fn determinant(&self) -> f64 {
        self.cov().determinant()
    }

    /// Smallest eigenvalue of the Hermitian matrix `cov + (i/4)Ω`.
    pub fn uncertainty_min_eigenvalue(&self) -> f64 {
        uncertainty_min_eigenvalue(&self.cov())
    }

    /// Whether `cov + (i/4)Ω ⪰ 0`, with round-off slack scaled by the
    /// largest covariance entry.
    pub fn satisfies_uncertainty(&self) -> bool {
        let cov = self.cov();
        let scale = cov.amax().max(1.0);
        uncertainty_min_eigenvalue(&cov) >= -UNCERTAINTY_TOLERANCE * scale
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len != 2 * self.n_modes {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.n_modes,
                found: len,
            });
        }
        Ok(())
    }

    pub(crate) fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.n_modes {
            return Err(Error::ModeOutOfRange {
                mode,
                n_modes: self.n_modes,
            });
        }
        Ok(())
    }

    pub(crate) fn from_parts(n_modes: usize, mean: DVector<f64>, factor: DMatrix<f64>) -> Self {
        let mut out = Self {
            n_modes,
            mean,
            factor,
        };
        out.compress();
        out
    }

    /// Re-factors to `2n` columns via QR of `Fᵀ` (`F·Fᵀ = Rᵀ·R`).
    fn compress(&mut self) {
        let dim = 2 * self.n_modes;
        if self.factor.ncols() <= dim {
            return;
        }
        let r = self.factor.transpose().qr().r();
        self.factor = r.transpose();
    }
}

/// The Hermitian matrix `C + iW` with `W = Ω/4` has the real symmetric
/// representation `[[C, −W], [W, C]]`, whose spectrum is that of `C + iW`
/// with every eigenvalue doubled.
fn uncertainty_min_eigenvalue(cov: &DMatrix<f64>) -> f64 {
    let d = cov.nrows();
    let w = omega(d / 2) * VACUUM_VARIANCE;
    let mut h = DMatrix::zeros(2 * d, 2 * d);
    h.view_mut((0, 0), (d, d)).copy_from(cov);
    h.view_mut((d, d), (d, d)).copy_from(cov);
    h.view_mut((0, d), (d, d)).copy_from(&(-&w));
    h.view_mut((d, 0), (d, d)).copy_from(&w);
    SymmetricEigen::new(h).eigenvalues.min()
}
