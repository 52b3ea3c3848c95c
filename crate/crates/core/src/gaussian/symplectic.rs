//! Passive linear optics in two pictures: a complex unitary acting on the
//! annihilation operators, and its real symplectic image acting on stacked
//! quadratures `(x_1..x_n, p_1..p_n)`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::C64;

/// Deviation allowed when validating user-supplied matrices.
pub const CONSTRUCTION_TOLERANCE: f64 = 1e-8;

/// An `n × n` unitary acting on annihilation operators, `a'_i = Σ_j U_ij a_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexUnitary {
    matrix: DMatrix<C64>,
}

impl ComplexUnitary {
    pub fn new(matrix: DMatrix<C64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        if matrix.nrows() == 0 {
            return Err(Error::ZeroModes);
        }
        let deviation = unitarity_deviation(&matrix);
        if deviation.is_nan() || deviation > CONSTRUCTION_TOLERANCE {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { matrix })
    }

    /// Builds from row-major entries.
    pub fn from_rows(n: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        Self::new(DMatrix::from_row_slice(n, n, entries))
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModes);
        }
        Ok(Self {
            matrix: DMatrix::identity(n, n),
        })
    }

    /// Diagonal unitary of per-mode phase factors; each must have unit modulus.
    pub fn diagonal(phases: &[C64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(
            &nalgebra::DVector::from_column_slice(phases),
        ))
    }

    pub(crate) fn from_matrix_unchecked(matrix: DMatrix<C64>) -> Self {
        Self { matrix }
    }

    pub fn n_modes(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    /// Zero-based entry access.
    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.matrix[(row, col)]
    }

    pub fn unitarity_deviation(&self) -> f64 {
        unitarity_deviation(&self.matrix)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
        }
    }

    /// Matrix product `self · other`; `other` acts first.
    pub fn compose(&self, other: &ComplexUnitary) -> Result<Self> {
        if self.n_modes() != other.n_modes() {
            return Err(Error::DimensionMismatch {
                expected: self.n_modes(),
                found: other.n_modes(),
            });
        }
        Ok(Self {
            matrix: &self.matrix * &other.matrix,
        })
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_deviation(&self, other: &ComplexUnitary) -> f64 {
        if self.n_modes() != other.n_modes() {
            return f64::INFINITY;
        }
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn unitarity_deviation(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let prod = m * m.adjoint();
    let id = DMatrix::<C64>::identity(n, n);
    (prod - id).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Real `2n × 2n` matrix preserving the canonical form `Ω = [[0, I], [−I, 0]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticMap {
    n_modes: usize,
    matrix: DMatrix<f64>,
}

impl SymplecticMap {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() || !matrix.nrows().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows() + matrix.nrows() % 2,
                found: matrix.ncols(),
            });
        }
        if matrix.nrows() == 0 {
            return Err(Error::ZeroModes);
        }
        let deviation = symplectic_deviation(&matrix);
        if deviation.is_nan() || deviation > CONSTRUCTION_TOLERANCE {
            return Err(Error::NotSymplectic { deviation });
        }
        Ok(Self {
            n_modes: matrix.nrows() / 2,
            matrix,
        })
    }

    /// With `U = A + iB`, the quadrature image is `[[A, −B], [B, A]]`.
    pub fn from_unitary(u: &ComplexUnitary) -> Self {
        let n = u.n_modes();
        let mut s = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let z = u.entry(i, j);
                s[(i, j)] = z.re;
                s[(i, n + j)] = -z.im;
                s[(n + i, j)] = z.im;
                s[(n + i, n + j)] = z.re;
            }
        }
        Self {
            n_modes: n,
            matrix: s,
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `‖SΩSᵀ − Ω‖_max`.
    pub fn symplectic_deviation(&self) -> f64 {
        symplectic_deviation(&self.matrix)
    }
}

/// Free-function form of [`SymplecticMap::from_unitary`].
pub fn unitary_to_symplectic(u: &ComplexUnitary) -> SymplecticMap {
    SymplecticMap::from_unitary(u)
}

/// The canonical form for `n` modes in `(x.., p..)` ordering.
pub fn omega(n: usize) -> DMatrix<f64> {
    let mut w = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        w[(k, n + k)] = 1.0;
        w[(n + k, k)] = -1.0;
    }
    w
}

fn symplectic_deviation(s: &DMatrix<f64>) -> f64 {
    let w = omega(s.nrows() / 2);
    let lhs = s * &w * s.transpose();
    (lhs - w).amax()
}
