//! Beam-splitter networks for the three four-mode cluster states.
//!
//! Each cluster unitary is available twice: as the constant matrix and as a
//! [`NetworkProgram`] of elementary Fourier, beam-splitter and swap factors.
//! Programs are written in operator-product order, so the last element acts
//! on the inputs first and [`NetworkProgram::matrix`] is the plain
//! left-to-right product of the element matrices.

mod netlist;

use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::gaussian::ComplexUnitary;
use crate::C64;

pub use netlist::{format_g17, parse_netlist, write_netlist};

/// Sign choice of a beam splitter: `(B^±)_ji = ±√(1−t²)`, `(B^±)_jj = ∓t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BsSign {
    Plus,
    Minus,
}

impl BsSign {
    fn factor(self) -> f64 {
        match self {
            BsSign::Plus => 1.0,
            BsSign::Minus => -1.0,
        }
    }
}

/// Elementary optical component. Mode indices are zero-based.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NetworkElement {
    /// `a_k → i a_k`, a 90° phase-space rotation.
    Fourier(usize),
    /// `a_k → −i a_k`.
    InverseFourier(usize),
    /// Beam splitter between modes `i` and `j` with transmittance `t`.
    BeamSplitter {
        i: usize,
        j: usize,
        t: f64,
        sign: BsSign,
    },
    /// Exchange of modes `i` and `j`.
    Swap(usize, usize),
}

impl NetworkElement {
    pub fn modes(&self) -> Vec<usize> {
        match *self {
            NetworkElement::Fourier(k) | NetworkElement::InverseFourier(k) => vec![k],
            NetworkElement::BeamSplitter { i, j, .. } | NetworkElement::Swap(i, j) => vec![i, j],
        }
    }

    pub fn validate(&self, n_modes: usize) -> Result<()> {
        let modes = self.modes();
        if let Some(&m) = modes.iter().find(|&&m| m >= n_modes) {
            return Err(Error::ModeOutOfRange { mode: m, n_modes });
        }
        if modes.len() == 2 && modes[0] == modes[1] {
            return Err(Error::InvalidElement(format!(
                "{self} acts twice on mode {}",
                modes[0] + 1
            )));
        }
        if let NetworkElement::BeamSplitter { t, .. } = *self {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::InvalidElement(format!(
                    "transmittance {t} outside [0, 1]"
                )));
            }
        }
        Ok(())
    }

    /// The `n × n` unitary of this element, identity outside its modes.
    pub fn matrix(&self, n_modes: usize) -> Result<ComplexUnitary> {
        if n_modes == 0 {
            return Err(Error::ZeroModes);
        }
        self.validate(n_modes)?;
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let mut m = DMatrix::<C64>::identity(n_modes, n_modes);
        match *self {
            NetworkElement::Fourier(k) => m[(k, k)] = C64::new(0.0, 1.0),
            NetworkElement::InverseFourier(k) => m[(k, k)] = C64::new(0.0, -1.0),
            NetworkElement::BeamSplitter { i, j, t, sign } => {
                let r = (1.0 - t * t).sqrt();
                let s = sign.factor();
                m[(i, i)] = C64::new(t, 0.0);
                m[(i, j)] = C64::new(r, 0.0);
                m[(j, i)] = C64::new(s * r, 0.0);
                m[(j, j)] = C64::new(-s * t, 0.0);
            }
            NetworkElement::Swap(i, j) => {
                m[(i, i)] = zero;
                m[(j, j)] = zero;
                m[(i, j)] = one;
                m[(j, i)] = one;
            }
        }
        Ok(ComplexUnitary::from_matrix_unchecked(m))
    }
}

/// Displays with one-based modes in operator-product notation, e.g. `F1† B34+(t)`.
impl fmt::Display for NetworkElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NetworkElement::Fourier(k) => write!(f, "F{}", k + 1),
            NetworkElement::InverseFourier(k) => write!(f, "F{}†", k + 1),
            NetworkElement::BeamSplitter { i, j, t, sign } => {
                let s = if sign == BsSign::Plus { '+' } else { '-' };
                write!(f, "B{}{}{s}({t})", i + 1, j + 1)
            }
            NetworkElement::Swap(i, j) => write!(f, "S{}{}", i + 1, j + 1),
        }
    }
}

/// Ordered product of elements acting on `n_modes` modes.
#[derive(Clone, Debug, PartialEq)]
pub struct NetworkProgram {
    n_modes: usize,
    elements: Vec<NetworkElement>,
}

impl NetworkProgram {
    pub fn new(n_modes: usize, elements: Vec<NetworkElement>) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::ZeroModes);
        }
        for e in &elements {
            e.validate(n_modes)?;
        }
        Ok(Self { n_modes, elements })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn elements(&self) -> &[NetworkElement] {
        &self.elements
    }

    pub fn beam_splitters(&self) -> impl Iterator<Item = &NetworkElement> {
        self.elements
            .iter()
            .filter(|e| matches!(e, NetworkElement::BeamSplitter { .. }))
    }

    /// Product of the element matrices in written order.
    pub fn matrix(&self) -> ComplexUnitary {
        let n = self.n_modes;
        let mut acc = DMatrix::<C64>::identity(n, n);
        for e in &self.elements {
            let m = e.matrix(n).expect("elements validated on construction");
            acc *= m.matrix();
        }
        ComplexUnitary::from_matrix_unchecked(acc)
    }
}

impl fmt::Display for NetworkProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elements.is_empty() {
            return f.write_str("I");
        }
        for (k, e) in self.elements.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Free-function form of [`NetworkElement::matrix`].
pub fn element_matrix(e: &NetworkElement, n_modes: usize) -> Result<ComplexUnitary> {
    e.matrix(n_modes)
}

/// Free-function form of [`NetworkProgram::matrix`].
pub fn program_matrix(p: &NetworkProgram) -> ComplexUnitary {
    p.matrix()
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Linear four-mode cluster unitary.
pub fn linear_cluster_unitary() -> ComplexUnitary {
    let h = 1.0 / 2f64.sqrt();
    let a = 1.0 / 10f64.sqrt();
    let b = 2.0 / 10f64.sqrt();
    #[rustfmt::skip]
    let rows = [
        c(h, 0.0),   c(a, 0.0),   c(0.0, b),  c(0.0, 0.0),
        c(0.0, h),   c(0.0, -a),  c(b, 0.0),  c(0.0, 0.0),
        c(0.0, 0.0), c(-b, 0.0),  c(0.0, a),  c(0.0, h),
        c(0.0, 0.0), c(0.0, -b),  c(-a, 0.0), c(h, 0.0),
    ];
    ComplexUnitary::from_matrix_unchecked(DMatrix::from_row_slice(4, 4, &rows))
}

/// Square four-mode cluster unitary.
pub fn square_cluster_unitary() -> ComplexUnitary {
    let h = 1.0 / 2f64.sqrt();
    let a = 1.0 / 10f64.sqrt();
    let b = 2.0 / 10f64.sqrt();
    #[rustfmt::skip]
    let rows = [
        c(-h, 0.0),  c(-a, 0.0),  c(0.0, -b), c(0.0, 0.0),
        c(h, 0.0),   c(-a, 0.0),  c(0.0, -b), c(0.0, 0.0),
        c(0.0, 0.0), c(0.0, -b),  c(-a, 0.0), c(-h, 0.0),
        c(0.0, 0.0), c(0.0, -b),  c(-a, 0.0), c(h, 0.0),
    ];
    ComplexUnitary::from_matrix_unchecked(DMatrix::from_row_slice(4, 4, &rows))
}

/// T-shape four-mode cluster unitary.
pub fn tshape_cluster_unitary() -> ComplexUnitary {
    let h = 1.0 / 2f64.sqrt();
    #[rustfmt::skip]
    let rows = [
        c(0.0, h),   c(0.5, 0.0), c(0.0, 0.5),  c(0.0, 0.0),
        c(h, 0.0),   c(0.0, 0.5), c(-0.5, 0.0), c(0.0, 0.0),
        c(0.0, 0.0), c(0.0, 0.5), c(0.5, 0.0),  c(h, 0.0),
        c(0.0, 0.0), c(0.0, 0.5), c(0.5, 0.0),  c(-h, 0.0),
    ];
    ComplexUnitary::from_matrix_unchecked(DMatrix::from_row_slice(4, 4, &rows))
}

/// Local phase rotations `diag(−1, −i, i, 1)` taking the linear cluster to
/// the square cluster.
pub fn square_from_linear_phases() -> ComplexUnitary {
    ComplexUnitary::from_matrix_unchecked(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(
        vec![c(-1.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(1.0, 0.0)],
    )))
}

/// `F₄ S₁₂ F₁† B₃₄⁺(1/√2) B₂₁⁺(1/√2) B₂₃⁻(1/√5) F₃ F₄`.
pub fn linear_program() -> NetworkProgram {
    use NetworkElement::*;
    let h = 1.0 / 2f64.sqrt();
    let fifth = 1.0 / 5f64.sqrt();
    NetworkProgram {
        n_modes: 4,
        elements: vec![
            Fourier(3),
            Swap(0, 1),
            InverseFourier(0),
            BeamSplitter {
                i: 2,
                j: 3,
                t: h,
                sign: BsSign::Plus,
            },
            BeamSplitter {
                i: 1,
                j: 0,
                t: h,
                sign: BsSign::Plus,
            },
            BeamSplitter {
                i: 1,
                j: 2,
                t: fifth,
                sign: BsSign::Minus,
            },
            Fourier(2),
            Fourier(3),
        ],
    }
}

/// The linear program preceded by the local phases `diag(−1, −i, i, 1)`,
/// written as `F₁ F₁ F₂† F₃`.
pub fn square_program() -> NetworkProgram {
    use NetworkElement::*;
    let mut elements = vec![Fourier(0), Fourier(0), InverseFourier(1), Fourier(2)];
    elements.extend(linear_program().elements);
    NetworkProgram {
        n_modes: 4,
        elements,
    }
}

/// `F₁† B₃₄⁺(1/√2) B₂₁⁺(1/√2) B₃₂⁻(1/√2) F₂`.
pub fn tshape_program() -> NetworkProgram {
    use NetworkElement::*;
    let h = 1.0 / 2f64.sqrt();
    NetworkProgram {
        n_modes: 4,
        elements: vec![
            InverseFourier(0),
            BeamSplitter {
                i: 2,
                j: 3,
                t: h,
                sign: BsSign::Plus,
            },
            BeamSplitter {
                i: 1,
                j: 0,
                t: h,
                sign: BsSign::Plus,
            },
            BeamSplitter {
                i: 2,
                j: 1,
                t: h,
                sign: BsSign::Minus,
            },
            Fourier(1),
        ],
    }
}

/// Outcome of comparing a program's matrix against a target unitary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseComparison {
    /// Largest entrywise modulus of `program − target`.
    pub max_deviation: f64,
    /// Best-fit global phase `e^{iφ}` with `program ≈ e^{iφ}·target`.
    pub global_phase: C64,
    /// Largest entrywise deviation after removing the global phase.
    pub deviation_after_phase: f64,
}

pub fn compare_up_to_phase(program: &ComplexUnitary, target: &ComplexUnitary) -> PhaseComparison {
    let max_deviation = program.max_deviation(target);
    let overlap: C64 = program
        .matrix()
        .iter()
        .zip(target.matrix().iter())
        .map(|(p, t)| t.conj() * p)
        .sum();
    let global_phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    let deviation_after_phase = program
        .matrix()
        .iter()
        .zip(target.matrix().iter())
        .map(|(p, t)| (p - global_phase * t).norm())
        .fold(0.0, f64::max);
    PhaseComparison {
        max_deviation,
        global_phase,
        deviation_after_phase,
    }
}
