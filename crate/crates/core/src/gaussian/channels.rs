//! Imperfection channels: per-mode loss and Gaussian phase jitter.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::state::{GaussianState, VACUUM_VARIANCE};
use crate::error::{Error, Result};

impl GaussianState {
    /// Pure-loss channel on one mode: mixing with vacuum at a beam splitter
    /// of transmissivity `eta`, `cov ← η·cov + (1−η)/4` on that mode.
    pub fn lossy_channel(&self, mode: usize, eta: f64) -> Result<Self> {
        self.check_mode(mode)?;
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::Transmissivity(eta));
        }
        if eta == 1.0 {
            return Ok(self.clone());
        }
        let n = self.n_modes();
        let (ix, ip) = (self.x_index(mode), self.p_index(mode));
        let old = self.factor();
        let cols = old.ncols();
        let mut factor = DMatrix::zeros(2 * n, cols + 2);
        factor.view_mut((0, 0), (2 * n, cols)).copy_from(old);
        let keep = eta.sqrt();
        factor.row_mut(ix).scale_mut(keep);
        factor.row_mut(ip).scale_mut(keep);
        let vac = ((1.0 - eta) * VACUUM_VARIANCE).sqrt();
        factor[(ix, cols)] = vac;
        factor[(ip, cols + 1)] = vac;

        let mut mean = self.mean().clone();
        mean[ix] *= keep;
        mean[ip] *= keep;
        Ok(Self::from_parts(n, mean, factor))
    }

    /// Averages a phase-space rotation `θ ~ N(0, σ²)` on one mode.
    ///
    /// With `R = P + cos θ·Q + sin θ·J` (`Q` projects onto the mode, `J` is
    /// its quarter rotation), `E[R M Rᵀ]` splits into
    /// `(P + αQ) M (P + αQ)ᵀ + (β − α²)·QMQ + γ·JMJᵀ` where
    /// `α = e^{−σ²/2}`, `β = E[cos²θ]`, `γ = E[sin²θ]`. Each term is appended
    /// as a factor block, and the mean spread enters the same way.
    pub fn phase_jitter(&self, mode: usize, sigma: f64) -> Result<Self> {
        self.check_mode(mode)?;
        check_sigma(sigma)?;
        if sigma == 0.0 {
            return Ok(self.clone());
        }
        let n = self.n_modes();
        let (ix, ip) = (self.x_index(mode), self.p_index(mode));
        let var = sigma * sigma;
        let alpha = (-var / 2.0).exp();
        let cos2 = (-2.0 * var).exp();
        let gamma = 0.5 * (1.0 - cos2);
        // (1 − e^{−σ²})²/2, written to avoid cancellation for small σ
        let spread = 0.5 * (-var).exp_m1().powi(2);
        let spread_root = spread.sqrt();
        let gamma_root = gamma.sqrt();

        let old = self.factor();
        let mean = self.mean();
        let has_mean = mean[ix] != 0.0 || mean[ip] != 0.0;
        let cols = old.ncols();
        let extra = if has_mean { 2 } else { 0 };
        let mut factor = DMatrix::zeros(2 * n, 3 * cols + extra);

        factor.view_mut((0, 0), (2 * n, cols)).copy_from(old);
        factor.row_mut(ix).columns_mut(0, cols).scale_mut(alpha);
        factor.row_mut(ip).columns_mut(0, cols).scale_mut(alpha);
        for c in 0..cols {
            factor[(ix, cols + c)] = spread_root * old[(ix, c)];
            factor[(ip, cols + c)] = spread_root * old[(ip, c)];
            factor[(ix, 2 * cols + c)] = -gamma_root * old[(ip, c)];
            factor[(ip, 2 * cols + c)] = gamma_root * old[(ix, c)];
        }
        if has_mean {
            let at = 3 * cols;
            factor[(ix, at)] = spread_root * mean[ix];
            factor[(ip, at)] = spread_root * mean[ip];
            factor[(ix, at + 1)] = -gamma_root * mean[ip];
            factor[(ip, at + 1)] = gamma_root * mean[ix];
        }

        let mut new_mean = mean.clone();
        new_mean[ix] *= alpha;
        new_mean[ip] *= alpha;
        Ok(Self::from_parts(n, new_mean, factor))
    }

    /// Monte-Carlo counterpart of [`phase_jitter`](Self::phase_jitter):
    /// averages the second moments over `samples` rotations drawn from `rng`.
    pub fn phase_jitter_sampled<R: Rng + ?Sized>(
        &self,
        mode: usize,
        sigma: f64,
        samples: usize,
        rng: &mut R,
    ) -> Result<Self> {
        self.check_mode(mode)?;
        check_sigma(sigma)?;
        if samples == 0 {
            return Err(Error::ZeroSamples);
        }
        let normal = Normal::new(0.0, sigma).map_err(|_| Error::NegativeJitter(sigma))?;
        let (mut c, mut s, mut cc, mut ss, mut cs) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for _ in 0..samples {
            let theta: f64 = normal.sample(rng);
            let (sin, cos) = theta.sin_cos();
            c += cos;
            s += sin;
            cc += cos * cos;
            ss += sin * sin;
            cs += cos * sin;
        }
        let k = samples as f64;
        let (c, s, cc, ss, cs) = (c / k, s / k, cc / k, ss / k, cs / k);

        let n = self.n_modes();
        let dim = 2 * n;
        let (ix, ip) = (self.x_index(mode), self.p_index(mode));
        let mut q = DMatrix::<f64>::zeros(dim, dim);
        q[(ix, ix)] = 1.0;
        q[(ip, ip)] = 1.0;
        let p = DMatrix::<f64>::identity(dim, dim) - &q;
        let mut j = DMatrix::<f64>::zeros(dim, dim);
        j[(ix, ip)] = -1.0;
        j[(ip, ix)] = 1.0;

        let mean = self.mean();
        let second = self.cov() + mean * mean.transpose();
        let sym = |a: &DMatrix<f64>, b: &DMatrix<f64>| {
            a * &second * b.transpose() + b * &second * a.transpose()
        };
        let averaged = &p * &second * &p
            + sym(&p, &q) * c
            + sym(&p, &j) * s
            + &q * &second * &q * cc
            + &j * &second * j.transpose() * ss
            + sym(&q, &j) * cs;
        let new_mean: DVector<f64> = (&p + &q * c + &j * s) * mean;
        let cov = averaged - &new_mean * new_mean.transpose();
        let cov = (&cov + cov.transpose()) * 0.5;
        GaussianState::from_covariance(new_mean, cov)
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma.is_nan() || sigma < 0.0 {
        return Err(Error::NegativeJitter(sigma));
    }
    if !sigma.is_finite() {
        return Err(Error::NonFinite {
            what: "phase jitter",
            value: sigma,
        });
    }
    Ok(())
}
