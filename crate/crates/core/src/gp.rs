//! Gaussian-process regression with Matérn covariance.
//!
//! Inputs live in the unit cube. Observations are centred by their sample
//! mean, so the prior mean of the residual process is zero and predictions
//! far from the data revert to the observed average.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GpError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("{0} training points but {1} observations")]
    LengthMismatch(usize, usize),
    #[error("invalid kernel configuration: {0}")]
    Config(&'static str),
    #[error("training point {0} lies outside the unit cube")]
    OutsideUnitCube(usize),
    #[error("observation {0} is not finite")]
    NonFinite(usize),
    #[error("covariance matrix is not positive definite even with jitter {jitter:e}")]
    NotPositiveDefinite { jitter: f64 },
}

const MAX_JITTER: f64 = 1e-2;

/// Smoothness of the Matérn family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Matern {
    /// ν = 1/2, the exponential kernel.
    Half,
    /// ν = 3/2.
    ThreeHalves,
    /// ν = 5/2.
    #[default]
    FiveHalves,
}

impl Matern {
    /// Correlation at scaled distance `r >= 0`.
    pub fn correlation(self, r: f64) -> f64 {
        match self {
            Matern::Half => (-r).exp(),
            Matern::ThreeHalves => {
                let a = 3f64.sqrt() * r;
                (1.0 + a) * (-a).exp()
            }
            Matern::FiveHalves => {
                let a = 5f64.sqrt() * r;
                (1.0 + a + 5.0 * r * r / 3.0) * (-a).exp()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelConfig {
    pub matern: Matern,
    /// One per input dimension.
    pub lengthscales: Vec<f64>,
    pub signal_variance: f64,
    pub noise_variance: f64,
    pub jitter: f64,
}

impl KernelConfig {
    pub const DEFAULT_LENGTHSCALE: f64 = 0.2;
    pub const DEFAULT_JITTER: f64 = 1e-8;

    /// Matérn-5/2 with lengthscale 0.2 per dimension and unit signal variance.
    pub fn new(dim: usize) -> Self {
        Self {
            matern: Matern::FiveHalves,
            lengthscales: vec![Self::DEFAULT_LENGTHSCALE; dim],
            signal_variance: 1.0,
            noise_variance: 1e-6,
            jitter: Self::DEFAULT_JITTER,
        }
    }

    /// Default configuration scaled to the observations: the signal variance
    /// is the sample variance of `ys` (1.0 when it is zero or there is at most
    /// one observation) and the noise variance is `1e-6` times that.
    pub fn for_observations(dim: usize, ys: &[f64]) -> Self {
        let signal_variance = match sample_variance(ys) {
            Some(v) if v > 0.0 && v.is_finite() => v,
            _ => 1.0,
        };
        Self {
            signal_variance,
            noise_variance: 1e-6 * signal_variance,
            ..Self::new(dim)
        }
    }

    pub fn dim(&self) -> usize {
        self.lengthscales.len()
    }

    pub fn validate(&self) -> Result<(), GpError> {
        if self.lengthscales.iter().any(|&l| !(l > 0.0 && l.is_finite())) {
            return Err(GpError::Config("lengthscales must be positive"));
        }
        if !(self.signal_variance > 0.0 && self.signal_variance.is_finite()) {
            return Err(GpError::Config("signal variance must be positive"));
        }
        if !(self.noise_variance >= 0.0 && self.noise_variance.is_finite()) {
            return Err(GpError::Config("noise variance must be non-negative"));
        }
        if !(self.jitter > 0.0) {
            return Err(GpError::Config("jitter must be positive"));
        }
        Ok(())
    }

    fn check_dim(&self, x: &[f64]) -> Result<(), GpError> {
        if x.len() == self.dim() {
            Ok(())
        } else {
            Err(GpError::Dimension {
                expected: self.dim(),
                got: x.len(),
            })
        }
    }

    fn eval_unchecked(&self, x: &[f64], y: &[f64]) -> f64 {
        let r2: f64 = x
            .iter()
            .zip(y)
            .zip(&self.lengthscales)
            .map(|((a, b), l)| {
                let d = (a - b) / l;
                d * d
            })
            .sum();
        self.signal_variance * self.matern.correlation(r2.sqrt())
    }

    /// Covariance between `x` and `y`.
    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<f64, GpError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.eval_unchecked(x, y))
    }
}

fn sample_variance(ys: &[f64]) -> Option<f64> {
    if ys.len() < 2 {
        return None;
    }
    let n = ys.len() as f64;
    let mean = ys.iter().sum::<f64>() / n;
    Some(ys.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / (n - 1.0))
}

pub fn kernel_eval(config: &KernelConfig, x: &[f64], y: &[f64]) -> Result<f64, GpError> {
    config.eval(x, y)
}

/// Row-major lower-triangular Cholesky factor of `a` (n×n), or `None` if a
/// pivot is not strictly positive.
fn cholesky(a: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[i * n + j];
            for k in 0..j {
                sum -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if !(sum > 0.0) {
                    return None;
                }
                l[i * n + i] = sum.sqrt();
            } else {
                l[i * n + j] = sum / l[j * n + j];
            }
        }
    }
    Some(l)
}

/// Solves `L z = b` in place.
fn forward_substitute(l: &[f64], n: usize, b: &mut [f64]) {
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i * n + k] * b[k];
        }
        b[i] = s / l[i * n + i];
    }
}

/// Solves `Lᵀ z = b` in place.
fn backward_substitute(l: &[f64], n: usize, b: &mut [f64]) {
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s -= l[k * n + i] * b[k];
        }
        b[i] = s / l[i * n + i];
    }
}

/// Posterior mean and variance at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub mean: f64,
    pub variance: f64,
}

impl Prediction {
    pub fn sd(&self) -> f64 {
        self.variance.sqrt()
    }
}

/// A GP conditioned on observations.
#[derive(Debug, Clone)]
pub struct GpModel {
    config: KernelConfig,
    xs: Vec<Vec<f64>>,
    mean_offset: f64,
    chol: Vec<f64>,
    alpha: Vec<f64>,
    jitter_used: f64,
}

impl GpModel {
    /// Conditions the GP on `(xs, ys)`. If the covariance matrix cannot be
    /// factorised, the jitter is doubled until it exceeds `1e-2`.
    pub fn fit(config: KernelConfig, xs: Vec<Vec<f64>>, ys: &[f64]) -> Result<Self, GpError> {
        config.validate()?;
        if xs.len() != ys.len() {
            return Err(GpError::LengthMismatch(xs.len(), ys.len()));
        }
        for (i, x) in xs.iter().enumerate() {
            config.check_dim(x)?;
            if x.iter().any(|&v| !(0.0..=1.0).contains(&v)) {
                return Err(GpError::OutsideUnitCube(i));
            }
        }
        if let Some(i) = ys.iter().position(|y| !y.is_finite()) {
            return Err(GpError::NonFinite(i));
        }

        let n = xs.len();
        let mean_offset = if n == 0 {
            0.0
        } else {
            ys.iter().sum::<f64>() / n as f64
        };
        let mut gram = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let k = config.eval_unchecked(&xs[i], &xs[j]);
                gram[i * n + j] = k;
                gram[j * n + i] = k;
            }
        }

        let mut jitter = config.jitter;
        let chol = loop {
            let mut a = gram.clone();
            for i in 0..n {
                a[i * n + i] += config.noise_variance + jitter;
            }
            if let Some(l) = cholesky(&a, n) {
                break l;
            }
            jitter *= 2.0;
            if jitter > MAX_JITTER {
                return Err(GpError::NotPositiveDefinite { jitter });
            }
        };

        let mut alpha: Vec<f64> = ys.iter().map(|y| y - mean_offset).collect();
        forward_substitute(&chol, n, &mut alpha);
        backward_substitute(&chol, n, &mut alpha);

        Ok(Self {
            config,
            xs,
            mean_offset,
            chol,
            alpha,
            jitter_used: jitter,
        })
    }

    pub fn config(&self) -> &KernelConfig {
        &self.config
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn mean_offset(&self) -> f64 {
        self.mean_offset
    }

    /// Jitter that made the factorisation succeed.
    pub fn jitter_used(&self) -> f64 {
        self.jitter_used
    }

    pub fn predict(&self, x: &[f64]) -> Result<Prediction, GpError> {
        self.config.check_dim(x)?;
        let n = self.xs.len();
        let mut k: Vec<f64> = self
            .xs
            .iter()
            .map(|xi| self.config.eval_unchecked(xi, x))
            .collect();
        let mean = self.mean_offset + k.iter().zip(&self.alpha).map(|(a, b)| a * b).sum::<f64>();
        forward_substitute(&self.chol, n, &mut k);
        let explained: f64 = k.iter().map(|v| v * v).sum();
        let variance = (self.config.eval_unchecked(x, x) - explained).max(0.0);
        Ok(Prediction { mean, variance })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matern_values() {
        let mut cfg = KernelConfig::new(1);
        cfg.lengthscales = vec![1.0];
        let at = |cfg: &KernelConfig, d: f64| cfg.eval(&[0.0], &[d]).unwrap();
        assert_eq!(at(&cfg, 0.0), 1.0);
        cfg.signal_variance = 2.5;
        assert_eq!(at(&cfg, 0.0), 2.5);
        assert_eq!(at(&cfg, 0.3), cfg.eval(&[0.3], &[0.0]).unwrap());

        cfg.signal_variance = 1.0;
        cfg.matern = Matern::Half;
        assert!((at(&cfg, 1.0) - (-1f64).exp()).abs() < 1e-15);
        cfg.matern = Matern::ThreeHalves;
        let s3 = 3f64.sqrt();
        assert!((at(&cfg, 1.0) - (1.0 + s3) * (-s3).exp()).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch() {
        let cfg = KernelConfig::new(2);
        assert_eq!(
            cfg.eval(&[0.0], &[0.0, 1.0]),
            Err(GpError::Dimension {
                expected: 2,
                got: 1
            })
        );
        let model = GpModel::fit(cfg, vec![vec![0.1, 0.2]], &[1.0]).unwrap();
        assert!(model.predict(&[0.5]).is_err());
    }

    #[test]
    fn empty_model_is_prior() {
        let cfg = KernelConfig::new(2);
        let model = GpModel::fit(cfg, vec![], &[]).unwrap();
        let p = model.predict(&[0.3, 0.7]).unwrap();
        assert_eq!(p.mean, 0.0);
        assert_eq!(p.variance, 1.0);
    }

    #[test]
    fn single_point_interpolates() {
        let mut cfg = KernelConfig::new(1);
        cfg.noise_variance = 0.0;
        let model = GpModel::fit(cfg, vec![vec![0.4]], &[3.0]).unwrap();
        let p = model.predict(&[0.4]).unwrap();
        assert!((p.mean - 3.0).abs() < 1e-12);
        assert!(p.variance <= 10.0 * KernelConfig::DEFAULT_JITTER);
    }

    #[test]
    fn duplicate_points_fit() {
        let mut cfg = KernelConfig::new(1);
        cfg.noise_variance = 0.0;
        let model = GpModel::fit(cfg, vec![vec![0.5], vec![0.5]], &[1.0, 1.0]).unwrap();
        let p = model.predict(&[0.5]).unwrap();
        assert!((p.mean - 1.0).abs() < 1e-6);
    }

    #[test]
    fn contradictory_duplicates_still_factorise() {
        // Jitter keeps the matrix positive definite; the posterior averages.
        let mut cfg = KernelConfig::new(1);
        cfg.noise_variance = 0.0;
        let model = GpModel::fit(cfg, vec![vec![0.5], vec![0.5]], &[0.0, 2.0]).unwrap();
        assert!((model.predict(&[0.5]).unwrap().mean - 1.0).abs() < 1e-6);
    }

    #[test]
    fn far_field_reverts_to_prior() {
        let mut cfg = KernelConfig::new(1);
        cfg.lengthscales = vec![0.01];
        cfg.signal_variance = 4.0;
        let model = GpModel::fit(cfg, vec![vec![0.0], vec![0.05]], &[1.0, 3.0]).unwrap();
        let p = model.predict(&[1.0]).unwrap();
        assert!((p.mean - 2.0).abs() < 1e-3);
        assert!((p.variance - 4.0).abs() < 1e-3);
    }

    #[test]
    fn rejects_bad_inputs() {
        let cfg = KernelConfig::new(1);
        assert_eq!(
            GpModel::fit(cfg.clone(), vec![vec![1.5]], &[0.0]).unwrap_err(),
            GpError::OutsideUnitCube(0)
        );
        assert_eq!(
            GpModel::fit(cfg.clone(), vec![vec![0.5]], &[f64::NAN]).unwrap_err(),
            GpError::NonFinite(0)
        );
        assert!(GpModel::fit(cfg.clone(), vec![vec![0.5]], &[]).is_err());
        let mut bad = cfg;
        bad.lengthscales = vec![0.0];
        assert!(GpModel::fit(bad, vec![], &[]).is_err());
    }

    #[test]
    fn signal_variance_from_observations() {
        assert_eq!(KernelConfig::for_observations(1, &[]).signal_variance, 1.0);
        assert_eq!(KernelConfig::for_observations(1, &[5.0]).signal_variance, 1.0);
        assert_eq!(KernelConfig::for_observations(1, &[2.0, 2.0]).signal_variance, 1.0);
        let cfg = KernelConfig::for_observations(1, &[1.0, 3.0]);
        assert_eq!(cfg.signal_variance, 2.0);
        assert_eq!(cfg.noise_variance, 2e-6);
    }
}
