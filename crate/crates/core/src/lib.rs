//! Tuning the SInE premise selector with Gaussian-process Bayesian
//! optimisation.
//!
//! The crate is organised bottom-up:
//!
//! - [`corpus`]: facts, conjectures and symbol statistics, plus the text format;
//! - [`sine`]: the trigger relation and k-step premise selection;
//! - [`metrics`]: the per-conjecture score, its corpus sum and proofs found;
//! - [`gp`]: Matérn Gaussian-process regression;
//! - [`bayesopt`]: GP-UCB, grid search and ε-greedy search over a box;
//! - [`synth`]: random corpora with a planted parameter optimum;
//! - [`cli`]: the `sinetune` command-line front end.
//!
//! ```
//! use sinetune::corpus::parse_corpus;
//! use sinetune::metrics::evaluate;
//! use sinetune::sine::SineParams;
//!
//! let corpus = parse_corpus("F p1: f, a\nF p2: g, a\nF p3: h, f\nC c1: a ; p1\n").unwrap();
//! let report = evaluate(&corpus, &SineParams::new(1.0, 1, 1).unwrap());
//! assert_eq!(report.total, 1.5);
//! assert_eq!(report.proofs_found_fraction, 1.0);
//! ```

pub mod bayesopt;
pub mod cli;
pub mod corpus;
pub mod gp;
pub mod metrics;
pub mod sine;
pub mod synth;

use sine::{ParamError, SineParams};

/// Interprets a `(t, g, k)` point as SInE parameters.
pub fn params_from_point(point: &[f64]) -> Result<SineParams, ParamError> {
    assert_eq!(point.len(), 3, "expected (t, g, k)");
    SineParams::new(point[0], point[1] as u32, point[2] as u32)
}
