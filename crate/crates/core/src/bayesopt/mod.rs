//! Black-box maximisation over a box of continuous and integer parameters.
//!
//! [`optimize`] runs GP-UCB: a few uniform random evaluations, then repeated
//! rounds of fitting a Gaussian process to everything observed so far and
//! evaluating the maximiser of its upper confidence bound. The GP works in
//! the unit cube on unrounded coordinates; integer parameters are rounded
//! only when a point is handed to the objective.
//!
//! [`grid_search`] and [`epsilon_greedy`] are the baselines; both produce the
//! same [`TuneRun`] record so runs can be compared directly.

mod acquisition;
mod baselines;
mod space;

use std::error::Error;
use std::io::{self, Write};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gp::{GpError, GpModel, KernelConfig};

pub use acquisition::{propose_next, ucb};
pub use baselines::{epsilon_greedy, grid_points, grid_search, mixed_search, EpsilonConfig};
pub use space::{Dim, DimKind, SearchSpace, SpaceError};

pub type BoxError = Box<dyn Error + Send + Sync + 'static>;

#[derive(Debug, Error)]
pub enum TuneError {
    #[error("objective failed at {point:?}: {source}")]
    Objective {
        point: Vec<f64>,
        #[source]
        source: BoxError,
    },
    #[error("objective returned a non-finite value at {point:?}")]
    NonFinite { point: Vec<f64> },
    #[error(transparent)]
    Gp(#[from] GpError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("invalid configuration: {0}")]
    Config(String),
}

/// Budget and acquisition settings for [`optimize`].
#[derive(Debug, Clone, PartialEq)]
pub struct TuneConfig {
    pub n_random_starts: usize,
    pub n_iterations: usize,
    pub beta: f64,
    pub candidate_count: usize,
    pub seed: u64,
}

impl Default for TuneConfig {
    fn default() -> Self {
        Self {
            n_random_starts: 2,
            n_iterations: 3,
            beta: 2.0,
            candidate_count: 1000,
            seed: 0,
        }
    }
}

impl TuneConfig {
    pub fn validate(&self) -> Result<(), TuneError> {
        if self.n_random_starts == 0 {
            return Err(TuneError::Config("need at least one random start".into()));
        }
        if self.candidate_count == 0 {
            return Err(TuneError::Config("candidate count must be positive".into()));
        }
        if !(self.beta >= 0.0 && self.beta.is_finite()) {
            return Err(TuneError::Config(format!("beta must be >= 0, got {}", self.beta)));
        }
        Ok(())
    }
}

/// One objective evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    /// Point in original units, integer dimensions rounded.
    pub point: Vec<f64>,
    /// Unit-cube coordinates the point was decoded from.
    pub unit: Vec<f64>,
    pub value: f64,
}

/// Time spent in the objective versus in model fitting and acquisition.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Timings {
    pub objective: Duration,
    pub model: Duration,
}

/// History of a tuning run.
#[derive(Debug, Clone, PartialEq)]
pub struct TuneRun {
    pub dim_names: Vec<String>,
    pub history: Vec<Evaluation>,
    pub timings: Timings,
}

impl TuneRun {
    fn new(space: &SearchSpace) -> Self {
        Self {
            dim_names: space.dims().iter().map(|d| d.name.clone()).collect(),
            history: Vec::new(),
            timings: Timings::default(),
        }
    }

    pub fn evaluations(&self) -> usize {
        self.history.len()
    }

    /// Index of the best evaluation; the earliest one wins ties.
    pub fn incumbent_index(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, e) in self.history.iter().enumerate() {
            if best.is_none_or(|b| e.value > self.history[b].value) {
                best = Some(i);
            }
        }
        best
    }

    pub fn incumbent(&self) -> Option<&Evaluation> {
        self.incumbent_index().map(|i| &self.history[i])
    }

    /// Best value seen after each evaluation.
    pub fn running_best(&self) -> Vec<f64> {
        self.history
            .iter()
            .scan(f64::NEG_INFINITY, |best, e| {
                *best = best.max(e.value);
                Some(*best)
            })
            .collect()
    }

    /// Marks evaluations that strictly improved on everything before them.
    pub fn improvements(&self) -> Vec<bool> {
        let mut best = f64::NEG_INFINITY;
        self.history
            .iter()
            .map(|e| {
                let better = e.value > best;
                if better {
                    best = e.value;
                }
                better
            })
            .collect()
    }

    /// Replaces every point with `expand(point)` and renames the columns.
    /// Used when some parameters were pinned during the search.
    pub fn expand_points<F>(mut self, dim_names: Vec<String>, mut expand: F) -> Self
    where
        F: FnMut(&[f64]) -> Vec<f64>,
    {
        for e in &mut self.history {
            e.point = expand(&e.point);
        }
        self.dim_names = dim_names;
        self
    }

    /// CSV `iter,<dims...>,objective,is_incumbent`, where `is_incumbent`
    /// marks rows that became the best-so-far.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "iter,{},objective,is_incumbent", self.dim_names.join(","))?;
        for (i, (e, inc)) in self.history.iter().zip(self.improvements()).enumerate() {
            write!(out, "{i}")?;
            for v in &e.point {
                write!(out, ",{v}")?;
            }
            writeln!(out, ",{},{}", e.value, inc)?;
        }
        Ok(())
    }
}

pub(crate) struct Recorder<'a, F> {
    space: &'a SearchSpace,
    objective: F,
    run: TuneRun,
}

impl<'a, F, E> Recorder<'a, F>
where
    F: FnMut(&[f64]) -> Result<f64, E>,
    E: Into<BoxError>,
{
    pub(crate) fn new(space: &'a SearchSpace, objective: F) -> Self {
        Self {
            space,
            objective,
            run: TuneRun::new(space),
        }
    }

    pub(crate) fn evaluate_unit(&mut self, unit: Vec<f64>) -> Result<f64, TuneError> {
        let point = self.space.decode(&unit);
        self.evaluate(point, unit)
    }

    pub(crate) fn evaluate(&mut self, point: Vec<f64>, unit: Vec<f64>) -> Result<f64, TuneError> {
        let start = Instant::now();
        let value = (self.objective)(&point).map_err(|e| TuneError::Objective {
            point: point.clone(),
            source: e.into(),
        })?;
        self.run.timings.objective += start.elapsed();
        if !value.is_finite() {
            return Err(TuneError::NonFinite { point });
        }
        self.run.history.push(Evaluation { point, unit, value });
        Ok(value)
    }

    pub(crate) fn history(&self) -> &[Evaluation] {
        &self.run.history
    }

    pub(crate) fn add_model_time(&mut self, d: Duration) {
        self.run.timings.model += d;
    }

    pub(crate) fn finish(self) -> TuneRun {
        self.run
    }
}

/// Fits the default GP to the unit-cube coordinates and values of `history`.
pub fn fit_history(dim: usize, history: &[Evaluation]) -> Result<GpModel, GpError> {
    let ys: Vec<f64> = history.iter().map(|e| e.value).collect();
    let xs = history.iter().map(|e| e.unit.clone()).collect();
    GpModel::fit(KernelConfig::for_observations(dim, &ys), xs, &ys)
}

/// Maximises `objective` over `space` with GP-UCB.
///
/// Evaluates exactly `n_random_starts + n_iterations` points. A proposal
/// that rounds to an already evaluated point is replaced once by a uniform
/// draw; if that also collides it is evaluated anyway.
pub fn optimize<F, E>(
    objective: F,
    space: &SearchSpace,
    config: &TuneConfig,
) -> Result<TuneRun, TuneError>
where
    F: FnMut(&[f64]) -> Result<f64, E>,
    E: Into<BoxError>,
{
    config.validate()?;
    let dim = space.len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rec = Recorder::new(space, objective);

    for _ in 0..config.n_random_starts {
        let unit = acquisition::uniform_unit(&mut rng, dim);
        rec.evaluate_unit(unit)?;
    }

    for _ in 0..config.n_iterations {
        let start = Instant::now();
        let model = fit_history(dim, rec.history())?;
        let mut unit = propose_next(&model, config.beta, config.candidate_count, &mut rng);
        let seen = |u: &[f64], h: &[Evaluation]| {
            let p = space.decode(u);
            h.iter().any(|e| e.point == p)
        };
        if seen(&unit, rec.history()) {
            unit = acquisition::uniform_unit(&mut rng, dim);
        }
        rec.add_model_time(start.elapsed());
        rec.evaluate_unit(unit)?;
    }
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    fn ok(v: f64) -> Result<f64, Infallible> {
        Ok(v)
    }

    fn unit_space(dims: usize) -> SearchSpace {
        SearchSpace::new(
            (0..dims)
                .map(|i| Dim::continuous(&format!("x{i}"), 0.0, 1.0))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn zero_iterations_is_random_search() {
        let cfg = TuneConfig {
            n_random_starts: 4,
            n_iterations: 0,
            ..TuneConfig::default()
        };
        let run = optimize(|v| ok(v[0]), &unit_space(1), &cfg).unwrap();
        assert_eq!(run.evaluations(), 4);
    }

    #[test]
    fn constant_objective() {
        let cfg = TuneConfig {
            n_random_starts: 2,
            n_iterations: 5,
            ..TuneConfig::default()
        };
        let run = optimize(|_| ok(3.25), &unit_space(2), &cfg).unwrap();
        assert_eq!(run.evaluations(), 7);
        assert_eq!(run.incumbent().unwrap().value, 3.25);
        assert_eq!(run.incumbent_index(), Some(0));
    }

    #[test]
    fn finds_one_dimensional_peak() {
        let mut hits = 0;
        for seed in 0..50 {
            let cfg = TuneConfig {
                n_random_starts: 2,
                n_iterations: 20,
                seed,
                ..TuneConfig::default()
            };
            let run = optimize(|v| ok(-(v[0] - 0.5).powi(2)), &unit_space(1), &cfg).unwrap();
            hits += usize::from((run.incumbent().unwrap().point[0] - 0.5).abs() < 0.05);
        }
        assert!(hits >= 45, "{hits}/50");
    }

    #[test]
    fn objective_errors_carry_the_point() {
        let cfg = TuneConfig::default();
        let err = optimize(
            |v: &[f64]| -> Result<f64, BoxError> {
                if v[0] > -1.0 {
                    Err("boom".into())
                } else {
                    Ok(0.0)
                }
            },
            &unit_space(1),
            &cfg,
        )
        .unwrap_err();
        match err {
            TuneError::Objective { point, .. } => assert_eq!(point.len(), 1),
            other => panic!("{other}"),
        }
        let err = optimize(|_| ok(f64::NAN), &unit_space(1), &cfg).unwrap_err();
        assert!(matches!(err, TuneError::NonFinite { .. }));
    }

    #[test]
    fn rejects_bad_config() {
        let space = unit_space(1);
        for cfg in [
            TuneConfig { n_random_starts: 0, ..TuneConfig::default() },
            TuneConfig { candidate_count: 0, ..TuneConfig::default() },
            TuneConfig { beta: -1.0, ..TuneConfig::default() },
        ] {
            assert!(matches!(optimize(|_| ok(0.0), &space, &cfg), Err(TuneError::Config(_))));
        }
    }

    #[test]
    fn integer_dims_are_rounded_and_deduplicated() {
        let space = SearchSpace::new(vec![Dim::integer("n", 0, 3)]).unwrap();
        let cfg = TuneConfig {
            n_random_starts: 2,
            n_iterations: 6,
            ..TuneConfig::default()
        };
        let run = optimize(|v| ok(-(v[0] - 2.0).abs()), &space, &cfg).unwrap();
        assert_eq!(run.evaluations(), 8);
        assert!(run.history.iter().all(|e| e.point[0].fract() == 0.0));
        assert_eq!(run.incumbent().unwrap().point, [2.0]);
    }

    #[test]
    fn csv_marks_improvements() {
        let space = unit_space(1);
        let mut run = TuneRun::new(&space);
        for (x, v) in [(0.1, 1.0), (0.2, 0.5), (0.3, 2.0), (0.4, 2.0)] {
            run.history.push(Evaluation { point: vec![x], unit: vec![x], value: v });
        }
        let mut buf = Vec::new();
        run.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "iter,x0,objective,is_incumbent\n0,0.1,1,true\n1,0.2,0.5,false\n2,0.3,2,true\n3,0.4,2,false\n"
        );
        assert_eq!(run.running_best(), [1.0, 1.0, 2.0, 2.0]);
        assert_eq!(run.incumbent_index(), Some(2));
    }
}
