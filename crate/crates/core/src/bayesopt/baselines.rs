use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::acquisition::uniform_unit;
use super::{optimize, BoxError, Dim, DimKind, Recorder, SearchSpace, TuneConfig, TuneError, TuneRun};

/// Grid values along one dimension.
///
/// `steps` evenly spaced values including both ends; with an open lower
/// bound the grid is `low + i * (high - low) / steps` for `i = 1..=steps`.
/// Integer dimensions are rounded and de-duplicated.
fn dim_grid(dim: &Dim, steps: usize) -> Vec<f64> {
    let span = dim.high - dim.low;
    let mut values: Vec<f64> = if dim.open_low {
        (1..=steps).map(|i| dim.low + span * i as f64 / steps as f64).collect()
    } else if steps == 1 {
        vec![dim.low]
    } else {
        (0..steps)
            .map(|i| dim.low + span * i as f64 / (steps - 1) as f64)
            .collect()
    };
    if let Some(last) = values.last_mut() {
        *last = dim.high.min(*last);
    }
    if dim.kind == DimKind::Integer {
        for v in &mut values {
            *v = (*v + 0.5).floor();
        }
        values.dedup();
    }
    values
}

/// Per-dimension grid values for `steps` (one entry per dimension).
pub fn grid_points(space: &SearchSpace, steps: &[usize]) -> Result<Vec<Vec<f64>>, TuneError> {
    if steps.len() != space.len() {
        return Err(TuneError::Config(format!(
            "need {} grid step counts, got {}",
            space.len(),
            steps.len()
        )));
    }
    if steps.contains(&0) {
        return Err(TuneError::Config("grid steps must be >= 1".into()));
    }
    Ok(space
        .dims()
        .iter()
        .zip(steps)
        .map(|(d, &s)| dim_grid(d, s))
        .collect())
}

/// Cartesian product in row-major order (last dimension varies fastest).
fn cartesian(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::with_capacity(axes.len())];
    for axis in axes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// Exhaustive grid search. The incumbent is the first grid point attaining
/// the maximum.
pub fn grid_search<F, E>(objective: F, space: &SearchSpace, steps: &[usize]) -> Result<TuneRun, TuneError>
where
    F: FnMut(&[f64]) -> Result<f64, E>,
    E: Into<BoxError>,
{
    let axes = grid_points(space, steps)?;
    let mut rec = Recorder::new(space, objective);
    for point in cartesian(&axes) {
        let unit = space.encode(&point)?;
        rec.evaluate(point, unit)?;
    }
    Ok(rec.finish())
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonConfig {
    /// Probability of jumping to a fresh uniform point.
    pub epsilon: f64,
    pub n_evaluations: usize,
    /// Half-width of the local search box, in unit-cube coordinates.
    pub radius: f64,
    pub seed: u64,
}

impl Default for EpsilonConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.1,
            n_evaluations: 30,
            radius: 0.05,
            seed: 0,
        }
    }
}

/// ε-greedy local search.
///
/// Starts at a uniform point. Each further step either jumps to a fresh
/// uniform point (probability `epsilon`) or samples uniformly in the box of
/// half-width `radius` around the best point so far, clipped to the cube.
pub fn epsilon_greedy<F, E>(
    objective: F,
    space: &SearchSpace,
    config: &EpsilonConfig,
) -> Result<TuneRun, TuneError>
where
    F: FnMut(&[f64]) -> Result<f64, E>,
    E: Into<BoxError>,
{
    if !(0.0..=1.0).contains(&config.epsilon) {
        return Err(TuneError::Config(format!("epsilon must be in [0, 1], got {}", config.epsilon)));
    }
    if config.n_evaluations == 0 {
        return Err(TuneError::Config("need at least one evaluation".into()));
    }
    if !(config.radius >= 0.0 && config.radius.is_finite()) {
        return Err(TuneError::Config(format!("radius must be >= 0, got {}", config.radius)));
    }
    let dim = space.len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rec = Recorder::new(space, objective);

    let first = uniform_unit(&mut rng, dim);
    let mut best_value = rec.evaluate_unit(first.clone())?;
    let mut best_unit = first;
    for _ in 1..config.n_evaluations {
        let unit = if rng.gen::<f64>() < config.epsilon {
            uniform_unit(&mut rng, dim)
        } else {
            best_unit
                .iter()
                .map(|&c| {
                    let lo = (c - config.radius).max(0.0);
                    let hi = (c + config.radius).min(1.0);
                    lo + rng.gen::<f64>() * (hi - lo)
                })
                .collect()
        };
        let value = rec.evaluate_unit(unit.clone())?;
        if value > best_value {
            best_value = value;
            best_unit = unit;
        }
    }
    Ok(rec.finish())
}

/// Exhaustive grid over the integer dimensions combined with GP-UCB over the
/// continuous ones in every grid cell.
///
/// `steps` gives the grid resolution of each integer dimension, in order.
/// Cell `i` (row-major) runs [`optimize`] with seed `config.seed + i`. The
/// returned history spans all cells and carries full points.
pub fn mixed_search<F, E>(
    mut objective: F,
    space: &SearchSpace,
    steps: &[usize],
    config: &TuneConfig,
) -> Result<TuneRun, TuneError>
where
    F: FnMut(&[f64]) -> Result<f64, E>,
    E: Into<BoxError>,
{
    let (int_idx, cont_idx): (Vec<usize>, Vec<usize>) =
        (0..space.len()).partition(|&i| space.dims()[i].kind == DimKind::Integer);
    if cont_idx.is_empty() {
        return grid_search(objective, space, steps);
    }
    let int_space_dims: Vec<Dim> = int_idx.iter().map(|&i| space.dims()[i].clone()).collect();
    let cells = if int_space_dims.is_empty() {
        if !steps.is_empty() {
            return Err(TuneError::Config("no integer dimensions to grid over".into()));
        }
        vec![Vec::new()]
    } else {
        let int_space = SearchSpace::new(int_space_dims)?;
        cartesian(&grid_points(&int_space, steps)?)
    };
    let cont_space = SearchSpace::new(cont_idx.iter().map(|&i| space.dims()[i].clone()).collect())?;

    let assemble = |cell: &[f64], cont: &[f64]| {
        let mut full = vec![0.0; space.len()];
        for (&i, &v) in int_idx.iter().zip(cell) {
            full[i] = v;
        }
        for (&i, &v) in cont_idx.iter().zip(cont) {
            full[i] = v;
        }
        full
    };

    let mut combined = TuneRun::new(space);
    for (n, cell) in cells.iter().enumerate() {
        let cell_config = TuneConfig {
            seed: config.seed.wrapping_add(n as u64),
            ..config.clone()
        };
        let run = optimize(
            |cont: &[f64]| objective(&assemble(cell, cont)),
            &cont_space,
            &cell_config,
        )?;
        combined.timings.objective += run.timings.objective;
        combined.timings.model += run.timings.model;
        for e in run.history {
            let point = assemble(cell, &e.point);
            let unit = space.encode(&point)?;
            combined.history.push(super::Evaluation {
                point,
                unit,
                value: e.value,
            });
        }
    }
    Ok(combined)
}
