//! The `sinetune` command line.
//!
//! Every command reads its settings from flags and, optionally, a JSON file
//! given with `--config` whose keys are the flag names in snake case
//! (`t_range`, `grid_steps`, ...). Flags win over the file. All settings are
//! validated before the first objective evaluation.
//!
//! Exit codes: 0 on success, 1 on internal failures (including output I/O),
//! 2 on usage or input errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;
use thiserror::Error;

use crate::bayesopt::{
    epsilon_greedy, fit_history, grid_search, mixed_search, optimize, ucb, Dim, EpsilonConfig,
    SearchSpace, TuneConfig, TuneError, TuneRun,
};
use crate::corpus::{parse_corpus, Corpus};
use crate::metrics::{evaluate, select_all, ParamsJson};
use crate::sine::SineParams;
use crate::synth::{generate, GenConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Corpus {
        path: PathBuf,
        source: crate::corpus::CorpusError,
    },
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Tune(#[from] TuneError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Read { .. } | CliError::Corpus { .. } => 2,
            CliError::Tune(TuneError::Config(_) | TuneError::Space(_)) => 2,
            CliError::Write { .. } | CliError::Tune(_) => 1,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(name = "sinetune", version, about = "Tune SInE premise selection with GP-UCB")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run SInE with fixed parameters and score the recommendations.
    Select(SelectArgs),
    /// Bayesian optimisation (GP-UCB) of t, g and k.
    Tune(TuneArgs),
    /// Grid-search or epsilon-greedy baseline.
    Baseline(BaselineArgs),
    /// Exhaustive grid over g and k with GP-UCB over t in every cell.
    GridMixed(GridMixedArgs),
    /// Write a random corpus with Zipf-distributed symbols.
    Gen(GenArgs),
}

#[derive(Debug, Args, Clone, Default)]
pub struct CommonArgs {
    /// Corpus file.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads for objective evaluation (0: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// JSON file with default settings.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args, Clone, Default)]
pub struct SpaceArgs {
    /// Tolerance range `lo..hi`; `lo == hi` pins the value, `lo == 0` is exclusive.
    #[arg(long)]
    pub t_range: Option<String>,
    /// Generality threshold range `lo..hi`.
    #[arg(long)]
    pub g_range: Option<String>,
    /// Depth range `lo..hi`.
    #[arg(long)]
    pub k_range: Option<String>,
}

#[derive(Debug, Args, Clone, Default)]
pub struct BoArgs {
    /// Exploration weight of the upper confidence bound.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Random starting points.
    #[arg(long)]
    pub starts: Option<usize>,
    /// GP-UCB iterations after the random starts.
    #[arg(long)]
    pub iters: Option<usize>,
    /// Random candidates per acquisition maximisation.
    #[arg(long)]
    pub candidates: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub g: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
}

#[derive(Debug, Args)]
pub struct TuneArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub bo: BoArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaselineMode {
    Grid,
    Epsilon,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, value_enum)]
    pub mode: Option<BaselineMode>,
    /// Steps per free dimension, comma separated; one value applies to all.
    #[arg(long, value_delimiter = ',')]
    pub grid_steps: Option<Vec<usize>>,
    /// Probability of a random jump.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Half-width of the local search box in unit-cube coordinates.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Number of evaluations for epsilon-greedy.
    #[arg(long)]
    pub evals: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GridMixedArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub bo: BoArgs,
    /// Grid steps for the free integer dimensions (g, k).
    #[arg(long, value_delimiter = ',')]
    pub grid_steps: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Output corpus file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub facts: Option<usize>,
    #[arg(long)]
    pub symbols: Option<usize>,
    #[arg(long)]
    pub conjectures: Option<usize>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Settings file; every key mirrors a flag.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub corpus: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub t_range: Option<String>,
    pub g_range: Option<String>,
    pub k_range: Option<String>,
    pub beta: Option<f64>,
    pub starts: Option<usize>,
    pub iters: Option<usize>,
    pub candidates: Option<usize>,
    pub mode: Option<BaselineMode>,
    pub grid_steps: Option<Vec<usize>>,
    pub epsilon: Option<f64>,
    pub radius: Option<f64>,
    pub evals: Option<usize>,
    pub t: Option<f64>,
    pub g: Option<u32>,
    pub k: Option<u32>,
    pub facts: Option<usize>,
    pub symbols: Option<usize>,
    pub conjectures: Option<usize>,
}

fn load_file_config(path: Option<&Path>) -> Result<FileConfig, CliError> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Runs the command line and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Select(a) => cmd_select(a),
        Command::Tune(a) => cmd_tune(a),
        Command::Baseline(a) => cmd_baseline(a),
        Command::GridMixed(a) => cmd_grid_mixed(a),
        Command::Gen(a) => cmd_gen(a),
    }
}

struct Common {
    corpus: Corpus,
    out: PathBuf,
    seed: u64,
    pool: rayon::ThreadPool,
}

fn resolve_common(args: CommonArgs, file: &FileConfig) -> Result<Common, CliError> {
    let corpus_path = args
        .corpus
        .or_else(|| file.corpus.clone())
        .ok_or_else(|| usage("missing --corpus"))?;
    let out = args
        .out
        .or_else(|| file.out.clone())
        .unwrap_or_else(|| PathBuf::from("sinetune-out"));
    let seed = args.seed.or(file.seed).unwrap_or(0);
    let threads = args.threads.or(file.threads).unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| usage(format!("cannot start {threads} threads: {e}")))?;
    let text = fs::read_to_string(&corpus_path).map_err(|source| CliError::Read {
        path: corpus_path.clone(),
        source,
    })?;
    let corpus = parse_corpus(&text).map_err(|source| CliError::Corpus {
        path: corpus_path.clone(),
        source,
    })?;
    if corpus.conjectures().is_empty() {
        return Err(usage(format!("{}: corpus has no conjectures", corpus_path.display())));
    }
    Ok(Common {
        corpus,
        out,
        seed,
        pool,
    })
}

/// Parses `lo..hi`.
pub fn parse_range(text: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("expected `lo..hi`, got `{text}`"))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| format!("bad number `{s}` in range `{text}`"))
    };
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(format!("range `{text}` must satisfy lo <= hi"));
    }
    Ok((lo, hi))
}

/// The (t, g, k) space with some coordinates possibly pinned.
#[derive(Debug, Clone)]
pub struct ParamSpace {
    /// Free dimensions only.
    pub space: SearchSpace,
    /// Index into (t, g, k) for each free dimension.
    pub free: Vec<usize>,
    /// Value of every coordinate; free ones are placeholders.
    pub base: [f64; 3],
}

impl ParamSpace {
    pub fn resolve(args: &SpaceArgs, file: &FileConfig) -> Result<Self, CliError> {
        let pick = |flag: &Option<String>, file: &Option<String>, default: &str| {
            let text = flag.clone().or_else(|| file.clone()).unwrap_or_else(|| default.to_owned());
            parse_range(&text).map_err(usage)
        };
        let t = pick(&args.t_range, &file.t_range, "0..20")?;
        let g = pick(&args.g_range, &file.g_range, "1..128")?;
        let k = pick(&args.k_range, &file.k_range, "0..256")?;

        if t.0 < 0.0 || t.1 <= 0.0 {
            return Err(usage("t range must lie in (0, inf)"));
        }
        for (name, (lo, hi), min) in [("g", g, 1.0), ("k", k, 0.0)] {
            if lo.fract() != 0.0 || hi.fract() != 0.0 || lo < min || hi > f64::from(u32::MAX) {
                return Err(usage(format!("{name} range must be integers >= {min}")));
            }
        }

        let mut dims = Vec::new();
        let mut free = Vec::new();
        let base = [t.0, g.0, k.0];
        if t.0 < t.1 {
            dims.push(if t.0 == 0.0 {
                Dim::continuous_open("t", t.0, t.1)
            } else {
                Dim::continuous("t", t.0, t.1)
            });
            free.push(0);
        } else if t.0 == 0.0 {
            return Err(usage("t must be > 0"));
        }
        for (i, name, (lo, hi)) in [(1, "g", g), (2, "k", k)] {
            if lo < hi {
                dims.push(Dim::integer(name, lo as i64, hi as i64));
                free.push(i);
            }
        }
        if dims.is_empty() {
            return Err(usage("every parameter is pinned; use `select` instead"));
        }
        let space = SearchSpace::new(dims).map_err(|e| usage(e.to_string()))?;
        Ok(Self { space, free, base })
    }

    pub fn full_point(&self, free_point: &[f64]) -> Vec<f64> {
        let mut p = self.base.to_vec();
        for (&i, &v) in self.free.iter().zip(free_point) {
            p[i] = v;
        }
        p
    }

    pub fn params(&self, free_point: &[f64]) -> SineParams {
        crate::params_from_point(&self.full_point(free_point))
            .expect("search space bounds imply valid parameters")
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Write {
        path: path.to_owned(),
        source,
    })
}

fn ensure_dir(path: &Path) -> Result<(), CliError> {
    fs::create_dir_all(path).map_err(|source| CliError::Write {
        path: path.to_owned(),
        source,
    })
}

fn cmd_select(args: SelectArgs) -> Result<(), CliError> {
    let file = load_file_config(args.common.config.as_deref())?;
    let t = args.t.or(file.t).unwrap_or(1.0);
    let g = args.g.or(file.g).unwrap_or(1);
    let k = args.k.or(file.k).unwrap_or(1);
    let params = SineParams::new(t, g, k).map_err(|e| usage(e.to_string()))?;
    let common = resolve_common(args.common, &file)?;
    let corpus = &common.corpus;

    let started = Instant::now();
    let (selections, report) = common
        .pool
        .install(|| (select_all(corpus, &params), evaluate(corpus, &params)));
    let wall = started.elapsed().as_secs_f64();

    ensure_dir(&common.out)?;
    let mut csv = String::from("conjecture,recommended_facts\n");
    for (conj, sel) in corpus.conjectures().iter().zip(&selections) {
        let facts: Vec<&str> = corpus.fact_names(sel).collect();
        csv.push_str(&format!("{},{}\n", conj.name, facts.join(" ")));
    }
    write_file(&common.out.join("selection.csv"), csv.as_bytes())?;
    let mut scores = Vec::new();
    report.write_csv(&mut scores).expect("in-memory write");
    write_file(&common.out.join("scores.csv"), &scores)?;
    let summary = report.summary_json(&params, Some(wall));
    write_file(
        &common.out.join("summary.json"),
        serde_json::to_string_pretty(&summary).expect("json").as_bytes(),
    )?;

    let proved = report.per_conjecture.iter().filter(|r| r.proved).count();
    println!("S = {}", report.total);
    println!(
        "proofs found = {:.4} ({proved}/{})",
        report.proofs_found_fraction,
        report.per_conjecture.len()
    );
    Ok(())
}

fn resolve_bo(args: &BoArgs, file: &FileConfig, seed: u64) -> Result<TuneConfig, CliError> {
    let defaults = TuneConfig::default();
    let config = TuneConfig {
        n_random_starts: args.starts.or(file.starts).unwrap_or(defaults.n_random_starts),
        n_iterations: args.iters.or(file.iters).unwrap_or(defaults.n_iterations),
        beta: args.beta.or(file.beta).unwrap_or(defaults.beta),
        candidate_count: args.candidates.or(file.candidates).unwrap_or(defaults.candidate_count),
        seed,
    };
    config.validate().map_err(|e| usage(e.to_string()))?;
    Ok(config)
}

struct RunOutput<'a> {
    command: &'a str,
    seed: u64,
    run: TuneRun,
    wall: f64,
}

/// Writes `history.csv` and `summary.json` for a run over the full (t, g, k)
/// space.
fn write_run(common: &Common, out: RunOutput<'_>) -> Result<(), CliError> {
    ensure_dir(&common.out)?;
    let mut csv = Vec::new();
    out.run.write_csv(&mut csv).expect("in-memory write");
    write_file(&common.out.join("history.csv"), &csv)?;

    let best = out.run.incumbent().expect("runs evaluate at least once");
    let params = crate::params_from_point(&best.point).expect("valid incumbent");
    let report = common.pool.install(|| evaluate(&common.corpus, &params));
    let summary = json!({
        "command": out.command,
        "seed": out.seed,
        "best": ParamsJson::from(&params),
        "best_objective": best.value,
        "best_proofs_found_fraction": report.proofs_found_fraction,
        "evaluations": out.run.evaluations(),
        "wall_time": {
            "total_seconds": out.wall,
            "objective_seconds": out.run.timings.objective.as_secs_f64(),
            "model_seconds": out.run.timings.model.as_secs_f64(),
        },
    });
    write_file(
        &common.out.join("summary.json"),
        serde_json::to_string_pretty(&summary).expect("json").as_bytes(),
    )?;
    println!(
        "best t={} g={} k={} S={} after {} evaluations",
        params.tolerance(),
        params.generality(),
        params.depth(),
        best.value,
        out.run.evaluations()
    );
    Ok(())
}

fn full_names() -> Vec<String> {
    ["t", "g", "k"].map(String::from).to_vec()
}

/// Posterior of the final model along the single free continuous dimension,
/// on 201 evenly spaced unit coordinates.
fn figure_data(space: &ParamSpace, run: &TuneRun, beta: f64) -> Result<String, CliError> {
    let model = fit_history(1, &run.history).map_err(TuneError::from)?;
    let mut csv = String::from("t,posterior_mean,posterior_sd,ucb\n");
    let dim = &space.space.dims()[0];
    for i in 0..=200 {
        let u = i as f64 / 200.0;
        let p = model.predict(&[u]).map_err(TuneError::from)?;
        csv.push_str(&format!(
            "{},{},{},{}\n",
            dim.decode(u),
            p.mean,
            p.sd(),
            ucb(p.mean, p.sd(), beta)
        ));
    }
    Ok(csv)
}

fn cmd_tune(args: TuneArgs) -> Result<(), CliError> {
    let file = load_file_config(args.common.config.as_deref())?;
    let space = ParamSpace::resolve(&args.space, &file)?;
    let common = resolve_common(args.common, &file)?;
    let config = resolve_bo(&args.bo, &file, common.seed)?;

    let started = Instant::now();
    let corpus = &common.corpus;
    let run = common.pool.install(|| {
        optimize(
            |p: &[f64]| Ok::<_, TuneError>(evaluate(corpus, &space.params(p)).total),
            &space.space,
            &config,
        )
    })?;
    let wall = started.elapsed().as_secs_f64();

    if space.free == [0] {
        let csv = figure_data(&space, &run, config.beta)?;
        ensure_dir(&common.out)?;
        write_file(&common.out.join("figure1.csv"), csv.as_bytes())?;
    }
    let run = run.expand_points(full_names(), |p| space.full_point(p));
    write_run(
        &common,
        RunOutput {
            command: "tune",
            seed: common.seed,
            run,
            wall,
        },
    )
}

/// Expands one step count to every free dimension.
fn expand_steps(steps: Vec<usize>, n: usize) -> Result<Vec<usize>, CliError> {
    match steps.len() {
        1 => Ok(vec![steps[0]; n]),
        len if len == n => Ok(steps),
        len => Err(usage(format!("--grid-steps needs 1 or {n} values, got {len}"))),
    }
}

fn cmd_baseline(args: BaselineArgs) -> Result<(), CliError> {
    let file = load_file_config(args.common.config.as_deref())?;
    let space = ParamSpace::resolve(&args.space, &file)?;
    let mode = args.mode.or(file.mode).unwrap_or(BaselineMode::Grid);
    let common = resolve_common(args.common, &file)?;

    let steps = match args.grid_steps.or_else(|| file.grid_steps.clone()) {
        Some(s) => expand_steps(s, space.space.len())?,
        None => {
            let defaults = [20, 16, 16];
            space.free.iter().map(|&i| defaults[i]).collect()
        }
    };
    if steps.contains(&0) {
        return Err(usage("grid steps must be >= 1"));
    }
    let defaults = EpsilonConfig::default();
    let eps = EpsilonConfig {
        epsilon: args.epsilon.or(file.epsilon).unwrap_or(defaults.epsilon),
        n_evaluations: args.evals.or(file.evals).unwrap_or(defaults.n_evaluations),
        radius: args.radius.or(file.radius).unwrap_or(defaults.radius),
        seed: common.seed,
    };
    if !(0.0..=1.0).contains(&eps.epsilon) || eps.n_evaluations == 0 || !(eps.radius >= 0.0) {
        return Err(usage("epsilon must be in [0,1], evals >= 1, radius >= 0"));
    }

    let started = Instant::now();
    let corpus = &common.corpus;
    let objective = |p: &[f64]| Ok::<_, TuneError>(evaluate(corpus, &space.params(p)).total);
    let run = common.pool.install(|| match mode {
        BaselineMode::Grid => grid_search(objective, &space.space, &steps),
        BaselineMode::Epsilon => epsilon_greedy(objective, &space.space, &eps),
    })?;
    let wall = started.elapsed().as_secs_f64();
    let run = run.expand_points(full_names(), |p| space.full_point(p));
    let command = match mode {
        BaselineMode::Grid => "baseline-grid",
        BaselineMode::Epsilon => "baseline-epsilon",
    };
    write_run(
        &common,
        RunOutput {
            command,
            seed: common.seed,
            run,
            wall,
        },
    )
}

fn cmd_grid_mixed(args: GridMixedArgs) -> Result<(), CliError> {
    let file = load_file_config(args.common.config.as_deref())?;
    let space = ParamSpace::resolve(&args.space, &file)?;
    let common = resolve_common(args.common, &file)?;
    let config = resolve_bo(&args.bo, &file, common.seed)?;
    let n_int = space.free.iter().filter(|&&i| i != 0).count();
    let steps = match args.grid_steps.or_else(|| file.grid_steps.clone()) {
        Some(s) if n_int > 0 => expand_steps(s, n_int)?,
        Some(_) => return Err(usage("--grid-steps given but g and k are both pinned")),
        None => vec![16; n_int],
    };
    if steps.contains(&0) {
        return Err(usage("grid steps must be >= 1"));
    }

    let started = Instant::now();
    let corpus = &common.corpus;
    let run = common.pool.install(|| {
        mixed_search(
            |p: &[f64]| Ok::<_, TuneError>(evaluate(corpus, &space.params(p)).total),
            &space.space,
            &steps,
            &config,
        )
    })?;
    let wall = started.elapsed().as_secs_f64();
    let run = run.expand_points(full_names(), |p| space.full_point(p));
    write_run(
        &common,
        RunOutput {
            command: "grid-mixed",
            seed: common.seed,
            run,
            wall,
        },
    )
}

fn cmd_gen(args: GenArgs) -> Result<(), CliError> {
    let file = load_file_config(args.config.as_deref())?;
    let config = GenConfig::new(
        args.facts.or(file.facts).unwrap_or(100),
        args.symbols.or(file.symbols).unwrap_or(40),
        args.conjectures.or(file.conjectures).unwrap_or(50),
        args.seed.or(file.seed).unwrap_or(0),
    );
    let text = generate(&config).map_err(|e| usage(e.to_string()))?;
    match args.out.or(file.out) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                ensure_dir(parent)?;
            }
            write_file(&path, text.as_bytes())
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Write {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0..20"), Ok((0.0, 20.0)));
        assert_eq!(parse_range(" 1 .. 3 "), Ok((1.0, 3.0)));
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("1-3").is_err());
        assert!(parse_range("a..3").is_err());
    }

    fn space(t: &str, g: &str, k: &str) -> Result<ParamSpace, CliError> {
        let args = SpaceArgs {
            t_range: Some(t.into()),
            g_range: Some(g.into()),
            k_range: Some(k.into()),
        };
        ParamSpace::resolve(&args, &FileConfig::default())
    }

    #[test]
    fn pinned_dimensions() {
        let s = space("0..20", "2..2", "5..5").unwrap();
        assert_eq!(s.free, [0]);
        assert_eq!(s.full_point(&[7.5]), [7.5, 2.0, 5.0]);
        assert!(s.space.dims()[0].open_low);

        let s = space("3..3", "1..128", "0..256").unwrap();
        assert_eq!(s.free, [1, 2]);
        assert_eq!(s.params(&[4.0, 9.0]), SineParams::new(3.0, 4, 9).unwrap());

        assert!(space("1..1", "2..2", "3..3").is_err());
        assert!(space("0..0", "1..2", "0..1").is_err());
        assert!(space("0..20", "0..4", "0..1").is_err());
        assert!(space("0..20", "1.5..4", "0..1").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file: FileConfig = serde_json::from_str(r#"{"t_range": "1..2", "g_range": "3..3"}"#).unwrap();
        let args = SpaceArgs {
            t_range: Some("0..5".into()),
            ..SpaceArgs::default()
        };
        let s = ParamSpace::resolve(&args, &file).unwrap();
        assert_eq!(s.space.dims()[0].high, 5.0);
        assert_eq!(s.free, [0, 2]);
        assert_eq!(s.base[1], 3.0);
        assert!(serde_json::from_str::<FileConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn step_expansion() {
        assert_eq!(expand_steps(vec![5], 3).unwrap(), [5, 5, 5]);
        assert_eq!(expand_steps(vec![1, 2], 2).unwrap(), [1, 2]);
        assert!(expand_steps(vec![1, 2], 3).is_err());
    }
}
