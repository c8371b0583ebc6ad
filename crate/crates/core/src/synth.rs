//! Random corpora for experiments and tests.
//!
//! Symbol frequencies follow a Zipf law with exponent 1. Each conjecture's
//! required premises are a random subset (at most eight facts) of what SInE
//! selects for it under a hidden parameter triple, so a tuner has a known
//! region of good parameters to find.

use std::fmt::Write as _;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::corpus::{parse_corpus, symbol_occurrences, Conjecture};
use crate::sine::{Selector, SineParams};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("{0} must be at least 1")]
    Zero(&'static str),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub n_facts: usize,
    pub n_symbols: usize,
    pub n_conjectures: usize,
    pub seed: u64,
    /// Symbols per fact, inclusive range.
    pub fact_size: (usize, usize),
    /// Goal symbols per conjecture, inclusive range.
    pub goal_size: (usize, usize),
    pub max_required: usize,
    /// Parameters whose selections the required sets are drawn from.
    pub hidden: SineParams,
}

impl GenConfig {
    pub fn new(n_facts: usize, n_symbols: usize, n_conjectures: usize, seed: u64) -> Self {
        Self {
            n_facts,
            n_symbols,
            n_conjectures,
            seed,
            fact_size: (2, 5),
            goal_size: (1, 3),
            max_required: 8,
            hidden: SineParams::new(2.0, 2, 2).expect("valid"),
        }
    }

    fn validate(&self) -> Result<(), GenError> {
        for (v, name) in [
            (self.n_facts, "number of facts"),
            (self.n_symbols, "number of symbols"),
            (self.n_conjectures, "number of conjectures"),
            (self.fact_size.0, "fact size"),
            (self.goal_size.0, "goal size"),
            (self.max_required, "required set size"),
        ] {
            if v == 0 {
                return Err(GenError::Zero(name));
            }
        }
        Ok(())
    }
}

fn draw_distinct<R: Rng>(rng: &mut R, zipf: &WeightedIndex<f64>, n_symbols: usize, want: usize) -> Vec<usize> {
    let want = want.min(n_symbols);
    let mut out: Vec<usize> = Vec::with_capacity(want);
    // Rejection sampling; fall back to a linear scan if the head dominates.
    for _ in 0..want * 50 {
        if out.len() == want {
            break;
        }
        let s = zipf.sample(rng);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    let mut next = 0;
    while out.len() < want {
        if !out.contains(&next) {
            out.push(next);
        }
        next += 1;
    }
    out
}

/// Generates a corpus document; identical configs give identical text.
pub fn generate(config: &GenConfig) -> Result<String, GenError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let weights: Vec<f64> = (1..=config.n_symbols).map(|r| 1.0 / r as f64).collect();
    let zipf = WeightedIndex::new(&weights).expect("positive weights");
    let (lo, hi) = (config.fact_size.0, config.fact_size.1.max(config.fact_size.0));

    let mut text = String::new();
    for f in 0..config.n_facts {
        let size = rng.gen_range(lo..=hi);
        let mut syms = draw_distinct(&mut rng, &zipf, config.n_symbols, size);
        syms.sort_unstable();
        let list: Vec<String> = syms.iter().map(|s| format!("s{s}")).collect();
        let _ = writeln!(text, "F f{f}: {}", list.join(", "));
    }

    let facts = parse_corpus(&text).expect("generated facts are well formed");
    let occ = symbol_occurrences(&facts);
    let selector = Selector::new(&facts, &occ, &config.hidden);
    let all_facts: Vec<_> = facts.fact_ids().collect();
    let (glo, ghi) = (config.goal_size.0, config.goal_size.1.max(config.goal_size.0));

    for c in 0..config.n_conjectures {
        let mut chosen = None;
        for _ in 0..20 {
            let size = rng.gen_range(glo..=ghi);
            let goal = draw_distinct(&mut rng, &zipf, config.n_symbols, size);
            let goal_ids: Vec<_> = goal
                .iter()
                .filter_map(|s| facts.symbols().get(&format!("s{s}")))
                .collect();
            if goal_ids.is_empty() {
                continue;
            }
            let mut goal_symbols = goal_ids;
            goal_symbols.sort_unstable();
            let probe = Conjecture {
                name: String::new(),
                goal_symbols,
                required: Vec::new(),
                accessible: all_facts.clone(),
            };
            let selected = selector.select(&probe);
            if !selected.is_empty() {
                chosen = Some((goal, selected));
                break;
            }
        }
        let (goal, selected) = chosen.unwrap_or_else(|| {
            // Anchor on a random fact through its rarest symbol.
            let f = all_facts[rng.gen_range(0..all_facts.len())];
            let rarest = *facts
                .fact(f)
                .symbols
                .iter()
                .min_by_key(|&&s| occ.get(s))
                .expect("facts are non-empty");
            let name = facts.symbols().name(rarest);
            (vec![name[1..].parse().expect("generated name")], vec![f])
        });
        let take = rng.gen_range(1..=selected.len().min(config.max_required));
        let mut required: Vec<_> = selected.choose_multiple(&mut rng, take).copied().collect();
        required.sort_unstable();
        let goal: Vec<String> = goal.iter().map(|s| format!("s{s}")).collect();
        let required: Vec<&str> = facts.fact_names(&required).collect();
        let _ = writeln!(text, "C c{c}: {} ; {}", goal.join(", "), required.join(" "));
    }
    Ok(text)
}
