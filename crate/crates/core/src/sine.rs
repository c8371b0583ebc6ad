//! The SInE premise selector.
//!
//! A symbol `s` *triggers* a premise `p` when `s` occurs in `p` and either
//! `occ(s) <= g` or `occ(s) <= t * occ(s')` for every symbol `s'` of `p`.
//! Starting from the goal symbols, premises triggered by already triggered
//! symbols are collected for `k` rounds; the symbols of every collected premise
//! become triggered in turn.

use thiserror::Error;

use crate::corpus::{symbol_occurrences, Conjecture, Corpus, Fact, FactId, Occurrences, SymbolId};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("tolerance must be finite and > 0, got {0}")]
    Tolerance(f64),
    #[error("generality threshold must be >= 1, got {0}")]
    Generality(u32),
}

/// Tolerance `t`, generality threshold `g` and depth `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineParams {
    tolerance: f64,
    generality: u32,
    depth: u32,
}

impl SineParams {
    pub fn new(tolerance: f64, generality: u32, depth: u32) -> Result<Self, ParamError> {
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(ParamError::Tolerance(tolerance));
        }
        if generality < 1 {
            return Err(ParamError::Generality(generality));
        }
        Ok(Self {
            tolerance,
            generality,
            depth,
        })
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn generality(&self) -> u32 {
        self.generality
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn with_depth(self, depth: u32) -> Self {
        Self { depth, ..self }
    }
}

fn min_occurrence(occ: &Occurrences, fact: &Fact) -> u32 {
    fact.symbols.iter().map(|&s| occ.get(s)).min().unwrap_or(0)
}

fn passes_threshold(occ_s: u32, min_occ: u32, params: &SineParams) -> bool {
    occ_s <= params.generality || f64::from(occ_s) <= params.tolerance * f64::from(min_occ)
}

/// Whether `symbol` triggers `fact` under `params`.
pub fn triggers(occ: &Occurrences, params: &SineParams, symbol: SymbolId, fact: &Fact) -> bool {
    fact.symbols.binary_search(&symbol).is_ok()
        && passes_threshold(occ.get(symbol), min_occurrence(occ, fact), params)
}

/// For every symbol, the facts it triggers (ascending fact order).
#[derive(Debug, Clone)]
pub struct TriggerIndex {
    by_symbol: Vec<Vec<FactId>>,
}

impl TriggerIndex {
    pub fn build(corpus: &Corpus, occ: &Occurrences, params: &SineParams) -> Self {
        let mut by_symbol = vec![Vec::new(); corpus.symbols().len()];
        for id in corpus.fact_ids() {
            let fact = corpus.fact(id);
            let min_occ = min_occurrence(occ, fact);
            for &s in &fact.symbols {
                if passes_threshold(occ.get(s), min_occ, params) {
                    by_symbol[s.index()].push(id);
                }
            }
        }
        Self { by_symbol }
    }

    pub fn triggered_by(&self, symbol: SymbolId) -> &[FactId] {
        &self.by_symbol[symbol.index()]
    }
}

pub fn build_trigger_index(corpus: &Corpus, params: &SineParams) -> TriggerIndex {
    TriggerIndex::build(corpus, &symbol_occurrences(corpus), params)
}

/// A trigger index bound to one corpus, reusable across conjectures.
#[derive(Debug, Clone)]
pub struct Selector<'c> {
    corpus: &'c Corpus,
    index: TriggerIndex,
    depth: u32,
}

impl<'c> Selector<'c> {
    pub fn new(corpus: &'c Corpus, occ: &Occurrences, params: &SineParams) -> Self {
        Self {
            corpus,
            index: TriggerIndex::build(corpus, occ, params),
            depth: params.depth,
        }
    }

    pub fn index(&self) -> &TriggerIndex {
        &self.index
    }

    /// Recommended premises for `conjecture`, sorted by fact id.
    ///
    /// Stops before `depth` rounds once no new premise is triggered.
    pub fn select(&self, conjecture: &Conjecture) -> Vec<FactId> {
        let n_symbols = self.corpus.symbols().len();
        let mut symbol_seen = vec![false; n_symbols];
        let mut fact_seen = vec![false; self.corpus.facts().len()];
        let mut frontier: Vec<SymbolId> = Vec::new();
        for &s in &conjecture.goal_symbols {
            if !symbol_seen[s.index()] {
                symbol_seen[s.index()] = true;
                frontier.push(s);
            }
        }

        let mut selected = Vec::new();
        for _ in 0..self.depth {
            let mut new_facts = Vec::new();
            for &s in &frontier {
                for &f in self.index.triggered_by(s) {
                    if !fact_seen[f.index()] && conjecture.is_accessible(f) {
                        fact_seen[f.index()] = true;
                        new_facts.push(f);
                    }
                }
            }
            if new_facts.is_empty() {
                break;
            }
            frontier.clear();
            for &f in &new_facts {
                for &s in &self.corpus.fact(f).symbols {
                    if !symbol_seen[s.index()] {
                        symbol_seen[s.index()] = true;
                        frontier.push(s);
                    }
                }
            }
            selected.extend(new_facts);
        }
        selected.sort_unstable();
        selected
    }
}

/// One-shot selection; builds a fresh index. Prefer [`Selector`] when
/// scoring many conjectures.
pub fn select_premises(corpus: &Corpus, conjecture: &Conjecture, params: &SineParams) -> Vec<FactId> {
    Selector::new(corpus, &symbol_occurrences(corpus), params).select(conjecture)
}
