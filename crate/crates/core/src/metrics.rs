//! Scoring premise recommendations against reference proofs.
//!
//! Each conjecture `i` with required premises `P` and recommendation `R`
//! scores
//!
//! ```text
//! S_i = |R ∩ P| / |P| + |R ∩ P| / 2^|R|      (0 when R is empty)
//! ```
//!
//! and a corpus scores the sum of its conjectures. The first term is recall;
//! the second rewards small recommendations and decays exponentially with
//! their size.

use std::collections::BTreeSet;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{symbol_occurrences, Corpus, FactId};
use crate::sine::{Selector, SineParams};

/// Score from set sizes. `required` must be positive.
pub fn score_from_counts(required: usize, recommended: usize, intersection: usize) -> f64 {
    debug_assert!(required > 0);
    if recommended == 0 {
        return 0.0;
    }
    let hits = intersection as f64;
    hits / required as f64 + hits * (-(recommended as f64)).exp2()
}

pub fn score_conjecture<T: Ord>(required: &BTreeSet<T>, recommended: &BTreeSet<T>) -> f64 {
    let hits = required.intersection(recommended).count();
    score_from_counts(required.len(), recommended.len(), hits)
}

/// Size of the intersection of two ascending id lists.
fn sorted_intersection(a: &[FactId], b: &[FactId]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureScore {
    pub conjecture: String,
    pub score: f64,
    pub recommended: usize,
    pub intersection: usize,
    /// Every required premise was recommended.
    pub proved: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreReport {
    pub per_conjecture: Vec<ConjectureScore>,
    pub total: f64,
    pub proofs_found_fraction: f64,
}

#[derive(Serialize)]
struct Summary {
    total: f64,
    proofs_found_fraction: f64,
    params: ParamsJson,
    conjectures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time: Option<f64>,
}

/// `{t, g, k}` as written in JSON summaries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct ParamsJson {
    pub t: f64,
    pub g: u32,
    pub k: u32,
}

impl From<&SineParams> for ParamsJson {
    fn from(p: &SineParams) -> Self {
        Self {
            t: p.tolerance(),
            g: p.generality(),
            k: p.depth(),
        }
    }
}

impl ScoreReport {
    /// CSV with header `conjecture,S_i,recommended,intersection`, in corpus order.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "conjecture,S_i,recommended,intersection")?;
        for row in &self.per_conjecture {
            writeln!(
                out,
                "{},{},{},{}",
                row.conjecture, row.score, row.recommended, row.intersection
            )?;
        }
        Ok(())
    }

    pub fn summary_json(&self, params: &SineParams, wall_time: Option<f64>) -> serde_json::Value {
        serde_json::to_value(Summary {
            total: self.total,
            proofs_found_fraction: self.proofs_found_fraction,
            params: params.into(),
            conjectures: self.per_conjecture.len(),
            wall_time,
        })
        .expect("summary is plain data")
    }
}

/// Recommendations for every conjecture, in corpus order.
///
/// Conjectures are processed in parallel on the current rayon pool; the
/// output does not depend on the pool size.
pub fn select_all(corpus: &Corpus, params: &SineParams) -> Vec<Vec<FactId>> {
    let occ = symbol_occurrences(corpus);
    let selector = Selector::new(corpus, &occ, params);
    corpus
        .conjectures()
        .par_iter()
        .map(|c| selector.select(c))
        .collect()
}

pub fn evaluate(corpus: &Corpus, params: &SineParams) -> ScoreReport {
    let selections = select_all(corpus, params);
    let per_conjecture: Vec<ConjectureScore> = corpus
        .conjectures()
        .iter()
        .zip(&selections)
        .map(|(conj, rec)| {
            let hits = sorted_intersection(&conj.required, rec);
            ConjectureScore {
                conjecture: conj.name.clone(),
                score: score_from_counts(conj.required.len(), rec.len(), hits),
                recommended: rec.len(),
                intersection: hits,
                proved: hits == conj.required.len(),
            }
        })
        .collect();
    // Sequential sum so the total is bitwise independent of thread count.
    let total = per_conjecture.iter().map(|r| r.score).sum();
    let proved = per_conjecture.iter().filter(|r| r.proved).count();
    let proofs_found_fraction = if per_conjecture.is_empty() {
        0.0
    } else {
        proved as f64 / per_conjecture.len() as f64
    };
    ScoreReport {
        per_conjecture,
        total,
        proofs_found_fraction,
    }
}

/// Sum of per-conjecture scores.
pub fn aggregate_score(corpus: &Corpus, params: &SineParams) -> f64 {
    evaluate(corpus, params).total
}

/// Fraction of conjectures whose required premises were all recommended.
pub fn proofs_found(corpus: &Corpus, params: &SineParams) -> f64 {
    evaluate(corpus, params).proofs_found_fraction
}
