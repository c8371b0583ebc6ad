#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::Rng;
use sinetune::corpus::{parse_corpus, Conjecture, Corpus};

/// Random corpus with at most `max_facts` facts over at most `max_symbols`
/// symbols, one to three conjectures, some with restricted accessibility.
pub fn random_corpus<R: Rng>(rng: &mut R, max_facts: usize, max_symbols: usize) -> Corpus {
    let n_facts = rng.gen_range(1..=max_facts);
    let n_symbols = rng.gen_range(1..=max_symbols);
    let mut text = String::new();
    for f in 0..n_facts {
        let mut syms: Vec<usize> = (0..n_symbols).filter(|_| rng.gen_bool(0.4)).collect();
        if syms.is_empty() {
            syms.push(rng.gen_range(0..n_symbols));
        }
        let list: Vec<String> = syms.iter().map(|s| format!("s{s}")).collect();
        writeln!(text, "F p{f}: {}", list.join(", ")).unwrap();
    }
    for c in 0..rng.gen_range(1..=3) {
        // Goal symbols may include one that occurs in no fact.
        let mut goal: Vec<String> = (0..n_symbols)
            .filter(|_| rng.gen_bool(0.3))
            .map(|s| format!("s{s}"))
            .collect();
        if goal.is_empty() || rng.gen_bool(0.1) {
            goal.push(format!("z{c}"));
        }
        let accessible: Vec<usize> = if rng.gen_bool(0.3) {
            let a: Vec<usize> = (0..n_facts).filter(|_| rng.gen_bool(0.7)).collect();
            if a.is_empty() {
                vec![0]
            } else {
                a
            }
        } else {
            (0..n_facts).collect()
        };
        let required: Vec<usize> = {
            let r: Vec<usize> = accessible.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
            if r.is_empty() {
                vec![accessible[0]]
            } else {
                r
            }
        };
        let names = |v: &[usize]| v.iter().map(|f| format!("p{f}")).collect::<Vec<_>>().join(" ");
        write!(text, "C c{c}: {} ; {}", goal.join(", "), names(&required)).unwrap();
        if accessible.len() != n_facts {
            write!(text, " ; {}", names(&accessible)).unwrap();
        }
        text.push('\n');
    }
    parse_corpus(&text).expect("generated corpus parses")
}

/// SInE selection recomputed from the definitions: occurrence counts by
/// scanning, the trigger relation with an explicit quantifier over the
/// premise's symbols, and k rounds of set expansion without any index or
/// early exit.
pub fn oracle_select(corpus: &Corpus, conj: &Conjecture, t: f64, g: u32, k: u32) -> BTreeSet<String> {
    let facts = corpus.facts();
    let occ = |name: &str| -> f64 {
        facts
            .iter()
            .filter(|f| f.symbols.iter().any(|&s| corpus.symbols().name(s) == name))
            .count() as f64
    };
    let symbols_of = |f: usize| -> BTreeSet<String> {
        facts[f]
            .symbols
            .iter()
            .map(|&s| corpus.symbols().name(s).to_owned())
            .collect()
    };
    let triggers = |s: &str, f: usize| -> bool {
        let syms = symbols_of(f);
        syms.contains(s) && (occ(s) <= f64::from(g) || syms.iter().all(|o| occ(s) <= t * occ(o)))
    };
    let accessible: BTreeSet<String> = corpus.fact_names(&conj.accessible).map(str::to_owned).collect();

    let mut triggered_symbols: BTreeSet<String> = conj
        .goal_symbols
        .iter()
        .map(|&s| corpus.symbols().name(s).to_owned())
        .collect();
    let mut triggered_facts: BTreeSet<usize> = BTreeSet::new();
    for _ in 0..k {
        let step: BTreeSet<usize> = (0..facts.len())
            .filter(|&f| accessible.contains(&facts[f].name))
            .filter(|&f| triggered_symbols.iter().any(|s| triggers(s, f)))
            .collect();
        for &f in &step {
            triggered_symbols.extend(symbols_of(f));
        }
        triggered_facts.extend(step);
    }
    triggered_facts.into_iter().map(|f| facts[f].name.clone()).collect()
}

/// Corpus whose score is a non-decreasing step function of `t` when
/// `g = 1` and `k >= 1`.
///
/// Conjecture `i` has goal symbol `s{i}` occurring in `thresholds[i]` facts,
/// each paired with a symbol of its own (occurrence 1). So `s{i}` triggers
/// all of its facts exactly when `t >= thresholds[i]`, and all of them are
/// required. Each conjecture's score jumps from 0 to its maximum once.
pub fn monotone_corpus(thresholds: &[u32]) -> Corpus {
    let mut text = String::new();
    let mut conjectures = String::new();
    for (i, &theta) in thresholds.iter().enumerate() {
        assert!(theta >= 2, "threshold must exceed g = 1");
        let mut required = Vec::new();
        for j in 0..theta {
            writeln!(text, "F f{i}_{j}: s{i}, u{i}_{j}").unwrap();
            required.push(format!("f{i}_{j}"));
        }
        writeln!(conjectures, "C c{i}: s{i} ; {}", required.join(" ")).unwrap();
    }
    text.push_str(&conjectures);
    parse_corpus(&text).unwrap()
}

pub fn names(corpus: &Corpus, ids: &[sinetune::corpus::FactId]) -> BTreeSet<String> {
    corpus.fact_names(ids).map(str::to_owned).collect()
}
