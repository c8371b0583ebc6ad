//! Problem sets: interned symbols, premises (facts) and conjectures.
//!
//! A corpus is read from a line-oriented text format:
//!
//! ```text
//! # comment
//! F <name>: <sym>, <sym>, ...
//! C <name>: <sym>, <sym>, ... ; <required fact> ... [; <accessible fact> ...]
//! ```
//!
//! Symbols arrive pre-extracted. A fact's symbols form a set, so repeating a
//! symbol on one line has no effect on occurrence counts.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

/// Dense index into a corpus symbol table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(u32);

impl SymbolId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Dense index into the fact list of a corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactId(u32);

impl FactId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("line {line}: malformed record: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: duplicate name `{name}`")]
    DuplicateName { line: usize, name: String },
    #[error("line {line}: unknown fact `{name}`")]
    UnknownFact { line: usize, name: String },
    #[error("line {line}: empty symbol list")]
    EmptySymbols { line: usize },
    #[error("line {line}: conjecture `{name}` has no required premises")]
    EmptyRequired { line: usize, name: String },
    #[error("line {line}: required fact `{fact}` of `{name}` is not accessible")]
    RequiredNotAccessible {
        line: usize,
        name: String,
        fact: String,
    },
}

/// Interning table mapping symbol names to dense ids.
#[derive(Debug, Clone, Default)]
pub struct SymbolTable {
    names: Vec<String>,
    ids: HashMap<String, SymbolId>,
}

impl SymbolTable {
    pub fn intern(&mut self, name: &str) -> SymbolId {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = SymbolId(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.ids.insert(name.to_owned(), id);
        id
    }

    pub fn get(&self, name: &str) -> Option<SymbolId> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (SymbolId, &str)> {
        self.names
            .iter()
            .enumerate()
            .map(|(i, n)| (SymbolId(i as u32), n.as_str()))
    }
}

/// A premise together with the set of symbols occurring in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub name: String,
    /// Sorted, duplicate free, never empty.
    pub symbols: Vec<SymbolId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjecture {
    pub name: String,
    /// Sorted, duplicate free, never empty.
    pub goal_symbols: Vec<SymbolId>,
    /// Premises used by the reference proof. Sorted, never empty.
    pub required: Vec<FactId>,
    /// Candidate premises. Sorted; a superset of `required`.
    pub accessible: Vec<FactId>,
}

impl Conjecture {
    pub fn is_accessible(&self, fact: FactId) -> bool {
        self.accessible.binary_search(&fact).is_ok()
    }
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    symbols: SymbolTable,
    facts: Vec<Fact>,
    conjectures: Vec<Conjecture>,
    fact_ids: HashMap<String, FactId>,
}

impl Corpus {
    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn fact(&self, id: FactId) -> &Fact {
        &self.facts[id.index()]
    }

    pub fn fact_id(&self, name: &str) -> Option<FactId> {
        self.fact_ids.get(name).copied()
    }

    pub fn fact_ids(&self) -> impl Iterator<Item = FactId> {
        (0..self.facts.len() as u32).map(FactId)
    }

    pub fn conjectures(&self) -> &[Conjecture] {
        &self.conjectures
    }

    pub fn conjecture(&self, name: &str) -> Option<&Conjecture> {
        self.conjectures.iter().find(|c| c.name == name)
    }

    /// Fact names for a list of ids, in the given order.
    pub fn fact_names<'a>(&'a self, ids: &'a [FactId]) -> impl Iterator<Item = &'a str> + 'a {
        ids.iter().map(|&id| self.facts[id.index()].name.as_str())
    }

    /// Renders the corpus back into the text format accepted by [`parse_corpus`].
    ///
    /// The accessible group is written only when it differs from the full fact
    /// list.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let sym = |ids: &[SymbolId]| {
            ids.iter()
                .map(|&s| self.symbols.name(s))
                .collect::<Vec<_>>()
                .join(", ")
        };
        for fact in &self.facts {
            let _ = writeln!(out, "F {}: {}", fact.name, sym(&fact.symbols));
        }
        for conj in &self.conjectures {
            let required = self.fact_names(&conj.required).collect::<Vec<_>>().join(" ");
            let _ = write!(out, "C {}: {} ; {}", conj.name, sym(&conj.goal_symbols), required);
            if conj.accessible.len() != self.facts.len() {
                let accessible = self.fact_names(&conj.accessible).collect::<Vec<_>>().join(" ");
                let _ = write!(out, " ; {accessible}");
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Corpus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Number of facts each symbol occurs in, indexed by [`SymbolId`].
///
/// Symbols that occur only in conjectures have count zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrences(Vec<u32>);

impl Occurrences {
    pub fn get(&self, symbol: SymbolId) -> u32 {
        self.0[symbol.index()]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

pub fn symbol_occurrences(corpus: &Corpus) -> Occurrences {
    let mut counts = vec![0u32; corpus.symbols.len()];
    for fact in &corpus.facts {
        for s in &fact.symbols {
            counts[s.index()] += 1;
        }
    }
    Occurrences(counts)
}

fn is_valid_name(token: &str) -> bool {
    !token.is_empty()
        && !token
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ':' | ',' | ';' | '#'))
}

struct PendingConjecture {
    line: usize,
    name: String,
    goal_symbols: Vec<SymbolId>,
    required: Vec<String>,
    accessible: Option<Vec<String>>,
}

fn malformed(line: usize, reason: impl Into<String>) -> CorpusError {
    CorpusError::Malformed {
        line,
        reason: reason.into(),
    }
}

fn split_header(line: usize, body: &str) -> Result<(&str, &str), CorpusError> {
    let (name, rest) = body
        .split_once(':')
        .ok_or_else(|| malformed(line, "missing `:` after name"))?;
    let name = name.trim();
    if !is_valid_name(name) {
        return Err(malformed(line, format!("invalid name `{name}`")));
    }
    Ok((name, rest))
}

fn parse_symbols(
    line: usize,
    list: &str,
    table: &mut SymbolTable,
) -> Result<Vec<SymbolId>, CorpusError> {
    if list.trim().is_empty() {
        return Err(CorpusError::EmptySymbols { line });
    }
    let mut ids = Vec::new();
    for token in list.split(',') {
        let token = token.trim();
        if !is_valid_name(token) {
            return Err(malformed(line, format!("invalid symbol `{token}`")));
        }
        ids.push(table.intern(token));
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

fn parse_fact_list(line: usize, list: &str) -> Result<Vec<String>, CorpusError> {
    list.split_whitespace()
        .map(|token| {
            if is_valid_name(token) {
                Ok(token.to_owned())
            } else {
                Err(malformed(line, format!("invalid fact name `{token}`")))
            }
        })
        .collect()
}

/// Parses a corpus document. Line numbers in errors are 1-based.
pub fn parse_corpus(text: &str) -> Result<Corpus, CorpusError> {
    let mut corpus = Corpus::default();
    let mut pending = Vec::new();
    let mut conjecture_names: HashMap<String, usize> = HashMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut chars = trimmed.chars();
        let tag = chars.next().unwrap_or_default();
        let body = chars.as_str();
        if !body.starts_with(char::is_whitespace) {
            return Err(malformed(line, "expected `F ` or `C ` record"));
        }
        match tag {
            'F' => {
                let (name, rest) = split_header(line, body)?;
                if rest.contains(';') {
                    return Err(malformed(line, "unexpected `;` in fact record"));
                }
                if corpus.fact_ids.contains_key(name) || conjecture_names.contains_key(name) {
                    return Err(CorpusError::DuplicateName {
                        line,
                        name: name.to_owned(),
                    });
                }
                let symbols = parse_symbols(line, rest, &mut corpus.symbols)?;
                let id = FactId(corpus.facts.len() as u32);
                corpus.fact_ids.insert(name.to_owned(), id);
                corpus.facts.push(Fact {
                    name: name.to_owned(),
                    symbols,
                });
            }
            'C' => {
                let (name, rest) = split_header(line, body)?;
                if corpus.fact_ids.contains_key(name) || conjecture_names.contains_key(name) {
                    return Err(CorpusError::DuplicateName {
                        line,
                        name: name.to_owned(),
                    });
                }
                let mut groups = rest.split(';');
                let goal = groups.next().unwrap_or_default();
                let required = groups
                    .next()
                    .ok_or_else(|| malformed(line, "missing `;` before required facts"))?;
                let accessible = groups.next();
                if groups.next().is_some() {
                    return Err(malformed(line, "too many `;` groups"));
                }
                let goal_symbols = parse_symbols(line, goal, &mut corpus.symbols)?;
                let required = parse_fact_list(line, required)?;
                if required.is_empty() {
                    return Err(CorpusError::EmptyRequired {
                        line,
                        name: name.to_owned(),
                    });
                }
                let accessible = accessible.map(|a| parse_fact_list(line, a)).transpose()?;
                conjecture_names.insert(name.to_owned(), line);
                pending.push(PendingConjecture {
                    line,
                    name: name.to_owned(),
                    goal_symbols,
                    required,
                    accessible,
                });
            }
            _ => return Err(malformed(line, format!("unknown record tag `{tag}`"))),
        }
    }

    // Facts may be declared after the conjectures that reference them.
    for conj in pending {
        // A fact name that collides with a later conjecture name.
        if corpus.fact_ids.contains_key(&conj.name) {
            return Err(CorpusError::DuplicateName {
                line: conj.line,
                name: conj.name,
            });
        }
        let resolve = |names: &[String]| -> Result<Vec<FactId>, CorpusError> {
            let mut ids = names
                .iter()
                .map(|n| {
                    corpus.fact_ids.get(n).copied().ok_or_else(|| CorpusError::UnknownFact {
                        line: conj.line,
                        name: n.clone(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            ids.sort_unstable();
            ids.dedup();
            Ok(ids)
        };
        let required = resolve(&conj.required)?;
        let accessible = match &conj.accessible {
            Some(names) => resolve(names)?,
            None => corpus.fact_ids().collect(),
        };
        if let Some(&missing) = required.iter().find(|f| accessible.binary_search(f).is_err()) {
            return Err(CorpusError::RequiredNotAccessible {
                line: conj.line,
                name: conj.name,
                fact: corpus.facts[missing.index()].name.clone(),
            });
        }
        corpus.conjectures.push(Conjecture {
            name: conj.name,
            goal_symbols: conj.goal_symbols,
            required,
            accessible,
        });
    }
    Ok(corpus)
}
