//! Quantified equation systems: syntax tree, parser, renderer and desugaring.
//!
//! ```text
//! system   := block+ matrix
//! block    := ("forall" | "exists") ident+ "."
//! matrix   := disjunct ("|" disjunct)*
//! disjunct := atom ("&" atom)*
//! atom     := word "=" word | word "in" "V(" word ")" | word "in" "E"
//!           | word "in" "G" | word ("R"|"L"|"H"|"D"|"J") word
//! word     := factor ("*" factor)*
//! factor   := (ident | "(" word ")") ("^" posint)?
//! ```
//!
//! Powers are expanded while parsing and adjacent blocks with the same
//! quantifier are merged, so the tree is always in alternation normal form.

mod parser;
mod render;

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use parser::{parse, parse_many, parse_word, MAX_EXPONENT, MAX_WORD_LENGTH};
pub use render::{desugar, render};

pub type Symbol = String;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DslError {
    /// Malformed input; positions are 1-based.
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    /// A symbol in the matrix that no quantifier binds.
    #[error("unbound symbol `{symbol}` at line {line}, column {column}")]
    UnboundSymbol { symbol: String, line: usize, column: usize },
    /// A symbol bound twice in the prefix.
    #[error("symbol `{0}` is bound more than once")]
    DuplicateBinder(String),
    /// A structurally invalid tree built through the API.
    #[error("invalid system: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Forall => "forall",
            Quantifier::Exists => "exists",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GreenRel {
    R,
    L,
    H,
    D,
    J,
}

impl GreenRel {
    pub const ALL: [GreenRel; 5] = [GreenRel::R, GreenRel::L, GreenRel::H, GreenRel::D, GreenRel::J];

    pub fn letter(self) -> char {
        match self {
            GreenRel::R => 'R',
            GreenRel::L => 'L',
            GreenRel::H => 'H',
            GreenRel::D => 'D',
            GreenRel::J => 'J',
        }
    }

    pub fn from_letter(c: char) -> Option<GreenRel> {
        GreenRel::ALL.into_iter().find(|r| r.letter() == c)
    }
}

/// A nonempty product of bound symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn new<S: Into<Symbol>, I: IntoIterator<Item = S>>(symbols: I) -> Word {
        Word(symbols.into_iter().map(Into::into).collect())
    }

    pub fn symbol(s: &str) -> Word {
        Word(vec![s.to_string()])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join("*"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    WordEq(Word, Word),
    /// `x ∈ V(a)`: `x` is an inverse of `a`.
    InV {
        x: Word,
        a: Word,
    },
    /// `w ∈ E`: `w` is idempotent.
    InE(Word),
    /// `w ∈ G`: `w` lies in a subgroup.
    InG(Word),
    Green {
        rel: GreenRel,
        u: Word,
        v: Word,
    },
}

impl Atom {
    pub fn words(&self) -> Vec<&Word> {
        match self {
            Atom::WordEq(u, v) | Atom::InV { x: u, a: v } | Atom::Green { u, v, .. } => vec![u, v],
            Atom::InE(w) | Atom::InG(w) => vec![w],
        }
    }

    pub fn words_mut(&mut self) -> Vec<&mut Word> {
        match self {
            Atom::WordEq(u, v) | Atom::InV { x: u, a: v } | Atom::Green { u, v, .. } => vec![u, v],
            Atom::InE(w) | Atom::InG(w) => vec![w],
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.words().into_iter().flat_map(|w| w.0.iter())
    }

    /// True for atoms that need Green's relations rather than the table alone.
    pub fn is_semantic(&self) -> bool {
        matches!(self, Atom::InG(_) | Atom::Green { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub quantifier: Quantifier,
    pub symbols: Vec<Symbol>,
}

/// A prenex sentence whose matrix is a disjunction of conjunctions of atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EquationSystem {
    pub prefix: Vec<Block>,
    pub matrix: Vec<Vec<Atom>>,
}

impl EquationSystem {
    /// Builds a system, merging adjacent blocks with equal quantifiers and
    /// checking that binders are distinct and every matrix symbol is bound.
    pub fn new(prefix: Vec<Block>, matrix: Vec<Vec<Atom>>) -> Result<EquationSystem, DslError> {
        let mut merged: Vec<Block> = Vec::new();
        for block in prefix {
            if block.symbols.is_empty() {
                return Err(DslError::Invalid("empty quantifier block".into()));
            }
            match merged.last_mut() {
                Some(last) if last.quantifier == block.quantifier => last.symbols.extend(block.symbols),
                _ => merged.push(block),
            }
        }
        if merged.is_empty() {
            return Err(DslError::Invalid("no quantifier blocks".into()));
        }
        let mut seen = HashSet::new();
        for s in merged.iter().flat_map(|b| &b.symbols) {
            if !seen.insert(s.as_str()) {
                return Err(DslError::DuplicateBinder(s.clone()));
            }
        }
        if matrix.is_empty() || matrix.iter().any(Vec::is_empty) {
            return Err(DslError::Invalid("empty matrix or disjunct".into()));
        }
        for atom in matrix.iter().flatten() {
            for w in atom.words() {
                if w.is_empty() {
                    return Err(DslError::Invalid("empty word".into()));
                }
            }
            if let Some(s) = atom.symbols().find(|s| !seen.contains(s.as_str())) {
                return Err(DslError::UnboundSymbol { symbol: s.clone(), line: 0, column: 0 });
            }
        }
        Ok(EquationSystem { prefix: merged, matrix })
    }

    /// Bound symbols in prefix order.
    pub fn symbols(&self) -> Vec<&Symbol> {
        self.prefix.iter().flat_map(|b| &b.symbols).collect()
    }

    pub fn bound_count(&self) -> usize {
        self.prefix.iter().map(|b| b.symbols.len()).sum()
    }

    pub fn quantifier_of(&self, symbol: &str) -> Option<Quantifier> {
        self.prefix.iter().find(|b| b.symbols.iter().any(|s| s == symbol)).map(|b| b.quantifier)
    }

    pub fn leading_quantifier(&self) -> Quantifier {
        self.prefix[0].quantifier
    }

    /// Number of quantifier blocks.
    pub fn alternations(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_disjunctive(&self) -> bool {
        self.matrix.len() > 1
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.matrix.iter().flatten()
    }
}

impl fmt::Display for EquationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl std::str::FromStr for EquationSystem {
    type Err = DslError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
