//! Finite semigroups given by Cayley tables, and the standard constructions on them.
//!
//! Elements are always the dense indices `0..order`. Labels are cosmetic and are
//! carried through constructions only so that reports stay readable.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};

use thiserror::Error;

use crate::closure::Congruence;

/// Index of an element inside its semigroup.
pub type Element = usize;

static RECHECK_CONSTRUCTIONS: AtomicBool = AtomicBool::new(cfg!(debug_assertions));

/// Turns the associativity re-check of derived tables (products, quotients,
/// subsemigroups) on or off. It is on by default in debug builds.
pub fn set_construction_recheck(enabled: bool) {
    RECHECK_CONSTRUCTIONS.store(enabled, Ordering::Relaxed);
}

/// Errors raised while building or transforming a semigroup.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    /// A table with no rows.
    #[error("a semigroup needs at least one element")]
    Empty,
    /// A row whose length differs from the number of rows.
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    /// `table[i][j]` is not a valid element index.
    #[error("entry at row {0}, column {1} is out of range")]
    OutOfRangeEntry(usize, usize),
    /// The first triple `(i, j, k)` in lexicographic order with `(ij)k != i(jk)`.
    #[error("not associative: ({0}*{1})*{2} differs from {0}*({1}*{2})")]
    NonAssociative(usize, usize, usize),
    #[error("invalid labels: {0}")]
    InvalidLabels(String),
    #[error("element index {0} is out of range")]
    ElementOutOfRange(usize),
    #[error("generator set is empty")]
    EmptyGeneratorSet,
    #[error("partition is not a congruence: {0}")]
    NotACongruence(String),
    #[error("subset is not a two-sided ideal")]
    NotAnIdeal,
    #[error("unsupported family parameter: {0}")]
    UnsupportedParameter(String),
}

/// A set of elements of some parent semigroup, stored as membership flags.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementSubset {
    flags: Vec<bool>,
}

impl ElementSubset {
    pub fn empty(parent_order: usize) -> Self {
        ElementSubset { flags: vec![false; parent_order] }
    }

    pub fn full(parent_order: usize) -> Self {
        ElementSubset { flags: vec![true; parent_order] }
    }

    pub fn from_indices<I>(parent_order: usize, indices: I) -> Result<Self, SemigroupError>
    where
        I: IntoIterator<Item = Element>,
    {
        let mut set = Self::empty(parent_order);
        for i in indices {
            if i >= parent_order {
                return Err(SemigroupError::ElementOutOfRange(i));
            }
            set.flags[i] = true;
        }
        Ok(set)
    }

    pub fn from_flags(flags: Vec<bool>) -> Self {
        ElementSubset { flags }
    }

    pub fn parent_order(&self) -> usize {
        self.flags.len()
    }

    pub fn contains(&self, a: Element) -> bool {
        self.flags.get(a).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, a: Element) {
        self.flags[a] = true;
    }

    pub fn len(&self) -> usize {
        self.flags.iter().filter(|f| **f).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.flags.iter().any(|f| *f)
    }

    /// Members in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.flags.iter().enumerate().filter(|(_, f)| **f).map(|(i, _)| i)
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }
}

/// A finite semigroup: a validated, associative multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<Element>,
    labels: Option<Vec<String>>,
}

/// A subsemigroup together with the map from its indices back to the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsemigroup {
    pub semigroup: FiniteSemigroup,
    pub embedding: Vec<Element>,
}

impl FiniteSemigroup {
    /// Checks a square table and returns the semigroup it defines.
    pub fn validate(rows: &[Vec<usize>]) -> Result<Self, SemigroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(SemigroupError::Empty);
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(SemigroupError::NotSquare { row: i, len: row.len(), expected: n });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(SemigroupError::OutOfRangeEntry(i, j));
                }
                table.push(v);
            }
        }
        let s = FiniteSemigroup { order: n, table, labels: None };
        s.recheck()?;
        Ok(s)
    }

    /// Like [`FiniteSemigroup::validate`] but also attaches display labels.
    pub fn validate_labelled(rows: &[Vec<usize>], labels: Vec<String>) -> Result<Self, SemigroupError> {
        Self::validate(rows)?.with_labels(labels)
    }

    /// Builds a table from a product function. Used by constructions whose
    /// inputs are already known to be associative.
    pub(crate) fn from_fn<F>(order: usize, labels: Vec<String>, mut mul: F) -> Self
    where
        F: FnMut(Element, Element) -> Element,
    {
        let mut table = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                table.push(mul(i, j));
            }
        }
        let s = FiniteSemigroup { order, table, labels: Some(labels) };
        if RECHECK_CONSTRUCTIONS.load(Ordering::Relaxed) {
            if let Err(e) = s.recheck() {
                panic!("internal construction produced an invalid table: {e}");
            }
        }
        s
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, SemigroupError> {
        if labels.len() != self.order {
            return Err(SemigroupError::InvalidLabels(format!("expected {} labels, got {}", self.order, labels.len())));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(SemigroupError::InvalidLabels(format!("label {l:?} is empty or has whitespace")));
            }
            if !seen.insert(l.as_str()) {
                return Err(SemigroupError::InvalidLabels(format!("duplicate label {l:?}")));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Re-runs the full associativity check, reporting the first bad triple.
    pub fn recheck(&self) -> Result<(), SemigroupError> {
        if self.table.iter().any(|&v| v >= self.order) {
            let pos = self.table.iter().position(|&v| v >= self.order).unwrap();
            return Err(SemigroupError::OutOfRangeEntry(pos / self.order, pos % self.order));
        }
        for i in 0..self.order {
            for j in 0..self.order {
                let ij = self.mul(i, j);
                for k in 0..self.order {
                    if self.mul(ij, k) != self.mul(i, self.mul(j, k)) {
                        return Err(SemigroupError::NonAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a * self.order + b]
    }

    /// Product of a nonempty sequence of elements, folded left to right.
    pub fn product<I: IntoIterator<Item = Element>>(&self, elements: I) -> Option<Element> {
        let mut it = elements.into_iter();
        let first = it.next()?;
        Some(it.fold(first, |acc, x| self.mul(acc, x)))
    }

    pub fn row(&self, a: Element) -> &[Element] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<Element>> {
        (0..self.order).map(|a| self.row(a).to_vec()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of an element: its label, or its index.
    pub fn label(&self, a: Element) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    fn all_labels(&self) -> Vec<String> {
        self.elements().map(|a| self.label(a)).collect()
    }

    /// Looks an element up by label, falling back to a numeric index.
    pub fn element_by_label(&self, label: &str) -> Option<Element> {
        if let Some(labels) = &self.labels {
            if let Some(i) = labels.iter().position(|l| l == label) {
                return Some(i);
            }
        }
        label.parse().ok().filter(|&i| i < self.order)
    }

    pub fn is_idempotent(&self, a: Element) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> ElementSubset {
        ElementSubset::from_flags(self.elements().map(|a| self.is_idempotent(a)).collect())
    }

    /// The two-sided identity, if there is one.
    pub fn identity(&self) -> Option<Element> {
        self.elements().find(|&e| self.elements().all(|a| self.mul(e, a) == a && self.mul(a, e) == a))
    }

    pub fn zero(&self) -> Option<Element> {
        self.elements().find(|&z| self.elements().all(|a| self.mul(z, a) == z && self.mul(a, z) == z))
    }

    pub fn is_commutative(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Componentwise product; element `(s, t)` has index `s * |T| + t`.
    pub fn direct_product(&self, other: &FiniteSemigroup) -> FiniteSemigroup {
        let m = other.order;
        let labels = self
            .elements()
            .flat_map(|s| other.elements().map(move |t| (s, t)))
            .map(|(s, t)| format!("({},{})", self.label(s), other.label(t)))
            .collect();
        FiniteSemigroup::from_fn(self.order * m, labels, |x, y| {
            let (s1, t1) = (x / m, x % m);
            let (s2, t2) = (y / m, y % m);
            self.mul(s1, s2) * m + other.mul(t1, t2)
        })
    }

    /// Closure of `gens` under multiplication, re-indexed in parent order.
    pub fn subsemigroup_generated(&self, gens: &ElementSubset) -> Result<Subsemigroup, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::EmptyGeneratorSet);
        }
        if gens.parent_order() != self.order {
            return Err(SemigroupError::ElementOutOfRange(gens.parent_order()));
        }
        let generators = gens.to_vec();
        let mut members = gens.clone();
        let mut frontier = generators.clone();
        while let Some(u) = frontier.pop() {
            for &g in &generators {
                for v in [self.mul(u, g), self.mul(g, u)] {
                    if !members.contains(v) {
                        members.insert(v);
                        frontier.push(v);
                    }
                }
            }
        }
        Ok(self.restrict(&members.to_vec()))
    }

    /// Induced table on a subset known to be closed under multiplication.
    pub(crate) fn restrict(&self, members: &[Element]) -> Subsemigroup {
        let mut position = vec![usize::MAX; self.order];
        for (i, &a) in members.iter().enumerate() {
            position[a] = i;
        }
        let labels = members.iter().map(|&a| self.label(a)).collect();
        let semigroup = FiniteSemigroup::from_fn(members.len(), labels, |i, j| {
            let p = position[self.mul(members[i], members[j])];
            assert!(p != usize::MAX, "subset is not closed under multiplication");
            p
        });
        Subsemigroup { semigroup, embedding: members.to_vec() }
    }

    /// Quotient by a congruence; element `k` is block `k` of `c`.
    pub fn quotient(&self, c: &Congruence) -> Result<FiniteSemigroup, SemigroupError> {
        if c.parent_order() != self.order {
            return Err(SemigroupError::NotACongruence(format!(
                "partition has {} points, semigroup has {} elements",
                c.parent_order(),
                self.order
            )));
        }
        if let Some((a, b, s)) = c.compatibility_violation(self) {
            return Err(SemigroupError::NotACongruence(format!(
                "{} and {} are related but their translates by {} are not",
                self.label(a),
                self.label(b),
                self.label(s)
            )));
        }
        let reps = c.representatives();
        let labels = c
            .blocks()
            .iter()
            .map(|block| {
                let names: Vec<String> = block.iter().map(|&a| self.label(a)).collect();
                format!("[{}]", names.join("|"))
            })
            .collect();
        Ok(FiniteSemigroup::from_fn(reps.len(), labels, |i, j| c.block_of(self.mul(reps[i], reps[j]))))
    }

    pub fn is_ideal(&self, ideal: &ElementSubset) -> bool {
        ideal.iter().all(|i| self.elements().all(|s| ideal.contains(self.mul(s, i)) && ideal.contains(self.mul(i, s))))
    }

    /// Collapses a two-sided ideal to a single zero. The zero takes the
    /// position of the smallest ideal element; other elements keep their order.
    pub fn rees_quotient(&self, ideal: &ElementSubset) -> Result<FiniteSemigroup, SemigroupError> {
        if ideal.is_empty() || ideal.parent_order() != self.order || !self.is_ideal(ideal) {
            return Err(SemigroupError::NotAnIdeal);
        }
        let zero_rep = ideal.iter().next().unwrap();
        let kept: Vec<Element> = self.elements().filter(|&a| !ideal.contains(a) || a == zero_rep).collect();
        let mut position = vec![0; self.order];
        for (i, &a) in kept.iter().enumerate() {
            position[a] = i;
        }
        let zero = position[zero_rep];
        for a in ideal.iter() {
            position[a] = zero;
        }
        let labels = kept
            .iter()
            .map(|&a| if a == zero_rep && ideal.len() > 1 { "0".to_string() } else { self.label(a) })
            .collect::<Vec<_>>();
        let labels = dedup_labels(labels);
        Ok(FiniteSemigroup::from_fn(kept.len(), labels, |i, j| position[self.mul(kept[i], kept[j])]))
    }

    /// `S¹`: returns `self` when an identity exists, otherwise appends one.
    pub fn adjoin_identity(&self) -> FiniteSemigroup {
        if self.identity().is_some() {
            return self.clone();
        }
        let n = self.order;
        let mut labels = self.all_labels();
        labels.push("1".to_string());
        let labels = dedup_labels(labels);
        FiniteSemigroup::from_fn(n + 1, labels, |a, b| match (a == n, b == n) {
            (true, _) => b,
            (_, true) => a,
            _ => self.mul(a, b),
        })
    }

    /// Elements in `a S¹`.
    pub fn right_ideal(&self, a: Element) -> ElementSubset {
        let mut set = ElementSubset::empty(self.order);
        set.insert(a);
        for s in self.elements() {
            set.insert(self.mul(a, s));
        }
        set
    }

    /// Elements in `S¹ a`.
    pub fn left_ideal(&self, a: Element) -> ElementSubset {
        let mut set = ElementSubset::empty(self.order);
        set.insert(a);
        for s in self.elements() {
            set.insert(self.mul(s, a));
        }
        set
    }

    /// Elements in `S¹ a S¹`.
    pub fn two_sided_ideal(&self, a: Element) -> ElementSubset {
        let left = self.left_ideal(a);
        let mut set = left.clone();
        for u in left.iter() {
            for s in self.elements() {
                set.insert(self.mul(u, s));
            }
        }
        set
    }
}

/// Makes labels unique by priming repeats.
fn dedup_labels(labels: Vec<String>) -> Vec<String> {
    let mut seen = BTreeSet::new();
    labels
        .into_iter()
        .map(|mut l| {
            while !seen.insert(l.clone()) {
                l.push('\'');
            }
            l
        })
        .collect()
}

impl fmt::Display for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.all_labels();
        let width = labels.iter().map(String::len).max().unwrap_or(1);
        write!(f, "{:>width$} |", "*")?;
        for l in &labels {
            write!(f, " {l:>width$}")?;
        }
        writeln!(f)?;
        for a in self.elements() {
            write!(f, "{:>width$} |", labels[a])?;
            for b in self.elements() {
                write!(f, " {:>width$}", labels[self.mul(a, b)])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
