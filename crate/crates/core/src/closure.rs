//! Congruences, quotients and products, and the suites that check class
//! membership and basis satisfaction survive them.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classes::{entry, named_class_check, ClassError};
use crate::corpus::CorpusMember;
use crate::eval::satisfies;
use crate::green::{blocks_of, normalize};
use crate::semigroup::{Element, FiniteSemigroup};

/// Default largest order for which all congruences are enumerated.
pub const DEFAULT_CONGRUENCE_CAP: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosureError {
    /// Congruence enumeration was requested above the order cap.
    #[error("{member} has order {order}, above the congruence cap {cap}")]
    OrderCapExceeded { member: String, order: usize, cap: usize },
    #[error(transparent)]
    Class(#[from] ClassError),
}

/// An equivalence on the elements of a parent semigroup, stored as one block
/// identifier per element with blocks numbered by first appearance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Congruence {
    ids: Vec<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// Returns true when the two points were in different blocks.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let roots: Vec<usize> = (0..self.0.len()).map(|x| self.find(x)).collect();
        Congruence { ids: normalize(&roots) }
    }
}

impl Congruence {
    pub fn identity(order: usize) -> Self {
        Congruence { ids: (0..order).collect() }
    }

    pub fn universal(order: usize) -> Self {
        Congruence { ids: vec![0; order] }
    }

    /// An equivalence from arbitrary block labels; compatibility is not checked.
    pub fn from_ids(ids: &[usize]) -> Self {
        Congruence { ids: normalize(ids) }
    }

    pub fn parent_order(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn block_of(&self, a: Element) -> usize {
        self.ids[a]
    }

    pub fn block_count(&self) -> usize {
        self.ids.iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<Element>> {
        blocks_of(&self.ids)
    }

    /// Least element of each block, in block order.
    pub fn representatives(&self) -> Vec<Element> {
        self.blocks().iter().map(|b| b[0]).collect()
    }

    pub fn related(&self, a: Element, b: Element) -> bool {
        self.ids[a] == self.ids[b]
    }

    /// A related pair `(a, b)` and a translating element `s` with `sa, sb` or
    /// `as, bs` in different blocks, if any.
    pub fn compatibility_violation(&self, s: &FiniteSemigroup) -> Option<(Element, Element, Element)> {
        let reps = self.representatives();
        for a in s.elements() {
            let r = reps[self.ids[a]];
            if r == a {
                continue;
            }
            for t in s.elements() {
                if !self.related(s.mul(t, a), s.mul(t, r)) || !self.related(s.mul(a, t), s.mul(r, t)) {
                    return Some((r, a, t));
                }
            }
        }
        None
    }

    pub fn is_congruence_on(&self, s: &FiniteSemigroup) -> bool {
        self.parent_order() == s.order() && self.compatibility_violation(s).is_none()
    }

    /// Least equivalence containing both; again a congruence when both are.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.ids.len());
        for c in [self, other] {
            let reps = c.representatives();
            for (a, &id) in c.ids.iter().enumerate() {
                uf.union(a, reps[id]);
            }
        }
        uf.into_congruence()
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        let reps = self.representatives();
        self.ids.iter().enumerate().all(|(a, &id)| other.related(a, reps[id]))
    }
}

/// The least congruence identifying `a` and `b`.
pub fn principal_congruence(s: &FiniteSemigroup, a: Element, b: Element) -> Congruence {
    let mut uf = UnionFind::new(s.order());
    let mut pending = vec![(a, b)];
    while let Some((x, y)) = pending.pop() {
        if !uf.union(x, y) {
            continue;
        }
        for t in s.elements() {
            pending.push((s.mul(t, x), s.mul(t, y)));
            pending.push((s.mul(x, t), s.mul(y, t)));
        }
    }
    uf.into_congruence()
}

/// Every congruence of `s`, sorted by block identifiers. Fails above `cap`.
pub fn all_congruences(s: &FiniteSemigroup, cap: usize) -> Result<Vec<Congruence>, ClosureError> {
    if s.order() > cap {
        return Err(ClosureError::OrderCapExceeded {
            member: format!("semigroup of order {}", s.order()),
            order: s.order(),
            cap,
        });
    }
    let mut found: HashSet<Congruence> = HashSet::new();
    let mut list = Vec::new();
    let mut add = |c: Congruence, list: &mut Vec<Congruence>| {
        if found.insert(c.clone()) {
            list.push(c);
        }
    };
    add(Congruence::identity(s.order()), &mut list);
    for a in s.elements() {
        for b in a + 1..s.order() {
            add(principal_congruence(s, a, b), &mut list);
        }
    }
    let mut next = 0;
    while next < list.len() {
        let c = list[next].clone();
        for i in 0..next {
            let j = c.join(&list[i]);
            add(j, &mut list);
        }
        next += 1;
    }
    list.sort();
    Ok(list)
}

/// Something that should have stayed in the class but did not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClosureViolation {
    /// A quotient of a member by the given blocks left the class.
    Quotient { member: String, blocks: Vec<Vec<Element>> },
    /// The product of two members left the class.
    Product { left: String, right: String },
    /// Evaluation ran out of budget.
    Budget { subject: String, message: String },
}

fn check_cap(corpus: &[CorpusMember], cap: usize) -> Result<(), ClosureError> {
    match corpus.iter().find(|m| m.semigroup.order() > cap) {
        Some(m) => Err(ClosureError::OrderCapExceeded { member: m.name.clone(), order: m.semigroup.order(), cap }),
        None => Ok(()),
    }
}

/// All quotients of every member in the class stay in the class.
#[allow(non_snake_case)]
pub fn closed_under_H(id: &str, corpus: &[CorpusMember], cap: usize) -> Result<Vec<ClosureViolation>, ClosureError> {
    entry(id)?;
    check_cap(corpus, cap)?;
    let per_member: Vec<Result<Vec<ClosureViolation>, ClosureError>> = corpus
        .par_iter()
        .map(|m| {
            if !named_class_check(id, &m.semigroup)? {
                return Ok(Vec::new());
            }
            let mut out = Vec::new();
            for c in all_congruences(&m.semigroup, cap)? {
                let q = m.semigroup.quotient(&c).expect("enumerated congruences are compatible");
                if !named_class_check(id, &q)? {
                    out.push(ClosureViolation::Quotient { member: m.name.clone(), blocks: c.blocks() });
                }
            }
            Ok(out)
        })
        .collect();
    flatten(per_member)
}

fn flatten(parts: Vec<Result<Vec<ClosureViolation>, ClosureError>>) -> Result<Vec<ClosureViolation>, ClosureError> {
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Unordered pairs `(i, j)` with `i <= j`, squares included.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// The product of any two members in the class stays in the class.
#[allow(non_snake_case)]
pub fn closed_under_P(id: &str, corpus: &[CorpusMember]) -> Result<Vec<ClosureViolation>, ClosureError> {
    entry(id)?;
    let inside: Vec<bool> = corpus.par_iter().map(|m| named_class_check(id, &m.semigroup)).collect::<Result<_, _>>()?;
    let members: Vec<&CorpusMember> = corpus.iter().zip(&inside).filter(|(_, &k)| k).map(|(m, _)| m).collect();
    let results: Vec<Result<Option<ClosureViolation>, ClosureError>> = pairs(members.len())
        .into_par_iter()
        .map(|(i, j)| {
            let (l, r) = (members[i], members[j]);
            let product = l.semigroup.direct_product(&r.semigroup);
            Ok((!named_class_check(id, &product)?)
                .then(|| ClosureViolation::Product { left: l.name.clone(), right: r.name.clone() }))
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// Every quotient of a member satisfying the class basis satisfies it too.
#[allow(non_snake_case)]
pub fn basis_preserved_under_H(
    id: &str,
    corpus: &[CorpusMember],
    cap: usize,
    budget: u64,
) -> Result<Vec<ClosureViolation>, ClosureError> {
    let basis = &entry(id)?.basis;
    check_cap(corpus, cap)?;
    let per_member: Vec<Result<Vec<ClosureViolation>, ClosureError>> = corpus
        .par_iter()
        .map(|m| {
            let budget_violation = |subject: String, e: crate::eval::EvalError| ClosureViolation::Budget {
                subject,
                message: e.to_string(),
            };
            match satisfies(&m.semigroup, basis, budget) {
                Ok(true) => {}
                Ok(false) => return Ok(Vec::new()),
                Err(e) => return Ok(vec![budget_violation(m.name.clone(), e)]),
            }
            let mut out = Vec::new();
            for c in all_congruences(&m.semigroup, cap)? {
                let q = m.semigroup.quotient(&c).expect("enumerated congruences are compatible");
                match satisfies(&q, basis, budget) {
                    Ok(true) => {}
                    Ok(false) => out.push(ClosureViolation::Quotient { member: m.name.clone(), blocks: c.blocks() }),
                    Err(e) => out.push(budget_violation(format!("{} / {:?}", m.name, c.blocks()), e)),
                }
            }
            Ok(out)
        })
        .collect();
    flatten(per_member)
}

/// The product of any two members satisfying the class basis satisfies it too.
#[allow(non_snake_case)]
pub fn basis_preserved_under_P(
    id: &str,
    corpus: &[CorpusMember],
    budget: u64,
) -> Result<Vec<ClosureViolation>, ClosureError> {
    let basis = &entry(id)?.basis;
    let verdicts: Vec<Result<bool, String>> =
        corpus.par_iter().map(|m| satisfies(&m.semigroup, basis, budget).map_err(|e| e.to_string())).collect();
    let mut out = Vec::new();
    let mut members = Vec::new();
    for (m, v) in corpus.iter().zip(verdicts) {
        match v {
            Ok(true) => members.push(m),
            Ok(false) => {}
            Err(message) => out.push(ClosureViolation::Budget { subject: m.name.clone(), message }),
        }
    }
    let results: Vec<Option<ClosureViolation>> = pairs(members.len())
        .into_par_iter()
        .map(|(i, j)| {
            let (l, r) = (members[i], members[j]);
            let product = l.semigroup.direct_product(&r.semigroup);
            match satisfies(&product, basis, budget) {
                Ok(true) => None,
                Ok(false) => Some(ClosureViolation::Product { left: l.name.clone(), right: r.name.clone() }),
                Err(e) => Some(ClosureViolation::Budget {
                    subject: format!("{} x {}", l.name, r.name),
                    message: e.to_string(),
                }),
            }
        })
        .collect();
    out.extend(results.into_iter().flatten());
    Ok(out)
}

/// Checks that `list` is closed under joins and has no repeats.
pub fn is_join_closed(list: &[Congruence]) -> bool {
    let set: BTreeSet<&Congruence> = list.iter().collect();
    set.len() == list.len() && list.iter().all(|a| list.iter().all(|b| set.contains(&a.join(b))))
}
