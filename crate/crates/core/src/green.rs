//! Green's relations, inverses, the idempotent-generated core, local
//! subsemigroups `eSe`, and isomorphism testing.
//!
//! Relations are computed from principal ideals over `S¹`, so `a R b` holds
//! exactly when `aS¹ = bS¹`, regardless of whether `S` has an identity.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::semigroup::{Element, ElementSubset, FiniteSemigroup, Subsemigroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GreenError {
    /// The core is requested for a semigroup without idempotents (impossible
    /// for a finite semigroup, but reported rather than assumed).
    #[error("the semigroup has no idempotents")]
    NoIdempotents,
    /// `eSe` was requested for an element that is not idempotent.
    #[error("element {0} is not idempotent")]
    NotIdempotent(Element),
    #[error("element index {0} is out of range")]
    ElementOutOfRange(Element),
}

/// Green's relations of a finite semigroup as per-element class identifiers.
///
/// Class identifiers are dense and numbered in order of first appearance, so two
/// relations are equal exactly when their identifier vectors are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenData {
    pub r_class: Vec<usize>,
    pub l_class: Vec<usize>,
    pub h_class: Vec<usize>,
    pub d_class: Vec<usize>,
    pub j_class: Vec<usize>,
    pub idempotents: ElementSubset,
    pub group_h: Vec<bool>,
}

/// Renumbers class identifiers by first appearance.
pub(crate) fn normalize<K: std::hash::Hash + Eq + Clone>(keys: &[K]) -> Vec<usize> {
    let mut seen: HashMap<K, usize> = HashMap::new();
    keys.iter()
        .map(|k| {
            let next = seen.len();
            *seen.entry(k.clone()).or_insert(next)
        })
        .collect()
}

/// Groups elements by class identifier, blocks ordered by identifier.
pub fn blocks_of(ids: &[usize]) -> Vec<Vec<Element>> {
    let count = ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); count];
    for (a, &id) in ids.iter().enumerate() {
        blocks[id].push(a);
    }
    blocks
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn green_data(s: &FiniteSemigroup) -> GreenData {
    let n = s.order();
    let right: Vec<ElementSubset> = s.elements().map(|a| s.right_ideal(a)).collect();
    let left: Vec<ElementSubset> = s.elements().map(|a| s.left_ideal(a)).collect();
    let two: Vec<ElementSubset> = s.elements().map(|a| s.two_sided_ideal(a)).collect();
    let r_class = normalize(&right);
    let l_class = normalize(&left);
    let h_class = normalize(&r_class.iter().zip(&l_class).map(|(r, l)| (*r, *l)).collect::<Vec<_>>());
    let j_class = normalize(&two);

    let mut parent: Vec<usize> = (0..n).collect();
    for ids in [&r_class, &l_class] {
        let mut first: HashMap<usize, usize> = HashMap::new();
        for (a, &id) in ids.iter().enumerate() {
            let rep = *first.entry(id).or_insert(a);
            let (x, y) = (find(&mut parent, a), find(&mut parent, rep));
            parent[x] = y;
        }
    }
    let roots: Vec<usize> = (0..n).map(|a| find(&mut parent, a)).collect();
    let d_class = normalize(&roots);
    assert_eq!(d_class, j_class, "D and J differ on a finite semigroup");

    let group_h = s.elements().map(|a| h_class[a] == h_class[s.mul(a, a)]).collect();
    GreenData { r_class, l_class, h_class, d_class, j_class, idempotents: s.idempotents(), group_h }
}

impl GreenData {
    pub fn r_related(&self, a: Element, b: Element) -> bool {
        self.r_class[a] == self.r_class[b]
    }

    pub fn l_related(&self, a: Element, b: Element) -> bool {
        self.l_class[a] == self.l_class[b]
    }

    pub fn h_related(&self, a: Element, b: Element) -> bool {
        self.h_class[a] == self.h_class[b]
    }

    pub fn d_related(&self, a: Element, b: Element) -> bool {
        self.d_class[a] == self.d_class[b]
    }

    pub fn j_related(&self, a: Element, b: Element) -> bool {
        self.j_class[a] == self.j_class[b]
    }

    pub fn r_classes(&self) -> Vec<Vec<Element>> {
        blocks_of(&self.r_class)
    }

    pub fn l_classes(&self) -> Vec<Vec<Element>> {
        blocks_of(&self.l_class)
    }

    pub fn h_classes(&self) -> Vec<Vec<Element>> {
        blocks_of(&self.h_class)
    }

    pub fn d_classes(&self) -> Vec<Vec<Element>> {
        blocks_of(&self.d_class)
    }

    pub fn j_classes(&self) -> Vec<Vec<Element>> {
        blocks_of(&self.j_class)
    }

    pub fn class_count(ids: &[usize]) -> usize {
        ids.iter().copied().max().map_or(0, |m| m + 1)
    }
}

/// `V(a)`: all `x` with `axa = a` and `xax = x`.
pub fn inverses_of(s: &FiniteSemigroup, a: Element) -> ElementSubset {
    let mut set = ElementSubset::empty(s.order());
    for x in s.elements() {
        if s.mul(s.mul(a, x), a) == a && s.mul(s.mul(x, a), x) == x {
            set.insert(x);
        }
    }
    set
}

/// The subsemigroup generated by the idempotents.
pub fn core(s: &FiniteSemigroup) -> Result<Subsemigroup, GreenError> {
    let e = s.idempotents();
    if e.is_empty() {
        return Err(GreenError::NoIdempotents);
    }
    Ok(s.subsemigroup_generated(&e).expect("idempotent set is a nonempty subset of S"))
}

/// `eSe` for an idempotent `e`; a monoid with identity `e`.
pub fn local_subsemigroup(s: &FiniteSemigroup, e: Element) -> Result<Subsemigroup, GreenError> {
    if e >= s.order() {
        return Err(GreenError::ElementOutOfRange(e));
    }
    if !s.is_idempotent(e) {
        return Err(GreenError::NotIdempotent(e));
    }
    let mut members = ElementSubset::empty(s.order());
    for x in s.elements() {
        members.insert(s.mul(s.mul(e, x), e));
    }
    Ok(s.restrict(&members.to_vec()))
}

/// Per-element data preserved by every isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Profile {
    idempotent: bool,
    index: usize,
    period: usize,
    r_size: usize,
    l_size: usize,
    j_size: usize,
    group_h: bool,
    right_identity_for: usize,
    left_identity_for: usize,
}

fn profiles(s: &FiniteSemigroup) -> Vec<Profile> {
    let g = green_data(s);
    let size = |ids: &[usize], a: Element| ids.iter().filter(|&&id| id == ids[a]).count();
    s.elements()
        .map(|a| {
            let mut powers = vec![a];
            let (index, period) = loop {
                let next = s.mul(*powers.last().unwrap(), a);
                if let Some(pos) = powers.iter().position(|&p| p == next) {
                    break (pos + 1, powers.len() - pos);
                }
                powers.push(next);
            };
            Profile {
                idempotent: s.is_idempotent(a),
                index,
                period,
                r_size: size(&g.r_class, a),
                l_size: size(&g.l_class, a),
                j_size: size(&g.j_class, a),
                group_h: g.group_h[a],
                right_identity_for: s.elements().filter(|&x| s.mul(x, a) == x).count(),
                left_identity_for: s.elements().filter(|&x| s.mul(a, x) == x).count(),
            }
        })
        .collect()
}

/// Finds an isomorphism `S -> T`, returned as the image of each element of `S`.
pub fn are_isomorphic(s: &FiniteSemigroup, t: &FiniteSemigroup) -> Option<Vec<Element>> {
    if s.order() != t.order() {
        return None;
    }
    let (ps, pt) = (profiles(s), profiles(t));
    let (mut sorted_s, mut sorted_t) = (ps.clone(), pt.clone());
    sorted_s.sort();
    sorted_t.sort();
    if sorted_s != sorted_t {
        return None;
    }
    let candidates: Vec<Vec<Element>> = ps.iter().map(|p| t.elements().filter(|&y| &pt[y] == p).collect()).collect();
    let mut order: Vec<Element> = s.elements().collect();
    order.sort_by_key(|&a| candidates[a].len());
    let state = vec![None; s.order()];
    search(s, t, &ps, &pt, &candidates, &order, state).map(|m| m.into_iter().map(Option::unwrap).collect())
}

fn propagate(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    ps: &[Profile],
    pt: &[Profile],
    map: &mut [Option<Element>],
) -> bool {
    let mut used = vec![false; t.order()];
    for y in map.iter().flatten() {
        used[*y] = true;
    }
    loop {
        let mut changed = false;
        let assigned: Vec<Element> = s.elements().filter(|&a| map[a].is_some()).collect();
        for &u in &assigned {
            for &v in &assigned {
                let (w, target) = (s.mul(u, v), t.mul(map[u].unwrap(), map[v].unwrap()));
                match map[w] {
                    Some(x) if x != target => return false,
                    Some(_) => {}
                    None => {
                        if used[target] || ps[w] != pt[target] {
                            return false;
                        }
                        map[w] = Some(target);
                        used[target] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    ps: &[Profile],
    pt: &[Profile],
    candidates: &[Vec<Element>],
    order: &[Element],
    map: Vec<Option<Element>>,
) -> Option<Vec<Option<Element>>> {
    let Some(&a) = order.iter().find(|&&a| map[a].is_none()) else {
        return Some(map);
    };
    for &y in &candidates[a] {
        if map.contains(&Some(y)) {
            continue;
        }
        let mut next = map.clone();
        next[a] = Some(y);
        if propagate(s, t, ps, pt, &mut next) {
            if let Some(done) = search(s, t, ps, pt, candidates, order, next) {
                return Some(done);
            }
        }
    }
    None
}

/// Text eggbox diagrams, one per D-class: rows are R-classes, columns are
/// L-classes, and idempotents carry a `*`.
pub fn eggbox(s: &FiniteSemigroup, g: &GreenData) -> String {
    let mut out = String::new();
    for (k, d) in g.d_classes().iter().enumerate() {
        let mut rows: Vec<usize> = d.iter().map(|&a| g.r_class[a]).collect();
        rows.sort_unstable();
        rows.dedup();
        let mut cols: Vec<usize> = d.iter().map(|&a| g.l_class[a]).collect();
        cols.sort_unstable();
        cols.dedup();
        let cells: Vec<Vec<String>> = rows
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|&l| {
                        let items: Vec<String> = d
                            .iter()
                            .filter(|&&a| g.r_class[a] == r && g.l_class[a] == l)
                            .map(|&a| {
                                let star = if g.idempotents.contains(a) { "*" } else { "" };
                                format!("{star}{}", s.label(a))
                            })
                            .collect();
                        items.join(" ")
                    })
                    .collect()
            })
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1).max(1);
        let _ = writeln!(out, "D-class {k} ({} elements)", d.len());
        let rule = format!("+{}", format!("{}+", "-".repeat(width + 2)).repeat(cols.len()));
        let _ = writeln!(out, "{rule}");
        for row in &cells {
            let line: String = row.iter().map(|c| format!(" {c:<width$} |")).collect();
            let _ = writeln!(out, "|{line}");
            let _ = writeln!(out, "{rule}");
        }
    }
    out
}
