//! Solvability of word equations in the positive integers under addition.
//!
//! An equation `p = q` with parameters `a_j` (universally quantified) and
//! variables `x_i` (existentially quantified) becomes, after substituting
//! positive integers, `Σ t_i m_i = Σ a_j n_j` with `m_i = |p|_{x_i} - |q|_{x_i}`
//! and `n_j = |q|_{a_j} - |p|_{a_j}`. It is solvable for every choice of
//! parameters exactly when `S(n) ⊆ S(m)`, where
//! `S(c_1, ..., c_r) = {Σ t_i c_i : t_i ≥ 1}`.
//!
//! Sets of the form `S(c)` with positive coefficients are stored through the
//! Apéry set of the scaled numerical semigroup, so membership is constant time
//! and the conductor comes out exactly.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::eqdsl::{parse_word, Symbol, Word};

/// Largest letter count accepted in an equation.
pub const MAX_COUNT: u64 = 1_000_000;
/// Largest number of candidate values scanned in one containment check.
pub const MAX_SCAN: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NatError {
    /// Malformed additive equation text.
    #[error("cannot parse equation: {0}")]
    Parse(String),
    /// A letter in the equation that is neither a parameter nor a variable.
    #[error("symbol `{0}` is neither a parameter nor a variable")]
    UnknownSymbol(String),
    /// A symbol declared both as parameter and variable, or twice.
    #[error("symbol `{0}` is declared more than once")]
    DuplicateSymbol(String),
    /// Universality is only defined for equations without parameters.
    #[error("the equation has parameters")]
    HasParameters,
    #[error("expected {expected} parameter values, got {given}")]
    ParameterCount { expected: usize, given: usize },
    #[error("parameter values must be positive")]
    NonPositiveParameter,
    /// Checked arithmetic overflowed.
    #[error("arithmetic overflow")]
    Overflow,
    /// Inputs beyond the supported size caps.
    #[error("input too large: {0}")]
    TooLarge(String),
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `gcd` of absolute values; the empty and all-zero lists give 0.
pub fn gcd_list(values: &[i64]) -> u64 {
    values.iter().fold(0, |g, &v| gcd(g, v.unsigned_abs()))
}

/// A parsed equation with its symbols split into parameters and variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditiveEquation {
    pub params: Vec<Symbol>,
    pub vars: Vec<Symbol>,
    pub lhs: Word,
    pub rhs: Word,
}

impl fmt::Display for AdditiveEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "params: {} ; vars: {} ; eq: {} = {}",
            self.params.join(" "),
            self.vars.join(" "),
            compact(&self.lhs),
            compact(&self.rhs)
        )
    }
}

/// Renders a word with runs of one symbol written as powers.
pub fn compact(word: &Word) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < word.0.len() {
        let run = word.0[i..].iter().take_while(|s| **s == word.0[i]).count();
        parts.push(if run == 1 { word.0[i].clone() } else { format!("{}^{run}", word.0[i]) });
        i += run;
    }
    parts.join("*")
}

/// Parses `params: a b ; vars: x y ; eq: p = q`. A bare `p = q` treats every
/// symbol as a variable.
pub fn parse_additive(text: &str) -> Result<AdditiveEquation, NatError> {
    let (mut params, mut vars, mut eq): (Vec<Symbol>, Option<Vec<Symbol>>, Option<&str>) = (Vec::new(), None, None);
    if !text.contains(':') {
        eq = Some(text);
    } else {
        for section in text.split(';') {
            let section = section.trim();
            if section.is_empty() {
                continue;
            }
            let (key, value) = section
                .split_once(':')
                .ok_or_else(|| NatError::Parse(format!("section `{section}` lacks a `key:`")))?;
            let names = || value.split_whitespace().map(str::to_string).collect::<Vec<_>>();
            match key.trim() {
                "params" => params = names(),
                "vars" => vars = Some(names()),
                "eq" => eq = Some(value),
                other => return Err(NatError::Parse(format!("unknown section `{other}`"))),
            }
        }
    }
    let eq = eq.ok_or_else(|| NatError::Parse("missing `eq:` section".into()))?;
    let (l, r) = eq.split_once('=').ok_or_else(|| NatError::Parse("expected `p = q`".into()))?;
    let word = |t: &str| parse_word(t.trim()).map_err(|e| NatError::Parse(e.to_string()));
    let (lhs, rhs) = (word(l)?, word(r)?);
    let vars = match vars {
        Some(v) => v,
        None => {
            let mut seen = Vec::new();
            for s in lhs.0.iter().chain(&rhs.0) {
                if !seen.contains(s) && !params.contains(s) {
                    seen.push(s.clone());
                }
            }
            seen
        }
    };
    let mut declared = HashSet::new();
    for s in params.iter().chain(&vars) {
        if !declared.insert(s.clone()) {
            return Err(NatError::DuplicateSymbol(s.clone()));
        }
    }
    Ok(AdditiveEquation { params, vars, lhs, rhs })
}

/// Letter counts of an equation and the derived coefficient vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub vars: Vec<Symbol>,
    pub params: Vec<Symbol>,
    /// `r_i = |p|_{x_i}`
    pub r: Vec<u64>,
    /// `s_i = |q|_{x_i}`
    pub s: Vec<u64>,
    /// `p_j = |p|_{a_j}`
    pub p: Vec<u64>,
    /// `q_j = |q|_{a_j}`
    pub q: Vec<u64>,
    pub m: Vec<i64>,
    pub n: Vec<i64>,
    pub d: u64,
    pub dprime: u64,
}

pub fn profile(lhs: &Word, rhs: &Word, params: &[Symbol], vars: &[Symbol]) -> Result<Profile, NatError> {
    for sym in lhs.0.iter().chain(&rhs.0) {
        if !params.contains(sym) && !vars.contains(sym) {
            return Err(NatError::UnknownSymbol(sym.clone()));
        }
    }
    let count = |w: &Word, s: &Symbol| -> Result<u64, NatError> {
        let c = w.0.iter().filter(|x| *x == s).count() as u64;
        if c > MAX_COUNT {
            Err(NatError::TooLarge(format!("`{s}` occurs {c} times")))
        } else {
            Ok(c)
        }
    };
    let counts = |syms: &[Symbol], w: &Word| syms.iter().map(|s| count(w, s)).collect::<Result<Vec<_>, _>>();
    let (r, s) = (counts(vars, lhs)?, counts(vars, rhs)?);
    let (p, q) = (counts(params, lhs)?, counts(params, rhs)?);
    let m: Vec<i64> = r.iter().zip(&s).map(|(&a, &b)| a as i64 - b as i64).collect();
    let n: Vec<i64> = q.iter().zip(&p).map(|(&a, &b)| a as i64 - b as i64).collect();
    Ok(Profile {
        vars: vars.to_vec(),
        params: params.to_vec(),
        d: gcd_list(&m),
        dprime: gcd_list(&n),
        r,
        s,
        p,
        q,
        m,
        n,
    })
}

pub fn profile_of(eq: &AdditiveEquation) -> Result<Profile, NatError> {
    profile(&eq.lhs, &eq.rhs, &eq.params, &eq.vars)
}

/// `{Σ t_i c_i : t_i ≥ 1}` for positive coefficients, as `d·(shift + T)` where
/// `T` is the numerical semigroup generated by the scaled coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositiveSums {
    pub d: u64,
    /// `Σ c_i`, the least member.
    pub shift: u64,
    /// Scaled generators `c_i / d`, sorted and deduplicated.
    pub generators: Vec<u64>,
    /// `apery[r]`: least element of `T` congruent to `r` modulo the least generator.
    pub apery: Vec<u64>,
    /// Least `k` with every multiple of `d` from `k` on a member.
    pub conductor: u64,
}

impl PositiveSums {
    fn new(coeffs: &[u64]) -> Result<PositiveSums, NatError> {
        let d = coeffs.iter().fold(0, |g, &c| gcd(g, c));
        let shift = coeffs.iter().try_fold(0u64, |acc, &c| acc.checked_add(c)).ok_or(NatError::Overflow)?;
        let mut generators: Vec<u64> = coeffs.iter().map(|&c| c / d).collect();
        generators.sort_unstable();
        generators.dedup();
        let modulus = generators[0];
        if modulus > MAX_COUNT {
            return Err(NatError::TooLarge(format!("least coefficient {modulus}")));
        }
        // Dijkstra over residues modulo the least generator
        let mut apery = vec![u64::MAX; modulus as usize];
        apery[0] = 0;
        let mut heap = BinaryHeap::from([Reverse((0u64, 0usize))]);
        while let Some(Reverse((dist, r))) = heap.pop() {
            if dist > apery[r] {
                continue;
            }
            for &g in &generators[1..] {
                let next = dist.checked_add(g).ok_or(NatError::Overflow)?;
                let nr = ((r as u64 + g) % modulus) as usize;
                if next < apery[nr] {
                    apery[nr] = next;
                    heap.push(Reverse((next, nr)));
                }
            }
        }
        let frobenius_plus_one = (apery.iter().max().copied().unwrap_or(0) + 1).saturating_sub(modulus);
        let scaled = (shift / d).checked_add(frobenius_plus_one).ok_or(NatError::Overflow)?;
        let conductor = scaled.checked_mul(d).ok_or(NatError::Overflow)?;
        Ok(PositiveSums { d, shift, generators, apery, conductor })
    }

    pub fn contains(&self, k: i64) -> bool {
        if k <= 0 {
            return false;
        }
        let k = k as u64;
        if !k.is_multiple_of(self.d) || k < self.shift {
            return false;
        }
        let rest = (k - self.shift) / self.d;
        let modulus = self.apery.len() as u64;
        rest >= self.apery[(rest % modulus) as usize]
    }

    /// Members below the conductor, in increasing order.
    pub fn base_members(&self) -> Vec<u64> {
        (self.shift..self.conductor).step_by(self.d as usize).filter(|&k| self.contains(k as i64)).collect()
    }
}

/// Canonical form of `S(c_1, ..., c_r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum SumsStructure {
    /// No coefficients.
    Empty,
    /// Every coefficient is zero.
    ZeroOnly,
    /// Nonzero coefficients of both signs: all multiples of `d`.
    FullLattice {
        d: u64,
    },
    Positive(PositiveSums),
    /// Mirror image of a positive structure: `k` is a member iff `-k` is one there.
    Negative(PositiveSums),
}

impl SumsStructure {
    pub fn contains(&self, k: i64) -> bool {
        match self {
            SumsStructure::Empty => false,
            SumsStructure::ZeroOnly => k == 0,
            SumsStructure::FullLattice { d } => k.unsigned_abs().is_multiple_of(*d),
            SumsStructure::Positive(p) => p.contains(k),
            SumsStructure::Negative(p) => k.checked_neg().is_some_and(|k| p.contains(k)),
        }
    }
}

impl fmt::Display for SumsStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let describe = |p: &PositiveSums, sign: &str| {
            let base: Vec<String> = p.base_members().iter().take(12).map(|k| format!("{sign}{k}")).collect();
            let more = if p.base_members().len() > 12 { ", ..." } else { "" };
            format!(
                "every {sign}multiple of {} from {sign}{} on, and below that {{{}{}}}",
                p.d,
                p.conductor,
                base.join(", "),
                more
            )
        };
        match self {
            SumsStructure::Empty => write!(f, "empty"),
            SumsStructure::ZeroOnly => write!(f, "{{0}}"),
            SumsStructure::FullLattice { d } => write!(f, "{d}Z"),
            SumsStructure::Positive(p) => f.write_str(&describe(p, "")),
            SumsStructure::Negative(p) => f.write_str(&describe(p, "-")),
        }
    }
}

pub fn sums_structure(coeffs: &[i64]) -> Result<SumsStructure, NatError> {
    if coeffs.is_empty() {
        return Ok(SumsStructure::Empty);
    }
    let nonzero: Vec<i64> = coeffs.iter().copied().filter(|&c| c != 0).collect();
    if nonzero.is_empty() {
        return Ok(SumsStructure::ZeroOnly);
    }
    let positive = nonzero.iter().all(|&c| c > 0);
    let negative = nonzero.iter().all(|&c| c < 0);
    let abs: Vec<u64> = nonzero.iter().map(|c| c.unsigned_abs()).collect();
    if positive {
        Ok(SumsStructure::Positive(PositiveSums::new(&abs)?))
    } else if negative {
        Ok(SumsStructure::Negative(PositiveSums::new(&abs)?))
    } else {
        Ok(SumsStructure::FullLattice { d: gcd_list(coeffs) })
    }
}

/// Every member of `sub` (a positive structure) lies in `sup` (same sign).
fn positive_within(sub: &PositiveSums, sup: &PositiveSums) -> Result<bool, NatError> {
    if !sub.d.is_multiple_of(sup.d) {
        return Ok(false);
    }
    if sub.shift >= sup.conductor {
        return Ok(true);
    }
    let steps = (sup.conductor - sub.shift) / sub.d;
    if steps > MAX_SCAN {
        return Err(NatError::TooLarge(format!("{steps} candidates below the conductor")));
    }
    Ok((sub.shift..sup.conductor).step_by(sub.d as usize).all(|k| !sub.contains(k as i64) || sup.contains(k as i64)))
}

/// Decides `sub ⊆ sup` from the canonical forms.
pub fn contained_in(sub: &SumsStructure, sup: &SumsStructure) -> Result<bool, NatError> {
    use SumsStructure::*;
    Ok(match (sub, sup) {
        (Empty, _) => true,
        (ZeroOnly, sup) => sup.contains(0),
        (FullLattice { d: dn }, FullLattice { d }) => dn % d == 0,
        (FullLattice { .. }, _) => false,
        (Positive(p), FullLattice { d }) | (Negative(p), FullLattice { d }) => p.d % d == 0,
        (Positive(p), Positive(q)) | (Negative(p), Negative(q)) => positive_within(p, q)?,
        (Positive(_), _) | (Negative(_), _) => false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rationale {
    /// No variables: solvable iff every parameter count balances.
    NoVariables,
    /// `d' = 0`: the target is always 0.
    ZeroTarget,
    /// Variable coefficients of both signs: solvable iff `d | d'`.
    GcdDivisibility,
    /// General case: containment of canonical forms.
    Containment,
}

impl fmt::Display for Rationale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rationale::NoVariables => "no variables: every parameter count must balance",
            Rationale::ZeroTarget => "d' = 0: solvable iff 0 lies in S(m)",
            Rationale::GcdDivisibility => "variable coefficients of both signs: solvable iff d | d'",
            Rationale::Containment => "containment S(n) within S(m)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub solvable: bool,
    pub rationale: Rationale,
    pub structure_m: SumsStructure,
    pub structure_n: SumsStructure,
}

#[allow(non_snake_case)]
pub fn decide_solvable_in_P(profile: &Profile) -> Result<Decision, NatError> {
    let structure_m = sums_structure(&profile.m)?;
    let structure_n = sums_structure(&profile.n)?;
    let (solvable, rationale) = if profile.m.is_empty() {
        (profile.n.iter().all(|&v| v == 0), Rationale::NoVariables)
    } else if profile.dprime == 0 {
        (structure_m.contains(0), Rationale::ZeroTarget)
    } else {
        let general = contained_in(&structure_n, &structure_m)?;
        if let SumsStructure::FullLattice { d } = structure_m {
            let shortcut = profile.dprime.is_multiple_of(d);
            assert_eq!(shortcut, general, "divisibility shortcut disagrees with containment");
            (shortcut, Rationale::GcdDivisibility)
        } else {
            (general, Rationale::Containment)
        }
    };
    if matches!(structure_m, SumsStructure::FullLattice { .. }) && rationale == Rationale::ZeroTarget {
        assert!(solvable, "0 lies in every lattice dZ");
    }
    Ok(Decision { solvable, rationale, structure_m, structure_n })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub values: Vec<u64>,
    /// Value of both sides after substitution.
    pub common_value: u64,
}

/// `Σ a_j n_j` for the given parameter values.
pub fn target(profile: &Profile, params: &[u64]) -> Result<i64, NatError> {
    if params.len() != profile.n.len() {
        return Err(NatError::ParameterCount { expected: profile.n.len(), given: params.len() });
    }
    if params.contains(&0) {
        return Err(NatError::NonPositiveParameter);
    }
    let mut t: i128 = 0;
    for (&a, &n) in params.iter().zip(&profile.n) {
        t = t.checked_add((a as i128).checked_mul(n as i128).ok_or(NatError::Overflow)?).ok_or(NatError::Overflow)?;
    }
    i64::try_from(t).map_err(|_| NatError::Overflow)
}

fn side_value(counts_vars: &[u64], t: &[u64], counts_params: &[u64], a: &[u64]) -> Result<u64, NatError> {
    let mut total = 0u64;
    for (&c, &v) in counts_vars.iter().zip(t).chain(counts_params.iter().zip(a)) {
        total = total.checked_add(c.checked_mul(v).ok_or(NatError::Overflow)?).ok_or(NatError::Overflow)?;
    }
    Ok(total)
}

/// Substitutes and checks that both sides agree; returns the common value.
pub fn check_witness(profile: &Profile, params: &[u64], values: &[u64]) -> Result<Option<u64>, NatError> {
    let left = side_value(&profile.r, values, &profile.p, params)?;
    let right = side_value(&profile.s, values, &profile.q, params)?;
    Ok((left == right).then_some(left))
}

/// Suffix structures: `suffix[i]` is the set of sums over coefficients `i..`,
/// with the empty suffix standing for `{0}`.
fn suffixes(m: &[i64]) -> Result<Vec<SumsStructure>, NatError> {
    let mut out = Vec::with_capacity(m.len() + 1);
    for i in 0..m.len() {
        out.push(sums_structure(&m[i..])?);
    }
    out.push(SumsStructure::ZeroOnly);
    Ok(out)
}

/// Valid values of `t_i` given the remaining target, in increasing order; the
/// iterator is infinite when infinitely many values keep the rest solvable.
fn next_valid(mi: i64, rem: i64, rest: &SumsStructure, from: u64) -> Result<Option<u64>, NatError> {
    // upper bound on t when the remainder moves away from the rest's range
    let bound: Option<u64> = match rest {
        SumsStructure::ZeroOnly if mi != 0 => {
            if rem % mi == 0 && rem / mi >= 1 {
                let t = (rem / mi) as u64;
                return Ok((t >= from).then_some(t));
            }
            return Ok(None);
        }
        SumsStructure::Positive(p) if mi > 0 => Some(((rem - p.shift as i64).max(0) / mi) as u64),
        SumsStructure::Negative(p) if mi < 0 => Some(((-(rem) - p.shift as i64).max(0) / (-mi)) as u64),
        SumsStructure::Empty => return Ok(None),
        _ => None,
    };
    let mut t = from.max(1);
    loop {
        if let Some(b) = bound {
            if t > b {
                return Ok(None);
            }
        }
        let used = (t as i128) * (mi as i128);
        let r = i64::try_from(rem as i128 - used).map_err(|_| NatError::Overflow)?;
        if rest.contains(r) {
            return Ok(Some(t));
        }
        if mi == 0 {
            return Ok(None);
        }
        t = t.checked_add(1).ok_or(NatError::Overflow)?;
    }
}

/// Up to `limit` witnesses in lexicographic order.
pub fn enumerate_witnesses(profile: &Profile, params: &[u64], limit: usize) -> Result<Vec<Witness>, NatError> {
    let goal = target(profile, params)?;
    let l = profile.m.len();
    let mut found = Vec::new();
    if l == 0 {
        if goal == 0 && limit > 0 {
            let common = check_witness(profile, params, &[])?.expect("balanced equation");
            found.push(Witness { values: vec![], common_value: common });
        }
        return Ok(found);
    }
    let suffix = suffixes(&profile.m)?;
    if !suffix[0].contains(goal) {
        return Ok(found);
    }
    let mut values = vec![0u64; l];
    let mut rems = vec![goal; l + 1];
    let mut i = 0usize;
    let mut from = 1u64;
    loop {
        if found.len() >= limit {
            break;
        }
        match next_valid(profile.m[i], rems[i], &suffix[i + 1], from)? {
            Some(t) => {
                values[i] = t;
                rems[i + 1] = rems[i] - (t as i64) * profile.m[i];
                if i + 1 == l {
                    let common = check_witness(profile, params, &values)?
                        .expect("witness must balance both sides after substitution");
                    found.push(Witness { values: values.clone(), common_value: common });
                    from = t + 1;
                } else {
                    i += 1;
                    from = 1;
                }
            }
            None => {
                if i == 0 {
                    break;
                }
                i -= 1;
                from = values[i] + 1;
            }
        }
    }
    Ok(found)
}

/// The lexicographically least witness, verified by substitution.
pub fn find_witness(profile: &Profile, params: &[u64]) -> Result<Option<Witness>, NatError> {
    Ok(enumerate_witnesses(profile, params, 1)?.into_iter().next())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UniversalCondition {
    /// Every variable occurs equally often on both sides.
    EqualCounts,
    /// Some variable occurs more often on the left and another more often on the right.
    MixedInequalities,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Universality {
    pub universal: bool,
    pub condition: UniversalCondition,
}

/// Whether a parameterless equation is solvable in every semigroup.
pub fn classify_universal(eq: &AdditiveEquation) -> Result<Universality, NatError> {
    if !eq.params.is_empty() {
        return Err(NatError::HasParameters);
    }
    let prof = profile_of(eq)?;
    let condition = if prof.m.iter().all(|&v| v == 0) {
        UniversalCondition::EqualCounts
    } else if prof.m.iter().any(|&v| v > 0) && prof.m.iter().any(|&v| v < 0) {
        UniversalCondition::MixedInequalities
    } else {
        UniversalCondition::Neither
    };
    Ok(Universality { universal: condition != UniversalCondition::Neither, condition })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX_66: &str = "params: a1 a2 a3 ; vars: x1 x2 ; eq: x1^9*x2^23*a1^2*a2^13*a3 = x1^30*x2^8*a1^11*a2^7*a3^10";
    const EX_67: &str = "params: a b ; vars: x y ; eq: x^13*y^24*a^2*b^5 = x^10*y^16*a^13*b^19";

    fn prof(text: &str) -> Profile {
        profile_of(&parse_additive(text).unwrap()).unwrap()
    }

    /// Direct enumeration of `Σ t_i c_i` with `1 <= t_i <= bound`.
    fn brute_sums(coeffs: &[i64], bound: i64) -> HashSet<i64> {
        let mut acc: HashSet<i64> = HashSet::from([0]);
        for &c in coeffs {
            acc = acc.iter().flat_map(|&s| (1..=bound).map(move |t| s + t * c)).collect();
        }
        acc
    }

    #[test]
    fn profiles_of_the_worked_equations() {
        let p = prof(EX_66);
        assert_eq!(p.m, vec![-21, 15]);
        assert_eq!(p.n, vec![9, -6, 9]);
        assert_eq!((p.d, p.dprime), (3, 3));
        let p = prof(EX_67);
        assert_eq!(p.m, vec![3, 8]);
        assert_eq!(p.n, vec![11, 14]);
        let same = prof("params: a ; vars: x ; eq: x*a*x = x*a*x");
        assert_eq!((same.d, same.dprime), (0, 0));
        assert!(matches!(
            profile_of(&parse_additive("params: a ; vars: x ; eq: x = z").unwrap()),
            Err(NatError::UnknownSymbol(_))
        ));
    }

    #[test]
    fn structures() {
        let SumsStructure::Positive(p) = sums_structure(&[3, 8]).unwrap() else { panic!() };
        assert_eq!(p.d, 1);
        assert_eq!(p.conductor, 25);
        assert!(p.contains(25) && p.contains(34) && !p.contains(24));
        // 33 = 3*3 + 8*3
        assert!(p.contains(33));
        let brute = brute_sums(&[3, 8], 40);
        for k in 0..60 {
            assert_eq!(p.contains(k), brute.contains(&k), "{k}");
        }
        assert_eq!(sums_structure(&[-21, 15]).unwrap(), SumsStructure::FullLattice { d: 3 });
        assert_eq!(sums_structure(&[0, 0]).unwrap(), SumsStructure::ZeroOnly);
        assert_eq!(sums_structure(&[]).unwrap(), SumsStructure::Empty);
        let SumsStructure::Positive(q) = sums_structure(&[11, 14]).unwrap() else { panic!() };
        assert_eq!(q.base_members().into_iter().filter(|&k| k <= 33).collect::<Vec<_>>(), vec![25]);
        let neg = sums_structure(&[-4, -6]).unwrap();
        assert!(neg.contains(-10) && neg.contains(-14) && !neg.contains(-12) && !neg.contains(10));
    }

    #[test]
    fn decisions() {
        let d = decide_solvable_in_P(&prof(EX_66)).unwrap();
        assert!(d.solvable);
        assert_eq!(d.rationale, Rationale::GcdDivisibility);
        let d = decide_solvable_in_P(&prof(EX_67)).unwrap();
        assert!(d.solvable);
        assert_eq!(d.rationale, Rationale::Containment);
        let d = decide_solvable_in_P(&prof("params: a ; vars: x ; eq: x^2 = a^3")).unwrap();
        assert!(!d.solvable);
        let none = decide_solvable_in_P(&prof("params: a ; vars: ; eq: a = a")).unwrap();
        assert_eq!((none.solvable, none.rationale), (true, Rationale::NoVariables));
        let zero = decide_solvable_in_P(&prof("params: a ; vars: x y ; eq: x*a = y*a")).unwrap();
        assert_eq!((zero.solvable, zero.rationale), (true, Rationale::ZeroTarget));
        let positive_zero = decide_solvable_in_P(&prof("vars: x ; eq: x^2 = x")).unwrap();
        assert_eq!((positive_zero.solvable, positive_zero.rationale), (false, Rationale::ZeroTarget));
    }

    #[test]
    fn witnesses() {
        let p = prof(EX_67);
        assert_eq!(target(&p, &[2, 3]).unwrap(), 64);
        let all = enumerate_witnesses(&p, &[2, 3], 10).unwrap();
        assert_eq!(
            all,
            vec![Witness { values: vec![8, 5], common_value: 243 }, Witness { values: vec![16, 2], common_value: 275 }]
        );
        assert_eq!(find_witness(&p, &[2, 3]).unwrap().unwrap().values, vec![8, 5]);
        let p66 = prof(EX_66);
        let w = find_witness(&p66, &[1, 1, 1]).unwrap().unwrap();
        assert!(check_witness(&p66, &[1, 1, 1], &w.values).unwrap().is_some());
        assert_eq!(find_witness(&prof("params: a ; vars: x ; eq: x^2 = a^3"), &[1]).unwrap(), None);
        assert_eq!(find_witness(&p, &[2]), Err(NatError::ParameterCount { expected: 2, given: 1 }));
    }

    #[test]
    fn universality() {
        let u = |t: &str| classify_universal(&parse_additive(t).unwrap());
        assert_eq!(u("x1*x2 = x2*x1").unwrap().condition, UniversalCondition::EqualCounts);
        assert!(!u("x = x^2").unwrap().universal);
        assert_eq!(u("x1^2*x2 = x1*x2^2").unwrap().condition, UniversalCondition::MixedInequalities);
        assert_eq!(u("params: a ; vars: x ; eq: x = a"), Err(NatError::HasParameters));
    }

    #[test]
    fn additive_format() {
        let eq = parse_additive(EX_67).unwrap();
        assert_eq!(eq.params, vec!["a", "b"]);
        assert_eq!(eq.lhs.len(), 13 + 24 + 2 + 5);
        assert_eq!(parse_additive(&eq.to_string()).unwrap(), eq);
        assert!(matches!(parse_additive("params: a ; vars: a ; eq: a = a"), Err(NatError::DuplicateSymbol(_))));
        assert!(matches!(parse_additive("vars: x"), Err(NatError::Parse(_))));
    }
}
