//! Seeded randomized suites shared by the property tests and the acceptance
//! run. Each returns the number of cases checked or a description of the
//! first failure.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semieq::corpus::{builtin_corpus, CorpusMember};
use semieq::eqdsl::{parse, Atom, Block, EquationSystem, GreenRel, Quantifier, Word};
use semieq::eval::satisfies;
use semieq::natsolve::{
    check_witness, classify_universal, decide_solvable_in_P, find_witness, profile, sums_structure, AdditiveEquation,
    UniversalCondition,
};

pub const SEED: u64 = 0x5e31_e9a1;
pub const CASES: usize = 1000;

/// Window and multiplier bound for the brute-force sums oracle. With at most
/// three coefficients of size at most 6 and targets of size at most 30, some
/// representation keeps every multiplier and partial sum inside these bounds.
const WINDOW: i64 = 250;
const MAX_MULTIPLIER: i64 = 150;
const TARGET: i64 = 30;

/// `{Σ t_i c_i : 1 <= t_i <= MAX_MULTIPLIER}` restricted to partial sums in the window.
fn brute_sums(coeffs: &[i64]) -> Vec<bool> {
    let width = (2 * WINDOW + 1) as usize;
    let mut reach = vec![false; width];
    reach[WINDOW as usize] = true;
    for &c in coeffs {
        let mut next = vec![false; width];
        for (i, _) in reach.iter().enumerate().filter(|(_, &r)| r) {
            let v = i as i64 - WINDOW;
            for t in 1..=MAX_MULTIPLIER {
                let w = v + t * c;
                if (-WINDOW..=WINDOW).contains(&w) {
                    next[(w + WINDOW) as usize] = true;
                }
            }
        }
        reach = next;
    }
    if coeffs.is_empty() {
        // no coefficients: no sums at all
        reach = vec![false; width];
    }
    reach
}

pub fn sums_membership_suite(seed: u64, cases: usize) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let len = rng.gen_range(0..=3);
        let coeffs: Vec<i64> = (0..len).map(|_| rng.gen_range(-6..=6)).collect();
        let structure = sums_structure(&coeffs).map_err(|e| e.to_string())?;
        let brute = brute_sums(&coeffs);
        for k in -TARGET..=TARGET {
            let expected = brute[(k + WINDOW) as usize];
            if structure.contains(k) != expected {
                return Err(format!("case {case}: coefficients {coeffs:?}, k = {k}: brute force says {expected}"));
            }
        }
    }
    Ok(cases)
}

fn random_word(rng: &mut ChaCha8Rng, symbols: &[&str], max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    Word::new((0..len).map(|_| symbols.choose(rng).unwrap().to_string()))
}

/// Least witness with every multiplier at most `bound`, by exhaustive search.
fn brute_witness(prof: &semieq::natsolve::Profile, params: &[u64], bound: u64) -> Option<Vec<u64>> {
    let l = prof.m.len();
    let mut t = vec![1u64; l];
    loop {
        if check_witness(prof, params, &t).ok().flatten().is_some() {
            return Some(t);
        }
        let mut i = l;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if t[i] < bound {
                t[i] += 1;
                for v in &mut t[i + 1..] {
                    *v = 1;
                }
                break;
            }
        }
    }
}

pub fn solvability_suite(seed: u64, cases: usize) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = ["x", "y"];
    let params = ["a", "b"];
    let mut verdicts = [0usize; 2];
    for case in 0..cases {
        let l = rng.gen_range(1..=2);
        let k = rng.gen_range(1..=2);
        let symbols: Vec<&str> = vars[..l].iter().chain(&params[..k]).copied().collect();
        let lhs = random_word(&mut rng, &symbols, 6);
        let rhs = random_word(&mut rng, &symbols, 6);
        let var_syms: Vec<String> = vars[..l].iter().map(|s| s.to_string()).collect();
        let par_syms: Vec<String> = params[..k].iter().map(|s| s.to_string()).collect();
        let prof = profile(&lhs, &rhs, &par_syms, &var_syms).map_err(|e| e.to_string())?;
        let decision = decide_solvable_in_P(&prof).map_err(|e| e.to_string())?;
        let mut unsolved = false;
        let samples: Vec<Vec<u64>> = if k == 1 {
            (1..=12).map(|a| vec![a]).collect()
        } else {
            (1..=12).flat_map(|a| (1..=12).map(move |b| vec![a, b])).collect()
        };
        for a in &samples {
            let fast = find_witness(&prof, a).map_err(|e| e.to_string())?;
            let slow = brute_witness(&prof, a, 40);
            match (&fast, &slow) {
                (None, Some(t)) => {
                    return Err(format!("case {case}: {lhs} = {rhs}, params {a:?}: missed witness {t:?}"));
                }
                (Some(w), Some(t)) if w.values > *t || (w.values.iter().all(|&v| v <= 40) && w.values != *t) => {
                    return Err(format!(
                        "case {case}: {lhs} = {rhs}, params {a:?}: least witness {t:?}, found {:?}",
                        w.values
                    ));
                }
                (Some(w), _) if check_witness(&prof, a, &w.values).ok().flatten() != Some(w.common_value) => {
                    return Err(format!("case {case}: witness {:?} does not substitute", w.values));
                }
                _ => {}
            }
            if fast.is_none() {
                unsolved = true;
                if decision.solvable {
                    return Err(format!(
                        "case {case}: {lhs} = {rhs} decided solvable, but params {a:?} have no witness"
                    ));
                }
            }
        }
        if !decision.solvable && !unsolved {
            return Err(format!("case {case}: {lhs} = {rhs} decided unsolvable, but every sample has a witness"));
        }
        verdicts[decision.solvable as usize] += 1;
    }
    if verdicts.contains(&0) {
        return Err(format!("one-sided sample: {} unsolvable, {} solvable", verdicts[0], verdicts[1]));
    }
    Ok(cases)
}

/// Corpus members of order at most 12, a cheap but varied selection.
pub fn small_corpus() -> Vec<CorpusMember> {
    builtin_corpus().up_to_order(12)
}

pub fn universal_suite(seed: u64, cases: usize) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let corpus = small_corpus();
    let pool = ["x", "y", "z"];
    let mut universal_seen = 0;
    for case in 0..cases {
        let n = rng.gen_range(1..=3);
        let lhs = random_word(&mut rng, &pool[..n], 5);
        let rhs = random_word(&mut rng, &pool[..n], 5);
        let vars: Vec<String> = pool[..n].iter().map(|s| s.to_string()).collect();
        let eq = AdditiveEquation { params: vec![], vars: vars.clone(), lhs: lhs.clone(), rhs: rhs.clone() };
        let u = classify_universal(&eq).map_err(|e| e.to_string())?;
        let prof = profile(&lhs, &rhs, &[], &vars).map_err(|e| e.to_string())?;
        if u.universal {
            universal_seen += 1;
            let sys = parse(&format!("exists {}. {lhs} = {rhs}", vars.join(" "))).map_err(|e| e.to_string())?;
            for m in &corpus {
                if !satisfies(&m.semigroup, &sys, 10_000_000).map_err(|e| e.to_string())? {
                    return Err(format!("case {case}: universal {lhs} = {rhs} fails in {}", m.name));
                }
            }
        } else {
            // not universal: no positive integers balance the counts
            if u.condition != UniversalCondition::Neither || brute_witness(&prof, &[], 12).is_some() {
                return Err(format!("case {case}: {lhs} = {rhs} classified non-universal but solvable in P"));
            }
        }
    }
    if universal_seen == 0 {
        return Err("no universal equation was generated".into());
    }
    Ok(cases)
}

pub fn random_system(rng: &mut ChaCha8Rng) -> EquationSystem {
    let names = ["a", "b", "c", "x", "y", "z", "u", "v", "w1", "w2"];
    let mut pool: Vec<&str> = names.to_vec();
    pool.shuffle(rng);
    let blocks = rng.gen_range(1..=3);
    let mut quantifier = if rng.gen_bool(0.5) { Quantifier::Forall } else { Quantifier::Exists };
    let mut prefix = Vec::new();
    let mut bound: Vec<&str> = Vec::new();
    for _ in 0..blocks {
        let size = rng.gen_range(1..=2);
        let symbols: Vec<String> = (0..size).map(|_| pool.pop().unwrap().to_string()).collect();
        bound.extend(symbols.iter().map(|s| names.iter().find(|n| **n == s.as_str()).copied().unwrap()));
        prefix.push(Block { quantifier, symbols });
        quantifier = match quantifier {
            Quantifier::Forall => Quantifier::Exists,
            Quantifier::Exists => Quantifier::Forall,
        };
    }
    let disjuncts = rng.gen_range(1..=2);
    let matrix = (0..disjuncts)
        .map(|_| {
            (0..rng.gen_range(1..=3))
                .map(|_| {
                    let u = random_word(rng, &bound, 4);
                    let v = random_word(rng, &bound, 4);
                    match rng.gen_range(0..5) {
                        0 | 1 => Atom::WordEq(u, v),
                        2 => Atom::InV { x: u, a: v },
                        3 => {
                            if rng.gen_bool(0.5) {
                                Atom::InE(u)
                            } else {
                                Atom::InG(u)
                            }
                        }
                        _ => Atom::Green { rel: *GreenRel::ALL.choose(rng).unwrap(), u, v },
                    }
                })
                .collect()
        })
        .collect();
    EquationSystem::new(prefix, matrix).expect("generated systems are well formed")
}

pub fn round_trip_suite(seed: u64, cases: usize) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let sys = random_system(&mut rng);
        let text = sys.to_string();
        let back = parse(&text).map_err(|e| format!("case {case}: `{text}` does not parse: {e}"))?;
        if back != sys {
            return Err(format!("case {case}: `{text}` reparses as `{back}`"));
        }
    }
    Ok(cases)
}
