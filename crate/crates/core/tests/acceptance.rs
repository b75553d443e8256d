//! Acceptance run: one PASS or FAIL line per criterion, with every tolerance
//! and bound pinned below. Run with `cargo test --test acceptance`.
//!
//! Criterion 4 contains the claim that 33 is not in S(3,8). That claim is
//! false (33 = 3*3 + 8*3), so the check for it fails. This failure is listed
//! in `KNOWN_FAILURES` and does not change the exit status; any other failure
//! does.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use semieq::classes::{
    core_is_completely_regular, cross_validate, entry, maxj_conditions, nr_counterexample_check, oracle_check,
    solidity_condition, CLASS_IDS, WEAKENED_CLASS,
};
use semieq::closure::{
    basis_preserved_under_H, basis_preserved_under_P, closed_under_H, closed_under_P, ClosureViolation,
    DEFAULT_CONGRUENCE_CAP,
};
use semieq::corpus::builtin_corpus;
use semieq::eval::{satisfies, DEFAULT_BUDGET};
use semieq::family::{make_family, ESOLID_COUNTEREXAMPLE};
use semieq::green::green_data;
use semieq::natsolve::{
    decide_solvable_in_P, enumerate_witnesses, parse_additive, profile_of, sums_structure, Rationale,
};
use semieq::transforms::{
    local_isomorphism_check, skolemize, skolemize_with_names, verify_localise, verify_skolem, REGULAR_CLASSES,
};

const CROSSVAL_LIMIT: Duration = Duration::from_secs(60);
const NR_LIMIT: Duration = Duration::from_secs(10);
/// 27^4 matrix evaluations.
const NR_BUDGET: u64 = 531_441;
const CLOSURE_MAX_ORDER: usize = 5;
const SKOLEM_MAX_ORDER: usize = 4;
const SKOLEM_SEARCH_BUDGET: u64 = 10_000_000;
const LOCALISE_MAX_ORDER: usize = 8;
/// The positive-integer claims are checked on every integer up to this bound.
const CONDUCTOR_SCAN: i64 = 2_000;

const KNOWN_FAILURES: [&str; 1] = ["4b"];

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn ensure(cond: bool, message: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message.into())
    }
}

fn criterion_1() -> Outcome {
    let corpus = builtin_corpus();
    let start = Instant::now();
    let mut total = 0;
    for id in CLASS_IDS.iter().filter(|id| **id != WEAKENED_CLASS) {
        let found = cross_validate(id, &corpus.members, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(found.is_empty(), format!("{id}: {found:?}"))?;
        total += 1;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < CROSSVAL_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!("{total} classes x {} members, 0 discrepancies, {elapsed:.2?}", corpus.len()))
}

fn criterion_2() -> Outcome {
    let s = make_family(ESOLID_COUNTEREXAMPLE).unwrap();
    ensure(s.order() == 17, "order is not 17")?;
    let weakened = satisfies(&s, &entry(WEAKENED_CLASS).unwrap().basis, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let core_cr = core_is_completely_regular(&s);
    let solid = solidity_condition(&green_data(&s));
    ensure(weakened, "weakened basis fails")?;
    ensure(!core_cr && !solid, format!("core completely regular {core_cr}, solidity {solid}"))?;
    ensure(!oracle_check("esolid", &s).unwrap(), "esolid oracle holds")?;
    Ok("esolid2 holds; core not a union of groups; solidity condition fails".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let report = nr_counterexample_check(NR_BUDGET).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(report.reproduces(), format!("{report:?}"))?;
    ensure(elapsed < NR_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!("T3 satisfies NR, U does not, U regular subsemigroup; {elapsed:.2?}"))
}

fn criterion_4a() -> Outcome {
    let p66 = profile_of(
        &parse_additive("params: a1 a2 a3 ; vars: x1 x2 ; eq: x1^9*x2^23*a1^2*a2^13*a3 = x1^30*x2^8*a1^11*a2^7*a3^10")
            .unwrap(),
    )
    .unwrap();
    ensure((p66.d, p66.dprime) == (3, 3), format!("d = {}, d' = {}", p66.d, p66.dprime))?;
    let decision = decide_solvable_in_P(&p66).unwrap();
    ensure(decision.solvable && decision.rationale == Rationale::GcdDivisibility, format!("{decision:?}"))?;

    let p67 =
        profile_of(&parse_additive("params: a b ; vars: x y ; eq: x^13*y^24*a^2*b^5 = x^10*y^16*a^13*b^19").unwrap())
            .unwrap();
    let found: Vec<(Vec<u64>, u64)> =
        enumerate_witnesses(&p67, &[2, 3], 100).unwrap().into_iter().map(|w| (w.values, w.common_value)).collect();
    ensure(found == vec![(vec![8, 5], 243), (vec![16, 2], 275)], format!("witnesses {found:?}"))?;

    let s38 = sums_structure(&[3, 8]).unwrap();
    ensure(s38.contains(25), "25 missing")?;
    ensure((34..=CONDUCTOR_SCAN).all(|k| s38.contains(k)), "an integer >= 34 is missing")?;
    Ok("d = d' = 3 via d | d'; witnesses (8,5)->243 and (16,2)->275; 25 and all k >= 34 in S(3,8)".into())
}

fn criterion_4b() -> Outcome {
    let s38 = sums_structure(&[3, 8]).unwrap();
    ensure(!s38.contains(33), "33 = 3*3 + 8*3 is in S(3,8), so the claim that it is not cannot hold")?;
    Ok("33 not in S(3,8)".into())
}

fn criterion_5() -> Outcome {
    let small = builtin_corpus().up_to_order(CLOSURE_MAX_ORDER);
    let cap = DEFAULT_CONGRUENCE_CAP;
    for id in CLASS_IDS {
        let h = basis_preserved_under_H(id, &small, cap, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(h.is_empty(), format!("{id} quotients: {h:?}"))?;
        let p = basis_preserved_under_P(id, &small, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(p.is_empty(), format!("{id} products: {p:?}"))?;
    }
    let h = closed_under_H("maxj", &small, cap).map_err(|e| e.to_string())?;
    ensure(h.is_empty(), format!("maxj quotients: {h:?}"))?;
    let p = closed_under_P("maxj", &small).map_err(|e| e.to_string())?;
    let n_by_n = ClosureViolation::Product { left: "null:2".into(), right: "null:2".into() };
    ensure(p.contains(&n_by_n), "null:2 x null:2 is not reported")?;
    // every product leaving the class has a factor whose top Rees quotient is null
    let corpus = builtin_corpus();
    for v in &p {
        let ClosureViolation::Product { left, right } = v else { return Err(format!("unexpected {v:?}")) };
        let null_top = |name: &str| !oracle_check("maxj", &corpus.get(name).unwrap().semigroup).unwrap();
        ensure(null_top(left) || null_top(right), format!("{left} x {right} has no null-topped factor"))?;
    }
    Ok(format!(
        "{} classes, {} members: no basis violations; maxj fails on N x N ({} violating products, each with a null-topped factor)",
        CLASS_IDS.len(),
        small.len(),
        p.len()
    ))
}

fn criterion_6() -> Outcome {
    let corpus = builtin_corpus();
    let basis = &entry("maxj").unwrap().basis;
    for m in corpus.iter() {
        let (rees, iso) = maxj_conditions(&m.semigroup, &green_data(&m.semigroup));
        let eq = satisfies(&m.semigroup, basis, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(rees == iso && iso == eq, format!("{}: rees {rees}, iso {iso}, equation {eq}", m.name))?;
        if m.name.starts_with("btrunc:") {
            ensure(!eq, format!("{} passes", m.name))?;
        }
        if m.name == "brandt:2" || m.name == "brandt:3" {
            ensure(eq, format!("{} fails", m.name))?;
        }
    }
    Ok(format!("three conditions agree on all {} members", corpus.len()))
}

fn criterion_7() -> Outcome {
    let group = skolemize_with_names(&entry("group").unwrap().basis, &["ldiv", "rdiv"]).map_err(|e| e.to_string())?;
    ensure(
        group.to_string() == "skolem: ldiv/2 rdiv/2\nforall a b. a*ldiv(a,b) = b & rdiv(a,b)*a = b",
        group.to_string(),
    )?;
    let monoid = skolemize_with_names(&entry("monoid").unwrap().basis, &["e"]).map_err(|e| e.to_string())?;
    ensure(monoid.to_string() == "skolem: e/0\nforall a. a*e = a & e*a = a", monoid.to_string())?;
    let small = builtin_corpus().up_to_order(SKOLEM_MAX_ORDER);
    for id in ["monoid", "group", "regular", "clifford"] {
        let basis = &entry(id).unwrap().basis;
        let ids = skolemize(basis).map_err(|e| e.to_string())?;
        for m in &small {
            verify_skolem(&m.semigroup, basis, &ids, SKOLEM_SEARCH_BUDGET)
                .map_err(|e| format!("{id} on {}: {e}", m.name))?;
        }
    }
    Ok(format!("identity forms exact; equivalence on {} members for 4 systems", small.len()))
}

fn criterion_8() -> Outcome {
    let corpus = builtin_corpus();
    let mut checks = 0;
    for m in corpus.up_to_order(LOCALISE_MAX_ORDER) {
        if !oracle_check("regular", &m.semigroup).unwrap() {
            continue;
        }
        for id in REGULAR_CLASSES {
            verify_localise(&m.semigroup, &entry(id).unwrap().basis, DEFAULT_BUDGET)
                .map_err(|e| format!("{id} on {}: {e}", m.name))?;
            checks += 1;
        }
    }
    let mut pairs = 0;
    for m in corpus.iter() {
        let report = local_isomorphism_check(&m.semigroup);
        ensure(report.failures.is_empty(), format!("{}: {:?}", m.name, report.failures))?;
        pairs += report.pairs_checked;
    }
    Ok(format!("{checks} localisation equivalences; {pairs} D-related idempotent pairs with isomorphic eSe"))
}

fn criterion_9() -> Outcome {
    let seed = common::SEED;
    let n = common::CASES;
    let a = common::sums_membership_suite(seed, n)?;
    let b = common::solvability_suite(seed + 1, n)?;
    let c = common::universal_suite(seed + 2, n)?;
    let d = common::round_trip_suite(seed + 3, n)?;
    Ok(format!("sums {a}, solvability {b}, universal {c}, round trip {d} cases (seed {seed:#x})"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1", "oracle/basis cross-validation", criterion_1),
        ("2", "0-rectangular band regression", criterion_2),
        ("3", "NR regression", criterion_3),
        ("4a", "positive-integer regressions", criterion_4a),
        ("4b", "33 outside S(3,8)", criterion_4b),
        ("5", "closure suites", criterion_5),
        ("6", "maximum J-class equivalence", criterion_6),
        ("7", "Skolemisation", criterion_7),
        ("8", "localisation", criterion_8),
        ("9", "property suites", criterion_9),
    ];
    let mut unexpected = 0;
    for (id, title, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {id:<2} PASS  {title}: {detail}"),
            Err(detail) => {
                let known = KNOWN_FAILURES.contains(&id);
                let tag = if known { "FAIL  (known)" } else { "FAIL" };
                println!("criterion {id:<2} {tag}  {title}: {detail}");
                if !known {
                    unexpected += 1;
                }
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failures");
        std::process::exit(1);
    }
}
