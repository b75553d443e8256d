//! Solvability of word equations in the positive integers, with the least
//! witnesses for chosen parameter values.

use semieq::natsolve::{decide_solvable_in_P, enumerate_witnesses, parse_additive, profile_of};

fn main() {
    let cases: [(&str, &[u64]); 4] = [
        ("params: a1 a2 a3 ; vars: x1 x2 ; eq: x1^9*x2^23*a1^2*a2^13*a3 = x1^30*x2^8*a1^11*a2^7*a3^10", &[1, 2, 3]),
        ("params: a b ; vars: x y ; eq: x^13*y^24*a^2*b^5 = x^10*y^16*a^13*b^19", &[2, 3]),
        ("params: a ; vars: x ; eq: x^2 = a^3", &[2]),
        ("params: a ; vars: x y ; eq: x^2*y^3 = a^7", &[4]),
    ];
    for (text, params) in cases {
        let eq = parse_additive(text).unwrap();
        let profile = profile_of(&eq).unwrap();
        let decision = decide_solvable_in_P(&profile).unwrap();
        println!("{eq}");
        println!("  m = {:?}  n = {:?}  d = {}  d' = {}", profile.m, profile.n, profile.d, profile.dprime);
        println!("  S(m): {}\n  S(n): {}", decision.structure_m, decision.structure_n);
        println!("  solvable: {} ({})", decision.solvable, decision.rationale);
        for w in enumerate_witnesses(&profile, params, 4).unwrap() {
            println!("  params {params:?}: x = {:?}, both sides {}", w.values, w.common_value);
        }
        println!();
    }
}
