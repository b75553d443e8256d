//! Skolemises catalogue systems into identities and checks on small
//! semigroups that an interpretation of the new operations exists exactly
//! when the original system holds.

use semieq::classes::entry;
use semieq::eqdsl::parse;
use semieq::family::make_family;
use semieq::transforms::{skolemize, skolemize_with_names, verify_skolem};

fn main() {
    let group = parse("forall a b. exists x y. a*x = b & y*a = b").unwrap();
    println!("{}\n", skolemize_with_names(&group, &["ldiv", "rdiv"]).unwrap());
    let monoid = entry("monoid").unwrap().basis.clone();
    println!("{}\n", skolemize_with_names(&monoid, &["e"]).unwrap());
    for id in ["regular", "clifford", "maxj"] {
        println!("{id}: {}\n", skolemize(&entry(id).unwrap().basis).unwrap());
    }
    for desc in ["Zn:2", "chain:2", "null:2", "lz:2"] {
        let s = make_family(desc).unwrap();
        let ids = skolemize(&group).unwrap();
        let check = verify_skolem(&s, &group, &ids, 1_000_000).unwrap();
        println!("{desc:<8} group interpretation found: {} ({} steps)", check.found, check.steps);
    }
}
