//! The localisation transform, and a check that a localised basis holds in a
//! regular semigroup exactly when every local subsemigroup eSe satisfies the
//! original basis.

use semieq::classes::entry;
use semieq::eqdsl::parse;
use semieq::family::make_family;
use semieq::transforms::{local_isomorphism_check, localise, localise_sides};

fn main() {
    let regular = parse("forall a. exists x. a*x*a = a").unwrap();
    println!("{}\n", localise(&regular));
    let inverse = &entry("inverse").unwrap().basis;
    for desc in ["brandt:2", "T:2", "lz:2 x rz:2", "zrb:4x4:1101,1100,0101,0010"] {
        let s = make_family(desc).or_else(|_| semieq::corpus::from_descriptor(desc)).unwrap();
        let sides = localise_sides(&s, inverse, 100_000_000).unwrap();
        let iso = local_isomorphism_check(&s);
        println!(
            "{desc:<30} localised inverse basis: {:<5} every eSe inverse: {:<5} D-related eSe ≅ fSf: {}/{}",
            sides.localised,
            sides.all_local_subsemigroups,
            iso.pairs_checked - iso.failures.len(),
            iso.pairs_checked
        );
    }
}
