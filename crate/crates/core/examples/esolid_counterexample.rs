//! The 0-rectangular band of order 17 that satisfies the weakened E-solid
//! basis (products of length two) but is not E-solid.

use semieq::classes::{core_is_completely_regular, entry, solidity_condition};
use semieq::eval::satisfies;
use semieq::family::{make_family, ESOLID_COUNTEREXAMPLE};
use semieq::green::{core, eggbox, green_data};

fn main() {
    let s = make_family(ESOLID_COUNTEREXAMPLE).expect("valid descriptor");
    let g = green_data(&s);
    println!("{}", eggbox(&s, &g));
    let weakened = satisfies(&s, &entry("esolid2").unwrap().basis, 100_000_000).unwrap();
    let full = satisfies(&s, &entry("esolid").unwrap().basis, 100_000_000).unwrap();
    println!("weakened basis holds:        {weakened}");
    println!("full E-solid basis holds:    {full}");
    println!("core is completely regular:  {}", core_is_completely_regular(&s));
    println!("solidity condition holds:    {}", solidity_condition(&g));
    let c = core(&s).unwrap();
    let labels: Vec<String> = c.embedding.iter().map(|&a| s.label(a)).collect();
    println!("core ({} elements): {}", labels.len(), labels.join(" "));
}
