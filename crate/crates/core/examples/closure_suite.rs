//! Congruence lattices and the closure of catalogue classes under quotients
//! and direct products over the small corpus members.

use semieq::classes::CLASS_IDS;
use semieq::closure::{all_congruences, basis_preserved_under_H, basis_preserved_under_P, closed_under_P};
use semieq::corpus::builtin_corpus;
use semieq::family::make_family;

fn main() {
    for desc in ["Zn:4", "chain:3", "null:3", "brandt:2"] {
        let s = make_family(desc).unwrap();
        let cs = all_congruences(&s, 7).unwrap();
        let shown: Vec<String> = cs.iter().map(|c| format!("{:?}", c.blocks())).collect();
        println!("{desc}: {} congruences\n    {}", cs.len(), shown.join("\n    "));
    }
    let small = builtin_corpus().up_to_order(5);
    println!("\n{} members of order at most 5", small.len());
    for id in CLASS_IDS {
        let h = basis_preserved_under_H(id, &small, 7, 100_000_000).unwrap();
        let p = basis_preserved_under_P(id, &small, 100_000_000).unwrap();
        println!("{id:<12} basis violations: H {} P {}", h.len(), p.len());
    }
    let maxj = closed_under_P("maxj", &small).unwrap();
    println!("\nproducts without a maximum J-class: {}", maxj.len());
    for v in maxj.iter().take(5) {
        println!("    {}", serde_json::to_string(v).unwrap());
    }
}
