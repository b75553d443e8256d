//! Parses equation systems and decides them on small semigroups, printing
//! the verdict with a witness or refutation trace.

use semieq::eqdsl::parse;
use semieq::eval::evaluate;
use semieq::family::make_family;

fn main() {
    let systems = [
        ("regular", "forall a. exists x. a*x*a = a"),
        ("commutative", "forall a b. a*b = b*a"),
        ("has an identity", "exists e. forall a. e*a = a & a*e = a"),
        ("bands", "forall a. a^2 = a"),
        ("inverses are idempotent products", "forall a. exists x. x in V(a) & a*x in E"),
        ("H-trivial or idempotent", "forall a b. a H b & a = b | a^2 = a"),
    ];
    for desc in ["Zn:3", "chain:3", "brandt:2", "null:2"] {
        let s = make_family(desc).expect("valid descriptor");
        println!("== {desc}");
        for (name, text) in systems {
            let sys = parse(text).expect("valid system");
            let report = evaluate(&s, &sys).expect("within budget");
            let trace = if report.verdict { &report.witness_trace } else { &report.failure_trace };
            let first = trace.first().map(|a| a.render(&s)).unwrap_or_default();
            println!("  {name:<34} {:<5} {first}", report.verdict);
        }
    }
}
