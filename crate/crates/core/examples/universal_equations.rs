//! Which parameterless equations are solvable in every semigroup, with a
//! check of the universal ones against the built-in corpus. Every equation
//! is solvable in a finite semigroup by an idempotent, so the finite corpus
//! only confirms the universal ones; the others already fail in the positive
//! integers under addition.

use semieq::corpus::builtin_corpus;
use semieq::eqdsl::{parse, EquationSystem};
use semieq::eval::satisfies;
use semieq::natsolve::{classify_universal, parse_additive, AdditiveEquation};

fn existential(eq: &AdditiveEquation) -> EquationSystem {
    parse(&format!("exists {}. {} = {}", eq.vars.join(" "), eq.lhs, eq.rhs)).unwrap()
}

fn main() {
    let corpus = builtin_corpus();
    for text in ["x1*x2 = x2*x1", "x = x^2", "x1^2*x2 = x1*x2^2", "x*y*x = y", "x^3*y = y^2*x"] {
        let eq = parse_additive(text).unwrap();
        let u = classify_universal(&eq).unwrap();
        let holds = corpus.iter().filter(|m| satisfies(&m.semigroup, &existential(&eq), 1_000_000).unwrap()).count();
        println!(
            "{text:<20} universal: {:<5} ({:?}); solvable in {holds}/{} corpus members",
            u.universal,
            u.condition,
            corpus.len()
        );
    }
}
