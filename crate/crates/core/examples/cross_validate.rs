//! Compares every catalogue class's structural test with its equational
//! basis over the built-in corpus.

use semieq::classes::{catalogue, cross_validate, WEAKENED_CLASS};
use semieq::corpus::builtin_corpus;
use semieq::eval::DEFAULT_BUDGET;

fn main() {
    let corpus = builtin_corpus();
    println!("{} corpus members", corpus.len());
    for entry in catalogue() {
        let found = cross_validate(entry.id, &corpus.members, DEFAULT_BUDGET).expect("catalogued id");
        let members = corpus.iter().filter(|m| entry.oracle(&m.semigroup)).count();
        let note = if entry.id == WEAKENED_CLASS { " (weakened basis)" } else { "" };
        println!("{:<12} {:>3} members  {} discrepancies{note}", entry.id, members, found.len());
        for d in found {
            println!("    {}", serde_json::to_string(&d).expect("serialisable"));
        }
    }
}
