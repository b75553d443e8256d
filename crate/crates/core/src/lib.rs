//! Finite semigroups, quantified equation systems over them, and solvability
//! of word equations in the positive integers.
//!
//! The crate is organised around a handful of capabilities, each with a
//! runnable example under `examples/`:
//!
//! | capability | module | example |
//! |---|---|---|
//! | tables, constructions, named families | [`semigroup`], [`family`] | `load_table` |
//! | Green's relations and eggbox diagrams | [`green`] | `green_eggbox` |
//! | equation system language | [`eqdsl`] | `evaluate_systems` |
//! | deciding `S ⊨ σ` | [`eval`] | `evaluate_systems` |
//! | class catalogue and cross-validation | [`classes`] | `cross_validate`, `esolid_counterexample`, `nr_not_evariety` |
//! | Skolemisation and localisation | [`transforms`] | `skolemize`, `localise` |
//! | congruences, quotients, products | [`closure`] | `closure_suite` |
//! | equations in the positive integers | [`natsolve`] | `positive_integer_solver`, `universal_equations` |
//! | built-in corpus and table files | [`corpus`] | `load_table` |
//!
//! ```
//! use semieq::{eqdsl::parse, eval::satisfies, family::make_family};
//!
//! let brandt = make_family("brandt:2").unwrap();
//! let regular = parse("forall a. exists x. a*x*a = a").unwrap();
//! assert!(satisfies(&brandt, &regular, 1_000).unwrap());
//! ```

pub mod classes;
pub mod cli;
pub mod closure;
pub mod corpus;
pub mod eqdsl;
pub mod eval;
pub mod family;
pub mod green;
pub mod natsolve;
pub mod semigroup;
pub mod transforms;
