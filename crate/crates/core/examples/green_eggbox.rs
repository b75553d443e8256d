//! Green's relations of a few named semigroups, drawn as eggbox diagrams.
//!
//! Run with `cargo run --example green_eggbox -- brandt:3`; with no argument
//! a default selection is shown.

use semieq::corpus::from_descriptor;
use semieq::green::{eggbox, green_data};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let descriptors = if args.is_empty() {
        vec!["brandt:2".to_string(), "T:2".to_string(), "zrb:4x4:1101,1100,0101,0010".to_string()]
    } else {
        args
    };
    for d in descriptors {
        let s = match from_descriptor(&d) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("{e}");
                std::process::exit(2);
            }
        };
        let g = green_data(&s);
        println!("== {d}: order {}, {} idempotents, {} D-classes", s.order(), g.idempotents.len(), g.d_classes().len());
        println!("{}", eggbox(&s, &g));
    }
}
