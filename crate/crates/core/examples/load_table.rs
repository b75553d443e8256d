//! Reads a Cayley table file, or writes a built-in semigroup in the table
//! format and reads it back.
//!
//! `cargo run --example load_table -- path/to/table.txt`

use semieq::corpus::{from_descriptor, load_table, parse_table, to_table_text};
use semieq::green::green_data;

fn main() {
    let s = match std::env::args().nth(1) {
        Some(path) => match load_table(std::path::Path::new(&path)) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("{e}");
                std::process::exit(2);
            }
        },
        None => {
            let original = from_descriptor("brandt:2^1").unwrap();
            let text = to_table_text(&original);
            println!("{text}");
            let back = parse_table(&text).unwrap();
            assert_eq!(back, original);
            back
        }
    };
    println!("{s}");
    let g = green_data(&s);
    println!(
        "order {}; {} idempotents; identity {:?}; zero {:?}; {} J-classes",
        s.order(),
        g.idempotents.len(),
        s.identity().map(|e| s.label(e)),
        s.zero().map(|z| s.label(z)),
        g.j_classes().len()
    );
}
