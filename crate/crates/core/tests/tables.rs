//! Cayley table files on disk.

use std::fs;

use semieq::corpus::{builtin_corpus, load_table, to_table_text, CorpusError};

#[test]
fn files_load_and_errors_are_typed() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        p
    };
    let z2 = load_table(&write("z2.txt", "2\n0 1\n1 0\n")).unwrap();
    assert_eq!(z2.order(), 2);
    assert_eq!(z2.identity(), Some(0));
    assert!(matches!(load_table(&write("bad.txt", "2\n0 5\n1 0\n")), Err(CorpusError::Parse { line: 2, .. })));
    assert!(matches!(load_table(&write("magma.txt", "2\n1 0\n0 0\n")), Err(CorpusError::NonAssociative(0, 0, 1))));
    assert!(matches!(load_table(&dir.path().join("missing.txt")), Err(CorpusError::Io { .. })));
}

#[test]
fn every_builtin_survives_a_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (i, m) in builtin_corpus().iter().enumerate() {
        let path = dir.path().join(format!("{i}.txt"));
        fs::write(&path, to_table_text(&m.semigroup)).unwrap();
        assert_eq!(load_table(&path).unwrap(), m.semigroup, "{}", m.name);
    }
}
