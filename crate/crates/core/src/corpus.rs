//! The built-in corpus of small semigroups, Cayley table files, and corpus
//! manifests.
//!
//! A table file holds the order on its first line, then one row of products
//! per element, then optionally a `labels:` line:
//!
//! ```text
//! # the cyclic group of order 2
//! 2
//! 0 1
//! 1 0
//! labels: e g
//! ```
//!
//! A semigroup descriptor is a family descriptor (see [`crate::family`]), a
//! product `A x B`, or `A^1` for the monoid `A¹`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::family::{make_family, ESOLID_COUNTEREXAMPLE};
use crate::semigroup::{FiniteSemigroup, SemigroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    /// Malformed table or manifest text.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    /// The table is well formed but not associative.
    #[error("not associative: ({0}*{1})*{2} differs from {0}*({1}*{2})")]
    NonAssociative(usize, usize, usize),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    /// A descriptor that names neither a family, a product nor a file.
    #[error("unknown semigroup `{descriptor}`: {message}")]
    UnknownDescriptor { descriptor: String, message: String },
    #[error("corpus name `{0}` used twice")]
    DuplicateName(String),
}

/// Where a corpus member came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "source", rename_all = "snake_case")]
pub enum Provenance {
    Descriptor(String),
    File(PathBuf),
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Descriptor(d) => f.write_str(d),
            Provenance::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusMember {
    pub name: String,
    pub provenance: Provenance,
    pub semigroup: FiniteSemigroup,
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub members: Vec<CorpusMember>,
}

impl Corpus {
    pub fn push(&mut self, member: CorpusMember) -> Result<(), CorpusError> {
        if self.get(&member.name).is_some() {
            return Err(CorpusError::DuplicateName(member.name));
        }
        self.members.push(member);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&CorpusMember> {
        self.members.iter().find(|m| m.name == name)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, CorpusMember> {
        self.members.iter()
    }

    /// Members of order at most `max`, in corpus order.
    pub fn up_to_order(&self, max: usize) -> Vec<CorpusMember> {
        self.members.iter().filter(|m| m.semigroup.order() <= max).cloned().collect()
    }

    /// One `name = descriptor` or `name = file:path` line per member.
    pub fn manifest(&self) -> String {
        self.members.iter().map(|m| format!("{} = {}\n", m.name, m.provenance)).collect()
    }
}

/// Descriptors of the built-in corpus, in order.
pub fn builtin_descriptors() -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    out.extend((1..=6).map(|n| format!("Zn:{n}")));
    out.extend((2..=4).map(|k| format!("chain:{k}")));
    out.extend(["null:2", "null:3", "null:2 x null:2"].map(String::from));
    out.extend(["lz:2", "lz:3", "rz:2", "rz:3", "lz:2 x rz:2"].map(String::from));
    for i in 1..=3 {
        for p in 1..=3 {
            out.push(format!("mono:{i},{p}"));
        }
    }
    out.extend(["brandt:2", "brandt:3", "btrunc:1", "btrunc:2", "btrunc:3"].map(String::from));
    out.push(ESOLID_COUNTEREXAMPLE.to_string());
    out.extend(["T:2", "T:3", "U3"].map(String::from));
    out.extend(
        [
            "Zn:2 x Zn:2",
            "Zn:2 x Zn:3",
            "chain:2 x Zn:2",
            "brandt:2 x Zn:2",
            "lz:2 x Zn:2",
            "rz:2 x Zn:3",
            "null:2^1",
            "brandt:2^1",
        ]
        .map(String::from),
    );
    out
}

/// The curated corpus; every member is named by its descriptor.
pub fn builtin_corpus() -> Corpus {
    let mut corpus = Corpus::default();
    for d in builtin_descriptors() {
        let semigroup = from_descriptor(&d).expect("builtin descriptors are valid");
        corpus
            .push(CorpusMember { name: d.clone(), provenance: Provenance::Descriptor(d), semigroup })
            .expect("builtin names are unique");
    }
    corpus
}

/// Builds a semigroup from a family descriptor, `A x B` or `A^1`.
pub fn from_descriptor(descriptor: &str) -> Result<FiniteSemigroup, CorpusError> {
    let descriptor = descriptor.trim();
    let unknown = |message: String| CorpusError::UnknownDescriptor { descriptor: descriptor.to_string(), message };
    let factors: Vec<&str> = descriptor.split(" x ").collect();
    if factors.len() > 1 {
        let mut product = from_descriptor(factors[0])?;
        for f in &factors[1..] {
            product = product.direct_product(&from_descriptor(f)?);
        }
        return Ok(product);
    }
    if let Some(base) = descriptor.strip_suffix("^1") {
        return Ok(from_descriptor(base)?.adjoin_identity());
    }
    make_family(descriptor).map_err(|e| unknown(e.to_string()))
}

/// A descriptor, or failing that, a table file path.
pub fn resolve(spec: &str) -> Result<(FiniteSemigroup, Provenance), CorpusError> {
    match from_descriptor(spec) {
        Ok(s) => Ok((s, Provenance::Descriptor(spec.trim().to_string()))),
        Err(e) => {
            let path = Path::new(spec.strip_prefix("file:").unwrap_or(spec));
            if path.is_file() {
                Ok((load_table(path)?, Provenance::File(path.to_path_buf())))
            } else {
                Err(e)
            }
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CorpusError {
    CorpusError::Io { path: path.display().to_string(), message: e.to_string() }
}

pub fn load_table(path: &Path) -> Result<FiniteSemigroup, CorpusError> {
    parse_table(&fs::read_to_string(path).map_err(|e| io_error(path, e))?)
}

/// Parses the Cayley table format.
pub fn parse_table(text: &str) -> Result<FiniteSemigroup, CorpusError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let parse_err = |line: usize, message: String| CorpusError::Parse { line, message };
    let (first, header) = lines.next().ok_or_else(|| parse_err(1, "empty table file".into()))?;
    let n: usize = header.parse().map_err(|_| parse_err(first, format!("expected the order, found `{header}`")))?;
    if n == 0 {
        return Err(parse_err(first, "order must be positive".into()));
    }
    let mut rows = Vec::with_capacity(n);
    let mut last_line = first;
    for i in 0..n {
        let (line, text) =
            lines.next().ok_or_else(|| parse_err(last_line + 1, format!("expected {n} rows, found {i}")))?;
        last_line = line;
        let row = text
            .split_whitespace()
            .map(|t| {
                let v: usize = t.parse().map_err(|_| parse_err(line, format!("`{t}` is not an element index")))?;
                if v >= n {
                    return Err(parse_err(line, format!("entry {v} is outside [0, {n})")));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(parse_err(line, format!("row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    let labels = match lines.next() {
        None => None,
        Some((line, text)) => {
            let rest =
                text.strip_prefix("labels:").ok_or_else(|| parse_err(line, format!("unexpected line `{text}`")))?;
            Some((line, rest.split_whitespace().map(str::to_string).collect::<Vec<_>>()))
        }
    };
    if let Some((line, text)) = lines.next() {
        return Err(parse_err(line, format!("unexpected line `{text}`")));
    }
    let s = FiniteSemigroup::validate(&rows).map_err(|e| match e {
        SemigroupError::NonAssociative(i, j, k) => CorpusError::NonAssociative(i, j, k),
        other => parse_err(first, other.to_string()),
    })?;
    match labels {
        None => Ok(s),
        Some((line, labels)) => s.with_labels(labels).map_err(|e| parse_err(line, e.to_string())),
    }
}

/// Renders a semigroup in the table format, with labels when it has them.
pub fn to_table_text(s: &FiniteSemigroup) -> String {
    let mut out = format!("{}\n", s.order());
    for a in s.elements() {
        let row: Vec<String> = s.row(a).iter().map(usize::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if let Some(labels) = s.labels() {
        out.push_str(&format!("labels: {}\n", labels.join(" ")));
    }
    out
}

/// Reads a manifest of `name = descriptor` and `name = file:path` lines.
/// Relative file paths are taken relative to the manifest's directory.
pub fn load_manifest(path: &Path) -> Result<Corpus, CorpusError> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    parse_manifest(&text, path.parent().unwrap_or(Path::new(".")))
}

pub fn parse_manifest(text: &str, base: &Path) -> Result<Corpus, CorpusError> {
    let mut corpus = Corpus::default();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, source) = line
            .split_once('=')
            .ok_or_else(|| CorpusError::Parse { line: i + 1, message: "expected `name = source`".into() })?;
        let (name, source) = (name.trim().to_string(), source.trim());
        let (semigroup, provenance) = match source.strip_prefix("file:") {
            Some(file) => {
                let path = base.join(file.trim());
                (load_table(&path)?, Provenance::File(path))
            }
            None => (from_descriptor(source)?, Provenance::Descriptor(source.to_string())),
        };
        corpus.push(CorpusMember { name, provenance, semigroup })?;
    }
    Ok(corpus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_contents() {
        let c = builtin_corpus();
        assert_eq!(c.get("brandt:2").unwrap().semigroup.order(), 5);
        assert_eq!(c.get(ESOLID_COUNTEREXAMPLE).unwrap().semigroup.order(), 17);
        assert_eq!(c.get("T:3").unwrap().semigroup.order(), 27);
        assert_eq!(c.get("U3").unwrap().semigroup.order(), 21);
        assert_eq!(c.get("null:2 x null:2").unwrap().semigroup.order(), 4);
        assert_eq!(c.get("null:2^1").unwrap().semigroup.order(), 3);
        assert_eq!(c.len(), builtin_descriptors().len());
        for m in c.iter() {
            m.semigroup.recheck().unwrap();
        }
    }

    #[test]
    fn construction_is_deterministic() {
        let (a, b) = (builtin_corpus(), builtin_corpus());
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.semigroup, y.semigroup);
        }
    }

    #[test]
    fn table_round_trip() {
        for m in builtin_corpus().iter() {
            let back = parse_table(&to_table_text(&m.semigroup)).unwrap();
            assert_eq!(back, m.semigroup, "{}", m.name);
        }
    }

    #[test]
    fn table_errors() {
        let z2 = parse_table("# Z2\n2\n0 1\n1 0\n").unwrap();
        assert_eq!(z2.order(), 2);
        assert!(matches!(parse_table("2\n0 2\n1 0\n"), Err(CorpusError::Parse { line: 2, .. })));
        assert!(matches!(parse_table("2\n0 1\n"), Err(CorpusError::Parse { .. })));
        // 0*0 = 1 and every other product is 0
        assert!(matches!(parse_table("2\n1 0\n0 0\n"), Err(CorpusError::NonAssociative(..))));
        assert!(matches!(parse_table("2\n0 1\n1 0\nlabels: a a\n"), Err(CorpusError::Parse { line: 4, .. })));
    }

    #[test]
    fn manifest_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("z2.tbl"), "2\n0 1\n1 0\n").unwrap();
        let text = "# sample\nbrandt = brandt:2\npair = Zn:2 x chain:2\nz2 = file:z2.tbl\n";
        fs::write(dir.path().join("m.txt"), text).unwrap();
        let c = load_manifest(&dir.path().join("m.txt")).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.get("pair").unwrap().semigroup.order(), 4);
        assert!(matches!(c.get("z2").unwrap().provenance, Provenance::File(_)));
        assert!(c.manifest().starts_with("brandt = brandt:2\npair = Zn:2 x chain:2\nz2 = file:"));
        assert!(matches!(parse_manifest("a = Zn:2\na = Zn:3\n", Path::new(".")), Err(CorpusError::DuplicateName(_))));
    }
}
