//! Named families of finite semigroups and their descriptor strings.
//!
//! | descriptor | semigroup |
//! |---|---|
//! | `Zn:<n>` | cyclic group of order n |
//! | `mono:<i>,<p>` | monogenic semigroup with index i and period p |
//! | `chain:<k>` | chain semilattice, element 0 is the bottom |
//! | `null:<k>` | null semigroup, element 0 is the zero |
//! | `lz:<k>`, `rz:<k>` | left-zero / right-zero semigroups |
//! | `T:<n>` | full transformation monoid on n points, n <= 4 |
//! | `U3` | the non-permutations of `T:3` |
//! | `brandt:<n>` | combinatorial Brandt semigroup, n*n matrix units and a zero |
//! | `btrunc:<i>` | `{0} ∪ {(j,k) : j,k < i} ∪ {(i,i)}` inside the infinite Brandt semigroup |
//! | `zrb:<r>x<c>:<rows>` | 0-rectangular band; rows give the idempotent pattern |
//!
//! Transformations act on the right: in `T:n` the product `ab` means "apply `a`,
//! then `b`", and elements are labelled by their 1-based image lists.

use std::fmt;

use crate::semigroup::{FiniteSemigroup, SemigroupError};

const MAX_ORDER: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Cyclic(usize),
    Monogenic {
        index: usize,
        period: usize,
    },
    Chain(usize),
    Null(usize),
    LeftZero(usize),
    RightZero(usize),
    FullTransformation(usize),
    NonPermutations3,
    Brandt(usize),
    TruncatedBrandt(usize),
    /// `pattern[i][l]` is true iff the element `(i, l)` is idempotent, that is,
    /// `(i,l)(j,m) = (i,m)` exactly when `pattern[j][l]` holds.
    ZeroRectangularBand {
        rows: usize,
        cols: usize,
        pattern: Vec<Vec<bool>>,
    },
}

fn unsupported(desc: &str, why: &str) -> SemigroupError {
    SemigroupError::UnsupportedParameter(format!("{desc}: {why}"))
}

fn positive(desc: &str, text: &str) -> Result<usize, SemigroupError> {
    match text.trim().parse::<usize>() {
        Ok(0) => Err(unsupported(desc, "parameters must be positive")),
        Ok(v) => Ok(v),
        Err(_) => Err(unsupported(desc, "expected a positive integer")),
    }
}

impl Family {
    pub fn parse(desc: &str) -> Result<Family, SemigroupError> {
        let desc = desc.trim();
        if desc == "U3" {
            return Ok(Family::NonPermutations3);
        }
        let (kind, rest) = desc.split_once(':').ok_or_else(|| unsupported(desc, "unknown family descriptor"))?;
        let family = match kind {
            "Zn" => Family::Cyclic(positive(desc, rest)?),
            "mono" => {
                let (i, p) = rest.split_once(',').ok_or_else(|| unsupported(desc, "expected mono:<i>,<p>"))?;
                Family::Monogenic { index: positive(desc, i)?, period: positive(desc, p)? }
            }
            "chain" => Family::Chain(positive(desc, rest)?),
            "null" => Family::Null(positive(desc, rest)?),
            "lz" => Family::LeftZero(positive(desc, rest)?),
            "rz" => Family::RightZero(positive(desc, rest)?),
            "T" => {
                let n = positive(desc, rest)?;
                if n > 4 {
                    return Err(unsupported(desc, "full transformation monoids are capped at n = 4"));
                }
                Family::FullTransformation(n)
            }
            "brandt" => Family::Brandt(positive(desc, rest)?),
            "btrunc" => Family::TruncatedBrandt(positive(desc, rest)?),
            "zrb" => {
                let (dims, matrix) =
                    rest.split_once(':').ok_or_else(|| unsupported(desc, "expected zrb:<rows>x<cols>:<matrix>"))?;
                let (r, c) = dims.split_once('x').ok_or_else(|| unsupported(desc, "expected <rows>x<cols>"))?;
                let (rows, cols) = (positive(desc, r)?, positive(desc, c)?);
                let lines: Vec<&str> = matrix.split(',').map(str::trim).collect();
                if lines.len() != rows {
                    return Err(unsupported(desc, "matrix must have <rows> comma-separated rows"));
                }
                let mut pattern = Vec::with_capacity(rows);
                for line in lines {
                    if line.len() != cols {
                        return Err(unsupported(desc, "each matrix row must have <cols> digits"));
                    }
                    let row = line
                        .chars()
                        .map(|ch| match ch {
                            '0' => Ok(false),
                            '1' => Ok(true),
                            _ => Err(unsupported(desc, "matrix entries must be 0 or 1")),
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    pattern.push(row);
                }
                Family::ZeroRectangularBand { rows, cols, pattern }
            }
            _ => return Err(unsupported(desc, "unknown family descriptor")),
        };
        if family.order() > MAX_ORDER {
            return Err(unsupported(desc, "order too large"));
        }
        Ok(family)
    }

    pub fn order(&self) -> usize {
        match self {
            Family::Cyclic(n) | Family::Chain(n) | Family::Null(n) | Family::LeftZero(n) | Family::RightZero(n) => *n,
            Family::Monogenic { index, period } => index.saturating_add(*period) - 1,
            Family::FullTransformation(n) => n.pow(*n as u32),
            Family::NonPermutations3 => 21,
            Family::Brandt(n) => n.saturating_mul(*n).saturating_add(1),
            Family::TruncatedBrandt(i) => i.saturating_mul(*i).saturating_add(2),
            Family::ZeroRectangularBand { rows, cols, .. } => rows.saturating_mul(*cols).saturating_add(1),
        }
    }

    pub fn build(&self) -> FiniteSemigroup {
        match self {
            Family::Cyclic(n) => {
                let n = *n;
                FiniteSemigroup::from_fn(n, (0..n).map(|i| i.to_string()).collect(), |a, b| (a + b) % n)
            }
            Family::Monogenic { index, period } => {
                let (i, p) = (*index, *period);
                let top = i + p - 1;
                // element k stands for a^(k+1)
                FiniteSemigroup::from_fn(top, (1..=top).map(|k| format!("a^{k}")).collect(), |a, b| {
                    let mut e = a + b + 2;
                    while e > top {
                        e -= p;
                    }
                    e - 1
                })
            }
            Family::Chain(k) => {
                FiniteSemigroup::from_fn(*k, (0..*k).map(|i| format!("e{i}")).collect(), |a, b| a.min(b))
            }
            Family::Null(k) => FiniteSemigroup::from_fn(*k, (0..*k).map(|i| i.to_string()).collect(), |_, _| 0),
            Family::LeftZero(k) => FiniteSemigroup::from_fn(*k, (0..*k).map(|i| format!("l{i}")).collect(), |a, _| a),
            Family::RightZero(k) => FiniteSemigroup::from_fn(*k, (0..*k).map(|i| format!("r{i}")).collect(), |_, b| b),
            Family::FullTransformation(n) => transformations(*n, |_| true),
            Family::NonPermutations3 => transformations(3, |map| {
                let mut seen = [false; 3];
                map.iter().for_each(|&v| seen[v] = true);
                !seen.iter().all(|s| *s)
            }),
            Family::Brandt(n) => {
                let n = *n;
                let mut labels = vec!["0".to_string()];
                for i in 0..n {
                    for j in 0..n {
                        labels.push(format!("({},{})", i + 1, j + 1));
                    }
                }
                FiniteSemigroup::from_fn(n * n + 1, labels, |a, b| {
                    if a == 0 || b == 0 {
                        return 0;
                    }
                    let ((i, j), (k, l)) = (((a - 1) / n, (a - 1) % n), ((b - 1) / n, (b - 1) % n));
                    if j == k {
                        1 + i * n + l
                    } else {
                        0
                    }
                })
            }
            Family::TruncatedBrandt(i) => {
                let i = *i;
                let mut units: Vec<(usize, usize)> = vec![];
                for j in 0..i {
                    for k in 0..i {
                        units.push((j, k));
                    }
                }
                units.push((i, i));
                let mut labels = vec!["0".to_string()];
                labels.extend(units.iter().map(|(j, k)| format!("({j},{k})")));
                let index_of = |u: (usize, usize)| units.iter().position(|&v| v == u).map(|p| p + 1);
                FiniteSemigroup::from_fn(units.len() + 1, labels, |a, b| {
                    if a == 0 || b == 0 {
                        return 0;
                    }
                    let ((p, q), (r, s)) = (units[a - 1], units[b - 1]);
                    if q == r {
                        index_of((p, s)).expect("truncated Brandt set is closed")
                    } else {
                        0
                    }
                })
            }
            Family::ZeroRectangularBand { rows, cols, pattern } => {
                let (r, c) = (*rows, *cols);
                let mut labels = vec!["0".to_string()];
                for i in 0..r {
                    for l in 0..c {
                        labels.push(format!("({},{})", i + 1, l + 1));
                    }
                }
                FiniteSemigroup::from_fn(r * c + 1, labels, |a, b| {
                    if a == 0 || b == 0 {
                        return 0;
                    }
                    let ((i, l), (j, m)) = (((a - 1) / c, (a - 1) % c), ((b - 1) / c, (b - 1) % c));
                    if pattern[j][l] {
                        1 + i * c + m
                    } else {
                        0
                    }
                })
            }
        }
    }
}

/// Maps on `{0..n-1}` in lexicographic order of their image lists, filtered by `keep`.
fn transformations(n: usize, keep: impl Fn(&[usize]) -> bool) -> FiniteSemigroup {
    let total = n.pow(n as u32);
    let maps: Vec<Vec<usize>> = (0..total)
        .map(|mut code| {
            let mut images = vec![0; n];
            for slot in images.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            images
        })
        .filter(|m| keep(m))
        .collect();
    let labels = maps.iter().map(|m| m.iter().map(|v| (v + 1).to_string()).collect::<String>()).collect();
    let index_of = |m: &[usize]| maps.iter().position(|x| x == m).expect("transformation set is closed");
    FiniteSemigroup::from_fn(maps.len(), labels, |a, b| {
        let composed: Vec<usize> = maps[a].iter().map(|&x| maps[b][x]).collect();
        index_of(&composed)
    })
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic(n) => write!(f, "Zn:{n}"),
            Family::Monogenic { index, period } => write!(f, "mono:{index},{period}"),
            Family::Chain(k) => write!(f, "chain:{k}"),
            Family::Null(k) => write!(f, "null:{k}"),
            Family::LeftZero(k) => write!(f, "lz:{k}"),
            Family::RightZero(k) => write!(f, "rz:{k}"),
            Family::FullTransformation(n) => write!(f, "T:{n}"),
            Family::NonPermutations3 => write!(f, "U3"),
            Family::Brandt(n) => write!(f, "brandt:{n}"),
            Family::TruncatedBrandt(i) => write!(f, "btrunc:{i}"),
            Family::ZeroRectangularBand { rows, cols, pattern } => {
                let body: Vec<String> =
                    pattern.iter().map(|row| row.iter().map(|&b| if b { '1' } else { '0' }).collect()).collect();
                write!(f, "zrb:{rows}x{cols}:{}", body.join(","))
            }
        }
    }
}

/// Parses a family descriptor and builds the semigroup.
pub fn make_family(desc: &str) -> Result<FiniteSemigroup, SemigroupError> {
    Ok(Family::parse(desc)?.build())
}

/// Descriptor of the 0-rectangular band whose nonzero D-class has the
/// idempotent pattern used as the length-two counterexample for E-solidity.
pub const ESOLID_COUNTEREXAMPLE: &str = "zrb:4x4:1101,1100,0101,0010";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_of_named_families() {
        assert_eq!(make_family("T:3").unwrap().order(), 27);
        assert_eq!(make_family("U3").unwrap().order(), 21);
        assert_eq!(make_family("T:4").unwrap().order(), 256);
        assert_eq!(make_family("brandt:2").unwrap().order(), 5);
        assert_eq!(make_family("mono:3,2").unwrap().order(), 4);
    }

    #[test]
    fn truncated_brandt_one() {
        let b1 = make_family("btrunc:1").unwrap();
        assert_eq!(b1.order(), 3);
        assert_eq!(b1.labels().unwrap(), &["0", "(0,0)", "(1,1)"]);
        assert_eq!(b1.mul(1, 2), 0);
        assert!(b1.elements().all(|a| b1.is_idempotent(a)));
    }

    #[test]
    fn esolid_counterexample_band() {
        let s = make_family(ESOLID_COUNTEREXAMPLE).unwrap();
        assert_eq!(s.order(), 17);
        let nonzero_idempotents: Vec<String> = s.idempotents().iter().filter(|&a| a != 0).map(|a| s.label(a)).collect();
        assert_eq!(nonzero_idempotents, ["(1,1)", "(1,2)", "(1,4)", "(2,1)", "(2,2)", "(3,2)", "(3,4)", "(4,3)"]);
    }

    #[test]
    fn monogenic_arithmetic() {
        // index 2, period 3: a, a^2, a^3, a^4 with a^5 = a^2
        let m = make_family("mono:2,3").unwrap();
        assert_eq!(m.order(), 4);
        assert_eq!(m.mul(1, 2), 1); // a^2 * a^3 = a^5 = a^2
        let z = make_family("mono:1,4").unwrap();
        assert_eq!(z.identity(), Some(3));
        assert_eq!(z.mul(2, 2), 1); // a^3 * a^3 = a^6 = a^2
    }

    #[test]
    fn transformation_composition_acts_on_the_right() {
        let t = make_family("T:3").unwrap();
        let a = t.element_by_label("233").unwrap();
        let c = t.element_by_label("111").unwrap();
        // apply a then the constant map: constant
        assert_eq!(t.label(t.mul(a, c)), "111");
        // apply the constant then a: 1 -> 1 -> 2
        assert_eq!(t.label(t.mul(c, a)), "222");
        assert_eq!(t.identity().map(|e| t.label(e)), Some("123".into()));
    }

    #[test]
    fn descriptors_round_trip_and_reject_bad_input() {
        for d in [
            "Zn:5",
            "mono:2,3",
            "chain:4",
            "null:3",
            "lz:2",
            "rz:3",
            "T:2",
            "U3",
            "brandt:3",
            "btrunc:2",
            ESOLID_COUNTEREXAMPLE,
        ] {
            assert_eq!(Family::parse(d).unwrap().to_string(), d);
        }
        for bad in ["Zn:0", "T:5", "zrb:2x2:11", "zrb:2x2:12,11", "foo:3", "mono:3"] {
            assert!(matches!(make_family(bad), Err(SemigroupError::UnsupportedParameter(_))), "{bad}");
        }
    }
}
