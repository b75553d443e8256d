//! The class catalogue: each entry pairs a structural membership test, computed
//! from the table and Green's relations alone, with an equational basis that is
//! decided by the evaluator. Cross-validation compares the two.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::corpus::CorpusMember;
use crate::eqdsl::{parse, Atom, Block, EquationSystem, Quantifier, Word};
use crate::eval::{satisfies, EvalError};
use crate::green::{are_isomorphic, core, green_data, inverses_of, GreenData};
use crate::semigroup::{ElementSubset, FiniteSemigroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassError {
    /// The identifier is not in the catalogue.
    #[error("unknown class `{0}`")]
    UnknownClass(String),
}

type Oracle = fn(&FiniteSemigroup, &GreenData) -> bool;

pub struct ClassEntry {
    pub id: &'static str,
    pub name: &'static str,
    pub basis: EquationSystem,
    pub notes: &'static str,
    oracle: Oracle,
}

impl std::fmt::Debug for ClassEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClassEntry").field("id", &self.id).field("basis", &self.basis.to_string()).finish()
    }
}

impl ClassEntry {
    pub fn oracle(&self, s: &FiniteSemigroup) -> bool {
        (self.oracle)(s, &green_data(s))
    }

    pub fn oracle_with(&self, s: &FiniteSemigroup, g: &GreenData) -> bool {
        (self.oracle)(s, g)
    }
}

/// Identifiers accepted on the command line, in catalogue order.
pub const CLASS_IDS: [&str; 25] = [
    "group",
    "regular",
    "cr",
    "clifford",
    "cs",
    "ig",
    "crypto",
    "rightid",
    "monoid",
    "simple",
    "rightsimple",
    "leftsimple",
    "maxj",
    "bisimple",
    "rightgroup",
    "id",
    "inverse",
    "orthodox",
    "esolid",
    "esolid2",
    "reg34",
    "inv35",
    "orth36",
    "es37",
    "nr",
];

/// The weakened basis whose disagreement with its oracle is expected.
pub const WEAKENED_CLASS: &str = "esolid2";

/// The idempotent words `ax, xa, by, yb`.
pub fn f_set() -> [Word; 4] {
    [Word::new(["a", "x"]), Word::new(["x", "a"]), Word::new(["b", "y"]), Word::new(["y", "b"])]
}

/// All products `g1 g2 ... gk` with each `gi` drawn from the F-set, in
/// lexicographic order of the index sequence.
pub fn f_products(length: u32) -> Vec<Word> {
    let f = f_set();
    (0..4usize.pow(length))
        .map(|mut code| {
            let mut digits = vec![0; length as usize];
            for d in digits.iter_mut().rev() {
                *d = code % 4;
                code /= 4;
            }
            digits.iter().fold(Word(Vec::new()), |acc, &i| acc.concat(&f[i]))
        })
        .collect()
}

fn two_inverses_basis(extra: Vec<Atom>) -> EquationSystem {
    let mut atoms = vec![
        Atom::InV { x: Word::symbol("x"), a: Word::symbol("a") },
        Atom::InV { x: Word::symbol("y"), a: Word::symbol("b") },
    ];
    atoms.extend(extra);
    EquationSystem::new(
        vec![
            Block { quantifier: Quantifier::Forall, symbols: vec!["a".into(), "b".into()] },
            Block { quantifier: Quantifier::Exists, symbols: vec!["x".into(), "y".into()] },
        ],
        vec![atoms],
    )
    .expect("generated basis is well formed")
}

pub fn inverse_basis() -> EquationSystem {
    let f = f_set();
    let mut atoms = Vec::new();
    for g1 in &f {
        for g2 in &f {
            atoms.push(Atom::WordEq(g1.concat(g2), g2.concat(g1)));
        }
    }
    two_inverses_basis(atoms)
}

pub fn orthodox_basis() -> EquationSystem {
    two_inverses_basis(f_products(3).into_iter().map(Atom::InE).collect())
}

pub fn esolid_basis() -> EquationSystem {
    two_inverses_basis(f_products(3).into_iter().map(Atom::InG).collect())
}

pub fn esolid2_basis() -> EquationSystem {
    two_inverses_basis(f_products(2).into_iter().map(Atom::InE).collect())
}

const REG34: &str = "forall a b. exists x u v. x in V(a) & u in V(a^2) & v in V(b^2)";

fn p(text: &str) -> EquationSystem {
    parse(text).expect("catalogue basis parses")
}

// ---- oracles -------------------------------------------------------------

fn single(ids: &[usize]) -> bool {
    GreenData::class_count(ids) == 1
}

pub fn is_regular(_s: &FiniteSemigroup, g: &GreenData) -> bool {
    g.r_classes().iter().all(|r| r.iter().any(|&a| g.idempotents.contains(a)))
}

fn group(_s: &FiniteSemigroup, g: &GreenData) -> bool {
    single(&g.r_class) && single(&g.l_class)
}

fn completely_regular(_s: &FiniteSemigroup, g: &GreenData) -> bool {
    g.group_h.iter().all(|&b| b)
}

fn idempotents_central(s: &FiniteSemigroup, g: &GreenData) -> bool {
    g.idempotents.iter().all(|e| s.elements().all(|a| s.mul(e, a) == s.mul(a, e)))
}

fn clifford(s: &FiniteSemigroup, g: &GreenData) -> bool {
    completely_regular(s, g) && idempotents_central(s, g)
}

fn completely_simple(s: &FiniteSemigroup, g: &GreenData) -> bool {
    let e = &g.idempotents;
    single(&g.j_class)
        && !e.is_empty()
        && e.iter().all(|x| e.iter().all(|f| !(s.mul(x, f) == f && s.mul(f, x) == f) || f == x))
}

fn inverse_in_subgroup(s: &FiniteSemigroup, g: &GreenData) -> bool {
    s.elements().all(|a| inverses_of(s, a).iter().any(|x| g.group_h[x]))
}

pub fn h_is_congruence(s: &FiniteSemigroup, g: &GreenData) -> bool {
    s.elements().all(|a| {
        s.elements().filter(|&b| g.h_related(a, b)).all(|b| {
            s.elements().all(|c| g.h_related(s.mul(c, a), s.mul(c, b)) && g.h_related(s.mul(a, c), s.mul(b, c)))
        })
    })
}

fn cryptogroup(s: &FiniteSemigroup, g: &GreenData) -> bool {
    completely_regular(s, g) && h_is_congruence(s, g)
}

fn right_identity(s: &FiniteSemigroup, _g: &GreenData) -> bool {
    s.elements().any(|x| s.elements().all(|a| s.mul(a, x) == a))
}

fn monoid(s: &FiniteSemigroup, _g: &GreenData) -> bool {
    s.identity().is_some()
}

fn simple(_s: &FiniteSemigroup, g: &GreenData) -> bool {
    single(&g.j_class)
}

fn right_simple(_s: &FiniteSemigroup, g: &GreenData) -> bool {
    single(&g.r_class)
}

fn left_simple(_s: &FiniteSemigroup, g: &GreenData) -> bool {
    single(&g.l_class)
}

fn bisimple(_s: &FiniteSemigroup, g: &GreenData) -> bool {
    single(&g.d_class)
}

/// A J-class lying above every other one, if there is one.
pub fn maximum_j_class(s: &FiniteSemigroup, g: &GreenData) -> Option<ElementSubset> {
    let top = s.elements().find(|&a| s.two_sided_ideal(a).len() == s.order())?;
    Some(ElementSubset::from_flags(s.elements().map(|b| g.j_related(top, b)).collect()))
}

/// The two structural readings of "the equation for a maximum J-class holds".
/// Returns `(not_null, not_two_element_null)`.
pub fn maxj_conditions(s: &FiniteSemigroup, g: &GreenData) -> (bool, bool) {
    let Some(j) = maximum_j_class(s, g) else {
        return (false, false);
    };
    let rest = ElementSubset::from_flags(s.elements().map(|a| !j.contains(a)).collect());
    if rest.is_empty() {
        return (true, true);
    }
    let quotient = s.rees_quotient(&rest).expect("complement of the maximum J-class is an ideal");
    let zero = quotient.zero().expect("Rees quotient has a zero");
    let null = quotient.elements().all(|a| quotient.elements().all(|b| quotient.mul(a, b) == zero));
    let n2 = crate::family::make_family("null:2").expect("valid family");
    (!null, are_isomorphic(&quotient, &n2).is_none())
}

fn max_j(s: &FiniteSemigroup, g: &GreenData) -> bool {
    let (not_null, not_n) = maxj_conditions(s, g);
    assert_eq!(not_null, not_n, "the two maximum J-class conditions disagree");
    not_null
}

fn right_group(s: &FiniteSemigroup, g: &GreenData) -> bool {
    let structural = right_simple(s, g) && !g.idempotents.is_empty();
    let unique = s.elements().all(|a| s.elements().all(|b| s.elements().filter(|&x| s.mul(a, x) == b).count() == 1));
    assert_eq!(structural, unique, "right group characterisations disagree");
    structural
}

fn has_idempotent(_s: &FiniteSemigroup, g: &GreenData) -> bool {
    !g.idempotents.is_empty()
}

fn inverse(s: &FiniteSemigroup, g: &GreenData) -> bool {
    is_regular(s, g) && g.idempotents.iter().all(|e| g.idempotents.iter().all(|f| s.mul(e, f) == s.mul(f, e)))
}

fn orthodox(s: &FiniteSemigroup, g: &GreenData) -> bool {
    is_regular(s, g) && g.idempotents.iter().all(|e| g.idempotents.iter().all(|f| s.is_idempotent(s.mul(e, f))))
}

/// The core `<E>` is a union of groups.
pub fn core_is_completely_regular(s: &FiniteSemigroup) -> bool {
    match core(s) {
        Ok(c) => green_data(&c.semigroup).group_h.iter().all(|&b| b),
        Err(_) => false,
    }
}

/// `e L f R g` for idempotents implies an idempotent `h` with `e R h L g`.
pub fn solidity_condition(g: &GreenData) -> bool {
    let e: Vec<usize> = g.idempotents.to_vec();
    e.iter().all(|&x| {
        e.iter().filter(|&&f| g.l_related(x, f)).all(|&f| {
            e.iter().filter(|&&z| g.r_related(f, z)).all(|&z| e.iter().any(|&h| g.r_related(x, h) && g.l_related(h, z)))
        })
    })
}

fn esolid(s: &FiniteSemigroup, g: &GreenData) -> bool {
    if !is_regular(s, g) {
        return false;
    }
    let via_core = core_is_completely_regular(s);
    assert_eq!(via_core, solidity_condition(g), "E-solid characterisations disagree");
    via_core
}

fn nr(s: &FiniteSemigroup, g: &GreenData) -> bool {
    is_regular(s, g) && s.elements().all(|a| g.idempotents.iter().any(|e| s.mul(e, a) == a && s.mul(a, e) == a))
}

fn build_catalogue() -> Vec<ClassEntry> {
    let e = |id, name, basis, notes, oracle: Oracle| ClassEntry { id, name, basis, notes, oracle };
    let reg34_with = |atom: &str| p(&format!("{REG34} & {atom}"));
    vec![
        e("group", "groups", p("forall a b. exists x y. a*x = b & y*a = b"), "one R-class and one L-class", group),
        e("regular", "regular semigroups", p("forall a. exists x. a*x*a = a"), "every R-class holds an idempotent", is_regular),
        e("cr", "completely regular semigroups", p("forall a. exists x. a = a*x*a & a*x = x*a"), "every H-class is a group", completely_regular),
        e("clifford", "semilattices of groups", p("forall a b. exists x y. a = a*x*a & a*b = b*y*a"), "completely regular with central idempotents", clifford),
        e("cs", "completely simple semigroups", p("forall a b. exists x y. a = a*x*a & a = a*b*a*y"), "one J-class, all idempotents primitive", completely_simple),
        e("ig", "inverse in a subgroup", p("forall a. exists x y. x in V(a) & x H y & y in E"), "each element has an inverse in a group H-class", inverse_in_subgroup),
        e("crypto", "cryptogroups", p("forall a b. exists x. a = a*x*a & a*x = x*a & a*b H a*x*b & b*a H b*x*a"), "completely regular and H is a congruence", cryptogroup),
        e("rightid", "semigroups with a right identity", p("exists x. forall a. a*x = a"), "table scan for a right identity", right_identity),
        e("monoid", "monoids", p("exists x. forall a. a*x = a & x*a = a"), "table scan for an identity", monoid),
        e("simple", "simple semigroups", p("forall a b. exists x y. a = x*b*y"), "one J-class", simple),
        e("rightsimple", "right simple semigroups", p("forall a b. exists x. a = b*x"), "one R-class", right_simple),
        e("leftsimple", "left simple semigroups", p("forall a b. exists x. a = x*b"), "one L-class", left_simple),
        e("maxj", "maximum J-class with non-null Rees quotient", p("exists y. forall a. exists x z. a = x*y*z"), "maximum J-class J with S/(S-J) not null", max_j),
        e(
            "bisimple",
            "bisimple semigroups",
            p("forall a b. exists t u v x y. a = t*u & t = a*v & t = x*b & b = y*t | a = x*b & b = y*a | a = b*x & b = a*y"),
            "one D-class",
            bisimple,
        ),
        e("rightgroup", "right groups", p("forall a b. exists x y. a*x = b & y = y^2"), "right simple with an idempotent", right_group),
        e("id", "semigroups with an idempotent", p("exists x. x = x^2"), "E(S) nonempty", has_idempotent),
        e("inverse", "inverse semigroups", inverse_basis(), "regular with commuting idempotents", inverse),
        e("orthodox", "orthodox semigroups", orthodox_basis(), "regular with E closed under products", orthodox),
        e("esolid", "E-solid semigroups", esolid_basis(), "regular with completely regular core; solidity checked alongside", esolid),
        e(WEAKENED_CLASS, "length-two weakening of the orthodox products", esolid2_basis(), "E-solid test against a basis that is too weak", esolid),
        e("reg34", "regular semigroups (square-inverse basis)", p(REG34), "every R-class holds an idempotent", is_regular),
        e("inv35", "inverse semigroups (square-inverse basis)", reg34_with("a*u*a*b*v*b = b*v*b*a*u*a"), "regular with commuting idempotents", inverse),
        e("orth36", "orthodox semigroups (square-inverse basis)", reg34_with("a*u*a*b*v*b in E"), "regular with E closed under products", orthodox),
        e("es37", "E-solid semigroups (square-inverse basis)", reg34_with("a*u*a*b*v*b in G"), "regular with completely regular core", esolid),
        e("nr", "regular, each element fixed on both sides by one element", p("forall a. exists x y. a = a*x*a & a = y*a & a = a*y"), "regular and each a has an idempotent e with ea = a = ae", nr),
    ]
}

pub fn catalogue() -> &'static [ClassEntry] {
    static CATALOGUE: OnceLock<Vec<ClassEntry>> = OnceLock::new();
    CATALOGUE.get_or_init(build_catalogue)
}

pub fn entry(id: &str) -> Result<&'static ClassEntry, ClassError> {
    catalogue().iter().find(|e| e.id == id).ok_or_else(|| ClassError::UnknownClass(id.to_string()))
}

pub fn oracle_check(id: &str, s: &FiniteSemigroup) -> Result<bool, ClassError> {
    Ok(entry(id)?.oracle(s))
}

/// Membership used by the closure suites. It equals the oracle except for
/// `maxj`, where it is the bare property "has a maximum J-class".
pub fn named_class_check(id: &str, s: &FiniteSemigroup) -> Result<bool, ClassError> {
    if id == "maxj" {
        return Ok(maximum_j_class(s, &green_data(s)).is_some());
    }
    oracle_check(id, s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Discrepancy {
    Disagreement { member: String, oracle: bool, basis: bool },
    Budget { member: String, message: String },
}

impl Discrepancy {
    pub fn member(&self) -> &str {
        match self {
            Discrepancy::Disagreement { member, .. } | Discrepancy::Budget { member, .. } => member,
        }
    }
}

/// Oracle against basis on every member, in corpus order.
pub fn cross_validate(id: &str, corpus: &[CorpusMember], budget: u64) -> Result<Vec<Discrepancy>, ClassError> {
    let entry = entry(id)?;
    let results: Vec<Option<Discrepancy>> = corpus
        .par_iter()
        .map(|m| {
            let oracle = entry.oracle(&m.semigroup);
            match satisfies(&m.semigroup, &entry.basis, budget) {
                Ok(basis) if basis == oracle => None,
                Ok(basis) => Some(Discrepancy::Disagreement { member: m.name.clone(), oracle, basis }),
                Err(e @ EvalError::BudgetExceeded { .. }) | Err(e @ EvalError::InvalidAssignment(_)) => {
                    Some(Discrepancy::Budget { member: m.name.clone(), message: e.to_string() })
                }
            }
        })
        .collect();
    Ok(results.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NrReport {
    pub t3_satisfies: bool,
    pub u_satisfies: bool,
    pub u_regular: bool,
    pub u_is_subsemigroup: bool,
    /// `1↦2↦3↦3` has no `y` in `U` with `a = ay = ya`.
    pub named_element_fails: bool,
    /// Every element of `U` without such a `y`, as image lists.
    pub failing_elements: Vec<String>,
}

impl NrReport {
    pub fn reproduces(&self) -> bool {
        self.t3_satisfies && !self.u_satisfies && self.u_regular && self.u_is_subsemigroup && self.named_element_fails
    }
}

/// Builds `T3` and its non-permutations `U`, and checks that the class is
/// not closed under regular subsemigroups.
pub fn nr_counterexample_check(budget: u64) -> Result<NrReport, EvalError> {
    let t3 = crate::family::make_family("T:3").expect("valid family");
    let u = crate::family::make_family("U3").expect("valid family");
    let basis = &entry("nr").expect("nr is catalogued").basis;
    let t3_satisfies = satisfies(&t3, basis, budget)?;
    let u_satisfies = satisfies(&u, basis, budget)?;
    let u_regular = is_regular(&u, &green_data(&u));
    let labels: Vec<String> = u.elements().map(|a| u.label(a)).collect();
    let members = ElementSubset::from_indices(
        t3.order(),
        labels.iter().map(|l| t3.element_by_label(l).expect("U labels are T3 labels")),
    )
    .expect("indices in range");
    let closed = members.iter().all(|a| members.iter().all(|b| members.contains(t3.mul(a, b))));
    let u_is_subsemigroup = closed
        && u.elements().all(|a| {
            u.elements().all(|b| {
                let (ta, tb) = (t3.element_by_label(&labels[a]).unwrap(), t3.element_by_label(&labels[b]).unwrap());
                t3.label(t3.mul(ta, tb)) == labels[u.mul(a, b)]
            })
        });
    let fixed_both_sides = |a| u.elements().any(|y| u.mul(a, y) == a && u.mul(y, a) == a);
    let failing_elements: Vec<String> = u.elements().filter(|&a| !fixed_both_sides(a)).map(|a| u.label(a)).collect();
    let named = u.element_by_label("233").expect("233 is not a permutation");
    Ok(NrReport {
        t3_satisfies,
        u_satisfies,
        u_regular,
        u_is_subsemigroup,
        named_element_fails: !fixed_both_sides(named),
        failing_elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{make_family, ESOLID_COUNTEREXAMPLE};

    fn fam(d: &str) -> FiniteSemigroup {
        make_family(d).unwrap()
    }

    #[test]
    fn catalogue_shape() {
        let cat = catalogue();
        assert_eq!(cat.len(), 25);
        let ids: Vec<&str> = cat.iter().map(|e| e.id).collect();
        assert_eq!(ids, CLASS_IDS);
        let inv = &entry("inverse").unwrap().basis;
        assert_eq!(inv.matrix[0].len(), 2 + 16);
        let es = &entry("esolid").unwrap().basis;
        assert_eq!(es.atoms().filter(|a| matches!(a, Atom::InG(w) if w.len() == 6)).count(), 64);
        assert!(matches!(oracle_check("nope", &fam("Zn:2")), Err(ClassError::UnknownClass(_))));
    }

    #[test]
    fn oracle_examples() {
        assert!(oracle_check("inverse", &fam("brandt:2")).unwrap());
        assert!(!oracle_check("esolid", &fam(ESOLID_COUNTEREXAMPLE)).unwrap());
        assert!(oracle_check("regular", &fam(ESOLID_COUNTEREXAMPLE)).unwrap());
        let n = fam("null:2");
        assert!(!oracle_check("maxj", &n.direct_product(&n)).unwrap());
        assert!(oracle_check("maxj", &fam("brandt:2")).unwrap());
        assert!(oracle_check("rightgroup", &fam("rz:2")).unwrap());
        assert!(!oracle_check("rightgroup", &fam("lz:2")).unwrap());
        assert!(named_class_check("maxj", &n).unwrap());
        assert!(!named_class_check("maxj", &n.direct_product(&n)).unwrap());
    }

    #[test]
    fn weakened_basis_with_the_documented_inverse_choice() {
        let s = fam(ESOLID_COUNTEREXAMPLE);
        let at = |i: usize, j: usize| s.element_by_label(&format!("({i},{j})")).unwrap();
        let pairs = [
            ((1, 1), (2, 2)),
            ((2, 2), (1, 1)),
            ((1, 2), (1, 2)),
            ((2, 1), (2, 1)),
            ((3, 3), (4, 4)),
            ((4, 4), (3, 3)),
            ((3, 4), (3, 4)),
            ((4, 3), (4, 3)),
            ((1, 3), (4, 2)),
            ((4, 2), (1, 3)),
            ((1, 4), (3, 2)),
            ((3, 2), (1, 4)),
            ((2, 3), (4, 1)),
            ((4, 1), (2, 3)),
            ((2, 4), (3, 1)),
            ((3, 1), (2, 4)),
        ];
        let mut choice = vec![0; s.order()];
        for ((i, j), (k, l)) in pairs {
            choice[at(i, j)] = at(k, l);
        }
        for a in s.elements() {
            assert!(inverses_of(&s, a).contains(choice[a]), "{}", s.label(a));
        }
        for a in s.elements() {
            for b in s.elements() {
                let (x, y) = (choice[a], choice[b]);
                let f = [s.mul(a, x), s.mul(x, a), s.mul(b, y), s.mul(y, b)];
                for g1 in f {
                    for g2 in f {
                        assert!(s.is_idempotent(s.mul(g1, g2)));
                    }
                }
            }
        }
        // (2,2) L ... chain witnessing non-solidity: (2,2), (3,2), (3,4) idempotent, (2,4) not
        for (i, j) in [(2, 2), (3, 2), (3, 4)] {
            assert!(s.is_idempotent(at(i, j)));
        }
        assert!(!s.is_idempotent(at(2, 4)));
        assert!(satisfies(&s, &esolid2_basis(), u64::MAX).unwrap());
    }

    #[test]
    fn nr_counterexample() {
        let r = nr_counterexample_check(crate::eval::DEFAULT_BUDGET).unwrap();
        assert!(r.reproduces(), "{r:?}");
        assert!(r.failing_elements.contains(&"233".to_string()));
    }

    #[test]
    fn f_products_are_ordered() {
        let two = f_products(2);
        assert_eq!(two.len(), 16);
        assert_eq!(two[0].to_string(), "a*x*a*x");
        assert_eq!(two[15].to_string(), "y*b*y*b");
        assert_eq!(f_products(3).len(), 64);
    }
}
