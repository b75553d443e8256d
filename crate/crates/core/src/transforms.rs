//! Skolemisation of equation systems into identities, and the localisation
//! transform that relativises a system to the local subsemigroups `eSe`.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::eqdsl::{desugar, Atom, Block, EquationSystem, Quantifier, Symbol, Word};
use crate::eval::{satisfies, EvalError};
use crate::green::{are_isomorphic, green_data, local_subsemigroup};
use crate::semigroup::{Element, FiniteSemigroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    /// Green-relation and subgroup atoms have no equational Skolem form.
    #[error("atom `{0}` cannot be skolemised")]
    UnsupportedAtom(String),
    /// Skolemisation needs a single conjunction.
    #[error("the matrix is a disjunction; skolemisation needs a single conjunction")]
    DisjunctiveMatrix,
    /// A requested Skolem name is already used or repeated.
    #[error("skolem name `{0}` clashes with a bound symbol or another skolem name")]
    NameClash(String),
    #[error("expected {expected} skolem names, got {given}")]
    NameCount { expected: usize, given: usize },
    #[error("skolem name `{0}` is not an identifier")]
    BadName(String),
    /// Localisation equivalence only applies to regular semigroups.
    #[error("the semigroup is not regular")]
    NotRegular,
    #[error(transparent)]
    Eval(#[from] EvalError),
    /// The interpretation search ran past its budget.
    #[error("interpretation search exceeded its budget of {0} steps")]
    SearchBudgetExceeded(u64),
    /// The two sides of an equivalence that must agree did not.
    #[error("verification disagreement: {0}")]
    Disagreement(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkolemSymbol {
    pub name: String,
    pub arity: usize,
    /// The existential variable this symbol replaces.
    pub replaces: Symbol,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkolemSignature(pub Vec<SkolemSymbol>);

impl fmt::Display for SkolemSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| format!("{}/{}", s.name, s.arity)).collect();
        write!(f, "skolem: {}", parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Factor {
    Var(Symbol),
    Skolem { symbol: String, args: Vec<Symbol> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Term(pub Vec<Factor>);

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|factor| match factor {
                Factor::Var(v) => v.clone(),
                Factor::Skolem { symbol, args } if args.is_empty() => symbol.clone(),
                Factor::Skolem { symbol, args } => format!("{symbol}({})", args.join(",")),
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// A universally quantified conjunction of identities between terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentitySystem {
    pub universals: Vec<Symbol>,
    pub identities: Vec<(Term, Term)>,
    pub signature: SkolemSignature,
}

impl fmt::Display for IdentitySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.signature)?;
        let body: Vec<String> = self.identities.iter().map(|(l, r)| format!("{l} = {r}")).collect();
        if self.universals.is_empty() {
            write!(f, "{}", body.join(" & "))
        } else {
            write!(f, "forall {}. {}", self.universals.join(" "), body.join(" & "))
        }
    }
}

const DEFAULT_NAMES: [&str; 6] = ["f", "g", "h", "k", "m", "n"];

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !["forall", "exists", "in", "R", "L", "H", "D", "J", "E", "G", "V"].contains(&name)
}

fn existentials(sys: &EquationSystem) -> Vec<&Symbol> {
    sys.prefix.iter().filter(|b| b.quantifier == Quantifier::Exists).flat_map(|b| &b.symbols).collect()
}

/// Skolemises with generated names `f, g, h, ...` avoiding the bound symbols.
pub fn skolemize(sys: &EquationSystem) -> Result<IdentitySystem, TransformError> {
    let used: HashSet<&str> = sys.symbols().into_iter().map(String::as_str).collect();
    let count = existentials(sys).len();
    let mut names = Vec::new();
    let mut round = 0;
    while names.len() < count {
        for base in DEFAULT_NAMES {
            let name = if round == 0 { base.to_string() } else { format!("{base}{round}") };
            if !used.contains(name.as_str()) && names.len() < count {
                names.push(name);
            }
        }
        round += 1;
    }
    skolemize_with_names(sys, &names)
}

/// Skolemises using the given names, one per existential variable in prefix order.
pub fn skolemize_with_names<S: AsRef<str>>(
    sys: &EquationSystem,
    names: &[S],
) -> Result<IdentitySystem, TransformError> {
    let sys = desugar(sys);
    if sys.is_disjunctive() {
        return Err(TransformError::DisjunctiveMatrix);
    }
    if let Some(atom) = sys.atoms().find(|a| a.is_semantic()) {
        let single = EquationSystem { prefix: sys.prefix.clone(), matrix: vec![vec![atom.clone()]] };
        let text = single.to_string();
        let body = text.rsplit(". ").next().unwrap_or(&text).to_string();
        return Err(TransformError::UnsupportedAtom(body));
    }
    let ex = existentials(&sys);
    if names.len() != ex.len() {
        return Err(TransformError::NameCount { expected: ex.len(), given: names.len() });
    }
    let bound: HashSet<&str> = sys.symbols().into_iter().map(String::as_str).collect();
    let mut seen = HashSet::new();
    for n in names {
        let n = n.as_ref();
        if !is_identifier(n) {
            return Err(TransformError::BadName(n.to_string()));
        }
        if bound.contains(n) || !seen.insert(n) {
            return Err(TransformError::NameClash(n.to_string()));
        }
    }

    let mut universals: Vec<Symbol> = Vec::new();
    let mut replacement: Vec<(Symbol, Factor)> = Vec::new();
    let mut signature = Vec::new();
    let mut next = names.iter();
    for block in &sys.prefix {
        for v in &block.symbols {
            match block.quantifier {
                Quantifier::Forall => universals.push(v.clone()),
                Quantifier::Exists => {
                    let name = next.next().expect("name count checked").as_ref().to_string();
                    signature.push(SkolemSymbol { name: name.clone(), arity: universals.len(), replaces: v.clone() });
                    replacement.push((v.clone(), Factor::Skolem { symbol: name, args: universals.clone() }));
                }
            }
        }
    }
    let term = |w: &Word| {
        Term(
            w.0.iter()
                .map(|s| {
                    replacement
                        .iter()
                        .find(|(v, _)| v == s)
                        .map(|(_, f)| f.clone())
                        .unwrap_or_else(|| Factor::Var(s.clone()))
                })
                .collect(),
        )
    };
    let identities = sys.matrix[0]
        .iter()
        .map(|atom| match atom {
            Atom::WordEq(u, v) => (term(u), term(v)),
            _ => unreachable!("desugared and checked above"),
        })
        .collect();
    Ok(IdentitySystem { universals, identities, signature: SkolemSignature(signature) })
}

/// An interpretation of each Skolem symbol as a table indexed by argument tuples
/// in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interpretation {
    pub tables: Vec<(String, Vec<Element>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkolemCheck {
    pub found: bool,
    pub interpretation: Option<Interpretation>,
    pub steps: u64,
}

#[derive(Clone, Copy)]
enum Item {
    Const(Element),
    Cell(usize),
}

struct Constraint {
    lhs: Vec<Item>,
    rhs: Vec<Item>,
    cells: Vec<usize>,
}

fn fold(s: &FiniteSemigroup, items: &[Item], values: &[Option<Element>]) -> Element {
    let get = |it: &Item| match *it {
        Item::Const(v) => v,
        Item::Cell(c) => values[c].expect("cell assigned"),
    };
    let mut acc = get(&items[0]);
    for it in &items[1..] {
        acc = s.mul(acc, get(it));
    }
    acc
}

fn tuples(n: usize, len: usize) -> Vec<Vec<Element>> {
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut code| {
            let mut t = vec![0; len];
            for slot in t.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            t
        })
        .collect()
}

fn tuple_index(n: usize, t: &[Element]) -> usize {
    t.iter().fold(0, |acc, &v| acc * n + v)
}

/// Searches for interpretations of the Skolem symbols over `s` that make every
/// identity hold, and checks that one exists exactly when `s ⊨ sys`.
pub fn verify_skolem(
    s: &FiniteSemigroup,
    sys: &EquationSystem,
    identities: &IdentitySystem,
    budget: u64,
) -> Result<SkolemCheck, TransformError> {
    let n = s.order();
    let symbols = &identities.signature.0;
    let mut offset = Vec::with_capacity(symbols.len());
    let mut total_cells = 0usize;
    for sym in symbols {
        offset.push(total_cells);
        total_cells = total_cells
            .checked_add(n.checked_pow(sym.arity as u32).ok_or(TransformError::SearchBudgetExceeded(budget))?)
            .ok_or(TransformError::SearchBudgetExceeded(budget))?;
    }
    let universals = &identities.universals;
    let position = |v: &Symbol| universals.iter().position(|u| u == v).expect("universal variable");

    // cells numbered by first appearance while scanning constraints in order
    let mut cell_order = vec![usize::MAX; total_cells];
    let mut next_cell = 0;
    let mut constraints = Vec::new();
    for assignment in tuples(n, universals.len()) {
        for (lhs, rhs) in &identities.identities {
            let mut cells = Vec::new();
            let mut compile = |t: &Term| -> Vec<Item> {
                t.0.iter()
                    .map(|f| match f {
                        Factor::Var(v) => Item::Const(assignment[position(v)]),
                        Factor::Skolem { symbol, args } => {
                            let k = symbols.iter().position(|s| &s.name == symbol).expect("declared symbol");
                            let t: Vec<Element> = args.iter().map(|a| assignment[position(a)]).collect();
                            let raw = offset[k] + tuple_index(n, &t);
                            if cell_order[raw] == usize::MAX {
                                cell_order[raw] = next_cell;
                                next_cell += 1;
                            }
                            cells.push(cell_order[raw]);
                            Item::Cell(cell_order[raw])
                        }
                    })
                    .collect()
            };
            let (l, r) = (compile(lhs), compile(rhs));
            cells.sort_unstable();
            cells.dedup();
            constraints.push(Constraint { lhs: l, rhs: r, cells });
        }
    }
    let cell_count = next_cell;
    // constraints checked when their last cell is assigned; cell-free ones up front
    let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); cell_count];
    let mut ground_ok = true;
    for (i, c) in constraints.iter().enumerate() {
        match c.cells.last() {
            Some(&last) => by_last[last].push(i),
            None => ground_ok &= fold(s, &c.lhs, &[]) == fold(s, &c.rhs, &[]),
        }
    }

    let mut values: Vec<Option<Element>> = vec![None; cell_count];
    let mut steps = 0u64;
    let found = ground_ok && {
        let mut conflicts: Vec<HashSet<usize>> = vec![HashSet::new(); cell_count];
        let mut next_value = vec![0usize; cell_count];
        let mut i = 0usize;
        loop {
            if i == cell_count {
                break true;
            }
            let forced = forced_value(s, &constraints, &by_last[i], i, &values).map(|(f, ci)| {
                conflicts[i].extend(constraints[ci].cells.iter().copied().filter(|&x| x != i));
                f
            });
            let mut placed = false;
            while next_value[i] < n {
                let v = next_value[i];
                next_value[i] += 1;
                if let Some(f) = forced {
                    if v != f {
                        continue;
                    }
                }
                steps += 1;
                if steps > budget {
                    return Err(TransformError::SearchBudgetExceeded(budget));
                }
                values[i] = Some(v);
                let mut ok = true;
                for &ci in &by_last[i] {
                    let c = &constraints[ci];
                    if fold(s, &c.lhs, &values) != fold(s, &c.rhs, &values) {
                        conflicts[i].extend(c.cells.iter().copied().filter(|&x| x != i));
                        ok = false;
                        break;
                    }
                }
                if ok {
                    placed = true;
                    break;
                }
                values[i] = None;
            }
            if placed {
                i += 1;
                if i < cell_count {
                    conflicts[i].clear();
                    next_value[i] = 0;
                }
                continue;
            }
            // every value of cell i failed: jump back to the latest culprit
            let Some(&h) = conflicts[i].iter().max() else {
                break false;
            };
            let carried: Vec<usize> = conflicts[i].iter().copied().filter(|&x| x != h).collect();
            conflicts[h].extend(carried);
            values[h..=i].fill(None);
            for j in h + 1..=i {
                next_value[j] = 0;
                conflicts[j].clear();
            }
            i = h;
        }
    };

    let expected = satisfies(s, sys, budget)?;
    if found != expected {
        return Err(TransformError::Disagreement(format!(
            "interpretation {} but the evaluator says {}",
            if found { "exists" } else { "does not exist" },
            expected
        )));
    }
    let interpretation = found.then(|| {
        let tables = symbols
            .iter()
            .enumerate()
            .map(|(k, sym)| {
                let size = n.pow(sym.arity as u32);
                let table = (0..size)
                    .map(|t| {
                        let c = cell_order[offset[k] + t];
                        if c == usize::MAX {
                            0
                        } else {
                            values[c].expect("all cells assigned")
                        }
                    })
                    .collect();
                (sym.name.clone(), table)
            })
            .collect();
        Interpretation { tables }
    });
    Ok(SkolemCheck { found, interpretation, steps })
}

/// A value for cell `i` forced by a constraint with `i` as one whole side and the
/// other side already determined.
fn forced_value(
    s: &FiniteSemigroup,
    constraints: &[Constraint],
    ready: &[usize],
    i: usize,
    values: &[Option<Element>],
) -> Option<(Element, usize)> {
    for &ci in ready {
        let c = &constraints[ci];
        for (lone, other) in [(&c.lhs, &c.rhs), (&c.rhs, &c.lhs)] {
            if let [Item::Cell(x)] = lone.as_slice() {
                if *x == i && other.iter().all(|it| !matches!(it, Item::Cell(y) if *y == i)) {
                    return Some((fold(s, other, values), ci));
                }
            }
        }
    }
    None
}

fn fresh(base: &str, used: &HashSet<&str>) -> String {
    if !used.contains(base) {
        return base.to_string();
    }
    (1..).map(|i| format!("{base}{i}")).find(|c| !used.contains(c.as_str())).expect("infinite supply")
}

/// Prefixes `forall A. exists X.`, adds `X in V(A)` to every disjunct and
/// replaces each symbol occurrence `t` by `A*X*t*A*X`.
pub fn localise(sys: &EquationSystem) -> EquationSystem {
    let used: HashSet<&str> = sys.symbols().into_iter().map(String::as_str).collect();
    let a = fresh("A", &used);
    let x = fresh("X", &used);
    let wrap =
        |w: &Word| Word(w.0.iter().flat_map(|t| [a.clone(), x.clone(), t.clone(), a.clone(), x.clone()]).collect());
    let mut prefix = vec![
        Block { quantifier: Quantifier::Forall, symbols: vec![a.clone()] },
        Block { quantifier: Quantifier::Exists, symbols: vec![x.clone()] },
    ];
    prefix.extend(sys.prefix.iter().cloned());
    let matrix = sys
        .matrix
        .iter()
        .map(|d| {
            let mut atoms = vec![Atom::InV { x: Word::symbol(&x), a: Word::symbol(&a) }];
            atoms.extend(d.iter().map(|atom| {
                let mut atom = atom.clone();
                for w in atom.words_mut() {
                    *w = wrap(w);
                }
                atom
            }));
            atoms
        })
        .collect();
    EquationSystem::new(prefix, matrix).expect("fresh binders keep the system well formed")
}

/// Both sides of the localisation equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocaliseCheck {
    pub localised: bool,
    pub all_local_subsemigroups: bool,
}

/// Checks `S ⊨ localise(σ)` against "every `eSe` satisfies `σ`" for regular `S`
/// and returns the common verdict.
pub fn verify_localise(s: &FiniteSemigroup, sys: &EquationSystem, budget: u64) -> Result<bool, TransformError> {
    let check = localise_sides(s, sys, budget)?;
    if check.localised != check.all_local_subsemigroups {
        return Err(TransformError::Disagreement(format!(
            "localised system gives {}, local subsemigroups give {}",
            check.localised, check.all_local_subsemigroups
        )));
    }
    Ok(check.localised)
}

pub fn localise_sides(s: &FiniteSemigroup, sys: &EquationSystem, budget: u64) -> Result<LocaliseCheck, TransformError> {
    let g = green_data(s);
    if !crate::classes::is_regular(s, &g) {
        return Err(TransformError::NotRegular);
    }
    let localised = satisfies(s, &localise(sys), budget)?;
    let mut all_local_subsemigroups = true;
    for e in g.idempotents.iter() {
        let local = local_subsemigroup(s, e).expect("e is idempotent");
        if !satisfies(&local.semigroup, sys, budget)? {
            all_local_subsemigroups = false;
            break;
        }
    }
    Ok(LocaliseCheck { localised, all_local_subsemigroups })
}

/// Outcome of comparing `eSe` with `fSf` over all D-related idempotent pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalIsomorphismReport {
    pub pairs_checked: usize,
    /// Pairs `(e, f)` whose local subsemigroups are not isomorphic.
    pub failures: Vec<(Element, Element)>,
}

/// For every pair of distinct D-related idempotents `e < f`, tests `eSe ≅ fSf`.
pub fn local_isomorphism_check(s: &FiniteSemigroup) -> LocalIsomorphismReport {
    let g = green_data(s);
    let idempotents = g.idempotents.to_vec();
    let mut report = LocalIsomorphismReport { pairs_checked: 0, failures: Vec::new() };
    for (i, &e) in idempotents.iter().enumerate() {
        for &f in &idempotents[i + 1..] {
            if !g.d_related(e, f) {
                continue;
            }
            report.pairs_checked += 1;
            let local_e = local_subsemigroup(s, e).expect("e is idempotent");
            let local_f = local_subsemigroup(s, f).expect("f is idempotent");
            if are_isomorphic(&local_e.semigroup, &local_f.semigroup).is_none() {
                report.failures.push((e, f));
            }
        }
    }
    report
}

/// Catalogue classes made of regular semigroups, for which localisation applies.
pub const REGULAR_CLASSES: [&str; 16] = [
    "group",
    "regular",
    "cr",
    "clifford",
    "cs",
    "ig",
    "crypto",
    "rightgroup",
    "inverse",
    "orthodox",
    "esolid",
    "reg34",
    "inv35",
    "orth36",
    "es37",
    "nr",
];
