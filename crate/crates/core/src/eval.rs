//! Deciding `S ⊨ σ` for a finite semigroup `S` and an equation system `σ` by
//! searching the quantifier game tree.
//!
//! The search is depth-first in prefix order and tries elements in index
//! order, so verdicts and traces are deterministic. Atoms are checked as soon
//! as all their symbols are bound; a disjunct whose atoms have all passed
//! decides the node at once, and a variable that no live disjunct still
//! mentions is only tried with the value 0.

use serde::Serialize;
use thiserror::Error;

use crate::eqdsl::{desugar, Atom, EquationSystem, GreenRel, Quantifier, Symbol};
use crate::green::{green_data, GreenData};
use crate::semigroup::{Element, FiniteSemigroup};

pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const DEFAULT_WITNESS_SAMPLES: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// The search needed more than `budget` counted nodes; `estimate` is the
    /// worst-case cost `|S|^k` for `k` bound symbols.
    #[error("evaluation budget of {budget} exceeded (worst case {estimate})")]
    BudgetExceeded { estimate: u128, budget: u64 },
    /// A fixed value names an unbound symbol or an element outside `S`.
    #[error("invalid fixed assignment: {0}")]
    InvalidAssignment(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalConfig {
    pub budget: u64,
    pub witness_samples: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { budget: DEFAULT_BUDGET, witness_samples: DEFAULT_WITNESS_SAMPLES }
    }
}

/// Values for some of the bound symbols, in prefix order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Assignment(pub Vec<(Symbol, Element)>);

impl Assignment {
    pub fn get(&self, symbol: &str) -> Option<Element> {
        self.0.iter().find(|(s, _)| s == symbol).map(|(_, v)| *v)
    }

    pub fn render(&self, s: &FiniteSemigroup) -> String {
        self.0.iter().map(|(sym, v)| format!("{sym}={}", s.label(*v))).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvalReport {
    pub verdict: bool,
    /// For a true verdict: complete plays in which every existential move is
    /// the first winning one and universal moves run in lexicographic order.
    pub witness_trace: Vec<Assignment>,
    /// For a false verdict: for each assignment of a leading existential block
    /// (or once, if the system starts with `forall`), the first assignment of
    /// the next universal block that admits no completion.
    pub failure_trace: Vec<Assignment>,
    /// Counted nodes of the decision search.
    pub nodes: u64,
    /// Set when trace construction ran out of budget and traces are partial.
    pub trace_truncated: bool,
}

enum CAtom {
    Eq(Vec<usize>, Vec<usize>),
    InG(Vec<usize>),
    Green(GreenRel, Vec<usize>, Vec<usize>),
}

struct Compiled {
    names: Vec<Symbol>,
    quant: Vec<Quantifier>,
    disjuncts: Vec<Vec<CAtom>>,
    /// `ready[k]`: atoms, as (disjunct, index), whose last symbol is variable `k`.
    ready: Vec<Vec<(usize, usize)>>,
    /// `occurs[d][k]`: variable `k` appears in disjunct `d`.
    occurs: Vec<Vec<bool>>,
    /// Level after which every atom of disjunct `d` has been checked.
    last: Vec<usize>,
    needs_green: bool,
}

fn compile(sys: &EquationSystem) -> Compiled {
    let sys = desugar(sys);
    let names: Vec<Symbol> = sys.symbols().into_iter().cloned().collect();
    let quant: Vec<Quantifier> = sys.prefix.iter().flat_map(|b| b.symbols.iter().map(move |_| b.quantifier)).collect();
    let index = |s: &Symbol| names.iter().position(|n| n == s).expect("bound symbol");
    let k = names.len();
    let mut ready = vec![Vec::new(); k];
    let mut occurs = vec![vec![false; k]; sys.matrix.len()];
    let mut last = vec![0; sys.matrix.len()];
    let mut needs_green = false;
    let mut disjuncts = Vec::new();
    for (d, disjunct) in sys.matrix.iter().enumerate() {
        let mut atoms = Vec::new();
        for (i, atom) in disjunct.iter().enumerate() {
            let ws: Vec<Vec<usize>> = atom.words().iter().map(|w| w.0.iter().map(index).collect()).collect();
            let top = ws.iter().flatten().copied().max().expect("words are nonempty");
            for &v in ws.iter().flatten() {
                occurs[d][v] = true;
            }
            ready[top].push((d, i));
            last[d] = last[d].max(top);
            let mut ws = ws.into_iter();
            let c = match atom {
                Atom::WordEq(..) => CAtom::Eq(ws.next().unwrap(), ws.next().unwrap()),
                Atom::InG(_) => {
                    needs_green = true;
                    CAtom::InG(ws.next().unwrap())
                }
                Atom::Green { rel, .. } => {
                    needs_green = true;
                    CAtom::Green(*rel, ws.next().unwrap(), ws.next().unwrap())
                }
                Atom::InV { .. } | Atom::InE(_) => unreachable!("removed by desugaring"),
            };
            atoms.push(c);
        }
        disjuncts.push(atoms);
    }
    Compiled { names, quant, disjuncts, ready, occurs, last, needs_green }
}

fn value(s: &FiniteSemigroup, word: &[usize], assignment: &[Element]) -> Element {
    let mut acc = assignment[word[0]];
    for &v in &word[1..] {
        acc = s.mul(acc, assignment[v]);
    }
    acc
}

fn holds(s: &FiniteSemigroup, green: Option<&GreenData>, atom: &CAtom, assignment: &[Element]) -> bool {
    match atom {
        CAtom::Eq(u, v) => value(s, u, assignment) == value(s, v, assignment),
        CAtom::InG(w) => green.expect("Green data computed").group_h[value(s, w, assignment)],
        CAtom::Green(rel, u, v) => {
            let g = green.expect("Green data computed");
            let (x, y) = (value(s, u, assignment), value(s, v, assignment));
            let ids = match rel {
                GreenRel::R => &g.r_class,
                GreenRel::L => &g.l_class,
                GreenRel::H => &g.h_class,
                GreenRel::D => &g.d_class,
                GreenRel::J => &g.j_class,
            };
            ids[x] == ids[y]
        }
    }
}

const ALIVE: usize = usize::MAX;

struct Search<'a> {
    s: &'a FiniteSemigroup,
    green: Option<&'a GreenData>,
    c: &'a Compiled,
    assignment: Vec<Element>,
    fixed: Vec<Option<Element>>,
    dead_at: Vec<usize>,
    nodes: u64,
    budget: u64,
}

struct OutOfBudget;

impl<'a> Search<'a> {
    fn new(s: &'a FiniteSemigroup, green: Option<&'a GreenData>, c: &'a Compiled, budget: u64) -> Self {
        Search {
            s,
            green,
            c,
            assignment: vec![0; c.names.len()],
            fixed: vec![None; c.names.len()],
            dead_at: vec![ALIVE; c.disjuncts.len()],
            nodes: 0,
            budget,
        }
    }

    fn count(&mut self) -> Result<(), OutOfBudget> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }

    fn any_alive(&self) -> bool {
        self.dead_at.contains(&ALIVE)
    }

    /// True when some live disjunct has had every atom checked before level `k`.
    fn decided(&self, k: usize) -> bool {
        (0..self.c.disjuncts.len()).any(|d| self.dead_at[d] == ALIVE && self.c.last[d] < k)
    }

    fn candidates(&self, k: usize) -> std::ops::Range<Element> {
        if let Some(v) = self.fixed[k] {
            return v..v + 1;
        }
        let relevant = (0..self.c.disjuncts.len()).any(|d| self.dead_at[d] == ALIVE && self.c.occurs[d][k]);
        if relevant {
            0..self.s.order()
        } else {
            0..1
        }
    }

    /// Assigns variable `k` and kills the disjuncts whose newly ready atoms fail.
    fn assign(&mut self, k: usize, v: Element) {
        self.assignment[k] = v;
        for &(d, i) in &self.c.ready[k] {
            if self.dead_at[d] == ALIVE && !holds(self.s, self.green, &self.c.disjuncts[d][i], &self.assignment) {
                self.dead_at[d] = k;
            }
        }
    }

    fn unassign(&mut self, k: usize) {
        for d in self.dead_at.iter_mut() {
            if *d == k {
                *d = ALIVE;
            }
        }
    }

    /// Value of the game from level `k`, all earlier variables being assigned.
    fn solve(&mut self, k: usize) -> Result<bool, OutOfBudget> {
        if self.decided(k) {
            self.count()?;
            return Ok(true);
        }
        let exists = self.c.quant[k] == Quantifier::Exists;
        for v in self.candidates(k) {
            self.assign(k, v);
            let won = if self.any_alive() {
                self.solve(k + 1)?
            } else {
                self.count()?;
                false
            };
            self.unassign(k);
            if won == exists {
                return Ok(won);
            }
        }
        Ok(!exists)
    }

    fn current(&self, upto: usize) -> Assignment {
        Assignment((0..upto).map(|k| (self.c.names[k].clone(), self.assignment[k])).collect())
    }

    /// Complete plays of a won game, appended to `out` until `limit` is reached.
    fn plays(&mut self, k: usize, out: &mut Vec<Assignment>, limit: usize) -> Result<(), OutOfBudget> {
        if out.len() >= limit {
            return Ok(());
        }
        if self.decided(k) {
            for j in k..self.c.names.len() {
                self.assignment[j] = self.fixed[j].unwrap_or(0);
            }
            out.push(self.current(self.c.names.len()));
            return Ok(());
        }
        if self.c.quant[k] == Quantifier::Exists {
            for v in self.candidates(k) {
                self.assign(k, v);
                let won = self.any_alive() && self.solve(k + 1)?;
                if won {
                    let r = self.plays(k + 1, out, limit);
                    self.unassign(k);
                    return r;
                }
                self.unassign(k);
            }
            unreachable!("plays is only called on won positions");
        }
        for v in self.candidates(k) {
            self.assign(k, v);
            let r = self.plays(k + 1, out, limit);
            self.unassign(k);
            r?;
            if out.len() >= limit {
                break;
            }
        }
        Ok(())
    }

    /// Value of the game with variables `0..upto` forced to `values`.
    fn solve_fixed(&mut self, values: &[Element]) -> Result<bool, OutOfBudget> {
        let saved = self.fixed.clone();
        for (k, &v) in values.iter().enumerate() {
            self.fixed[k] = Some(v);
        }
        let r = self.solve(0);
        self.fixed = saved;
        r
    }
}

fn tuples(n: usize, len: usize) -> impl Iterator<Item = Vec<Element>> {
    let total = (n as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    (0..total).map(move |mut code| {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = (code % n as u128) as usize;
            code /= n as u128;
        }
        t
    })
}

fn estimate(n: usize, k: usize) -> u128 {
    (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX)
}

/// Decides `s ⊨ sys` with the default configuration.
pub fn evaluate(s: &FiniteSemigroup, sys: &EquationSystem) -> Result<EvalReport, EvalError> {
    evaluate_with(s, sys, &EvalConfig::default())
}

/// Verdict only; skips trace construction.
pub fn satisfies(s: &FiniteSemigroup, sys: &EquationSystem, budget: u64) -> Result<bool, EvalError> {
    let c = compile(sys);
    let green = c.needs_green.then(|| green_data(s));
    let mut search = Search::new(s, green.as_ref(), &c, budget);
    search.solve(0).map_err(|_| EvalError::BudgetExceeded { estimate: estimate(s.order(), c.names.len()), budget })
}

/// Value of the game in which the listed symbols are forced to the given elements.
pub fn satisfies_with_fixed(
    s: &FiniteSemigroup,
    sys: &EquationSystem,
    fixed: &Assignment,
    budget: u64,
) -> Result<bool, EvalError> {
    let c = compile(sys);
    let green = c.needs_green.then(|| green_data(s));
    let mut search = Search::new(s, green.as_ref(), &c, budget);
    for (sym, v) in &fixed.0 {
        let k = c
            .names
            .iter()
            .position(|n| n == sym)
            .ok_or_else(|| EvalError::InvalidAssignment(format!("`{sym}` is not bound")))?;
        if *v >= s.order() {
            return Err(EvalError::InvalidAssignment(format!("{v} is not an element")));
        }
        search.fixed[k] = Some(*v);
    }
    search.solve(0).map_err(|_| EvalError::BudgetExceeded { estimate: estimate(s.order(), c.names.len()), budget })
}

pub fn evaluate_with(s: &FiniteSemigroup, sys: &EquationSystem, config: &EvalConfig) -> Result<EvalReport, EvalError> {
    let c = compile(sys);
    let green = c.needs_green.then(|| green_data(s));
    let budget = config.budget;
    let exceeded = || EvalError::BudgetExceeded { estimate: estimate(s.order(), c.names.len()), budget };
    let mut search = Search::new(s, green.as_ref(), &c, budget);
    let verdict = search.solve(0).map_err(|_| exceeded())?;
    let nodes = search.nodes;

    let mut tracer = Search::new(s, green.as_ref(), &c, budget);
    let mut witness_trace = Vec::new();
    let mut failure_trace = Vec::new();
    let mut trace_truncated = false;
    if verdict {
        trace_truncated = tracer.plays(0, &mut witness_trace, config.witness_samples).is_err();
    } else {
        let blocks = &sys.prefix;
        let (lead, universal) = match blocks[0].quantifier {
            Quantifier::Forall => (0, Some(blocks[0].symbols.len())),
            Quantifier::Exists => (blocks[0].symbols.len(), blocks.get(1).map(|b| b.symbols.len())),
        };
        if let Some(width) = universal {
            'outer: for head in tuples(s.order(), lead) {
                for tail in tuples(s.order(), width) {
                    let values: Vec<Element> = head.iter().chain(&tail).copied().collect();
                    match tracer.solve_fixed(&values) {
                        Ok(true) => continue,
                        Ok(false) => {
                            tracer.assignment[..values.len()].copy_from_slice(&values);
                            failure_trace.push(tracer.current(values.len()));
                            continue 'outer;
                        }
                        Err(_) => {
                            trace_truncated = true;
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    Ok(EvalReport { verdict, witness_trace, failure_trace, nodes, trace_truncated })
}

/// Truth of the matrix of `sys` under a total assignment of its symbols.
pub fn evaluate_matrix(s: &FiniteSemigroup, sys: &EquationSystem, assignment: &Assignment) -> Result<bool, EvalError> {
    let c = compile(sys);
    let green = c.needs_green.then(|| green_data(s));
    let mut values = vec![0; c.names.len()];
    for (k, name) in c.names.iter().enumerate() {
        let v = assignment.get(name).ok_or_else(|| EvalError::InvalidAssignment(format!("`{name}` has no value")))?;
        if v >= s.order() {
            return Err(EvalError::InvalidAssignment(format!("{v} is not an element")));
        }
        values[k] = v;
    }
    Ok(c.disjuncts.iter().any(|d| d.iter().all(|a| holds(s, green.as_ref(), a, &values))))
}
