//! The `semieq` command line. Every subcommand builds a [`Report`], printed as
//! text or JSON; the exit code is 0 for a true verdict or no discrepancies, 1
//! for a false verdict or discrepancies, and 2 for usage and input errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::classes::{self, catalogue, cross_validate, WEAKENED_CLASS};
use crate::closure::{
    basis_preserved_under_H, basis_preserved_under_P, closed_under_H, closed_under_P, DEFAULT_CONGRUENCE_CAP,
};
use crate::corpus::{builtin_corpus, load_manifest, resolve, Corpus, CorpusMember};
use crate::eqdsl::{parse, EquationSystem};
use crate::eval::{evaluate_with, satisfies, EvalConfig, DEFAULT_BUDGET, DEFAULT_WITNESS_SAMPLES};
use crate::green::{eggbox, green_data};
use crate::natsolve::{classify_universal, decide_solvable_in_P, enumerate_witnesses, parse_additive, profile_of};
use crate::semigroup::FiniteSemigroup;
use crate::transforms::{localise, skolemize};

#[derive(Debug, Parser)]
#[command(name = "semieq", version, about = "Finite semigroups against quantified equation systems")]
pub struct Cli {
    /// Node cap for each evaluation.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Seed recorded in reports for reproducible runs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Corpus manifest replacing the built-in corpus.
    #[arg(long, global = true)]
    pub corpus: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClosureOp {
    #[value(name = "H")]
    H,
    #[value(name = "P")]
    P,
    #[value(name = "both")]
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a semigroup satisfies an equation system.
    Check {
        #[arg(long)]
        semigroup: String,
        /// Catalogue class id, file, or inline system.
        #[arg(long)]
        system: String,
    },
    /// Run every catalogue oracle and basis on one semigroup.
    Classify {
        #[arg(long)]
        semigroup: String,
    },
    /// Compare a class oracle with its basis across the corpus.
    Crossval {
        #[arg(long = "class")]
        class: String,
    },
    /// Check closure of a class under quotients and products.
    Closure {
        #[arg(long = "class")]
        class: String,
        #[arg(long, value_enum, default_value_t = ClosureOp::Both)]
        op: ClosureOp,
        /// Largest corpus member order taking part.
        #[arg(long, default_value_t = 5)]
        max_order: usize,
    },
    /// Replace existential variables by Skolem functions.
    Skolemize {
        #[arg(long)]
        system: String,
    },
    /// Relativise a system to the local subsemigroups.
    Localize {
        #[arg(long)]
        system: String,
    },
    /// Decide solvability of an equation in the positive integers.
    Psolve {
        #[arg(long)]
        eq: String,
        /// Parameter values for a witness search.
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<u64>>,
        /// Largest number of witnesses listed.
        #[arg(long, default_value_t = 16)]
        limit: usize,
    },
    /// Decide whether a parameterless equation is solvable in every semigroup.
    Universal {
        #[arg(long)]
        eq: String,
    },
    /// Print Green's relations as an eggbox diagram.
    Green {
        #[arg(long)]
        semigroup: String,
    },
}

/// The structured result of one subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub verdict: Option<bool>,
    pub rationale: String,
    pub witnesses: Vec<Value>,
    pub discrepancies: Vec<Value>,
    pub elapsed_ms: u64,
    /// Human-readable body for text output.
    #[serde(skip)]
    pub text: String,
}

impl Report {
    fn new(command: &str, inputs: Value) -> Report {
        Report {
            command: command.to_string(),
            inputs,
            verdict: None,
            rationale: String::new(),
            witnesses: Vec::new(),
            discrepancies: Vec::new(),
            elapsed_ms: 0,
            text: String::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Some(false) => 1,
            _ if !self.discrepancies.is_empty() => 1,
            _ => 0,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = self.text.clone();
        if let Some(v) = self.verdict {
            out.push_str(&format!("verdict: {v}\n"));
        }
        if !self.rationale.is_empty() {
            out.push_str(&format!("rationale: {}\n", self.rationale));
        }
        for d in &self.discrepancies {
            out.push_str(&format!("discrepancy: {d}\n"));
        }
        out
    }
}

type CliResult<T> = Result<T, String>;

fn load_semigroup(spec: &str) -> CliResult<FiniteSemigroup> {
    resolve(spec).map(|(s, _)| s).map_err(|e| e.to_string())
}

/// A catalogue id, a file holding a system, or the system text itself.
fn load_system(spec: &str) -> CliResult<EquationSystem> {
    if let Ok(entry) = classes::entry(spec) {
        return Ok(entry.basis.clone());
    }
    let path = Path::new(spec);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {spec}: {e}"))?
    } else {
        spec.to_string()
    };
    parse(&text).map_err(|e| e.to_string())
}

fn load_corpus(cli: &Cli) -> CliResult<Corpus> {
    match &cli.corpus {
        Some(path) => load_manifest(path).map_err(|e| e.to_string()),
        None => Ok(builtin_corpus()),
    }
}

fn to_values<T: Serialize>(items: &[T]) -> Vec<Value> {
    items.iter().map(|i| serde_json::to_value(i).expect("serialisable")).collect()
}

fn execute(cli: &Cli) -> CliResult<Report> {
    let budget = cli.budget;
    match &cli.command {
        Command::Check { semigroup, system } => {
            let s = load_semigroup(semigroup)?;
            let sys = load_system(system)?;
            let config = EvalConfig { budget, witness_samples: DEFAULT_WITNESS_SAMPLES };
            let eval = evaluate_with(&s, &sys, &config).map_err(|e| e.to_string())?;
            let mut r = Report::new("check", json!({ "semigroup": semigroup, "system": sys.to_string() }));
            r.verdict = Some(eval.verdict);
            let (kind, trace) =
                if eval.verdict { ("witness", &eval.witness_trace) } else { ("refutation", &eval.failure_trace) };
            r.rationale = format!("{} counted nodes", eval.nodes);
            for a in trace {
                r.witnesses.push(json!({ "kind": kind, "assignment": a.render(&s) }));
                r.text.push_str(&format!("{kind}: {}\n", a.render(&s)));
            }
            Ok(r)
        }
        Command::Classify { semigroup } => {
            let s = load_semigroup(semigroup)?;
            let g = green_data(&s);
            let mut r = Report::new("classify", json!({ "semigroup": semigroup }));
            let mut rows = Vec::new();
            r.text.push_str(&format!("{:<12} {:<7} {:<7}\n", "class", "oracle", "basis"));
            for entry in catalogue() {
                let oracle = entry.oracle_with(&s, &g);
                let basis = satisfies(&s, &entry.basis, budget).map_err(|e| e.to_string());
                let shown = match &basis {
                    Ok(b) => b.to_string(),
                    Err(_) => "budget".to_string(),
                };
                r.text.push_str(&format!("{:<12} {:<7} {:<7}\n", entry.id, oracle, shown));
                rows.push(json!({ "class": entry.id, "oracle": oracle, "basis": basis.clone().ok() }));
                match basis {
                    Ok(b) if b == oracle => {}
                    Ok(b) => r.discrepancies.push(json!({
                        "class": entry.id, "oracle": oracle, "basis": b, "expected": entry.id == WEAKENED_CLASS
                    })),
                    Err(message) => {
                        r.discrepancies.push(json!({ "class": entry.id, "oracle": oracle, "error": message }))
                    }
                }
            }
            r.witnesses = rows;
            let unexpected = r.discrepancies.iter().filter(|d| d["expected"] != json!(true)).count();
            r.verdict = Some(unexpected == 0);
            r.rationale = format!(
                "{} disagreements, {} of them outside the weakened class {WEAKENED_CLASS}",
                r.discrepancies.len(),
                unexpected
            );
            Ok(r)
        }
        Command::Crossval { class } => {
            let corpus = load_corpus(cli)?;
            let found = cross_validate(class, &corpus.members, budget).map_err(|e| e.to_string())?;
            let mut r = Report::new("crossval", json!({ "class": class, "corpus_size": corpus.len() }));
            r.discrepancies = to_values(&found);
            r.verdict = Some(found.is_empty());
            r.rationale = format!("{} members checked, {} discrepancies", corpus.len(), found.len());
            Ok(r)
        }
        Command::Closure { class, op, max_order } => {
            let corpus = load_corpus(cli)?;
            let members: Vec<CorpusMember> = corpus.up_to_order(*max_order);
            let mut r = Report::new(
                "closure",
                json!({ "class": class, "op": format!("{op:?}"), "max_order": max_order, "members": members.len() }),
            );
            let small: Vec<CorpusMember> =
                members.iter().filter(|m| m.semigroup.order() <= DEFAULT_CONGRUENCE_CAP).cloned().collect();
            let tag = |suite: &str, v: Vec<Value>| -> Vec<Value> {
                v.into_iter()
                    .map(|mut d| {
                        d["suite"] = json!(suite);
                        d
                    })
                    .collect()
            };
            if matches!(op, ClosureOp::H | ClosureOp::Both) {
                let v = closed_under_H(class, &small, DEFAULT_CONGRUENCE_CAP).map_err(|e| e.to_string())?;
                r.discrepancies.extend(tag("class_H", to_values(&v)));
                let v = basis_preserved_under_H(class, &small, DEFAULT_CONGRUENCE_CAP, budget)
                    .map_err(|e| e.to_string())?;
                r.discrepancies.extend(tag("basis_H", to_values(&v)));
            }
            if matches!(op, ClosureOp::P | ClosureOp::Both) {
                let v = closed_under_P(class, &members).map_err(|e| e.to_string())?;
                r.discrepancies.extend(tag("class_P", to_values(&v)));
                let v = basis_preserved_under_P(class, &members, budget).map_err(|e| e.to_string())?;
                r.discrepancies.extend(tag("basis_P", to_values(&v)));
            }
            r.verdict = Some(r.discrepancies.is_empty());
            r.rationale = format!("{} members of order at most {max_order}", members.len());
            Ok(r)
        }
        Command::Skolemize { system } => {
            let sys = load_system(system)?;
            let ids = skolemize(&sys).map_err(|e| e.to_string())?;
            let mut r = Report::new("skolemize", json!({ "system": sys.to_string() }));
            r.witnesses.push(json!({ "identities": ids.to_string(), "signature": ids.signature }));
            r.text = format!("{ids}\n");
            Ok(r)
        }
        Command::Localize { system } => {
            let sys = load_system(system)?;
            let local = localise(&sys);
            let mut r = Report::new("localize", json!({ "system": sys.to_string() }));
            r.witnesses.push(json!({ "localised": local.to_string() }));
            r.text = format!("{local}\n");
            Ok(r)
        }
        Command::Psolve { eq, params, limit } => {
            let equation = parse_additive(eq).map_err(|e| e.to_string())?;
            let profile = profile_of(&equation).map_err(|e| e.to_string())?;
            let decision = decide_solvable_in_P(&profile).map_err(|e| e.to_string())?;
            let mut r = Report::new("psolve", json!({ "eq": equation.to_string(), "params": params }));
            r.verdict = Some(decision.solvable);
            r.rationale = decision.rationale.to_string();
            r.text.push_str(&format!(
                "m = {:?}, n = {:?}, d = {}, d' = {}\nS(m): {}\nS(n): {}\n",
                profile.m, profile.n, profile.d, profile.dprime, decision.structure_m, decision.structure_n
            ));
            if let Some(values) = params {
                let witnesses = enumerate_witnesses(&profile, values, *limit).map_err(|e| e.to_string())?;
                if decision.solvable {
                    assert!(!witnesses.is_empty(), "a solvable equation has a witness for every parameter choice");
                }
                for w in &witnesses {
                    let named: Vec<String> =
                        profile.vars.iter().zip(&w.values).map(|(x, v)| format!("{x}={v}")).collect();
                    r.text.push_str(&format!("witness: {} (common value {})\n", named.join(" "), w.common_value));
                }
                r.witnesses = to_values(&witnesses);
            }
            Ok(r)
        }
        Command::Universal { eq } => {
            let equation = parse_additive(eq).map_err(|e| e.to_string())?;
            let u = classify_universal(&equation).map_err(|e| e.to_string())?;
            let mut r = Report::new("universal", json!({ "eq": equation.to_string() }));
            r.verdict = Some(u.universal);
            r.rationale = serde_json::to_value(u.condition).expect("serialisable").as_str().unwrap_or("").to_string();
            Ok(r)
        }
        Command::Green { semigroup } => {
            let s = load_semigroup(semigroup)?;
            let g = green_data(&s);
            let mut r = Report::new("green", json!({ "semigroup": semigroup }));
            r.text = eggbox(&s, &g);
            r.witnesses.push(json!({
                "r_classes": g.r_classes(), "l_classes": g.l_classes(), "h_classes": g.h_classes(),
                "d_classes": g.d_classes(), "j_classes": g.j_classes(), "idempotents": g.idempotents.to_vec()
            }));
            Ok(r)
        }
    }
}

/// Runs the command line, writing the report to standard output, and returns
/// the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = String::new();
    let code = run_to_string(args, &mut out);
    print!("{out}");
    code
}

/// Like [`run`] but collects standard output into `out`; errors go to
/// standard error.
pub fn run_to_string<I, T>(args: I, out: &mut String) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if e.use_stderr() {
                eprint!("{e}");
            } else {
                out.push_str(&e.to_string());
            }
            return code;
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok(mut report) => {
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            match cli.format {
                Format::Json => {
                    out.push_str(&serde_json::to_string_pretty(&report).expect("serialisable"));
                    out.push('\n');
                }
                Format::Text => out.push_str(&report.render_text()),
            }
            report.exit_code()
        }
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}
