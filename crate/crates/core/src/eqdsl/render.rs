use super::{Atom, EquationSystem};

fn render_atom(atom: &Atom) -> String {
    match atom {
        Atom::WordEq(u, v) => format!("{u} = {v}"),
        Atom::InV { x, a } => format!("{x} in V({a})"),
        Atom::InE(w) => format!("{w} in E"),
        Atom::InG(w) => format!("{w} in G"),
        Atom::Green { rel, u, v } => format!("{u} {} {v}", rel.letter()),
    }
}

/// Canonical single-line text; powers are written out as products.
pub fn render(sys: &EquationSystem) -> String {
    let prefix: Vec<String> =
        sys.prefix.iter().map(|b| format!("{} {}.", b.quantifier.keyword(), b.symbols.join(" "))).collect();
    let matrix: Vec<String> =
        sys.matrix.iter().map(|d| d.iter().map(render_atom).collect::<Vec<_>>().join(" & ")).collect();
    format!("{} {}", prefix.join(" "), matrix.join(" | "))
}

/// Rewrites `x in V(a)` and `w in E` as equations; other atoms are kept.
pub fn desugar(sys: &EquationSystem) -> EquationSystem {
    let matrix = sys
        .matrix
        .iter()
        .map(|disjunct| {
            disjunct
                .iter()
                .flat_map(|atom| match atom {
                    Atom::InV { x, a } => vec![
                        Atom::WordEq(a.clone(), a.concat(x).concat(a)),
                        Atom::WordEq(x.clone(), x.concat(a).concat(x)),
                    ],
                    Atom::InE(w) => vec![Atom::WordEq(w.clone(), w.concat(w))],
                    other => vec![other.clone()],
                })
                .collect()
        })
        .collect();
    EquationSystem { prefix: sys.prefix.clone(), matrix }
}
