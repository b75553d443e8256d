use std::collections::HashSet;

use super::{Atom, Block, DslError, EquationSystem, GreenRel, Quantifier, Symbol, Word};

/// Largest exponent accepted in `a^n`.
pub const MAX_EXPONENT: u64 = 10_000;
/// Largest word length after power expansion.
pub const MAX_WORD_LENGTH: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(u64),
    Quant(Quantifier),
    In,
    Rel(GreenRel),
    SetE,
    SetG,
    SetV,
    Dot,
    Star,
    Caret,
    Equals,
    Amp,
    Pipe,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Number(n) => format!("number {n}"),
            Tok::Quant(q) => format!("`{}`", q.keyword()),
            Tok::In => "`in`".into(),
            Tok::Rel(r) => format!("`{}`", r.letter()),
            Tok::SetE => "`E`".into(),
            Tok::SetG => "`G`".into(),
            Tok::SetV => "`V`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> DslError {
    DslError::Syntax { line, column, message: message.into() }
}

fn lex(text: &str, first_line: usize) -> Result<Vec<Spanned>, DslError> {
    let mut out = Vec::new();
    let mut line = first_line;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut ident = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    ident.push(c);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            let tok = match ident.as_str() {
                "forall" => Tok::Quant(Quantifier::Forall),
                "exists" => Tok::Quant(Quantifier::Exists),
                "in" => Tok::In,
                "E" => Tok::SetE,
                "G" => Tok::SetG,
                "V" => Tok::SetV,
                s if s.len() == 1 && GreenRel::from_letter(s.chars().next().unwrap()).is_some() => {
                    Tok::Rel(GreenRel::from_letter(s.chars().next().unwrap()).unwrap())
                }
                _ => Tok::Ident(ident),
            };
            out.push(Spanned { tok, line: l, column: col });
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    digits.push(c);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            let n = digits.parse::<u64>().map_err(|_| syntax(l, col, "number too large"))?;
            out.push(Spanned { tok: Tok::Number(n), line: l, column: col });
            continue;
        }
        let tok = match c {
            '.' => Tok::Dot,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '=' => Tok::Equals,
            '&' => Tok::Amp,
            '|' => Tok::Pipe,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(syntax(l, col, format!("unexpected character `{other}`"))),
        };
        chars.next();
        column += 1;
        out.push(Spanned { tok, line: l, column: col });
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    bound: HashSet<Symbol>,
    check_bound: bool,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> DslError {
        let t = self.peek();
        syntax(t.line, t.column, format!("expected {wanted}, found {}", t.tok.describe()))
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<(), DslError> {
        if self.peek().tok == tok {
            self.next();
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn prefix(&mut self) -> Result<Vec<Block>, DslError> {
        let mut blocks = Vec::new();
        while let Tok::Quant(q) = self.peek().tok {
            self.next();
            let mut symbols = Vec::new();
            while let Tok::Ident(name) = &self.peek().tok {
                let name = name.clone();
                if !self.bound.insert(name.clone()) {
                    return Err(DslError::DuplicateBinder(name));
                }
                symbols.push(name);
                self.next();
            }
            if symbols.is_empty() {
                return Err(self.unexpected("a variable name"));
            }
            self.expect(Tok::Dot, "`.` after the quantified variables")?;
            blocks.push(Block { quantifier: q, symbols });
        }
        if blocks.is_empty() {
            return Err(self.unexpected("`forall` or `exists`"));
        }
        Ok(blocks)
    }

    fn exponent(&mut self) -> Result<usize, DslError> {
        if self.peek().tok != Tok::Caret {
            return Ok(1);
        }
        self.next();
        let t = self.next();
        match t.tok {
            Tok::Number(n) if (1..=MAX_EXPONENT).contains(&n) => Ok(n as usize),
            Tok::Number(_) => Err(syntax(t.line, t.column, format!("exponent must lie in 1..={MAX_EXPONENT}"))),
            other => Err(syntax(t.line, t.column, format!("expected an exponent, found {}", other.describe()))),
        }
    }

    fn factor(&mut self) -> Result<Vec<Symbol>, DslError> {
        let t = self.next();
        let base = match t.tok {
            Tok::Ident(name) => {
                if self.check_bound && !self.bound.contains(&name) {
                    return Err(DslError::UnboundSymbol { symbol: name, line: t.line, column: t.column });
                }
                vec![name]
            }
            Tok::LParen => {
                let inner = self.word()?;
                self.expect(Tok::RParen, "`)`")?;
                inner.0
            }
            other => return Err(syntax(t.line, t.column, format!("expected a variable, found {}", other.describe()))),
        };
        let n = self.exponent()?;
        if base.len().saturating_mul(n) > MAX_WORD_LENGTH {
            return Err(syntax(t.line, t.column, "word too long after expanding powers"));
        }
        Ok(std::iter::repeat_n(base, n).flatten().collect())
    }

    fn word(&mut self) -> Result<Word, DslError> {
        let start = self.peek().clone();
        let mut symbols = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.next();
            symbols.extend(self.factor()?);
            if symbols.len() > MAX_WORD_LENGTH {
                return Err(syntax(start.line, start.column, "word too long after expanding powers"));
            }
        }
        Ok(Word(symbols))
    }

    fn atom(&mut self) -> Result<Atom, DslError> {
        let u = self.word()?;
        match self.peek().tok {
            Tok::Equals => {
                self.next();
                Ok(Atom::WordEq(u, self.word()?))
            }
            Tok::Rel(rel) => {
                self.next();
                Ok(Atom::Green { rel, u, v: self.word()? })
            }
            Tok::In => {
                self.next();
                match self.next().tok {
                    Tok::SetE => Ok(Atom::InE(u)),
                    Tok::SetG => Ok(Atom::InG(u)),
                    Tok::SetV => {
                        self.expect(Tok::LParen, "`(` after `V`")?;
                        let a = self.word()?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(Atom::InV { x: u, a })
                    }
                    _ => {
                        self.pos -= 1;
                        Err(self.unexpected("`E`, `G` or `V(...)` after `in`"))
                    }
                }
            }
            _ => Err(self.unexpected("`=`, `in` or one of R L H D J")),
        }
    }

    fn matrix(&mut self) -> Result<Vec<Vec<Atom>>, DslError> {
        let mut disjuncts = Vec::new();
        loop {
            let mut conj = vec![self.atom()?];
            while self.peek().tok == Tok::Amp {
                self.next();
                conj.push(self.atom()?);
            }
            disjuncts.push(conj);
            if self.peek().tok != Tok::Pipe {
                break;
            }
            self.next();
        }
        Ok(disjuncts)
    }
}

fn parse_at(text: &str, first_line: usize) -> Result<EquationSystem, DslError> {
    let mut p = Parser { toks: lex(text, first_line)?, pos: 0, bound: HashSet::new(), check_bound: true };
    let prefix = p.prefix()?;
    let matrix = p.matrix()?;
    if p.peek().tok != Tok::End {
        return Err(p.unexpected("`&`, `|` or end of system"));
    }
    EquationSystem::new(prefix, matrix)
}

/// Parses one equation system.
pub fn parse(text: &str) -> Result<EquationSystem, DslError> {
    parse_at(text, 1)
}

/// Parses a file of systems separated by `---` lines; blank stanzas are skipped.
pub fn parse_many(text: &str) -> Result<Vec<EquationSystem>, DslError> {
    let mut systems = Vec::new();
    let mut stanza = String::new();
    let mut start = 1;
    let mut flush = |stanza: &mut String, start: usize| -> Result<(), DslError> {
        let has_content = stanza.lines().any(|l| {
            let l = l.split('#').next().unwrap_or("");
            !l.trim().is_empty()
        });
        if has_content {
            systems.push(parse_at(stanza, start)?);
        }
        stanza.clear();
        Ok(())
    };
    for (i, line) in text.lines().enumerate() {
        if line.trim() == "---" {
            flush(&mut stanza, start)?;
            start = i + 2;
        } else {
            stanza.push_str(line);
            stanza.push('\n');
        }
    }
    flush(&mut stanza, start)?;
    Ok(systems)
}

/// Parses a bare word such as `a^2*b`, without binding checks.
pub fn parse_word(text: &str) -> Result<Word, DslError> {
    let mut p = Parser { toks: lex(text, 1)?, pos: 0, bound: HashSet::new(), check_bound: false };
    let w = p.word()?;
    if p.peek().tok != Tok::End {
        return Err(p.unexpected("`*` or end of word"));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eqdsl::{desugar, render};

    #[test]
    fn group_system() {
        let sys = parse("forall a b. exists x y. a*x = b & y*a = b").unwrap();
        assert_eq!(sys.prefix.len(), 2);
        assert_eq!(sys.prefix[0], Block { quantifier: Quantifier::Forall, symbols: vec!["a".into(), "b".into()] });
        assert_eq!(
            sys.matrix,
            vec![vec![
                Atom::WordEq(Word::new(["a", "x"]), Word::symbol("b")),
                Atom::WordEq(Word::new(["y", "a"]), Word::symbol("b")),
            ]]
        );
    }

    #[test]
    fn regular_and_idempotent_systems() {
        let reg = parse("forall a. exists x. a*x*a = a").unwrap();
        assert_eq!(reg.matrix[0][0], Atom::WordEq(Word::new(["a", "x", "a"]), Word::symbol("a")));
        let id = parse("exists x. x = x^2").unwrap();
        assert_eq!(id.prefix.len(), 1);
        assert_eq!(id.matrix, vec![vec![Atom::WordEq(Word::symbol("x"), Word::new(["x", "x"]))]]);
    }

    #[test]
    fn powers_and_groups_expand() {
        let sys = parse("forall a b. (a*b)^2*a^3 = a").unwrap();
        let Atom::WordEq(lhs, _) = &sys.matrix[0][0] else { panic!() };
        assert_eq!(lhs.0.join(""), "ababaaa");
        assert!(matches!(parse("forall a. a^0 = a"), Err(DslError::Syntax { .. })));
        assert!(matches!(parse("forall a. a^10001 = a"), Err(DslError::Syntax { .. })));
        assert!(parse("forall a. a^10000 = a").is_ok());
    }

    #[test]
    fn errors_carry_positions() {
        match parse("forall a.\n  a * = a") {
            Err(DslError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 7)),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse("forall a. a = b"), Err(DslError::UnboundSymbol { symbol: "b".into(), line: 1, column: 15 }));
        assert_eq!(parse("forall a. exists a. a = a"), Err(DslError::DuplicateBinder("a".into())));
        assert!(matches!(parse("forall E. E = E"), Err(DslError::Syntax { .. })));
        assert!(matches!(parse("a = a"), Err(DslError::Syntax { .. })));
    }

    #[test]
    fn merges_blocks_and_parses_sugar() {
        let sys = parse("forall a. forall b. exists x. x in V(a) & a*x in E | a H b & b in G | a R b").unwrap();
        assert_eq!(sys.prefix.len(), 2);
        assert_eq!(sys.prefix[0].symbols, vec!["a", "b"]);
        assert_eq!(sys.matrix.len(), 3);
        assert_eq!(sys.matrix[1][1], Atom::InG(Word::symbol("b")));
    }

    #[test]
    fn desugaring() {
        let sys = parse("forall a. exists x. x in V(a)").unwrap();
        assert_eq!(render(&desugar(&sys)), "forall a. exists x. a = a*x*a & x = x*a*x");
        let sys = parse("forall a. exists x. a*x in E").unwrap();
        assert_eq!(render(&desugar(&sys)), "forall a. exists x. a*x = a*x*a*x");
        let plain = parse("forall a b. exists x y. a*x = b & y*a = b").unwrap();
        assert_eq!(desugar(&plain), plain);
        let g = parse("forall a. a in G").unwrap();
        assert_eq!(desugar(&g), g);
    }

    #[test]
    fn stanzas() {
        let text = "# catalogue\nforall a. exists x. a*x*a = a\n---\n\n---\nexists x.\n  x = x^2 # idempotent\n---\nforall a. a = q\n";
        match parse_many(text) {
            Err(DslError::UnboundSymbol { line, .. }) => assert_eq!(line, 9),
            other => panic!("{other:?}"),
        }
        let ok = parse_many(&text[..text.rfind("---").unwrap()]).unwrap();
        assert_eq!(ok.len(), 2);
    }

    #[test]
    fn bare_words() {
        assert_eq!(parse_word("a^2*b").unwrap(), Word::new(["a", "a", "b"]));
        assert!(parse_word("a b").is_err());
    }
}
