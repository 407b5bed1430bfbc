//! Recursive-descent parser for the text grammar of all formula sorts.
//!
//! First-order formulas:
//! `exists x. f`, `forall x. f`, `f -> f`, `f | f`, `f & f`, `!f`, `P(x)`,
//! `r(x,y)`, `x <= y`, `x = y`. Quantifiers extend as far right as possible and
//! the binary operators bind in the order `&`, `|`, `->` (tightest first).
//!
//! State formulas: `P`, `true`, `false`, `!s`, `s & s`, `s | s`, `<p>s`,
//! `loop(p)`.
//!
//! Path formulas: a relation name, `le`, `test(s)`, `inv(p)`, `comp(p)`,
//! `c1(p)` .. `c4(p)`, `p . p`, `p & p`, `p | p` (`.` binds tightest).
//!
//! Positive boolean combinations: `[p](x,y)` atoms joined by `&` and `|`.

use std::fmt;

use thiserror::Error;

use crate::syntax::{valid_symbol, COp, Fo, Path, Pbc, Signature, State, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at column {}: {message}", .pos + 1)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Amp,
    Bar,
    Bang,
    Lt,
    Gt,
    LtEq,
    Arrow,
    Eq,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Bang => f.write_str("`!`"),
            Tok::Lt => f.write_str("`<`"),
            Tok::Gt => f.write_str("`>`"),
            Tok::LtEq => f.write_str("`<=`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '!' => Tok::Bang,
            '>' => Tok::Gt,
            '=' => Tok::Eq,
            '<' if bytes.get(i + 1) == Some(&b'=') => {
                i += 1;
                Tok::LtEq
            }
            '<' => Tok::Lt,
            '-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_')
                {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                return Err(ParseError {
                    pos: start,
                    message: format!(
                        "unexpected character `{}`",
                        text[start..].chars().next().unwrap()
                    ),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ParseError> {
        self.err(format!("expected {wanted}, found {}", self.peek()))
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&tok.to_string())
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }

    fn ident(&mut self, wanted: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.unexpected(wanted),
        }
    }

    fn var(&mut self) -> Result<Var, ParseError> {
        let pos = self.pos();
        let name = self.ident("a variable")?;
        Var::new(&name).map_err(|e| ParseError {
            pos,
            message: e.to_string(),
        })
    }

    fn symbol(&mut self, wanted: &str) -> Result<String, ParseError> {
        let pos = self.pos();
        let name = self.ident(wanted)?;
        valid_symbol(&name).map_err(|e| ParseError {
            pos,
            message: e.to_string(),
        })?;
        Ok(name)
    }

    // ---- first-order formulas ----

    fn fo(&mut self) -> Result<Fo, ParseError> {
        let lhs = self.fo_or()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.fo()?;
            Ok(lhs.implies(&rhs))
        } else {
            Ok(lhs)
        }
    }

    fn fo_or(&mut self) -> Result<Fo, ParseError> {
        let mut acc = self.fo_and()?;
        while self.eat(&Tok::Bar) {
            acc = acc.or(&self.fo_and()?);
        }
        Ok(acc)
    }

    fn fo_and(&mut self) -> Result<Fo, ParseError> {
        let mut acc = self.fo_unary()?;
        while self.eat(&Tok::Amp) {
            acc = acc.and(&self.fo_unary()?);
        }
        Ok(acc)
    }

    fn fo_unary(&mut self) -> Result<Fo, ParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(self.fo_unary()?.not())
            }
            Tok::LParen => {
                self.bump();
                let f = self.fo()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(kw) if kw == "exists" || kw == "forall" => {
                self.bump();
                let x = self.var()?;
                self.expect(Tok::Dot)?;
                let body = self.fo()?;
                Ok(if kw == "exists" {
                    Fo::exists(&x, &body)
                } else {
                    Fo::forall(&x, &body)
                })
            }
            Tok::Ident(_) if *self.peek2() == Tok::LParen => {
                let name = self.symbol("a predicate or relation")?;
                self.expect(Tok::LParen)?;
                let x = self.var()?;
                if self.eat(&Tok::Comma) {
                    let y = self.var()?;
                    self.expect(Tok::RParen)?;
                    Ok(Fo::rel(&name, &x, &y))
                } else {
                    self.expect(Tok::RParen)?;
                    Ok(Fo::pred(&name, &x))
                }
            }
            Tok::Ident(_) => {
                let x = self.var()?;
                match self.bump() {
                    Tok::LtEq => Ok(Fo::le(&x, &self.var()?)),
                    Tok::Eq => Ok(Fo::eq(&x, &self.var()?)),
                    _ => {
                        self.at -= 1;
                        self.unexpected("`<=` or `=`")
                    }
                }
            }
            _ => self.unexpected("a formula"),
        }
    }

    // ---- state formulas ----

    fn state(&mut self) -> Result<State, ParseError> {
        let mut acc = self.state_and()?;
        while self.eat(&Tok::Bar) {
            acc = acc.or(&self.state_and()?);
        }
        Ok(acc)
    }

    fn state_and(&mut self) -> Result<State, ParseError> {
        let mut acc = self.state_unary()?;
        while self.eat(&Tok::Amp) {
            acc = acc.and(&self.state_unary()?);
        }
        Ok(acc)
    }

    fn state_unary(&mut self) -> Result<State, ParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(self.state_unary()?.not())
            }
            Tok::Lt => {
                self.bump();
                let p = self.path()?;
                self.expect(Tok::Gt)?;
                Ok(State::diamond(&p, &self.state_unary()?))
            }
            Tok::LParen => {
                self.bump();
                let s = self.state()?;
                self.expect(Tok::RParen)?;
                Ok(s)
            }
            Tok::Ident(kw) if kw == "true" => {
                self.bump();
                Ok(State::tt())
            }
            Tok::Ident(kw) if kw == "false" => {
                self.bump();
                Ok(State::ff())
            }
            Tok::Ident(kw) if kw == "loop" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let p = self.path()?;
                self.expect(Tok::RParen)?;
                Ok(State::loop_of(&p))
            }
            Tok::Ident(_) => Ok(State::pred(&self.symbol("a predicate")?)),
            _ => self.unexpected("a state formula"),
        }
    }

    // ---- path formulas ----

    fn path(&mut self) -> Result<Path, ParseError> {
        let mut acc = self.path_inter()?;
        while self.eat(&Tok::Bar) {
            acc = acc.union(&self.path_inter()?);
        }
        Ok(acc)
    }

    fn path_inter(&mut self) -> Result<Path, ParseError> {
        let mut acc = self.path_compose()?;
        while self.eat(&Tok::Amp) {
            acc = acc.inter(&self.path_compose()?);
        }
        Ok(acc)
    }

    fn path_compose(&mut self) -> Result<Path, ParseError> {
        let mut acc = self.path_prim()?;
        while self.eat(&Tok::Dot) {
            acc = acc.then(&self.path_prim()?);
        }
        Ok(acc)
    }

    fn path_arg(&mut self) -> Result<Path, ParseError> {
        self.expect(Tok::LParen)?;
        let p = self.path()?;
        self.expect(Tok::RParen)?;
        Ok(p)
    }

    fn path_prim(&mut self) -> Result<Path, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let p = self.path()?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            Tok::Ident(kw) => match kw.as_str() {
                "le" => {
                    self.bump();
                    Ok(Path::le())
                }
                "test" => {
                    self.bump();
                    self.expect(Tok::LParen)?;
                    let s = self.state()?;
                    self.expect(Tok::RParen)?;
                    Ok(Path::test(&s))
                }
                "inv" => {
                    self.bump();
                    Ok(self.path_arg()?.inv())
                }
                "comp" => {
                    self.bump();
                    Ok(self.path_arg()?.comp())
                }
                "c1" | "c2" | "c3" | "c4" => {
                    self.bump();
                    let op = COp::ALL[kw.as_bytes()[1] as usize - b'1' as usize];
                    Ok(Path::c(op, &self.path_arg()?))
                }
                _ => Ok(Path::atom(&self.symbol("a relation")?)),
            },
            _ => self.unexpected("a path formula"),
        }
    }

    // ---- positive boolean combinations ----

    fn pbc(&mut self) -> Result<Pbc, ParseError> {
        let mut parts = vec![self.pbc_and()?];
        while self.eat(&Tok::Bar) {
            parts.push(self.pbc_and()?);
        }
        Ok(Pbc::any(parts))
    }

    fn pbc_and(&mut self) -> Result<Pbc, ParseError> {
        let mut parts = vec![self.pbc_prim()?];
        while self.eat(&Tok::Amp) {
            parts.push(self.pbc_prim()?);
        }
        Ok(Pbc::all(parts))
    }

    fn pbc_prim(&mut self) -> Result<Pbc, ParseError> {
        match self.peek() {
            Tok::LParen => {
                self.bump();
                let p = self.pbc()?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            Tok::LBracket => {
                self.bump();
                let path = self.path()?;
                self.expect(Tok::RBracket)?;
                self.expect(Tok::LParen)?;
                let x = self.var()?;
                self.expect(Tok::Comma)?;
                let y = self.var()?;
                self.expect(Tok::RParen)?;
                Ok(Pbc::atom(path, &x, &y))
            }
            _ => self.unexpected("`[` or `(`"),
        }
    }
}

fn run<T>(
    text: &str,
    f: impl FnOnce(&mut Parser) -> Result<T, ParseError>,
) -> Result<T, ParseError> {
    let mut p = Parser::new(text)?;
    let out = f(&mut p)?;
    p.finish()?;
    Ok(out)
}

pub fn parse_fo(text: &str) -> Result<Fo, ParseError> {
    run(text, Parser::fo)
}

pub fn parse_state(text: &str) -> Result<State, ParseError> {
    run(text, Parser::state)
}

pub fn parse_path(text: &str) -> Result<Path, ParseError> {
    run(text, Parser::path)
}

pub fn parse_pbc(text: &str) -> Result<Pbc, ParseError> {
    run(text, Parser::pbc)
}

/// A parsed formula of any sort.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Fo(Fo),
    State(State),
    Path(Path),
    Pbc(Pbc),
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Fo(x) => x.fmt(f),
            Formula::State(x) => x.fmt(f),
            Formula::Path(x) => x.fmt(f),
            Formula::Pbc(x) => x.fmt(f),
        }
    }
}

/// Parses text of unknown sort, trying first-order, state, path and PBC
/// syntax in that order. With a signature, a reading that names a predicate
/// as a relation (or vice versa) is skipped, which disambiguates bare names
/// such as `a`.
pub fn parse_any(text: &str, sig: Option<&Signature>) -> Result<Formula, ParseError> {
    let fits = |s: Result<Signature, _>| match (sig, s) {
        (None, _) => true,
        (Some(sig), Ok(used)) => {
            used.predicates().all(|p| sig.has_predicate(p))
                && used.relations().all(|r| sig.has_relation(r))
        }
        (Some(_), Err(_)) => false,
    };
    let mut first_err: Option<ParseError> = None;
    let mut keep = |e: ParseError| {
        // report the error from the reading that got furthest
        if first_err.as_ref().is_none_or(|f| e.pos > f.pos) {
            first_err = Some(e);
        }
    };
    match parse_fo(text) {
        Ok(f) if fits(f.signature()) => return Ok(Formula::Fo(f)),
        Ok(_) => {}
        Err(e) => keep(e),
    }
    match parse_state(text) {
        Ok(s) if fits(s.signature()) => return Ok(Formula::State(s)),
        Ok(_) => {}
        Err(e) => keep(e),
    }
    match parse_path(text) {
        Ok(p) if fits(p.signature()) => return Ok(Formula::Path(p)),
        Ok(_) => {}
        Err(e) => keep(e),
    }
    match parse_pbc(text) {
        Ok(p) => return Ok(Formula::Pbc(p)),
        Err(e) => keep(e),
    }
    Err(first_err.unwrap_or(ParseError {
        pos: 0,
        message: "formula does not match the model's signature".into(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::var;

    #[test]
    fn fo_precedence_and_scope() {
        let f = parse_fo("exists y. (x <= y & P(y))").unwrap();
        let (x, y) = (var("x"), var("y"));
        assert_eq!(f, Fo::exists(&y, &Fo::le(&x, &y).and(&Fo::pred("P", &y))));
        // quantifier scope extends maximally right
        let g = parse_fo("exists y. x <= y & P(y)").unwrap();
        assert_eq!(f, g);
        let h = parse_fo("P(x) | Q(x) & R(x) -> S(x)").unwrap();
        let p = |n: &str| Fo::pred(n, &x);
        assert_eq!(h, p("P").or(&p("Q").and(&p("R"))).implies(&p("S")));
        let k = parse_fo("!P(x) & a(x,y) -> x = y -> Q(y)").unwrap();
        assert_eq!(
            k,
            p("P")
                .not()
                .and(&Fo::rel("a", &x, &y))
                .implies(&Fo::eq(&x, &y).implies(&Fo::pred("Q", &y)))
        );
    }

    #[test]
    fn malformed_inputs_report_location() {
        let e = parse_fo("exists .").unwrap_err();
        assert_eq!(e.pos, 7);
        assert!(parse_fo("P(x) &").is_err());
        assert!(parse_fo("le(x,y)").is_err());
        assert!(parse_fo("x < y").is_err());
        assert!(parse_path("a . ").is_err());
        assert!(parse_state("<a P").is_err());
        assert!(parse_fo("P(x) $").unwrap_err().message.contains('$'));
    }

    #[test]
    fn pdl_grammar() {
        let s = parse_state("<a>Q").unwrap();
        assert_eq!(s, State::diamond(&Path::atom("a"), &State::pred("Q")));
        let p = parse_path("a . le & b | c").unwrap();
        let expected = Path::atom("a")
            .then(&Path::le())
            .inter(&Path::atom("b"))
            .union(&Path::atom("c"));
        assert_eq!(p, expected);
        let q = parse_path("c3(inv(a)) . test(!P | <le>true)").unwrap();
        assert_eq!(
            q,
            Path::c(COp::C3, &Path::atom("a").inv()).then(&Path::test(
                &State::pred("P").not().or(&State::can(&Path::le()))
            ))
        );
        let l = parse_state("loop(le . test(P & <inv(le)>true) . inv(le))").unwrap();
        assert!(matches!(l.node(), crate::syntax::StateNode::Loop(_)));
    }

    #[test]
    fn pbc_grammar() {
        let p = parse_pbc("[le](x,y) & [a](y,x) | ([le](x,x) | [le](y,y))").unwrap();
        let (x, y) = (var("x"), var("y"));
        assert_eq!(
            p,
            Pbc::Or(vec![
                Pbc::And(vec![
                    Pbc::atom(Path::le(), &x, &y),
                    Pbc::atom(Path::atom("a"), &y, &x)
                ]),
                Pbc::Or(vec![
                    Pbc::atom(Path::le(), &x, &x),
                    Pbc::atom(Path::le(), &y, &y)
                ]),
            ])
        );
        assert_eq!(parse_pbc(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn parse_any_uses_signature() {
        let sig = Signature::new(["P", "Q"], ["a"]).unwrap();
        assert!(matches!(
            parse_any("P(x) | Q(x)", Some(&sig)),
            Ok(Formula::Fo(_))
        ));
        assert!(matches!(
            parse_any("<a>Q", Some(&sig)),
            Ok(Formula::State(_))
        ));
        assert!(matches!(parse_any("a", Some(&sig)), Ok(Formula::Path(_))));
        assert!(matches!(parse_any("a", None), Ok(Formula::State(_))));
        assert!(matches!(
            parse_any("c3(a)", Some(&sig)),
            Ok(Formula::Path(_))
        ));
        assert!(matches!(
            parse_any("P & Q", Some(&sig)),
            Ok(Formula::State(_))
        ));
        assert!(matches!(
            parse_any("a & le", Some(&sig)),
            Ok(Formula::Path(_))
        ));
        assert!(parse_any("exists .", Some(&sig)).is_err());
    }
}
