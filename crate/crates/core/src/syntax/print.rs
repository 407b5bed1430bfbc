//! Printing in the same concrete grammar the parser reads.

use std::fmt::{self, Display, Formatter, Write};

use super::{Fo, FoNode, Path, PathNode, Pbc, State, StateNode};

// FO precedence: quantifiers 0, -> 1, | 2, & 3, ! 4, atoms 5.
fn fo_prec(f: &Fo) -> u8 {
    match f.node() {
        FoNode::Exists(..) | FoNode::Forall(..) => 0,
        FoNode::Implies(..) => 1,
        FoNode::Or(..) => 2,
        FoNode::And(..) => 3,
        FoNode::Not(..) => 4,
        _ => 5,
    }
}

fn write_fo(f: &Fo, min: u8, out: &mut Formatter<'_>) -> fmt::Result {
    let prec = fo_prec(f);
    // A quantifier extends as far right as possible, so it is bracketed
    // whenever it is an operand.
    let paren = prec < min;
    if paren {
        out.write_char('(')?;
    }
    match f.node() {
        FoNode::Pred(p, x) => write!(out, "{p}({x})")?,
        FoNode::Le(x, y) => write!(out, "{x} <= {y}")?,
        FoNode::Eq(x, y) => write!(out, "{x} = {y}")?,
        FoNode::Rel(r, x, y) => write!(out, "{r}({x},{y})")?,
        FoNode::Implies(a, b) => {
            write_fo(a, 2, out)?;
            out.write_str(" -> ")?;
            write_fo(b, 1, out)?;
        }
        FoNode::Or(a, b) => {
            write_fo(a, 2, out)?;
            out.write_str(" | ")?;
            write_fo(b, 3, out)?;
        }
        FoNode::And(a, b) => {
            write_fo(a, 3, out)?;
            out.write_str(" & ")?;
            write_fo(b, 4, out)?;
        }
        FoNode::Not(a) => {
            out.write_char('!')?;
            write_fo(a, 4, out)?;
        }
        FoNode::Exists(x, body) => {
            write!(out, "exists {x}. ")?;
            write_fo(body, 0, out)?;
        }
        FoNode::Forall(x, body) => {
            write!(out, "forall {x}. ")?;
            write_fo(body, 0, out)?;
        }
    }
    if paren {
        out.write_char(')')?;
    }
    Ok(())
}

impl Display for Fo {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_fo(self, 0, f)
    }
}

// State precedence: | 1, & 2, prefix operators 3, atoms 4.
fn state_prec(s: &State) -> u8 {
    match s.node() {
        StateNode::Or(..) => 1,
        StateNode::And(..) => 2,
        StateNode::Not(..) | StateNode::Diamond(..) => 3,
        _ => 4,
    }
}

fn write_state(s: &State, min: u8, out: &mut Formatter<'_>) -> fmt::Result {
    let paren = state_prec(s) < min;
    if paren {
        out.write_char('(')?;
    }
    match s.node() {
        StateNode::Pred(p) => out.write_str(p)?,
        StateNode::True => out.write_str("true")?,
        StateNode::False => out.write_str("false")?,
        StateNode::Or(a, b) => {
            write_state(a, 1, out)?;
            out.write_str(" | ")?;
            write_state(b, 2, out)?;
        }
        StateNode::And(a, b) => {
            write_state(a, 2, out)?;
            out.write_str(" & ")?;
            write_state(b, 3, out)?;
        }
        StateNode::Not(a) => {
            out.write_char('!')?;
            write_state(a, 3, out)?;
        }
        StateNode::Diamond(p, a) => {
            out.write_char('<')?;
            write_path(p, 0, out)?;
            out.write_char('>')?;
            write_state(a, 3, out)?;
        }
        StateNode::Loop(p) => {
            out.write_str("loop(")?;
            write_path(p, 0, out)?;
            out.write_char(')')?;
        }
    }
    if paren {
        out.write_char(')')?;
    }
    Ok(())
}

impl Display for State {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_state(self, 0, f)
    }
}

// Path precedence: | 1, & 2, . 3, atoms 4.
fn path_prec(p: &Path) -> u8 {
    match p.node() {
        PathNode::Union(..) => 1,
        PathNode::Inter(..) => 2,
        PathNode::Compose(..) => 3,
        _ => 4,
    }
}

fn write_path(p: &Path, min: u8, out: &mut Formatter<'_>) -> fmt::Result {
    let paren = path_prec(p) < min;
    if paren {
        out.write_char('(')?;
    }
    let binary = |a: &Path, op: &str, level: u8, out: &mut Formatter<'_>| -> fmt::Result {
        write_path(a, level, out)?;
        out.write_str(op)?;
        Ok(())
    };
    match p.node() {
        PathNode::Atom(a) => out.write_str(a)?,
        PathNode::Le => out.write_str("le")?,
        PathNode::Test(s) => {
            out.write_str("test(")?;
            write_state(s, 0, out)?;
            out.write_char(')')?;
        }
        PathNode::Converse(a) => {
            out.write_str("inv(")?;
            write_path(a, 0, out)?;
            out.write_char(')')?;
        }
        PathNode::Complement(a) => {
            out.write_str("comp(")?;
            write_path(a, 0, out)?;
            out.write_char(')')?;
        }
        PathNode::C(op, a) => {
            write!(out, "{}(", op.keyword())?;
            write_path(a, 0, out)?;
            out.write_char(')')?;
        }
        PathNode::Union(a, b) => {
            binary(a, " | ", 1, out)?;
            write_path(b, 2, out)?;
        }
        PathNode::Inter(a, b) => {
            binary(a, " & ", 2, out)?;
            write_path(b, 3, out)?;
        }
        PathNode::Compose(a, b) => {
            binary(a, " . ", 3, out)?;
            write_path(b, 4, out)?;
        }
    }
    if paren {
        out.write_char(')')?;
    }
    Ok(())
}

impl Display for Path {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_path(self, 0, f)
    }
}

fn write_pbc(p: &Pbc, min: u8, out: &mut Formatter<'_>) -> fmt::Result {
    match p {
        Pbc::Atom(a) => write!(out, "[{}]({},{})", a.path, a.x, a.y),
        Pbc::Or(cs) | Pbc::And(cs) => {
            let (prec, sep) = if matches!(p, Pbc::Or(_)) {
                (1, " | ")
            } else {
                (2, " & ")
            };
            let paren = prec <= min;
            if paren {
                out.write_char('(')?;
            }
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.write_str(sep)?;
                }
                write_pbc(c, prec, out)?;
            }
            if paren {
                out.write_char(')')?;
            }
            Ok(())
        }
    }
}

impl Display for Pbc {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_pbc(self, 0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::var;

    #[test]
    fn fo_printing() {
        let (x, y, z) = (var("x"), var("y"), var("z"));
        let f = Fo::exists(
            &y,
            &Fo::exists(&z, &Fo::rel("a", &x, &z).and(&Fo::le(&z, &y))).and(&Fo::pred("P", &y)),
        );
        assert_eq!(
            f.to_string(),
            "exists y. (exists z. a(x,z) & z <= y) & P(y)"
        );
        let g = Fo::pred("P", &x)
            .or(&Fo::pred("Q", &x))
            .and(&Fo::pred("R", &x))
            .not();
        assert_eq!(g.to_string(), "!((P(x) | Q(x)) & R(x))");
    }

    #[test]
    fn pdl_printing() {
        let psi = State::pred("P").and(&State::can(&Path::ge()));
        let p = Path::le().then(&Path::test(&psi)).then(&Path::ge());
        assert_eq!(
            State::loop_of(&p).to_string(),
            "loop(le . test(P & <inv(le)>true) . inv(le))"
        );
        let q = Path::atom("a").then(&Path::atom("b").then(&Path::le()));
        assert_eq!(q.to_string(), "a . (b . le)");
        let r = Path::atom("a").union(&Path::atom("b")).inter(&Path::le());
        assert_eq!(r.to_string(), "(a | b) & le");
    }

    #[test]
    fn pbc_printing() {
        let (x, y) = (var("x"), var("y"));
        let p = Pbc::any(vec![
            Pbc::all(vec![
                Pbc::atom(Path::le(), &x, &y),
                Pbc::atom(Path::atom("a"), &y, &x),
            ]),
            Pbc::atom(Path::le(), &x, &x),
        ]);
        assert_eq!(p.to_string(), "[le](x,y) & [a](y,x) | [le](x,x)");
    }
}
