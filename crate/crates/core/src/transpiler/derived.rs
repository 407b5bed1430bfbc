use crate::syntax::{COp, Path, PathNode, State, StateNode};

/// `test(<π>true) . comp(π . le)`: pairs `(a, b)` with `b` strictly below the
/// nonempty image of `a`.
pub fn left_c(p: &Path) -> Path {
    Path::test(&State::can(p)).then(&p.then(&Path::le()).comp())
}

/// `test(<π>true) . comp(π . inv(le))`: pairs `(a, b)` with `b` strictly
/// above the nonempty image of `a`.
pub fn right_c(p: &Path) -> Path {
    Path::test(&State::can(p)).then(&p.then(&Path::ge()).comp())
}

fn unfold(op: COp, p: &Path) -> Path {
    let first = if op.target_left() {
        left_c(p)
    } else {
        right_c(p)
    };
    let second = if op.source_left() {
        left_c(&p.inv())
    } else {
        right_c(&p.inv())
    };
    first.inter(&second.inv())
}

/// Replaces every `c1`..`c4` node, including those inside tests, by its
/// definition over tests, complement, converse, composition, intersection
/// and `le`.
pub fn expand_c(p: &Path) -> Path {
    match p.node() {
        PathNode::Atom(_) | PathNode::Le => p.clone(),
        PathNode::Test(s) => Path::test(&expand_state(s)),
        PathNode::Converse(a) => expand_c(a).inv(),
        PathNode::Complement(a) => expand_c(a).comp(),
        PathNode::Compose(a, b) => expand_c(a).then(&expand_c(b)),
        PathNode::Union(a, b) => expand_c(a).union(&expand_c(b)),
        PathNode::Inter(a, b) => expand_c(a).inter(&expand_c(b)),
        PathNode::C(op, a) => unfold(*op, &expand_c(a)),
    }
}

pub(crate) fn expand_state(s: &State) -> State {
    match s.node() {
        StateNode::Pred(_) | StateNode::True | StateNode::False => s.clone(),
        StateNode::Not(a) => expand_state(a).not(),
        StateNode::Or(a, b) => expand_state(a).or(&expand_state(b)),
        StateNode::And(a, b) => expand_state(a).and(&expand_state(b)),
        StateNode::Diamond(p, a) => State::diamond(&expand_c(p), &expand_state(a)),
        StateNode::Loop(p) => State::loop_of(&expand_c(p)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_path;
    use crate::semantics::eval_path;
    use crate::structures::Structure;
    use crate::syntax::Dialect;

    #[test]
    fn c1_unfolds_to_its_definition() {
        let a = Path::atom("a");
        let expected = left_c(&a).inter(&left_c(&a.inv()).inv());
        assert_eq!(expand_c(&Path::c(COp::C1, &a)), expected);
        assert_eq!(left_c(&a).to_string(), "test(<a>true) . comp(a . le)");
    }

    #[test]
    fn expansion_is_identity_without_c() {
        let p = parse_path("a . test(<le>P) & inv(b) | comp(le)").unwrap();
        assert_eq!(expand_c(&p), p);
    }

    #[test]
    fn expansion_agrees_on_example() {
        let m = Structure::new(4)
            .unwrap()
            .with_relation("a", [(1, 2), (2, 3)])
            .unwrap();
        for op in COp::ALL {
            let p = Path::c(op, &Path::atom("a"));
            let e = expand_c(&p);
            assert_eq!(e.dialect(), Dialect::Full);
            assert_eq!(
                eval_path(&m, &p).unwrap(),
                eval_path(&m, &e).unwrap(),
                "{op:?}"
            );
        }
        let c3 = eval_path(&m, &parse_path("c3(a)").unwrap()).unwrap();
        let via_c2 = eval_path(&m, &expand_c(&parse_path("inv(c2(inv(a)))").unwrap())).unwrap();
        assert_eq!(c3, via_c2);
        assert_eq!(c3.to_string(), "(1,3)");
    }
}
