use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use super::shared::{shared_node, Hashed};
use super::{Name, Signature, SyntaxError};

/// State formula, evaluated at a single point.
#[derive(Clone)]
pub struct State(Arc<Hashed<StateNode>>);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StateNode {
    Pred(Name),
    True,
    False,
    Not(State),
    Or(State, State),
    And(State, State),
    Diamond(Path, State),
    /// Holds at `a` iff `(a, a)` is in the path relation.
    Loop(Path),
}

/// Path formula, evaluated at pairs of points.
#[derive(Clone)]
pub struct Path(Arc<Hashed<PathNode>>);

shared_node!(State, StateNode);
shared_node!(Path, PathNode);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PathNode {
    Atom(Name),
    Le,
    Test(State),
    Converse(Path),
    Compose(Path, Path),
    Union(Path, Path),
    Inter(Path, Path),
    Complement(Path),
    C(COp, Path),
}

/// The four interval-preserving pieces of a path complement. Writing `R` for
/// the relation of the argument, `(a, b)` belongs to
///
/// * `c1` when `b < R(a) != {}` and `a < R⁻¹(b) != {}`,
/// * `c2` when `b < R(a) != {}` and `a > R⁻¹(b) != {}`,
/// * `c3` when `b > R(a) != {}` and `a < R⁻¹(b) != {}`,
/// * `c4` when `b > R(a) != {}` and `a > R⁻¹(b) != {}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum COp {
    C1,
    C2,
    C3,
    C4,
}

impl COp {
    pub const ALL: [COp; 4] = [COp::C1, COp::C2, COp::C3, COp::C4];

    /// Whether `b` lies left of the image of `a`.
    pub fn target_left(self) -> bool {
        matches!(self, COp::C1 | COp::C2)
    }

    /// Whether `a` lies left of the preimage of `b`.
    pub fn source_left(self) -> bool {
        matches!(self, COp::C1 | COp::C3)
    }

    pub fn keyword(self) -> &'static str {
        match self {
            COp::C1 => "c1",
            COp::C2 => "c2",
            COp::C3 => "c3",
            COp::C4 => "c4",
        }
    }
}

/// Syntactic fragments of star-free PDL.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dialect {
    /// Every constructor.
    Full,
    /// No union, no complement.
    FragCap,
    /// No union, no complement, and intersection only implicitly via `loop`.
    FragLoop,
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dialect::Full => "full",
            Dialect::FragCap => "frag-cap",
            Dialect::FragLoop => "frag-loop",
        })
    }
}

impl State {
    pub fn pred(name: &str) -> Self {
        Self::from_node(StateNode::Pred(name.into()))
    }

    pub fn tt() -> Self {
        Self::from_node(StateNode::True)
    }

    pub fn ff() -> Self {
        Self::from_node(StateNode::False)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(&self) -> Self {
        Self::from_node(StateNode::Not(self.clone()))
    }

    pub fn or(&self, other: &State) -> Self {
        Self::from_node(StateNode::Or(self.clone(), other.clone()))
    }

    pub fn and(&self, other: &State) -> Self {
        Self::from_node(StateNode::And(self.clone(), other.clone()))
    }

    pub fn diamond(path: &Path, body: &State) -> Self {
        Self::from_node(StateNode::Diamond(path.clone(), body.clone()))
    }

    /// `<path>true`
    pub fn can(path: &Path) -> Self {
        Self::diamond(path, &State::tt())
    }

    pub fn loop_of(path: &Path) -> Self {
        Self::from_node(StateNode::Loop(path.clone()))
    }

    /// Number of constructors in the written formula (saturating).
    pub fn size(&self) -> usize {
        written_size(Node::State(self), &mut HashMap::new())
    }

    pub fn is_in(&self, dialect: Dialect) -> bool {
        all_nodes(Node::State(self), &mut |n| permitted(n, dialect))
    }

    pub(crate) fn collect_names(&self, preds: &mut BTreeSet<String>, rels: &mut BTreeSet<String>) {
        all_nodes(Node::State(self), &mut |n| collect(n, preds, rels));
    }

    pub fn signature(&self) -> Result<Signature, SyntaxError> {
        let (mut preds, mut rels) = (BTreeSet::new(), BTreeSet::new());
        self.collect_names(&mut preds, &mut rels);
        Signature::new(preds, rels)
    }
}

impl Path {
    pub fn atom(name: &str) -> Self {
        Self::from_node(PathNode::Atom(name.into()))
    }

    pub fn le() -> Self {
        Self::from_node(PathNode::Le)
    }

    /// `inv(le)`
    pub fn ge() -> Self {
        Self::le().inv()
    }

    pub fn test(state: &State) -> Self {
        Self::from_node(PathNode::Test(state.clone()))
    }

    pub fn inv(&self) -> Self {
        Self::from_node(PathNode::Converse(self.clone()))
    }

    pub fn then(&self, other: &Path) -> Self {
        Self::from_node(PathNode::Compose(self.clone(), other.clone()))
    }

    pub fn union(&self, other: &Path) -> Self {
        Self::from_node(PathNode::Union(self.clone(), other.clone()))
    }

    pub fn inter(&self, other: &Path) -> Self {
        Self::from_node(PathNode::Inter(self.clone(), other.clone()))
    }

    pub fn comp(&self) -> Self {
        Self::from_node(PathNode::Complement(self.clone()))
    }

    pub fn c(op: COp, path: &Path) -> Self {
        Self::from_node(PathNode::C(op, path.clone()))
    }

    /// Number of constructors in the written formula (saturating).
    pub fn size(&self) -> usize {
        written_size(Node::Path(self), &mut HashMap::new())
    }

    /// Whether every constructor in the formula is permitted by `dialect`.
    pub fn is_in(&self, dialect: Dialect) -> bool {
        all_nodes(Node::Path(self), &mut |n| permitted(n, dialect))
    }

    /// Smallest dialect containing the formula.
    pub fn dialect(&self) -> Dialect {
        if self.is_in(Dialect::FragLoop) {
            Dialect::FragLoop
        } else if self.is_in(Dialect::FragCap) {
            Dialect::FragCap
        } else {
            Dialect::Full
        }
    }

    pub(crate) fn collect_names(&self, preds: &mut BTreeSet<String>, rels: &mut BTreeSet<String>) {
        all_nodes(Node::Path(self), &mut |n| collect(n, preds, rels));
    }

    pub fn signature(&self) -> Result<Signature, SyntaxError> {
        let (mut preds, mut rels) = (BTreeSet::new(), BTreeSet::new());
        self.collect_names(&mut preds, &mut rels);
        Signature::new(preds, rels)
    }
}

#[derive(Clone, Copy)]
enum Node<'a> {
    State(&'a State),
    Path(&'a Path),
}

impl<'a> Node<'a> {
    fn key(self) -> usize {
        match self {
            Node::State(s) => s.ptr() as usize,
            Node::Path(p) => p.ptr() as usize,
        }
    }

    fn children(self) -> Vec<Node<'a>> {
        match self {
            Node::State(s) => match s.node() {
                StateNode::Pred(_) | StateNode::True | StateNode::False => vec![],
                StateNode::Not(a) => vec![Node::State(a)],
                StateNode::Or(a, b) | StateNode::And(a, b) => vec![Node::State(a), Node::State(b)],
                StateNode::Diamond(p, a) => vec![Node::Path(p), Node::State(a)],
                StateNode::Loop(p) => vec![Node::Path(p)],
            },
            Node::Path(p) => match p.node() {
                PathNode::Atom(_) | PathNode::Le => vec![],
                PathNode::Test(s) => vec![Node::State(s)],
                PathNode::Converse(a) | PathNode::Complement(a) | PathNode::C(_, a) => {
                    vec![Node::Path(a)]
                }
                PathNode::Compose(a, b) | PathNode::Union(a, b) | PathNode::Inter(a, b) => {
                    vec![Node::Path(a), Node::Path(b)]
                }
            },
        }
    }
}

/// Whether `f` holds at every distinct node; shared subterms are checked
/// once.
fn all_nodes(root: Node<'_>, f: &mut impl FnMut(Node<'_>) -> bool) -> bool {
    let mut seen = HashSet::new();
    let mut stack = vec![root];
    while let Some(n) = stack.pop() {
        if !seen.insert(n.key()) {
            continue;
        }
        if !f(n) {
            return false;
        }
        stack.extend(n.children());
    }
    true
}

fn written_size(n: Node<'_>, memo: &mut HashMap<usize, usize>) -> usize {
    if let Some(&k) = memo.get(&n.key()) {
        return k;
    }
    let k = n
        .children()
        .into_iter()
        .fold(1usize, |acc, c| acc.saturating_add(written_size(c, memo)));
    memo.insert(n.key(), k);
    k
}

fn permitted(n: Node<'_>, dialect: Dialect) -> bool {
    match n {
        Node::Path(p) => match p.node() {
            PathNode::Inter(..) => dialect != Dialect::FragLoop,
            PathNode::Union(..) | PathNode::Complement(_) => dialect == Dialect::Full,
            _ => true,
        },
        Node::State(_) => true,
    }
}

fn collect(n: Node<'_>, preds: &mut BTreeSet<String>, rels: &mut BTreeSet<String>) -> bool {
    match n {
        Node::State(s) => {
            if let StateNode::Pred(p) = s.node() {
                preds.insert(p.to_string());
            }
        }
        Node::Path(p) => {
            if let PathNode::Atom(a) = p.node() {
                rels.insert(a.to_string());
            }
        }
    }
    true
}

pub fn dialect_check(path: &Path, dialect: Dialect) -> bool {
    path.is_in(dialect)
}
