use std::collections::HashMap;
use std::rc::Rc;

use super::fo::{check_assignment_for, check_fo_names};
use super::EvalError;
use crate::structures::{Assignment, Structure};
use crate::syntax::{Fo, FoNode, Var};

/// Truth values of a formula for every assignment of its free variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    /// Sorted; the first variable is the most significant digit.
    vars: Vec<Var>,
    n: usize,
    data: Vec<bool>,
}

impl TruthTable {
    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    /// # Panics
    /// If the assignment misses a variable of the table.
    pub fn get(&self, nu: &Assignment) -> bool {
        let idx = self.vars.iter().fold(0, |acc, v| acc * self.n + nu[v]);
        self.data[idx]
    }

    pub fn count_true(&self) -> usize {
        self.data.iter().filter(|b| **b).count()
    }

    fn unary(n: usize, x: &Var, f: impl Fn(usize) -> bool) -> Self {
        TruthTable {
            vars: vec![x.clone()],
            n,
            data: (0..n).map(f).collect(),
        }
    }

    fn binary(n: usize, x: &Var, y: &Var, f: impl Fn(usize, usize) -> bool) -> Self {
        if x == y {
            return Self::unary(n, x, |a| f(a, a));
        }
        let swap = y < x;
        let vars = if swap {
            vec![y.clone(), x.clone()]
        } else {
            vec![x.clone(), y.clone()]
        };
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(if swap { f(j, i) } else { f(i, j) });
            }
        }
        TruthTable { vars, n, data }
    }

    fn map(&self, f: impl Fn(bool) -> bool) -> Self {
        TruthTable {
            vars: self.vars.clone(),
            n: self.n,
            data: self.data.iter().map(|b| f(*b)).collect(),
        }
    }

    fn strides_in(&self, vars: &[Var]) -> Vec<usize> {
        vars.iter()
            .map(|v| match self.vars.iter().position(|w| w == v) {
                Some(k) => self.n.pow((self.vars.len() - 1 - k) as u32),
                None => 0,
            })
            .collect()
    }

    fn combine(&self, other: &TruthTable, f: impl Fn(bool, bool) -> bool) -> Self {
        let n = self.n;
        let mut vars: Vec<Var> = self.vars.iter().chain(&other.vars).cloned().collect();
        vars.sort();
        vars.dedup();
        let (sa, sb) = (self.strides_in(&vars), other.strides_in(&vars));
        let total = n.pow(vars.len() as u32);
        let mut data = Vec::with_capacity(total);
        let mut digits = vec![0usize; vars.len()];
        let (mut ia, mut ib) = (0usize, 0usize);
        for _ in 0..total {
            data.push(f(self.data[ia], other.data[ib]));
            // odometer step, last digit fastest
            for k in (0..digits.len()).rev() {
                digits[k] += 1;
                ia += sa[k];
                ib += sb[k];
                if digits[k] < n {
                    break;
                }
                digits[k] = 0;
                ia -= sa[k] * n;
                ib -= sb[k] * n;
            }
        }
        TruthTable { vars, n, data }
    }

    fn project(&self, x: &Var, existential: bool) -> Self {
        let n = self.n;
        let Some(k) = self.vars.iter().position(|v| v == x) else {
            if n == 0 {
                return TruthTable {
                    vars: self.vars.clone(),
                    n,
                    data: vec![!existential; self.data.len()],
                };
            }
            return self.clone();
        };
        let mut vars = self.vars.clone();
        vars.remove(k);
        let stride = n.pow((self.vars.len() - 1 - k) as u32);
        let mut data = vec![!existential; n.pow(vars.len() as u32)];
        for (old, value) in self.data.iter().enumerate() {
            if *value == existential {
                data[(old / (stride * n)) * stride + old % stride] = existential;
            }
        }
        TruthTable { vars, n, data }
    }
}

/// Evaluates first-order formulas bottom-up into truth tables, sharing work
/// between repeated subformulas. Suited to large translated formulas with
/// few variables per subformula.
pub struct FoTableEvaluator<'m> {
    m: &'m Structure,
    memo: HashMap<*const FoNode, (Fo, Rc<TruthTable>)>,
}

impl<'m> FoTableEvaluator<'m> {
    pub fn new(m: &'m Structure) -> Self {
        FoTableEvaluator {
            m,
            memo: HashMap::new(),
        }
    }

    pub fn table(&mut self, f: &Fo) -> Result<Rc<TruthTable>, EvalError> {
        if !self.memo.contains_key(&f.ptr()) {
            check_fo_names(self.m, f)?;
        }
        Ok(self.compute(f))
    }

    pub fn holds(&mut self, f: &Fo, nu: &Assignment) -> Result<bool, EvalError> {
        let t = self.table(f)?;
        // the table ranges over exactly the free variables
        check_assignment_for(self.m, t.vars(), nu)?;
        Ok(t.get(nu))
    }

    fn compute(&mut self, f: &Fo) -> Rc<TruthTable> {
        if let Some((_, t)) = self.memo.get(&f.ptr()) {
            return t.clone();
        }
        let m = self.m;
        let n = m.size();
        let t = match f.node() {
            FoNode::Pred(p, x) => {
                let set = m.predicate(p).expect("checked");
                TruthTable::unary(n, x, |a| set.contains(a))
            }
            FoNode::Le(x, y) => TruthTable::binary(n, x, y, |a, b| a <= b),
            FoNode::Eq(x, y) => TruthTable::binary(n, x, y, |a, b| a == b),
            FoNode::Rel(r, x, y) => {
                let rel = m.relation(r).expect("checked");
                TruthTable::binary(n, x, y, |a, b| rel.contains(a, b))
            }
            FoNode::Not(a) => self.compute(a).map(|b| !b),
            FoNode::Or(a, b) => self.compute(a).combine(&self.compute(b), |p, q| p || q),
            FoNode::And(a, b) => self.compute(a).combine(&self.compute(b), |p, q| p && q),
            FoNode::Implies(a, b) => self.compute(a).combine(&self.compute(b), |p, q| !p || q),
            FoNode::Exists(x, body) => self.compute(body).project(x, true),
            FoNode::Forall(x, body) => self.compute(body).project(x, false),
        };
        let t = Rc::new(t);
        self.memo.insert(f.ptr(), (f.clone(), t.clone()));
        t
    }
}
