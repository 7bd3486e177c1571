// SPDX-License-Identifier: Apache-2.0
//! Reduced ordered decision diagrams.

use crate::canon::{Func, FuncManager, Overflow};
use circuitgen::BoolExpr;
use std::collections::HashMap;

const FALSE: Func = 0;
const TRUE: Func = 1;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Node {
    var: usize,
    lo: Func,
    hi: Func,
}

pub struct BddManager {
    nodes: Vec<Node>,
    unique: HashMap<Node, Func>,
    ite_memo: HashMap<(Func, Func, Func), Func>,
    budget: usize,
}

impl BddManager {
    pub fn new(budget: usize) -> Self {
        let leaf = Node { var: usize::MAX, lo: 0, hi: 0 };
        BddManager { nodes: vec![leaf, leaf], unique: HashMap::new(), ite_memo: HashMap::new(), budget }
    }

    fn mk(&mut self, var: usize, lo: Func, hi: Func) -> Result<Func, Overflow> {
        if lo == hi {
            return Ok(lo);
        }
        let n = Node { var, lo, hi };
        if let Some(&f) = self.unique.get(&n) {
            return Ok(f);
        }
        if self.nodes.len() >= self.budget {
            return Err(Overflow);
        }
        let f = self.nodes.len() as Func;
        self.nodes.push(n);
        self.unique.insert(n, f);
        Ok(f)
    }

    fn var_of(&self, f: Func) -> usize {
        self.nodes[f as usize].var
    }

    fn branches(&self, f: Func, v: usize) -> (Func, Func) {
        let n = self.nodes[f as usize];
        if f > TRUE && n.var == v {
            (n.lo, n.hi)
        } else {
            (f, f)
        }
    }

    fn ite(&mut self, f: Func, g: Func, h: Func) -> Result<Func, Overflow> {
        if f == TRUE {
            return Ok(g);
        }
        if f == FALSE {
            return Ok(h);
        }
        if g == h {
            return Ok(g);
        }
        if g == TRUE && h == FALSE {
            return Ok(f);
        }
        if let Some(&r) = self.ite_memo.get(&(f, g, h)) {
            return Ok(r);
        }
        let v = [f, g, h].iter().filter(|x| **x > TRUE).map(|x| self.var_of(*x)).min().unwrap();
        let (f0, f1) = self.branches(f, v);
        let (g0, g1) = self.branches(g, v);
        let (h0, h1) = self.branches(h, v);
        let lo = self.ite(f0, g0, h0)?;
        let hi = self.ite(f1, g1, h1)?;
        let r = self.mk(v, lo, hi)?;
        self.ite_memo.insert((f, g, h), r);
        Ok(r)
    }

    fn expr(&self, f: Func, names: &[String], budget: &mut usize, memo: &mut HashMap<Func, BoolExpr>) -> Option<BoolExpr> {
        if f == FALSE {
            return Some(BoolExpr::Const(false));
        }
        if f == TRUE {
            return Some(BoolExpr::Const(true));
        }
        if let Some(e) = memo.get(&f) {
            *budget = budget.checked_sub(e.size())?;
            return Some(e.clone());
        }
        *budget = budget.checked_sub(1)?;
        let n = self.nodes[f as usize];
        let x = BoolExpr::var(&names[n.var]);
        let e = match (n.lo, n.hi) {
            (FALSE, TRUE) => x,
            (TRUE, FALSE) => BoolExpr::not(x),
            (FALSE, hi) => BoolExpr::and(x, self.expr(hi, names, budget, memo)?),
            (lo, FALSE) => BoolExpr::and(BoolExpr::not(x), self.expr(lo, names, budget, memo)?),
            (TRUE, hi) => BoolExpr::or(BoolExpr::not(x), self.expr(hi, names, budget, memo)?),
            (lo, TRUE) => BoolExpr::or(x, self.expr(lo, names, budget, memo)?),
            (lo, hi) => {
                let h = self.expr(hi, names, budget, memo)?;
                let l = self.expr(lo, names, budget, memo)?;
                BoolExpr::or(BoolExpr::and(x.clone(), h), BoolExpr::and(BoolExpr::not(x), l))
            }
        };
        memo.insert(f, e.clone());
        Some(e)
    }
}

impl FuncManager for BddManager {
    fn constant(&mut self, b: bool) -> Func {
        if b {
            TRUE
        } else {
            FALSE
        }
    }

    fn var(&mut self, i: usize) -> Result<Func, Overflow> {
        self.mk(i, FALSE, TRUE)
    }

    fn not(&mut self, f: Func) -> Result<Func, Overflow> {
        self.ite(f, FALSE, TRUE)
    }

    fn and(&mut self, f: Func, g: Func) -> Result<Func, Overflow> {
        self.ite(f, g, FALSE)
    }

    fn or(&mut self, f: Func, g: Func) -> Result<Func, Overflow> {
        self.ite(f, TRUE, g)
    }

    fn cofactor(&mut self, f: Func, var: usize, val: bool) -> Result<Func, Overflow> {
        if f <= TRUE {
            return Ok(f);
        }
        let n = self.nodes[f as usize];
        if n.var > var {
            return Ok(f);
        }
        if n.var == var {
            return Ok(if val { n.hi } else { n.lo });
        }
        let lo = self.cofactor(n.lo, var, val)?;
        let hi = self.cofactor(n.hi, var, val)?;
        self.mk(n.var, lo, hi)
    }

    fn top_var(&self, f: Func) -> Option<usize> {
        (f > TRUE).then(|| self.var_of(f))
    }

    fn as_const(&self, f: Func) -> Option<bool> {
        match f {
            FALSE => Some(false),
            TRUE => Some(true),
            _ => None,
        }
    }

    fn to_expr(&self, f: Func, names: &[String], limit: usize) -> Option<BoolExpr> {
        let mut budget = limit;
        self.expr(f, names, &mut budget, &mut HashMap::new())
    }

    fn cover(&self, f: Func, limit: usize) -> Option<Vec<Vec<(usize, bool)>>> {
        fn walk(m: &BddManager, f: Func, path: &mut Vec<(usize, bool)>, out: &mut Vec<Vec<(usize, bool)>>, limit: usize) -> bool {
            if f == FALSE {
                return true;
            }
            if f == TRUE {
                out.push(path.clone());
                return out.len() <= limit;
            }
            let n = m.nodes[f as usize];
            path.push((n.var, false));
            let ok = walk(m, n.lo, path, out, limit);
            path.pop();
            if !ok {
                return false;
            }
            path.push((n.var, true));
            let ok = walk(m, n.hi, path, out, limit);
            path.pop();
            ok
        }
        let mut out = Vec::new();
        walk(self, f, &mut Vec::new(), &mut out, limit).then_some(out)
    }
}
