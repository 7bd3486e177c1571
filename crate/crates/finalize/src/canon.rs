// SPDX-License-Identifier: Apache-2.0
//! Canonical representations of boolean functions.
//!
//! Both implementations hash-cons their nodes, so two handles are equal
//! exactly when the functions are.

use circuitgen::BoolExpr;
use std::collections::HashMap;

pub type Func = u32;

/// Raised when a manager outgrows its node budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overflow;

pub trait FuncManager {
    fn constant(&mut self, b: bool) -> Func;
    fn var(&mut self, i: usize) -> Result<Func, Overflow>;
    fn not(&mut self, f: Func) -> Result<Func, Overflow>;
    fn and(&mut self, f: Func, g: Func) -> Result<Func, Overflow>;
    fn or(&mut self, f: Func, g: Func) -> Result<Func, Overflow>;
    fn cofactor(&mut self, f: Func, var: usize, val: bool) -> Result<Func, Overflow>;
    /// Smallest variable index in the support.
    fn top_var(&self, f: Func) -> Option<usize>;
    fn as_const(&self, f: Func) -> Option<bool>;
    /// Expression over `names[i]` for variable `i`, or `None` past `limit` nodes.
    fn to_expr(&self, f: Func, names: &[String], limit: usize) -> Option<BoolExpr>;
    /// Sum-of-products cover: each cube lists `(var, polarity)`.
    fn cover(&self, f: Func, limit: usize) -> Option<Vec<Vec<(usize, bool)>>>;
}

/// A canonical form family, selectable by name.
pub trait Canonicalizer: Send + Sync {
    fn name(&self) -> &'static str;
    fn manager(&self, budget: usize) -> Box<dyn FuncManager>;
}

pub struct Bdd;
pub struct Anf;

impl Canonicalizer for Bdd {
    fn name(&self) -> &'static str {
        "bdd"
    }
    fn manager(&self, budget: usize) -> Box<dyn FuncManager> {
        Box::new(crate::bdd::BddManager::new(budget))
    }
}

impl Canonicalizer for Anf {
    fn name(&self) -> &'static str {
        "anf"
    }
    fn manager(&self, budget: usize) -> Box<dyn FuncManager> {
        Box::new(crate::anf::AnfManager::new(budget))
    }
}

pub fn canonicalizers() -> Vec<Box<dyn Canonicalizer>> {
    vec![Box::new(Bdd), Box::new(Anf)]
}

pub fn canonicalizer(name: &str) -> Option<Box<dyn Canonicalizer>> {
    canonicalizers().into_iter().find(|c| c.name() == name)
}

/// Builds `e` with `var` mapping its variables to functions.
pub fn build(
    m: &mut dyn FuncManager,
    e: &BoolExpr,
    var: &mut dyn FnMut(&mut dyn FuncManager, &str) -> Result<Func, Overflow>,
) -> Result<Func, Overflow> {
    Ok(match e {
        BoolExpr::Const(b) => m.constant(*b),
        BoolExpr::Var(v) => var(m, v)?,
        BoolExpr::Not(x) => {
            let f = build(m, x, var)?;
            m.not(f)?
        }
        BoolExpr::And(xs) => {
            let mut acc = m.constant(true);
            for x in xs {
                let f = build(m, x, var)?;
                acc = m.and(acc, f)?;
            }
            acc
        }
        BoolExpr::Or(xs) => {
            let mut acc = m.constant(false);
            for x in xs {
                let f = build(m, x, var)?;
                acc = m.or(acc, f)?;
            }
            acc
        }
    })
}

/// `f` simplified on the care set `c`: agrees with `f` wherever `c` holds
/// and never depends on a variable `f` ignores.
pub fn restrict(m: &mut dyn FuncManager, f: Func, c: Func, memo: &mut HashMap<(Func, Func), Func>) -> Result<Func, Overflow> {
    if m.as_const(c) == Some(true) || m.as_const(f).is_some() {
        return Ok(f);
    }
    if m.as_const(c) == Some(false) {
        return Ok(m.constant(false));
    }
    if let Some(r) = memo.get(&(f, c)) {
        return Ok(*r);
    }
    let x = m.top_var(c).unwrap();
    let (c0, c1) = (m.cofactor(c, x, false)?, m.cofactor(c, x, true)?);
    let (f0, f1) = (m.cofactor(f, x, false)?, m.cofactor(f, x, true)?);
    let r = if m.as_const(c1) == Some(false) {
        restrict(m, f0, c0, memo)?
    } else if m.as_const(c0) == Some(false) {
        restrict(m, f1, c1, memo)?
    } else if f0 == f1 {
        let cc = m.or(c0, c1)?;
        restrict(m, f, cc, memo)?
    } else {
        let r0 = restrict(m, f0, c0, memo)?;
        let r1 = restrict(m, f1, c1, memo)?;
        let xv = m.var(x)?;
        let nx = m.not(xv)?;
        let a = m.and(xv, r1)?;
        let b = m.and(nx, r0)?;
        m.or(a, b)?
    };
    memo.insert((f, c), r);
    Ok(r)
}
