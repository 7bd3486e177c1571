// SPDX-License-Identifier: Apache-2.0
//! Algebraic normal form: exclusive-or of monomials.

use crate::canon::{Func, FuncManager, Overflow};
use circuitgen::BoolExpr;
use std::collections::{BTreeSet, HashMap};

/// Sorted variable indices; the empty monomial is the constant 1.
type Mono = Vec<u32>;
/// Sorted, duplicate-free monomials.
type Poly = Vec<Mono>;

pub struct AnfManager {
    polys: Vec<Poly>,
    unique: HashMap<Poly, Func>,
    terms: usize,
    budget: usize,
}

impl AnfManager {
    pub fn new(budget: usize) -> Self {
        let mut m = AnfManager { polys: Vec::new(), unique: HashMap::new(), terms: 0, budget };
        m.intern(Vec::new()).unwrap();
        m.intern(vec![Vec::new()]).unwrap();
        m
    }

    fn intern(&mut self, p: Poly) -> Result<Func, Overflow> {
        if let Some(&f) = self.unique.get(&p) {
            return Ok(f);
        }
        self.terms += p.len().max(1);
        if self.terms > self.budget {
            return Err(Overflow);
        }
        let f = self.polys.len() as Func;
        self.unique.insert(p.clone(), f);
        self.polys.push(p);
        Ok(f)
    }

    fn from_set(&mut self, s: BTreeSet<Mono>) -> Result<Func, Overflow> {
        self.intern(s.into_iter().collect())
    }

    fn toggle(s: &mut BTreeSet<Mono>, m: Mono) {
        if !s.remove(&m) {
            s.insert(m);
        }
    }

    fn xor(&mut self, f: Func, g: Func) -> Result<Func, Overflow> {
        let mut s: BTreeSet<Mono> = self.polys[f as usize].iter().cloned().collect();
        for m in self.polys[g as usize].clone() {
            Self::toggle(&mut s, m);
        }
        self.from_set(s)
    }

    fn mul(a: &Mono, b: &Mono) -> Mono {
        let mut m: Vec<u32> = a.iter().chain(b).copied().collect();
        m.sort_unstable();
        m.dedup();
        m
    }
}

impl FuncManager for AnfManager {
    fn constant(&mut self, b: bool) -> Func {
        b as Func
    }

    fn var(&mut self, i: usize) -> Result<Func, Overflow> {
        self.intern(vec![vec![i as u32]])
    }

    fn not(&mut self, f: Func) -> Result<Func, Overflow> {
        self.xor(f, 1)
    }

    fn and(&mut self, f: Func, g: Func) -> Result<Func, Overflow> {
        let (a, b) = (self.polys[f as usize].clone(), self.polys[g as usize].clone());
        if a.len() * b.len() > self.budget {
            return Err(Overflow);
        }
        let mut s = BTreeSet::new();
        for x in &a {
            for y in &b {
                Self::toggle(&mut s, Self::mul(x, y));
            }
        }
        self.from_set(s)
    }

    fn or(&mut self, f: Func, g: Func) -> Result<Func, Overflow> {
        let x = self.xor(f, g)?;
        let p = self.and(f, g)?;
        self.xor(x, p)
    }

    fn cofactor(&mut self, f: Func, var: usize, val: bool) -> Result<Func, Overflow> {
        let v = var as u32;
        let mut s = BTreeSet::new();
        for m in self.polys[f as usize].clone() {
            if m.binary_search(&v).is_ok() {
                if val {
                    Self::toggle(&mut s, m.into_iter().filter(|x| *x != v).collect());
                }
            } else {
                Self::toggle(&mut s, m);
            }
        }
        self.from_set(s)
    }

    fn top_var(&self, f: Func) -> Option<usize> {
        self.polys[f as usize].iter().filter_map(|m| m.first()).min().map(|v| *v as usize)
    }

    fn as_const(&self, f: Func) -> Option<bool> {
        match f {
            0 => Some(false),
            1 => Some(true),
            _ => None,
        }
    }

    fn to_expr(&self, f: Func, names: &[String], limit: usize) -> Option<BoolExpr> {
        let mut acc = BoolExpr::Const(false);
        for m in &self.polys[f as usize] {
            let term = BoolExpr::and_all(m.iter().map(|v| BoolExpr::var(&names[*v as usize])).collect());
            acc = BoolExpr::xor(acc, term);
            if acc.size() > limit {
                return None;
            }
        }
        Some(acc)
    }

    fn cover(&self, f: Func, limit: usize) -> Option<Vec<Vec<(usize, bool)>>> {
        // Shannon expansion over the support; every full path to 1 is a cube
        let support: BTreeSet<u32> = self.polys[f as usize].iter().flatten().copied().collect();
        let vars: Vec<u32> = support.into_iter().collect();
        if vars.len() > 20 {
            return None;
        }
        let mut out = Vec::new();
        for bits in 0u32..(1 << vars.len()) {
            let on = |v: u32| {
                let k = vars.iter().position(|x| *x == v).unwrap();
                bits >> k & 1 == 1
            };
            let val = self.polys[f as usize].iter().filter(|m| m.iter().all(|v| on(*v))).count() % 2 == 1;
            if val {
                out.push(vars.iter().enumerate().map(|(k, v)| (*v as usize, bits >> k & 1 == 1)).collect());
                if out.len() > limit {
                    return None;
                }
            }
        }
        Some(out)
    }
}
