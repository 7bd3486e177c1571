// SPDX-License-Identifier: Apache-2.0
use std::collections::BTreeSet;
use std::fmt;
use xi_core::XiValue;

/// Boolean expression over named boolean wires.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoolExpr {
    Const(bool),
    Var(String),
    Not(Box<BoolExpr>),
    And(Vec<BoolExpr>),
    Or(Vec<BoolExpr>),
}

impl BoolExpr {
    pub fn var(s: impl Into<String>) -> BoolExpr {
        BoolExpr::Var(s.into())
    }

    pub fn not(e: BoolExpr) -> BoolExpr {
        match e {
            BoolExpr::Const(b) => BoolExpr::Const(!b),
            BoolExpr::Not(x) => *x,
            e => BoolExpr::Not(Box::new(e)),
        }
    }

    pub fn and(a: BoolExpr, b: BoolExpr) -> BoolExpr {
        Self::and_all(vec![a, b])
    }

    pub fn or(a: BoolExpr, b: BoolExpr) -> BoolExpr {
        Self::or_all(vec![a, b])
    }

    pub fn and_all(items: Vec<BoolExpr>) -> BoolExpr {
        let mut out: Vec<BoolExpr> = Vec::new();
        for e in items {
            match e {
                BoolExpr::Const(true) => {}
                BoolExpr::Const(false) => return BoolExpr::Const(false),
                BoolExpr::And(xs) => {
                    for x in xs {
                        if !out.contains(&x) {
                            out.push(x)
                        }
                    }
                }
                e => {
                    if !out.contains(&e) {
                        out.push(e)
                    }
                }
            }
        }
        match out.len() {
            0 => BoolExpr::Const(true),
            1 => out.pop().unwrap(),
            _ => BoolExpr::And(out),
        }
    }

    pub fn or_all(items: Vec<BoolExpr>) -> BoolExpr {
        let mut out: Vec<BoolExpr> = Vec::new();
        for e in items {
            match e {
                BoolExpr::Const(false) => {}
                BoolExpr::Const(true) => return BoolExpr::Const(true),
                BoolExpr::Or(xs) => {
                    for x in xs {
                        if !out.contains(&x) {
                            out.push(x)
                        }
                    }
                }
                e => {
                    if !out.contains(&e) {
                        out.push(e)
                    }
                }
            }
        }
        match out.len() {
            0 => BoolExpr::Const(false),
            1 => out.pop().unwrap(),
            _ => BoolExpr::Or(out),
        }
    }

    /// `a xor b` expanded over and/or/not.
    pub fn xor(a: BoolExpr, b: BoolExpr) -> BoolExpr {
        match (&a, &b) {
            (BoolExpr::Const(false), _) => return b,
            (_, BoolExpr::Const(false)) => return a,
            (BoolExpr::Const(true), _) => return BoolExpr::not(b),
            (_, BoolExpr::Const(true)) => return BoolExpr::not(a),
            _ => {}
        }
        if a == b {
            return BoolExpr::Const(false);
        }
        BoolExpr::or(
            BoolExpr::and(a.clone(), BoolExpr::not(b.clone())),
            BoolExpr::and(BoolExpr::not(a), b),
        )
    }

    pub fn eval(&self, env: &dyn Fn(&str) -> bool) -> bool {
        match self {
            BoolExpr::Const(b) => *b,
            BoolExpr::Var(v) => env(v),
            BoolExpr::Not(e) => !e.eval(env),
            BoolExpr::And(xs) => xs.iter().all(|x| x.eval(env)),
            BoolExpr::Or(xs) => xs.iter().any(|x| x.eval(env)),
        }
    }

    pub fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            BoolExpr::Const(_) => {}
            BoolExpr::Var(v) => {
                out.insert(v.clone());
            }
            BoolExpr::Not(e) => e.vars(out),
            BoolExpr::And(xs) | BoolExpr::Or(xs) => xs.iter().for_each(|x| x.vars(out)),
        }
    }

    pub fn var_set(&self) -> BTreeSet<String> {
        let mut s = BTreeSet::new();
        self.vars(&mut s);
        s
    }

    /// Replaces variables; `f` returns `None` to keep a variable.
    pub fn substitute(&self, f: &dyn Fn(&str) -> Option<BoolExpr>) -> BoolExpr {
        match self {
            BoolExpr::Const(_) => self.clone(),
            BoolExpr::Var(v) => f(v).unwrap_or_else(|| self.clone()),
            BoolExpr::Not(e) => BoolExpr::not(e.substitute(f)),
            BoolExpr::And(xs) => BoolExpr::and_all(xs.iter().map(|x| x.substitute(f)).collect()),
            BoolExpr::Or(xs) => BoolExpr::or_all(xs.iter().map(|x| x.substitute(f)).collect()),
        }
    }

    pub fn rename(&self, f: &dyn Fn(&str) -> String) -> BoolExpr {
        self.substitute(&|v| Some(BoolExpr::Var(f(v))))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            BoolExpr::Const(_) | BoolExpr::Var(_) => 1,
            BoolExpr::Not(e) => 1 + e.size(),
            BoolExpr::And(xs) | BoolExpr::Or(xs) => 1 + xs.iter().map(|x| x.size()).sum::<usize>(),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        match self {
            BoolExpr::Const(b) => write!(f, "{}", *b as u8),
            BoolExpr::Var(v) => f.write_str(v),
            BoolExpr::And(xs) if xs.is_empty() => f.write_str("1"),
            BoolExpr::Or(xs) if xs.is_empty() => f.write_str("0"),
            BoolExpr::Not(e) => {
                f.write_str("!")?;
                e.fmt_prec(f, 3)
            }
            BoolExpr::And(xs) => {
                if prec > 2 {
                    f.write_str("(")?;
                }
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    x.fmt_prec(f, 3)?;
                }
                if prec > 2 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            BoolExpr::Or(xs) => {
                if prec > 1 {
                    f.write_str("(")?;
                }
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    x.fmt_prec(f, 2)?;
                }
                if prec > 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for BoolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// ξ-valued expression. `Wire` names a ξ wire (two boolean wires
/// `<w>_def`, `<w>_val`); `Reg` names a boolean register read as a defined
/// value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum XiExpr {
    Const(XiValue),
    Wire(String),
    Reg(String),
    Join(Box<XiExpr>, Box<XiExpr>),
    Meet(Box<XiExpr>, Box<XiExpr>),
    Not(Box<XiExpr>),
    Cond(Box<XiExpr>, BoolExpr),
    Gate(Box<XiExpr>, Box<XiExpr>),
    OfBool(BoolExpr),
    /// Truth-order connectives.
    And(Box<XiExpr>, Box<XiExpr>),
    Or(Box<XiExpr>, Box<XiExpr>),
    TNot(Box<XiExpr>),
}

pub fn def_of(w: &str) -> String {
    format!("{w}_def")
}

pub fn val_of(w: &str) -> String {
    format!("{w}_val")
}

impl XiExpr {
    pub fn wire(w: impl Into<String>) -> XiExpr {
        XiExpr::Wire(w.into())
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, XiExpr::Const(_) | XiExpr::Wire(_) | XiExpr::Reg(_))
    }

    /// Evaluation over the tables.
    pub fn eval(&self, wire: &dyn Fn(&str) -> XiValue, bit: &dyn Fn(&str) -> bool) -> XiValue {
        use xi_core::*;
        let ev = |e: &XiExpr| e.eval(wire, bit);
        match self {
            XiExpr::Const(v) => *v,
            XiExpr::Wire(w) => wire(w),
            XiExpr::Reg(r) => xi_of_bool(bit(r)),
            XiExpr::Join(a, b) => xi_join(ev(a), ev(b)),
            XiExpr::Meet(a, b) => xi_meet(ev(a), ev(b)),
            XiExpr::Not(a) => xi_not(ev(a)),
            XiExpr::Cond(a, c) => xi_cond(ev(a), c.eval(bit)),
            XiExpr::Gate(a, b) => {
                decode(gate_formula(encode(ev(a)), encode(ev(b))))
            }
            XiExpr::OfBool(b) => xi_of_bool(b.eval(bit)),
            XiExpr::And(a, b) => and(ev(a), ev(b)),
            XiExpr::Or(a, b) => or(ev(a), ev(b)),
            XiExpr::TNot(a) => tnot(ev(a)),
        }
    }

    /// Two-for-one lowering: `(def, val)` boolean expressions.
    pub fn lower(&self) -> (BoolExpr, BoolExpr) {
        use BoolExpr as B;
        match self {
            XiExpr::Const(v) => {
                let p = xi_core::encode(*v);
                (B::Const(p.def), B::Const(p.val))
            }
            XiExpr::Wire(w) => (B::var(def_of(w)), B::var(val_of(w))),
            XiExpr::Reg(r) => (B::Const(true), B::var(r.clone())),
            XiExpr::Join(a, b) => {
                let ((xd, xv), (yd, yv)) = (a.lower(), b.lower());
                let def = B::or_all(vec![
                    B::and_all(vec![xd.clone(), B::not(yd.clone()), B::not(yv.clone())]),
                    B::and_all(vec![yd.clone(), B::not(xd.clone()), B::not(xv.clone())]),
                    B::and_all(vec![xd, yd, B::not(B::xor(xv.clone(), yv.clone()))]),
                ]);
                (def, B::or(xv, yv))
            }
            XiExpr::Meet(a, b) => {
                let ((xd, xv), (yd, yv)) = (a.lower(), b.lower());
                let def = B::or_all(vec![
                    B::and_all(vec![xd.clone(), B::not(yd.clone()), yv.clone()]),
                    B::and_all(vec![yd.clone(), B::not(xd.clone()), xv.clone()]),
                    B::and_all(vec![xd, yd, B::not(B::xor(xv.clone(), yv.clone()))]),
                ]);
                (def, B::and(xv, yv))
            }
            XiExpr::Not(a) => {
                let (d, v) = a.lower();
                (d, B::not(v))
            }
            XiExpr::Cond(a, c) => {
                let (d, v) = a.lower();
                (B::and(d, c.clone()), B::and(v, c.clone()))
            }
            XiExpr::Gate(a, b) => {
                let ((xd, xv), (_, yv)) = (a.lower(), b.lower());
                (B::Const(true), B::and_all(vec![xd, xv, yv]))
            }
            XiExpr::OfBool(b) => (B::Const(true), b.clone()),
            XiExpr::And(a, b) => {
                let ((xd, xv), (yd, yv)) = (a.lower(), b.lower());
                let t = B::and(xv.clone(), yv.clone());
                let f = B::or(B::xor(xd, xv), B::xor(yd, yv));
                (B::xor(t.clone(), f), t)
            }
            XiExpr::Or(a, b) => {
                let ((xd, xv), (yd, yv)) = (a.lower(), b.lower());
                let t = B::or(xv.clone(), yv.clone());
                let f = B::and(B::xor(xd, xv), B::xor(yd, yv));
                (B::xor(t.clone(), f), t)
            }
            XiExpr::TNot(a) => {
                let (d, v) = a.lower();
                (d.clone(), B::xor(d, v))
            }
        }
    }
}
