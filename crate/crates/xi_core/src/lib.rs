// SPDX-License-Identifier: Apache-2.0
//! The four-valued signal status algebra ξ.
//!
//! A status is one of `⊥` (not yet known), `0` (absent), `1` (present) and
//! `⊤` (contradiction). Two families of operations live here:
//!
//! * the lattice operations `join` (⊞), `meet` (⊡) and `not` (¬), with the
//!   condition law `cond` (◄) and the synchronisation product `gate` (⊠);
//! * truth-order connectives (`and`, `or`, `tnot`) which keep `⊥` as
//!   "undecided" in Kleene style. Control logic in the circuit translation is
//!   built from these.

use std::collections::BTreeMap;
use std::fmt;

mod env;

pub use env::Environment;

/// Status of a signal during one reaction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum XiValue {
    Bottom,
    Absent,
    Present,
    Error,
}

pub use XiValue::{Absent, Bottom, Error, Present};

/// All four statuses, in encoding order.
pub const ALL: [XiValue; 4] = [Bottom, Absent, Present, Error];

/// Boolean pair encoding of a status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoolPair {
    pub def: bool,
    pub val: bool,
}

impl BoolPair {
    pub const fn new(def: bool, val: bool) -> Self {
        BoolPair { def, val }
    }
}

/// Encoding table: 1 ↦ (1,1), 0 ↦ (1,0), ⊤ ↦ (0,1), ⊥ ↦ (0,0).
pub fn encode(x: XiValue) -> BoolPair {
    match x {
        Present => BoolPair::new(true, true),
        Absent => BoolPair::new(true, false),
        Error => BoolPair::new(false, true),
        Bottom => BoolPair::new(false, false),
    }
}

pub fn decode(p: BoolPair) -> XiValue {
    match (p.def, p.val) {
        (true, true) => Present,
        (true, false) => Absent,
        (false, true) => Error,
        (false, false) => Bottom,
    }
}

/// `ξ(b)`: a defined status carrying the boolean `b`.
pub fn xi_of_bool(b: bool) -> XiValue {
    if b {
        Present
    } else {
        Absent
    }
}

/// Truth/falsity coordinates: `t = val`, `f = def xor val`.
/// In these coordinates ⊞ and ⊡ act componentwise.
fn tf(x: XiValue) -> (bool, bool) {
    let p = encode(x);
    (p.val, p.def ^ p.val)
}

fn from_tf(t: bool, f: bool) -> XiValue {
    decode(BoolPair::new(t ^ f, t))
}

/// Lattice order `x ≤ y`.
pub fn leq(x: XiValue, y: XiValue) -> bool {
    let (xt, xf) = tf(x);
    let (yt, yf) = tf(y);
    (!xt || yt) && (!xf || yf)
}

/// ⊞: least upper bound.
pub fn xi_join(x: XiValue, y: XiValue) -> XiValue {
    let (xt, xf) = tf(x);
    let (yt, yf) = tf(y);
    from_tf(xt || yt, xf || yf)
}

/// ⊡: greatest lower bound.
pub fn xi_meet(x: XiValue, y: XiValue) -> XiValue {
    let (xt, xf) = tf(x);
    let (yt, yf) = tf(y);
    from_tf(xt && yt, xf && yf)
}

/// ¬: swaps 1/0 and ⊤/⊥.
pub fn xi_not(x: XiValue) -> XiValue {
    match x {
        Present => Absent,
        Absent => Present,
        Error => Bottom,
        Bottom => Error,
    }
}

/// ◄: keeps `x` when `c` holds, otherwise ⊥.
pub fn xi_cond(x: XiValue, c: bool) -> XiValue {
    if c {
        x
    } else {
        Bottom
    }
}

/// Fault raised when ⊠ is applied to a non synchronisation value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GateFault(pub XiValue);

impl fmt::Display for GateFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gate applied to undefined synchronisation value {}", self.0)
    }
}

impl std::error::Error for GateFault {}

/// ⊠: `(1, x_def·x_val·y_val)`. `y` must be defined.
pub fn xi_gate(x: XiValue, y: XiValue) -> Result<XiValue, GateFault> {
    let yp = encode(y);
    if !yp.def {
        return Err(GateFault(y));
    }
    let xp = encode(x);
    Ok(xi_of_bool(xp.def && xp.val && yp.val))
}

/// The boolean formula behind ⊠, total on all inputs.
pub fn gate_formula(x: BoolPair, y: BoolPair) -> BoolPair {
    BoolPair::new(true, x.def && x.val && y.val)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derived {
    Xor,
    Nor,
    Nand,
    Iff,
    Implies,
}

pub fn xi_derived(kind: Derived, x: XiValue, y: XiValue) -> XiValue {
    match kind {
        Derived::Xor => xi_join(xi_meet(x, xi_not(y)), xi_meet(y, xi_not(x))),
        Derived::Nor => xi_meet(xi_not(x), xi_not(y)),
        Derived::Nand => xi_join(xi_not(x), xi_not(y)),
        Derived::Iff => xi_join(xi_meet(xi_not(x), xi_not(y)), xi_meet(x, y)),
        Derived::Implies => xi_join(xi_not(x), y),
    }
}

/// Truth-order conjunction (Belnap): `(t1∧t2, f1∨f2)`.
/// On {⊥,0,1} this is Kleene's strong conjunction.
pub fn and(x: XiValue, y: XiValue) -> XiValue {
    let (xt, xf) = tf(x);
    let (yt, yf) = tf(y);
    from_tf(xt && yt, xf || yf)
}

/// Truth-order disjunction: `(t1∨t2, f1∧f2)`.
pub fn or(x: XiValue, y: XiValue) -> XiValue {
    let (xt, xf) = tf(x);
    let (yt, yf) = tf(y);
    from_tf(xt || yt, xf && yf)
}

/// Truth-order negation: swaps truth and falsity, fixes ⊥ and ⊤.
pub fn tnot(x: XiValue) -> XiValue {
    let (t, f) = tf(x);
    from_tf(f, t)
}

/// Boolean formulas for each operation over the pair encoding.
///
/// These are the per-bit equations used when a ξ expression is lowered to
/// two boolean equations; tests check them against the tables.
pub mod formula {
    use super::BoolPair;

    pub fn join(x: BoolPair, y: BoolPair) -> BoolPair {
        let def = (x.def && !y.def && !y.val)
            || (y.def && !x.def && !x.val)
            || (x.def && y.def && !(x.val ^ y.val));
        BoolPair::new(def, x.val || y.val)
    }

    pub fn meet(x: BoolPair, y: BoolPair) -> BoolPair {
        let def = (x.def && !y.def && y.val)
            || (y.def && !x.def && x.val)
            || (x.def && y.def && !(x.val ^ y.val));
        BoolPair::new(def, x.val && y.val)
    }

    pub fn not(x: BoolPair) -> BoolPair {
        BoolPair::new(x.def, !x.val)
    }

    pub fn cond(x: BoolPair, c: bool) -> BoolPair {
        BoolPair::new(x.def && c, x.val && c)
    }

    pub fn and(x: BoolPair, y: BoolPair) -> BoolPair {
        let t = x.val && y.val;
        let f = (x.def ^ x.val) || (y.def ^ y.val);
        BoolPair::new(t ^ f, t)
    }

    pub fn or(x: BoolPair, y: BoolPair) -> BoolPair {
        let t = x.val || y.val;
        let f = (x.def ^ x.val) && (y.def ^ y.val);
        BoolPair::new(t ^ f, t)
    }

    pub fn tnot(x: BoolPair) -> BoolPair {
        BoolPair::new(x.def, x.def ^ x.val)
    }
}

impl fmt::Display for XiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Bottom => "⊥",
            Absent => "0",
            Present => "1",
            Error => "⊤",
        };
        f.write_str(s)
    }
}

impl XiValue {
    /// ASCII spelling used in traces and JSON payloads.
    pub fn ascii(self) -> &'static str {
        match self {
            Bottom => "bottom",
            Absent => "absent",
            Present => "present",
            Error => "error",
        }
    }

    pub fn from_ascii(s: &str) -> Option<XiValue> {
        Some(match s {
            "bottom" | "_" | "⊥" => Bottom,
            "absent" | "0" => Absent,
            "present" | "1" => Present,
            "error" | "T" | "⊤" => Error,
            _ => return None,
        })
    }

    pub fn is_defined(self) -> bool {
        matches!(self, Absent | Present)
    }
}

pub use env::{env_cond, env_join, env_meet, env_not, env_preceq};

pub fn env_from_pairs<'a, I>(pairs: I) -> Environment
where
    I: IntoIterator<Item = (&'a str, XiValue)>,
{
    let mut m = BTreeMap::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Environment::from_map(m)
}
