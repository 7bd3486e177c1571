// SPDX-License-Identifier: Apache-2.0
use crate::expr::{def_of, val_of, BoolExpr, XiExpr};
use crate::system::{BooleanSystem, Latch};
use std::collections::BTreeMap;

/// Conventional wire names of the top-level control interface.
pub const CTL_SET: &str = "ctl.SET";
pub const CTL_RESET: &str = "ctl.RESET";
pub const CTL_RTL: &str = "ctl.RTL";
pub const CTL_BOOT: &str = "ctl.boot";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Register {
    pub name: String,
    pub init: bool,
    /// Defined-valued expression; only its `val` part is latched.
    pub next: XiExpr,
}

/// A callee kept as a separately compiled unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RunInstance {
    pub prefix: String,
    pub model: String,
    /// `(formal, actual)` for every interface signal of the callee.
    pub bindings: Vec<(String, String)>,
}

impl RunInstance {
    pub fn set_wire(&self) -> String {
        format!("{}.{CTL_SET}", self.prefix)
    }

    pub fn reset_wire(&self) -> String {
        format!("{}.{CTL_RESET}", self.prefix)
    }

    pub fn rtl_wire(&self) -> String {
        format!("{}.{CTL_RTL}", self.prefix)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Circuit {
    pub name: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    /// Local signal wires, including those of inlined callees.
    pub locals: Vec<String>,
    pub equations: Vec<(String, XiExpr)>,
    pub registers: Vec<Register>,
    pub runs: Vec<RunInstance>,
}

impl Circuit {
    pub fn equation(&self, w: &str) -> Option<&XiExpr> {
        self.equations.iter().find(|(n, _)| n == w).map(|(_, e)| e)
    }

    pub fn register(&self, r: &str) -> Option<&Register> {
        self.registers.iter().find(|x| x.name == r)
    }

    /// Boolean translation: two equations per ξ wire, one latch per register.
    pub fn lower(&self) -> BooleanSystem {
        let mut equations = BTreeMap::new();
        for (w, e) in &self.equations {
            let (d, v) = e.lower();
            equations.insert(def_of(w), d);
            equations.insert(val_of(w), v);
        }
        let mut latches = Vec::new();
        for r in &self.registers {
            let next = format!("{}.next", r.name);
            let (_, v) = r.next.lower();
            equations.insert(next.clone(), v);
            latches.push(Latch { name: r.name.clone(), init: r.init, next });
        }
        BooleanSystem {
            name: self.name.clone(),
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            latches,
            equations,
            runs: self.runs.clone(),
        }
    }
}

/// Helper for tests and callers that want `def`/`val` views of a wire.
pub fn pair(w: &str) -> (BoolExpr, BoolExpr) {
    (BoolExpr::var(def_of(w)), BoolExpr::var(val_of(w)))
}
