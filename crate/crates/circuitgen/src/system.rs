// SPDX-License-Identifier: Apache-2.0
use crate::circuit::{RunInstance, CTL_RTL};
use crate::expr::{def_of, val_of, BoolExpr};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Latch {
    /// Name of the current-value variable.
    pub name: String,
    pub init: bool,
    /// Boolean wire carrying the next value.
    pub next: String,
}

/// Paired boolean equation system.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BooleanSystem {
    pub name: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub latches: Vec<Latch>,
    pub equations: BTreeMap<String, BoolExpr>,
    pub runs: Vec<RunInstance>,
}

impl BooleanSystem {
    pub fn input_wires(&self) -> BTreeSet<String> {
        self.inputs.iter().flat_map(|s| [def_of(s), val_of(s)]).collect()
    }

    /// Wires left to separately compiled callees: their control return and
    /// every signal they are bound to.
    pub fn extern_wires(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for r in &self.runs {
            let rtl = r.rtl_wire();
            out.insert(def_of(&rtl));
            out.insert(val_of(&rtl));
            for (_, a) in &r.bindings {
                out.insert(def_of(a));
                out.insert(val_of(a));
            }
        }
        out.retain(|w| !self.equations.contains_key(w));
        out
    }

    /// Variables that are never computed by an equation.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut s = self.input_wires();
        s.extend(self.latches.iter().map(|l| l.name.clone()));
        s.extend(self.extern_wires());
        s
    }

    /// Referenced variables that are neither defined nor free.
    pub fn dangling(&self) -> BTreeSet<String> {
        let free = self.free_vars();
        let mut refs = BTreeSet::new();
        for e in self.equations.values() {
            e.vars(&mut refs);
        }
        for l in &self.latches {
            refs.insert(l.next.clone());
        }
        for o in &self.outputs {
            if !self.runs.is_empty() {
                continue;
            }
            refs.insert(def_of(o));
            refs.insert(val_of(o));
        }
        refs.into_iter()
            .filter(|v| !self.equations.contains_key(v) && !free.contains(v))
            .collect()
    }

    pub fn is_finalized(&self) -> bool {
        let defs: BTreeSet<String> = self.inputs.iter().map(|s| def_of(s)).collect();
        !self.equations.values().any(|e| e.var_set().iter().any(|v| defs.contains(v)))
    }

    pub fn rtl(&self) -> Option<(&BoolExpr, &BoolExpr)> {
        Some((self.equations.get(&def_of(CTL_RTL))?, self.equations.get(&val_of(CTL_RTL))?))
    }

    /// Number of latches.
    pub fn register_count(&self) -> usize {
        self.latches.len()
    }
}
