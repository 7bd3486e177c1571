// SPDX-License-Identifier: Apache-2.0
//! Finalization: inputs become defined, every equation is simplified
//! through a canonical form, dead logic is removed and dates recomputed.
//!
//! Simplification may use the set of reachable latch valuations as a care
//! set: equations only need to be right in states the system can reach.

pub mod anf;
pub mod bdd;
pub mod blif;
pub mod canon;

pub use blif::{export_blif, read_blif};
pub use canon::{canonicalizer, canonicalizers, Anf, Bdd, Canonicalizer};

use canon::{build, restrict, Func, FuncManager, Overflow};
use circuitgen::{def_of, val_of, BoolExpr, BooleanSystem, CTL_RTL};
use scheduler::{schedule, Schedule};
use simulator::Simulator;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

#[derive(Clone, Debug)]
pub struct FinalizeOptions {
    /// Largest reachable state set used as care set.
    pub reach_states: usize,
    /// Reachability is skipped above this many enumerated inputs.
    pub reach_inputs: usize,
    /// Node budget of the canonical form manager.
    pub nodes: usize,
    /// Passes before giving up on a fixpoint.
    pub passes: usize,
}

impl Default for FinalizeOptions {
    fn default() -> Self {
        FinalizeOptions { reach_states: 200_000, reach_inputs: 12, nodes: 2_000_000, passes: 4 }
    }
}

/// Finalizes with the default options.
pub fn finalize(sys: &BooleanSystem, canon: &dyn Canonicalizer) -> (BooleanSystem, Schedule) {
    finalize_with(sys, canon, &FinalizeOptions::default())
}

/// Applies simplification passes until the system no longer changes.
pub fn finalize_with(sys: &BooleanSystem, canon: &dyn Canonicalizer, opts: &FinalizeOptions) -> (BooleanSystem, Schedule) {
    let mut cur = define_inputs(sys);
    for _ in 0..opts.passes.max(1) {
        let next = pass(&cur, canon, opts);
        if next == cur {
            break;
        }
        cur = next;
    }
    let sched = schedule(&cur).expect("simplification cannot create cycles");
    (cur, sched)
}

/// Substitutes `1` for every input `_def` wire.
pub fn define_inputs(sys: &BooleanSystem) -> BooleanSystem {
    let defs: HashSet<String> = sys.inputs.iter().map(|i| def_of(i)).collect();
    let mut out = sys.clone();
    for e in out.equations.values_mut() {
        *e = e.substitute(&|v| defs.contains(v).then_some(BoolExpr::Const(true)));
    }
    out
}

/// Free variables in canonical order: input values in declaration order,
/// latches in declaration order, then the rest by name.
fn variable_order(sys: &BooleanSystem) -> Vec<String> {
    let mut vars: Vec<String> = sys.inputs.iter().map(|i| val_of(i)).collect();
    vars.extend(sys.latches.iter().map(|l| l.name.clone()));
    let mut rest: BTreeSet<String> = BTreeSet::new();
    for e in sys.equations.values() {
        for v in e.var_set() {
            if !sys.equations.contains_key(&v) && !vars.contains(&v) {
                rest.insert(v);
            }
        }
    }
    vars.extend(rest);
    vars
}

/// Reachable latch valuations under defined inputs, if few enough.
pub fn reachable_states(sys: &BooleanSystem, opts: &FinalizeOptions) -> Option<Vec<Vec<bool>>> {
    if !sys.runs.is_empty() {
        return None;
    }
    let free: Vec<usize> = (0..sys.inputs.len()).filter(|&i| sys.inputs[i] != "tick").collect();
    if free.len() > opts.reach_inputs {
        return None;
    }
    let sched = schedule(sys).ok()?;
    let sim = Simulator::new(sys, &sched).ok()?;
    let init = sim.initial_state().latches;
    let mut seen: HashSet<Vec<bool>> = HashSet::from([init.clone()]);
    let mut order = vec![init.clone()];
    let mut queue = VecDeque::from([init]);
    let mut bits = vec![true; sys.inputs.len()];
    while let Some(st) = queue.pop_front() {
        for v in 0u64..(1 << free.len()) {
            for (k, &i) in free.iter().enumerate() {
                bits[i] = v >> k & 1 == 1;
            }
            let n = sim.next_state(&st, &bits);
            if seen.insert(n.clone()) {
                if seen.len() > opts.reach_states {
                    return None;
                }
                order.push(n.clone());
                queue.push_back(n);
            }
        }
    }
    Some(order)
}

fn care_set(m: &mut dyn FuncManager, states: &[Vec<bool>], first_latch: usize) -> Result<Func, Overflow> {
    let mut c = m.constant(false);
    for st in states {
        let mut cube = m.constant(true);
        for (k, b) in st.iter().enumerate() {
            let x = m.var(first_latch + k)?;
            let lit = if *b { x } else { m.not(x)? };
            cube = m.and(cube, lit)?;
        }
        c = m.or(c, cube)?;
    }
    Ok(c)
}

/// Functions of every defined wire over the free variables, simplified on
/// the care set.
fn global_functions(
    sys: &BooleanSystem,
    order: &[String],
    vars: &[String],
    m: &mut dyn FuncManager,
    opts: &FinalizeOptions,
) -> Result<HashMap<String, Func>, Overflow> {
    let index: HashMap<&str, usize> = vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let care = match reachable_states(sys, opts) {
        Some(states) => Some(care_set(m, &states, sys.inputs.len())?),
        None => None,
    };
    let mut f: HashMap<String, Func> = HashMap::new();
    for w in order {
        let e = &sys.equations[w];
        let g = build(m, e, &mut |m, v| match f.get(v) {
            Some(x) => Ok(*x),
            None => m.var(index[v]),
        })?;
        f.insert(w.clone(), g);
    }
    let mut out = HashMap::new();
    let mut memo = HashMap::new();
    for w in order {
        let g = f[w];
        let r = match care {
            Some(c) => {
                let gc = m.and(g, c)?;
                restrict(m, gc, c, &mut memo)?
            }
            None => g,
        };
        out.insert(w.clone(), r);
    }
    Ok(out)
}

fn pass(sys: &BooleanSystem, canon: &dyn Canonicalizer, opts: &FinalizeOptions) -> BooleanSystem {
    let Ok(sched) = schedule(sys) else { return sys.clone() };
    let order: Vec<String> = sched.evaluation_order().into_iter().filter(|w| sys.equations.contains_key(w)).collect();
    let vars = variable_order(sys);
    let mut m = canon.manager(opts.nodes);
    let global = global_functions(sys, &order, &vars, m.as_mut(), opts).ok();
    let mut consts: HashMap<String, bool> = HashMap::new();
    let mut equations = BTreeMap::new();
    for w in &order {
        let local = sys.equations[w].substitute(&|v| consts.get(v).map(|b| BoolExpr::Const(*b)));
        let chosen = match global.as_ref().map(|g| g[w]) {
            Some(g) => match m.as_const(g) {
                Some(b) => BoolExpr::Const(b),
                None => match m.to_expr(g, &vars, local.size()) {
                    Some(e) if e.size() <= local.size() => e,
                    _ => local,
                },
            },
            None => local,
        };
        if let BoolExpr::Const(b) = chosen {
            consts.insert(w.clone(), b);
        }
        equations.insert(w.clone(), chosen);
    }
    prune(&BooleanSystem { equations, ..sys.clone() })
}

/// Keeps the cone of influence of outputs, the control return and the
/// latches they read.
pub fn prune(sys: &BooleanSystem) -> BooleanSystem {
    let mut live: HashSet<String> = HashSet::new();
    let mut work: Vec<String> = Vec::new();
    for o in &sys.outputs {
        work.push(def_of(o));
        work.push(val_of(o));
    }
    work.push(def_of(CTL_RTL));
    work.push(val_of(CTL_RTL));
    for r in &sys.runs {
        for (_, a) in &r.bindings {
            work.push(def_of(a));
            work.push(val_of(a));
        }
        work.push(def_of(&r.set_wire()));
        work.push(val_of(&r.set_wire()));
        work.push(def_of(&r.reset_wire()));
        work.push(val_of(&r.reset_wire()));
    }
    let latch_next: HashMap<&str, &str> = sys.latches.iter().map(|l| (l.name.as_str(), l.next.as_str())).collect();
    while let Some(w) = work.pop() {
        if !live.insert(w.clone()) {
            continue;
        }
        if let Some(e) = sys.equations.get(&w) {
            work.extend(e.var_set());
        }
        if let Some(n) = latch_next.get(w.as_str()) {
            work.push(n.to_string());
        }
    }
    let mut out = sys.clone();
    out.equations.retain(|w, _| live.contains(w));
    out.latches.retain(|l| live.contains(&l.name));
    out
}
