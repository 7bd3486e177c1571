// SPDX-License-Identifier: Apache-2.0
//! Linking of two sorted systems without re-sorting from scratch.

use crate::dates::{propagate_dates, Schedule, ScheduleError};
use crate::graph::{build_dependencies, DepGraph};
use circuitgen::{def_of, val_of, BooleanSystem, RunInstance, XiExpr, CTL_BOOT, CTL_RESET, CTL_SET};
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, VecDeque};

/// A system together with its dates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sorted {
    pub system: BooleanSystem,
    pub schedule: Schedule,
}

impl Sorted {
    pub fn new(system: BooleanSystem) -> Result<Sorted, ScheduleError> {
        let schedule = propagate_dates(&build_dependencies(&system))?;
        Ok(Sorted { system, schedule })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinkStats {
    /// Variables whose early date was recomputed.
    pub early_visits: usize,
    /// Variables whose late date was recomputed.
    pub late_visits: usize,
    /// Variables of the merged system.
    pub total: usize,
}

/// ξ wire of a boolean wire name, if it is one half of a pair.
fn xi_wire(b: &str) -> Option<&str> {
    b.strip_suffix("_def").or_else(|| b.strip_suffix("_val"))
}

fn fresh_tilde(base: &str, taken: &dyn Fn(&str) -> bool) -> String {
    (1..).map(|k| format!("{base}~{k}")).find(|n| !taken(&def_of(n)) && !taken(&val_of(n))).unwrap()
}

/// Union of two systems. ξ wires defined on both sides are renamed apart
/// and recombined with the truth-order disjunction. Returns the merged
/// system and the renamings applied to each side.
pub fn merge(a: &BooleanSystem, b: &BooleanSystem) -> (BooleanSystem, BTreeMap<String, String>, BTreeMap<String, String>, Vec<String>) {
    let common: BTreeSet<String> = a
        .equations
        .keys()
        .filter(|k| b.equations.contains_key(*k))
        .filter_map(|k| xi_wire(k).map(String::from))
        .collect();
    let has = |n: &str| a.equations.contains_key(n) || b.equations.contains_key(n);
    let mut ra = BTreeMap::new();
    let mut rb = BTreeMap::new();
    let mut merged_wires = Vec::new();
    let mut taken: BTreeSet<String> = BTreeSet::new();
    for x in &common {
        let is_taken = |n: &str| has(n) || taken.contains(n);
        let n1 = fresh_tilde(x, &is_taken);
        taken.insert(def_of(&n1));
        taken.insert(val_of(&n1));
        let is_taken = |n: &str| has(n) || taken.contains(n);
        let n2 = fresh_tilde(x, &is_taken);
        taken.insert(def_of(&n2));
        taken.insert(val_of(&n2));
        for s in ["_def", "_val"] {
            ra.insert(format!("{x}{s}"), format!("{n1}{s}"));
            rb.insert(format!("{x}{s}"), format!("{n2}{s}"));
        }
        merged_wires.push(x.clone());
    }
    let mut equations = BTreeMap::new();
    for (side, map) in [(a, &ra), (b, &rb)] {
        for (k, e) in &side.equations {
            let k2 = map.get(k).cloned().unwrap_or_else(|| k.clone());
            equations.insert(k2, e.clone());
        }
    }
    for x in &merged_wires {
        let n1 = xi_wire(&ra[&def_of(x)]).unwrap().to_string();
        let n2 = xi_wire(&rb[&def_of(x)]).unwrap().to_string();
        let (d, v) = XiExpr::Or(Box::new(XiExpr::Wire(n1)), Box::new(XiExpr::Wire(n2))).lower();
        equations.insert(def_of(x), d);
        equations.insert(val_of(x), v);
    }
    let mut outputs = a.outputs.clone();
    for o in &b.outputs {
        if !outputs.contains(o) {
            outputs.push(o.clone());
        }
    }
    let mut inputs = Vec::new();
    for i in a.inputs.iter().chain(&b.inputs) {
        if !inputs.contains(i) && !equations.contains_key(&def_of(i)) && !outputs.contains(i) {
            inputs.push(i.clone());
        }
    }
    let mut latches = a.latches.clone();
    latches.extend(b.latches.iter().cloned());
    let mut runs = a.runs.clone();
    runs.extend(b.runs.iter().cloned());
    let sys = BooleanSystem { name: a.name.clone(), inputs, outputs, latches, equations, runs };
    (sys, ra, rb, merged_wires)
}

/// Incremental link. Dates of both sides are reused; only variables reached
/// from the boundary between the two systems are revisited.
pub fn link(a: &Sorted, b: &Sorted) -> Result<(Sorted, LinkStats), ScheduleError> {
    let (sys, ra, rb, merged) = merge(&a.system, &b.system);
    let g = build_dependencies(&sys);
    let mut early: BTreeMap<String, u32> = BTreeMap::new();
    let mut late: BTreeMap<String, u32> = BTreeMap::new();
    for (side, map) in [(a, &ra), (b, &rb)] {
        for (k, e) in &side.schedule.early {
            let k2 = map.get(k).cloned().unwrap_or_else(|| k.clone());
            early.insert(k2.clone(), *e);
            late.insert(k2, side.schedule.late.get(k).copied().unwrap_or(*e));
        }
    }
    for x in g.vars() {
        early.entry(x.clone()).or_insert(0);
        late.entry(x.clone()).or_insert(0);
    }
    // Boundary: wires read on one side and defined on the other, plus the
    // recombined common wires.
    let mut boundary: BTreeSet<String> = BTreeSet::new();
    for (reader, definer) in [(&a.system, &b.system), (&b.system, &a.system)] {
        for e in reader.equations.values() {
            for v in e.var_set() {
                if !reader.equations.contains_key(&v) && definer.equations.contains_key(&v) {
                    boundary.insert(v);
                }
            }
        }
    }
    for x in &merged {
        boundary.insert(def_of(x));
        boundary.insert(val_of(x));
    }
    for (k, _) in ra.iter().chain(rb.iter()) {
        boundary.insert(k.clone());
    }
    let mut stats = LinkStats { total: g.len(), ..Default::default() };
    let limit = g.len() as u32 + 1;

    let mut queue: VecDeque<String> = VecDeque::new();
    let mut queued: BTreeSet<String> = BTreeSet::new();
    for x in &boundary {
        if g.upstream.contains_key(x) {
            for r in g.downstream[x].iter().chain(std::iter::once(x)) {
                if queued.insert(r.clone()) {
                    queue.push_back(r.clone());
                }
            }
        }
    }
    let mut changed_early: BTreeSet<String> = BTreeSet::new();
    while let Some(x) = queue.pop_front() {
        queued.remove(&x);
        stats.early_visits += 1;
        let e = g.upstream[&x].iter().map(|u| early[u] + 1).max().unwrap_or(0);
        if e > limit {
            // dates only grow on a cycle; let the full sort report it
            return propagate_dates(&g).map(|_| unreachable!("cycle expected"));
        }
        if early.get(&x) != Some(&e) {
            early.insert(x.clone(), e);
            changed_early.insert(x.clone());
            for r in &g.downstream[&x] {
                if queued.insert(r.clone()) {
                    queue.push_back(r.clone());
                }
            }
        }
    }

    // Late dates: every variable whose early date or set of readers changed,
    // processed by decreasing early date so readers settle first.
    let mut heap: BinaryHeap<(u32, String)> = BinaryHeap::new();
    let mut in_heap: BTreeSet<String> = BTreeSet::new();
    let seed = |x: &String, heap: &mut BinaryHeap<(u32, String)>, in_heap: &mut BTreeSet<String>| {
        if in_heap.insert(x.clone()) {
            heap.push((early[x], x.clone()));
        }
    };
    for x in changed_early.iter().chain(boundary.iter()) {
        if g.upstream.contains_key(x) {
            seed(x, &mut heap, &mut in_heap);
            for u in &g.upstream[x] {
                seed(u, &mut heap, &mut in_heap);
            }
        }
    }
    while let Some((_, x)) = heap.pop() {
        in_heap.remove(&x);
        stats.late_visits += 1;
        let l = g.downstream[&x].iter().map(|r| late[r] - 1).min().unwrap_or(early[&x]);
        if late.get(&x) != Some(&l) {
            late.insert(x.clone(), l);
            for u in &g.upstream[&x] {
                seed(u, &mut heap, &mut in_heap);
            }
        }
    }
    early.retain(|k, _| g.upstream.contains_key(k));
    late.retain(|k, _| g.upstream.contains_key(k));
    Ok((Sorted { system: sys, schedule: Schedule { early, late } }, stats))
}

/// Renames a separately compiled callee for one `.run` instance. Interface
/// signals become the bound caller wires, control inputs become the
/// instance's SET/RESET wires, every other wire gets the instance prefix.
/// The callee's own boot logic is dropped.
pub fn instantiate(callee: &Sorted, inst: &RunInstance) -> Sorted {
    let p = &inst.prefix;
    let mut map: BTreeMap<String, String> = BTreeMap::new();
    for (f, a) in &inst.bindings {
        map.insert(def_of(f), def_of(a));
        map.insert(val_of(f), val_of(a));
    }
    for (w, target) in [(CTL_SET, inst.set_wire()), (CTL_RESET, inst.reset_wire())] {
        map.insert(def_of(w), def_of(&target));
        map.insert(val_of(w), val_of(&target));
    }
    let rn = |v: &str| map.get(v).cloned().unwrap_or_else(|| format!("{p}.{v}"));
    let dropped: BTreeSet<String> =
        [def_of(CTL_SET), val_of(CTL_SET), def_of(CTL_RESET), val_of(CTL_RESET), format!("{CTL_BOOT}.next")]
            .into_iter()
            .collect();
    let s = &callee.system;
    let mut equations = BTreeMap::new();
    let mut early = BTreeMap::new();
    let mut late = BTreeMap::new();
    for (k, e) in &s.equations {
        if dropped.contains(k) {
            continue;
        }
        let k2 = rn(k);
        equations.insert(k2.clone(), e.rename(&rn));
        if let Some(d) = callee.schedule.early.get(k) {
            early.insert(k2.clone(), *d);
        }
        if let Some(d) = callee.schedule.late.get(k) {
            late.insert(k2, *d);
        }
    }
    let latches = s
        .latches
        .iter()
        .filter(|l| l.name != CTL_BOOT)
        .map(|l| circuitgen::Latch { name: rn(&l.name), init: l.init, next: rn(&l.next) })
        .collect();
    let runs = s
        .runs
        .iter()
        .map(|r| RunInstance {
            prefix: format!("{p}.{}", r.prefix),
            model: r.model.clone(),
            bindings: r.bindings.iter().map(|(f, a)| (f.clone(), xi_wire(&rn(&def_of(a))).unwrap().to_string())).collect(),
        })
        .collect();
    let system = BooleanSystem {
        name: format!("{p}"),
        inputs: Vec::new(),
        outputs: Vec::new(),
        latches,
        equations,
        runs,
    };
    Sorted { system, schedule: Schedule { early, late } }
}

/// Resolves every `.run` instance of `top` by instantiating and linking the
/// named model, repeating for runs introduced by the callees.
pub fn link_runs(
    top: &Sorted,
    lookup: &dyn Fn(&str) -> Option<Sorted>,
) -> Result<(Sorted, LinkStats), LinkError> {
    let mut cur = top.clone();
    let mut total = LinkStats::default();
    while let Some(inst) = cur.system.runs.first().cloned() {
        let callee = lookup(&inst.model).ok_or_else(|| LinkError::MissingModel(inst.model.clone()))?;
        let part = instantiate(&callee, &inst);
        let (mut merged, st) = link(&cur, &part)?;
        merged.system.runs.retain(|r| r.prefix != inst.prefix);
        merged.system.name = top.system.name.clone();
        merged.system.inputs = top.system.inputs.clone();
        merged.system.outputs = top.system.outputs.clone();
        total.early_visits += st.early_visits;
        total.late_visits += st.late_visits;
        total.total = st.total;
        cur = merged;
    }
    Ok((cur, total))
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinkError {
    #[error("no compiled unit for model `{0}`")]
    MissingModel(String),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

/// Pins an evaluation order on the given boolean wires by adding a vacuous
/// dependency `& (prev | !prev)` from each wire to its predecessor. The
/// functions are unchanged; only the dependency graph gains edges.
pub fn totalize(sys: &BooleanSystem, order: &[&str]) -> BooleanSystem {
    use circuitgen::BoolExpr as B;
    let mut out = sys.clone();
    for w in order.windows(2) {
        let (prev, cur) = (w[0], w[1]);
        let e = out.equations[cur].clone();
        let tautology = B::Or(vec![B::var(prev), B::Not(Box::new(B::var(prev)))]);
        out.equations.insert(cur.to_string(), B::And(vec![e, tautology]));
    }
    out
}

/// Full resort of a graph, for comparison with `link`.
pub fn resort(g: &DepGraph) -> Result<Schedule, ScheduleError> {
    propagate_dates(g)
}
