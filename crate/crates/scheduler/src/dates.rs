// SPDX-License-Identifier: Apache-2.0
use crate::graph::DepGraph;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("causality cycle: {}", .0.join(" -> "))]
    CausalityCycle(Vec<String>),
}

/// Early and late evaluation levels of every defined wire.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Schedule {
    pub early: BTreeMap<String, u32>,
    pub late: BTreeMap<String, u32>,
}

impl Schedule {
    /// Defined wires ascending by early date, ties broken by name.
    pub fn evaluation_order(&self) -> Vec<String> {
        let mut v: Vec<(u32, &String)> = self.early.iter().map(|(k, e)| (*e, k)).collect();
        v.sort();
        v.into_iter().map(|(_, k)| k.clone()).collect()
    }

    pub fn levels(&self) -> Vec<BTreeSet<String>> {
        let depth = self.early.values().copied().max().map_or(0, |m| m as usize + 1);
        let mut out = vec![BTreeSet::new(); depth];
        for (k, e) in &self.early {
            out[*e as usize].insert(k.clone());
        }
        out
    }

    /// Checks `early[x] >= early[y] + 1` for every dependency and `early <= late`.
    pub fn check(&self, g: &DepGraph) -> Result<(), String> {
        for (x, ups) in &g.upstream {
            let ex = *self.early.get(x).ok_or_else(|| format!("`{x}` has no date"))?;
            let lx = *self.late.get(x).ok_or_else(|| format!("`{x}` has no late date"))?;
            if ex > lx {
                return Err(format!("`{x}`: early {ex} exceeds late {lx}"));
            }
            if ups.is_empty() && ex != 0 {
                return Err(format!("`{x}` depends only on free variables but has early {ex}"));
            }
            for y in ups {
                let ey = self.early[y];
                if ex < ey + 1 {
                    return Err(format!("`{x}` (early {ex}) is not after `{y}` (early {ey})"));
                }
                if self.late[y] + 1 > lx {
                    return Err(format!("`{y}` (late {}) is not before `{x}` (late {lx})", self.late[y]));
                }
            }
        }
        Ok(())
    }
}

/// Finds one cycle among `nodes` following upstream edges.
pub fn find_cycle(g: &DepGraph, nodes: &BTreeSet<String>) -> Vec<String> {
    let start = nodes.iter().next().cloned().unwrap_or_default();
    let mut path: Vec<String> = vec![start.clone()];
    let mut seen: BTreeMap<String, usize> = BTreeMap::from([(start.clone(), 0)]);
    let mut cur = start;
    loop {
        // every remaining node has an upstream edge inside `nodes`
        let next = g.upstream[&cur].iter().find(|u| nodes.contains(*u)).cloned().unwrap();
        if let Some(&i) = seen.get(&next) {
            let mut cyc: Vec<String> = path[i..].to_vec();
            cyc.reverse();
            return cyc;
        }
        seen.insert(next.clone(), path.len());
        path.push(next.clone());
        cur = next;
    }
}

/// Early dates flow forward from free sources, late dates backward from
/// sinks; a sink's late date is its early date.
pub fn propagate_dates(g: &DepGraph) -> Result<Schedule, ScheduleError> {
    let mut indeg: BTreeMap<&String, usize> = g.upstream.iter().map(|(k, u)| (k, u.len())).collect();
    let mut queue: VecDeque<&String> = indeg.iter().filter(|(_, d)| **d == 0).map(|(k, _)| *k).collect();
    let mut early: BTreeMap<String, u32> = BTreeMap::new();
    let mut topo: Vec<&String> = Vec::with_capacity(g.len());
    for k in g.upstream.keys() {
        early.insert(k.clone(), 0);
    }
    while let Some(x) = queue.pop_front() {
        topo.push(x);
        let ex = early[x];
        for r in &g.downstream[x] {
            let er = early.get_mut(r).unwrap();
            *er = (*er).max(ex + 1);
            let d = indeg.get_mut(r).unwrap();
            *d -= 1;
            if *d == 0 {
                queue.push_back(r);
            }
        }
    }
    if topo.len() < g.len() {
        let left: BTreeSet<String> =
            indeg.iter().filter(|(_, d)| **d > 0).map(|(k, _)| (*k).clone()).collect();
        return Err(ScheduleError::CausalityCycle(find_cycle(g, &left)));
    }
    let mut late: BTreeMap<String, u32> = BTreeMap::new();
    for x in topo.iter().rev() {
        let l = g.downstream[*x].iter().map(|r| late[r] - 1).min().unwrap_or(early[*x]);
        late.insert((*x).clone(), l);
    }
    Ok(Schedule { early, late })
}
