// SPDX-License-Identifier: Apache-2.0
use circuitgen::BooleanSystem;
use std::collections::{BTreeMap, BTreeSet};

/// Dependencies between defined boolean wires. Free variables (inputs,
/// latch values, externs, constants) do not appear.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DepGraph {
    pub upstream: BTreeMap<String, BTreeSet<String>>,
    pub downstream: BTreeMap<String, BTreeSet<String>>,
}

impl DepGraph {
    pub fn vars(&self) -> impl Iterator<Item = &String> {
        self.upstream.keys()
    }

    pub fn add_var(&mut self, v: &str) {
        self.upstream.entry(v.to_string()).or_default();
        self.downstream.entry(v.to_string()).or_default();
    }

    pub fn add_edge(&mut self, reader: &str, dep: &str) {
        self.add_var(reader);
        self.add_var(dep);
        self.upstream.get_mut(reader).unwrap().insert(dep.to_string());
        self.downstream.get_mut(dep).unwrap().insert(reader.to_string());
    }

    pub fn len(&self) -> usize {
        self.upstream.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upstream.is_empty()
    }
}

/// Builds the dependency forest of a system. A latch's current value is a
/// free source and its next-value wire an ordinary sink, so latches cut
/// every loop through time.
pub fn build_dependencies(sys: &BooleanSystem) -> DepGraph {
    let mut g = DepGraph::default();
    for (w, e) in &sys.equations {
        g.add_var(w);
        for v in e.var_set() {
            if sys.equations.contains_key(&v) {
                g.add_edge(w, &v);
            }
        }
    }
    g
}
