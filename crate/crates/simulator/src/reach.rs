// SPDX-License-Identifier: Apache-2.0
//! Breadth-first reachability over latch valuations.

use crate::{SimError, Simulator};
use std::collections::{BTreeMap, HashMap};
use xi_core::XiValue;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The alarm is never raised; `states` valuations were reachable.
    Safe { states: usize },
    /// Shortest input sequence raising the alarm at its last instant.
    Counterexample { inputs: Vec<BTreeMap<String, bool>> },
    StateBudgetExceeded { explored: usize },
}

/// Explores every input vector from every reachable state. Within a depth,
/// vectors are tried in lexicographic order with the first declared input
/// as the most significant bit. A declared `tick` input is not enumerated.
pub fn reach_check(sim: &Simulator, alarm: &str, max_states: usize) -> Result<Verdict, SimError> {
    if !sim.outputs.iter().any(|o| o == alarm) {
        return Err(SimError::UnknownOutput(alarm.to_string()));
    }
    let free: Vec<usize> = (0..sim.inputs.len()).filter(|&i| sim.inputs[i] != "tick").collect();
    let n_vec = 1u64 << free.len();
    let mut index: HashMap<Vec<bool>, usize> = HashMap::new();
    // (state, parent, vector that led here)
    let mut nodes: Vec<(Vec<bool>, usize, u64)> = Vec::new();
    let init = sim.initial_state().latches;
    index.insert(init.clone(), 0);
    nodes.push((init, usize::MAX, 0));
    let mut scratch = Vec::new();
    let mut bits = vec![false; sim.inputs.len()];
    let mut head = 0;
    while head < nodes.len() {
        let st = nodes[head].0.clone();
        for v in 0..n_vec {
            for (k, &i) in free.iter().enumerate() {
                bits[i] = (v >> (free.len() - 1 - k)) & 1 == 1;
            }
            let next = sim.eval_raw(&st, &bits, &mut scratch);
            if sim.output_value(&scratch, alarm) == XiValue::Present {
                let mut path = vec![v];
                let mut at = head;
                while nodes[at].1 != usize::MAX {
                    path.push(nodes[at].2);
                    at = nodes[at].1;
                }
                path.reverse();
                let inputs = path
                    .into_iter()
                    .map(|v| {
                        free.iter()
                            .enumerate()
                            .map(|(k, &i)| (sim.inputs[i].clone(), (v >> (free.len() - 1 - k)) & 1 == 1))
                            .collect()
                    })
                    .collect();
                return Ok(Verdict::Counterexample { inputs });
            }
            if !index.contains_key(&next) {
                if nodes.len() >= max_states {
                    return Ok(Verdict::StateBudgetExceeded { explored: nodes.len() });
                }
                index.insert(next.clone(), nodes.len());
                nodes.push((next, head, v));
            }
        }
        head += 1;
    }
    Ok(Verdict::Safe { states: nodes.len() })
}
