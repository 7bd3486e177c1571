// SPDX-License-Identifier: Apache-2.0
//! Executes a sorted boolean system one instant at a time.

mod reach;
mod trace;

pub use reach::{reach_check, Verdict};
pub use trace::{format_step, format_trace, parse_inputs_line};

use circuitgen::{def_of, val_of, BoolExpr, BooleanSystem};
use scheduler::Schedule;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;
use xi_core::{decode, BoolPair, XiValue};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("system still has unresolved run instances: {}", .0.join(", "))]
    Unlinked(Vec<String>),
    #[error("schedule does not cover `{0}`")]
    Unscheduled(String),
    #[error("wire `{0}` is referenced but never defined")]
    Dangling(String),
    #[error("input `{0}` is not declared")]
    UnknownInput(String),
    #[error("input `{0}` cannot be ⊥ in a finalized system")]
    BottomInput(String),
    #[error("`{0}` is not an output")]
    UnknownOutput(String),
}

#[derive(Clone, Debug)]
enum Code {
    Const(bool),
    Slot(usize),
    Not(Box<Code>),
    And(Vec<Code>),
    Or(Vec<Code>),
}

impl Code {
    fn eval(&self, s: &[bool]) -> bool {
        match self {
            Code::Const(b) => *b,
            Code::Slot(i) => s[*i],
            Code::Not(e) => !e.eval(s),
            Code::And(xs) => xs.iter().all(|x| x.eval(s)),
            Code::Or(xs) => xs.iter().any(|x| x.eval(s)),
        }
    }
}

/// Latch values and instant counter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimState {
    pub latches: Vec<bool>,
    pub instant: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepResult {
    pub instant: u64,
    pub inputs: BTreeMap<String, XiValue>,
    pub outputs: BTreeMap<String, XiValue>,
    pub rtl: bool,
    /// Latch values at the start of the instant.
    pub registers: BTreeMap<String, bool>,
    pub error: Option<String>,
}

/// A system compiled to indexed form, ready to be stepped.
#[derive(Clone, Debug)]
pub struct Simulator {
    pub name: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    latch_names: Vec<String>,
    latch_init: Vec<bool>,
    latch_slot: Vec<usize>,
    latch_next: Vec<usize>,
    input_slots: Vec<(usize, usize)>,
    program: Vec<(usize, Code)>,
    n_slots: usize,
    /// `(signal, def slot, val slot)` for every paired wire that is computed.
    pairs: Vec<(String, usize, usize)>,
    output_slots: Vec<Option<(usize, usize)>>,
    rtl: Option<usize>,
    finalized: bool,
}

impl Simulator {
    pub fn new(sys: &BooleanSystem, sched: &Schedule) -> Result<Simulator, SimError> {
        if !sys.runs.is_empty() {
            return Err(SimError::Unlinked(sys.runs.iter().map(|r| r.prefix.clone()).collect()));
        }
        let mut slots: HashMap<String, usize> = HashMap::new();
        let slot = |n: &str, slots: &mut HashMap<String, usize>| {
            let k = slots.len();
            *slots.entry(n.to_string()).or_insert(k)
        };
        let mut input_slots = Vec::new();
        for i in &sys.inputs {
            input_slots.push((slot(&def_of(i), &mut slots), slot(&val_of(i), &mut slots)));
        }
        let latch_slot: Vec<usize> = sys.latches.iter().map(|l| slot(&l.name, &mut slots)).collect();
        let order = sched.evaluation_order();
        for w in sys.equations.keys() {
            if !sched.early.contains_key(w) {
                return Err(SimError::Unscheduled(w.clone()));
            }
        }
        let mut program = Vec::with_capacity(order.len());
        for w in &order {
            let Some(e) = sys.equations.get(w) else { continue };
            let code = compile(e, &slots)?;
            let s = slot(w, &mut slots);
            program.push((s, code));
        }
        let mut latch_next = Vec::new();
        for l in &sys.latches {
            latch_next.push(*slots.get(&l.next).ok_or_else(|| SimError::Dangling(l.next.clone()))?);
        }
        let mut pairs = Vec::new();
        for w in sys.equations.keys() {
            if let Some(base) = w.strip_suffix("_def") {
                if let Some(v) = slots.get(&val_of(base)) {
                    if sys.equations.contains_key(&val_of(base)) {
                        pairs.push((base.to_string(), slots[w], *v));
                    }
                }
            }
        }
        let output_slots = sys
            .outputs
            .iter()
            .map(|o| Some((*slots.get(&def_of(o))?, *slots.get(&val_of(o))?)))
            .collect();
        let rtl = slots.get(&val_of(circuitgen::CTL_RTL)).copied();
        Ok(Simulator {
            name: sys.name.clone(),
            inputs: sys.inputs.clone(),
            outputs: sys.outputs.clone(),
            latch_names: sys.latches.iter().map(|l| l.name.clone()).collect(),
            latch_init: sys.latches.iter().map(|l| l.init).collect(),
            latch_slot,
            latch_next,
            input_slots,
            program,
            n_slots: slots.len(),
            pairs,
            output_slots,
            rtl,
            finalized: sys.is_finalized(),
        })
    }

    pub fn initial_state(&self) -> SimState {
        SimState { latches: self.latch_init.clone(), instant: 0 }
    }

    pub fn latch_names(&self) -> &[String] {
        &self.latch_names
    }

    /// One reaction. Unlisted inputs are absent; a declared `tick` input is
    /// always present.
    pub fn step(&self, state: &SimState, inputs: &BTreeMap<String, XiValue>) -> Result<(StepResult, SimState), SimError> {
        for k in inputs.keys() {
            if !self.inputs.contains(k) {
                return Err(SimError::UnknownInput(k.clone()));
            }
        }
        let mut given = BTreeMap::new();
        let mut s = vec![false; self.n_slots];
        for (i, name) in self.inputs.iter().enumerate() {
            let v = if name == "tick" {
                XiValue::Present
            } else {
                inputs.get(name).copied().unwrap_or(XiValue::Absent)
            };
            if self.finalized && v == XiValue::Bottom {
                return Err(SimError::BottomInput(name.clone()));
            }
            let p = xi_core::encode(v);
            let (d, vs) = self.input_slots[i];
            s[d] = p.def;
            s[vs] = p.val;
            given.insert(name.clone(), v);
        }
        self.run(state, &mut s, given)
    }

    /// Step from raw input bits: bit `k` of `vector` (most significant
    /// first) drives input `k`.
    pub fn step_bits(&self, state: &SimState, bits: &[bool]) -> (StepResult, SimState) {
        let mut s = vec![false; self.n_slots];
        let mut given = BTreeMap::new();
        for (i, name) in self.inputs.iter().enumerate() {
            let b = name == "tick" || bits[i];
            let (d, v) = self.input_slots[i];
            s[d] = true;
            s[v] = b;
            given.insert(name.clone(), xi_core::xi_of_bool(b));
        }
        self.run(state, &mut s, given).unwrap()
    }

    /// Next latch vector only, without building a result.
    pub(crate) fn eval_raw(&self, latches: &[bool], bits: &[bool], scratch: &mut Vec<bool>) -> Vec<bool> {
        scratch.clear();
        scratch.resize(self.n_slots, false);
        for (i, name) in self.inputs.iter().enumerate() {
            let (d, v) = self.input_slots[i];
            scratch[d] = true;
            scratch[v] = name == "tick" || bits[i];
        }
        for (k, sl) in self.latch_slot.iter().enumerate() {
            scratch[*sl] = latches[k];
        }
        for (sl, code) in &self.program {
            scratch[*sl] = code.eval(scratch);
        }
        self.latch_next.iter().map(|n| scratch[*n]).collect()
    }

    /// Latch vector after one instant under defined input bits.
    pub fn next_state(&self, latches: &[bool], bits: &[bool]) -> Vec<bool> {
        self.eval_raw(latches, bits, &mut Vec::new())
    }

    pub(crate) fn output_value(&self, scratch: &[bool], name: &str) -> XiValue {
        let i = self.outputs.iter().position(|o| o == name);
        match i.and_then(|i| self.output_slots[i]) {
            Some((d, v)) => decode(BoolPair::new(scratch[d], scratch[v])),
            None => XiValue::Absent,
        }
    }

    fn run(&self, state: &SimState, s: &mut [bool], given: BTreeMap<String, XiValue>) -> Result<(StepResult, SimState), SimError> {
        for (k, sl) in self.latch_slot.iter().enumerate() {
            s[*sl] = state.latches[k];
        }
        for (sl, code) in &self.program {
            s[*sl] = code.eval(s);
        }
        let mut outputs = BTreeMap::new();
        for (o, sl) in self.outputs.iter().zip(&self.output_slots) {
            let v = match sl {
                Some((d, v)) => decode(BoolPair::new(s[*d], s[*v])),
                None => XiValue::Absent,
            };
            outputs.insert(o.clone(), v);
        }
        let error = self
            .outputs
            .iter()
            .find(|o| outputs[*o] == XiValue::Error)
            .cloned()
            .or_else(|| {
                self.pairs
                    .iter()
                    .find(|(_, d, v)| !s[*d] && s[*v])
                    .map(|(n, _, _)| n.clone())
            })
            .map(|n| format!("signal `{}` is ⊤", signal_name(&n)));
        let registers = self.latch_names.iter().cloned().zip(state.latches.iter().copied()).collect();
        let next = SimState {
            latches: self.latch_next.iter().map(|n| s[*n]).collect(),
            instant: state.instant + 1,
        };
        let res = StepResult {
            instant: state.instant,
            inputs: given,
            outputs,
            rtl: self.rtl.is_some_and(|r| s[r]),
            registers,
            error,
        };
        Ok((res, next))
    }

    /// Folds `step` over a sequence from the initial state.
    pub fn run_trace(&self, seq: &[BTreeMap<String, XiValue>]) -> Result<Vec<StepResult>, SimError> {
        let mut st = self.initial_state();
        let mut out = Vec::with_capacity(seq.len());
        for inp in seq {
            let (r, n) = self.step(&st, inp)?;
            out.push(r);
            st = n;
        }
        Ok(out)
    }
}

/// Source-level name of an internal wire: instance prefixes, node numbers
/// and local suffixes are dropped.
pub fn signal_name(w: &str) -> String {
    let last = w.rsplit('.').next().unwrap_or(w);
    let base = last.split('@').next().unwrap_or(last);
    base.split('~').next().unwrap_or(base).to_string()
}

/// Operands must already own a slot: free variables, or wires placed
/// earlier in the evaluation order.
fn compile(e: &BoolExpr, slots: &HashMap<String, usize>) -> Result<Code, SimError> {
    Ok(match e {
        BoolExpr::Const(b) => Code::Const(*b),
        BoolExpr::Var(v) => Code::Slot(*slots.get(v).ok_or_else(|| SimError::Dangling(v.clone()))?),
        BoolExpr::Not(x) => Code::Not(Box::new(compile(x, slots)?)),
        BoolExpr::And(xs) => Code::And(xs.iter().map(|x| compile(x, slots)).collect::<Result<_, _>>()?),
        BoolExpr::Or(xs) => Code::Or(xs.iter().map(|x| compile(x, slots)).collect::<Result<_, _>>()?),
    })
}
