// SPDX-License-Identifier: Apache-2.0
//! Reference interpreter: programs are rewritten reaction by reaction.
//!
//! Within a reaction, signal statuses are the least fixpoint of the
//! emission function, starting from ⊥ for every output and local. Inputs
//! are taken as given, `tick` is always present.

pub mod ple;
mod react;

pub use ple::{translate, Term, TICK};

use frontend::Resolved;
use std::collections::BTreeSet;
use thiserror::Error;
use xi_core::{Environment, XiValue};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BehavError {
    #[error("module `{0}` is not resolved")]
    Unresolved(String),
    #[error("module `{0}` is only available compiled ({1}); the interpreter needs its source")]
    CompiledCallee(String, String),
    #[error("{0}")]
    Invalid(String),
    #[error("reaction does not settle: {0}")]
    Undecided(String),
    #[error("input `{0}` is not declared")]
    UnknownInput(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reaction {
    /// Statuses of the declared outputs.
    pub outputs: Environment,
    /// Statuses of every signal, locals included.
    pub env: Environment,
    pub term: XiValue,
}

/// A program and its current residual term.
#[derive(Clone, Debug)]
pub struct Machine {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    locals: Vec<String>,
    initial: Term,
    term: Term,
}

impl Machine {
    pub fn new(res: &Resolved) -> Result<Machine, BehavError> {
        let (t, locals) = translate(res)?;
        Ok(Machine {
            inputs: res.root.inputs.clone(),
            outputs: res.root.outputs.clone(),
            locals,
            initial: t.clone(),
            term: t,
        })
    }

    pub fn reset(&mut self) {
        self.term = self.initial.clone();
    }

    pub fn term(&self) -> &Term {
        &self.term
    }

    /// One reaction. Inputs left out of `inputs` are ⊥.
    pub fn react(&mut self, inputs: &Environment) -> Result<Reaction, BehavError> {
        for (k, _) in inputs.iter() {
            if !self.inputs.iter().any(|i| i == k) && k != TICK {
                return Err(BehavError::UnknownInput(k.to_string()));
            }
        }
        let keys: BTreeSet<&String> = self.outputs.iter().chain(&self.locals).filter(|k| !self.inputs.contains(k)).collect();
        let mut base = Environment::new();
        for i in &self.inputs {
            base.set(i.clone(), inputs.get(i));
        }
        base.set(TICK, XiValue::Present);
        let mut env = base.clone();
        for k in &keys {
            env.set((*k).clone(), XiValue::Bottom);
        }
        let mut term = XiValue::Bottom;
        for _ in 0..2 * keys.len() + 2 {
            let mut em = react::Emissions::new();
            term = react::react(&self.term, XiValue::Present, &env, &mut em);
            let mut next = base.clone();
            for k in &keys {
                next.set((*k).clone(), em.get(*k).copied().unwrap_or(XiValue::Absent));
            }
            if next == env {
                break;
            }
            env = next;
        }
        self.term = react::residual(&self.term, true, &env)?;
        Ok(Reaction {
            outputs: env.restrict(self.outputs.iter().map(|s| s.as_str())),
            env,
            term,
        })
    }
}

/// Reactions of a program from its initial term.
pub fn run_trace(res: &Resolved, seq: &[Environment]) -> Result<Vec<Reaction>, BehavError> {
    let mut m = Machine::new(res)?;
    seq.iter().map(|e| m.react(e)).collect()
}
