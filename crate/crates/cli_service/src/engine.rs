// SPDX-License-Identifier: Apache-2.0
//! Interchangeable execution engines behind `le interpret --engine`.

use crate::error::LeError;
use crate::pipeline::{compile_resolved, compiled_callees, link_units, simulator_of, Options};
use frontend::Resolved;
use std::collections::BTreeMap;
use xi_core::{Environment, XiValue};

pub type Inputs = BTreeMap<String, XiValue>;

/// One instant as seen from outside: declared outputs and termination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Observed {
    pub outputs: BTreeMap<String, XiValue>,
    pub term: XiValue,
}

pub trait Engine: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, res: &Resolved, seq: &[Inputs]) -> Result<Vec<Observed>, LeError>;
}

/// Term rewriting reference interpreter.
pub struct Behavioral;

/// Compiled circuit, sorted and simulated without finalization.
pub struct Equational {
    pub opts: Options,
}

impl Engine for Behavioral {
    fn name(&self) -> &'static str {
        "behavioral"
    }

    fn run(&self, res: &Resolved, seq: &[Inputs]) -> Result<Vec<Observed>, LeError> {
        let mut m = behavioral::Machine::new(res)?;
        seq.iter()
            .map(|i| {
                let r = m.react(&Environment::from_map(i.clone()))?;
                Ok(Observed { outputs: r.outputs.as_map().clone(), term: r.term })
            })
            .collect()
    }
}

impl Engine for Equational {
    fn name(&self) -> &'static str {
        "equational"
    }

    fn run(&self, res: &Resolved, seq: &[Inputs]) -> Result<Vec<Observed>, LeError> {
        let unit = compile_resolved(res)?;
        let (unit, _) = link_units(&unit, &compiled_callees(res), &self.opts)?;
        let sim = simulator_of(&unit)?;
        let steps = sim.run_trace(seq)?;
        Ok(steps
            .into_iter()
            .map(|s| Observed { outputs: s.outputs, term: xi_core::xi_of_bool(s.rtl) })
            .collect())
    }
}

pub fn engines() -> Vec<Box<dyn Engine>> {
    vec![Box::new(Behavioral), Box::new(Equational { opts: Options::default() })]
}

pub fn engine(name: &str) -> Option<Box<dyn Engine>> {
    engines().into_iter().find(|e| e.name() == name)
}
