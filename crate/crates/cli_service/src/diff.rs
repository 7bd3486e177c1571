// SPDX-License-Identifier: Apache-2.0
//! Differential comparison of the two engines.

use crate::engine::{Behavioral, Engine, Equational, Inputs, Observed};
use crate::error::LeError;
use crate::pipeline::Options;
use frontend::Resolved;
use xi_core::XiValue;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Engines agree on every compared instant.
    Agree { instants: usize },
    /// The program has a causality cycle; no comparison is made.
    Cyclic,
    Mismatch { instant: usize, behavioral: Option<Observed>, equational: Option<Observed>, note: String },
}

/// Runs both engines on `seq` and compares outputs and termination up to
/// and including the first instant where the program terminates.
pub fn compare(res: &Resolved, seq: &[Inputs]) -> Outcome {
    let eq = Equational { opts: Options::default() }.run(res, seq);
    let eq = match eq {
        Err(LeError::Cycle(_)) => return Outcome::Cyclic,
        Err(e) => return Outcome::Mismatch { instant: 0, behavioral: None, equational: None, note: e.to_string() },
        Ok(v) => v,
    };
    let be = match Behavioral.run(res, seq) {
        Ok(v) => v,
        Err(e) => return Outcome::Mismatch { instant: 0, behavioral: None, equational: eq.first().cloned(), note: e.to_string() },
    };
    for (k, (b, e)) in be.iter().zip(&eq).enumerate() {
        if b != e {
            return Outcome::Mismatch {
                instant: k,
                behavioral: Some(b.clone()),
                equational: Some(e.clone()),
                note: String::new(),
            };
        }
        if b.term == XiValue::Present {
            return Outcome::Agree { instants: k + 1 };
        }
    }
    Outcome::Agree { instants: seq.len() }
}
