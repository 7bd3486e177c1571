// SPDX-License-Identifier: Apache-2.0
//! Level scheduling of boolean equation systems.
//!
//! Early dates grow from free variables toward outputs; late dates shrink
//! backward from sinks. Two sorted systems link by repairing dates near
//! their shared wires.

pub mod dates;
pub mod graph;
pub mod link;

pub use dates::{find_cycle, propagate_dates, Schedule, ScheduleError};
pub use graph::{build_dependencies, DepGraph};
pub use link::{instantiate, link, link_runs, merge, resort, totalize, LinkError, LinkStats, Sorted};

use circuitgen::BooleanSystem;

/// Dependencies and dates of a system in one call.
pub fn schedule(sys: &BooleanSystem) -> Result<Schedule, ScheduleError> {
    propagate_dates(&build_dependencies(sys))
}
