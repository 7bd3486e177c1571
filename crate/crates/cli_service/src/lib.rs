// SPDX-License-Identifier: Apache-2.0
//! Command line pipeline and the simulation session service.

pub mod commands;
pub mod config;
pub mod diff;
pub mod engine;
pub mod error;
pub mod gen;
pub mod pipeline;
pub mod server;
pub mod session;

pub use config::Config;
pub use engine::{engine, engines, Behavioral, Engine, Equational, Observed};
pub use error::{cycle_signals, LeError};
pub use session::SessionService;
