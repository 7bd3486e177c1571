// SPDX-License-Identifier: Apache-2.0
//! Circuit semantics of LE: ξ-circuits per statement and their lowering to
//! paired boolean equations.

pub mod circuit;
pub mod compile;
pub mod expr;
pub mod system;

pub use circuit::*;
pub use compile::{compile, compile_module, CompileError, CompileOptions};
pub use expr::{def_of, val_of, BoolExpr, XiExpr};
pub use system::{BooleanSystem, Latch};
