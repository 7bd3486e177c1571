// SPDX-License-Identifier: Apache-2.0
//! LE surface language: parsing, printing, static checks and run resolution.

pub mod ast;
pub mod check;
pub mod error;
pub mod lexer;
pub mod parser;
pub mod print;
pub mod resolve;

pub use ast::*;
pub use check::{check_static, possibly_instantaneous, Diagnostic, Severity};
pub use error::FrontendError;
pub use parser::{parse_file, parse_module};
pub use print::{print_file, print_module, print_sig};
pub use resolve::{check_bindings, resolve_runs, Callee, Interface, ResolveOptions, Resolved};
