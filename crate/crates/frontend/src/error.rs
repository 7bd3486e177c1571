// SPDX-License-Identifier: Apache-2.0
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FrontendError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: duplicate declaration of `{name}`")]
    Duplicate { line: usize, name: String },
    #[error("line {line}: unknown signal `{name}` in module {module}")]
    UnknownSignal { line: usize, module: String, name: String },
    #[error("module `{0}` not found")]
    ModuleNotFound(String),
    #[error("recursive run cycle: {}", .0.join(" -> "))]
    RecursiveRun(Vec<String>),
    #[error("run {callee}: `{formal}` is not an interface signal of the callee")]
    UnknownFormal { callee: String, formal: String },
    #[error("run {callee}: {msg}")]
    Binding { callee: String, msg: String },
    #[error("i/o error on {path}: {msg}")]
    Io { path: String, msg: String },
}
