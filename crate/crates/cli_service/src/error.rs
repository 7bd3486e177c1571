// SPDX-License-Identifier: Apache-2.0
use circuitgen::CompileError;
use frontend::{Diagnostic, FrontendError};
use lec_io::LecError;
use scheduler::{LinkError, ScheduleError};
use simulator::SimError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LeError {
    #[error(transparent)]
    Frontend(#[from] FrontendError),
    #[error("{}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n"))]
    Static(Vec<Diagnostic>),
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error("causality cycle{}: {}", signal_list(.0), .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("no compiled unit for model `{0}`")]
    MissingModel(String),
    #[error("interface mismatch: {0}")]
    Interface(String),
    #[error("{path}: {err}")]
    Lec { path: String, err: LecError },
    #[error("i/o error on {path}: {msg}")]
    Io { path: String, msg: String },
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Behav(#[from] behavioral::BehavError),
    #[error("{0}")]
    Usage(String),
    #[error("no session `{0}`")]
    NotFound(u64),
}

impl From<ScheduleError> for LeError {
    fn from(e: ScheduleError) -> Self {
        let ScheduleError::CausalityCycle(c) = e;
        LeError::Cycle(c)
    }
}

impl From<LinkError> for LeError {
    fn from(e: LinkError) -> Self {
        match e {
            LinkError::MissingModel(m) => LeError::MissingModel(m),
            LinkError::Schedule(s) => s.into(),
        }
    }
}

impl LeError {
    /// Process exit status: 1 syntax, 2 static, 3 causality cycle, 4 i/o.
    pub fn exit_code(&self) -> i32 {
        match self {
            LeError::Frontend(FrontendError::Syntax { .. }) => 1,
            LeError::Frontend(FrontendError::Io { .. }) => 4,
            LeError::Lec { err: LecError::Parse { .. } | LecError::Duplicate { .. }, .. } => 1,
            LeError::Cycle(_) => 3,
            LeError::Io { .. } => 4,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            LeError::Frontend(FrontendError::Syntax { .. }) => "syntax",
            LeError::Frontend(FrontendError::Io { .. }) | LeError::Io { .. } => "io",
            LeError::Frontend(_) | LeError::Static(_) | LeError::Compile(_) => "static",
            LeError::Cycle(_) => "cycle",
            LeError::MissingModel(_) | LeError::Interface(_) => "link",
            LeError::Lec { .. } => "lec",
            LeError::Sim(_) => "simulation",
            LeError::Behav(_) => "interpreter",
            LeError::Usage(_) => "usage",
            LeError::NotFound(_) => "not-found",
        }
    }

    /// Structured form for `--json` and the session service.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({ "kind": self.kind(), "message": self.to_string() });
        match self {
            LeError::Cycle(c) => {
                v["wires"] = serde_json::json!(c);
                v["signals"] = serde_json::json!(cycle_signals(c));
            }
            LeError::Frontend(FrontendError::Syntax { line, col, .. }) => {
                v["line"] = serde_json::json!(line);
                v["col"] = serde_json::json!(col);
            }
            LeError::Lec { err: LecError::Parse { line, .. } | LecError::Duplicate { line, .. }, .. } => {
                v["line"] = serde_json::json!(line);
            }
            _ => {}
        }
        v
    }
}

/// Source signal names behind the boolean wires of a cycle, in order of
/// appearance. Internal nodes and control wires are left out.
pub fn cycle_signals(wires: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for w in wires {
        let base = w.strip_suffix("_def").or_else(|| w.strip_suffix("_val")).unwrap_or(w);
        let segs: Vec<&str> = base.split('.').collect();
        let internal = segs.iter().any(|s| *s == "ctl" || (s.len() > 1 && s.starts_with('n') && s[1..].bytes().all(|b| b.is_ascii_digit())));
        if internal || base.ends_with(".next") {
            continue;
        }
        let s = simulator::signal_name(base);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

fn signal_list(wires: &[String]) -> String {
    let s = cycle_signals(wires);
    if s.is_empty() {
        String::new()
    } else {
        format!(" through signals {}", s.join(", "))
    }
}

pub fn io_err(path: &std::path::Path, e: std::io::Error) -> LeError {
    LeError::Io { path: path.display().to_string(), msg: e.to_string() }
}
