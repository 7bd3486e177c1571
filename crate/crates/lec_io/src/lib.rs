// SPDX-License-Identifier: Apache-2.0
//! The `.lec` text format: a BLIF-like netlist whose equations carry their
//! early and late dates.
//!
//! ```text
//! .lec 1
//! .model WIO
//! .inputs I
//! .outputs O
//! .latch n3.A 0 n3.A.next
//! .eq O_val 2 2 = n4.and_val
//! .end
//! ```

use circuitgen::{BoolExpr, BooleanSystem, Latch, RunInstance};
use scheduler::{build_dependencies, Schedule};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LecError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: `{wire}` is defined twice")]
    Duplicate { line: usize, wire: String },
    #[error("inconsistent dates: {0}")]
    Dates(String),
    #[error("dangling wire reference: {}", .0.join(", "))]
    Dangling(Vec<String>),
}

/// Serialises a sorted system. Equations come out ordered by `(early, name)`.
pub fn write_lec(sys: &BooleanSystem, sched: &Schedule) -> String {
    let mut out = String::new();
    out.push_str(".lec 1\n");
    let _ = writeln!(out, ".model {}", sys.name);
    line(&mut out, ".inputs", &sys.inputs);
    line(&mut out, ".outputs", &sys.outputs);
    for l in &sys.latches {
        let _ = writeln!(out, ".latch {} {} {}", l.name, l.init as u8, l.next);
    }
    for r in &sys.runs {
        let _ = write!(out, ".run {} {}", r.prefix, r.model);
        for (f, a) in &r.bindings {
            let _ = write!(out, " {f}={a}");
        }
        out.push('\n');
    }
    for w in sched.evaluation_order() {
        if let Some(e) = sys.equations.get(&w) {
            let _ = writeln!(out, ".eq {w} {} {} = {e}", sched.early[&w], sched.late[&w]);
        }
    }
    out.push_str(".end\n");
    out
}

fn line(out: &mut String, head: &str, items: &[String]) {
    out.push_str(head);
    for i in items {
        out.push(' ');
        out.push_str(i);
    }
    out.push('\n');
}

/// Parses and validates a `.lec` document.
pub fn read_lec(text: &str) -> Result<(BooleanSystem, Schedule), LecError> {
    let mut sys = BooleanSystem::default();
    let mut sched = Schedule::default();
    let mut seen_version = false;
    let mut ended = false;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let perr = |msg: String| LecError::Parse { line: ln, msg };
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        if ended {
            return Err(perr("content after `.end`".into()));
        }
        let mut words = l.split_whitespace();
        let head = words.next().unwrap();
        if !seen_version {
            if head != ".lec" {
                return Err(perr("expected `.lec 1` header".into()));
            }
            match words.next() {
                Some("1") => {}
                v => return Err(perr(format!("unsupported version {}", v.unwrap_or("(none)")))),
            }
            seen_version = true;
            continue;
        }
        match head {
            ".model" => sys.name = words.next().ok_or_else(|| perr("missing model name".into()))?.to_string(),
            ".inputs" => sys.inputs.extend(words.map(String::from)),
            ".outputs" => sys.outputs.extend(words.map(String::from)),
            ".latch" => {
                let v: Vec<&str> = words.collect();
                if v.len() != 3 {
                    return Err(perr("`.latch` takes WIRE INIT NEXTWIRE".into()));
                }
                let init = match v[1] {
                    "0" => false,
                    "1" => true,
                    x => return Err(perr(format!("bad init bit `{x}`"))),
                };
                sys.latches.push(Latch { name: v[0].into(), init, next: v[2].into() });
            }
            ".run" => {
                let prefix = words.next().ok_or_else(|| perr("missing run prefix".into()))?;
                let model = words.next().ok_or_else(|| perr("missing run model".into()))?;
                let mut bindings = Vec::new();
                for b in words {
                    let (f, a) = b.split_once('=').ok_or_else(|| perr(format!("bad binding `{b}`")))?;
                    bindings.push((f.to_string(), a.to_string()));
                }
                sys.runs.push(RunInstance { prefix: prefix.into(), model: model.into(), bindings });
            }
            ".eq" => {
                let (lhs, rhs) = l[3..].split_once('=').ok_or_else(|| perr("missing `=`".into()))?;
                let v: Vec<&str> = lhs.split_whitespace().collect();
                if v.len() != 3 {
                    return Err(perr("`.eq` takes WIRE EARLY LATE = EXPR".into()));
                }
                let date = |s: &str| s.parse::<u32>().map_err(|_| perr(format!("bad date `{s}`")));
                let (e, la) = (date(v[1])?, date(v[2])?);
                let expr = parse_expr(rhs).map_err(perr)?;
                if sys.equations.insert(v[0].to_string(), expr).is_some() {
                    return Err(LecError::Duplicate { line: ln, wire: v[0].into() });
                }
                sched.early.insert(v[0].into(), e);
                sched.late.insert(v[0].into(), la);
            }
            ".end" => ended = true,
            x => return Err(perr(format!("unknown directive `{x}`"))),
        }
    }
    if !ended {
        return Err(LecError::Parse { line: text.lines().count(), msg: "missing `.end`".into() });
    }
    let dangling = sys.dangling();
    if !dangling.is_empty() {
        return Err(LecError::Dangling(dangling.into_iter().collect()));
    }
    sched.check(&build_dependencies(&sys)).map_err(LecError::Dates)?;
    Ok((sys, sched))
}

/// Parses an expression over `& | !`, parentheses and `0`/`1`.
pub fn parse_expr(s: &str) -> Result<BoolExpr, String> {
    let toks = tokenize(s)?;
    let mut p = ExprParser { toks, pos: 0 };
    let e = p.or()?;
    if p.pos != p.toks.len() {
        return Err(format!("unexpected `{}`", p.toks[p.pos]));
    }
    Ok(e)
}

fn tokenize(s: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        if ch.is_whitespace() || "&|!()".contains(ch) {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
            if !ch.is_whitespace() {
                out.push(ch.to_string());
            }
        } else if ch.is_alphanumeric() || "_.@~$[]:-".contains(ch) {
            cur.push(ch);
        } else {
            return Err(format!("unexpected character `{ch}`"));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

struct ExprParser {
    toks: Vec<String>,
    pos: usize,
}

impl ExprParser {
    fn peek(&self) -> Option<&str> {
        self.toks.get(self.pos).map(|s| s.as_str())
    }

    fn or(&mut self) -> Result<BoolExpr, String> {
        let mut xs = vec![self.and()?];
        while self.peek() == Some("|") {
            self.pos += 1;
            xs.push(self.and()?);
        }
        Ok(if xs.len() == 1 { xs.pop().unwrap() } else { BoolExpr::Or(xs) })
    }

    fn and(&mut self) -> Result<BoolExpr, String> {
        let mut xs = vec![self.unary()?];
        while self.peek() == Some("&") {
            self.pos += 1;
            xs.push(self.unary()?);
        }
        Ok(if xs.len() == 1 { xs.pop().unwrap() } else { BoolExpr::And(xs) })
    }

    fn unary(&mut self) -> Result<BoolExpr, String> {
        let t = self.peek().ok_or("unexpected end of expression")?.to_string();
        self.pos += 1;
        match t.as_str() {
            "!" => Ok(BoolExpr::Not(Box::new(self.unary()?))),
            "(" => {
                let e = self.or()?;
                if self.peek() != Some(")") {
                    return Err("expected `)`".into());
                }
                self.pos += 1;
                Ok(e)
            }
            "0" => Ok(BoolExpr::Const(false)),
            "1" => Ok(BoolExpr::Const(true)),
            "&" | "|" | ")" => Err(format!("unexpected `{t}`")),
            _ => Ok(BoolExpr::Var(t)),
        }
    }
}

/// Interface of a unit without validating its body, for run resolution.
pub fn read_interface(text: &str) -> Result<(Vec<String>, Vec<String>), LecError> {
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    for l in text.lines() {
        let mut w = l.split_whitespace();
        match w.next() {
            Some(".inputs") => inputs.extend(w.map(String::from)),
            Some(".outputs") => outputs.extend(w.map(String::from)),
            _ => {}
        }
    }
    Ok((inputs, outputs))
}
