// SPDX-License-Identifier: Apache-2.0
//! Line-per-instant trace text.
//!
//! `t=<n> in{I=1,J=0} out{O=1} regs{A=0}`; statuses print as `0`, `1`,
//! `_` (⊥) and `T` (⊤).

use crate::StepResult;
use std::collections::BTreeMap;
use xi_core::XiValue;

fn sym(v: XiValue) -> &'static str {
    match v {
        XiValue::Absent => "0",
        XiValue::Present => "1",
        XiValue::Bottom => "_",
        XiValue::Error => "T",
    }
}

fn list<'a>(items: impl Iterator<Item = (&'a String, &'a str)>) -> String {
    items.map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
}

pub fn format_step(r: &StepResult) -> String {
    let mut s = format!(
        "t={} in{{{}}} out{{{}}} regs{{{}}}",
        r.instant,
        list(r.inputs.iter().map(|(k, v)| (k, sym(*v)))),
        list(r.outputs.iter().map(|(k, v)| (k, sym(*v)))),
        list(r.registers.iter().map(|(k, v)| (k, if *v { "1" } else { "0" }))),
    );
    if let Some(e) = &r.error {
        s.push_str(" error{");
        s.push_str(e);
        s.push('}');
    }
    s
}

pub fn format_trace(rs: &[StepResult]) -> String {
    rs.iter().map(|r| format_step(r) + "\n").collect()
}

/// Parses one instant of an input file: `sig=0/1` items separated by
/// spaces or commas. A bare name means present; `#` starts a comment.
pub fn parse_inputs_line(line: &str) -> Result<BTreeMap<String, XiValue>, String> {
    let line = line.split('#').next().unwrap_or("");
    let mut m = BTreeMap::new();
    for item in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        let (k, v) = match item.split_once('=') {
            Some((k, v)) => {
                let v = XiValue::from_ascii(v).ok_or_else(|| format!("bad status `{v}` for `{k}`"))?;
                (k, v)
            }
            None => (item, XiValue::Present),
        };
        if k.is_empty() {
            return Err(format!("empty signal name in `{item}`"));
        }
        m.insert(k.to_string(), v);
    }
    Ok(m)
}
