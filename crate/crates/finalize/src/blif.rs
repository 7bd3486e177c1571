// SPDX-License-Identifier: Apache-2.0
//! Berkeley logic interchange format: `.names` covers per equation.

use crate::bdd::BddManager;
use crate::canon::{build, FuncManager};
use circuitgen::{def_of, val_of, BoolExpr, BooleanSystem, Latch};
use std::collections::BTreeMap;
use std::fmt::Write as _;

const MAX_CUBES: usize = 4096;

/// Writes the system as a BLIF netlist. Wires keep their names; signals
/// appear as their `_def`/`_val` pair.
pub fn export_blif(sys: &BooleanSystem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, ".model {}", sys.name);
    let mut inputs = Vec::new();
    let refs: std::collections::BTreeSet<String> = sys.equations.values().flat_map(|e| e.var_set()).collect();
    for i in &sys.inputs {
        for w in [def_of(i), val_of(i)] {
            if refs.contains(&w) {
                inputs.push(w);
            }
        }
    }
    let _ = writeln!(out, ".inputs {}", inputs.join(" "));
    let outputs: Vec<String> = sys.outputs.iter().flat_map(|o| [def_of(o), val_of(o)]).collect();
    let _ = writeln!(out, ".outputs {}", outputs.join(" "));
    for l in &sys.latches {
        let _ = writeln!(out, ".latch {} {} {}", l.next, l.name, l.init as u8);
    }
    let mut fresh = 0;
    for (w, e) in &sys.equations {
        names(&mut out, w, e, &mut fresh);
    }
    for o in &outputs {
        if !sys.equations.contains_key(o) {
            let _ = writeln!(out, ".names {o}");
        }
    }
    out.push_str(".end\n");
    out
}

fn names(out: &mut String, w: &str, e: &BoolExpr, fresh: &mut usize) {
    let vars: Vec<String> = e.var_set().into_iter().collect();
    let idx: BTreeMap<&str, usize> = vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut m = BddManager::new(1 << 20);
    let cover = build(&mut m, e, &mut |m, v| m.var(idx[v])).ok().and_then(|f| m.cover(f, MAX_CUBES));
    match cover {
        Some(cubes) => {
            let _ = writeln!(out, ".names {}{}{w}", vars.join(" "), if vars.is_empty() { "" } else { " " });
            for c in cubes {
                let mut row = vec!['-'; vars.len()];
                for (v, b) in c {
                    row[v] = if b { '1' } else { '0' };
                }
                let s: String = row.into_iter().collect();
                let _ = writeln!(out, "{}{}1", s, if vars.is_empty() { "" } else { " " });
            }
        }
        None => {
            // too large for one cover: one gate per operator
            let sub = |x: &BoolExpr, out: &mut String, fresh: &mut usize| -> String {
                *fresh += 1;
                let n = format!("{w}$g{fresh}");
                names(out, &n, x, fresh);
                n
            };
            match e {
                BoolExpr::Not(x) => {
                    let a = sub(x, out, fresh);
                    let _ = writeln!(out, ".names {a} {w}\n0 1");
                }
                BoolExpr::And(xs) | BoolExpr::Or(xs) => {
                    let ins: Vec<String> = xs.iter().map(|x| sub(x, out, fresh)).collect();
                    let _ = writeln!(out, ".names {} {w}", ins.join(" "));
                    if matches!(e, BoolExpr::And(_)) {
                        let _ = writeln!(out, "{} 1", "1".repeat(ins.len()));
                    } else {
                        for k in 0..ins.len() {
                            let row: String = (0..ins.len()).map(|j| if j == k { '1' } else { '-' }).collect();
                            let _ = writeln!(out, "{row} 1");
                        }
                    }
                }
                _ => unreachable!("atoms always have a cover"),
            }
        }
    }
}

/// Reads a BLIF netlist produced by `export_blif` (single-output covers,
/// on-set rows only). Signal names are recovered from `_def`/`_val` wires.
pub fn read_blif(text: &str) -> Result<BooleanSystem, String> {
    let mut sys = BooleanSystem::default();
    let mut cur: Option<(String, Vec<String>, Vec<BoolExpr>)> = None;
    let base = |w: &str| w.strip_suffix("_def").or_else(|| w.strip_suffix("_val")).unwrap_or(w).to_string();
    let flush = |cur: &mut Option<(String, Vec<String>, Vec<BoolExpr>)>, sys: &mut BooleanSystem| {
        if let Some((w, _, rows)) = cur.take() {
            sys.equations.insert(w, BoolExpr::or_all(rows));
        }
    };
    for (n, raw) in text.lines().enumerate() {
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let err = |m: &str| format!("line {}: {m}", n + 1);
        let mut words = l.split_whitespace();
        let head = words.next().unwrap();
        if head.starts_with('.') {
            flush(&mut cur, &mut sys);
        }
        match head {
            ".model" => sys.name = words.next().unwrap_or("").to_string(),
            ".inputs" => {
                for w in words {
                    let b = base(w);
                    if !sys.inputs.contains(&b) {
                        sys.inputs.push(b);
                    }
                }
            }
            ".outputs" => {
                for w in words {
                    let b = base(w);
                    if !sys.outputs.contains(&b) {
                        sys.outputs.push(b);
                    }
                }
            }
            ".latch" => {
                let v: Vec<&str> = words.collect();
                if v.len() < 2 {
                    return Err(err("`.latch` needs input and output"));
                }
                let init = v.last().filter(|_| v.len() >= 3).map_or(false, |x| *x == "1");
                sys.latches.push(Latch { name: v[1].into(), init, next: v[0].into() });
            }
            ".names" => {
                let mut v: Vec<String> = words.map(String::from).collect();
                let w = v.pop().ok_or_else(|| err("`.names` needs an output"))?;
                cur = Some((w, v, Vec::new()));
            }
            ".end" => {}
            _ if head.starts_with('.') => return Err(err(&format!("unsupported directive `{head}`"))),
            _ => {
                let (_, ins, rows) = cur.as_mut().ok_or_else(|| err("cover row outside `.names`"))?;
                let parts: Vec<&str> = l.split_whitespace().collect();
                let (pat, outv) = match (ins.len(), parts.as_slice()) {
                    (0, [o]) => ("", *o),
                    (_, [p, o]) => (*p, *o),
                    _ => return Err(err("malformed cover row")),
                };
                if outv != "1" {
                    return Err(err("only on-set covers are supported"));
                }
                if pat.len() != ins.len() {
                    return Err(err("cover row width differs from input count"));
                }
                let mut lits = Vec::new();
                for (c, v) in pat.chars().zip(ins.iter()) {
                    match c {
                        '1' => lits.push(BoolExpr::var(v)),
                        '0' => lits.push(BoolExpr::not(BoolExpr::var(v))),
                        '-' => {}
                        _ => return Err(err("bad cover character")),
                    }
                }
                rows.push(BoolExpr::and_all(lits));
            }
        }
    }
    flush(&mut cur, &mut sys);
    Ok(sys)
}
