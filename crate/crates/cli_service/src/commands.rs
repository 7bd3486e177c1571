// SPDX-License-Identifier: Apache-2.0
//! Subcommands as library functions. Each returns human text and a JSON
//! record; `main` picks one.

use crate::engine::{self, Inputs};
use crate::error::{io_err, LeError};
use crate::pipeline::{self, Options};
use scheduler::{link, LinkStats, Sorted};
use serde_json::{json, Value};
use simulator::{format_trace, reach_check, Verdict};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    /// Exit status when the command itself succeeded.
    pub code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report { text, json, code: 0 }
    }
}

fn write(path: &Path, text: &str) -> Result<(), LeError> {
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

fn stats_json(s: &LinkStats) -> Value {
    json!({ "early_visits": s.early_visits, "late_visits": s.late_visits, "total": s.total })
}

fn stats_text(s: &LinkStats) -> String {
    format!("link: {} early / {} late updates over {} variables\n", s.early_visits, s.late_visits, s.total)
}

/// Compiles every module of `file` (or only `module`) to `<Module>.lec`.
pub fn compile(file: &Path, module: Option<&str>, out_dir: Option<&Path>, opts: &Options, verbose: bool) -> Result<Report, LeError> {
    let ms = pipeline::parse_checked(&pipeline::read(file)?)?;
    let dir = out_dir.map(Path::to_path_buf).unwrap_or_else(|| file.parent().map(Path::to_path_buf).unwrap_or_default());
    let roots: Vec<_> = match module {
        Some(_) => vec![pipeline::select(&ms, module)?],
        None => ms.iter().collect(),
    };
    std::fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
    let mut text = String::new();
    let mut units = Vec::new();
    for m in roots {
        let b = pipeline::build_module(m, &ms, Some(file), opts)?;
        let out = dir.join(format!("{}.lec", m.name));
        write(&out, &lec_io::write_lec(&b.unit.system, &b.unit.schedule))?;
        text.push_str(&format!("{} -> {}\n", m.name, out.display()));
        if verbose {
            text.push_str(&stats_text(&b.stats));
        }
        units.push(json!({
            "module": m.name,
            "output": out.display().to_string(),
            "registers": b.unit.system.register_count(),
            "runs": b.unit.system.runs.iter().map(|r| r.model.clone()).collect::<Vec<_>>(),
            "link": stats_json(&b.stats),
        }));
    }
    Ok(Report::ok(text, json!({ "units": units })))
}

/// Links `files` into one unit. When the first unit has run instances they
/// are resolved against the others by model name; otherwise the units are
/// merged pairwise.
pub fn link_files(files: &[PathBuf], out: &Path, opts: &Options, verbose: bool) -> Result<Report, LeError> {
    let (first, rest) = files.split_first().ok_or_else(|| LeError::Usage("link needs at least one unit".into()))?;
    let top = pipeline::load_lec(first)?;
    let (unit, stats) = if top.system.runs.is_empty() {
        let mut rtls = vec![pipeline::namespace(&top).1];
        let mut cur = pipeline::namespace(&top).0;
        let mut total = LinkStats::default();
        for f in rest {
            let (part, rtl) = pipeline::namespace(&pipeline::load_lec(f)?);
            rtls.push(rtl);
            let (next, st) = link(&cur, &part)?;
            total.early_visits += st.early_visits;
            total.late_visits += st.late_visits;
            total.total = st.total;
            cur = next;
        }
        if !rest.is_empty() {
            cur = pipeline::join_rtl(&cur, &rtls)?;
        }
        (cur, total)
    } else {
        let mut known = BTreeMap::new();
        for f in rest {
            let text = pipeline::read(f)?;
            let name = text
                .lines()
                .find_map(|l| l.strip_prefix(".model "))
                .ok_or_else(|| LeError::Usage(format!("{}: no `.model` line", f.display())))?;
            known.insert(name.trim().to_string(), f.clone());
        }
        pipeline::link_units(&top, &known, opts)?
    };
    write(out, &lec_io::write_lec(&unit.system, &unit.schedule))?;
    let mut text = format!("{}\n", out.display());
    if verbose {
        text.push_str(&stats_text(&stats));
    }
    Ok(Report::ok(text, json!({ "output": out.display().to_string(), "link": stats_json(&stats) })))
}

/// Loads a program ready for simulation: sources are built, units linked,
/// and the result finalized unless it already is.
pub fn load_executable(path: &Path, module: Option<&str>, opts: &Options) -> Result<Sorted, LeError> {
    let unit = if path.extension().is_some_and(|e| e == "lec") {
        let top = pipeline::load_lec(path)?;
        pipeline::link_units(&top, &BTreeMap::new(), opts)?.0
    } else {
        pipeline::build_file(path, module, opts)?.unit
    };
    if unit.system.is_finalized() && unit.system.runs.is_empty() {
        return Ok(unit);
    }
    pipeline::finalize_unit(&unit, "bdd")
}

pub fn finalize_file(
    input: &Path,
    out_lec: Option<&Path>,
    out_blif: Option<&Path>,
    canon: &str,
    opts: &Options,
) -> Result<Report, LeError> {
    let top = pipeline::load_lec(input)?;
    let (unit, _) = pipeline::link_units(&top, &BTreeMap::new(), opts)?;
    let f = pipeline::finalize_unit(&unit, canon)?;
    let stem = input.with_extension("");
    let lec = out_lec.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from(format!("{}.final.lec", stem.display())));
    let blif = out_blif.map(Path::to_path_buf).unwrap_or_else(|| stem.with_extension("blif"));
    write(&lec, &lec_io::write_lec(&f.system, &f.schedule))?;
    write(&blif, &finalize::export_blif(&f.system))?;
    let text = format!("{}\n{}\n", lec.display(), blif.display());
    Ok(Report::ok(
        text,
        json!({ "lec": lec.display().to_string(), "blif": blif.display().to_string(), "registers": f.system.register_count() }),
    ))
}

/// One instant per line; `#` lines are comments, blank lines are instants
/// with every input absent.
pub fn parse_input_file(text: &str) -> Result<Vec<Inputs>, LeError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('#'))
        .map(|(i, l)| simulator::parse_inputs_line(l).map_err(|m| LeError::Usage(format!("inputs line {}: {m}", i + 1))))
        .collect()
}

pub fn simulate(path: &Path, module: Option<&str>, inputs: &[Inputs], opts: &Options) -> Result<Report, LeError> {
    let unit = load_executable(path, module, opts)?;
    let sim = pipeline::simulator_of(&unit)?;
    let trace = sim.run_trace(inputs)?;
    let json = json!({ "trace": trace.iter().map(crate::session::step_json).collect::<Vec<_>>() });
    Ok(Report::ok(format_trace(&trace), json))
}

pub fn check(path: &Path, module: Option<&str>, alarm: &str, max_states: usize, opts: &Options) -> Result<Report, LeError> {
    let unit = load_executable(path, module, opts)?;
    let sim = pipeline::simulator_of(&unit)?;
    let v = reach_check(&sim, alarm, max_states)?;
    Ok(match v {
        Verdict::Safe { states } => Report::ok(
            format!("safe: `{alarm}` is never emitted ({states} states)\n"),
            json!({ "verdict": "safe", "states": states }),
        ),
        Verdict::Counterexample { inputs } => {
            let mut text = format!("counterexample: `{alarm}` emitted after {} instants\n", inputs.len());
            for (k, i) in inputs.iter().enumerate() {
                let on: Vec<&str> = i.iter().filter(|(_, v)| **v).map(|(k, _)| k.as_str()).collect();
                text.push_str(&format!("t={k} {}\n", on.join(" ")));
            }
            Report { text, json: json!({ "verdict": "counterexample", "inputs": inputs }), code: 5 }
        }
        Verdict::StateBudgetExceeded { explored } => Report {
            text: format!("state budget exceeded after {explored} states\n"),
            json: json!({ "verdict": "budget-exceeded", "explored": explored }),
            code: 6,
        },
    })
}

/// Runs a source program on one engine, without finalization.
pub fn interpret(path: &Path, module: Option<&str>, engine_name: &str, inputs: &[Inputs], opts: &Options) -> Result<Report, LeError> {
    let e = engine::engine(engine_name).ok_or_else(|| LeError::Usage(format!("unknown engine `{engine_name}`")))?;
    let e: Box<dyn engine::Engine> = if e.name() == "equational" { Box::new(engine::Equational { opts: opts.clone() }) } else { e };
    let ms = pipeline::parse_checked(&pipeline::read(path)?)?;
    let root = pipeline::select(&ms, module)?;
    let res = pipeline::resolve(root, &ms, Some(path), opts)?;
    let mut steps = e.run(&res, inputs)?;
    // nothing is observable after termination
    if let Some(k) = steps.iter().position(|s| s.term == xi_core::Present) {
        steps.truncate(k + 1);
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    for (k, s) in steps.iter().enumerate() {
        let outs: Vec<String> = s.outputs.iter().map(|(n, v)| format!("{n}={v}")).collect();
        text.push_str(&format!("t={k} out{{{}}} term={}\n", outs.join(","), s.term));
        let o: serde_json::Map<String, Value> = s.outputs.iter().map(|(n, v)| (n.clone(), Value::from(v.ascii()))).collect();
        rows.push(json!({ "instant": k, "outputs": o, "term": s.term.ascii() }));
    }
    Ok(Report::ok(text, json!({ "engine": e.name(), "reactions": rows })))
}
