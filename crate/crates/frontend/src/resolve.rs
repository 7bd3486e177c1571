// SPDX-License-Identifier: Apache-2.0
//! Binding of `run` statements to callee modules.

use crate::ast::*;
use crate::error::FrontendError;
use crate::parser::parse_file;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Interface {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

impl Interface {
    pub fn of(m: &Module) -> Self {
        Interface { inputs: m.inputs.clone(), outputs: m.outputs.clone() }
    }

    pub fn signals(&self) -> impl Iterator<Item = &String> {
        self.inputs.iter().chain(&self.outputs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Callee {
    /// LE source, compiled by inlining.
    Source { module: Module, file: Option<PathBuf> },
    /// Precompiled LEC unit, linked after compilation.
    Compiled { path: PathBuf, interface: Interface },
}

impl Callee {
    pub fn interface(&self) -> Interface {
        match self {
            Callee::Source { module, .. } => Interface::of(module),
            Callee::Compiled { interface, .. } => interface.clone(),
        }
    }
}

/// A root module together with every module transitively reached by `run`.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub root: Module,
    pub callees: BTreeMap<String, Callee>,
}

#[derive(Clone, Debug, Default)]
pub struct ResolveOptions {
    pub search_paths: Vec<PathBuf>,
    /// Look for `.le` before `.lec` in every location.
    pub prefer_source: bool,
}

struct Ctx<'a> {
    opts: &'a ResolveOptions,
    load: &'a dyn Fn(&Path) -> Result<Interface, String>,
    out: BTreeMap<String, Callee>,
    stack: Vec<String>,
}

/// Resolves the run statements of `root`.
///
/// Lookup order per callee: modules of the same file, the directory named
/// by the matching `Run:` declaration, each search path, then the directory
/// of the source file. `load_interface` reads the interface of a LEC unit.
pub fn resolve_runs(
    root: &Module,
    same_file: &[Module],
    file: Option<&Path>,
    opts: &ResolveOptions,
    load_interface: &dyn Fn(&Path) -> Result<Interface, String>,
) -> Result<Resolved, FrontendError> {
    let mut ctx = Ctx { opts, load: load_interface, out: BTreeMap::new(), stack: vec![root.name.clone()] };
    visit(root, same_file, file, &mut ctx)?;
    let callees = ctx.out;
    check_bindings(root, &|n| callees.get(n).map(|c| c.interface()))?;
    for c in callees.values() {
        if let Callee::Source { module, .. } = c {
            check_bindings(module, &|n| callees.get(n).map(|c| c.interface()))?;
        }
    }
    Ok(Resolved { root: root.clone(), callees })
}

fn visit(m: &Module, same_file: &[Module], file: Option<&Path>, ctx: &mut Ctx) -> Result<(), FrontendError> {
    let mut names: Vec<String> = Vec::new();
    for r in run_calls(&m.body) {
        if !names.contains(&r.module) {
            names.push(r.module.clone());
        }
    }
    for name in names {
        if ctx.stack.contains(&name) {
            let mut cyc = ctx.stack.clone();
            cyc.push(name);
            return Err(FrontendError::RecursiveRun(cyc));
        }
        if ctx.out.contains_key(&name) {
            continue;
        }
        let (callee, sub_file, siblings) = find(&name, m, same_file, file, ctx)?;
        ctx.out.insert(name.clone(), callee.clone());
        if let Callee::Source { module, .. } = &callee {
            ctx.stack.push(name.clone());
            visit(module, &siblings, sub_file.as_deref(), ctx)?;
            ctx.stack.pop();
        }
    }
    Ok(())
}

type Found = (Callee, Option<PathBuf>, Vec<Module>);

fn find(name: &str, caller: &Module, same_file: &[Module], file: Option<&Path>, ctx: &Ctx) -> Result<Found, FrontendError> {
    if let Some(m) = same_file.iter().find(|m| m.name == name) {
        let c = Callee::Source { module: m.clone(), file: file.map(Path::to_path_buf) };
        return Ok((c, file.map(Path::to_path_buf), same_file.to_vec()));
    }
    let src_dir = file.and_then(Path::parent).map(Path::to_path_buf);
    let mut dirs: Vec<PathBuf> = Vec::new();
    for d in caller.runs.iter().filter(|d| d.module == name) {
        let p = PathBuf::from(&d.path);
        if p.is_relative() {
            if let Some(sd) = &src_dir {
                dirs.push(sd.join(&p));
            }
        }
        dirs.push(p);
    }
    dirs.extend(ctx.opts.search_paths.iter().cloned());
    if let Some(sd) = src_dir {
        dirs.push(sd);
    }
    for dir in dirs {
        let lec = dir.join(format!("{name}.lec"));
        let le = dir.join(format!("{name}.le"));
        let order = if ctx.opts.prefer_source { [&le, &lec] } else { [&lec, &le] };
        for cand in order {
            if !cand.is_file() {
                continue;
            }
            if cand.extension().is_some_and(|e| e == "lec") {
                let interface = (ctx.load)(cand)
                    .map_err(|msg| FrontendError::Io { path: cand.display().to_string(), msg })?;
                return Ok((Callee::Compiled { path: cand.clone(), interface }, None, Vec::new()));
            }
            let text = std::fs::read_to_string(cand)
                .map_err(|e| FrontendError::Io { path: cand.display().to_string(), msg: e.to_string() })?;
            let ms = parse_file(&text)?;
            if let Some(m) = ms.iter().find(|m| m.name == name) {
                let c = Callee::Source { module: m.clone(), file: Some(cand.clone()) };
                return Ok((c, Some(cand.clone()), ms));
            }
        }
    }
    Err(FrontendError::ModuleNotFound(name.to_string()))
}

/// Checks every run call of `m` against its callee interface.
///
/// A callee signal is bound to its renaming, or else to the caller signal of
/// the same name, which must be in scope at the call. A callee output may
/// not be bound to a caller input.
pub fn check_bindings(m: &Module, iface: &dyn Fn(&str) -> Option<Interface>) -> Result<(), FrontendError> {
    let mut scope: Vec<String> = m.inputs.iter().chain(&m.outputs).cloned().collect();
    match &m.body {
        Body::Stmt(s) => walk(s, m, &mut scope, iface),
        Body::Automaton(a) => {
            for st in &a.states {
                if let Some(r) = &st.run {
                    check_call(r, m, &scope, iface)?;
                }
            }
            Ok(())
        }
    }
}

fn walk(s: &Stmt, m: &Module, scope: &mut Vec<String>, iface: &dyn Fn(&str) -> Option<Interface>) -> Result<(), FrontendError> {
    match s {
        Stmt::Run(r) => check_call(r, m, scope, iface),
        Stmt::Local(names, p) => {
            let depth = scope.len();
            scope.extend(names.iter().cloned());
            walk(p, m, scope, iface)?;
            scope.truncate(depth);
            Ok(())
        }
        Stmt::Present(_, p, q) | Stmt::Seq(p, q) | Stmt::Par(p, q) => {
            walk(p, m, scope, iface)?;
            walk(q, m, scope, iface)
        }
        Stmt::Abort(p, _) | Stmt::Loop(p) => walk(p, m, scope, iface),
        _ => Ok(()),
    }
}

fn check_call(r: &RunCall, m: &Module, scope: &[String], iface: &dyn Fn(&str) -> Option<Interface>) -> Result<(), FrontendError> {
    let callee = r.module.clone();
    let Some(i) = iface(&r.module) else {
        return Err(FrontendError::ModuleNotFound(callee));
    };
    for (_, formal) in &r.renamings {
        if !i.signals().any(|s| s == formal) {
            return Err(FrontendError::UnknownFormal { callee, formal: formal.clone() });
        }
    }
    for f in i.signals() {
        let actual = r.actual(f);
        if !scope.iter().any(|s| s == actual) {
            return Err(FrontendError::Binding {
                callee,
                msg: format!("signal `{f}` has no binding `{actual}` in module {}", m.name),
            });
        }
    }
    for o in &i.outputs {
        let actual = r.actual(o);
        if m.inputs.iter().any(|s| s == actual) && !i.inputs.contains(o) {
            return Err(FrontendError::Binding {
                callee,
                msg: format!("output `{o}` bound to input `{actual}` of module {}", m.name),
            });
        }
    }
    Ok(())
}
