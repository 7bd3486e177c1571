// SPDX-License-Identifier: Apache-2.0
//! Source to executable system: parse, resolve, compile, link, finalize.

use crate::error::{io_err, LeError};
use circuitgen::{compile, CompileOptions};
use frontend::{check_static, parse_file, resolve_runs, Callee, Interface, Module, ResolveOptions, Resolved, Severity};
use scheduler::{link_runs, LinkStats, Sorted};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub search_paths: Vec<PathBuf>,
    /// Inline every callee found as source even when a `.lec` is available.
    pub prefer_source: bool,
    /// Leave compiled callees as `.run` instances instead of linking them.
    pub no_link: bool,
}

pub fn read(path: &Path) -> Result<String, LeError> {
    std::fs::read_to_string(path).map_err(|e| io_err(path, e))
}

/// Parses a file and runs the static checks on every module.
pub fn parse_checked(text: &str) -> Result<Vec<Module>, LeError> {
    let ms = parse_file(text)?;
    let errs: Vec<_> = ms
        .iter()
        .flat_map(check_static)
        .filter(|d| d.severity == Severity::Error)
        .collect();
    if !errs.is_empty() {
        return Err(LeError::Static(errs));
    }
    Ok(ms)
}

fn lec_interface(p: &Path) -> Result<Interface, String> {
    let text = std::fs::read_to_string(p).map_err(|e| e.to_string())?;
    let (inputs, outputs) = lec_io::read_interface(&text).map_err(|e| e.to_string())?;
    Ok(Interface { inputs, outputs })
}

pub fn resolve(root: &Module, siblings: &[Module], file: Option<&Path>, opts: &Options) -> Result<Resolved, LeError> {
    let ro = ResolveOptions { search_paths: opts.search_paths.clone(), prefer_source: opts.prefer_source };
    Ok(resolve_runs(root, siblings, file, &ro, &lec_interface)?)
}

/// Compiles a resolved module to a sorted system; compiled callees stay as
/// run instances.
pub fn compile_resolved(res: &Resolved) -> Result<Sorted, LeError> {
    let sys = compile(res, &CompileOptions::default())?.lower();
    Ok(Sorted::new(sys)?)
}

pub fn load_lec(path: &Path) -> Result<Sorted, LeError> {
    let text = read(path)?;
    let (system, schedule) =
        lec_io::read_lec(&text).map_err(|err| LeError::Lec { path: path.display().to_string(), err })?;
    Ok(Sorted { system, schedule })
}

/// Links run instances against compiled units. Models are looked up among
/// `known` first, then as `<model>.lec` in each search path.
pub fn link_units(top: &Sorted, known: &BTreeMap<String, PathBuf>, opts: &Options) -> Result<(Sorted, LinkStats), LeError> {
    if top.system.runs.is_empty() {
        return Ok((top.clone(), LinkStats::default()));
    }
    let mut cache: BTreeMap<String, Sorted> = BTreeMap::new();
    let mut failure: Option<LeError> = None;
    let mut models: Vec<String> = top.system.runs.iter().map(|r| r.model.clone()).collect();
    while let Some(m) = models.pop() {
        if cache.contains_key(&m) {
            continue;
        }
        let path = known
            .get(&m)
            .cloned()
            .or_else(|| opts.search_paths.iter().map(|d| d.join(format!("{m}.lec"))).find(|p| p.is_file()));
        match path.map(|p| load_lec(&p)) {
            Some(Ok(s)) => {
                models.extend(s.system.runs.iter().map(|r| r.model.clone()));
                cache.insert(m, s);
            }
            Some(Err(e)) => {
                failure = Some(e);
                break;
            }
            None => {}
        }
    }
    if let Some(e) = failure {
        return Err(e);
    }
    check_interfaces(&top.system, &cache)?;
    for s in cache.values() {
        check_interfaces(&s.system, &cache)?;
    }
    Ok(link_runs(top, &|m| cache.get(m).cloned())?)
}

fn check_interfaces(sys: &circuitgen::BooleanSystem, units: &BTreeMap<String, Sorted>) -> Result<(), LeError> {
    for r in &sys.runs {
        let Some(u) = units.get(&r.model) else { continue };
        let iface: Vec<&String> = u.system.inputs.iter().chain(&u.system.outputs).collect();
        for (f, _) in &r.bindings {
            if !iface.contains(&f) {
                return Err(LeError::Interface(format!("`{}` has no signal `{f}`", r.model)));
            }
        }
        for s in &iface {
            if !r.bindings.iter().any(|(f, _)| f == *s) {
                return Err(LeError::Interface(format!("run of `{}` leaves `{s}` unbound", r.model)));
            }
        }
    }
    Ok(())
}

/// Paths of the compiled callees of a resolution.
pub fn compiled_callees(res: &Resolved) -> BTreeMap<String, PathBuf> {
    res.callees
        .iter()
        .filter_map(|(n, c)| match c {
            Callee::Compiled { path, .. } => Some((n.clone(), path.clone())),
            Callee::Source { .. } => None,
        })
        .collect()
}

/// Result of building one module from source.
#[derive(Clone, Debug)]
pub struct Built {
    pub unit: Sorted,
    pub stats: LinkStats,
}

/// Builds `module` (default: the last module of the file) from a source file.
pub fn build_file(path: &Path, module: Option<&str>, opts: &Options) -> Result<Built, LeError> {
    let text = read(path)?;
    build_text(&text, Some(path), module, opts)
}

pub fn build_text(text: &str, file: Option<&Path>, module: Option<&str>, opts: &Options) -> Result<Built, LeError> {
    let ms = parse_checked(text)?;
    let root = select(&ms, module)?;
    build_module(root, &ms, file, opts)
}

pub fn select<'a>(ms: &'a [Module], module: Option<&str>) -> Result<&'a Module, LeError> {
    match module {
        Some(n) => ms.iter().find(|m| m.name == n).ok_or_else(|| LeError::Usage(format!("no module `{n}` in file"))),
        None => ms.last().ok_or_else(|| LeError::Usage("file contains no module".into())),
    }
}

pub fn build_module(root: &Module, siblings: &[Module], file: Option<&Path>, opts: &Options) -> Result<Built, LeError> {
    let res = resolve(root, siblings, file, opts)?;
    let unit = compile_resolved(&res)?;
    if opts.no_link {
        return Ok(Built { unit, stats: LinkStats::default() });
    }
    let (unit, stats) = link_units(&unit, &compiled_callees(&res), opts)?;
    Ok(Built { unit, stats })
}

/// Moves every wire that is not an interface signal under `<model>.`, so
/// independently compiled units share only their signals. Returns the
/// renamed unit and its RTL wire.
pub fn namespace(u: &Sorted) -> (Sorted, String) {
    let sys = &u.system;
    let keep: std::collections::BTreeSet<String> = sys.input_wires().into_iter().chain(sys.outputs.iter().flat_map(|o| [circuitgen::def_of(o), circuitgen::val_of(o)])).collect();
    let p = format!("{}.", sys.name);
    let rn = |w: &str| if keep.contains(w) { w.to_string() } else { format!("{p}{w}") };
    let mut s = sys.clone();
    s.equations = sys.equations.iter().map(|(k, e)| (rn(k), e.rename(&rn))).collect();
    for l in &mut s.latches {
        l.name = rn(&l.name);
        l.next = rn(&l.next);
    }
    for r in &mut s.runs {
        for (_, a) in &mut r.bindings {
            *a = rn(a);
        }
    }
    let mut sched = u.schedule.clone();
    sched.early = u.schedule.early.iter().map(|(k, v)| (rn(k), *v)).collect();
    sched.late = u.schedule.late.iter().map(|(k, v)| (rn(k), *v)).collect();
    (Sorted { system: s, schedule: sched }, format!("{p}{}", circuitgen::CTL_RTL))
}

/// The merged unit terminates when every part has.
pub fn join_rtl(u: &Sorted, rtls: &[String]) -> Result<Sorted, LeError> {
    use circuitgen::XiExpr;
    let mut e = XiExpr::wire(&rtls[0]);
    for r in &rtls[1..] {
        e = XiExpr::And(Box::new(e), Box::new(XiExpr::wire(r)));
    }
    let (d, v) = e.lower();
    let mut s = u.system.clone();
    s.equations.insert(circuitgen::def_of(circuitgen::CTL_RTL), d);
    s.equations.insert(circuitgen::val_of(circuitgen::CTL_RTL), v);
    Ok(Sorted::new(s)?)
}

/// Finalizes a linked unit with the named canonical form.
pub fn finalize_unit(unit: &Sorted, canon: &str) -> Result<Sorted, LeError> {
    let c = finalize::canonicalizer(canon).ok_or_else(|| LeError::Usage(format!("unknown canonical form `{canon}`")))?;
    if !unit.system.runs.is_empty() {
        return Err(simulator::SimError::Unlinked(unit.system.runs.iter().map(|r| r.prefix.clone()).collect()).into());
    }
    let (system, schedule) = finalize::finalize(&unit.system, c.as_ref());
    Ok(Sorted { system, schedule })
}

pub fn simulator_of(unit: &Sorted) -> Result<simulator::Simulator, LeError> {
    Ok(simulator::Simulator::new(&unit.system, &unit.schedule)?)
}
