// SPDX-License-Identifier: Apache-2.0
//! Random well-formed programs for differential testing.

use crate::engine::Inputs;
use frontend::*;
use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub max_depth: usize,
    /// Upper bound on declared plus local signals.
    pub max_signals: usize,
    /// Chance of a module body being an automaton.
    pub automaton: f64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { max_depth: 6, max_signals: 4, automaton: 0.15 }
    }
}

struct Ctx {
    inputs: Vec<String>,
    emit: Vec<String>,
    local_budget: usize,
    locals: usize,
}

fn pick<R: Rng + ?Sized>(rng: &mut R, v: &[String]) -> String {
    v.choose(rng).cloned().unwrap()
}

fn readable(c: &Ctx) -> Vec<String> {
    c.inputs.iter().chain(&c.emit).cloned().collect()
}

fn sig_expr(rng: &mut impl Rng, c: &Ctx, depth: usize) -> SigExpr {
    let r = readable(c);
    // inputs are tested more often than emitted signals
    let leaf = |rng: &mut dyn rand::RngCore| {
        if rng.gen_bool(0.75) {
            SigExpr::Name(pick(rng, &c.inputs))
        } else {
            SigExpr::Name(pick(rng, &r))
        }
    };
    if depth == 0 || rng.gen_bool(0.6) {
        return leaf(rng);
    }
    match rng.gen_range(0..3) {
        0 => SigExpr::and(sig_expr(rng, c, depth - 1), sig_expr(rng, c, depth - 1)),
        1 => SigExpr::or(sig_expr(rng, c, depth - 1), sig_expr(rng, c, depth - 1)),
        _ => SigExpr::not(sig_expr(rng, c, depth - 1)),
    }
}

fn leaf(rng: &mut impl Rng, c: &Ctx) -> Stmt {
    match rng.gen_range(0..10) {
        0 => Stmt::Nothing,
        1..=3 => Stmt::Pause,
        4..=6 => Stmt::Emit(pick(rng, &c.emit)),
        7 | 8 => {
            let r = if rng.gen_bool(0.8) { c.inputs.clone() } else { readable(c) };
            Stmt::Wait(pick(rng, &r))
        }
        _ => {
            if rng.gen_bool(0.3) {
                Stmt::Halt
            } else {
                Stmt::Pause
            }
        }
    }
}

fn stmt(rng: &mut impl Rng, c: &mut Ctx, depth: usize) -> Stmt {
    if depth <= 1 || rng.gen_bool(0.2) {
        return leaf(rng, c);
    }
    let d = depth - 1;
    match rng.gen_range(0..14) {
        0..=2 => Stmt::seq(stmt(rng, c, d), stmt(rng, c, d)),
        3 | 4 => Stmt::par(stmt(rng, c, d), stmt(rng, c, d)),
        5..=7 => {
            let e = sig_expr(rng, c, 2);
            Stmt::present(e, stmt(rng, c, d), stmt(rng, c, d))
        }
        8 | 9 => {
            let s = if rng.gen_bool(0.85) { pick(rng, &c.inputs) } else { pick(rng, &readable(c)) };
            Stmt::abort(stmt(rng, c, d), s)
        }
        10 | 11 => {
            let body = stmt(rng, c, d);
            let body = if possibly_instantaneous(&body) { Stmt::seq(body, Stmt::Pause) } else { body };
            Stmt::looped(body)
        }
        _ if c.local_budget > 0 => {
            c.local_budget -= 1;
            c.locals += 1;
            let l = format!("L{}", c.locals);
            c.emit.push(l.clone());
            let p = stmt(rng, c, d);
            c.emit.retain(|x| x != &l);
            Stmt::local(vec![l], p)
        }
        _ => Stmt::seq(stmt(rng, c, d), stmt(rng, c, d)),
    }
}

fn automaton(rng: &mut impl Rng, c: &Ctx) -> Automaton {
    let n = rng.gen_range(1..=3);
    let mut states: Vec<State> = (0..n)
        .map(|k| State { name: format!("S{k}"), is_final: false, run: None, action: Vec::new() })
        .collect();
    states.push(State { name: "F".into(), is_final: true, run: None, action: Vec::new() });
    let names: Vec<String> = states.iter().map(|s| s.name.clone()).collect();
    let action = |rng: &mut dyn rand::RngCore| {
        if rng.gen_bool(0.6) {
            vec![pick(rng, &c.emit)]
        } else {
            Vec::new()
        }
    };
    let mut transitions = Vec::new();
    let mut group = |rng: &mut dyn rand::RngCore, initial: bool, source: Option<String>| {
        let i = pick(rng, &c.inputs);
        let triggers: Vec<Option<SigExpr>> = match rng.gen_range(0..3) {
            0 => vec![None],
            1 => vec![Some(SigExpr::name(&i))],
            _ => vec![Some(SigExpr::name(&i)), Some(SigExpr::not(SigExpr::name(&i)))],
        };
        for t in triggers {
            let target = Some(names[rng.gen_range(0..names.len())].clone());
            transitions.push(Transition { initial, source: source.clone(), trigger: t, action: action(rng), target });
        }
    };
    group(rng, true, None);
    for s in &names[..n] {
        group(rng, false, Some(s.clone()));
    }
    Automaton { states, transitions }
}

/// A random module named `name`. Signals are `I1..`, `O1..`, locals `L1..`.
pub fn random_module(rng: &mut impl Rng, cfg: &GenConfig) -> Module {
    let n_in = rng.gen_range(1..=2.min(cfg.max_signals - 1));
    let n_out = rng.gen_range(1..=2.min(cfg.max_signals - n_in));
    let inputs: Vec<String> = (1..=n_in).map(|k| format!("I{k}")).collect();
    let outputs: Vec<String> = (1..=n_out).map(|k| format!("O{k}")).collect();
    let mut c = Ctx {
        inputs: inputs.clone(),
        emit: outputs.clone(),
        local_budget: cfg.max_signals - n_in - n_out,
        locals: 0,
    };
    let body = if rng.gen_bool(cfg.automaton) {
        Body::Automaton(automaton(rng, &c))
    } else {
        let depth = rng.gen_range(2..=cfg.max_depth);
        let s = stmt(rng, &mut c, depth);
        if rng.gen_bool(0.3) {
            Body::Stmt(Stmt::looped(Stmt::seq(s, Stmt::Pause)))
        } else {
            Body::Stmt(s)
        }
    };
    Module { name: "R".into(), inputs, outputs, runs: Vec::new(), body, line: 1 }
}

/// Defined (0/1) input vectors.
pub fn random_inputs(rng: &mut impl Rng, inputs: &[String], len: usize) -> Vec<Inputs> {
    (0..len)
        .map(|_| inputs.iter().map(|i| (i.clone(), xi_core::xi_of_bool(rng.gen_bool(0.5)))).collect())
        .collect()
}
