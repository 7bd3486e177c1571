// SPDX-License-Identifier: Apache-2.0
//! One reaction of a term: emissions and termination under a partial
//! environment, then the residual term once the environment is settled.
//!
//! `go` is the activation of the term in the current instant. A term that
//! already started is always evaluated with `go = 1`; only fresh subterms
//! in a continuation position see a computed activation.

use crate::ple::{AutDef, AutPos, Sub, Term};
use crate::BehavError;
use frontend::SigExpr;
use std::collections::BTreeMap;
use std::sync::Arc;
use xi_core::{and, or, tnot, Environment, XiValue, XiValue::*};

pub(crate) type Emissions = BTreeMap<String, XiValue>;

pub(crate) fn sig(e: &SigExpr, env: &Environment) -> XiValue {
    match e {
        SigExpr::Name(n) => env.get(n),
        SigExpr::And(a, b) => and(sig(a, env), sig(b, env)),
        SigExpr::Or(a, b) => or(sig(a, env), sig(b, env)),
        SigExpr::Not(a) => tnot(sig(a, env)),
    }
}

fn emit(em: &mut Emissions, s: &str, v: XiValue) {
    let e = em.entry(s.to_string()).or_insert(Absent);
    *e = or(*e, v);
}

fn error_of(c: XiValue) -> XiValue {
    if c == Error {
        Present
    } else {
        Absent
    }
}

/// Truth value of a settled condition.
fn decided(v: XiValue, what: &str) -> Result<bool, BehavError> {
    match v {
        Present => Ok(true),
        Absent => Ok(false),
        v => Err(BehavError::Undecided(format!("{what} is {v}"))),
    }
}

/// Emissions into `em` and the termination status.
pub(crate) fn react(t: &Term, go: XiValue, env: &Environment, em: &mut Emissions) -> XiValue {
    match t {
        Term::Nothing => go,
        Term::Halt => Absent,
        Term::Emit(s) => {
            emit(em, s, go);
            go
        }
        Term::Wait(_) => Absent,
        Term::IWait(s) => and(go, env.get(s)),
        Term::Present(c, p, q) => {
            let cv = sig(c, env);
            let t1 = react(p, and(go, cv), env, em);
            let t2 = react(q, and(go, tnot(cv)), env, em);
            or(or(t1, t2), error_of(cv))
        }
        Term::Seq(p, q) => {
            let t1 = react(p, go, env, em);
            react(q, t1, env, em)
        }
        Term::Par(p, q) => {
            let t1 = react(p, go, env, em);
            let t2 = react(q, go, env, em);
            and(t1, t2)
        }
        Term::Abort(p, s) => {
            let c = env.get(s);
            let tp = react(p, go, env, em);
            or(and(go, c), and(tnot(c), tp))
        }
        Term::Loop { cur, copies, next } => {
            let t1 = react(cur, go, env, em);
            react(&copies[*next], t1, env, em);
            Absent
        }
        Term::Local(_, p) => react(p, go, env, em),
        Term::Aut(def, pos) => react_aut(def, pos, go, env, em),
    }
}

fn react_aut(def: &AutDef, pos: &AutPos, go: XiValue, env: &Environment, em: &mut Emissions) -> XiValue {
    let fire = |ts: &[crate::ple::TransDef], em: &mut Emissions| {
        for t in ts {
            let c = t.trigger.as_ref().map_or(Present, |e| sig(e, env));
            let taken = and(go, c);
            for o in &t.action {
                emit(em, o, taken);
            }
        }
    };
    match pos {
        AutPos::Fresh => {
            fire(&def.initial, em);
            Absent
        }
        AutPos::Dead => Absent,
        AutPos::In { state, sub } => {
            fire(&def.outgoing[*state], em);
            let (rp, done) = match (sub, &def.states[*state].body) {
                (Sub::Pending, Some(b)) => (react(b, go, env, em), Absent),
                (Sub::Active(p), _) => (react(p, go, env, em), Absent),
                (Sub::Done, _) => (Absent, Present),
                _ => (Absent, Absent),
            };
            if *state != def.final_state {
                return Absent;
            }
            match def.states[*state].body {
                Some(_) => and(go, or(rp, done)),
                None => go,
            }
        }
    }
}

/// Residual term after a settled reaction.
pub(crate) fn residual(t: &Term, go: bool, env: &Environment) -> Result<Term, BehavError> {
    if !go {
        return Ok(t.clone());
    }
    let mut sink = Emissions::new();
    if decided(react(t, Present, env, &mut sink), "termination")? {
        return Ok(Term::Nothing);
    }
    let term_of = |p: &Term, g: bool| -> Result<bool, BehavError> {
        let mut sink = Emissions::new();
        decided(react(p, if g { Present } else { Absent }, env, &mut sink), "termination")
    };
    Ok(match t {
        Term::Nothing | Term::Halt => t.clone(),
        Term::Emit(_) => Term::Nothing,
        Term::Wait(s) => Term::IWait(s.clone()),
        Term::IWait(_) => t.clone(),
        Term::Present(c, p, q) => {
            if decided(sig(c, env), "present condition")? {
                residual(p, true, env)?
            } else {
                residual(q, true, env)?
            }
        }
        Term::Seq(p, q) => {
            if term_of(p, true)? {
                residual(q, true, env)?
            } else {
                Term::Seq(Box::new(residual(p, true, env)?), q.clone())
            }
        }
        Term::Par(p, q) => Term::Par(Box::new(residual(p, true, env)?), Box::new(residual(q, true, env)?)),
        Term::Abort(p, s) => {
            if decided(env.get(s), "abort signal")? {
                Term::Nothing
            } else {
                Term::Abort(Box::new(residual(p, true, env)?), s.clone())
            }
        }
        Term::Loop { cur, copies, next } => {
            if term_of(cur, true)? {
                Term::Loop { cur: Box::new(residual(&copies[*next], true, env)?), copies: copies.clone(), next: 1 - next }
            } else {
                Term::Loop { cur: Box::new(residual(cur, true, env)?), copies: copies.clone(), next: *next }
            }
        }
        Term::Local(n, p) => Term::Local(n.clone(), Box::new(residual(p, true, env)?)),
        Term::Aut(def, pos) => Term::Aut(def.clone(), residual_aut(def, pos, env)?),
    })
}

fn taken(ts: &[crate::ple::TransDef], env: &Environment) -> Result<Option<usize>, BehavError> {
    for t in ts {
        let c = t.trigger.as_ref().map_or(Present, |e| sig(e, env));
        if decided(c, "transition trigger")? {
            return Ok(Some(t.target));
        }
    }
    Ok(None)
}

fn enter(def: &Arc<AutDef>, target: usize) -> AutPos {
    let sub = if def.states[target].body.is_some() { Sub::Pending } else { Sub::None };
    AutPos::In { state: target, sub }
}

fn residual_aut(def: &Arc<AutDef>, pos: &AutPos, env: &Environment) -> Result<AutPos, BehavError> {
    Ok(match pos {
        AutPos::Fresh => match taken(&def.initial, env)? {
            Some(tgt) => enter(def, tgt),
            None => AutPos::Dead,
        },
        AutPos::Dead => AutPos::Dead,
        AutPos::In { state, sub } => {
            if let Some(tgt) = taken(&def.outgoing[*state], env)? {
                return Ok(enter(def, tgt));
            }
            let body = |p: &Term| -> Result<Sub, BehavError> {
                let mut sink = Emissions::new();
                Ok(if decided(react(p, Present, env, &mut sink), "body termination")? {
                    Sub::Done
                } else {
                    Sub::Active(Box::new(residual(p, true, env)?))
                })
            };
            let sub = match (sub, &def.states[*state].body) {
                (Sub::Pending, Some(b)) => body(b)?,
                (Sub::Active(p), _) => body(p)?,
                (s, _) => s.clone(),
            };
            AutPos::In { state: *state, sub }
        }
    })
}
