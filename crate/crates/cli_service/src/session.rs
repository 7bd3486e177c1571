// SPDX-License-Identifier: Apache-2.0
//! Simulation sessions driven by JSON requests.
//!
//! Requests carry an `op` field: `create-session`, `get-interface`, `step`,
//! `reset`, `get-trace`, `delete`. Every response has `ok`; failures carry
//! `error: {kind, message}`.

use crate::error::LeError;
use crate::pipeline::{self, Options};
use scheduler::Sorted;
use serde::Deserialize;
use serde_json::{json, Value};
use simulator::{format_step, SimState, Simulator, StepResult};
use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use xi_core::XiValue;

#[derive(Debug, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Request {
    CreateSession {
        #[serde(default)]
        source: Option<String>,
        #[serde(default)]
        lec: Option<String>,
        #[serde(default)]
        module: Option<String>,
    },
    GetInterface {
        session: u64,
    },
    Step {
        session: u64,
        #[serde(default)]
        present: Vec<String>,
    },
    Reset {
        session: u64,
    },
    GetTrace {
        session: u64,
    },
    Delete {
        session: u64,
    },
}

pub struct Session {
    pub id: u64,
    pub unit: Sorted,
    sim: Simulator,
    state: SimState,
    trace: Vec<StepResult>,
}

impl Session {
    pub fn new(id: u64, unit: Sorted) -> Result<Session, LeError> {
        let sim = pipeline::simulator_of(&unit)?;
        let state = sim.initial_state();
        Ok(Session { id, unit, sim, state, trace: Vec::new() })
    }

    pub fn interface(&self) -> Value {
        json!({
            "name": self.sim.name,
            "inputs": self.sim.inputs,
            "outputs": self.sim.outputs,
            "registers": self.sim.latch_names(),
        })
    }

    /// One instant with the listed inputs present and every other input absent.
    pub fn step(&mut self, present: &[String]) -> Result<&StepResult, LeError> {
        for p in present {
            if !self.sim.inputs.contains(p) {
                return Err(simulator::SimError::UnknownInput(p.clone()).into());
            }
        }
        let inputs: BTreeMap<String, XiValue> = self
            .sim
            .inputs
            .iter()
            .map(|i| (i.clone(), xi_core::xi_of_bool(present.contains(i))))
            .collect();
        let (r, next) = self.sim.step(&self.state, &inputs)?;
        self.state = next;
        self.trace.push(r);
        Ok(self.trace.last().unwrap())
    }

    pub fn reset(&mut self) {
        self.state = self.sim.initial_state();
        self.trace.clear();
    }

    pub fn trace(&self) -> &[StepResult] {
        &self.trace
    }
}

pub fn step_json(r: &StepResult) -> Value {
    let sig = |m: &BTreeMap<String, XiValue>| -> Value {
        m.iter().map(|(k, v)| (k.clone(), Value::from(v.ascii()))).collect::<serde_json::Map<_, _>>().into()
    };
    json!({
        "instant": r.instant,
        "inputs": sig(&r.inputs),
        "outputs": sig(&r.outputs),
        "registers": r.registers,
        "rtl": r.rtl,
        "error": r.error,
        "line": format_step(r),
    })
}

/// All live sessions. Each session sits behind its own lock, so commands
/// on one session are serialized while distinct sessions proceed in parallel.
#[derive(Default)]
pub struct SessionService {
    pub opts: Options,
    next: AtomicU64,
    sessions: Mutex<HashMap<u64, Arc<Mutex<Session>>>>,
}

impl SessionService {
    pub fn new(opts: Options) -> Self {
        SessionService { opts, next: AtomicU64::new(1), sessions: Mutex::new(HashMap::new()) }
    }

    fn get(&self, id: u64) -> Result<Arc<Mutex<Session>>, LeError> {
        self.sessions.lock().unwrap().get(&id).cloned().ok_or(LeError::NotFound(id))
    }

    /// Loads a program, finalizes it and returns the new session id.
    pub fn create(&self, source: Option<&str>, lec: Option<&str>, module: Option<&str>) -> Result<u64, LeError> {
        let unit = match (source, lec) {
            (Some(src), None) => pipeline::build_text(src, None, module, &self.opts)?.unit,
            (None, Some(text)) => {
                let (system, schedule) = lec_io::read_lec(text).map_err(|err| LeError::Lec { path: "<request>".into(), err })?;
                pipeline::link_units(&Sorted { system, schedule }, &BTreeMap::new(), &self.opts)?.0
            }
            _ => return Err(LeError::Usage("create-session needs exactly one of `source` or `lec`".into())),
        };
        let unit = pipeline::finalize_unit(&unit, "bdd")?;
        let id = self.next.fetch_add(1, Ordering::SeqCst);
        let s = Session::new(id, unit)?;
        self.sessions.lock().unwrap().insert(id, Arc::new(Mutex::new(s)));
        Ok(id)
    }

    pub fn execute(&self, req: Request) -> Result<Value, LeError> {
        match req {
            Request::CreateSession { source, lec, module } => {
                let id = self.create(source.as_deref(), lec.as_deref(), module.as_deref())?;
                let s = self.get(id)?;
                let iface = s.lock().unwrap().interface();
                Ok(json!({ "session": id, "interface": iface }))
            }
            Request::GetInterface { session } => Ok(json!({ "interface": self.get(session)?.lock().unwrap().interface() })),
            Request::Step { session, present } => {
                let s = self.get(session)?;
                let mut s = s.lock().unwrap();
                Ok(json!({ "step": step_json(s.step(&present)?) }))
            }
            Request::Reset { session } => {
                self.get(session)?.lock().unwrap().reset();
                Ok(json!({ "instant": 0 }))
            }
            Request::GetTrace { session } => {
                let s = self.get(session)?;
                let s = s.lock().unwrap();
                Ok(json!({ "trace": s.trace().iter().map(step_json).collect::<Vec<_>>() }))
            }
            Request::Delete { session } => {
                self.sessions.lock().unwrap().remove(&session).ok_or(LeError::NotFound(session))?;
                Ok(json!({ "deleted": session }))
            }
        }
    }

    /// JSON in, JSON out; errors become `{ok: false, error}` payloads.
    pub fn handle(&self, body: &Value) -> Value {
        let r = serde_json::from_value::<Request>(body.clone())
            .map_err(|e| LeError::Usage(format!("bad request: {e}")))
            .and_then(|req| self.execute(req));
        match r {
            Ok(mut v) => {
                v["ok"] = Value::Bool(true);
                v
            }
            Err(e) => json!({ "ok": false, "error": e.to_json() }),
        }
    }
}
