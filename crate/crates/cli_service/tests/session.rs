// SPDX-License-Identifier: Apache-2.0
use cli_service::pipeline::{self, Options};
use cli_service::SessionService;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use tower::ServiceExt;

fn corpus(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel)
}

fn control_lec() -> String {
    let opts = Options { prefer_source: true, ..Default::default() };
    let u = pipeline::build_file(&corpus("control/Control.le"), None, &opts).unwrap().unit;
    lec_io::write_lec(&u.system, &u.schedule)
}

const WIO: &str = "module WIO: Input: I; Output: O; wait I >> emit O end";

#[test]
fn control_session_from_lec() {
    let svc = SessionService::new(Options::default());
    let r = svc.handle(&json!({"op": "create-session", "lec": control_lec()}));
    assert_eq!(r["ok"], true, "{r}");
    let id = r["session"].as_u64().unwrap();
    let iface = &r["interface"];
    assert_eq!(iface["name"], "Control");
    assert_eq!(iface["inputs"].as_array().unwrap().len(), 5);
    assert_eq!(iface["outputs"].as_array().unwrap().len(), 5);
    let r = svc.handle(&json!({"op": "step", "session": id, "present": []}));
    assert_eq!(r["step"]["instant"], 0, "{r}");
    let r = svc.handle(&json!({"op": "step", "session": id, "present": ["upward"]}));
    assert_eq!(r["step"]["outputs"]["MoveBack"], "present", "{r}");
}

#[test]
fn step_line_matches_cli_trace() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("WIO.le");
    std::fs::write(&src, WIO).unwrap();
    std::fs::write(dir.path().join("in.txt"), "\nI\n\n").unwrap();
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_le"))
        .args(["simulate"])
        .arg(&src)
        .arg("--inputs")
        .arg(dir.path().join("in.txt"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let cli: Vec<String> = String::from_utf8(out.stdout).unwrap().lines().map(String::from).collect();

    let svc = SessionService::new(Options::default());
    let id = svc.create(Some(WIO), None, None).unwrap();
    let mut lines = Vec::new();
    for p in [json!([]), json!(["I"]), json!([])] {
        let r = svc.handle(&json!({"op": "step", "session": id, "present": p}));
        lines.push(r["step"]["line"].as_str().unwrap().to_string());
    }
    assert_eq!(cli, lines);
    let t = svc.handle(&json!({"op": "get-trace", "session": id}));
    assert_eq!(t["trace"].as_array().unwrap().len(), 3);
    assert_eq!(t["trace"][1]["outputs"]["O"], "present");
}

#[test]
fn reset_and_delete() {
    let svc = SessionService::new(Options::default());
    let id = svc.create(Some(WIO), None, None).unwrap();
    let first = svc.handle(&json!({"op": "step", "session": id, "present": ["I"]}));
    svc.handle(&json!({"op": "step", "session": id}));
    let r = svc.handle(&json!({"op": "reset", "session": id}));
    assert_eq!(r["ok"], true);
    let t = svc.handle(&json!({"op": "get-trace", "session": id}));
    assert!(t["trace"].as_array().unwrap().is_empty());
    let again = svc.handle(&json!({"op": "step", "session": id, "present": ["I"]}));
    assert_eq!(first["step"], again["step"]);
    assert_eq!(svc.handle(&json!({"op": "delete", "session": id}))["ok"], true);
    let r = svc.handle(&json!({"op": "get-interface", "session": id}));
    assert_eq!(r["ok"], false);
    assert_eq!(r["error"]["kind"], "not-found");
}

#[test]
fn request_errors() {
    let svc = SessionService::new(Options::default());
    let r = svc.handle(&json!({"op": "fly"}));
    assert_eq!(r["error"]["kind"], "usage");
    let r = svc.handle(&json!({"op": "create-session"}));
    assert_eq!(r["error"]["kind"], "usage");
    let r = svc.handle(&json!({"op": "create-session", "source": "module M: emit end"}));
    assert_eq!(r["error"]["kind"], "syntax", "{r}");
    assert!(r["error"]["line"].is_number());
    let r = svc.handle(&json!({"op": "create-session", "source": "module M: Output: a, b; present a {emit b} || present b {emit a} end"}));
    assert_eq!(r["ok"], false, "{r}");
    let id = svc.create(Some(WIO), None, None).unwrap();
    let r = svc.handle(&json!({"op": "step", "session": id, "present": ["nope"]}));
    assert_eq!(r["error"]["kind"], "simulation", "{r}");
}

#[test]
fn sessions_are_independent() {
    let svc = Arc::new(SessionService::new(Options::default()));
    let a = svc.create(Some(WIO), None, None).unwrap();
    let b = svc.create(Some(WIO), None, None).unwrap();
    assert_ne!(a, b);
    let hs: Vec<_> = [a, b]
        .into_iter()
        .map(|id| {
            let svc = svc.clone();
            std::thread::spawn(move || {
                for _ in 0..20 {
                    svc.handle(&json!({"op": "step", "session": id}));
                }
                svc.handle(&json!({"op": "get-trace", "session": id}))["trace"].as_array().unwrap().len()
            })
        })
        .collect();
    for h in hs {
        assert_eq!(h.join().unwrap(), 20);
    }
}

async fn post(app: axum::Router, body: Value) -> Value {
    let req = axum::http::Request::post("/api")
        .header("content-type", "application/json")
        .body(axum::body::Body::from(body.to_string()))
        .unwrap();
    let resp = app.oneshot(req).await.unwrap();
    assert_eq!(resp.status(), 200);
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    serde_json::from_slice(&bytes).unwrap()
}

#[tokio::test]
async fn http_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<html>le</html>").unwrap();
    let svc = Arc::new(SessionService::new(Options::default()));
    let app = cli_service::server::router(svc, Some(dir.path().to_path_buf()));
    let r = post(app.clone(), json!({"op": "create-session", "source": WIO})).await;
    assert_eq!(r["ok"], true);
    let id = r["session"].clone();
    post(app.clone(), json!({"op": "step", "session": id})).await;
    let r = post(app.clone(), json!({"op": "step", "session": id, "present": ["I"]})).await;
    assert_eq!(r["step"]["outputs"]["O"], "present");
    let req = axum::http::Request::get("/index.html").body(axum::body::Body::empty()).unwrap();
    let resp = app.oneshot(req).await.unwrap();
    assert_eq!(resp.status(), 200);
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    assert_eq!(&bytes[..], b"<html>le</html>");
}
