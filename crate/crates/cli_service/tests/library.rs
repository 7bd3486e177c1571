// SPDX-License-Identifier: Apache-2.0
use cli_service::diff::{compare, Outcome};
use cli_service::gen::{random_inputs, random_module, GenConfig};
use cli_service::pipeline::{self, Options};
use cli_service::{engine, engines, Config, LeError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};
use xi_core::{Absent, Present};

fn corpus(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel)
}

#[test]
fn config_defaults_and_parse() {
    let c = Config::parse("").unwrap();
    assert_eq!(c, Config::default());
    assert_eq!(c.addr(), "127.0.0.1:7878");
    let c = Config::parse("search_paths = [\"a\", \"b\"]\n[service]\nport = 9000\n").unwrap();
    assert_eq!(c.search_paths, vec![PathBuf::from("a"), PathBuf::from("b")]);
    assert_eq!(c.addr(), "127.0.0.1:9000");
    assert!(Config::parse("[service]\nhost = \"x\"\n").is_err());
    assert!(Config::parse("port = \"x\"").is_err());
}

#[test]
fn config_validate_checks_directories() {
    let d = tempfile::tempdir().unwrap();
    let mut c = Config { search_paths: vec![d.path().to_path_buf()], ..Default::default() };
    c.validate().unwrap();
    c.output_dir = Some(d.path().join("missing"));
    assert!(matches!(c.validate(), Err(LeError::Io { .. })));
}

#[test]
fn engine_registry() {
    let names: Vec<&str> = engines().iter().map(|e| e.name()).collect();
    assert_eq!(names, ["behavioral", "equational"]);
    assert!(engine("equational").is_some());
    assert!(engine("bogus").is_none());
}

#[test]
fn engines_agree_on_wio() {
    let ms = pipeline::parse_checked(&std::fs::read_to_string(corpus("misc/WIO.le")).unwrap()).unwrap();
    let res = pipeline::resolve(&ms[0], &ms, None, &Options::default()).unwrap();
    let seq: Vec<engine::Inputs> =
        [false, true, false].iter().map(|b| [("I".to_string(), xi_core::xi_of_bool(*b))].into()).collect();
    let runs: Vec<_> = engines().iter().map(|e| e.run(&res, &seq).unwrap()).collect();
    assert_eq!(runs[0][..2], runs[1][..2]);
    assert_eq!(runs[0][1].outputs["O"], Present);
    assert_eq!(runs[0][0].outputs["O"], Absent);
    assert!(matches!(compare(&res, &seq), Outcome::Agree { instants: 2 }));
}

#[test]
fn interface_mismatch_is_reported() {
    let d = tempfile::tempdir().unwrap();
    std::fs::write(d.path().join("first.le"), "module first: Input: I1; Output: O1; loop {present I1 {emit O1} else nothing >> pause} end").unwrap();
    std::fs::copy(corpus("misc/second.le"), d.path().join("second.le")).unwrap();
    std::fs::copy(corpus("misc/final.le"), d.path().join("final.le")).unwrap();
    for m in ["first", "second"] {
        let u = pipeline::build_file(&d.path().join(format!("{m}.le")), None, &Options::default()).unwrap().unit;
        std::fs::write(d.path().join(format!("{m}.lec")), lec_io::write_lec(&u.system, &u.schedule)).unwrap();
    }
    let e = pipeline::build_file(&d.path().join("final.le"), None, &Options::default()).unwrap_err();
    assert!(e.to_string().contains("I2"), "{e}");
    assert!(!matches!(e, LeError::Cycle(_)));
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn generated_programs_are_valid_and_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = GenConfig::default();
    let mut agree = 0;
    for _ in 0..150 {
        let m = random_module(&mut rng, &cfg);
        assert!(m.inputs.len() + m.outputs.len() <= cfg.max_signals);
        let text = frontend::print_module(&m);
        let ms = pipeline::parse_checked(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
        let res = pipeline::resolve(&ms[0], &ms, None, &Options::default()).unwrap();
        let seq = random_inputs(&mut rng, &m.inputs, 6);
        match compare(&res, &seq) {
            Outcome::Agree { .. } => agree += 1,
            Outcome::Cyclic => {}
            o => panic!("{text}\n{o:?}"),
        }
    }
    assert!(agree > 100, "{agree}");
}

#[test]
fn generation_is_deterministic() {
    let cfg = GenConfig::default();
    let a = random_module(&mut ChaCha8Rng::seed_from_u64(5), &cfg);
    let b = random_module(&mut ChaCha8Rng::seed_from_u64(5), &cfg);
    assert_eq!(frontend::print_module(&a), frontend::print_module(&b));
}

#[test]
fn error_json_shapes() {
    let e = LeError::Cycle(vec!["a_def".into(), "n3.or_val".into(), "b_val".into()]);
    let v = e.to_json();
    assert_eq!(v["kind"], "cycle");
    assert_eq!(v["signals"], serde_json::json!(["a", "b"]));
    assert_eq!(e.exit_code(), 3);
    assert_eq!(LeError::NotFound(4).to_json()["kind"], "not-found");
}
