// SPDX-License-Identifier: Apache-2.0
use circuitgen::{def_of, val_of, BoolExpr, BooleanSystem, Latch};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scheduler::*;
use std::collections::BTreeMap;

fn random_expr(rng: &mut ChaCha8Rng, pool: &[String]) -> BoolExpr {
    let k = rng.gen_range(0..4);
    let terms: Vec<BoolExpr> = (0..k)
        .map(|_| {
            let v = BoolExpr::var(&pool[rng.gen_range(0..pool.len())]);
            if rng.gen_bool(0.3) {
                BoolExpr::Not(Box::new(v))
            } else {
                v
            }
        })
        .collect();
    if rng.gen_bool(0.5) {
        BoolExpr::And(terms)
    } else {
        BoolExpr::Or(terms)
    }
}

/// Two systems over a shared pool of ξ wires. Each side defines a random
/// subset, some wires on both sides, and reads anything in the pool.
fn random_pair(rng: &mut ChaCha8Rng) -> (BooleanSystem, BooleanSystem) {
    let n = rng.gen_range(2..14);
    let wires: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut pool: Vec<String> = wires.iter().flat_map(|w| [def_of(w), val_of(w)]).collect();
    pool.push("i_def".into());
    pool.push("i_val".into());
    pool.push("r".into());
    let mut a = BooleanSystem { name: "a".into(), inputs: vec!["i".into()], ..Default::default() };
    let mut b = BooleanSystem { name: "b".into(), inputs: vec!["i".into()], ..Default::default() };
    for w in &wires {
        let side = rng.gen_range(0..5);
        for (k, s) in [(1, &mut a), (2, &mut b)] {
            if side == k || side == 3 {
                s.equations.insert(def_of(w), random_expr(rng, &pool));
                s.equations.insert(val_of(w), random_expr(rng, &pool));
            }
        }
    }
    for s in [&mut a, &mut b] {
        let nm = format!("{}.r", s.name);
        s.equations.insert(format!("{nm}.next"), random_expr(rng, &pool));
        s.latches.push(Latch { name: "r".into(), init: false, next: format!("{nm}.next") });
    }
    (a, b)
}

#[test]
fn link_matches_resort_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut linked, mut cyclic, mut work, mut total) = (0, 0, 0, 0);
    while linked < 250 {
        let (a, b) = random_pair(&mut rng);
        let (Ok(sa), Ok(sb)) = (Sorted::new(a.clone()), Sorted::new(b.clone())) else { continue };
        let (merged, _, _, _) = merge(&a, &b);
        let fresh = schedule(&merged);
        match (link(&sa, &sb), fresh) {
            (Ok((l, st)), Ok(f)) => {
                assert_eq!(l.system, merged);
                assert_eq!(l.schedule, f, "dates differ for\n{a:?}\n{b:?}");
                work += st.early_visits;
                total += st.total;
                linked += 1;
            }
            (Err(ScheduleError::CausalityCycle(_)), Err(_)) => cyclic += 1,
            (l, f) => panic!("link {:?} vs resort {:?}", l.map(|_| ()), f.map(|_| ())),
        }
    }
    assert!(cyclic > 0, "generator never produced a cross-boundary cycle");
    assert!(work <= 2 * total, "link visited {work} of {total}");
}

#[test]
fn common_wire_is_recombined() {
    let mut a = BooleanSystem { name: "a".into(), ..Default::default() };
    a.equations.insert("o_def".into(), BoolExpr::var("p_val"));
    a.equations.insert("o_val".into(), BoolExpr::var("p_val"));
    let mut b = a.clone();
    b.equations.insert("o_val".into(), BoolExpr::var("q_val"));
    let (m, ra, rb, merged) = merge(&a, &b);
    assert_eq!(merged, ["o"]);
    assert_eq!(ra["o_def"], "o~1_def");
    assert_eq!(rb["o_def"], "o~2_def");
    assert!(m.equations.contains_key("o~1_val") && m.equations.contains_key("o~2_val"));
    let sa = Sorted::new(a).unwrap();
    let sb = Sorted::new(b).unwrap();
    let (l, _) = link(&sa, &sb).unwrap();
    assert_eq!(l.schedule.early["o_def"], 1);
    // o = o~1 ∨ o~2 (truth order), evaluated on p=1, q=0
    let env: BTreeMap<&str, bool> = BTreeMap::from([("p_val", true), ("q_val", false)]);
    let mut vals: BTreeMap<String, bool> = BTreeMap::new();
    for w in l.schedule.evaluation_order() {
        let x = l.system.equations[&w].eval(&|n: &str| vals.get(n).copied().or(env.get(n).copied()).unwrap_or(false));
        vals.insert(w, x);
    }
    assert_eq!((vals["o_def"], vals["o_val"]), (true, true));
}
