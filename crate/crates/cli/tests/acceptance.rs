//! Acceptance criteria, numbered 1-8. Prints one line per criterion and exits
//! nonzero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use indist::adversary::{obj_set, ObjectiveUniverse};
use indist::arena::PlayerId;
use indist::fixtures;
use indist::oracle::oracle_multi_ne;
use indist::privacy::{
    check_strategy_containment, exists_multi_ne, is_ne_outcome, ois_target, IndistSpec,
};
use indist::solver::{self, SolverConfig, Winner};
use indist::{GameArena, KnowledgeType, Lasso, MullerObjective, VertexSet};
use rand::Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

fn cli(fixture: &str, args: &[&str]) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(fixture);
    let out = Command::new(env!("CARGO_BIN_EXE_indist"))
        .arg("--input")
        .arg(path)
        .args(args)
        .output()
        .expect("binary runs");
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(())
    } else {
        Err(format!("took {t:?}, limit {limit:?}"))
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sorted(v: &Value) -> Vec<String> {
    let mut out: Vec<String> = v
        .as_array()
        .map(|a| {
            a.iter()
                .filter_map(|s| s.as_str().map(String::from))
                .collect()
        })
        .unwrap_or_default();
    out.sort();
    out
}

fn names(list: &[&str]) -> Vec<String> {
    let mut out: Vec<String> = list.iter().map(|s| s.to_string()).collect();
    out.sort();
    out
}

fn fig1_candidates() -> Outcome {
    let start = Instant::now();
    let want: [(&str, &[&str]); 4] = [
        ("pw", &["⟨⟩", "⟨v0⟩", "⟨v2⟩", "⟨v0,v2⟩"]),
        ("gw", &["⟨⟩"]),
        ("pg", &["⟨⟩", "⟨v1⟩", "⟨v1,v2⟩"]),
        ("pgw", &["⟨⟩"]),
    ];
    for (knw, expected) in want {
        let doc = cli("fig1.json", &["--command", "obj-set", "--knw", knw]);
        let got = sorted(&doc["verdict"]);
        check(got == names(expected), || format!("{knw}: got {got:?}"))?;
    }
    within(Duration::from_secs(1), start)?;
    Ok(format!("four sets exact in {:?}", start.elapsed()))
}

fn fig2_chain() -> Outcome {
    let start = Instant::now();
    let a = fixtures::fig2();
    let u = ObjectiveUniverse::buchi(&a);
    let o_p = MullerObjective::from_buchi(&a, VertexSet::singleton(0)).unwrap();
    let get = |cycle: &[usize]| {
        let l = Lasso::new(vec![], cycle.to_vec()).unwrap();
        obj_set(&a, 0, &o_p, &u, KnowledgeType::Pw, &l).unwrap()
    };
    let s = [get(&[0]), get(&[0, 1]), get(&[0, 1, 2])];
    let want: [&[&str]; 3] = [
        &["⟨v0⟩", "⟨v0,v1⟩", "⟨v0,v2⟩", "⟨v0,v1,v2⟩"],
        &[
            "⟨v0⟩",
            "⟨v1⟩",
            "⟨v0,v1⟩",
            "⟨v1,v2⟩",
            "⟨v0,v2⟩",
            "⟨v0,v1,v2⟩",
        ],
        &[
            "⟨v0⟩",
            "⟨v1⟩",
            "⟨v2⟩",
            "⟨v0,v1⟩",
            "⟨v1,v2⟩",
            "⟨v0,v2⟩",
            "⟨v0,v1,v2⟩",
        ],
    ];
    for (i, (c, w)) in s.iter().zip(want).enumerate() {
        let mut got: Vec<String> = c.names(&u).into_iter().map(String::from).collect();
        got.sort();
        check(got == names(w), || format!("sigma{}: got {got:?}", i + 1))?;
    }
    check(
        s[0].is_subset(&s[1]) && s[1].is_subset(&s[2]) && s[0] != s[1] && s[1] != s[2],
        || "chain is not strict".into(),
    )?;
    within(Duration::from_secs(1), start)?;
    Ok("sizes 4, 6, 7 with strict inclusions".into())
}

fn fig3_deviations() -> Outcome {
    let start = Instant::now();
    for knw in ["gw", "pw", "pg", "pgw"] {
        let doc = cli("fig3.json", &["--command", "is-oie", "--knw", knw]);
        let holds = doc["verdict"] == Value::Bool(true);
        check(holds == (knw == "gw"), || {
            format!("{knw}: verdict {}", doc["verdict"])
        })?;
        if !holds {
            let cycle = &doc["witness"]["deviation"]["outcome"]["cycle"];
            check(
                cycle
                    .as_array()
                    .is_some_and(|c| c.iter().any(|v| v == "v2")),
                || format!("{knw}: deviation cycle {cycle} misses v2"),
            )?;
        }
    }
    let a = fixtures::fig3();
    let u = ObjectiveUniverse::buchi(&a);
    let mut losing = Vec::new();
    for (name, o) in u.iter() {
        if !solver::winnable(&a, 2, o).unwrap() {
            losing.push(name.to_string());
        }
    }
    losing.sort();
    check(losing == names(&["⟨⟩", "⟨v2⟩"]), || {
        format!("not winnable: {losing:?}")
    })?;
    within(Duration::from_secs(5), start)?;
    Ok("gw holds, pw/pg/pgw deviate through v2, player 2 cannot win exactly ⟨⟩ and ⟨v2⟩".into())
}

fn solver_cross() -> Outcome {
    let start = Instant::now();
    let cfg = SolverConfig::default();
    let (mut arenas, mut strategies) = (0, 0);
    for seed in 0..500u64 {
        let mut r = common::rng(0xA4_0000 + seed);
        let a = common::arena(&mut r, 1, 6, 3);
        let p: PlayerId = r.gen_range(0..a.num_players());
        let obj = common::family(&mut r, a.num_vertices());
        let c = a.coalition_arena(p).unwrap();
        let z = solver::winning_regions(&c, &obj).unwrap();
        let l = solver::winning_regions_lar(&c, &obj, &cfg).unwrap();
        check(z == l, || format!("seed {seed}: regions differ"))?;
        for v in c.all() {
            let sol =
                solver::solve_zero_sum(&c, &obj, v).map_err(|e| format!("seed {seed}: {e}"))?;
            let target = match sol.winner {
                Winner::Protagonist => obj.clone(),
                Winner::Antagonist => obj.complement(),
            };
            let from = c.with_initial(v).unwrap();
            let w = sol.winner.player();
            let zs = solver::zielonka_strategy(&c, &obj, w, v).unwrap();
            for s in [&sol.strategy, &zs] {
                let ok = check_strategy_containment(&from, w, s, &target).unwrap();
                check(ok, || format!("seed {seed}: strategy from {v} leaks"))?;
                strategies += 1;
            }
        }
        arenas += 1;
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!(
        "{arenas} arenas agree, {strategies} strategies certified"
    ))
}

fn ne_vs_oracle() -> Outcome {
    let start = Instant::now();
    let (mut cases, mut found) = (0, 0);
    for seed in 0..400u64 {
        let mut r = common::rng(0xA5_0000 + seed);
        let a = common::arena(&mut r, 1, 5, 3);
        let profiles = common::profiles(&mut r, &a);
        let got = exists_multi_ne(&a, &profiles).unwrap();
        let want = oracle_multi_ne(&a, &profiles).unwrap();
        check(got.is_some() == want.is_some(), || {
            format!("seed {seed}: verdicts differ")
        })?;
        if let Some(l) = &got {
            found += 1;
            check(is_ne_outcome(&a, &profiles, l).unwrap(), || {
                format!("seed {seed}: bad witness")
            })?;
        }
        cases += 1;
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("{cases} instances agree ({found} with equilibria)"))
}

fn random_query(
    seed: u64,
) -> (
    GameArena,
    PlayerId,
    MullerObjective,
    ObjectiveUniverse,
    Lasso,
) {
    let mut r = common::rng(seed);
    let a = common::arena(&mut r, 1, 5, 3);
    let p = r.gen_range(0..a.num_players());
    let o_p = common::objective(&mut r, &a);
    let u = common::universe(&mut r, &a, Some(&o_p));
    let l = common::lasso(&mut r, &a);
    (a, p, o_p, u, l)
}

fn pgw_identity() -> Outcome {
    let start = Instant::now();
    for seed in 0..1000u64 {
        let (a, p, o_p, u, l) = random_query(0xA6_0000 + seed);
        let get = |k| obj_set(&a, p, &o_p, &u, k, &l).unwrap();
        let meet = get(KnowledgeType::Pw)
            .intersection(&get(KnowledgeType::Gw))
            .intersection(&get(KnowledgeType::Pg));
        check(get(KnowledgeType::Pgw) == meet, || format!("seed {seed}"))?;
    }
    within(Duration::from_secs(60), start)?;
    Ok("1000 triples".into())
}

fn algebra() -> Outcome {
    let start = Instant::now();
    let n_cases = 1000u64;
    for seed in 0..n_cases {
        let mut r = common::rng(0xA7_0000 + seed);
        let a = common::arena(&mut r, 1, 5, 2);
        let n = a.num_vertices();
        let (x, y) = (common::family(&mut r, n), common::family(&mut r, n));
        let l = common::lasso(&mut r, &a);
        let (ix, iy) = (x.contains_play(&l).unwrap(), y.contains_play(&l).unwrap());
        check(
            x.intersect(&y).unwrap().contains_play(&l).unwrap() == (ix && iy)
                && x.union(&y).unwrap().contains_play(&l).unwrap() == (ix || iy)
                && x.complement().contains_play(&l).unwrap() == !ix,
            || format!("pointwise, seed {seed}"),
        )?;
    }
    for seed in 0..n_cases {
        let mut r = common::rng(0xA7_1000 + seed);
        let a = common::arena(&mut r, 1, 6, 1);
        let n = a.num_vertices();
        let pairs: Vec<_> = (0..r.gen_range(0..4))
            .map(|_| (common::vertex_set(&mut r, n), common::vertex_set(&mut r, n)))
            .collect();
        let rabin = MullerObjective::from_rabin(&a, &pairs).unwrap();
        let streett = MullerObjective::from_streett(&a, &pairs).unwrap();
        check(rabin.complement() == streett, || {
            format!("duality, seed {seed}")
        })?;
    }
    for seed in 0..n_cases {
        let mut r = common::rng(0xA7_2000 + seed);
        let a = common::arena(&mut r, 1, 4, 2);
        let p = r.gen_range(0..a.num_players());
        let o_p = common::objective(&mut r, &a);
        let big = common::universe(&mut r, &a, Some(&o_p));
        let keep: Vec<String> = big
            .names()
            .iter()
            .filter(|_| r.gen_bool(0.5))
            .cloned()
            .collect();
        let small = big.select(&keep).unwrap();
        let knw = KnowledgeType::ALL[r.gen_range(0..4)];
        let winning_required = r.gen_bool(0.5);
        let spec = |targets| IndistSpec {
            player: p,
            objective: o_p.clone(),
            targets,
            knw,
            winning_required,
        };
        let t_small = ois_target(&a, &spec(small)).unwrap();
        let t_big = ois_target(&a, &spec(big)).unwrap();
        check(t_big.is_subset(&t_small).unwrap(), || {
            format!("monotonicity, seed {seed}")
        })?;
    }
    for seed in 0..n_cases {
        let mut r = common::rng(0xA7_3000 + seed);
        let a = common::arena(&mut r, 1, 6, 1);
        let obj = common::family(&mut r, a.num_vertices());
        let l = common::lasso(&mut r, &a);
        let mut prefix = l.prefix().to_vec();
        let mut cycle = l.cycle().to_vec();
        for _ in 0..r.gen_range(0..4) {
            prefix.push(cycle[0]);
            cycle.rotate_left(1);
        }
        let same = Lasso::new(prefix, cycle.repeat(2)).unwrap();
        let norm = l.normalize();
        check(
            same.normalize() == norm
                && obj.contains_play(&norm).unwrap() == obj.contains_play(&l).unwrap(),
            || format!("normalization, seed {seed}"),
        )?;
    }
    Ok(format!("4 laws x {n_cases} cases in {:?}", start.elapsed()))
}

fn retention() -> Outcome {
    let mut checked = 0;
    let mut verify =
        |a: &GameArena, p, o_p: &MullerObjective, u: &ObjectiveUniverse, l: &Lasso, tag: &str| {
            let copies: Vec<usize> = (0..u.len()).filter(|&j| u.get(j) == o_p).collect();
            if copies.is_empty() {
                return Ok(());
            }
            // only outcomes of rational play: a winnable objective is won
            if solver::winnable(a, p, o_p).unwrap() && !o_p.contains_play(l).unwrap() {
                return Ok(());
            }
            for knw in KnowledgeType::ALL {
                let c = obj_set(a, p, o_p, u, knw, l).unwrap();
                if !copies.iter().any(|&j| c.contains(j)) {
                    return Err(format!("{tag} {knw}"));
                }
            }
            checked += 1;
            Ok(())
        };
    let fig1 = fixtures::fig1();
    let u1 = ObjectiveUniverse::buchi(&fig1);
    let empty = MullerObjective::from_buchi(&fig1, VertexSet::EMPTY).unwrap();
    verify(
        &fig1,
        0,
        &empty,
        &u1,
        &Lasso::new(vec![0], vec![1]).unwrap(),
        "fig1",
    )?;
    let fig2 = fixtures::fig2();
    let u2 = ObjectiveUniverse::buchi(&fig2);
    let v0 = MullerObjective::from_buchi(&fig2, VertexSet::singleton(0)).unwrap();
    for c in [vec![0], vec![0, 1], vec![0, 1, 2]] {
        verify(&fig2, 0, &v0, &u2, &Lasso::new(vec![], c).unwrap(), "fig2")?;
    }
    let fig3 = fixtures::fig3();
    let u3 = ObjectiveUniverse::buchi(&fig3);
    let out = Lasso::new(vec![], vec![0, 1]).unwrap();
    for p in 0..3 {
        let o = MullerObjective::from_buchi(&fig3, VertexSet::singleton(p)).unwrap();
        verify(&fig3, p, &o, &u3, &out, "fig3")?;
    }
    for seed in 0..1000u64 {
        let (a, p, o_p, u, l) = random_query(0xA8_0000 + seed);
        verify(&a, p, &o_p, &u, &l, &format!("seed {seed}"))?;
    }
    Ok(format!(
        "{checked} rational cases retain the true objective"
    ))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("fig1 candidate sets", fig1_candidates),
        ("fig2 candidate chain", fig2_chain),
        ("fig3 deviations and winnability", fig3_deviations),
        ("solver cross-validation", solver_cross),
        ("equilibrium search vs oracle", ne_vs_oracle),
        ("pgw intersection identity", pgw_identity),
        ("algebra laws", algebra),
        ("true-objective retention", retention),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
