use std::str::FromStr;

use anyhow::{bail, Result};
use indist::adversary::obj_set;
use indist::arena::{self as arena_mod, PlayerId};
use indist::oracle;
use indist::privacy::{
    self, check_strategy_containment, containment_counterexample, ois_target, IndistSpec, Search,
    SearchStats, Synthesis,
};
use indist::solver::{self, SolverConfig};
use indist::{GameArena, KnowledgeType, Lasso, ObjectiveProfile};
use serde_json::{json, Map, Value};

use crate::format::{set_names, Input, LassoDoc, StrategyDoc};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Winnable,
    WinnableMap,
    FeasibleInfSets,
    ObjSet,
    ExistsOis,
    ExistsWinningOis,
    CheckOis,
    ExistsNe,
    ExistsMultiNe,
    ExistsOie,
    ExistsOine,
    IsNeOutcome,
    IsOie,
    Equiv,
    ExportDot,
}

pub const COMMANDS: [(&str, Command); 16] = [
    ("validate", Command::Validate),
    ("winnable", Command::Winnable),
    ("winnable-map", Command::WinnableMap),
    ("feasible-inf-sets", Command::FeasibleInfSets),
    ("obj-set", Command::ObjSet),
    ("exists-ois", Command::ExistsOis),
    ("exists-winning-ois", Command::ExistsWinningOis),
    ("check-ois", Command::CheckOis),
    ("exists-ne", Command::ExistsNe),
    ("exists-multi-ne", Command::ExistsMultiNe),
    ("exists-oie", Command::ExistsOie),
    ("exists-oine", Command::ExistsOine),
    ("is-ne-outcome", Command::IsNeOutcome),
    ("is-oie", Command::IsOie),
    ("equiv", Command::Equiv),
    ("export-dot", Command::ExportDot),
];

impl Command {
    pub fn name(self) -> &'static str {
        COMMANDS.iter().find(|(_, c)| *c == self).unwrap().0
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        COMMANDS
            .iter()
            .find(|(n, _)| *n == s)
            .map(|&(_, c)| c)
            .ok_or_else(|| format!("unknown command {s:?}"))
    }
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub knw: Option<KnowledgeType>,
    pub player: Option<String>,
    pub max_subsets: Option<u64>,
    pub oracle: bool,
    pub witness_strategies: bool,
}

#[derive(Debug, Default)]
pub struct Report {
    pub query: Map<String, Value>,
    pub verdict: Value,
    pub witness: Option<Value>,
    pub stats: SearchStats,
    pub oracle: Option<Value>,
    pub undecided: bool,
    /// Play whose cycle is highlighted in DOT output.
    pub play: Option<Lasso>,
    pub dot: Option<String>,
}

impl Report {
    fn new(verdict: Value) -> Self {
        Report {
            verdict,
            ..Report::default()
        }
    }

    fn oracle(
        mut self,
        enabled: bool,
        f: impl FnOnce() -> Result<Value>,
        agrees: impl FnOnce(&Value) -> bool,
    ) -> Result<Self> {
        if enabled {
            let v = f()?;
            let ok = agrees(&v);
            if !ok {
                eprintln!("oracle disagrees: {v}");
            }
            self.oracle = Some(json!({ "verdict": v, "agrees": ok }));
        }
        Ok(self)
    }
}

fn lasso_json(a: &GameArena, l: &Lasso) -> Value {
    serde_json::to_value(LassoDoc::from_lasso(a, l)).unwrap()
}

fn lar_config() -> SolverConfig {
    SolverConfig {
        lar_cap: usize::MAX,
    }
}

pub fn run(input: &Input, cmd: Command, opts: &Options) -> Result<Report> {
    let a = &input.arena;
    let mut query = Map::new();
    query.insert("command".into(), cmd.name().into());
    let mut report = match cmd {
        Command::Validate => {
            let desc = input.doc.arena.as_ref().expect("checked on load");
            let warnings = arena_mod::validate(desc);
            let mut r = Report::new(Value::Bool(true));
            if !warnings.is_empty() {
                r.witness = Some(json!({ "warnings": warnings }));
            }
            r
        }
        Command::Winnable | Command::WinnableMap => {
            let p = input.player(opts.player.as_deref())?;
            let o = input.objective()?;
            query.insert("player".into(), a.player_name(p).into());
            let map = solver::winnable_map(a, p, &o)?;
            let as_json = |m: &indist::WinnableMap| -> Value {
                if cmd == Command::Winnable {
                    Value::Bool(m.get(a.initial()))
                } else {
                    (0..a.num_vertices())
                        .map(|v| (a.vertex_name(v).to_string(), Value::Bool(m.get(v))))
                        .collect::<Map<_, _>>()
                        .into()
                }
            };
            let verdict = as_json(&map);
            let mut r = Report::new(verdict.clone());
            r.stats.solver_calls = 1;
            r.oracle(
                opts.oracle,
                || Ok(as_json(&solver::winnable_map_lar(a, p, &o, &lar_config())?)),
                |v| *v == verdict,
            )?
        }
        Command::FeasibleInfSets => {
            let sets = a.feasible_inf_sets(a.all())?;
            let names = |s: &[indist::VertexSet]| -> Value {
                s.iter()
                    .map(|&i| set_names(a, i))
                    .collect::<Vec<_>>()
                    .into()
            };
            let verdict = names(&sets);
            Report::new(verdict.clone()).oracle(
                opts.oracle,
                || Ok(names(&oracle::naive_inf_sets(a))),
                |v| *v == verdict,
            )?
        }
        Command::ObjSet => {
            let p = input.player(opts.player.as_deref())?;
            let knw = input.knw(opts.knw)?;
            query.insert("player".into(), a.player_name(p).into());
            query.insert("knw".into(), knw.as_str().into());
            let o_p = input.objective()?;
            let u = input.universe()?;
            let out = input.outcome()?;
            let c = obj_set(a, p, &o_p, &u, knw, &out)?;
            let verdict: Value = c.names(&u).into();
            let mut r = Report::new(verdict.clone());
            r.play = Some(out.clone());
            r.oracle(
                opts.oracle,
                || {
                    Ok(oracle::naive_obj_set(a, p, &o_p, &u, knw, &out, true)?
                        .names(&u)
                        .into())
                },
                |v| *v == verdict,
            )?
        }
        Command::ExistsOis | Command::ExistsWinningOis | Command::CheckOis => {
            let p = input.player(opts.player.as_deref())?;
            let knw = input.knw(opts.knw)?;
            query.insert("player".into(), a.player_name(p).into());
            query.insert("knw".into(), knw.as_str().into());
            let spec = IndistSpec {
                player: p,
                objective: input.objective()?,
                targets: input.targets()?,
                knw,
                winning_required: cmd == Command::ExistsWinningOis,
            };
            let target = ois_target(a, &spec)?;
            let mut r = if cmd == Command::CheckOis {
                let s = input.strategy_of(p)?;
                let cex = containment_counterexample(a, p, &s, &target)?;
                let mut r = Report::new(Value::Bool(cex.is_none()));
                if let Some(l) = &cex {
                    r.witness = Some(json!({ "counterexample": lasso_json(a, l) }));
                    r.play = cex.clone();
                }
                r
            } else {
                let found = privacy::exists_ois(a, &spec)?;
                let mut r = Report::new(Value::Bool(found.is_some()));
                if let Some(s) = found {
                    debug_assert!(check_strategy_containment(a, p, &s, &target)?);
                    r.witness = Some(json!({ "strategy": StrategyDoc::from_strategy(a, &s) }));
                }
                r
            };
            r.stats.solver_calls = spec.targets.len() as u64 + 1;
            let verdict = r.verdict.clone();
            r.oracle(
                opts.oracle && cmd != Command::CheckOis,
                || {
                    Ok(Value::Bool(
                        solver::winnable_map_lar(a, p, &target, &lar_config())?.get(a.initial()),
                    ))
                },
                |v| *v == verdict,
            )?
        }
        Command::ExistsNe | Command::ExistsMultiNe | Command::ExistsOie | Command::ExistsOine => {
            let (profiles, search, check) = match cmd {
                Command::ExistsNe | Command::ExistsMultiNe => {
                    let profiles = input.profiles()?;
                    if cmd == Command::ExistsNe && profiles.len() != 1 {
                        bail!("exists-ne takes exactly one profile");
                    }
                    let s = privacy::exists_multi_ne_bounded(a, &profiles, opts.max_subsets)?;
                    let check = {
                        let profiles = profiles.clone();
                        Box::new(move || Ok(oracle::oracle_multi_ne(a, &profiles)?.is_some()))
                            as OracleCheck
                    };
                    (profiles, s, check)
                }
                _ => {
                    let knw = input.knw(opts.knw)?;
                    query.insert("knw".into(), knw.as_str().into());
                    let alpha = input.alpha()?;
                    let u = input.universe()?;
                    let mut profiles = privacy::build_r_profiles(a, &alpha, &u, knw)?;
                    let oine = cmd == Command::ExistsOine;
                    if oine {
                        profiles.push(alpha.clone());
                    }
                    let s = privacy::exists_multi_ne_bounded(a, &profiles, opts.max_subsets)?;
                    let check = Box::new(move || {
                        let l = if oine {
                            oracle::oracle_oine(a, &alpha, &u, knw)?
                        } else {
                            oracle::oracle_oie(a, &alpha, &u, knw)?
                        };
                        Ok(l.is_some())
                    }) as OracleCheck;
                    (profiles, s, check)
                }
            };
            search_report(input, &profiles, search, opts, check)?
        }
        Command::IsNeOutcome => {
            let profiles = input.profiles()?;
            let out = input.outcome()?;
            let ok = privacy::is_ne_outcome(a, &profiles, &out)?;
            let mut r = Report::new(Value::Bool(ok));
            r.play = Some(out.clone());
            r.oracle(
                opts.oracle,
                || Ok(Value::Bool(oracle::oracle_ne_outcome(a, &profiles, &out)?)),
                |v| *v == Value::Bool(ok),
            )?
        }
        Command::IsOie => {
            let knw = input.knw(opts.knw)?;
            query.insert("knw".into(), knw.as_str().into());
            let alpha = input.alpha()?;
            let u = input.universe()?;
            let st = input.strategies()?;
            let v = privacy::is_oie(a, &alpha, &u, knw, &st)?;
            let mut r = Report::new(Value::Bool(v.holds()));
            let mut w = json!({ "outcome": lasso_json(a, &v.outcome) });
            r.play = Some(v.outcome.clone());
            if let Some(d) = &v.deviation {
                w["deviation"] = json!({
                    "player": a.player_name(d.player),
                    "outcome": lasso_json(a, &d.outcome),
                    "gained": d.gained.iter().map(|&i| u.name(i)).collect::<Vec<_>>(),
                });
                r.play = Some(d.outcome.clone());
            }
            r.witness = Some(w);
            r
        }
        Command::Equiv => {
            let x = input.objective()?;
            let name = input.doc.other.as_deref();
            let y = input.objective_named(
                name.ok_or_else(|| anyhow::anyhow!("no other objective given"))?,
            )?;
            let same = x.arena_equivalent(&y, a)?;
            let verdict = Value::Bool(same);
            Report::new(verdict.clone()).oracle(
                opts.oracle,
                || {
                    let f = oracle::naive_inf_sets(a);
                    Ok(Value::Bool(
                        f.iter().all(|&i| x.contains_set(i) == y.contains_set(i)),
                    ))
                },
                |v| *v == verdict,
            )?
        }
        Command::ExportDot => {
            let play = input.outcome().ok();
            let mut r = Report::new(Value::Bool(true));
            r.dot = Some(crate::dot::render(a, play.as_ref()));
            r.witness = r.dot.clone().map(Value::String);
            r.play = play;
            r
        }
    };
    for (k, v) in query {
        report.query.entry(k).or_insert(v);
    }
    Ok(report)
}

type OracleCheck<'a> = Box<dyn FnOnce() -> Result<bool> + 'a>;

fn search_report(
    input: &Input,
    profiles: &[ObjectiveProfile],
    (search, stats): (Search<Lasso>, SearchStats),
    opts: &Options,
    check: OracleCheck,
) -> Result<Report> {
    let a = &input.arena;
    let mut r = match search {
        Search::Undecided => {
            let mut r = Report::new(Value::String("undecided".into()));
            r.undecided = true;
            r
        }
        Search::Absent => Report::new(Value::Bool(false)),
        Search::Found(l) => {
            let mut r = Report::new(Value::Bool(true));
            let mut w = json!({ "outcome": lasso_json(a, &l) });
            if opts.witness_strategies {
                w["strategies"] = strategies_json(a, profiles, &l)?;
            }
            r.witness = Some(w);
            r.play = Some(l);
            r
        }
    };
    r.stats = stats;
    r.query.insert("profiles".into(), profiles.len().into());
    if opts.oracle && !r.undecided {
        let found = r.verdict == Value::Bool(true);
        r = r.oracle(
            true,
            || Ok(Value::Bool(check()?)),
            |v| *v == Value::Bool(found),
        )?;
    }
    Ok(r)
}

fn strategies_json(a: &GameArena, profiles: &[ObjectiveProfile], l: &Lasso) -> Result<Value> {
    Ok(match privacy::synthesize_ne_profile(a, profiles, l)? {
        Synthesis::Profile(st) => {
            let violation = privacy::verify_ne_profile(a, profiles, &st)?;
            let by_player: Map<String, Value> = st
                .iter()
                .enumerate()
                .map(|(p, s)| {
                    (
                        a.player_name(p as PlayerId).to_string(),
                        serde_json::to_value(StrategyDoc::from_strategy(a, s)).unwrap(),
                    )
                })
                .collect();
            json!({ "profile": by_player, "verified": violation.is_none() })
        }
        Synthesis::NoPunishment { player, from, to } => json!({
            "no_punishment": {
                "player": a.player_name(player),
                "from": a.vertex_name(from),
                "to": a.vertex_name(to),
            }
        }),
    })
}
