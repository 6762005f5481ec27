use std::collections::BTreeMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use degree_game::engine::{run_monitors, EngineError, FirstMover, Game, GameConfig, GameTrace, OpponentKind, Role};
use rayon::prelude::*;
use serde_json::json;

use crate::{CmdResult, Failure, OpponentArg, SimulateArgs, EXIT_FAIL, EXIT_OK};

struct Played {
    index: u64,
    seed: u64,
    trace: GameTrace,
    error: Option<String>,
    path: Option<PathBuf>,
}

fn config(a: &SimulateArgs, seed: u64) -> GameConfig {
    let opponent = match a.opponent {
        OpponentArg::Random => OpponentKind::Random { seed },
        OpponentArg::Greedy => OpponentKind::Greedy { seed },
        OpponentArg::Solver => OpponentKind::Solver,
    };
    let mut cfg = GameConfig::new(a.n, a.k, Role::from(a.role), FirstMover::from(a.first), opponent);
    cfg.n0 = a.n0;
    cfg
}

/// Plays to the end, keeping the partial game if the strategy breaks.
fn play_one(cfg: GameConfig) -> Result<(GameTrace, Option<String>), EngineError> {
    let mut game = Game::new(cfg)?;
    while !game.is_over() {
        if let Err(e) = game.step() {
            return Ok((game.finish(), Some(e.to_string())));
        }
    }
    Ok((game.finish(), None))
}

fn trace_path(a: &SimulateArgs, index: u64, seed: u64) -> Option<PathBuf> {
    let base = a.trace.as_ref()?;
    if a.games == 1 {
        Some(base.clone())
    } else {
        Some(base.join(format!("game-{index}-seed-{seed}.jsonl")))
    }
}

fn write_trace(path: &Path, trace: &GameTrace) -> std::io::Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    trace.write_jsonl(&mut w)?;
    w.flush()
}

pub(crate) fn simulate(a: &SimulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if a.games == 0 {
        return Err(Failure::Usage("--games must be at least 1".into()));
    }
    if a.jobs == Some(0) {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    config(a, a.seed).validate().map_err(|e| Failure::Usage(e.to_string()))?;
    if let (Some(dir), true) = (&a.trace, a.games > 1) {
        fs::create_dir_all(dir)?;
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = a.jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| Failure::Failed(e.to_string()))?;
    let played: Vec<Result<Played, String>> = pool.install(|| {
        (0..a.games)
            .into_par_iter()
            .map(|index| {
                let seed = a.seed.wrapping_add(index);
                let (trace, error) = play_one(config(a, seed)).map_err(|e| e.to_string())?;
                let path = trace_path(a, index, seed);
                if let Some(p) = &path {
                    write_trace(p, &trace).map_err(|e| format!("{}: {e}", p.display()))?;
                }
                Ok(Played { index, seed, trace, error, path })
            })
            .collect()
    });
    let played: Vec<Played> = played.into_iter().collect::<Result<_, _>>().map_err(Failure::Failed)?;

    let role = Role::from(a.role);
    let mut met = 0u64;
    let mut witness_seen = 0u64;
    let mut check_failures = 0u64;
    let mut errors = Vec::new();
    let mut monitors: BTreeMap<String, (u64, u64, Option<String>)> = BTreeMap::new();
    for p in &played {
        if p.trace.outcome.objective_met == Some(true) && p.error.is_none() {
            met += 1;
        }
        if p.trace.records.iter().any(|r| r.witness.is_some()) {
            witness_seen += 1;
        }
        check_failures += p.trace.outcome.check_failures;
        if let Some(e) = &p.error {
            let at = p.path.as_ref().map_or("no trace written".to_string(), |x| x.display().to_string());
            errors.push(format!("game {} (seed {}): {e} [{at}]", p.index, p.seed));
        }
        for m in run_monitors(&p.trace).map_err(|e| Failure::Failed(e.to_string()))? {
            let entry = monitors.entry(m.name.clone()).or_default();
            entry.0 += m.checked;
            entry.1 += m.violations.len() as u64;
            if entry.2.is_none() {
                if let Some(v) = m.violations.first() {
                    entry.2 = Some(format!("game {} move {}: {}", p.index, v.index, v.detail));
                }
            }
        }
    }
    let games = a.games;
    let objective_label = match role {
        Role::Builder => Some("hamiltonian"),
        Role::Avoider => Some("not 2-connected"),
        Role::None => None,
    };
    let fired: u64 = monitors.values().map(|m| m.1).sum();
    let success = errors.is_empty()
        && fired == 0
        && check_failures == 0
        && (objective_label.is_none() || met == games);

    if a.json {
        let mons: Vec<_> = monitors
            .iter()
            .map(|(name, (checked, violations, first))| {
                json!({"name": name, "checked": checked, "violations": violations, "first": first})
            })
            .collect();
        let summary = json!({
            "games": games,
            "objective": objective_label,
            "objective_met": met,
            "witness_seen": witness_seen,
            "check_failures": check_failures,
            "errors": errors,
            "monitors": mons,
            "success": success,
        });
        writeln!(out, "{summary}")?;
    } else {
        let role_name = format!("{:?}", a.role).to_lowercase();
        let opp_name = format!("{:?}", a.opponent).to_lowercase();
        writeln!(out, "games: {games}  k={} n={}  role: {role_name}  opponent: {opp_name}", a.k, a.n)?;
        if let Some(label) = objective_label {
            writeln!(out, "{label}: {met}/{games}")?;
        }
        if role == Role::Avoider {
            writeln!(out, "witness seen: {witness_seen}/{games}")?;
            if a.n < a.n0 {
                writeln!(out, "note: n = {} is below n0 = {}; the avoider is only guaranteed on large boards", a.n, a.n0)?;
            }
        }
        if role == Role::Builder {
            writeln!(out, "path invariant violations: {check_failures}")?;
        } else if check_failures > 0 {
            writeln!(out, "strategy check failures: {check_failures}")?;
        }
        for (name, (checked, violations, first)) in &monitors {
            let verdict = if *violations == 0 { "pass" } else { "FAIL" };
            writeln!(out, "monitor {name}: {verdict} ({checked} checked, {violations} violations)")?;
            if let Some(f) = first {
                writeln!(out, "  first: {f}")?;
            }
        }
        for e in &errors {
            writeln!(err, "strategy error: {e}")?;
        }
    }
    Ok(if success { EXIT_OK } else { EXIT_FAIL })
}
