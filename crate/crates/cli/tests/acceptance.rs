//! End-to-end acceptance run: drives the `hk` binary and prints one
//! pass/fail line per criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hk_core::verify::{OPERATOR_SAMPLES, REPRODUCTION_SAMPLES};
use serde_json::Value;

type Point = (String, u32, u32, u32);

struct Run {
    stdout: Vec<u8>,
    reports: Vec<Value>,
    elapsed: Duration,
    code: Option<i32>,
}

fn hk(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_hk")).args(args).output().expect("hk runs");
    let elapsed = start.elapsed();
    let reports = String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("report line is JSON"))
        .collect();
    Run {
        stdout: out.stdout,
        reports,
        elapsed,
        code: out.status.code(),
    }
}

fn point(r: &Value) -> Point {
    let p = &r["params"];
    let get = |k: &str| p.get(k).and_then(Value::as_u64).unwrap_or(0) as u32;
    let case = p["case"].as_str().unwrap_or_default().to_string();
    match case.as_str() {
        "real" => (case, get("m"), get("k"), 0),
        _ => (case, get("n"), get("p"), get("q")),
    }
}

fn real_grid(kmax: u32) -> BTreeSet<Point> {
    (3..=5).flat_map(|m| (0..=kmax).map(move |k| ("real".into(), m, k, 0))).collect()
}

fn complex_grid() -> BTreeSet<Point> {
    (2..=3)
        .flat_map(|n| (0..=3).flat_map(move |p| (0..=3).map(move |q| ("complex".into(), n, p, q))))
        .collect()
}

/// n = 1 with p ≤ q, p+q ≤ 5; n = 2 with p ≤ q ≤ 2.
fn symplectic_grid() -> BTreeSet<Point> {
    let mut out = BTreeSet::new();
    for q in 0..=5 {
        for p in 0..=q {
            if p + q <= 5 {
                out.insert(("symplectic".into(), 1, p, q));
            }
            if q <= 2 {
                out.insert(("symplectic".into(), 2, p, q));
            }
        }
    }
    out
}

fn symplectic_square(qmax: u32) -> BTreeSet<Point> {
    (1..=2)
        .flat_map(|n| (0..=qmax).flat_map(move |q| (0..=q).map(move |p| ("symplectic".into(), n, p, q))))
        .collect()
}

struct Outcome {
    ok: bool,
    detail: String,
}

/// All reports of `identity` pass and together cover `grid`.
fn covers(reports: &[Value], identity: &str, grid: &BTreeSet<Point>) -> Outcome {
    let mine: Vec<&Value> = reports.iter().filter(|r| r["identity_id"] == identity).collect();
    let failing: Vec<String> = mine
        .iter()
        .filter(|r| r["status"] != "pass")
        .map(|r| format!("{:?} {}", point(r), r["status"]))
        .collect();
    let seen: BTreeSet<Point> = mine.iter().map(|r| point(r)).collect();
    let missing = grid.difference(&seen).count();
    let ok = !mine.is_empty() && failing.is_empty() && missing == 0;
    let mut detail = format!("{identity}: {}/{} pass", mine.len() - failing.len(), mine.len());
    if missing > 0 {
        detail += &format!(", {missing} grid points missing");
    }
    if let Some(f) = failing.first() {
        detail += &format!(", first failure {f}");
    }
    Outcome { ok, detail }
}

fn all_of(parts: Vec<Outcome>) -> Outcome {
    Outcome {
        ok: parts.iter().all(|o| o.ok),
        detail: parts.into_iter().map(|o| o.detail).collect::<Vec<_>>().join("; "),
    }
}

fn timed(run: &Run, limit: Duration, mut inner: Outcome) -> Outcome {
    inner.detail += &format!("; {:.1} s of {} s", run.elapsed.as_secs_f64(), limit.as_secs());
    inner.ok &= run.elapsed < limit && run.code == Some(0);
    inner
}

fn main() -> ExitCode {
    let mut lines: BTreeMap<u32, Outcome> = BTreeMap::new();

    let real = hk(&["verify", "planewave", "--case", "real"]);
    lines.insert(1, timed(&real, Duration::from_secs(60), covers(&real.reports, "planewave.real", &real_grid(4))));

    let complex = hk(&["verify", "planewave", "--case", "complex"]);
    let mut c2 = covers(&complex.reports, "planewave.complex", &complex_grid());
    let recorded = complex.reports.iter().all(|r| {
        r["resolution_notes"]
            .as_array()
            .is_some_and(|notes| notes.iter().any(|n| n.as_str().is_some_and(|s| s.starts_with("resolved constant: "))))
    });
    c2.ok &= recorded;
    c2.detail += if recorded { ", constant reading recorded" } else { ", constant reading missing" };
    lines.insert(2, timed(&complex, Duration::from_secs(180), c2));

    let symplectic = hk(&["verify", "planewave", "--case", "symplectic"]);
    lines.insert(
        3,
        timed(&symplectic, Duration::from_secs(300), covers(&symplectic.reports, "planewave.symplectic", &symplectic_grid())),
    );

    let first = hk(&["verify", "all", "--seed", "42"]);
    let reports = &first.reports;
    let seeded = |id: &str| reports.iter().filter(|r| r["identity_id"] == id).all(|r| r["seed"].is_u64());

    let mut c4 = all_of(vec![
        covers(reports, "spherical.reproduction", &real_grid(4)),
        covers(reports, "complex.reproduction", &complex_grid()),
        covers(reports, "symplectic.reproduction", &symplectic_square(2)),
    ]);
    c4.ok &= REPRODUCTION_SAMPLES >= 5
        && ["spherical.reproduction", "complex.reproduction", "symplectic.reproduction"].iter().all(|id| seeded(id));
    c4.detail += &format!("; {REPRODUCTION_SAMPLES} seeded harmonics per point");
    lines.insert(4, c4);

    let operator_ids = [
        ("symplectic.sl2", symplectic_square(2)),
        ("symplectic.kappa", symplectic_square(2)),
        ("spherical.fischer_duality", real_grid(4)),
        ("complex.fischer_duality", complex_grid()),
        ("spherical.proportionality", real_grid(4)),
        ("complex.proportionality", complex_grid()),
        ("symplectic.ladder", symplectic_grid()),
        ("spherical.projector", real_grid(4)),
        ("complex.projector", complex_grid()),
        ("symplectic.projector", symplectic_grid()),
    ];
    let mut c5 = all_of(operator_ids.iter().map(|(id, grid)| covers(reports, id, grid)).collect());
    c5.ok &= OPERATOR_SAMPLES >= 20 && operator_ids.iter().all(|(id, _)| seeded(id));
    c5.detail += &format!("; {OPERATOR_SAMPLES} seeded inputs per identity");
    lines.insert(5, c5);

    let c6 = all_of(vec![
        covers(reports, "spherical.dimension", &real_grid(5)),
        covers(reports, "complex.dimension", &complex_grid()),
        covers(reports, "symplectic.dimension", &symplectic_square(3)),
    ]);
    lines.insert(6, c6);

    lines.insert(7, covers(reports, "symplectic.closed_form", &symplectic_grid()));

    let second = hk(&["verify", "all", "--seed", "42"]);
    let identical = first.stdout == second.stdout && !first.stdout.is_empty();
    lines.insert(
        8,
        Outcome {
            ok: identical && first.code == Some(0) && second.code == Some(0),
            detail: format!(
                "{} reports, {} bytes, streams {}",
                reports.len(),
                first.stdout.len(),
                if identical { "identical" } else { "differ" }
            ),
        },
    );

    let titles = [
        "real plane wave",
        "complex plane wave",
        "symplectic plane wave",
        "reproducing-kernel suites",
        "operator identities",
        "dimension oracles",
        "closed form vs projection",
        "determinism",
    ];
    let mut all_ok = true;
    for (i, o) in &lines {
        all_ok &= o.ok;
        println!(
            "criterion {i} ({}): {} [{}]",
            titles[*i as usize - 1],
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
