//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bikevac::analysis::{
    bike_share_time, cr_alg1, cr_alg2, cr_alg3_ub, evac_time_case1, evac_time_case2,
    find_crossover, lower_bound, lower_bound_fast, lower_bound_slow, opt_u1, opt_u2, CrCurvePoint,
};
use bikevac::engine::identical_logs;
use bikevac::harness::verify::alg3_distance_grid;
use bikevac::harness::{competitive_ratio, linear_grid, ride_share_bruteforce};
use bikevac::model::{check_result, Channel, Role};
use bikevac::trace::TraceFile;
use bikevac::{simulate, AlgorithmId, ExitSide, Scenario, StrategyParams};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const ALG1_V: [f64; 5] = [1.2, 1.5, 2.0, 2.5, 3.0];
const ALG2_V: [f64; 5] = [3.0, 4.0, 5.0, 7.0, 10.0];
const EXACT_D: [f64; 3] = [0.5, 1.0, 7.3];
const ALG3_V: [f64; 4] = [10.5, 12.0, 20.0, 50.0];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sim(s: Scenario, p: &StrategyParams) -> Result<bikevac::EvacuationResult, String> {
    simulate(&s, p).map_err(|e| format!("{s:?}: {e}"))
}

fn c1_ride_share() -> Outcome {
    let exact = bike_share_time(1.0, 2.0).map_err(|e| e.to_string())?;
    let b = ride_share_bruteforce(1.0, 2.0, 10001).map_err(|e| e.to_string())?;
    ensure(exact == 0.75, || format!("bike_share_time(1, 2) = {exact}"))?;
    ensure((b.time - 0.75).abs() <= 1e-8, || {
        format!("brute force time {}", b.time)
    })?;
    ensure((b.x - 0.5).abs() <= 1e-4, || {
        format!("brute force x {}", b.x)
    })?;
    Ok(format!("exact 0.75; brute force {} at x = {}", b.time, b.x))
}

fn c2_endpoint() -> Outcome {
    let c = cr_alg1(1.0 + 1e-6).value;
    let dev = (c - 5.8284271).abs();
    ensure(dev <= 1e-4, || format!("cr_alg1(1 + 1e-6) = {c}"))?;
    Ok(format!("cr_alg1(1 + 1e-6) = {c}, |diff| = {dev:.2e}"))
}

fn c3_continuity() -> Outcome {
    let u1 = opt_u1(3.0).value;
    let u2 = opt_u2(3.0).map_err(|e| e.to_string())?.value;
    let c1 = cr_alg1(3.0).value;
    let c2 = cr_alg2(3.0).map_err(|e| e.to_string())?;
    for (name, got, want) in [
        ("u1*", u1, 1.0),
        ("u2*", u2, 3.0),
        ("cr_alg1", c1, 3.5),
        ("cr_alg2", c2, 3.5),
    ] {
        ensure((got - want).abs() <= 1e-9, || {
            format!("{name}(3) = {got}, want {want}")
        })?;
    }
    Ok(format!(
        "u1* = {u1}, u2* = {u2}, cr_alg1 = {c1}, cr_alg2 = {c2}"
    ))
}

fn c4_equivalence() -> Outcome {
    let start = Instant::now();
    let mut max_dev = 0.0f64;
    let mut runs = 0;
    for (alg, speeds) in [(AlgorithmId::Alg1, ALG1_V), (AlgorithmId::Alg2, ALG2_V)] {
        for v in speeds {
            let (u1, u2) = StrategyParams::optimal()
                .resolve(alg, v)
                .map_err(|e| format!("{alg} v = {v}: {e}"))?;
            for d in EXACT_D {
                let mut worst = f64::NEG_INFINITY;
                for side in ExitSide::BOTH {
                    worst = worst.max(
                        sim(Scenario::new(v, d, side, alg), &StrategyParams::optimal())?
                            .evacuation_time,
                    );
                    runs += 1;
                }
                let e1 = evac_time_case1(u1, u2, v, d).map_err(|e| e.to_string())?;
                let e2 = evac_time_case2(u1, u2, v, d).map_err(|e| e.to_string())?;
                let expected = e1.max(e2);
                let dev = (worst - expected).abs() / expected;
                ensure(dev <= 1e-9, || {
                    format!("{alg} v = {v} d = {d}: simulated {worst}, formula {expected}")
                })?;
                max_dev = max_dev.max(dev);
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || {
        format!("took {elapsed:.2?}")
    })?;
    Ok(format!(
        "{runs} runs, max relative deviation {max_dev:.2e}, {elapsed:.2?}"
    ))
}

fn c5_alg3_bound() -> Outcome {
    let start = Instant::now();
    let grid = alg3_distance_grid(200);
    ensure(grid.len() >= 200, || {
        format!("only {} distances", grid.len())
    })?;
    let mut summary = Vec::new();
    for v in ALG3_V {
        let ub = cr_alg3_ub(v);
        let mut max_cr = f64::NEG_INFINITY;
        for &d in &grid {
            for side in ExitSide::BOTH {
                let r = sim(
                    Scenario::new(v, d, side, AlgorithmId::Alg3),
                    &StrategyParams::optimal(),
                )?;
                let cr = competitive_ratio(&r).map_err(|e| e.to_string())?;
                ensure(cr <= ub + 1e-9, || {
                    format!("v = {v} d = {d} {side}: {cr} > {ub}")
                })?;
                let (a, b) = (r.arrival.sender, r.arrival.receiver);
                ensure((a - b).abs() <= 1e-9 * a.max(b), || {
                    format!("v = {v} d = {d} {side}: arrivals {a} and {b}")
                })?;
                max_cr = max_cr.max(cr);
            }
        }
        summary.push(format!("v={v}: {max_cr:.6} <= {ub:.6}"));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:.2?}")
    })?;
    Ok(format!(
        "{} distances, {elapsed:.2?}; {}",
        grid.len(),
        summary.join(", ")
    ))
}

fn c6_lower_bound() -> Outcome {
    let mut min_slack = f64::INFINITY;
    for v in linear_grid(1.01, 100.0, 1000).map_err(|e| e.to_string())? {
        let p = CrCurvePoint::at(v);
        let best = p.min_feasible_cr();
        ensure(lower_bound(v) <= best + 1e-9, || {
            format!("v = {v}: {} > {best}", lower_bound(v))
        })?;
        min_slack = min_slack.min(best - lower_bound(v));
    }
    ensure(
        lower_bound_slow(3.0) == 1.5 && lower_bound_fast(3.0) == 1.5,
        || {
            format!(
                "branches at 3: {} {}",
                lower_bound_slow(3.0),
                lower_bound_fast(3.0)
            )
        },
    )?;
    Ok(format!(
        "1000 speeds, min slack {min_slack:.6}; both branches 1.5 at v = 3"
    ))
}

fn c7_regimes() -> Outcome {
    for v in linear_grid(1.01, 2.99, 100).map_err(|e| e.to_string())? {
        let u2 = opt_u2(v).map_err(|e| e.to_string())?.value;
        ensure(u2 > v, || format!("opt_u2({v}) = {u2}"))?;
    }
    for v in linear_grid(3.01, 100.0, 100).map_err(|e| e.to_string())? {
        let u1 = opt_u1(v).value;
        ensure(u1 > 1.0, || format!("opt_u1({v}) = {u1}"))?;
    }
    let x = find_crossover(|v| cr_alg2(v).unwrap_or(f64::NAN), cr_alg3_ub, 9.0, 13.0)
        .map_err(|e| e.to_string())?;
    ensure(x > 10.0 && x < 12.0, || format!("crossover at {x}"))?;
    Ok(format!(
        "crossover cr_alg2 = cr_alg3_ub at v = {x:.9}; stated switch point 10"
    ))
}

fn worst_time(alg: AlgorithmId, v: f64, p: &StrategyParams) -> Result<f64, String> {
    let mut w = f64::NEG_INFINITY;
    for side in ExitSide::BOTH {
        w = w.max(sim(Scenario::new(v, 1.0, side, alg), p)?.evacuation_time);
    }
    Ok(w)
}

fn c8_local_optimality() -> Outcome {
    let u1 = opt_u1(2.0).value;
    let u2 = opt_u2(5.0).map_err(|e| e.to_string())?.value;
    let mut min_margin = f64::INFINITY;
    for (alg, v, p) in [
        (
            AlgorithmId::Alg1,
            2.0,
            StrategyParams::optimal().with_u1(u1 - 1e-3),
        ),
        (
            AlgorithmId::Alg1,
            2.0,
            StrategyParams::optimal().with_u1(u1 + 1e-3),
        ),
        (
            AlgorithmId::Alg2,
            5.0,
            StrategyParams::optimal().with_u2(u2 - 1e-3),
        ),
        (
            AlgorithmId::Alg2,
            5.0,
            StrategyParams::optimal().with_u2(u2 + 1e-3),
        ),
    ] {
        let margin = worst_time(alg, v, &p)? - worst_time(alg, v, &StrategyParams::optimal())?;
        ensure(margin > 1e-8, || {
            format!("{alg} v = {v} {p:?}: margin {margin:e}")
        })?;
        min_margin = min_margin.min(margin);
    }
    Ok(format!("smallest increase {min_margin:.3e}"))
}

fn c9_properties() -> Outcome {
    let mut scenarios = Vec::new();
    for side in ExitSide::BOTH {
        for d in EXACT_D {
            scenarios.extend(ALG1_V.map(|v| Scenario::new(v, d, side, AlgorithmId::Alg1)));
            scenarios.extend(ALG2_V.map(|v| Scenario::new(v, d, side, AlgorithmId::Alg2)));
        }
        for &d in &alg3_distance_grid(200) {
            scenarios.extend(ALG3_V.map(|v| Scenario::new(v, d, side, AlgorithmId::Alg3)));
        }
    }
    let p = StrategyParams::optimal();
    for s in &scenarios {
        let a = sim(*s, &p)?;
        // bike conservation, speed caps, single rider, F2F colocation
        check_result(&a).map_err(|e| format!("{s:?}: {e}"))?;
        for m in &a.messages {
            ensure(
                m.channel != Channel::Wireless || m.sender_role == Role::Sender,
                || format!("{s:?}: wireless message from {}", m.sender_role),
            )?;
        }
        let b = sim(*s, &p)?;
        ensure(identical_logs(&a.events, &b.events), || {
            format!("{s:?}: runs differ")
        })?;
        let t = TraceFile::from(&a);
        let back = TraceFile::from_json(&t.to_json()).map_err(|e| format!("{s:?}: {e}"))?;
        ensure(t.bit_identical(&back), || {
            format!("{s:?}: trace round trip is lossy")
        })?;
    }
    Ok(format!("{} scenarios", scenarios.len()))
}

fn c10_csv_golden() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_bikevac"))
        .args(["sweep", "--v-min", "3", "--v-max", "3", "--steps", "1"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("exit status {}", out.status)
    })?;
    let golden = include_bytes!("golden/sweep_v3.csv");
    ensure(out.stdout == golden, || {
        format!(
            "output differs from golden:\n{}",
            String::from_utf8_lossy(&out.stdout)
        )
    })?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let row: Vec<&str> = text.lines().nth(1).unwrap_or_default().split(',').collect();
    ensure(
        row.len() == 6
            && row[0] == "3"
            && row[1] == "3.5"
            && row[2] == "3.5"
            && row[4] == "1.5"
            && row[5] == "alg1",
        || format!("row {row:?}"),
    )?;
    Ok(format!(
        "byte-exact: {}",
        text.lines().nth(1).unwrap_or_default()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("ride-share optimum", c1_ride_share),
        ("alg1 ratio near v = 1", c2_endpoint),
        ("continuity at v = 3", c3_continuity),
        ("simulation equals closed form", c4_equivalence),
        ("zig-zag bound", c5_alg3_bound),
        ("lower bound ordering", c6_lower_bound),
        ("regime structure", c7_regimes),
        ("local optimality", c8_local_optimality),
        ("property suites", c9_properties),
        ("csv golden file", c10_csv_golden),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {} ({name}): {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
