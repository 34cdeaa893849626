#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use bikevac::analysis::bike_share_time;
use bikevac::harness::verify::{run_suite, Level, U2Source};
use bikevac::harness::{
    alg3_bound_rows, competitive_ratio, linear_grid, log_grid, sweep, sweep_csv,
    worst_case_cr_with, GridScale, SweepSpec,
};
use bikevac::model::Channel;
use bikevac::trace::TraceFile;
use bikevac::{simulate, AlgorithmId, Error, ExitSide, Scenario, StrategyParams};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod fmt;
use fmt::sig9;

#[derive(Parser)]
#[command(
    name = "bikevac",
    version,
    about = "Bike-assisted evacuation of two robots on a line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and print arrival times and the competitive ratio.
    Simulate(SimulateArgs),
    /// Emit the competitive-ratio curves as CSV.
    Sweep(SweepArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// Search both exit sides over a distance grid for the worst ratio.
    WorstCase(WorstCaseArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    #[value(name = "1", alias = "alg1")]
    One,
    #[value(name = "2", alias = "alg2")]
    Two,
    #[value(name = "3", alias = "alg3")]
    Three,
    #[value(name = "baseline")]
    Baseline,
}

impl From<Algorithm> for AlgorithmId {
    fn from(a: Algorithm) -> Self {
        match a {
            Algorithm::One => AlgorithmId::Alg1,
            Algorithm::Two => AlgorithmId::Alg2,
            Algorithm::Three => AlgorithmId::Alg3,
            Algorithm::Baseline => AlgorithmId::OfflineBaseline,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

impl From<Side> for ExitSide {
    fn from(s: Side) -> Self {
        match s {
            Side::Left => ExitSide::Left,
            Side::Right => ExitSide::Right,
        }
    }
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    algorithm: Algorithm,
    #[arg(long)]
    v: f64,
    #[arg(long)]
    d: f64,
    #[arg(long, value_enum)]
    side: Side,
    /// Sender walking speed (opposite-direction algorithms).
    #[arg(long)]
    u1: Option<f64>,
    /// Receiver outbound biking speed (opposite-direction algorithms).
    #[arg(long)]
    u2: Option<f64>,
    /// Write the JSON trace here.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    v_min: f64,
    #[arg(long)]
    v_max: f64,
    #[arg(long)]
    steps: usize,
    /// Space speeds geometrically instead of evenly.
    #[arg(long)]
    log: bool,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Distances for a simulated zig-zag bound check at every speed.
    #[arg(long, value_delimiter = ',')]
    d_grid: Vec<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Coarse grids (default).
    #[arg(long, conflicts_with = "full")]
    quick: bool,
    /// Fine grids.
    #[arg(long)]
    full: bool,
    /// Use the radical with the -7 v^2 discriminant for u2 (fault injection).
    #[arg(long)]
    faulty_radical: bool,
}

#[derive(Args)]
struct WorstCaseArgs {
    #[arg(long, value_enum)]
    algorithm: Algorithm,
    #[arg(long)]
    v: f64,
    #[arg(long, default_value_t = 1.0)]
    d_min: f64,
    #[arg(long, default_value_t = 64.0)]
    d_max: f64,
    /// Log-spaced distances between d-min and d-max.
    #[arg(long, default_value_t = 64)]
    points: usize,
    #[arg(long)]
    u1: Option<f64>,
    #[arg(long)]
    u2: Option<f64>,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Runtime(e.to_string())
        }
    }
}

fn params(u1: Option<f64>, u2: Option<f64>) -> StrategyParams {
    StrategyParams { u1, u2 }
}

fn cmd_simulate(a: SimulateArgs) -> Result<(), Failure> {
    let scenario = Scenario::new(a.v, a.d, a.side.into(), a.algorithm.into());
    let p = params(a.u1, a.u2);
    let r = simulate(&scenario, &p)?;
    let optimal = bike_share_time(a.d, a.v)?;
    let mut lines = vec![
        format!("algorithm={}", scenario.algorithm),
        format!("v={}", sig9(a.v)),
        format!("d={}", sig9(a.d)),
        format!("side={}", scenario.side),
    ];
    if matches!(scenario.algorithm, AlgorithmId::Alg1 | AlgorithmId::Alg2) {
        let (u1, u2) = p.resolve(scenario.algorithm, a.v)?;
        lines.push(format!("u1={}", sig9(u1)));
        lines.push(format!("u2={}", sig9(u2)));
    }
    lines.extend([
        format!("evacuation_time={}", sig9(r.evacuation_time)),
        format!("arrival_sender={}", sig9(r.arrival.sender)),
        format!("arrival_receiver={}", sig9(r.arrival.receiver)),
        format!("optimal_time={}", sig9(optimal)),
        format!("cr={}", sig9(competitive_ratio(&r)?)),
        format!("wireless_messages={}", r.messages_on(Channel::Wireless)),
        format!("f2f_messages={}", r.messages_on(Channel::F2F)),
        format!("events={}", r.events.len()),
    ]);
    if let Some(path) = a.trace {
        fs::write(&path, TraceFile::from(&r).to_json())
            .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))?;
        lines.push(format!("trace={}", path.display()));
    }
    println!("{}", lines.join("\n"));
    Ok(())
}

fn cmd_sweep(a: SweepArgs) -> Result<(), Failure> {
    let scale = if a.log {
        GridScale::Log
    } else {
        GridScale::Linear
    };
    let spec = SweepSpec::new(a.v_min, a.v_max, a.steps, a.d_grid, scale)?;
    let csv = sweep_csv(&sweep(&spec));
    match &a.out {
        Some(path) => fs::write(path, &csv)
            .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{csv}"),
    }
    if !spec.d_grid.is_empty() {
        let mut bad = None;
        for r in alg3_bound_rows(&spec)? {
            eprintln!(
                "alg3 v={} worst_d={} worst_side={} sim_cr={} bound={}",
                sig9(r.v),
                sig9(r.worst_d),
                r.worst_side,
                sig9(r.sim_cr),
                sig9(r.formula_cr)
            );
            if !r.consistent() && bad.is_none() {
                bad = Some(r);
            }
        }
        if let Some(r) = bad {
            return Err(Failure::Runtime(format!(
                "simulated ratio {} exceeds the bound {} at v = {}, d = {}, side {}",
                r.sim_cr, r.formula_cr, r.v, r.worst_d, r.worst_side
            )));
        }
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    let level = if a.full { Level::Full } else { Level::Quick };
    let source = if a.faulty_radical {
        U2Source::FaultyRadical
    } else {
        U2Source::Quadratic
    };
    let outcomes = run_suite(level, source);
    for o in &outcomes {
        println!("{o}");
    }
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).collect();
    println!(
        "{} of {} checks passed",
        outcomes.len() - failed.len(),
        outcomes.len()
    );
    match failed.first() {
        Some(first) => Err(Failure::Runtime(format!(
            "first failure: {}: {}",
            first.name, first.detail
        ))),
        None => Ok(()),
    }
}

fn cmd_worst_case(a: WorstCaseArgs) -> Result<(), Failure> {
    if !(a.d_min > 0.0) || !(a.d_max >= a.d_min) || !a.d_max.is_finite() {
        return Err(Failure::Usage(format!(
            "invalid distance range [{}, {}]",
            a.d_min, a.d_max
        )));
    }
    let points = if a.d_min == a.d_max { 1 } else { a.points };
    let grid = if a.d_min == a.d_max {
        linear_grid(a.d_min, a.d_max, 1)?
    } else {
        log_grid(a.d_min, a.d_max, points)?
    };
    let r = worst_case_cr_with(a.algorithm.into(), a.v, &grid, &params(a.u1, a.u2))?;
    println!(
        "algorithm={}\nv={}\nworst_d={}\nworst_side={}\nsim_cr={}\nformula_cr={}\ngap={}\ncr_left={}\ncr_right={}\nruns={}\nconsistent={}",
        r.algorithm,
        sig9(r.v),
        sig9(r.worst_d),
        r.worst_side,
        sig9(r.sim_cr),
        sig9(r.formula_cr),
        sig9(r.gap),
        sig9(r.cr_left),
        sig9(r.cr_right),
        r.runs,
        r.consistent()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Simulate(a) => cmd_simulate(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Verify(a) => cmd_verify(a),
        Command::WorstCase(a) => cmd_worst_case(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
