//! Singularity analysis CLI for lower-mobility parallel manipulators.
//!
//! `check` analyzes one pose and encodes the verdict in its exit status;
//! `sweep` rasterizes a pose grid to CSV; `selftest` runs the numeric
//! batteries. Exit codes: 0 non-singular, 10 singular, 11 near-singular,
//! 2 usage/config/build errors, 1 selftest failure.

mod config;
mod eval;
mod selftest;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use govline::singularity::Verdict;
use govline::Tolerances;

use config::Machine;
use eval::{condition_names, evaluate, Evaluation, PoseOutcome};

#[derive(Parser)]
#[command(
    name = "govline",
    version,
    about = "Governing-line singularity analysis for lower-mobility parallel manipulators"
)]
struct Cli {
    /// Relative tolerance for exact-zero tests on geometric inputs.
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    /// Minimum singular value at or below which a pose is reported
    /// singular.
    #[arg(long, global = true)]
    threshold: Option<f64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze a single pose; the verdict is the exit status.
    Check {
        /// JSON machine configuration.
        #[arg(long)]
        config: PathBuf,
        /// Pose parameter override, `key=value`; repeatable. Unset keys
        /// take the configuration's home values.
        #[arg(long = "pose", value_name = "K=V")]
        pose: Vec<String>,
    },
    /// Evaluate a rectangular pose grid and emit CSV.
    Sweep {
        /// JSON machine configuration.
        #[arg(long)]
        config: PathBuf,
        /// Grid axis, `key=min:max:n`; repeatable. The first axis varies
        /// slowest. Unswept keys stay at their home values.
        #[arg(long = "grid", value_name = "K=MIN:MAX:N")]
        grid: Vec<String>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in numeric batteries.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = match tolerances(&cli) {
        Ok(t) => t,
        Err(msg) => return usage_error(&msg),
    };
    let code = match &cli.cmd {
        Cmd::Check { config, pose } => cmd_check(config, pose, &tol),
        Cmd::Sweep { config, grid, jobs, out } => cmd_sweep(config, grid, *jobs, out.as_deref(), &tol),
        Cmd::Selftest => selftest::run(&tol),
    };
    ExitCode::from(code as u8)
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("govline: {msg}");
    ExitCode::from(2)
}

fn tolerances(cli: &Cli) -> Result<Tolerances, String> {
    let mut tol = Tolerances::default();
    if let Some(eps) = cli.epsilon {
        let usable = eps.is_finite() && eps >= 0.0;
        if !usable {
            return Err(format!("--epsilon must be a finite non-negative number, got {eps}"));
        }
        tol.epsilon = eps;
    }
    if let Some(th) = cli.threshold {
        let usable = th.is_finite() && th > 0.0;
        if !usable {
            return Err(format!("--threshold must be a finite positive number, got {th}"));
        }
        tol.singular = th;
        tol.near_singular = tol.near_singular.max(th);
    }
    Ok(tol)
}

fn verdict_code(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::NonSingular => 0,
        Verdict::Singular => 10,
        Verdict::NearSingular => 11,
    }
}

/// `key=value` pose overrides applied on top of the home pose.
fn resolve_pose(machine: &Machine, overrides: &[String]) -> Result<Vec<f64>, String> {
    let keys = machine.pose_keys();
    let mut values = machine.home.clone();
    for item in overrides {
        let Some((k, v)) = item.split_once('=') else {
            return Err(format!("--pose needs key=value, got {item:?}"));
        };
        let Some(slot) = keys.iter().position(|key| *key == k) else {
            return Err(format!(
                "{k:?} is not a pose parameter of {} (expected one of {})",
                machine.name(),
                keys.join(", ")
            ));
        };
        values[slot] = v
            .parse::<f64>()
            .map_err(|e| format!("--pose {k}: {e}"))?;
    }
    Ok(values)
}

fn cmd_check(config: &Path, pose: &[String], tol: &Tolerances) -> i32 {
    if let Err(msg) = selftest::tolerance_battery(tol) {
        eprintln!("govline: unusable tolerance set: {msg}");
        return 2;
    }
    let machine = match config::load(config, tol) {
        Ok(m) => m,
        Err(msg) => {
            eprintln!("govline: {msg}");
            return 2;
        }
    };
    let values = match resolve_pose(&machine, pose) {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("govline: {msg}");
            return 2;
        }
    };
    match evaluate(&machine, &values, tol) {
        PoseOutcome::Unreachable(reason) => {
            eprintln!("govline: pose rejected: {reason}");
            2
        }
        PoseOutcome::Evaluated(e) => {
            print_report(&machine, &values, &e);
            verdict_code(e.verdict)
        }
    }
}

fn print_report(machine: &Machine, values: &[f64], e: &Evaluation) {
    println!("machine: {}", machine.name());
    let pose = machine
        .pose_keys()
        .iter()
        .zip(values)
        .map(|(k, v)| format!("{k}={v:.16e}"))
        .collect::<Vec<_>>()
        .join(" ");
    println!("pose: {pose}");
    println!("oracle_det: {:.16e}", e.oracle_det);
    println!("min_sv: {:.16e}", e.min_sv);
    for (name, value) in &e.conditions {
        println!("cond.{name}: {value:.16e}");
    }
    println!("verdict: {}", e.verdict.as_str());
    println!(
        "case: {}",
        e.case.map_or("-", |c| c.as_str())
    );
}

/// One parsed `--grid` axis.
struct Axis {
    slot: usize,
    min: f64,
    max: f64,
    n: usize,
}

impl Axis {
    fn value(&self, i: usize) -> f64 {
        if self.n == 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * (i as f64) / ((self.n - 1) as f64)
        }
    }
}

fn parse_axes(machine: &Machine, grid: &[String]) -> Result<Vec<Axis>, String> {
    let keys = machine.pose_keys();
    let mut axes = Vec::new();
    for item in grid {
        let Some((k, spec)) = item.split_once('=') else {
            return Err(format!("--grid needs key=min:max:n, got {item:?}"));
        };
        let Some(slot) = keys.iter().position(|key| *key == k) else {
            return Err(format!(
                "{k:?} is not a pose parameter of {} (expected one of {})",
                machine.name(),
                keys.join(", ")
            ));
        };
        if axes.iter().any(|a: &Axis| a.slot == slot) {
            return Err(format!("axis {k:?} given twice"));
        }
        let parts: Vec<&str> = spec.split(':').collect();
        let [min, max, n] = parts.as_slice() else {
            return Err(format!("--grid {k}: expected min:max:n, got {spec:?}"));
        };
        let min = min.parse::<f64>().map_err(|e| format!("--grid {k} min: {e}"))?;
        let max = max.parse::<f64>().map_err(|e| format!("--grid {k} max: {e}"))?;
        let n = n.parse::<usize>().map_err(|e| format!("--grid {k} n: {e}"))?;
        if n == 0 {
            return Err(format!("--grid {k}: need at least one sample"));
        }
        axes.push(Axis { slot, min, max, n });
    }
    if axes.is_empty() {
        return Err("sweep needs at least one --grid axis".into());
    }
    Ok(axes)
}

fn csv_header(machine: &Machine) -> String {
    let mut header = String::new();
    for k in machine.pose_keys() {
        let _ = write!(header, "pose.{k},");
    }
    header.push_str("oracle_det,min_sv");
    for name in condition_names(&machine.kind) {
        let _ = write!(header, ",cond.{name}");
    }
    header.push_str(",verdict,case");
    header
}

fn csv_row(machine: &Machine, values: &[f64], outcome: &PoseOutcome) -> String {
    let mut row = String::new();
    for v in values {
        let _ = write!(row, "{v:.16e},");
    }
    match outcome {
        PoseOutcome::Evaluated(e) => {
            let _ = write!(row, "{:.16e},{:.16e}", e.oracle_det, e.min_sv);
            for (_, value) in &e.conditions {
                let _ = write!(row, ",{value:.16e}");
            }
            let _ = write!(row, ",{}", e.verdict.as_str());
            let _ = write!(row, ",{}", e.case.map_or("", |c| c.as_str()));
        }
        PoseOutcome::Unreachable(_) => {
            let _ = write!(row, ",");
            for _ in condition_names(&machine.kind) {
                row.push(',');
            }
            row.push_str(",unreachable,");
        }
    }
    row
}

fn cmd_sweep(
    config: &Path,
    grid: &[String],
    jobs: usize,
    out: Option<&Path>,
    tol: &Tolerances,
) -> i32 {
    if let Err(msg) = selftest::tolerance_battery(tol) {
        eprintln!("govline: unusable tolerance set: {msg}");
        return 2;
    }
    let machine = match config::load(config, tol) {
        Ok(m) => m,
        Err(msg) => {
            eprintln!("govline: {msg}");
            return 2;
        }
    };
    let axes = match parse_axes(&machine, grid) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("govline: {msg}");
            return 2;
        }
    };
    let total: usize = axes.iter().map(|a| a.n).product();
    let jobs = jobs.max(1).min(total.max(1));

    // Row text is produced independently per grid index and stitched in
    // index order, so the byte stream cannot depend on the worker count.
    let line_for = |idx: usize| -> String {
        let mut values = machine.home.clone();
        let mut rest = idx;
        for a in axes.iter().rev() {
            values[a.slot] = a.value(rest % a.n);
            rest /= a.n;
        }
        let outcome = evaluate(&machine, &values, tol);
        csv_row(&machine, &values, &outcome)
    };

    let chunk = total.div_ceil(jobs);
    let mut body: Vec<Vec<String>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..jobs {
            let lo = w * chunk;
            let hi = ((w + 1) * chunk).min(total);
            let line_for = &line_for;
            handles.push(scope.spawn(move || (lo..hi).map(line_for).collect::<Vec<_>>()));
        }
        for h in handles {
            body.push(h.join().expect("sweep worker panicked"));
        }
    });

    let mut text = csv_header(&machine);
    text.push('\n');
    for lines in &body {
        for line in lines {
            text.push_str(line);
            text.push('\n');
        }
    }

    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return 2;
            }
        }
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("govline: cannot write {}: {e}", path.display());
                return 2;
            }
        }
    }
    0
}
