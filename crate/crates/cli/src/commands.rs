//! The five subcommands: `sweep`, `conditions`, `figure`, `oracle`,
//! `steady`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use num_complex::Complex;
use serde::Serialize;

use nonrecip_core::conditions::{perfect_conditions, Branch};
use nonrecip_core::model::{
    linearized_from_steady, LinearizedSystem, ProbeSpec, SteadyState, SystemParams,
};
use nonrecip_core::oracle::{
    demodulate, general_scattering, integrate_full, integrate_rwa, TimeSeries,
};
use nonrecip_core::response::{scattering_point, sweep, Direction};
use nonrecip_core::steady_state::{
    drives_for_target, solve_steady_state_with, steady_residual, SolveOptions,
};

use crate::config::{LinearizedBlock, Mode, PhysicalBlock, RunConfig};
use crate::report::{
    complex_pair, direction_summary, to_json, write_sweep_csv, LinSummary, SteadySummary,
    SweepSummary,
};
use crate::theta::parse_theta;
use crate::CliError;

type Lin64 = LinearizedSystem<f64>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn numeric(err: impl std::fmt::Display) -> CliError {
    CliError::Numeric(err.to_string())
}

fn parse_theta_flag(s: &str) -> Result<f64, String> {
    parse_theta(s)
}

fn direction_label(direction: Direction) -> &'static str {
    match direction {
        Direction::LeftToRight => "L_to_R",
        Direction::RightToLeft => "R_to_L",
    }
}

fn branch_label(branch: Branch) -> &'static str {
    match branch {
        Branch::ThetaHalfPi => "theta_half_pi",
        Branch::EqualDamping => "equal_damping",
    }
}

/// Physical-block solution: parameters, steady state, iteration count, and
/// the symmetric reduction (kept as a `Result` so callers can either demand
/// it or report the failure).
type PhysicalSolve = (
    SystemParams<f64>,
    SteadyState<f64>,
    usize,
    Result<Lin64, String>,
);

fn solve_physical(block: &PhysicalBlock) -> Result<PhysicalSolve, CliError> {
    let params = SystemParams::new(
        block.kappa1,
        block.kappa2,
        block.gamma,
        block.omega_m,
        block.g0,
        block.j,
        block.delta_c,
        Complex::new(block.eps_c[0], block.eps_c[1]),
        Complex::new(block.eps_d[0], block.eps_d[1]),
    )
    .map_err(|e| usage(format!("physical block: {e}")))?;
    let (state, iterations) =
        solve_steady_state_with(&params, &SolveOptions::default()).map_err(numeric)?;
    let lin = linearized_from_steady(&params, &state).map_err(|e| e.to_string());
    Ok((params, state, iterations, lin))
}

fn steady_summary(
    params: &SystemParams<f64>,
    state: &SteadyState<f64>,
    iterations: usize,
    lin: &Result<Lin64, String>,
) -> SteadySummary {
    SteadySummary {
        b: complex_pair(state.b),
        c1: complex_pair(state.c1),
        c2: complex_pair(state.c2),
        delta1: state.delta1,
        delta2: state.delta2,
        iterations,
        residual: steady_residual(params, state),
        linearized: lin.as_ref().ok().map(|l| LinSummary {
            g: l.g,
            theta: l.theta,
            j: l.tunneling,
            kappa: l.kappa,
            gamma: l.gamma,
        }),
        linearized_error: lin.as_ref().err().cloned(),
    }
}

fn lin_from_block(block: &LinearizedBlock) -> Result<Lin64, CliError> {
    LinearizedSystem::new(block.g, block.theta.0, block.j, block.kappa, block.gamma)
        .map_err(|e| usage(format!("linearized block: {e}")))
}

fn emit(text: &str, out: &Option<PathBuf>, quiet: bool) -> Result<(), CliError> {
    if let Some(path) = out {
        std::fs::write(path, format!("{text}\n"))?;
    }
    if !quiet {
        println!("{text}");
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// sweep

#[derive(Debug, clap::Args)]
pub struct SweepArgs {
    /// JSON run configuration
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output CSV path (overrides the config `out`)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Suppress the summary JSON on stdout
    #[arg(long)]
    pub quiet: bool,
    /// Common cavity decay rate (linearized mode)
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Mechanical decay rate (linearized mode)
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Effective optomechanical coupling G (linearized mode)
    #[arg(long)]
    pub g: Option<f64>,
    /// Cavity-cavity tunneling J (linearized mode)
    #[arg(long)]
    pub j: Option<f64>,
    /// Coupling phase difference; accepts pi fractions like `-pi/2`
    #[arg(long, value_parser = parse_theta_flag, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub n_points: Option<usize>,
}

pub fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let config = args.config.as_deref().map(RunConfig::load).transpose()?;
    let mode = config.as_ref().map(|c| c.mode).unwrap_or(Mode::Linearized);

    let (lin, steady) = match mode {
        Mode::Linearized => {
            let block = config.as_ref().and_then(|c| c.linearized);
            let require = |flag: Option<f64>, from_block: Option<f64>, name: &str| {
                flag.or(from_block)
                    .ok_or_else(|| usage(format!("missing parameter `{name}`")))
            };
            let kappa = require(args.kappa, block.map(|b| b.kappa), "kappa")?;
            let gamma = require(args.gamma, block.map(|b| b.gamma), "gamma")?;
            let g = require(args.g, block.map(|b| b.g), "G")?;
            let j = require(args.j, block.map(|b| b.j), "J")?;
            let theta = require(args.theta, block.map(|b| b.theta.0), "theta")?;
            let lin = LinearizedSystem::new(g, theta, j, kappa, gamma)
                .map_err(|e| usage(e.to_string()))?;
            (lin, None)
        }
        Mode::Selfconsistent => {
            if [args.kappa, args.gamma, args.g, args.j, args.theta]
                .iter()
                .any(Option::is_some)
            {
                return Err(usage(
                    "parameter flag overrides apply to linearized mode only",
                ));
            }
            let block = config.as_ref().and_then(|c| c.physical).expect("validated");
            let (params, state, iterations, lin) = solve_physical(&block)?;
            let lin = lin.map_err(CliError::Numeric)?;
            let summary = steady_summary(&params, &state, iterations, &Ok(lin));
            (lin, Some(summary))
        }
    };

    let grid_block = config.as_ref().and_then(|c| c.grid);
    let require = |flag: Option<f64>, from_block: Option<f64>, name: &str| {
        flag.or(from_block)
            .ok_or_else(|| usage(format!("missing grid field `{name}`")))
    };
    let x_min = require(args.x_min, grid_block.map(|g| g.x_min), "x_min")?;
    let x_max = require(args.x_max, grid_block.map(|g| g.x_max), "x_max")?;
    let n_points = args
        .n_points
        .or(grid_block.map(|g| g.n_points))
        .ok_or_else(|| usage("missing grid field `n_points`"))?;
    if !(x_min < x_max) || n_points < 2 {
        return Err(usage(format!(
            "bad grid: x_min {x_min} must be < x_max {x_max} and n_points {n_points} >= 2"
        )));
    }

    let out = args
        .out
        .or_else(|| config.as_ref().and_then(|c| c.out.clone()))
        .unwrap_or_else(|| PathBuf::from("sweep.csv"));

    let points = sweep(&lin, x_min, x_max, n_points).map_err(numeric)?;
    write_sweep_csv(BufWriter::new(File::create(&out)?), &points)?;

    let summary = SweepSummary {
        out: out.display().to_string(),
        n_points,
        x_min,
        x_max,
        lr: direction_summary(&points, Direction::LeftToRight),
        rl: direction_summary(&points, Direction::RightToLeft),
        steady,
    };
    if !args.quiet {
        println!("{}", to_json(&summary));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// conditions

#[derive(Debug, clap::Args)]
pub struct ConditionsArgs {
    /// Common cavity decay rate
    #[arg(long)]
    pub kappa: f64,
    /// Mechanical decay rate
    #[arg(long)]
    pub gamma: f64,
    /// Coupling phase difference; accepts pi fractions like `-pi/2`
    #[arg(long, value_parser = parse_theta_flag, allow_hyphen_values = true)]
    pub theta: f64,
    /// Also write the JSON to this path
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Suppress stdout
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Serialize)]
struct ConditionsOut {
    branch: &'static str,
    x: f64,
    #[serde(rename = "J")]
    j: f64,
    #[serde(rename = "G")]
    g: f64,
    direction: &'static str,
}

#[derive(Serialize)]
struct NoConditionOut {
    result: &'static str,
}

pub fn cmd_conditions(args: ConditionsArgs) -> Result<(), CliError> {
    if !(args.kappa > 0.0) || !(args.gamma > 0.0) {
        return Err(usage("kappa and gamma must be positive"));
    }
    let text = match perfect_conditions(args.kappa, args.gamma, args.theta) {
        Some(cond) => to_json(&ConditionsOut {
            branch: branch_label(cond.branch),
            x: cond.x_star,
            j: cond.j_star,
            g: cond.g_star,
            direction: direction_label(cond.direction),
        }),
        None => to_json(&NoConditionOut { result: "none" }),
    };
    emit(&text, &args.out, args.quiet)
}

// ---------------------------------------------------------------------------
// figure

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FigureId {
    Fig2a,
    Fig2b,
    Fig2c,
    Fig2d,
    Fig3,
    Fig4a,
    Fig4b,
    Fig4c,
    Fig4d,
}

impl FigureId {
    fn name(self) -> &'static str {
        match self {
            FigureId::Fig2a => "fig2a",
            FigureId::Fig2b => "fig2b",
            FigureId::Fig2c => "fig2c",
            FigureId::Fig2d => "fig2d",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4a => "fig4a",
            FigureId::Fig4b => "fig4b",
            FigureId::Fig4c => "fig4c",
            FigureId::Fig4d => "fig4d",
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct FigureArgs {
    /// Which reference data set to emit
    #[arg(value_enum)]
    pub id: FigureId,
    /// Output CSV path (default `<id>.csv`)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Suppress the summary JSON on stdout
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Serialize)]
struct FigureSummary {
    figure: &'static str,
    out: String,
    rows: usize,
}

/// The spectrum figures pin the couplings to the perfect-isolation values
/// of their branch; only the decay ratio (family 2) or the phase (family 4)
/// varies between panels.
fn figure_system(id: FigureId) -> Option<(Lin64, f64, f64, usize)> {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
    let spectrum = |kappa: f64, gamma: f64, theta: f64, x_lo: f64, x_hi: f64| {
        let cond = perfect_conditions(kappa, gamma, theta)
            .expect("figure parameterizations sit on a condition branch");
        let lin = LinearizedSystem::new(cond.g_star, theta, cond.j_star, kappa, gamma)
            .expect("condition couplings are valid");
        (lin, x_lo, x_hi, 2001)
    };
    match id {
        FigureId::Fig2a => Some(spectrum(1.0, 2.0, -FRAC_PI_2, -2.0, 2.0)),
        FigureId::Fig2b => Some(spectrum(1.0, 1.0, -FRAC_PI_2, -2.0, 2.0)),
        FigureId::Fig2c => Some(spectrum(1.0, 0.2, -FRAC_PI_2, -2.0, 2.0)),
        FigureId::Fig2d => Some(spectrum(1.0, 0.01, -FRAC_PI_2, -2.0, 2.0)),
        FigureId::Fig3 => None,
        FigureId::Fig4a => Some(spectrum(1.0, 1.0, -3.0 * FRAC_PI_4, -5.0, 5.0)),
        FigureId::Fig4b => Some(spectrum(1.0, 1.0, -FRAC_PI_4, -5.0, 5.0)),
        FigureId::Fig4c => Some(spectrum(1.0, 1.0, FRAC_PI_4, -5.0, 5.0)),
        FigureId::Fig4d => Some(spectrum(1.0, 1.0, 3.0 * FRAC_PI_4, -5.0, 5.0)),
    }
}

/// Condition-curve rows: required coupling and detuning (in units of gamma)
/// against the phase, on the equal-damping branch.
fn condition_curve() -> Vec<(f64, f64, f64)> {
    use std::f64::consts::PI;
    let mut rows = Vec::new();
    for k in 1..720 {
        let theta = -PI + (k as f64) * PI / 360.0;
        if theta.sin().abs() <= 1e-12 {
            continue;
        }
        let cond = perfect_conditions(1.0, 1.0, theta).expect("away from the poles");
        rows.push((theta, cond.g_star, cond.x_star));
    }
    rows
}

pub fn cmd_figure(args: FigureArgs) -> Result<(), CliError> {
    let out = args
        .out
        .unwrap_or_else(|| PathBuf::from(format!("{}.csv", args.id.name())));
    let rows = match figure_system(args.id) {
        Some((lin, x_lo, x_hi, n)) => {
            let points = sweep(&lin, x_lo, x_hi, n).map_err(numeric)?;
            write_sweep_csv(BufWriter::new(File::create(&out)?), &points)?;
            points.len()
        }
        None => {
            let rows = condition_curve();
            let mut w = BufWriter::new(File::create(&out)?);
            writeln!(w, "theta,G_over_gamma,x_over_gamma")?;
            for (theta, g, x) in &rows {
                writeln!(w, "{theta:.16e},{g:.16e},{x:.16e}")?;
            }
            rows.len()
        }
    };
    if !args.quiet {
        println!(
            "{}",
            to_json(&FigureSummary {
                figure: args.id.name(),
                out: out.display().to_string(),
                rows,
            })
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// oracle

#[derive(Debug, clap::Args)]
pub struct OracleArgs {
    /// JSON run configuration
    #[arg(long)]
    pub config: PathBuf,
    /// Also write the JSON report to this path
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Dump the left-drive trajectory of the best time-domain route as CSV
    #[arg(long)]
    pub dump_trajectory: Option<PathBuf>,
    /// Suppress stdout
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Clone, Copy)]
struct Pair {
    t_lr: Complex<f64>,
    t_rl: Complex<f64>,
}

#[derive(Serialize)]
struct PairOut {
    t_lr: [f64; 2],
    t_rl: [f64; 2],
    #[serde(rename = "T_LR")]
    t_lr_mag: f64,
    #[serde(rename = "T_RL")]
    t_rl_mag: f64,
}

impl From<Pair> for PairOut {
    fn from(p: Pair) -> Self {
        PairOut {
            t_lr: complex_pair(p.t_lr),
            t_rl: complex_pair(p.t_rl),
            t_lr_mag: p.t_lr.norm(),
            t_rl_mag: p.t_rl.norm(),
        }
    }
}

#[derive(Serialize)]
struct Deviations {
    closed_vs_linsolve: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_vs_rwa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rwa_vs_full: Option<f64>,
}

#[derive(Serialize)]
struct ScanEntry {
    omega_m: f64,
    rwa_deviation: f64,
}

#[derive(Serialize)]
struct OracleReport {
    x: f64,
    closed_form: PairOut,
    linsolve: PairOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    timedomain_rwa: Option<PairOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timedomain_full: Option<PairOut>,
    deviations: Deviations,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_m_scan: Option<Vec<ScanEntry>>,
}

fn pair_deviation(a: Pair, b: Pair) -> f64 {
    let scale = [a.t_lr, a.t_rl, b.t_lr, b.t_rl]
        .iter()
        .map(|z| z.norm())
        .fold(1e-30, f64::max);
    (a.t_lr - b.t_lr).norm().max((a.t_rl - b.t_rl).norm()) / scale
}

/// Transmission pair from trajectories of the sideband-resolved equations,
/// one drive per side. Returns the left-drive trajectory for dumping.
fn rwa_pair(
    lin: &Lin64,
    x: f64,
    t_end: f64,
    dt: f64,
    window: f64,
) -> Result<(Pair, TimeSeries<f64>), CliError> {
    let one = Complex::new(1.0, 0.0);
    let left_ts = integrate_rwa(lin, &ProbeSpec::left(one, x), t_end, dt).map_err(numeric)?;
    let left = demodulate(&left_ts, x, window).map_err(numeric)?;
    let right_ts = integrate_rwa(lin, &ProbeSpec::right(one, x), t_end, dt).map_err(numeric)?;
    let right = demodulate(&right_ts, x, window).map_err(numeric)?;
    let pair = Pair {
        t_lr: left[1].plus.scale(lin.kappa),
        t_rl: right[0].plus.scale(lin.kappa),
    };
    Ok((pair, left_ts))
}

/// Same with the full equations (counter-rotating terms kept).
fn full_pair(
    params: &SystemParams<f64>,
    steady: &SteadyState<f64>,
    kappa: f64,
    x: f64,
    t_end: f64,
    dt: f64,
    window: f64,
) -> Result<(Pair, TimeSeries<f64>), CliError> {
    let one = Complex::new(1.0, 0.0);
    let left_ts =
        integrate_full(params, steady, &ProbeSpec::left(one, x), t_end, dt).map_err(numeric)?;
    let left = demodulate(&left_ts, x, window).map_err(numeric)?;
    let right_ts =
        integrate_full(params, steady, &ProbeSpec::right(one, x), t_end, dt).map_err(numeric)?;
    let right = demodulate(&right_ts, x, window).map_err(numeric)?;
    let pair = Pair {
        t_lr: left[1].plus.scale(kappa),
        t_rl: right[0].plus.scale(kappa),
    };
    Ok((pair, left_ts))
}

/// Synthesizes the red-sideband physical system realizing `lin` at the given
/// mechanical frequency and reports how far the full-equation response is
/// from the sideband-resolved one (relative, over all three modes).
fn scan_deviation(
    lin: &Lin64,
    x: f64,
    omega_m: f64,
    g0: f64,
    t_end: f64,
    window: f64,
) -> Result<f64, CliError> {
    let (eps_c, eps_d) = drives_for_target(
        lin.g,
        lin.theta,
        lin.tunneling,
        lin.kappa,
        lin.kappa,
        g0,
        omega_m,
        omega_m,
    )
    .map_err(numeric)?;
    let params = SystemParams::new(
        lin.kappa,
        lin.kappa,
        lin.gamma,
        omega_m,
        g0,
        lin.tunneling,
        omega_m,
        eps_c,
        eps_d,
    )
    .map_err(|e| usage(e.to_string()))?;
    let (steady, _) =
        solve_steady_state_with(&params, &SolveOptions::default()).map_err(numeric)?;

    let probe = ProbeSpec::left(Complex::new(1.0, 0.0), x);
    let fastest = lin
        .kappa
        .max(lin.gamma)
        .max(lin.g)
        .max(lin.tunneling)
        .max(x.abs());
    let rwa_ts = integrate_rwa(lin, &probe, t_end, 0.04 / fastest).map_err(numeric)?;
    let rwa = demodulate(&rwa_ts, x, window).map_err(numeric)?;
    let full_ts =
        integrate_full(&params, &steady, &probe, t_end, 0.016 / omega_m).map_err(numeric)?;
    let full = demodulate(&full_ts, x, window).map_err(numeric)?;

    let scale = (0..3).map(|m| rwa[m].plus.norm()).fold(1e-30, f64::max);
    let dev = (0..3)
        .map(|m| (full[m].plus - rwa[m].plus).norm())
        .fold(0.0, f64::max);
    Ok(dev / scale)
}

pub fn cmd_oracle(args: OracleArgs) -> Result<(), CliError> {
    let config = RunConfig::load(&args.config)?;
    let oracle = config.oracle.clone().unwrap_or_default();

    let (lin, physical) = match config.mode {
        Mode::Linearized => {
            let block = config.linearized.expect("validated");
            (lin_from_block(&block)?, None)
        }
        Mode::Selfconsistent => {
            let block = config.physical.expect("validated");
            let (params, state, _, lin) = solve_physical(&block)?;
            let lin = lin.map_err(CliError::Numeric)?;
            (lin, Some((params, state)))
        }
    };
    if oracle.full && physical.is_none() {
        return Err(usage(
            "full-equation oracle needs the physical block (mode selfconsistent)",
        ));
    }
    if oracle.omega_m_scan.is_some() && config.mode != Mode::Linearized {
        return Err(usage(
            "omega_m_scan synthesizes its own physical systems; use mode linearized",
        ));
    }

    let x = oracle.x;
    let closed_point = scattering_point(&lin, x).map_err(numeric)?;
    let closed = Pair {
        t_lr: closed_point.t_lr,
        t_rl: closed_point.t_rl,
    };
    let (t_lr_gen, t_rl_gen) = general_scattering(&lin.general(), x).map_err(numeric)?;
    let linsolve = Pair {
        t_lr: t_lr_gen,
        t_rl: t_rl_gen,
    };

    let t_end = oracle.t_end.unwrap_or(40.0 / lin.kappa.min(lin.gamma));
    let fastest = lin
        .kappa
        .max(lin.gamma)
        .max(lin.g)
        .max(lin.tunneling)
        .max(x.abs());
    let window = oracle.window_fraction;

    let mut dump: Option<TimeSeries<f64>> = None;
    let rwa = if oracle.rwa {
        let dt = oracle.dt.unwrap_or(0.04 / fastest);
        let (pair, ts) = rwa_pair(&lin, x, t_end, dt, window)?;
        dump = Some(ts);
        Some(pair)
    } else {
        None
    };
    let full = if oracle.full {
        let (params, steady) = physical.as_ref().expect("checked above");
        let dt = oracle.dt.unwrap_or(0.016 / params.omega_m);
        let (pair, ts) = full_pair(params, steady, lin.kappa, x, t_end, dt, window)?;
        dump = Some(ts);
        Some(pair)
    } else {
        None
    };

    let scan = oracle
        .omega_m_scan
        .as_ref()
        .map(|list| {
            list.iter()
                .map(|&wm| {
                    scan_deviation(&lin, x, wm, oracle.g0, t_end, window).map(|dev| ScanEntry {
                        omega_m: wm,
                        rwa_deviation: dev,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()
        })
        .transpose()?;

    let report = OracleReport {
        x,
        closed_form: closed.into(),
        linsolve: linsolve.into(),
        timedomain_rwa: rwa.map(PairOut::from),
        timedomain_full: full.map(PairOut::from),
        deviations: Deviations {
            closed_vs_linsolve: pair_deviation(closed, linsolve),
            closed_vs_rwa: rwa.map(|p| pair_deviation(closed, p)),
            rwa_vs_full: match (rwa, full) {
                (Some(a), Some(b)) => Some(pair_deviation(a, b)),
                _ => None,
            },
        },
        omega_m_scan: scan,
    };

    if let Some(path) = &args.dump_trajectory {
        match &dump {
            Some(ts) => ts.write_csv(BufWriter::new(File::create(path)?))?,
            None => {
                return Err(usage(
                    "--dump-trajectory needs a time-domain route (rwa or full)",
                ))
            }
        }
    }
    emit(&to_json(&report), &args.out, args.quiet)
}

// ---------------------------------------------------------------------------
// steady

#[derive(Debug, clap::Args)]
pub struct SteadyArgs {
    /// JSON run configuration with a physical block
    #[arg(long)]
    pub config: PathBuf,
    /// Also write the JSON to this path
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Suppress stdout
    #[arg(long)]
    pub quiet: bool,
}

pub fn cmd_steady(args: SteadyArgs) -> Result<(), CliError> {
    let config = RunConfig::load(&args.config)?;
    let block = config
        .physical
        .ok_or_else(|| usage("steady needs a `physical` block (mode selfconsistent)"))?;
    let (params, state, iterations, lin) = solve_physical(&block)?;
    let summary = steady_summary(&params, &state, iterations, &lin);
    emit(&to_json(&summary), &args.out, args.quiet)
}
