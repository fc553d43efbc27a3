//! `milburn` — covariance-matrix simulator for two coupled oscillators under
//! intrinsic decoherence.
//!
//! Subcommands: `modes` (normal-mode reduction), `evolve` (single time
//! series → CSV), `sweep` (one-axis parameter sweep → CSVs + JSON manifest),
//! `figure` (named preset bundles), `verify` (built-in oracle suites).
//!
//! Exit codes: 0 success, 2 invalid input, 3 I/O failure, 4 verification
//! failure.

mod plot;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use milburn::{
    csv_string, derive_modes, figure_preset, parameter_sweep, series_oracle_covariance,
    time_series, verify, write_manifest, CorrelationRecord, Error, FigureManifest, FigurePreset,
    Kernel, Propagator, RunResult, SweepManifest, SweepSpec, SystemParams, TimeGrid,
};

const ORACLE_STRIDE: usize = 100;
const ORACLE_TOL: f64 = 1e-8;
const ORACLE_EPS: f64 = 1e-12;

#[derive(Parser)]
#[command(
    name = "milburn",
    version,
    about = "Exact covariance evolution of two coupled oscillators under Milburn intrinsic decoherence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal-mode reduction for one parameter set.
    Modes(PhysicalArgs),
    /// Evolve one time series and write it as CSV.
    Evolve(EvolveArgs),
    /// Run a one-axis parameter sweep; write per-cell CSVs and a JSON manifest.
    Sweep(SweepArgs),
    /// Run a named figure preset (fig4 | anisotropy | coupling).
    Figure(FigureArgs),
    /// Run the built-in oracle suites and report pass/fail counts.
    Verify(VerifyArgs),
}

#[derive(Args, Clone, Copy)]
struct PhysicalArgs {
    /// Bare frequency of the first oscillator.
    #[arg(long, default_value_t = 1.0)]
    omega1: f64,
    /// Bare frequency of the second oscillator.
    #[arg(long, default_value_t = 1.0)]
    omega2: f64,
    /// Position-position coupling strength.
    #[arg(short = 'J', long = "coupling", default_value_t = 0.2)]
    coupling: f64,
    /// Intrinsic-decoherence rate.
    #[arg(long, default_value_t = 100.0)]
    gamma: f64,
}

impl PhysicalArgs {
    fn params(&self) -> Result<SystemParams, Error> {
        SystemParams::new(self.omega1, self.omega2, self.coupling, self.gamma)
    }
}

#[derive(Args, Clone, Copy)]
struct GridArgs {
    /// End of the time grid (starts at 0).
    #[arg(long = "t-max", default_value_t = 100.0)]
    t_max: f64,
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = 2001)]
    steps: usize,
}

impl GridArgs {
    fn grid(&self) -> Result<TimeGrid, Error> {
        TimeGrid::from_duration(self.t_max, self.steps)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KernelArg {
    Milburn,
    #[value(name = "von-neumann")]
    VonNeumann,
}

impl From<KernelArg> for Kernel {
    fn from(k: KernelArg) -> Kernel {
        match k {
            KernelArg::Milburn => Kernel::Milburn,
            KernelArg::VonNeumann => Kernel::VonNeumann,
        }
    }
}

/// CSV columns that can be plotted, named exactly as in the header.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ColumnArg {
    #[value(name = "N1")]
    N1,
    #[value(name = "N2")]
    N2,
    #[value(name = "E_N")]
    EN,
    #[value(name = "S_ab")]
    SAb,
    #[value(name = "S_ba")]
    SBa,
    #[value(name = "dS")]
    DS,
    #[value(name = "purity")]
    Purity,
    #[value(name = "nu_min_raw")]
    NuMinRaw,
}

impl ColumnArg {
    fn name(&self) -> &'static str {
        match self {
            ColumnArg::N1 => "N1",
            ColumnArg::N2 => "N2",
            ColumnArg::EN => "E_N",
            ColumnArg::SAb => "S_ab",
            ColumnArg::SBa => "S_ba",
            ColumnArg::DS => "dS",
            ColumnArg::Purity => "purity",
            ColumnArg::NuMinRaw => "nu_min_raw",
        }
    }

    fn extract(&self, r: &CorrelationRecord) -> f64 {
        match self {
            ColumnArg::N1 => r.n1,
            ColumnArg::N2 => r.n2,
            ColumnArg::EN => r.e_n,
            ColumnArg::SAb => r.s_ab,
            ColumnArg::SBa => r.s_ba,
            ColumnArg::DS => r.d_s,
            ColumnArg::Purity => r.purity,
            ColumnArg::NuMinRaw => r.nu_min_raw,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    #[value(name = "J")]
    J,
    #[value(name = "omega2")]
    Omega2,
    #[value(name = "gamma")]
    Gamma,
}

impl From<AxisArg> for milburn::SweepAxis {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::J => milburn::SweepAxis::Coupling,
            AxisArg::Omega2 => milburn::SweepAxis::Omega2,
            AxisArg::Gamma => milburn::SweepAxis::Gamma,
        }
    }
}

#[derive(Args)]
struct EvolveArgs {
    #[command(flatten)]
    phys: PhysicalArgs,
    #[command(flatten)]
    grid: GridArgs,
    /// Decoherence kernel.
    #[arg(long, value_enum, default_value = "milburn")]
    kernel: KernelArg,
    /// Directory for output files.
    #[arg(long = "out-dir", default_value = ".")]
    out_dir: PathBuf,
    /// Also write an SVG line chart of one column.
    #[arg(long)]
    svg: bool,
    /// Which column the SVG plots.
    #[arg(long = "svg-column", value_enum, default_value = "N1")]
    svg_column: ColumnArg,
    /// Cross-check the Milburn resummation against the term-by-term Poisson
    /// series on every 100th grid point (exit 4 on disagreement).
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    phys: PhysicalArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value = "milburn")]
    kernel: KernelArg,
    /// Which parameter the sweep varies.
    #[arg(long, value_enum)]
    axis: AxisArg,
    /// Comma-separated axis values, strictly monotone.
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<f64>,
    #[arg(long = "out-dir", default_value = ".")]
    out_dir: PathBuf,
    /// Also write one SVG overlaying a column across all cells.
    #[arg(long)]
    svg: bool,
    #[arg(long = "svg-column", value_enum, default_value = "N1")]
    svg_column: ColumnArg,
}

#[derive(Args)]
struct FigureArgs {
    /// Preset name: fig4, anisotropy, or coupling.
    name: String,
    #[arg(long = "out-dir", default_value = ".")]
    out_dir: PathBuf,
    /// Also write one SVG overlaying a column across all configurations.
    #[arg(long)]
    svg: bool,
    #[arg(long = "svg-column", value_enum, default_value = "N1")]
    svg_column: ColumnArg,
}

#[derive(Args)]
struct VerifyArgs {
    /// Seed for the randomized suites (fixed default for reproducibility).
    #[arg(long, default_value_t = 0xC0FFEE)]
    seed: u64,
}

fn main() -> ExitCode {
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Applies `MILBURN_THREADS` (0 or unset = automatic) to the global rayon
/// pool before any parallel work starts.
fn configure_threads() -> Result<(), String> {
    match std::env::var("MILBURN_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(()),
        Err(e) => Err(format!("MILBURN_THREADS is not valid unicode: {e}")),
        Ok(raw) => {
            let n: usize = raw
                .trim()
                .parse()
                .map_err(|_| format!("MILBURN_THREADS must be a non-negative integer, got `{raw}`"))?;
            if n == 0 {
                return Ok(());
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| format!("failed to configure {n} threads: {e}"))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter { .. }
        | Error::Instability { .. }
        | Error::InvalidSweep { .. }
        | Error::UnknownPreset { .. } => 2,
        Error::Io(_) | Error::Json(_) | Error::Csv { .. } => 3,
        _ => 1,
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Modes(args) => cmd_modes(args),
        Command::Evolve(args) => cmd_evolve(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Figure(args) => cmd_figure(args),
        Command::Verify(args) => Ok(cmd_verify(args)),
    }
}

fn cmd_modes(args: PhysicalArgs) -> Result<ExitCode, Error> {
    let params = args.params()?;
    let modes = derive_modes(&params)?;
    let prop = Propagator::new(params)?;
    println!("R                   = {:.12}", modes.r);
    println!("g                   = {:.12}", modes.g);
    println!("theta               = {:.12}", modes.theta);
    println!("Omega1              = {:.12}", modes.omega_n1);
    println!("Omega2              = {:.12}", modes.omega_n2);
    println!("s1                  = {:.12}", modes.s1);
    println!("s2                  = {:.12}", modes.s2);
    println!(
        "stability           = J = {} < omega1*omega2 = {}",
        params.coupling,
        params.stability_bound()
    );
    println!("resonance_edge_case = {}", prop.resonance_edge_case());
    Ok(ExitCode::SUCCESS)
}

fn write_file(path: &Path, payload: &str) -> Result<(), Error> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, payload)?;
    println!("wrote {}", path.display());
    Ok(())
}

/// Compares the resummed Milburn covariance with the Poisson-series oracle
/// on a strided subset of the grid.
fn run_oracle(params: SystemParams, grid: &TimeGrid) -> Result<ExitCode, Error> {
    let prop = Propagator::new(params)?;
    let times = grid.times();
    let mut checked = 0usize;
    let mut worst = 0.0f64;
    for (i, &t) in times.iter().enumerate().step_by(ORACLE_STRIDE) {
        let closed = prop.covariance_at(t, Kernel::Milburn)?;
        let series = series_oracle_covariance(params, t, ORACLE_EPS)?;
        let gap = closed.0.max_abs_diff(&series.0);
        worst = worst.max(gap);
        checked += 1;
        if gap > ORACLE_TOL {
            eprintln!(
                "oracle failure: series vs resummation gap {gap:.3e} > {ORACLE_TOL:.0e} at grid point {i} (t = {t})"
            );
            return Ok(ExitCode::from(4));
        }
    }
    println!("oracle: {checked} grid points checked, worst gap {worst:.3e} (tolerance {ORACLE_TOL:.0e})");
    Ok(ExitCode::SUCCESS)
}

fn svg_for_runs(
    column: ColumnArg,
    title: &str,
    labeled_runs: &[(String, &RunResult)],
) -> String {
    let data: Vec<(String, Vec<f64>, Vec<f64>)> = labeled_runs
        .iter()
        .map(|(label, run)| {
            (
                label.clone(),
                run.records.iter().map(|r| r.t).collect(),
                run.records.iter().map(|r| column.extract(r)).collect(),
            )
        })
        .collect();
    let series: Vec<plot::Series<'_>> = data
        .iter()
        .map(|(label, xs, ys)| plot::Series {
            label,
            xs,
            ys,
        })
        .collect();
    plot::line_chart_svg(title, "t", column.name(), &series)
}

fn cmd_evolve(args: EvolveArgs) -> Result<ExitCode, Error> {
    let params = args.phys.params()?;
    let grid = args.grid.grid()?;
    let kernel: Kernel = args.kernel.into();
    let run = time_series(params, &grid, kernel)?;
    if run.flags.resonance_edge_case {
        eprintln!(
            "note: resonance edge case — a phase-rate difference is a multiple of 2*pi*gamma, \
             so some Milburn factors never decay"
        );
    }
    let csv_path = args.out_dir.join(format!("evolve-{kernel}.csv"));
    write_file(&csv_path, &csv_string(&run.records))?;
    if args.svg {
        let svg_path = args.out_dir.join(format!("evolve-{kernel}.svg"));
        let title = format!(
            "omega1={} omega2={} J={} gamma={} ({kernel})",
            params.omega1, params.omega2, params.coupling, params.gamma
        );
        let labeled = [(args.svg_column.name().to_string(), &run)];
        write_file(&svg_path, &svg_for_runs(args.svg_column, &title, &labeled))?;
    }
    if args.oracle {
        return run_oracle(params, &grid);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, Error> {
    let spec = SweepSpec {
        base: args.phys.params()?,
        axis: args.axis.into(),
        values: args.values.clone(),
        grid: args.grid.grid()?,
    };
    let kernel: Kernel = args.kernel.into();
    let cells = parameter_sweep(&spec, kernel)?;

    let mut files: Vec<Option<String>> = Vec::with_capacity(cells.len());
    for cell in &cells {
        match &cell.outcome {
            Ok(run) => {
                let name = format!("sweep-{}-{}.csv", cell.axis, cell.value);
                write_file(&args.out_dir.join(&name), &csv_string(&run.records))?;
                files.push(Some(name));
            }
            Err(e) => {
                eprintln!("cell {} = {} failed: {e}", cell.axis, cell.value);
                files.push(None);
            }
        }
    }
    let manifest = SweepManifest::from_cells(&spec, kernel, &cells, &files);
    let manifest_path = args.out_dir.join("sweep-manifest.json");
    std::fs::create_dir_all(&args.out_dir)?;
    write_manifest(&manifest_path, &manifest)?;
    println!("wrote {}", manifest_path.display());

    if args.svg {
        let labeled: Vec<(String, &RunResult)> = cells
            .iter()
            .filter_map(|c| {
                c.outcome
                    .as_ref()
                    .ok()
                    .map(|run| (format!("{} = {}", c.axis, c.value), run))
            })
            .collect();
        if !labeled.is_empty() {
            let title = format!("sweep over {} ({kernel})", spec.axis);
            let svg = svg_for_runs(args.svg_column, &title, &labeled);
            write_file(&args.out_dir.join("sweep.svg"), &svg)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_figure(args: FigureArgs) -> Result<ExitCode, Error> {
    let preset: FigurePreset = args.name.parse()?;
    let configs = figure_preset(preset);
    let mut runs: Vec<(milburn::FigureConfig, RunResult, String)> = Vec::new();
    for cfg in configs {
        let run = time_series(cfg.params, &cfg.grid, cfg.kernel)?;
        let name = format!("{preset}-{}.csv", cfg.label);
        write_file(&args.out_dir.join(&name), &csv_string(&run.records))?;
        runs.push((cfg, run, name));
    }
    let manifest = FigureManifest::from_runs(&preset.to_string(), &runs);
    let manifest_path = args.out_dir.join(format!("{preset}-manifest.json"));
    std::fs::create_dir_all(&args.out_dir)?;
    write_manifest(&manifest_path, &manifest)?;
    println!("wrote {}", manifest_path.display());

    if args.svg {
        let labeled: Vec<(String, &RunResult)> = runs
            .iter()
            .map(|(cfg, run, _)| (cfg.label.clone(), run))
            .collect();
        let svg = svg_for_runs(args.svg_column, &format!("preset {preset}"), &labeled);
        write_file(&args.out_dir.join(format!("{preset}.svg")), &svg)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let checks = verify::run_all(args.seed);
    let mut failed = 0usize;
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        println!("{status}  {} — {}", c.name, c.detail);
        if !c.passed {
            failed += 1;
        }
    }
    println!("{} passed, {} failed", checks.len() - failed, failed);
    if failed > 0 {
        ExitCode::from(4)
    } else {
        ExitCode::SUCCESS
    }
}
