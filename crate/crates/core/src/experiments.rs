//! Run orchestration: time series, parameter sweeps, figure presets, and
//! comparison diagnostics.
//!
//! Grid points and sweep cells are independent, so both are evaluated with
//! rayon and merged back in input order. Each point performs the same
//! floating-point operations regardless of thread count, which keeps results
//! bitwise identical between sequential and parallel execution.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{Kernel, Propagator};
use crate::modes::{NormalModes, SystemParams};
use crate::quantifiers::{correlation_record, CorrelationRecord};

/// Default time span of a run.
pub const DEFAULT_T_MAX: f64 = 100.0;
/// Default number of grid points; resolves the fastest phase 2Ω₁ with ample
/// margin for the parameter ranges of interest.
pub const DEFAULT_STEPS: usize = 2001;

/// A uniform time grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub t_start: f64,
    pub t_end: f64,
    /// Number of grid points (≥ 2), endpoints included.
    pub steps: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, steps: usize) -> Result<Self> {
        if !(t_start.is_finite() && t_start >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "t_start",
                value: t_start,
                constraint: "finite and >= 0",
            });
        }
        if !(t_end.is_finite() && t_end > t_start) {
            return Err(Error::InvalidParameter {
                name: "t_end",
                value: t_end,
                constraint: "finite and > t_start",
            });
        }
        if steps < 2 {
            return Err(Error::InvalidParameter {
                name: "steps",
                value: steps as f64,
                constraint: ">= 2",
            });
        }
        Ok(TimeGrid {
            t_start,
            t_end,
            steps,
        })
    }

    /// Grid over [0, t_max].
    pub fn from_duration(t_max: f64, steps: usize) -> Result<Self> {
        Self::new(0.0, t_max, steps)
    }

    /// The default grid, [0, 100] with 2001 points.
    pub fn default_grid() -> Self {
        TimeGrid {
            t_start: 0.0,
            t_end: DEFAULT_T_MAX,
            steps: DEFAULT_STEPS,
        }
    }

    /// Spacing between adjacent points.
    pub fn spacing(&self) -> f64 {
        (self.t_end - self.t_start) / (self.steps - 1) as f64
    }

    /// All grid points, endpoints exact.
    pub fn times(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| {
                if i == 0 {
                    self.t_start
                } else if i == n - 1 {
                    self.t_end
                } else {
                    self.t_start
                        + (self.t_end - self.t_start) * (i as f64) / ((n - 1) as f64)
                }
            })
            .collect()
    }
}

/// Metadata attached to a completed run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunFlags {
    pub kernel: Kernel,
    /// True when a pairwise phase-rate difference aliases to a multiple of
    /// 2πΓ, making the Milburn factors for that pair identically 1.
    pub resonance_edge_case: bool,
}

/// A full evolved time series with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub params: SystemParams,
    pub modes: NormalModes,
    pub grid: TimeGrid,
    pub flags: RunFlags,
    /// One record per grid point, strictly ordered by t.
    pub records: Vec<CorrelationRecord>,
}

/// Evolves the vacuum over the grid and evaluates every quantifier at each
/// point.
pub fn time_series(params: SystemParams, grid: &TimeGrid, kernel: Kernel) -> Result<RunResult> {
    let prop = Propagator::new(params)?;
    let times = grid.times();
    let records = times
        .par_iter()
        .map(|&t| {
            let sigma = prop.covariance_at(t, kernel)?;
            correlation_record(t, &sigma)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RunResult {
        params,
        modes: *prop.modes(),
        grid: *grid,
        flags: RunFlags {
            kernel,
            resonance_edge_case: prop.resonance_edge_case(),
        },
        records,
    })
}

/// Which physical parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepAxis {
    /// Vary the coupling J.
    Coupling,
    /// Vary the second bare frequency ω₂.
    Omega2,
    /// Vary the decoherence rate Γ.
    Gamma,
}

impl std::fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SweepAxis::Coupling => write!(f, "J"),
            SweepAxis::Omega2 => write!(f, "omega2"),
            SweepAxis::Gamma => write!(f, "Gamma"),
        }
    }
}

/// A one-axis parameter sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    /// Parameters shared by every cell; the axis value overrides one field.
    pub base: SystemParams,
    pub axis: SweepAxis,
    /// Axis values, strictly monotone.
    pub values: Vec<f64>,
    pub grid: TimeGrid,
}

impl SweepSpec {
    /// Checks the value list: non-empty, finite, strictly monotone.
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::InvalidSweep {
                reason: "no axis values".into(),
            });
        }
        if let Some(v) = self.values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidSweep {
                reason: format!("non-finite axis value {v}"),
            });
        }
        let increasing = self.values.windows(2).all(|w| w[0] < w[1]);
        let decreasing = self.values.windows(2).all(|w| w[0] > w[1]);
        if self.values.len() > 1 && !increasing && !decreasing {
            return Err(Error::InvalidSweep {
                reason: "axis values must be strictly monotone".into(),
            });
        }
        Ok(())
    }

    /// The parameter set of one cell. Re-validates through
    /// [`SystemParams::new`], so e.g. an ω₂ value exceeding ω₁ is a cell
    /// error, not a panic.
    pub fn cell_params(&self, value: f64) -> Result<SystemParams> {
        let b = &self.base;
        match self.axis {
            SweepAxis::Coupling => SystemParams::new(b.omega1, b.omega2, value, b.gamma),
            SweepAxis::Omega2 => SystemParams::new(b.omega1, value, b.coupling, b.gamma),
            SweepAxis::Gamma => SystemParams::new(b.omega1, b.omega2, b.coupling, value),
        }
    }
}

/// One evaluated sweep cell; failures are captured, not propagated.
#[derive(Debug)]
pub struct SweepCell {
    pub axis: SweepAxis,
    pub value: f64,
    pub outcome: Result<RunResult>,
}

/// Runs every cell of the sweep, in parallel, capturing per-cell errors
/// (e.g. instability for couplings beyond ω₁ω₂) so the remaining cells still
/// complete. Cells are returned in the order of `spec.values`.
pub fn parameter_sweep(spec: &SweepSpec, kernel: Kernel) -> Result<Vec<SweepCell>> {
    spec.validate()?;
    Ok(spec
        .values
        .par_iter()
        .map(|&value| SweepCell {
            axis: spec.axis,
            value,
            outcome: spec
                .cell_params(value)
                .and_then(|params| time_series(params, &spec.grid, kernel)),
        })
        .collect())
}

/// Normalized RMS distance between the Milburn and unitary N₁ curves.
///
/// Defined as RMS(N₁ᴹ − N₁ⱽ) / RMS(N₁ⱽ) over the grid, with 0/0 → 0 (the
/// decoupled case, where both curves vanish identically). Normalizing by the
/// unitary curve makes runs at different couplings comparable: the raw
/// excitation amplitude grows steeply toward the stability boundary, which
/// would otherwise swamp the actual kernel discrepancy.
pub fn milburn_vs_vonneumann_distance(params: SystemParams, grid: &TimeGrid) -> Result<f64> {
    let prop = Propagator::new(params)?;
    let diffs = grid
        .times()
        .par_iter()
        .map(|&t| {
            let m = correlation_record(t, &prop.covariance_at(t, Kernel::Milburn)?)?;
            let v = correlation_record(t, &prop.covariance_at(t, Kernel::VonNeumann)?)?;
            Ok((m.n1 - v.n1, v.n1))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = diffs.len() as f64;
    let num = (diffs.iter().map(|(d, _)| d * d).sum::<f64>() / n).sqrt();
    let den = (diffs.iter().map(|(_, v)| v * v).sum::<f64>() / n).sqrt();
    Ok(if den == 0.0 { 0.0 } else { num / den })
}

/// Normalized RMS distance between the N₁(t) and N₂(t) curves of one run:
/// RMS(N₁ − N₂) / (RMS(N₁) + RMS(N₂)), with 0/0 → 0. Zero means the two
/// modes' excitation histories are identical (synchronized).
pub fn sync_diagnostic(result: &RunResult) -> f64 {
    let n = result.records.len() as f64;
    if n == 0.0 {
        return 0.0;
    }
    let mut dd = 0.0;
    let mut n1n1 = 0.0;
    let mut n2n2 = 0.0;
    for r in &result.records {
        dd += (r.n1 - r.n2) * (r.n1 - r.n2);
        n1n1 += r.n1 * r.n1;
        n2n2 += r.n2 * r.n2;
    }
    let den = (n1n1 / n).sqrt() + (n2n2 / n).sqrt();
    if den == 0.0 {
        0.0
    } else {
        (dd / n).sqrt() / den
    }
}

/// Trapezoid-rule time average of a sampled curve over its span.
pub fn time_average(times: &[f64], values: &[f64]) -> f64 {
    assert_eq!(times.len(), values.len(), "mismatched sample lengths");
    if times.len() < 2 {
        return values.first().copied().unwrap_or(0.0);
    }
    let mut integral = 0.0;
    for i in 1..times.len() {
        integral += 0.5 * (values[i] + values[i - 1]) * (times[i] - times[i - 1]);
    }
    let span = times[times.len() - 1] - times[0];
    if span == 0.0 {
        0.0
    } else {
        integral / span
    }
}

/// The named figure-reproduction presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FigurePreset {
    /// Kernel-comparison ladder: both kernels at six couplings approaching
    /// the stability boundary, ω₁ = ω₂ = 1, Γ = 100, t ∈ [0, 50].
    Fig4,
    /// Anisotropy scan: ω₂ ∈ {1, 0.95, 0.7, 0.5, 0.3, 0.21} at ω₁ = 1,
    /// J = 0.2, Γ = 100.
    Anisotropy,
    /// Coupling scan: J ∈ {0.1, 0.23, 0.35, 0.45, 0.49} at ω₁ = 1, ω₂ = 0.5,
    /// Γ = 100.
    Coupling,
}

impl std::str::FromStr for FigurePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig4" => Ok(FigurePreset::Fig4),
            "anisotropy" => Ok(FigurePreset::Anisotropy),
            "coupling" => Ok(FigurePreset::Coupling),
            other => Err(Error::UnknownPreset {
                name: other.to_string(),
            }),
        }
    }
}

impl std::fmt::Display for FigurePreset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FigurePreset::Fig4 => write!(f, "fig4"),
            FigurePreset::Anisotropy => write!(f, "anisotropy"),
            FigurePreset::Coupling => write!(f, "coupling"),
        }
    }
}

/// One run configuration inside a figure preset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureConfig {
    /// Short distinguishing label, usable as a file-name stem.
    pub label: String,
    pub params: SystemParams,
    pub grid: TimeGrid,
    pub kernel: Kernel,
}

/// The run configurations of a named preset.
///
/// The `fig4` coupling ladder {0.2, 0.4, 0.6, 0.8, 0.9, 0.99}·ω₁ω₂ is a
/// representative approach to the stability boundary rather than an exact
/// published list.
pub fn figure_preset(preset: FigurePreset) -> Vec<FigureConfig> {
    let cfg = |label: String, params: SystemParams, grid: TimeGrid, kernel: Kernel| FigureConfig {
        label,
        params,
        grid,
        kernel,
    };
    match preset {
        FigurePreset::Fig4 => {
            let grid = TimeGrid::from_duration(50.0, DEFAULT_STEPS).expect("static grid");
            [0.2, 0.4, 0.6, 0.8, 0.9, 0.99]
                .iter()
                .flat_map(|&j| {
                    [Kernel::Milburn, Kernel::VonNeumann].into_iter().map(move |k| (j, k))
                })
                .map(|(j, kernel)| {
                    let params = SystemParams::new(1.0, 1.0, j, 100.0).expect("static preset");
                    cfg(format!("J{j}-{kernel}"), params, grid, kernel)
                })
                .collect()
        }
        FigurePreset::Anisotropy => [1.0, 0.95, 0.7, 0.5, 0.3, 0.21]
            .iter()
            .map(|&w2| {
                let params = SystemParams::new(1.0, w2, 0.2, 100.0).expect("static preset");
                cfg(format!("omega2-{w2}"), params, TimeGrid::default_grid(), Kernel::Milburn)
            })
            .collect(),
        FigurePreset::Coupling => [0.1, 0.23, 0.35, 0.45, 0.49]
            .iter()
            .map(|&j| {
                let params = SystemParams::new(1.0, 0.5, j, 100.0).expect("static preset");
                cfg(format!("J{j}"), params, TimeGrid::default_grid(), Kernel::Milburn)
            })
            .collect(),
    }
}
