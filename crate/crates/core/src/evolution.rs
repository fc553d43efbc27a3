//! Exact covariance evolution under intrinsic decoherence.
//!
//! In Milburn's model the density operator evolves as
//! ρ(t) = e^{−Γt} Σₖ (Γt)ᵏ/k! · e^{−ikH/Γ} ρ(0) e^{ikH/Γ},
//! a Poisson mixture of unitary evolutions in steps of 1/Γ; ordinary unitary
//! (von Neumann) dynamics is the Γ → ∞ limit. For a quadratic Hamiltonian the
//! mixture resums in closed form at the level of second moments: writing U
//! for the frame that maps normal-mode ladder operators back to the bare ones
//! and V = U⁻¹, the covariance matrix obeys
//!
//! Σ(t) = U · (M ⊙ E(t)) · U†,  M = V Σ(0) V†,
//!
//! where ⊙ is the entrywise product and E(t) carries one scalar decoherence
//! factor per pair of normal-mode phase rates ν = (−Ω₁, +Ω₁, −Ω₂, +Ω₂):
//!
//! E_ij = exp[Γt (e^{i(ν_i−ν_j)/Γ} − 1)]   (Milburn)
//! E_ij = exp[i (ν_i−ν_j) t]               (unitary limit)
//!
//! Off-diagonal factors have |E_ij| < 1 generically, so coherences between
//! normal modes of different frequency decay at rates set by Γ while the
//! populations (ν_i = ν_j) are untouched.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Mat4;
use crate::modes::{derive_modes, NormalModes, SystemParams};
use crate::symplectic::{CovarianceMatrix, SymplecticMatrix};

/// Relative slack for deciding that a phase-rate difference aliases to a
/// multiple of 2πΓ (see [`resonance_edge_case`]).
const RESONANCE_RTOL: f64 = 1e-9;

/// Largest Γ·t the term-by-term series oracle will attempt; the term count
/// grows linearly with Γ·t, so beyond this the check stops being a quick
/// cross-validation (≈10⁷ terms ≲ 1 s) and the resummed kernel is the only
/// sensible evaluator.
pub const SERIES_LAMBDA_CAP: f64 = 1e7;

/// Which decoherence kernel to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kernel {
    /// Intrinsic decoherence at rate Γ.
    Milburn,
    /// Ordinary unitary dynamics (the Γ → ∞ limit).
    VonNeumann,
}

impl std::fmt::Display for Kernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kernel::Milburn => write!(f, "milburn"),
            Kernel::VonNeumann => write!(f, "von-neumann"),
        }
    }
}

/// The pair of inverse frames connecting bare and normal-mode ladder
/// operators.
///
/// `forward` (U) maps normal-mode operators to bare ones; `inverse` (V = U⁻¹)
/// the other way. Concretely U = S_R(θ, R) · S_S(−s₁, −s₂) and
/// V = S_S(s₁, s₂) · S_R(−θ, R): undoing the squeeze with the opposite sign
/// *after* the mixing rotation is what makes V diagonalise the Hamiltonian.
#[derive(Debug, Clone, Copy)]
pub struct ConjugationFrames {
    /// U: normal-mode frame → bare frame.
    pub forward: SymplecticMatrix,
    /// V = U⁻¹: bare frame → normal-mode frame.
    pub inverse: SymplecticMatrix,
    /// Normal-mode phase rates ν = (−Ω₁, +Ω₁, −Ω₂, +Ω₂).
    pub phase_rates: [f64; 4],
}

/// Builds the forward/inverse frame pair for a normal-mode reduction.
pub fn conjugation_frames(modes: &NormalModes) -> ConjugationFrames {
    let forward = SymplecticMatrix::rotation(modes.theta, modes.r)
        .compose(&SymplecticMatrix::squeeze(-modes.s1, -modes.s2));
    let inverse = SymplecticMatrix::squeeze(modes.s1, modes.s2)
        .compose(&SymplecticMatrix::rotation(-modes.theta, modes.r));
    ConjugationFrames {
        forward,
        inverse,
        phase_rates: modes.phase_rates(),
    }
}

/// The scalar decoherence factor for one phase-rate difference Δ.
///
/// Milburn: exp[Γt(e^{iΔ/Γ} − 1)], evaluated as
/// Γt(e^{iφ} − 1) = Γt(−2 sin²(φ/2) + i sin φ) with φ = Δ/Γ, which stays
/// accurate for huge Γ (φ → 0), where the naive cos φ − 1 cancels
/// catastrophically. Unitary: e^{iΔt}. Δ = 0 gives exactly 1 for both.
pub fn scalar_decoherence_factor(delta: f64, gamma: f64, t: f64, kernel: Kernel) -> C64 {
    if delta == 0.0 || t == 0.0 {
        return C64::new(1.0, 0.0);
    }
    match kernel {
        Kernel::Milburn => {
            let phi = delta / gamma;
            let half = (0.5 * phi).sin();
            C64::new(-2.0 * gamma * t * half * half, gamma * t * phi.sin()).exp()
        }
        Kernel::VonNeumann => C64::from_polar(1.0, delta * t),
    }
}

/// The 4×4 matrix of scalar decoherence factors E(t) for the given phase
/// rates. The diagonal is exactly 1 (populations never decay).
pub fn decoherence_factor_matrix(phase_rates: &[f64; 4], gamma: f64, t: f64, kernel: Kernel) -> Mat4 {
    let mut e = Mat4::ZERO;
    for i in 0..4 {
        for j in 0..4 {
            e[(i, j)] = if i == j {
                C64::new(1.0, 0.0)
            } else {
                scalar_decoherence_factor(phase_rates[i] - phase_rates[j], gamma, t, kernel)
            };
        }
    }
    e
}

/// True when some pairwise phase-rate difference is an integer multiple of
/// 2πΓ.
///
/// At such points the Milburn factor for that pair equals 1 for all t even
/// though the unitary factor keeps oscillating: the Poisson step 1/Γ aliases
/// the oscillation exactly. The equality is detected to a relative slack of
/// about 1e−9 and includes the degenerate case ν_i = ν_j (equal normal
/// frequencies).
pub fn resonance_edge_case(phase_rates: &[f64; 4], gamma: f64) -> bool {
    for i in 0..4 {
        for j in (i + 1)..4 {
            let x = (phase_rates[i] - phase_rates[j]) / (2.0 * std::f64::consts::PI * gamma);
            if (x - x.round()).abs() <= RESONANCE_RTOL * x.abs().max(1.0) {
                return true;
            }
        }
    }
    false
}

/// Prepared evolution for one parameter set and initial state.
///
/// Construction performs the normal-mode reduction and the two frame
/// conjugations once; [`Propagator::covariance_at`] then costs two 4×4
/// products per requested time.
#[derive(Debug, Clone)]
pub struct Propagator {
    params: SystemParams,
    modes: NormalModes,
    frames: ConjugationFrames,
    initial: CovarianceMatrix,
    /// M = V Σ(0) V†, fixed for all times.
    mixed_initial: Mat4,
}

impl Propagator {
    /// Evolution of the joint vacuum, Σ(0) = I.
    pub fn new(params: SystemParams) -> Result<Self> {
        Self::with_initial(params, CovarianceMatrix::vacuum())
    }

    /// Evolution of an arbitrary Hermitian initial covariance.
    pub fn with_initial(params: SystemParams, initial: CovarianceMatrix) -> Result<Self> {
        let modes = derive_modes(&params)?;
        let frames = conjugation_frames(&modes);
        let mixed_initial = frames.inverse.conjugate(&initial).0;
        Ok(Propagator {
            params,
            modes,
            frames,
            initial,
            mixed_initial,
        })
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn modes(&self) -> &NormalModes {
        &self.modes
    }

    pub fn frames(&self) -> &ConjugationFrames {
        &self.frames
    }

    /// Whether these parameters sit on a Milburn aliasing point (see
    /// [`resonance_edge_case`]).
    pub fn resonance_edge_case(&self) -> bool {
        resonance_edge_case(&self.frames.phase_rates, self.params.gamma)
    }

    /// Σ(t) under the chosen kernel.
    ///
    /// t = 0 returns the initial covariance bitwise: the factor matrix is
    /// all ones there and the two frame conjugations cancel exactly, so
    /// skipping them avoids introducing round-off into the identity.
    pub fn covariance_at(&self, t: f64, kernel: Kernel) -> Result<CovarianceMatrix> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::InvalidParameter {
                name: "t",
                value: t,
                constraint: "finite and >= 0",
            });
        }
        if t == 0.0 {
            return Ok(self.initial);
        }
        let e = decoherence_factor_matrix(&self.frames.phase_rates, self.params.gamma, t, kernel);
        let damped = self.mixed_initial.hadamard(&e);
        Ok(CovarianceMatrix(
            self.frames.forward.conjugate_raw(&damped).hermitize(),
        ))
    }
}

/// Σ(t) of the vacuum under intrinsic decoherence.
pub fn milburn_covariance(params: SystemParams, t: f64) -> Result<CovarianceMatrix> {
    Propagator::new(params)?.covariance_at(t, Kernel::Milburn)
}

/// Σ(t) of the vacuum under ordinary unitary dynamics.
pub fn von_neumann_covariance(params: SystemParams, t: f64) -> Result<CovarianceMatrix> {
    Propagator::new(params)?.covariance_at(t, Kernel::VonNeumann)
}

/// Independent slow oracle: sums the Poisson mixture term by term instead of
/// resumming it.
///
/// Evaluates Σ(t) = Σₖ wₖ Hₖ Σ(0) Hₖ† with Hₖ = U · P(k/Γ) · V, where P(τ)
/// is the free normal-mode phase frame and wₖ the Poisson(Γt) weights,
/// accumulated in log space. Terms are added until the cumulative weight
/// reaches 1 − `eps` (a hard cap of λ + 12√(λ+1) + 25 terms guards the tail
/// bound; falling short of the target mass is reported as an error rather
/// than silently truncating). The partial sum is renormalised by the
/// accumulated mass, so the returned mixture is exactly convex and the
/// common-mode rounding drift of the weight recurrence cancels. This shares
/// no code path with the closed-form kernel beyond the frame constructors,
/// which is what makes it useful as a cross-check.
///
/// λ = Γt above `SERIES_LAMBDA_CAP` is rejected: the term count grows
/// linearly with λ and the resummed kernel exists precisely to avoid that.
pub fn series_oracle_covariance(params: SystemParams, t: f64, eps: f64) -> Result<CovarianceMatrix> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidParameter {
            name: "t",
            value: t,
            constraint: "finite and >= 0",
        });
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter {
            name: "eps",
            value: eps,
            constraint: "0 < eps < 1",
        });
    }
    let modes = derive_modes(&params)?;
    let frames = conjugation_frames(&modes);
    let initial = CovarianceMatrix::vacuum();

    let lambda = params.gamma * t;
    if lambda > SERIES_LAMBDA_CAP {
        return Err(Error::Domain {
            what: "Poisson series term count Γ·t (use the resummed kernel instead)",
            value: lambda,
        });
    }
    let k_max = (lambda + 12.0 * (lambda + 1.0).sqrt() + 25.0).ceil() as u64;

    let mut accum = Mat4::ZERO;
    let mut log_weight = -lambda; // ln w₀
    // The mass counter decides both the early exit and the completeness check
    // below, so it is Kahan-compensated: near Γt ~ 10⁴ a plain sum over the
    // thousands of surviving weights drifts by about the same 10⁻¹² that
    // `eps` typically asks for.
    let mut cumulative = 0.0;
    let mut compensation = 0.0;
    let log_lambda = lambda.ln(); // −∞ for λ = 0; weights after k = 0 vanish
    for k in 0..=k_max {
        let weight = log_weight.exp();
        if weight > 0.0 {
            let step = SymplecticMatrix::phase(modes.omega_n1, modes.omega_n2, k as f64 / params.gamma);
            let h = frames.forward.compose(&step).compose(&frames.inverse);
            accum = accum + h.conjugate_raw(&initial.0).scale(weight);
            let adjusted = weight - compensation;
            let next = cumulative + adjusted;
            compensation = (next - cumulative) - adjusted;
            cumulative = next;
        }
        if cumulative >= 1.0 - eps {
            break;
        }
        log_weight += log_lambda - ((k + 1) as f64).ln();
    }
    // The recurrence for ln wₖ walks through magnitudes up to λ, so the
    // realised weights carry a common random rounding drift of order
    // √k·λ·ulp — a few 10⁻¹² at the λ cap. That drift is indistinguishable
    // from missing tail mass, hence the explicit allowance on top of `eps`;
    // genuine truncation by the term cap loses mass orders of magnitude
    // faster than this.
    const MASS_DRIFT_ALLOWANCE: f64 = 1e-9;
    if cumulative < 1.0 - eps - MASS_DRIFT_ALLOWANCE {
        return Err(Error::Domain {
            what: "Poisson series mass after the term cap",
            value: cumulative,
        });
    }
    Ok(CovarianceMatrix(accum.scale(1.0 / cumulative).hermitize()))
}
