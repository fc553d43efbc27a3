//! Scalar figures of merit extracted from a two-mode covariance matrix.
//!
//! All quantities follow the standard Gaussian-state formulas expressed
//! through the determinants of the 2×2 blocks
//!
//! ```text
//! Σ = ⎡ Σ_a   Σ_ab ⎤
//!     ⎣ Σ_ab† Σ_b  ⎦
//! ```
//!
//! * virtual excitations N₁ = (Re Σ₀₀ − 1)/2, N₂ = (Re Σ₂₂ − 1)/2;
//! * logarithmic negativity E_N = max(0, −ln ν̃₋) in nats, where ν̃₋ is the
//!   smaller symplectic eigenvalue of the partial transpose, obtained from
//!   δ = det Σ_a + det Σ_b − 2 det Σ_ab via ν̃²₋ = (δ − √(δ² − 4 det Σ))/2;
//! * Gaussian quadrature steering S_{a→b} = max(0, ½ log₂(det Σ_a / (4 det Σ)))
//!   in bits, S_{b→a} with det Σ_b, and their asymmetry |S_{a→b} − S_{b→a}|;
//! * purity µ = 1/√(det Σ) ∈ (0, 1].
//!
//! Every real quantity is read off through a guard that rejects imaginary
//! residues above tolerance, so silent corruption of the Hermitian structure
//! surfaces as an error instead of a wrong number.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{scalar_decoherence_factor, Kernel};
use crate::matrix::Mat2;
use crate::modes::{derive_modes, SystemParams};
use crate::symplectic::CovarianceMatrix;

/// Largest tolerated imaginary residue on a nominally real quantity,
/// relative to max(1, |Re|).
pub const IMAG_TOL: f64 = 1e-10;
/// Occupations below this are reported as errors; tiny negatives above it
/// are clamped to zero.
pub const OCCUPATION_FLOOR: f64 = -1e-8;
/// Discriminant values in [−1e−10, 0) are treated as round-off and clamped.
pub const DISCRIMINANT_FLOOR: f64 = -1e-10;
/// Squared symplectic eigenvalues in [−1e−8, 0) are clamped; lower is an
/// error.
pub const EIGENVALUE_SQ_FLOOR: f64 = -1e-8;
/// det Σ may undershoot 1 by at most this much before purity is considered
/// broken.
pub const PURITY_DET_FLOOR: f64 = 1.0 - 1e-8;

/// Ground-state populations of the two bare modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VirtualExcitations {
    /// N₁ = (Re Σ₀₀ − 1)/2.
    pub n1: f64,
    /// N₂ = (Re Σ₂₂ − 1)/2.
    pub n2: f64,
}

/// The four block determinants every quantifier is built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockDeterminants {
    /// det Σ_a (first mode).
    pub det_a: f64,
    /// det Σ_b (second mode).
    pub det_b: f64,
    /// det Σ_ab (cross block).
    pub det_ab: f64,
    /// det Σ (full 4×4).
    pub det_full: f64,
}

/// Symplectic eigenvalues of the partially transposed covariance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PptEigenvalues {
    /// Smaller eigenvalue ν̃₋; entanglement iff ν̃₋ < 1.
    pub nu_min: f64,
    /// Larger eigenvalue ν̃₊.
    pub nu_max: f64,
}

/// One-way Gaussian steering in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Steering {
    /// S_{a→b} in bits (clamped at 0).
    pub a_to_b: f64,
    /// S_{b→a} in bits (clamped at 0).
    pub b_to_a: f64,
    /// |S_{a→b} − S_{b→a}|.
    pub asymmetry: f64,
}

/// Every quantifier evaluated at one time, in the shape written to CSV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationRecord {
    pub t: f64,
    pub n1: f64,
    pub n2: f64,
    /// Logarithmic negativity in nats.
    pub e_n: f64,
    /// Steering a→b in bits.
    pub s_ab: f64,
    /// Steering b→a in bits.
    pub s_ba: f64,
    /// Steering asymmetry |s_ab − s_ba|.
    pub d_s: f64,
    pub purity: f64,
    /// ν̃₋ before the entanglement clamp; values ≥ 1 mean a separable state.
    pub nu_min_raw: f64,
}

/// Reads the real part of a nominally real quantity, rejecting imaginary
/// contamination above [`IMAG_TOL`]·max(1, |Re|).
fn guarded_real(z: C64, context: &'static str) -> Result<f64> {
    if z.im.abs() > IMAG_TOL * z.re.abs().max(1.0) {
        return Err(Error::ImaginaryResidue {
            context,
            magnitude: z.im.abs(),
        });
    }
    Ok(z.re)
}

/// Mean occupation of each bare mode relative to its own ground state.
pub fn virtual_excitations(sigma: &CovarianceMatrix) -> Result<VirtualExcitations> {
    let n1 = (guarded_real(sigma.entry(0, 0), "first-mode occupation")? - 1.0) / 2.0;
    let n2 = (guarded_real(sigma.entry(2, 2), "second-mode occupation")? - 1.0) / 2.0;
    if n1 < OCCUPATION_FLOOR || n2 < OCCUPATION_FLOOR {
        return Err(Error::NegativeOccupation { n1, n2 });
    }
    Ok(VirtualExcitations {
        n1: n1.max(0.0),
        n2: n2.max(0.0),
    })
}

/// Determinants of the 2×2 blocks and of the full matrix.
pub fn block_determinants(sigma: &CovarianceMatrix) -> Result<BlockDeterminants> {
    let block = |r0: usize, c0: usize| {
        Mat2::from_rows([
            [sigma.entry(r0, c0), sigma.entry(r0, c0 + 1)],
            [sigma.entry(r0 + 1, c0), sigma.entry(r0 + 1, c0 + 1)],
        ])
    };
    Ok(BlockDeterminants {
        det_a: guarded_real(block(0, 0).det(), "det of first-mode block")?,
        det_b: guarded_real(block(2, 2).det(), "det of second-mode block")?,
        det_ab: guarded_real(block(0, 2).det(), "det of cross block")?,
        det_full: guarded_real(sigma.0.det(), "det of full covariance")?,
    })
}

/// Symplectic eigenvalues of the partial transpose, from the block
/// determinants.
pub fn ppt_symplectic_eigenvalues(dets: &BlockDeterminants) -> Result<PptEigenvalues> {
    let delta = dets.det_a + dets.det_b - 2.0 * dets.det_ab;
    let disc = delta * delta - 4.0 * dets.det_full;
    if disc < DISCRIMINANT_FLOOR {
        return Err(Error::Domain {
            what: "symplectic-eigenvalue discriminant",
            value: disc,
        });
    }
    let root = disc.max(0.0).sqrt();
    let nu_sq = |x: f64| -> Result<f64> {
        if x < EIGENVALUE_SQ_FLOOR {
            return Err(Error::Domain {
                what: "squared symplectic eigenvalue",
                value: x,
            });
        }
        Ok(x.max(0.0))
    };
    let nu_min_sq = nu_sq((delta - root) / 2.0)?;
    let nu_max_sq = nu_sq((delta + root) / 2.0)?;
    if nu_min_sq == 0.0 {
        return Err(Error::Domain {
            what: "minimum PPT symplectic eigenvalue",
            value: 0.0,
        });
    }
    Ok(PptEigenvalues {
        nu_min: nu_min_sq.sqrt(),
        nu_max: nu_max_sq.sqrt(),
    })
}

/// Logarithmic negativity in nats from the smaller PPT eigenvalue.
pub fn log_negativity(nu_min: f64) -> f64 {
    (-nu_min.ln()).max(0.0)
}

/// Two-way Gaussian steering in bits.
pub fn steering(dets: &BlockDeterminants) -> Result<Steering> {
    if dets.det_full <= 0.0 || dets.det_a <= 0.0 || dets.det_b <= 0.0 {
        return Err(Error::Domain {
            what: "block determinant in steering",
            value: dets.det_full.min(dets.det_a).min(dets.det_b),
        });
    }
    let a_to_b = (0.5 * (dets.det_a / (4.0 * dets.det_full)).log2()).max(0.0);
    let b_to_a = (0.5 * (dets.det_b / (4.0 * dets.det_full)).log2()).max(0.0);
    Ok(Steering {
        a_to_b,
        b_to_a,
        asymmetry: (a_to_b - b_to_a).abs(),
    })
}

/// Purity µ = 1/√(det Σ) ∈ (0, 1].
///
/// det Σ below 1 − 1e−8 would give µ > 1 and indicates a broken state;
/// round-off undershoot inside the tolerance is clamped back to µ = 1.
pub fn purity(dets: &BlockDeterminants) -> Result<f64> {
    if dets.det_full < PURITY_DET_FLOOR {
        return Err(Error::Domain {
            what: "det of covariance in purity",
            value: dets.det_full,
        });
    }
    Ok((1.0 / dets.det_full.sqrt()).min(1.0))
}

/// Evaluates every quantifier on one covariance matrix.
pub fn correlation_record(t: f64, sigma: &CovarianceMatrix) -> Result<CorrelationRecord> {
    let exc = virtual_excitations(sigma)?;
    let dets = block_determinants(sigma)?;
    let ppt = ppt_symplectic_eigenvalues(&dets)?;
    let steer = steering(&dets)?;
    Ok(CorrelationRecord {
        t,
        n1: exc.n1,
        n2: exc.n2,
        e_n: log_negativity(ppt.nu_min),
        s_ab: steer.a_to_b,
        s_ba: steer.b_to_a,
        d_s: steer.asymmetry,
        purity: purity(&dets)?,
        nu_min_raw: ppt.nu_min,
    })
}

/// Closed-form Σ(t) for equal bare frequencies, built from four explicit
/// scalar entries instead of the matrix pipeline.
///
/// With chⱼ = cosh sⱼ, shⱼ = sinh sⱼ and Xⱼ± the scalar decoherence factor
/// at phase-rate difference ±2Ωⱼ,
///
/// ```text
/// σ₁₁ = 1 + ch₁²sh₁²(2 − X₁⁺ − X₁⁻) + ch₂²sh₂²(2 − X₂⁺ − X₂⁻)
/// σ₁₂ = Σⱼ [chⱼ³shⱼ(−2 + Xⱼ⁺ + Xⱼ⁻) + chⱼshⱼ(1 − Xⱼ⁺)]
/// σ₁₃ = ch₂²sh₂²(2 − X₂⁺ − X₂⁻) − ch₁²sh₁²(2 − X₁⁺ − X₁⁻)
/// σ₂₃ = ch₁³sh₁(2 − X₁⁺ − X₁⁻) − ch₂³sh₂(2 − X₂⁺ − X₂⁻)
///       − ch₁sh₁(1 − X₁⁻) + ch₂sh₂(1 − X₂⁻)
/// ```
///
/// and the full matrix follows from Hermiticity plus the exchange symmetry
/// of the two equal-frequency modes:
///
/// ```text
///     ⎡ σ₁₁  σ₁₂  σ₁₃  σ̄₂₃ ⎤
/// Σ = ⎢ σ̄₁₂  σ₁₁  σ₂₃  σ₁₃ ⎥
///     ⎢ σ₁₃  σ̄₂₃  σ₁₁  σ₁₂ ⎥
///     ⎣ σ₂₃  σ₁₃  σ̄₁₂  σ₁₁ ⎦
/// ```
///
/// Used as an algebraically independent cross-check of the conjugation
/// pipeline at the resonant point; rejects ω₁ ≠ ω₂.
pub fn isotropic_closed_form(
    params: SystemParams,
    t: f64,
    kernel: Kernel,
) -> Result<CovarianceMatrix> {
    if params.omega1 != params.omega2 {
        return Err(Error::InvalidParameter {
            name: "omega2",
            value: params.omega2,
            constraint: "equal bare frequencies required by the closed form",
        });
    }
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidParameter {
            name: "t",
            value: t,
            constraint: "finite and >= 0",
        });
    }
    let modes = derive_modes(&params)?;
    let (ch1, sh1) = (modes.s1.cosh(), modes.s1.sinh());
    let (ch2, sh2) = (modes.s2.cosh(), modes.s2.sinh());
    let x = |delta: f64| scalar_decoherence_factor(delta, params.gamma, t, kernel);
    let (x1p, x1m) = (x(2.0 * modes.omega_n1), x(-2.0 * modes.omega_n1));
    let (x2p, x2m) = (x(2.0 * modes.omega_n2), x(-2.0 * modes.omega_n2));

    let two = C64::new(2.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let loss1 = two - x1p - x1m; // 2 − X₁⁺ − X₁⁻, real and ≥ 0
    let loss2 = two - x2p - x2m;

    let q1 = ch1 * ch1 * sh1 * sh1;
    let q2 = ch2 * ch2 * sh2 * sh2;
    let s11 = one + loss1.scale_re(q1) + loss2.scale_re(q2);
    let s12 = (-loss1).scale_re(ch1.powi(3) * sh1) + (-loss2).scale_re(ch2.powi(3) * sh2)
        + (one - x1p).scale_re(ch1 * sh1)
        + (one - x2p).scale_re(ch2 * sh2);
    let s13 = loss2.scale_re(q2) - loss1.scale_re(q1);
    let s23 = loss1.scale_re(ch1.powi(3) * sh1) - loss2.scale_re(ch2.powi(3) * sh2)
        - (one - x1m).scale_re(ch1 * sh1)
        + (one - x2m).scale_re(ch2 * sh2);

    let s11 = C64::new(guarded_real(s11, "closed-form diagonal entry")?, 0.0);
    let s13 = C64::new(guarded_real(s13, "closed-form cross entry")?, 0.0);
    Ok(CovarianceMatrix(crate::matrix::Mat4::from_rows([
        [s11, s12, s13, s23.conj()],
        [s12.conj(), s11, s23, s13],
        [s13, s23.conj(), s11, s12],
        [s23, s13, s12.conj(), s11],
    ])))
}

/// Scales a complex number by a real factor. Small local helper so the
/// closed form above reads like the formulas it implements.
trait ScaleRe {
    fn scale_re(self, f: f64) -> C64;
}

impl ScaleRe for C64 {
    fn scale_re(self, f: f64) -> C64 {
        C64::new(self.re * f, self.im * f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::Propagator;
    use crate::matrix::Mat4;
    use crate::symplectic::SymplecticMatrix;
    use approx::assert_abs_diff_eq;

    fn params(w1: f64, w2: f64, j: f64, gamma: f64) -> SystemParams {
        SystemParams::new(w1, w2, j, gamma).unwrap()
    }

    /// Two-mode squeezed vacuum with parameter r, built directly in the
    /// ladder basis: a → a cosh r − b† sinh r.
    fn two_mode_squeezed(r: f64) -> CovarianceMatrix {
        let (ch, sh) = (r.cosh(), r.sinh());
        let s = SymplecticMatrix(Mat4::from_real_rows([
            [ch, 0.0, 0.0, -sh],
            [0.0, ch, -sh, 0.0],
            [0.0, -sh, ch, 0.0],
            [-sh, 0.0, 0.0, ch],
        ]));
        assert!(s.is_symplectic(1e-12));
        s.conjugate(&CovarianceMatrix::vacuum())
    }

    #[test]
    fn vacuum_quantifiers_are_trivial() {
        let rec = correlation_record(0.0, &CovarianceMatrix::vacuum()).unwrap();
        assert_eq!(rec.n1, 0.0);
        assert_eq!(rec.n2, 0.0);
        assert_eq!(rec.e_n, 0.0);
        assert_eq!(rec.s_ab, 0.0);
        assert_eq!(rec.s_ba, 0.0);
        assert_eq!(rec.d_s, 0.0);
        assert_eq!(rec.purity, 1.0);
        assert_eq!(rec.nu_min_raw, 1.0);
    }

    #[test]
    fn two_mode_squeezed_state_matches_analytic_values() {
        // Closed-form targets: N₁ = N₂ = sinh²r, ν̃₋ = e^{−2r}, E_N = 2r,
        // purity 1, S_{a→b} = S_{b→a} = max(0, ½log₂(cosh²2r / 4)).
        for r in [0.3, 1.0, 1.6] {
            let sigma = two_mode_squeezed(r);
            let rec = correlation_record(0.0, &sigma).unwrap();
            let sh2 = r.sinh() * r.sinh();
            assert_abs_diff_eq!(rec.n1, sh2, epsilon = 1e-12 * (1.0 + sh2));
            assert_abs_diff_eq!(rec.n2, sh2, epsilon = 1e-12 * (1.0 + sh2));
            // The ν̃₋ cancellation in (δ − √(δ²−4))/2 costs ~δ²·ulp of
            // absolute accuracy, noticeable at the strongest squeezing.
            assert_abs_diff_eq!(rec.nu_min_raw, (-2.0 * r).exp(), epsilon = 1e-11);
            assert_abs_diff_eq!(rec.e_n, 2.0 * r, epsilon = 1e-9);
            assert_abs_diff_eq!(rec.purity, 1.0, epsilon = 1e-9);
            let c2 = (2.0 * r).cosh();
            let expect = (0.5 * (c2 * c2 / 4.0).log2()).max(0.0);
            assert_abs_diff_eq!(rec.s_ab, expect, epsilon = 1e-10);
            assert_abs_diff_eq!(rec.s_ba, expect, epsilon = 1e-10);
            assert!(rec.d_s < 1e-12);
        }
    }

    #[test]
    fn weakly_squeezed_state_is_entangled_but_not_steerable() {
        // Below r = ½·acosh 2 ≈ 0.66 the steering clamp engages while the
        // negativity is already positive: entanglement without steering.
        let rec = correlation_record(0.0, &two_mode_squeezed(0.3)).unwrap();
        assert!(rec.e_n > 0.1);
        assert_eq!(rec.s_ab, 0.0);
        assert_eq!(rec.s_ba, 0.0);
    }

    #[test]
    fn imaginary_contamination_is_rejected() {
        let mut m = Mat4::IDENTITY;
        m[(0, 0)] = C64::new(1.0, 1e-6);
        let err = virtual_excitations(&CovarianceMatrix(m)).unwrap_err();
        assert!(matches!(err, Error::ImaginaryResidue { .. }));
    }

    #[test]
    fn negative_occupation_is_rejected() {
        let mut m = Mat4::IDENTITY;
        m[(0, 0)] = C64::new(0.999, 0.0);
        let err = virtual_excitations(&CovarianceMatrix(m)).unwrap_err();
        assert!(matches!(err, Error::NegativeOccupation { .. }));
    }

    #[test]
    fn tiny_negative_occupation_is_clamped() {
        let mut m = Mat4::IDENTITY;
        m[(0, 0)] = C64::new(1.0 - 1e-12, 0.0);
        let exc = virtual_excitations(&CovarianceMatrix(m)).unwrap();
        assert_eq!(exc.n1, 0.0);
    }

    #[test]
    fn super_unit_purity_is_rejected() {
        // det = (1/2)⁴ < 1 would give purity 4.
        let m = Mat4::IDENTITY.scale(0.5);
        let dets = block_determinants(&CovarianceMatrix(m)).unwrap();
        assert!(matches!(purity(&dets), Err(Error::Domain { .. })));
    }

    #[test]
    fn closed_form_requires_equal_frequencies() {
        let err =
            isotropic_closed_form(params(1.0, 0.5, 0.2, 100.0), 1.0, Kernel::Milburn).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { name: "omega2", .. }));
    }

    #[test]
    fn closed_form_at_time_zero_is_the_identity() {
        let sigma =
            isotropic_closed_form(params(1.0, 1.0, 0.2, 100.0), 0.0, Kernel::Milburn).unwrap();
        assert!(sigma.0.max_abs_diff(&Mat4::IDENTITY) < 1e-15);
    }

    #[test]
    fn closed_form_matches_the_pipeline() {
        for kernel in [Kernel::Milburn, Kernel::VonNeumann] {
            for (j, t) in [(0.1, 0.7), (0.2, 2.0), (0.5, 13.0), (0.9, 31.0)] {
                let p = params(1.0, 1.0, j, 100.0);
                let pipeline = Propagator::new(p).unwrap().covariance_at(t, kernel).unwrap();
                let closed = isotropic_closed_form(p, t, kernel).unwrap();
                let diff = pipeline.0.max_abs_diff(&closed.0);
                assert!(diff < 1e-10, "closed-form gap {diff} at J={j}, t={t}, {kernel}");
            }
        }
    }

    #[test]
    fn evolved_state_satisfies_the_correlation_hierarchy() {
        // Steering in either direction implies entanglement.
        let prop = Propagator::new(params(1.0, 0.5, 0.45, 100.0)).unwrap();
        let mut steered = 0;
        for i in 0..200 {
            let t = i as f64 * 0.5;
            let sigma = prop.covariance_at(t, Kernel::Milburn).unwrap();
            let rec = correlation_record(t, &sigma).unwrap();
            if rec.s_ab.max(rec.s_ba) > 1e-12 {
                steered += 1;
                assert!(
                    rec.e_n > 1e-12,
                    "steering {} without negativity at t={t}",
                    rec.s_ab.max(rec.s_ba)
                );
            }
        }
        assert!(steered > 0, "test never exercised a steerable state");
    }

    #[test]
    fn milburn_purity_decays_from_one() {
        let prop = Propagator::new(params(1.0, 1.0, 0.2, 100.0)).unwrap();
        let early = correlation_record(0.0, &prop.covariance_at(0.0, Kernel::Milburn).unwrap())
            .unwrap()
            .purity;
        let later = correlation_record(5.0, &prop.covariance_at(5.0, Kernel::Milburn).unwrap())
            .unwrap()
            .purity;
        assert_eq!(early, 1.0);
        assert!(later < 1.0);
    }

    #[test]
    fn unitary_purity_stays_one() {
        let prop = Propagator::new(params(1.0, 0.5, 0.3, 100.0)).unwrap();
        for t in [0.5, 4.0, 33.0] {
            let sigma = prop.covariance_at(t, Kernel::VonNeumann).unwrap();
            let rec = correlation_record(t, &sigma).unwrap();
            assert_abs_diff_eq!(rec.purity, 1.0, epsilon = 1e-9);
        }
    }
}
