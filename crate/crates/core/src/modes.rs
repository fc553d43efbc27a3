//! System parameters and the normal-mode reduction.
//!
//! Two harmonic oscillators with bare frequencies ω₁ ≥ ω₂ and bilinear
//! position coupling −J x₁x₂ decouple into normal modes with frequencies
//! Ω₁ ≥ ω₁ and Ω₂ ≤ ω₂. The reduction is parametrised by the frequency ratio
//! R = √(ω₁/ω₂), the reduced coupling g = J/ω₂², a mixing angle θ, and one
//! single-mode squeezing parameter sⱼ = ½ ln(Ωⱼ/ωⱼ) per mode. The coupled
//! system is stable only while J < ω₁ω₂; at the boundary the lower normal
//! frequency hits zero.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for the internal trace/determinant cross-checks in
/// [`derive_modes`].
const IDENTITY_RTOL: f64 = 1e-12;

/// Bare parameters of the coupled pair: frequencies, coupling, and the
/// intrinsic-decoherence rate Γ.
///
/// Constructed through [`SystemParams::new`], which enforces ω₁ ≥ ω₂ > 0,
/// J ≥ 0, Γ > 0 and finiteness. Stability (J < ω₁ω₂) is deliberately *not*
/// enforced here so that sweeps can probe the boundary; it is detected by
/// [`normal_frequencies`] and reported as [`Error::Instability`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Bare frequency of the first oscillator (the stiffer one), ω₁.
    pub omega1: f64,
    /// Bare frequency of the second oscillator, ω₂.
    pub omega2: f64,
    /// Position-position coupling strength J.
    pub coupling: f64,
    /// Intrinsic-decoherence rate Γ. The ordinary unitary dynamics is the
    /// Γ → ∞ limit.
    pub gamma: f64,
}

impl SystemParams {
    /// Validates and builds a parameter set.
    pub fn new(omega1: f64, omega2: f64, coupling: f64, gamma: f64) -> Result<Self> {
        let check = |name: &'static str, value: f64, ok: bool, constraint: &'static str| {
            if value.is_finite() && ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    value,
                    constraint,
                })
            }
        };
        check("omega2", omega2, omega2 > 0.0, "omega2 > 0")?;
        check("omega1", omega1, omega1 >= omega2, "omega1 >= omega2 > 0")?;
        check("coupling", coupling, coupling >= 0.0, "J >= 0")?;
        check("gamma", gamma, gamma > 0.0, "Gamma > 0")?;
        Ok(SystemParams {
            omega1,
            omega2,
            coupling,
            gamma,
        })
    }

    /// The stability bound ω₁ω₂; the dynamics is bounded only for J below it.
    pub fn stability_bound(&self) -> f64 {
        self.omega1 * self.omega2
    }

    /// Whether the coupling is strictly inside the stability region.
    pub fn is_stable(&self) -> bool {
        self.coupling < self.stability_bound()
    }

    /// Frequency ratio R = √(ω₁/ω₂) ≥ 1.
    pub fn frequency_ratio(&self) -> f64 {
        (self.omega1 / self.omega2).sqrt()
    }

    /// Reduced coupling g = J/ω₂².
    pub fn reduced_coupling(&self) -> f64 {
        self.coupling / (self.omega2 * self.omega2)
    }
}

/// Output of the normal-mode reduction for one parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalModes {
    /// Frequency ratio R = √(ω₁/ω₂).
    pub r: f64,
    /// Reduced coupling g = J/ω₂².
    pub g: f64,
    /// Mixing angle θ ∈ [0, π/4] that diagonalises the potential.
    pub theta: f64,
    /// Upper normal frequency Ω₁ (reduces to ω₁ at J = 0).
    pub omega_n1: f64,
    /// Lower normal frequency Ω₂ (reduces to ω₂ at J = 0).
    pub omega_n2: f64,
    /// Squeezing parameter s₁ = ½ ln(Ω₁/ω₁) ≥ 0.
    pub s1: f64,
    /// Squeezing parameter s₂ = ½ ln(Ω₂/ω₂) ≤ 0.
    pub s2: f64,
}

impl NormalModes {
    /// Phase rates ν = (−Ω₁, +Ω₁, −Ω₂, +Ω₂) of the normal-mode frame in the
    /// basis (a, a†, b, b†).
    pub fn phase_rates(&self) -> [f64; 4] {
        [-self.omega_n1, self.omega_n1, -self.omega_n2, self.omega_n2]
    }
}

/// Mixing angle θ = ½ arctan(2g / (R⁴ − 1)), taken on the branch θ ∈ [0, π/4].
///
/// `atan2` keeps the resonant limit well-defined: at R = 1 with g > 0 the
/// angle is exactly π/4, and g = 0 gives θ = 0 for every R.
pub fn rotation_angle(r: f64, g: f64) -> f64 {
    if g == 0.0 {
        return 0.0;
    }
    0.5 * (2.0 * g).atan2(r.powi(4) - 1.0)
}

/// Normal frequencies (Ω₁, Ω₂) of the coupled pair.
///
/// Evaluates the closed-form expressions in terms of R and g:
///
/// Ω₁² = ω₁² [ (1 + R⁻⁴)/2 + ½ √((1 − R⁻⁴)² + 4 g² R⁻⁸) ]
/// Ω₂² = ω₂² [ (1 + R⁴)/2 − ½ √((1 − R⁴)² + 4 g²) ]
///
/// These are the eigenvalues of the 2×2 potential matrix
/// [[ω₁², −J], [−J, ω₂²]]. Returns [`Error::Instability`] when Ω₂² ≤ 0,
/// i.e. when J ≥ ω₁ω₂.
pub fn normal_frequencies(params: &SystemParams) -> Result<(f64, f64)> {
    // The exact algebraic criterion; the Ω₂² ≤ 0 test below would miss the
    // boundary itself when rounding in R⁴ nudges Ω₂² to ±1e−16.
    if params.coupling >= params.stability_bound() {
        return Err(Error::Instability {
            coupling: params.coupling,
            bound: params.stability_bound(),
        });
    }
    let r = params.frequency_ratio();
    let g = params.reduced_coupling();
    let r4 = r.powi(4);
    let r4_inv = 1.0 / r4;

    let w1_sq = params.omega1 * params.omega1;
    let w2_sq = params.omega2 * params.omega2;

    let omega1_n_sq = w1_sq
        * (0.5 * (1.0 + r4_inv)
            + 0.5 * ((1.0 - r4_inv).powi(2) + 4.0 * g * g * r4_inv * r4_inv).sqrt());
    let omega2_n_sq =
        w2_sq * (0.5 * (1.0 + r4) - 0.5 * ((1.0 - r4).powi(2) + 4.0 * g * g).sqrt());

    if omega2_n_sq <= 0.0 {
        return Err(Error::Instability {
            coupling: params.coupling,
            bound: params.stability_bound(),
        });
    }
    Ok((omega1_n_sq.sqrt(), omega2_n_sq.sqrt()))
}

/// Full normal-mode reduction: ratio, reduced coupling, mixing angle, normal
/// frequencies, squeezing parameters.
///
/// Cross-checks the frequency sum and product identities
/// Ω₁² + Ω₂² = ω₁² + ω₂² and Ω₁²Ω₂² = ω₁²ω₂² − J², which the closed forms
/// satisfy algebraically; a violation indicates numeric trouble and is
/// reported as [`Error::Domain`].
pub fn derive_modes(params: &SystemParams) -> Result<NormalModes> {
    let r = params.frequency_ratio();
    let g = params.reduced_coupling();
    let theta = rotation_angle(r, g);
    let (omega_n1, omega_n2) = normal_frequencies(params)?;

    let w1_sq = params.omega1 * params.omega1;
    let w2_sq = params.omega2 * params.omega2;
    let sum_residual = (omega_n1 * omega_n1 + omega_n2 * omega_n2 - w1_sq - w2_sq).abs();
    if sum_residual > IDENTITY_RTOL * (w1_sq + w2_sq) {
        return Err(Error::Domain {
            what: "normal-frequency sum identity residual",
            value: sum_residual,
        });
    }
    let product = w1_sq * w2_sq - params.coupling * params.coupling;
    let product_residual = (omega_n1 * omega_n1 * omega_n2 * omega_n2 - product).abs();
    if product_residual > IDENTITY_RTOL * w1_sq * w2_sq {
        return Err(Error::Domain {
            what: "normal-frequency product identity residual",
            value: product_residual,
        });
    }

    Ok(NormalModes {
        r,
        g,
        theta,
        omega_n1,
        omega_n2,
        s1: 0.5 * (omega_n1 / params.omega1).ln(),
        s2: 0.5 * (omega_n2 / params.omega2).ln(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn params(w1: f64, w2: f64, j: f64) -> SystemParams {
        SystemParams::new(w1, w2, j, 100.0).unwrap()
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            SystemParams::new(1.0, 0.0, 0.1, 100.0),
            Err(Error::InvalidParameter { name: "omega2", .. })
        ));
        assert!(matches!(
            SystemParams::new(0.5, 1.0, 0.1, 100.0),
            Err(Error::InvalidParameter { name: "omega1", .. })
        ));
        assert!(matches!(
            SystemParams::new(1.0, 1.0, -0.1, 100.0),
            Err(Error::InvalidParameter { name: "coupling", .. })
        ));
        assert!(matches!(
            SystemParams::new(1.0, 1.0, 0.1, 0.0),
            Err(Error::InvalidParameter { name: "gamma", .. })
        ));
        assert!(SystemParams::new(1.0, 1.0, f64::NAN, 100.0).is_err());
    }

    #[test]
    fn resonant_branch_gives_quarter_pi() {
        assert_abs_diff_eq!(
            rotation_angle(1.0, 0.2),
            std::f64::consts::FRAC_PI_4,
            epsilon = 0.0
        );
    }

    #[test]
    fn zero_coupling_gives_zero_angle() {
        assert_eq!(rotation_angle(1.0, 0.0), 0.0);
        assert_eq!(rotation_angle(1.5, 0.0), 0.0);
    }

    #[test]
    fn detuned_angle_example() {
        // omega1 = 1, omega2 = 0.5: R = sqrt(2), g = 0.8,
        // theta = atan2(1.6, 3)/2.
        let m = derive_modes(&params(1.0, 0.5, 0.2)).unwrap();
        assert_abs_diff_eq!(m.theta, 0.5 * (1.6_f64).atan2(3.0), epsilon = 1e-15);
        assert_abs_diff_eq!(m.theta, 0.244978663126864, epsilon = 1e-12);
    }

    #[test]
    fn resonant_frequencies_and_squeezing() {
        let m = derive_modes(&params(1.0, 1.0, 0.2)).unwrap();
        assert_abs_diff_eq!(m.omega_n1, 1.2_f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(m.omega_n2, 0.8_f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(m.s1, 0.25 * 1.2_f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(m.s2, 0.25 * 0.8_f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(m.s1, 0.045580, epsilon = 5e-7);
        assert_abs_diff_eq!(m.s2, -0.055786, epsilon = 5e-7);
    }

    #[test]
    fn detuned_frequencies_example() {
        let m = derive_modes(&params(1.0, 0.5, 0.2)).unwrap();
        assert_abs_diff_eq!(m.omega_n1, 1.05_f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(m.omega_n2, 0.2_f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn decoupled_pair_is_trivial() {
        let m = derive_modes(&params(1.3, 0.7, 0.0)).unwrap();
        assert_eq!(m.theta, 0.0);
        assert_eq!(m.omega_n1, 1.3);
        assert_eq!(m.omega_n2, 0.7);
        assert_eq!(m.s1, 0.0);
        assert_eq!(m.s2, 0.0);
    }

    #[test]
    fn boundary_coupling_is_unstable() {
        // J = omega1*omega2 exactly.
        let err = derive_modes(&params(1.0, 0.5, 0.5)).unwrap_err();
        assert!(matches!(err, Error::Instability { .. }));
    }

    #[test]
    fn frequencies_match_potential_matrix_eigenvalues() {
        // Independent oracle: eigendecomposition of [[w1^2, -J], [-J, w2^2]].
        let mut rng = StdRng::seed_from_u64(0x5eed_0001);
        for _ in 0..500 {
            let w2: f64 = rng.random_range(0.3..1.0);
            let w1: f64 = rng.random_range(w2..2.0);
            let j: f64 = rng.random_range(0.0..0.9) * w1 * w2;
            let p = params(w1, w2, j);
            let (o1, o2) = normal_frequencies(&p).unwrap();

            let pot = nalgebra::Matrix2::new(w1 * w1, -j, -j, w2 * w2);
            let eig = pot.symmetric_eigenvalues();
            let (hi, lo) = (eig.max(), eig.min());
            let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-300);
            assert!(rel(o1 * o1, hi) < 1e-12, "upper mode off: {} vs {hi}", o1 * o1);
            assert!(rel(o2 * o2, lo) < 1e-11, "lower mode off: {} vs {lo}", o2 * o2);
        }
    }

    #[test]
    fn rotation_angle_diagonalises_the_potential() {
        // R(theta) [[w1^2, -J], [-J, w2^2]] R(theta)^T must be
        // diag(Omega1^2, Omega2^2) with R(theta) = [[c, -s], [s, c]].
        let mut rng = StdRng::seed_from_u64(0x5eed_0002);
        for _ in 0..500 {
            let w2: f64 = rng.random_range(0.3..1.0);
            let w1: f64 = rng.random_range(w2..2.0);
            let j: f64 = rng.random_range(0.0..0.9) * w1 * w2;
            let p = params(w1, w2, j);
            let m = derive_modes(&p).unwrap();

            let rot = nalgebra::Matrix2::new(
                m.theta.cos(),
                -m.theta.sin(),
                m.theta.sin(),
                m.theta.cos(),
            );
            let pot = nalgebra::Matrix2::new(w1 * w1, -j, -j, w2 * w2);
            let d = rot * pot * rot.transpose();
            assert!(d[(0, 1)].abs() < 1e-12 * (w1 * w1));
            assert!(d[(1, 0)].abs() < 1e-12 * (w1 * w1));
            assert_abs_diff_eq!(d[(0, 0)], m.omega_n1 * m.omega_n1, epsilon = 1e-11);
            assert_abs_diff_eq!(d[(1, 1)], m.omega_n2 * m.omega_n2, epsilon = 1e-11);
        }
    }

    #[test]
    fn frequency_identities_hold() {
        let mut rng = StdRng::seed_from_u64(0x5eed_0003);
        for _ in 0..500 {
            let w2: f64 = rng.random_range(0.3..1.0);
            let w1: f64 = rng.random_range(w2..2.0);
            let j: f64 = rng.random_range(0.0..0.95) * w1 * w2;
            let m = derive_modes(&params(w1, w2, j)).unwrap();
            let sum = m.omega_n1 * m.omega_n1 + m.omega_n2 * m.omega_n2;
            let prod = m.omega_n1 * m.omega_n1 * m.omega_n2 * m.omega_n2;
            assert_abs_diff_eq!(sum, w1 * w1 + w2 * w2, epsilon = 1e-12 * sum);
            assert_abs_diff_eq!(
                prod,
                w1 * w1 * w2 * w2 - j * j,
                epsilon = 1e-12 * (w1 * w1 * w2 * w2)
            );
        }
    }

    #[test]
    fn squeezing_signs_bracket_the_bare_frequencies() {
        let m = derive_modes(&params(1.4, 0.6, 0.5)).unwrap();
        assert!(m.omega_n1 > 1.4 && m.omega_n2 < 0.6);
        assert!(m.s1 > 0.0 && m.s2 < 0.0);
    }
}
