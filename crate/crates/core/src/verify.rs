//! Built-in self-check suites behind the CLI `verify` subcommand.
//!
//! Three independent oracles exercise the numerical core with seeded
//! randomness (ChaCha8, fixed seed by default, so failures reproduce):
//!
//! * symplectic structure of every frame constructor,
//! * the resonant closed-form covariance against the general pipeline,
//! * the term-by-term Poisson series against the resummed kernel.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::evolution::{milburn_covariance, series_oracle_covariance, Kernel};
use crate::matrix::Mat4;
use crate::modes::SystemParams;
use crate::quantifiers::isotropic_closed_form;
use crate::symplectic::SymplecticMatrix;

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Worst observed value and where it occurred.
    pub detail: String,
}

impl Check {
    fn bounded(name: &str, worst: f64, bound: f64, at: &str) -> Self {
        Check {
            name: name.to_string(),
            passed: worst <= bound,
            detail: format!("worst {worst:.3e} (bound {bound:.0e}) at {at}"),
        }
    }
}

/// Draws a random stable parameter set away from the stability boundary.
fn random_params<R: Rng>(rng: &mut R) -> SystemParams {
    let omega2 = rng.random_range(0.3..1.0);
    let omega1 = rng.random_range(omega2..2.0);
    let coupling = rng.random_range(0.0..0.9) * omega1 * omega2;
    let gamma = 10f64.powf(rng.random_range(0.0..3.0));
    SystemParams::new(omega1, omega2, coupling, gamma).expect("sampled in the valid region")
}

/// Symplectic suite: metric residual, inverse pairing, and determinant of
/// randomized frame constructors and their compositions.
pub fn verify_symplectic(samples: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_metric = (0.0f64, String::new());
    let mut worst_inverse = (0.0f64, String::new());
    let mut worst_det = (0.0f64, String::new());
    for i in 0..samples {
        let theta: f64 = rng.random_range(-1.5..1.5);
        let r: f64 = rng.random_range(0.4..2.5);
        let s1: f64 = rng.random_range(-1.2..1.2);
        let s2: f64 = rng.random_range(-1.2..1.2);
        let o1: f64 = rng.random_range(0.2..2.0);
        let o2: f64 = rng.random_range(0.2..2.0);
        let tau: f64 = rng.random_range(0.0..40.0);

        let frames = [
            ("rotation", SymplecticMatrix::rotation(theta, r)),
            ("squeeze", SymplecticMatrix::squeeze(s1, s2)),
            ("phase", SymplecticMatrix::phase(o1, o2, tau)),
        ];
        let composed = frames[0].1.compose(&frames[1].1).compose(&frames[2].1);
        for (name, s) in frames.iter().chain([("composition", composed)].iter()) {
            let m = s.metric_residual();
            if m > worst_metric.0 {
                worst_metric = (m, format!("{name} sample {i}"));
            }
            let d = (s.0.det() - num_complex::Complex64::new(1.0, 0.0)).norm();
            if d > worst_det.0 {
                worst_det = (d, format!("{name} sample {i}"));
            }
        }

        let pairs = [
            (
                "rotation",
                SymplecticMatrix::rotation(theta, r),
                SymplecticMatrix::rotation(-theta, r),
            ),
            (
                "squeeze",
                SymplecticMatrix::squeeze(s1, s2),
                SymplecticMatrix::squeeze(-s1, -s2),
            ),
            (
                "phase",
                SymplecticMatrix::phase(o1, o2, tau),
                SymplecticMatrix::phase(o1, o2, -tau),
            ),
        ];
        for (name, fwd, bwd) in pairs {
            let gap = fwd.compose(&bwd).0.max_abs_diff(&Mat4::IDENTITY);
            if gap > worst_inverse.0 {
                worst_inverse = (gap, format!("{name} sample {i}"));
            }
        }
    }
    vec![
        Check::bounded("symplectic metric S^T J S = J", worst_metric.0, 1e-10, &worst_metric.1),
        Check::bounded("inverse pairs S S^{-1} = I", worst_inverse.0, 1e-12, &worst_inverse.1),
        Check::bounded("unit determinant", worst_det.0, 1e-8, &worst_det.1),
    ]
}

/// Resonant closed form vs the general pipeline, both kernels.
pub fn verify_isotropic(samples: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = (0.0f64, String::new());
    for i in 0..samples {
        let omega = rng.random_range(0.4..1.6);
        let coupling = rng.random_range(0.0..0.9) * omega * omega;
        let gamma = 10f64.powf(rng.random_range(0.5..2.5));
        let t = rng.random_range(0.0..50.0);
        let params = SystemParams::new(omega, omega, coupling, gamma).expect("valid");
        for kernel in [Kernel::Milburn, Kernel::VonNeumann] {
            let pipeline = crate::evolution::Propagator::new(params)
                .expect("stable")
                .covariance_at(t, kernel)
                .expect("valid time");
            let closed = isotropic_closed_form(params, t, kernel).expect("resonant");
            let gap = pipeline.0.max_abs_diff(&closed.0);
            if gap > worst.0 {
                worst = (gap, format!("sample {i} ({kernel}, t={t:.2})"));
            }
        }
    }
    vec![Check::bounded(
        "resonant closed form vs pipeline",
        worst.0,
        1e-10,
        &worst.1,
    )]
}

/// Poisson-series oracle vs the resummed Milburn kernel.
pub fn verify_series(samples: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = (0.0f64, String::new());
    for i in 0..samples {
        let mut params = random_params(&mut rng);
        // Keep Γt moderate so the suite stays interactive.
        params.gamma = 10f64.powf(rng.random_range(0.0..2.0));
        let t = rng.random_range(0.0..10.0);
        let closed = milburn_covariance(params, t).expect("stable sample");
        let series = series_oracle_covariance(params, t, 1e-12).expect("series converges");
        let gap = closed.0.max_abs_diff(&series.0);
        if gap > worst.0 {
            worst = (gap, format!("sample {i} (t={t:.2}, gamma={:.2})", params.gamma));
        }
    }
    vec![Check::bounded(
        "Poisson series vs resummed kernel",
        worst.0,
        1e-8,
        &worst.1,
    )]
}

/// Runs all three suites with their default sizes.
pub fn run_all(seed: u64) -> Vec<Check> {
    let mut checks = verify_symplectic(1000, seed);
    checks.extend(verify_isotropic(100, seed.wrapping_add(1)));
    checks.extend(verify_series(40, seed.wrapping_add(2)));
    checks
}
