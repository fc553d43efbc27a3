//! Shared fixtures for the criterion benchmarks.

use milburn::{Kernel, Propagator, SystemParams, TimeGrid};

/// The workhorse configuration: resonant pair, moderate coupling, Γ = 100.
pub fn workhorse_params() -> SystemParams {
    SystemParams::new(1.0, 1.0, 0.2, 100.0).expect("static params")
}

/// A detuned, strongly coupled configuration.
pub fn detuned_params() -> SystemParams {
    SystemParams::new(1.0, 0.5, 0.45, 100.0).expect("static params")
}

/// A prepared propagator for the workhorse configuration.
pub fn workhorse_propagator() -> Propagator {
    Propagator::new(workhorse_params()).expect("stable params")
}

/// A short grid sized for per-iteration benchmarking.
pub fn short_grid() -> TimeGrid {
    TimeGrid::from_duration(10.0, 201).expect("static grid")
}

/// Convenience: one mid-evolution covariance for quantifier benchmarks.
pub fn sample_covariance() -> milburn::CovarianceMatrix {
    workhorse_propagator()
        .covariance_at(5.0, Kernel::Milburn)
        .expect("valid time")
}
