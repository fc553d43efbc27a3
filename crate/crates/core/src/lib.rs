//! Exact second-moment dynamics of two coupled harmonic oscillators under
//! Milburn intrinsic decoherence.
//!
//! Two position-coupled oscillators prepared in their joint vacuum develop
//! correlations because the bare vacuum is not an eigenstate of the coupled
//! Hamiltonian: each mode acquires *virtual* excitations, the pair becomes
//! entangled, and — once intrinsic decoherence mixes the unitary orbits —
//! the state loses purity at a rate set by Γ. Because the Hamiltonian is
//! quadratic, all of this is carried by the 4×4 covariance matrix of ladder
//! operators, which this crate evolves in closed form (no integrator, no
//! truncation): the coupled pair is rotated and squeezed into its normal
//! modes, each pair of normal-mode phase rates picks up one scalar
//! decoherence factor, and the frame is rotated back.
//!
//! The crate provides
//!
//! * the normal-mode reduction ([`modes`]),
//! * the symplectic frames and covariance type ([`symplectic`]),
//! * the closed-form propagator plus a slow series oracle ([`evolution`]),
//! * entanglement / steering / purity quantifiers ([`quantifiers`]),
//! * time-series, sweep and figure-preset drivers ([`experiments`]),
//! * CSV / manifest serialization ([`output`]),
//! * seeded self-check suites ([`verify`]).

pub mod error;
pub mod evolution;
pub mod experiments;
pub mod matrix;
pub mod modes;
pub mod output;
pub mod quantifiers;
pub mod symplectic;
pub mod verify;

pub use error::{Error, Result};
pub use evolution::{
    conjugation_frames, decoherence_factor_matrix, milburn_covariance, resonance_edge_case,
    scalar_decoherence_factor, series_oracle_covariance, von_neumann_covariance,
    ConjugationFrames, Kernel, Propagator, SERIES_LAMBDA_CAP,
};
pub use experiments::{
    figure_preset, milburn_vs_vonneumann_distance, parameter_sweep, sync_diagnostic, time_average,
    time_series, FigureConfig, FigurePreset, RunFlags, RunResult, SweepAxis, SweepCell, SweepSpec,
    TimeGrid, DEFAULT_STEPS, DEFAULT_T_MAX,
};
pub use matrix::{Mat2, Mat4};
pub use num_complex::Complex64 as C64;
pub use modes::{derive_modes, normal_frequencies, rotation_angle, NormalModes, SystemParams};
pub use output::{
    csv_string, parse_csv, read_csv, write_csv, write_manifest, FigureManifest, ManifestCell,
    SweepManifest, CSV_HEADER,
};
pub use verify::Check;
pub use quantifiers::{
    block_determinants, correlation_record, isotropic_closed_form, log_negativity,
    ppt_symplectic_eigenvalues, purity, steering, virtual_excitations, BlockDeterminants,
    CorrelationRecord, PptEigenvalues, Steering, VirtualExcitations,
};
pub use symplectic::{CovarianceMatrix, SymplecticMatrix};
