//! Complex symplectic transformations and the covariance matrix they act on.
//!
//! Everything here lives in the ladder-operator basis (a, a†, b, b†). In that
//! basis a Bogoliubov transformation S preserves the commutation metric
//! J = −i ⊕ⱼ [[0, 1], [−1, 0]], i.e. SᵀJS = J, and has unit determinant.
//! Second moments are collected in a 4×4 Hermitian covariance matrix Σ with
//! Σ = I for the two-mode vacuum; symplectic frames act on it by the
//! congruence Σ ↦ S Σ S†.

use num_complex::Complex64 as C64;

use crate::matrix::Mat4;

/// A 4×4 complex symplectic matrix in the (a, a†, b, b†) basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticMatrix(pub Mat4);

/// A 4×4 Hermitian covariance matrix of ladder-operator second moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix(pub Mat4);

impl SymplecticMatrix {
    /// The commutation metric J = −i ⊕ [[0,1],[−1,0]] preserved by every
    /// transformation built here.
    pub fn metric() -> Mat4 {
        let z = C64::new(0.0, 0.0);
        let mi = C64::new(0.0, -1.0);
        let pi = C64::new(0.0, 1.0);
        Mat4::from_rows([
            [z, mi, z, z],
            [pi, z, z, z],
            [z, z, z, mi],
            [z, z, pi, z],
        ])
    }

    /// Two-mode mixing frame with angle θ and frequency ratio R:
    ///
    /// ```text
    ///        ⎡  c   0   P   M ⎤
    /// S_R =  ⎢  0   c   M   P ⎥ ,  c = cos θ,  P = (R + R⁻¹)/2 · sin θ,
    ///        ⎢ −P   M   c   0 ⎥                M = (R − R⁻¹)/2 · sin θ.
    ///        ⎣  M  −P   0   c ⎦
    /// ```
    ///
    /// At R = 1 this is an ordinary beam splitter; R ≠ 1 adds the two-mode
    /// squeezing needed to mix modes of unequal frequency.
    pub fn rotation(theta: f64, r: f64) -> Self {
        let c = theta.cos();
        let s = theta.sin();
        let p = 0.5 * (r + 1.0 / r) * s;
        let m = 0.5 * (r - 1.0 / r) * s;
        SymplecticMatrix(Mat4::from_real_rows([
            [c, 0.0, p, m],
            [0.0, c, m, p],
            [-p, m, c, 0.0],
            [m, -p, 0.0, c],
        ]))
    }

    /// Independent single-mode squeezers with parameters s₁ and s₂:
    /// block-diag([[ch₁, sh₁], [sh₁, ch₁]], [[ch₂, sh₂], [sh₂, ch₂]]).
    pub fn squeeze(s1: f64, s2: f64) -> Self {
        let (ch1, sh1) = (s1.cosh(), s1.sinh());
        let (ch2, sh2) = (s2.cosh(), s2.sinh());
        SymplecticMatrix(Mat4::from_real_rows([
            [ch1, sh1, 0.0, 0.0],
            [sh1, ch1, 0.0, 0.0],
            [0.0, 0.0, ch2, sh2],
            [0.0, 0.0, sh2, ch2],
        ]))
    }

    /// Free phase evolution of the normal modes for a time τ:
    /// diag(e^{−iΩ₁τ}, e^{+iΩ₁τ}, e^{−iΩ₂τ}, e^{+iΩ₂τ}).
    pub fn phase(omega_n1: f64, omega_n2: f64, tau: f64) -> Self {
        let e = |w: f64| C64::from_polar(1.0, -w * tau);
        SymplecticMatrix(Mat4::from_diagonal([
            e(omega_n1),
            e(omega_n1).conj(),
            e(omega_n2),
            e(omega_n2).conj(),
        ]))
    }

    /// Matrix product of two frames.
    pub fn compose(&self, other: &SymplecticMatrix) -> SymplecticMatrix {
        SymplecticMatrix(self.0 * other.0)
    }

    /// Checks SᵀJS = J entrywise to `tol` and |det S − 1| to `100·tol`.
    ///
    /// The metric condition uses the plain transpose, not the conjugate
    /// transpose: complex phase frames satisfy only the former.
    pub fn is_symplectic(&self, tol: f64) -> bool {
        self.metric_residual() <= tol && (self.0.det() - C64::new(1.0, 0.0)).norm() <= 100.0 * tol
    }

    /// Largest entry of |SᵀJS − J|.
    pub fn metric_residual(&self) -> f64 {
        let j = Self::metric();
        let lhs = self.0.transpose() * j * self.0;
        lhs.max_abs_diff(&j)
    }

    /// Applies the frame to a covariance matrix: Σ ↦ S Σ S†, re-symmetrised
    /// to suppress the round-off skew of the two multiplications.
    pub fn conjugate(&self, sigma: &CovarianceMatrix) -> CovarianceMatrix {
        CovarianceMatrix((self.0 * sigma.0 * self.0.adjoint()).hermitize())
    }

    /// Same congruence applied to a raw matrix, without re-symmetrising.
    pub fn conjugate_raw(&self, m: &Mat4) -> Mat4 {
        self.0 * *m * self.0.adjoint()
    }
}

impl CovarianceMatrix {
    /// Covariance of the joint vacuum: the identity.
    pub fn vacuum() -> Self {
        CovarianceMatrix(Mat4::IDENTITY)
    }

    /// Determinant of the full 4×4 matrix.
    pub fn det(&self) -> C64 {
        self.0.det()
    }

    /// Entry access, 0-based.
    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    /// Largest |Σᵢⱼ − Σ̄ⱼᵢ| over all entries.
    pub fn hermitian_residual(&self) -> f64 {
        self.0.hermitian_residual()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    const TOL: f64 = 1e-12;

    fn signature() -> Mat4 {
        Mat4::from_diagonal([
            C64::new(1.0, 0.0),
            C64::new(-1.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(-1.0, 0.0),
        ])
    }

    #[test]
    fn constructors_are_symplectic() {
        let mut rng = StdRng::seed_from_u64(0x5eed_0010);
        for _ in 0..200 {
            let theta: f64 = rng.random_range(-1.5..1.5);
            let r: f64 = rng.random_range(0.4..2.5);
            let s1: f64 = rng.random_range(-1.0..1.0);
            let s2: f64 = rng.random_range(-1.0..1.0);
            let tau: f64 = rng.random_range(0.0..30.0);
            assert!(SymplecticMatrix::rotation(theta, r).is_symplectic(TOL));
            assert!(SymplecticMatrix::squeeze(s1, s2).is_symplectic(TOL));
            assert!(SymplecticMatrix::phase(1.1, 0.9, tau).is_symplectic(TOL));
        }
    }

    #[test]
    fn phase_frame_fails_the_conjugate_transpose_metric() {
        // A complex diagonal phase frame is unitary, so S†JS = J would force
        // [J, S] = 0 entrywise only when phases cancel; the transpose metric
        // is the right invariant. Both facts are checked.
        let s = SymplecticMatrix::phase(1.0, 0.7, 0.3);
        let j = SymplecticMatrix::metric();
        let dagger = s.0.adjoint() * j * s.0;
        assert!(dagger.max_abs_diff(&j) > 0.1);
        assert!(s.metric_residual() <= 1e-15);
    }

    #[test]
    fn composition_stays_symplectic() {
        let mut rng = StdRng::seed_from_u64(0x5eed_0011);
        for _ in 0..200 {
            let a = SymplecticMatrix::rotation(rng.random_range(-1.0..1.0), rng.random_range(0.5..2.0));
            let b = SymplecticMatrix::squeeze(rng.random_range(-0.8..0.8), rng.random_range(-0.8..0.8));
            let c = SymplecticMatrix::phase(1.3, 0.6, rng.random_range(0.0..10.0));
            assert!(a.compose(&b).compose(&c).is_symplectic(1e-11));
        }
    }

    #[test]
    fn determinants_are_one() {
        let one = C64::new(1.0, 0.0);
        assert!((SymplecticMatrix::rotation(0.7, 1.4).0.det() - one).norm() < 1e-14);
        assert!((SymplecticMatrix::squeeze(0.5, -0.3).0.det() - one).norm() < 1e-14);
        assert!((SymplecticMatrix::phase(1.0, 0.8, 5.0).0.det() - one).norm() < 1e-14);
    }

    #[test]
    fn signature_is_preserved_under_dagger_congruence() {
        // All three constructors satisfy S K S† = K with K = diag(1,-1,1,-1).
        let k = signature();
        for s in [
            SymplecticMatrix::rotation(0.6, 1.3),
            SymplecticMatrix::squeeze(0.4, -0.7),
            SymplecticMatrix::phase(1.2, 0.9, 2.5),
        ] {
            let out = s.conjugate_raw(&k);
            assert!(out.max_abs_diff(&k) < 1e-14);
        }
    }

    #[test]
    fn rotation_layout_matches_definition() {
        let theta = 0.37;
        let r = 1.6;
        let s = SymplecticMatrix::rotation(theta, r);
        let c = theta.cos();
        let p = 0.5 * (r + 1.0 / r) * theta.sin();
        let m = 0.5 * (r - 1.0 / r) * theta.sin();
        assert_abs_diff_eq!(s.0[(0, 0)].re, c);
        assert_abs_diff_eq!(s.0[(0, 2)].re, p);
        assert_abs_diff_eq!(s.0[(0, 3)].re, m);
        assert_abs_diff_eq!(s.0[(1, 2)].re, m);
        assert_abs_diff_eq!(s.0[(2, 0)].re, -p);
        assert_abs_diff_eq!(s.0[(2, 1)].re, m);
        assert_abs_diff_eq!(s.0[(3, 0)].re, m);
        assert_abs_diff_eq!(s.0[(3, 1)].re, -p);
        assert_eq!(s.0[(0, 1)], C64::new(0.0, 0.0));
    }

    #[test]
    fn unit_ratio_rotation_is_a_beam_splitter() {
        // At R = 1 the M entries vanish and the frame is the standard
        // two-mode rotation.
        let s = SymplecticMatrix::rotation(0.5, 1.0);
        assert_eq!(s.0[(0, 3)], C64::new(0.0, 0.0));
        assert_eq!(s.0[(1, 2)], C64::new(0.0, 0.0));
        assert_abs_diff_eq!(s.0[(0, 2)].re, 0.5_f64.sin());
    }

    #[test]
    fn inverse_pairs_cancel() {
        let r = SymplecticMatrix::rotation(0.42, 1.7);
        let r_inv = SymplecticMatrix::rotation(-0.42, 1.7);
        assert!(r.compose(&r_inv).0.max_abs_diff(&Mat4::IDENTITY) < 1e-15);

        let q = SymplecticMatrix::squeeze(0.3, -0.6);
        let q_inv = SymplecticMatrix::squeeze(-0.3, 0.6);
        assert!(q.compose(&q_inv).0.max_abs_diff(&Mat4::IDENTITY) < 1e-15);

        let h = SymplecticMatrix::phase(1.1, 0.9, 4.0);
        let h_inv = SymplecticMatrix::phase(1.1, 0.9, -4.0);
        assert!(h.compose(&h_inv).0.max_abs_diff(&Mat4::IDENTITY) < 1e-15);
    }

    #[test]
    fn vacuum_covariance_is_identity_with_unit_det() {
        let v = CovarianceMatrix::vacuum();
        assert_eq!(v.0, Mat4::IDENTITY);
        assert_eq!(v.det(), C64::new(1.0, 0.0));
        assert_eq!(v.hermitian_residual(), 0.0);
    }

    #[test]
    fn conjugation_preserves_hermiticity_and_det() {
        let mut rng = StdRng::seed_from_u64(0x5eed_0012);
        for _ in 0..100 {
            let s = SymplecticMatrix::rotation(rng.random_range(-1.0..1.0), rng.random_range(0.5..2.0))
                .compose(&SymplecticMatrix::squeeze(
                    rng.random_range(-0.7..0.7),
                    rng.random_range(-0.7..0.7),
                ))
                .compose(&SymplecticMatrix::phase(1.2, 0.8, rng.random_range(0.0..20.0)));
            let out = s.conjugate(&CovarianceMatrix::vacuum());
            assert_eq!(out.hermitian_residual(), 0.0);
            // det(S Σ S†) = |det S|² det Σ = det Σ for det S = 1.
            assert!((out.det() - C64::new(1.0, 0.0)).norm() < 1e-11);
        }
    }
}
