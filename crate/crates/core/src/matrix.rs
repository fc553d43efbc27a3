//! Small fixed-size complex matrices.
//!
//! Everything in this crate happens on 4×4 (and 2×2) complex matrices in the
//! mode basis (a, a†, b, b†), so the types here are plain stack arrays with
//! the handful of operations the solver needs. No allocation, no general
//! linear algebra — determinants are closed-form expansions.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64 as C64;

const ZERO_C: C64 = C64::new(0.0, 0.0);
const ONE_C: C64 = C64::new(1.0, 0.0);

/// Dense 4×4 complex matrix, row-major, 0-based indexing via `m[(row, col)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4 {
    e: [[C64; 4]; 4],
}

impl Mat4 {
    /// All-zero matrix.
    pub const ZERO: Mat4 = Mat4 { e: [[ZERO_C; 4]; 4] };

    /// Identity matrix.
    pub const IDENTITY: Mat4 = {
        let mut e = [[ZERO_C; 4]; 4];
        e[0][0] = ONE_C;
        e[1][1] = ONE_C;
        e[2][2] = ONE_C;
        e[3][3] = ONE_C;
        Mat4 { e }
    };

    /// Builds a matrix from rows.
    pub const fn from_rows(rows: [[C64; 4]; 4]) -> Self {
        Mat4 { e: rows }
    }

    /// Builds a real matrix from rows.
    pub fn from_real_rows(rows: [[f64; 4]; 4]) -> Self {
        let mut m = Mat4::ZERO;
        for (row, values) in m.e.iter_mut().zip(&rows) {
            for (entry, &v) in row.iter_mut().zip(values) {
                *entry = C64::new(v, 0.0);
            }
        }
        m
    }

    /// Diagonal matrix from four complex entries.
    pub fn from_diagonal(d: [C64; 4]) -> Self {
        let mut m = Mat4::ZERO;
        for (i, &v) in d.iter().enumerate() {
            m.e[i][i] = v;
        }
        m
    }

    /// Conjugate transpose A†.
    pub fn adjoint(&self) -> Mat4 {
        let mut m = Mat4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                m.e[i][j] = self.e[j][i].conj();
            }
        }
        m
    }

    /// Plain transpose Aᵀ (no conjugation).
    pub fn transpose(&self) -> Mat4 {
        let mut m = Mat4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                m.e[i][j] = self.e[j][i];
            }
        }
        m
    }

    /// Entrywise (Hadamard) product A ∘ B.
    pub fn hadamard(&self, rhs: &Mat4) -> Mat4 {
        let mut m = Mat4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                m.e[i][j] = self.e[i][j] * rhs.e[i][j];
            }
        }
        m
    }

    /// Hermitian part (A + A†)/2.
    pub fn hermitize(&self) -> Mat4 {
        let mut m = Mat4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                m.e[i][j] = (self.e[i][j] + self.e[j][i].conj()) * 0.5;
            }
        }
        m
    }

    /// Largest absolute deviation from Hermitian symmetry, max |A_ij − conj(A_ji)|.
    pub fn hermitian_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.e[i][j] - self.e[j][i].conj()).norm());
            }
        }
        worst
    }

    /// Max-norm distance max |A_ij − B_ij|.
    pub fn max_abs_diff(&self, rhs: &Mat4) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.e[i][j] - rhs.e[i][j]).norm());
            }
        }
        worst
    }

    /// Determinant by cofactor expansion over 2×2 minors.
    pub fn det(&self) -> C64 {
        let m = &self.e;
        let s0 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let s1 = m[0][0] * m[1][2] - m[0][2] * m[1][0];
        let s2 = m[0][0] * m[1][3] - m[0][3] * m[1][0];
        let s3 = m[0][1] * m[1][2] - m[0][2] * m[1][1];
        let s4 = m[0][1] * m[1][3] - m[0][3] * m[1][1];
        let s5 = m[0][2] * m[1][3] - m[0][3] * m[1][2];

        let c5 = m[2][2] * m[3][3] - m[2][3] * m[3][2];
        let c4 = m[2][1] * m[3][3] - m[2][3] * m[3][1];
        let c3 = m[2][1] * m[3][2] - m[2][2] * m[3][1];
        let c2 = m[2][0] * m[3][3] - m[2][3] * m[3][0];
        let c1 = m[2][0] * m[3][2] - m[2][2] * m[3][0];
        let c0 = m[2][0] * m[3][1] - m[2][1] * m[3][0];

        s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0
    }

    /// Scales every entry by a real or complex factor.
    pub fn scale(&self, k: impl Into<C64>) -> Mat4 {
        let k = k.into();
        let mut m = *self;
        for row in m.e.iter_mut() {
            for x in row.iter_mut() {
                *x *= k;
            }
        }
        m
    }
}

impl Index<(usize, usize)> for Mat4 {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.e[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.e[i][j]
    }
}

impl Mul for Mat4 {
    type Output = Mat4;

    fn mul(self, rhs: Mat4) -> Mat4 {
        let mut out = Mat4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = ZERO_C;
                for (k, rhs_row) in rhs.e.iter().enumerate() {
                    acc += self.e[i][k] * rhs_row[j];
                }
                out.e[i][j] = acc;
            }
        }
        out
    }
}

impl Add for Mat4 {
    type Output = Mat4;

    fn add(self, rhs: Mat4) -> Mat4 {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.e[i][j] += rhs.e[i][j];
            }
        }
        out
    }
}

impl Sub for Mat4 {
    type Output = Mat4;

    fn sub(self, rhs: Mat4) -> Mat4 {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out.e[i][j] -= rhs.e[i][j];
            }
        }
        out
    }
}

/// Dense 2×2 complex matrix used for covariance sub-blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    e: [[C64; 2]; 2],
}

impl Mat2 {
    /// Builds a matrix from rows.
    pub const fn from_rows(rows: [[C64; 2]; 2]) -> Self {
        Mat2 { e: rows }
    }

    /// Determinant ad − bc.
    pub fn det(&self) -> C64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }
}

impl Index<(usize, usize)> for Mat2 {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.e[i][j]
    }
}
