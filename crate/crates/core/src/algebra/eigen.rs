//! Cyclic complex Jacobi eigenvalue iteration for small Hermitian matrices.

use num_complex::Complex64;

use super::states::{all_finite, ZERO};
use crate::error::{Error, Result, ALGEBRAIC_TOL};

const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Dense Hermitian matrix, `m[row][col]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianMatrix<const N: usize> {
    m: [[Complex64; N]; N],
}

pub type Hermitian9 = HermitianMatrix<9>;

impl<const N: usize> HermitianMatrix<N> {
    pub fn new(m: [[Complex64; N]; N]) -> Result<Self> {
        if !m.iter().all(|row| all_finite(row)) {
            return Err(Error::NotFinite("HermitianMatrix"));
        }
        let residual = hermiticity_residual(&m);
        if residual > ALGEBRAIC_TOL {
            return Err(Error::NotHermitian(residual));
        }
        Ok(Self { m })
    }

    pub fn from_diagonal(d: [f64; N]) -> Self {
        let mut m = [[ZERO; N]; N];
        for (k, v) in d.into_iter().enumerate() {
            m[k][k] = Complex64::new(v, 0.0);
        }
        Self { m }
    }

    pub fn matrix(&self) -> &[[Complex64; N]; N] {
        &self.m
    }

    pub fn trace(&self) -> f64 {
        (0..N).map(|k| self.m[k][k].re).sum()
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Result<[f64; N]> {
        jacobi_eigenvalues(self.m)
    }
}

fn hermiticity_residual<const N: usize>(m: &[[Complex64; N]; N]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..N {
        for j in i..N {
            worst = worst.max((m[i][j] - m[j][i].conj()).norm());
        }
    }
    worst
}

fn off_diagonal_norm<const N: usize>(a: &[[Complex64; N]; N]) -> f64 {
    let mut s = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j {
                s += v.norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Runs cyclic Jacobi sweeps until the off-diagonal Frobenius norm drops below `1e-13`
/// (relative to the matrix norm when that exceeds one).
pub fn jacobi_eigenvalues<const N: usize>(mut a: [[Complex64; N]; N]) -> Result<[f64; N]> {
    let scale: f64 = a.iter().flatten().map(|v| v.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    let tol = OFF_DIAGONAL_TOL * scale;

    let mut converged = off_diagonal_norm(&a) < tol;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..N {
            for q in (p + 1)..N {
                rotate(&mut a, p, q);
            }
        }
        converged = off_diagonal_norm(&a) < tol;
    }

    let mut values: [f64; N] = std::array::from_fn(|k| a[k][k].re);
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

/// Annihilates `a[p][q]` with the unitary `J = diag(1, e^{-iφ}) · R(θ)` acting on `(p, q)`,
/// replacing `a` by `J† a J`.
fn rotate<const N: usize>(a: &mut [[Complex64; N]; N], p: usize, q: usize) {
    let apq = a[p][q];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = apq / g;
    let app = a[p][p].re;
    let aqq = a[q][q].re;

    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let j_pp = Complex64::new(c, 0.0);
    let j_pq = Complex64::new(s, 0.0);
    let j_qp = -phase.conj() * s;
    let j_qq = phase.conj() * c;

    for row in a.iter_mut() {
        let (kp, kq) = (row[p], row[q]);
        row[p] = kp * j_pp + kq * j_qp;
        row[q] = kp * j_pq + kq * j_qq;
    }
    for k in 0..N {
        let (pk, qk) = (a[p][k], a[q][k]);
        a[p][k] = j_pp.conj() * pk + j_qp.conj() * qk;
        a[q][k] = j_pq.conj() * pk + j_qq.conj() * qk;
    }
    a[p][q] = ZERO;
    a[q][p] = ZERO;
    a[p][p].im = 0.0;
    a[q][q].im = 0.0;
}

pub fn hermitian_eigenvalues(h: &Hermitian9) -> Result<[f64; 9]> {
    h.eigenvalues()
}
