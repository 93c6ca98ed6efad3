//! Unitary completion of a first column into a circulant attack matrix.
//!
//! A circulant `C[m][n] = c[(m - n) mod 3]` is diagonalized by the discrete Fourier transform,
//! with eigenvalues `λ_k = Σ_m c_m ω^{mk}`. It is unitary exactly when every `λ_k` is
//! unimodular, and its cyclic-shift structure gives the complete-mixedness modulus pattern for
//! free. Completion therefore searches the two free eigenvalue phases (the first is fixed at 0)
//! for an inverse transform whose entries have the requested moduli.

use num_complex::Complex64;

use super::{AttackColumn, AttackOperator};
use crate::algebra::{omega, BasisLabel};
use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 200;
const MODULUS_TOL: f64 = 1e-11;

/// Circulant matrix with the given first column.
pub fn circulant_from_column(c: &[Complex64; 3]) -> [[Complex64; 3]; 3] {
    std::array::from_fn(|m| std::array::from_fn(|n| c[(m + 3 - n) % 3]))
}

/// `λ_k = Σ_m c_m ω^{mk}` for the circulant with first column `c`.
pub fn circulant_eigenvalues(c: &[Complex64; 3]) -> [Complex64; 3] {
    std::array::from_fn(|k| (0..3).map(|m| c[m] * omega((m * k) as i64)).sum())
}

fn column_from_phases(theta: [f64; 2]) -> [Complex64; 3] {
    let lambda = [Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, theta[0]), Complex64::from_polar(1.0, theta[1])];
    std::array::from_fn(|m| (0..3).map(|k| lambda[k] * omega(-((m * k) as i64))).sum::<Complex64>() / 3.0)
}

fn converged(c: &[Complex64; 3], target: &[f64; 3]) -> bool {
    (0..3).all(|m| (c[m].norm() - target[m]).abs() < MODULUS_TOL)
}

/// Levenberg-Marquardt on `|c_m(θ)|² − r_m² = 0`, `m = 1, 2`.
fn solve_from(start: [f64; 2], target: &[f64; 3]) -> Option<[f64; 2]> {
    let mut theta = start;
    let mut mu = 1e-6;
    for _ in 0..MAX_ITERATIONS {
        let c = column_from_phases(theta);
        if converged(&c, target) {
            return Some(theta);
        }
        let f = [c[1].norm_sqr() - target[1] * target[1], c[2].norm_sqr() - target[2] * target[2]];
        // ∂c_m/∂θ_k = (i/3) e^{iθ_k} ω^{-mk}
        let mut jac = [[0.0; 2]; 2];
        for (row, m) in [1usize, 2].into_iter().enumerate() {
            for (col, k) in [1usize, 2].into_iter().enumerate() {
                let dc = Complex64::new(0.0, 1.0 / 3.0) * Complex64::from_polar(1.0, theta[col]) * omega(-((m * k) as i64));
                jac[row][col] = 2.0 * (c[m].conj() * dc).re;
            }
        }
        let cost = f[0] * f[0] + f[1] * f[1];
        let jtj = [
            [jac[0][0] * jac[0][0] + jac[1][0] * jac[1][0], jac[0][0] * jac[0][1] + jac[1][0] * jac[1][1]],
            [jac[0][1] * jac[0][0] + jac[1][1] * jac[1][0], jac[0][1] * jac[0][1] + jac[1][1] * jac[1][1]],
        ];
        let jtf = [jac[0][0] * f[0] + jac[1][0] * f[1], jac[0][1] * f[0] + jac[1][1] * f[1]];
        let mut accepted = false;
        for _ in 0..30 {
            let a = jtj[0][0] + mu;
            let d = jtj[1][1] + mu;
            let b = jtj[0][1];
            let det = a * d - b * b;
            if det == 0.0 || !det.is_finite() {
                mu *= 10.0;
                continue;
            }
            let step = [-(d * jtf[0] - b * jtf[1]) / det, -(a * jtf[1] - b * jtf[0]) / det];
            let trial = [theta[0] + step[0], theta[1] + step[1]];
            let ct = column_from_phases(trial);
            let ft = [ct[1].norm_sqr() - target[1] * target[1], ct[2].norm_sqr() - target[2] * target[2]];
            if ft[0] * ft[0] + ft[1] * ft[1] < cost {
                theta = trial;
                mu = (mu * 0.1).max(1e-15);
                accepted = true;
                break;
            }
            mu *= 10.0;
        }
        if !accepted {
            return converged(&column_from_phases(theta), target).then_some(theta);
        }
    }
    converged(&column_from_phases(theta), target).then_some(theta)
}

/// Phases of the symmetric closed form `c = (r0, r e^{iφ}, r e^{iφ})`, `cos φ = −r/(2 r0)`,
/// using `r = (r1 + r2)/2`. Exact when `r1 = r2`; otherwise only a starting guess.
fn symmetric_guess(target: &[f64; 3]) -> Option<[f64; 2]> {
    let r0 = target[0];
    let r = 0.5 * (target[1] + target[2]);
    if r0 <= 0.0 || r > 2.0 * r0 {
        return None;
    }
    let phi = (-r / (2.0 * r0)).acos();
    let c = [Complex64::new(r0, 0.0), Complex64::from_polar(r, phi), Complex64::from_polar(r, phi)];
    let lambda = circulant_eigenvalues(&c);
    let base = lambda[0].arg();
    Some([lambda[1].arg() - base, lambda[2].arg() - base])
}

/// Completes `col` into a circulant unitary whose first column has the moduli of `col`.
///
/// The phases of the result are chosen by the solver (the first entry is made real and
/// nonnegative); only the moduli of `col` are honored. Fails with
/// [`Error::InfeasibleCirculant`] when no start converges within 200 iterations.
pub fn complete_circulant(col: &AttackColumn) -> Result<AttackOperator> {
    let target = col.values().map(|z| z.norm());

    let mut starts = Vec::with_capacity(50);
    starts.extend(symmetric_guess(&target));
    starts.push([0.0, 0.0]);
    let grid = 7;
    for a in 0..grid {
        for b in 0..grid {
            let step = std::f64::consts::TAU / grid as f64;
            starts.push([step * a as f64 + 0.1, step * b as f64 + 0.2]);
        }
    }

    for start in starts {
        if let Some(theta) = solve_from(start, &target) {
            let mut c = column_from_phases(theta);
            if c[0].norm() > 0.0 {
                let phase = c[0].conj() / c[0].norm();
                c = c.map(|z| z * phase);
            }
            return AttackOperator::new(circulant_from_column(&c), BasisLabel::Z);
        }
    }
    Err(Error::InfeasibleCirculant(target[0], target[1], target[2]))
}
