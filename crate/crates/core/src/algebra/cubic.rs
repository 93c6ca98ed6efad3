//! Trigonometric (Viète) solution of real cubics with three real roots.

use std::f64::consts::PI;

use crate::error::{Error, Result, ALGEBRAIC_TOL};

/// Roots of `λ³ + c2·λ² + c1·λ + c0`, descending.
///
/// Fails with [`Error::ComplexRoots`] when the discriminant is negative beyond `1e-12`.
pub fn solve_cubic(c2: f64, c1: f64, c0: f64) -> Result<[f64; 3]> {
    if !(c2.is_finite() && c1.is_finite() && c0.is_finite()) {
        return Err(Error::NotFinite("cubic coefficients"));
    }
    // λ = t - c2/3 gives t³ + p·t + q = 0.
    let shift = -c2 / 3.0;
    let p = c1 - c2 * c2 / 3.0;
    let q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;

    // Δ = -(4p³ + 27q²) ≥ 0 for three real roots.
    let disc = -(4.0 * p * p * p + 27.0 * q * q);
    if disc < -ALGEBRAIC_TOL {
        return Err(Error::ComplexRoots(disc));
    }

    let trig = if p >= 0.0 {
        // Only reachable with p ≈ 0 and q ≈ 0 inside the guard: a triple root.
        let t = (-q).cbrt();
        [shift + t, shift + t, shift + t]
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        let mut r: [f64; 3] = std::array::from_fn(|k| shift + m * (theta - 2.0 * PI * k as f64 / 3.0).cos());
        r.sort_by(|a, b| b.total_cmp(a));
        r
    };

    // Clustered roots are ill-conditioned in the coefficients. Keep the most isolated one and
    // recover the pair from Vieta's relations, which keeps their sum exact.
    let isolated = if trig[0] - trig[1] >= trig[1] - trig[2] { trig[0] } else { trig[2] };
    let r1 = polish(isolated, c2, c1, c0);
    let sum = -c2 - r1;
    let prod = c1 - r1 * sum;
    let half_gap = (sum * sum / 4.0 - prod).max(0.0).sqrt();
    let big = sum / 2.0 + half_gap.copysign(sum);
    let small = if big != 0.0 { prod / big } else { 0.0 };

    let mut roots = [r1, big, small];
    roots.sort_by(|a, b| b.total_cmp(a));
    Ok(roots)
}

fn eval(x: f64, c2: f64, c1: f64, c0: f64) -> f64 {
    ((x + c2) * x + c1) * x + c0
}

/// Newton steps that are kept only while they reduce the residual.
fn polish(mut x: f64, c2: f64, c1: f64, c0: f64) -> f64 {
    for _ in 0..3 {
        let f = eval(x, c2, c1, c0);
        let df = (3.0 * x + 2.0 * c2) * x + c1;
        if f == 0.0 || df == 0.0 {
            break;
        }
        let next = x - f / df;
        if eval(next, c2, c1, c0).abs() < f.abs() {
            x = next;
        } else {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lambda_cubed_minus_lambda_squared() {
        let r = solve_cubic(-1.0, 0.0, 0.0).unwrap();
        assert!((r[0] - 1.0).abs() < 1e-14);
        assert!(r[1].abs() < 1e-14 && r[2].abs() < 1e-14);
    }

    #[test]
    fn perfect_cube_triple_root() {
        let r = solve_cubic(-1.0 / 3.0, 1.0 / 27.0, -1.0 / 729.0).unwrap();
        for x in r {
            assert!((x - 1.0 / 9.0).abs() < 1e-5, "{x}");
            assert!(eval(x, -1.0 / 3.0, 1.0 / 27.0, -1.0 / 729.0).abs() < 1e-10);
        }
    }

    #[test]
    fn complex_regime_is_rejected() {
        // λ³ + λ has roots 0, ±i.
        assert!(matches!(solve_cubic(0.0, 1.0, 0.0), Err(Error::ComplexRoots(_))));
    }

    proptest! {
        #[test]
        fn recovers_planted_roots(a in 0.0f64..1.0, b in 0.0f64..1.0, c in 0.0f64..1.0) {
            let c2 = -(a + b + c);
            let c1 = a * b + a * c + b * c;
            let c0 = -a * b * c;
            let r = solve_cubic(c2, c1, c0).unwrap();
            for x in r {
                prop_assert!(eval(x, c2, c1, c0).abs() < 1e-10);
            }
            let mut planted = [a, b, c];
            planted.sort_by(|x, y| y.total_cmp(x));
            prop_assert!((r.iter().sum::<f64>() - planted.iter().sum::<f64>()).abs() < 1e-10);
        }
    }
}
