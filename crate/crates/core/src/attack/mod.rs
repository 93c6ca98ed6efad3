//! Eve's entangling operation: first-column parameters, full operators, and the detection
//! probabilities they induce in the control mode.

mod circulant;
mod spec;
mod table2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{omega, unitarity_residual, BasisLabel};
use crate::error::{Error, Result, ATTACK_TOL};

pub use circulant::{circulant_eigenvalues, circulant_from_column, complete_circulant};
pub use spec::AttackSpec;
pub use table2::{table2_rows, verify_table2, Table2Check, Table2Row, TABLE2_TOL};

/// First column `(c0, c1, c2)` of the attack matrix in some measuring basis: the amplitudes of
/// "no change" and of the two shifted outcomes for input `|b_0⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackColumn {
    c: [Complex64; 3],
}

impl AttackColumn {
    pub fn new(c: [Complex64; 3]) -> Result<Self> {
        if !c.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NotFinite("AttackColumn"));
        }
        let n: f64 = c.iter().map(|z| z.norm_sqr()).sum();
        if (n - 1.0).abs() > ATTACK_TOL {
            return Err(Error::NotNormalized { what: "AttackColumn", norm_sq: n });
        }
        Ok(Self { c })
    }

    /// Real column with the given moduli.
    pub fn from_moduli(moduli: [f64; 3]) -> Result<Self> {
        Self::new(moduli.map(|r| Complex64::new(r, 0.0)))
    }

    /// Skips the normalization check; used for tabulated data printed to limited precision.
    pub(crate) fn unchecked(c: [Complex64; 3]) -> Self {
        Self { c }
    }

    pub fn values(&self) -> &[Complex64; 3] {
        &self.c
    }

    pub fn moduli_sq(&self) -> [f64; 3] {
        self.c.map(|z| z.norm_sqr())
    }
}

/// Probability that a control round in the attack's own basis reveals it: `1 − |c0|²`.
pub fn detection_from_column(col: &AttackColumn) -> f64 {
    1.0 - col.c[0].norm_sqr()
}

/// Symmetric attack `(√(1−d), √(d/2), √(d/2))` for detection probability `d ∈ [0, 2/3]`.
pub fn symmetric_column(d: f64) -> Result<AttackColumn> {
    if !(0.0..=2.0 / 3.0 + ATTACK_TOL).contains(&d) {
        return Err(Error::OutOfRange { what: "d_z", value: d, range: "[0, 2/3]" });
    }
    let d = d.min(2.0 / 3.0);
    let side = (d / 2.0).sqrt();
    AttackColumn::from_moduli([(1.0 - d).sqrt(), side, side])
}

/// Squared moduli `(|α_0|², |β_0|², |γ_0|²)` of the z-representation column, computed from
/// the x-representation column `(a_0, b_0, c_0)`.
pub fn column_z_from_x(col_x: &AttackColumn) -> [f64; 3] {
    let [a, b, c] = col_x.c;
    [
        (a + b + c).norm_sqr() / 3.0,
        (a + omega(1) * b + omega(2) * c).norm_sqr() / 3.0,
        (a + omega(2) * b + omega(1) * c).norm_sqr() / 3.0,
    ]
}

/// A full 3×3 attack matrix (columns are the images of the basis vectors) together with the
/// basis it is written in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackOperator {
    m: [[Complex64; 3]; 3],
    representation: BasisLabel,
}

impl AttackOperator {
    /// Checks column orthonormality and the complete-mixedness modulus pattern within `1e-9`.
    pub fn new(m: [[Complex64; 3]; 3], representation: BasisLabel) -> Result<Self> {
        if !m.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NotFinite("AttackOperator"));
        }
        let u = unitarity_residual(&m);
        if u > ATTACK_TOL {
            return Err(Error::NotUnitary(u));
        }
        let mix = mixedness_residual(&m);
        if mix > ATTACK_TOL {
            return Err(Error::MixednessViolated(mix));
        }
        Ok(Self { m, representation })
    }

    pub fn matrix(&self) -> &[[Complex64; 3]; 3] {
        &self.m
    }

    pub fn representation(&self) -> BasisLabel {
        self.representation
    }

    pub fn with_representation(mut self, basis: BasisLabel) -> Self {
        self.representation = basis;
        self
    }

    pub fn first_column(&self) -> AttackColumn {
        AttackColumn { c: [self.m[0][0], self.m[1][0], self.m[2][0]] }
    }

    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.m)
    }

    pub fn mixedness_residual(&self) -> f64 {
        mixedness_residual(&self.m)
    }
}

/// Largest spread of `|m_{(n+s) mod 3, n}|²` over `n`, for each cyclic offset `s`.
pub fn mixedness_residual(m: &[[Complex64; 3]; 3]) -> f64 {
    let mut worst = 0.0f64;
    for s in 0..3 {
        let v: Vec<f64> = (0..3).map(|n| m[(n + s) % 3][n].norm_sqr()).collect();
        let hi = v.iter().cloned().fold(f64::MIN, f64::max);
        let lo = v.iter().cloned().fold(f64::MAX, f64::min);
        worst = worst.max(hi - lo);
    }
    worst
}

/// How Eve's ancilla couples to the travel qutrit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AncillaModel {
    /// No ancilla: the attack is a plain unitary on the travel qutrit.
    None,
    /// One orthonormal ancilla pointer `|φ_nm⟩` per (input, output) branch, ancilla dimension 9.
    #[default]
    Branch,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlendedDetection {
    pub q_z: f64,
    pub q_x: f64,
    pub d: f64,
}

/// Per-basis single-round detection probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub d_z: f64,
    pub d_x: f64,
    pub d_v: f64,
    pub d_t: f64,
    pub blended: Option<BlendedDetection>,
}

impl DetectionReport {
    pub fn new(d_z: f64, d_x: f64, d_v: f64, d_t: f64) -> Result<Self> {
        for (what, value) in [("d_z", d_z), ("d_x", d_x), ("d_v", d_v), ("d_t", d_t)] {
            check_probability(what, value)?;
        }
        Ok(Self { d_z, d_x, d_v, d_t, blended: None })
    }

    pub fn get(&self, basis: BasisLabel) -> f64 {
        match basis {
            BasisLabel::Z => self.d_z,
            BasisLabel::X => self.d_x,
            BasisLabel::V => self.d_v,
            BasisLabel::T => self.d_t,
        }
    }

    /// Returns a copy carrying the z/x blend.
    pub fn blend(mut self, q_z: f64, q_x: f64) -> Result<Self> {
        let d = blended_detection(&self, q_z, q_x)?;
        self.blended = Some(BlendedDetection { q_z, q_x, d });
        Ok(self)
    }
}

pub(crate) fn check_probability(what: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange { what, value, range: "[0, 1]" })
    }
}

/// `d = q_z·d_z + q_x·d_x` for a control mode that uses the z and x bases.
pub fn blended_detection(report: &DetectionReport, q_z: f64, q_x: f64) -> Result<f64> {
    if !(q_z >= 0.0 && q_x >= 0.0 && (q_z + q_x - 1.0).abs() <= 1e-12) {
        return Err(Error::InvalidWeights(format!("q_z = {q_z}, q_x = {q_x} must be nonnegative and sum to 1")));
    }
    Ok(q_z * report.d_z + q_x * report.d_x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SQRT3;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn detection_examples() {
        assert_eq!(detection_from_column(&AttackColumn::from_moduli([1.0, 0.0, 0.0]).unwrap()), 0.0);
        let row1 = AttackColumn::unchecked([c(-0.910684, 0.0), c(0.244017, 0.0), c(-0.333333, 0.0)]);
        assert!((detection_from_column(&row1) - 0.170655).abs() < 5e-6);
        let sym = AttackColumn::unchecked([c(-0.953939, 0.1), c(0.0, -0.2), c(0.0, -0.2)]);
        assert!((detection_from_column(&sym) - 0.08).abs() < 5e-6);
    }

    #[test]
    fn symmetric_columns() {
        assert_eq!(symmetric_column(0.0).unwrap().moduli_sq(), [1.0, 0.0, 0.0]);
        let top = symmetric_column(2.0 / 3.0).unwrap();
        for z in top.values() {
            assert!((z.re - 1.0 / SQRT3).abs() < 1e-15);
        }
        let half = symmetric_column(0.5).unwrap();
        let m = half.moduli_sq();
        assert!((m[0] - 0.5).abs() < 1e-15 && (m[1] - 0.25).abs() < 1e-15 && (m[2] - 0.25).abs() < 1e-15);
        assert!((detection_from_column(&half) - 0.5).abs() < 1e-15);
        assert!(symmetric_column(0.7).is_err());
        assert!(symmetric_column(-0.1).is_err());
    }

    #[test]
    fn z_moduli_from_x_column() {
        let row1 = AttackColumn::unchecked([c(-0.910684, 0.0), c(0.244017, 0.0), c(-0.333333, 0.0)]);
        assert!((1.0 - column_z_from_x(&row1)[0] - 0.666667).abs() < 5e-6);
        let last = AttackColumn::unchecked([c(0.577350, 0.0), c(0.288675, 0.5), c(0.288675, 0.5)]);
        assert!((1.0 - column_z_from_x(&last)[0] - 0.222222).abs() < 5e-6);
        let z = column_z_from_x(&AttackColumn::from_moduli([1.0, 0.0, 0.0]).unwrap());
        for v in z {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn z_moduli_sum_to_one() {
        let raw = [c(0.6, 0.1), c(-0.3, 0.5), c(0.2, -0.5)];
        let n: f64 = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let col = AttackColumn::new(raw.map(|z| z / n)).unwrap();
        let s: f64 = column_z_from_x(&col).iter().sum();
        assert!((s - 1.0).abs() < 1e-9);
    }

    #[test]
    fn blended_examples() {
        let r = DetectionReport::new(0.0, 2.0 / 3.0, 0.0, 0.0).unwrap();
        assert_eq!(blended_detection(&r, 0.5, 0.5).unwrap(), 1.0 / 3.0);
        let r = DetectionReport::new(2.0 / 3.0, 2.0 / 3.0, 0.0, 0.0).unwrap();
        assert_eq!(blended_detection(&r, 0.5, 0.5).unwrap(), 2.0 / 3.0);
        assert!((blended_detection(&r, 0.2, 0.8).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        let r = DetectionReport::new(0.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(blended_detection(&r, 0.3, 0.7).unwrap(), 0.0);
        assert!(blended_detection(&r, 0.6, 0.6).is_err());
        assert!(blended_detection(&r, -0.5, 1.5).is_err());
        assert!(DetectionReport::new(1.2, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn operator_constraints() {
        let id = [[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]];
        assert!(AttackOperator::new(id, BasisLabel::Z).is_ok());
        // A swap of |0⟩ and |1⟩ is unitary but breaks the modulus pattern.
        let swap = [[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]];
        assert!(matches!(AttackOperator::new(swap, BasisLabel::Z), Err(Error::MixednessViolated(_))));
        let mut bad = id;
        bad[0][0] = c(0.9, 0.0);
        assert!(matches!(AttackOperator::new(bad, BasisLabel::Z), Err(Error::NotUnitary(_))));
    }
}
