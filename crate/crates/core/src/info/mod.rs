//! Eve's Holevo information about Alice's coding operations.
//!
//! After the attack and Alice's encoding, the travel-qutrit/ancilla system is in the mixture
//! `ρ = Σ p_ij |ψ_ij⟩⟨ψ_ij|`. Written in the basis `|t, φ_0k⟩` (index `3k + t`), the state
//! `|ψ_ij⟩` has amplitude `c_k ω^{ik}` on `|k + j, φ_0k⟩`. States sharing the shift `j` live on
//! a common three-dimensional subspace, so `ρ` splits into three blocks, each `D C D†` with
//! `D = diag(c_k)` and `C` circulant; its characteristic polynomial is the cubic computed by
//! [`cubic_coefficients`]. Both that route and a direct Jacobi diagonalization of the assembled
//! 9×9 matrix are available.

mod freq;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{omega, solve_cubic, Hermitian9};
use crate::attack::{symmetric_column, AttackColumn};
use crate::error::{Error, Result, ATTACK_TOL, ITERATIVE_TOL};

pub use freq::{table1, FrequencyTable};

/// `log₂ 3`: bits per trit.
pub const BITS_PER_TRIT: f64 = 1.584_962_500_721_156_3;

/// Number of points of the default information curve grid on `[0, 2/3]`.
pub const DEFAULT_CURVE_POINTS: usize = 67;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InfoUnit {
    #[default]
    Trit,
    Bit,
}

impl FromStr for InfoUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trit" => Ok(InfoUnit::Trit),
            "bit" => Ok(InfoUnit::Bit),
            _ => Err(Error::InvalidConfig(format!("unknown unit {s:?} (expected trit or bit)"))),
        }
    }
}

impl fmt::Display for InfoUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InfoUnit::Trit => "trit",
            InfoUnit::Bit => "bit",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfoResult {
    pub value: f64,
    pub unit: InfoUnit,
}

impl InfoResult {
    pub fn trits(value: f64) -> Self {
        Self { value, unit: InfoUnit::Trit }
    }

    pub fn to(self, unit: InfoUnit) -> Self {
        let value = match (self.unit, unit) {
            (InfoUnit::Trit, InfoUnit::Bit) => self.value * BITS_PER_TRIT,
            (InfoUnit::Bit, InfoUnit::Trit) => self.value / BITS_PER_TRIT,
            _ => self.value,
        };
        Self { value, unit }
    }
}

/// Density operator of the travel-qutrit/ancilla system in the `|t, φ_0k⟩` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix9 {
    h: Hermitian9,
}

impl DensityMatrix9 {
    /// Checks unit trace and positivity within `1e-10`.
    pub fn new(h: Hermitian9) -> Result<Self> {
        let tr = h.trace();
        if (tr - 1.0).abs() > ITERATIVE_TOL {
            return Err(Error::OutOfRange { what: "trace", value: tr, range: "1 ± 1e-10" });
        }
        let ev = h.eigenvalues()?;
        if let Some(&bad) = ev.iter().find(|&&v| v < -ITERATIVE_TOL) {
            return Err(Error::EigenvalueOutOfRange(bad));
        }
        Ok(Self { h })
    }

    pub fn hermitian(&self) -> &Hermitian9 {
        &self.h
    }

    pub fn matrix(&self) -> &[[Complex64; 9]; 9] {
        self.h.matrix()
    }

    /// Jacobi eigenvalues.
    pub fn eigenvalues(&self) -> Result<EigenvalueSet> {
        EigenvalueSet::new(self.h.eigenvalues()?)
    }
}

/// Nine eigenvalues of a density operator, descending.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenvalueSet {
    values: [f64; 9],
}

impl EigenvalueSet {
    pub fn new(mut values: [f64; 9]) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|&&v| !(-ITERATIVE_TOL..=1.0 + ITERATIVE_TOL).contains(&v)) {
            return Err(Error::EigenvalueOutOfRange(bad));
        }
        let total: f64 = values.iter().sum();
        if (total - 1.0).abs() > ATTACK_TOL {
            return Err(Error::OutOfRange { what: "eigenvalue sum", value: total, range: "1 ± 1e-9" });
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64; 9] {
        &self.values
    }

    /// `−Σ λ log₃ λ`, with `0·log 0 = 0` and tiny negative values clamped to zero.
    pub fn entropy_trits(&self) -> f64 {
        shannon_trits(&self.values)
    }
}

fn shannon_trits(values: &[f64]) -> f64 {
    let s: f64 = values
        .iter()
        .map(|&v| v.max(0.0))
        .filter(|&v| v > 0.0)
        .map(|v| -v * v.ln())
        .sum();
    (s / 3f64.ln()).max(0.0)
}

/// Assembles `ρ = Σ p_ij |ψ_ij⟩⟨ψ_ij|` for Bob's `|0⟩` branch.
pub fn assemble_rho(col: &AttackColumn, freq: &FrequencyTable) -> Result<DensityMatrix9> {
    let c = col.values();
    let mut m = [[Complex64::new(0.0, 0.0); 9]; 9];
    for i in 0..3 {
        for j in 0..3 {
            let p = freq.get(i, j);
            if p == 0.0 {
                continue;
            }
            let mut psi = [Complex64::new(0.0, 0.0); 9];
            for (k, ck) in c.iter().enumerate() {
                psi[3 * k + (k + j) % 3] = ck * omega((i * k) as i64);
            }
            for r in 0..9 {
                for s in 0..9 {
                    m[r][s] += psi[r] * psi[s].conj() * p;
                }
            }
        }
    }
    DensityMatrix9::new(Hermitian9::new(m)?)
}

/// Coefficients `(c2, c1, c0)` of `λ³ + c2 λ² + c1 λ + c0` for one frequency group, given the
/// squared column moduli `(A, B, C)`.
pub fn cubic_coefficients(col_moduli: [f64; 3], group: [f64; 3]) -> Result<(f64, f64, f64)> {
    let [a, b, c] = col_moduli;
    if ((a + b + c) - 1.0).abs() > ATTACK_TOL {
        return Err(Error::NotNormalized { what: "column moduli", norm_sq: a + b + c });
    }
    if group.iter().any(|&p| p < 0.0 || !p.is_finite()) {
        return Err(Error::InvalidFrequencies(format!("group {group:?} has a negative entry")));
    }
    let [pa, pb, pc] = group;
    let c2 = -(pa + pb + pc);
    let c1 = 3.0 * (a * b + a * c + b * c) * (pa * pb + pa * pc + pb * pc);
    let c0 = -27.0 * a * b * c * pa * pb * pc;
    Ok((c2, c1, c0))
}

/// The nine roots of the three factor cubics.
pub fn cubic_eigenvalues(col_moduli: [f64; 3], freq: &FrequencyTable) -> Result<EigenvalueSet> {
    let mut values = [0.0; 9];
    for j in 0..3 {
        let (c2, c1, c0) = cubic_coefficients(col_moduli, freq.group(j))?;
        let roots = solve_cubic(c2, c1, c0)?;
        values[3 * j..3 * j + 3].copy_from_slice(&roots);
    }
    EigenvalueSet::new(values)
}

/// Holevo quantity `S(ρ)` from the factor cubics.
pub fn holevo_information(col: &AttackColumn, freq: &FrequencyTable, unit: InfoUnit) -> Result<InfoResult> {
    let ev = cubic_eigenvalues(col.moduli_sq(), freq)?;
    Ok(InfoResult::trits(ev.entropy_trits()).to(unit))
}

/// Holevo quantity from the Jacobi eigenvalues of the explicitly assembled `ρ`.
pub fn holevo_information_direct(col: &AttackColumn, freq: &FrequencyTable, unit: InfoUnit) -> Result<InfoResult> {
    let ev = assemble_rho(col, freq)?.eigenvalues()?;
    Ok(InfoResult::trits(ev.entropy_trits()).to(unit))
}

/// Shannon entropy `H = −Σ p_ij log₃ p_ij` of the bigram source.
pub fn source_entropy(freq: &FrequencyTable, unit: InfoUnit) -> InfoResult {
    InfoResult::trits(shannon_trits(&freq.flat())).to(unit)
}

/// Entropy of the three group sums, the Holevo quantity of an attack that never disturbs.
pub fn group_sum_entropy(freq: &FrequencyTable, unit: InfoUnit) -> InfoResult {
    InfoResult::trits(shannon_trits(&freq.group_sums())).to(unit)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub d_z: f64,
    pub i0_trits: f64,
}

impl CurvePoint {
    pub fn i0_bits(&self) -> f64 {
        self.i0_trits * BITS_PER_TRIT
    }
}

/// `points` evenly spaced detection probabilities on `[0, 2/3]`, endpoints exact.
pub fn curve_grid(points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::OutOfRange { what: "points", value: points as f64, range: ">= 2" });
    }
    let last = points - 1;
    Ok((0..points)
        .map(|k| if k == last { 2.0 / 3.0 } else { 2.0 * k as f64 / (3.0 * last as f64) })
        .collect())
}

/// Eve's information along the symmetric attack family.
pub fn info_curve(freq: &FrequencyTable, d_values: &[f64]) -> Result<Vec<CurvePoint>> {
    d_values
        .iter()
        .map(|&d| {
            let col = symmetric_column(d)?;
            let i0 = holevo_information(&col, freq, InfoUnit::Trit)?;
            Ok(CurvePoint { d_z: d, i0_trits: i0.value })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undisturbed_attack_lives_on_one_block() {
        let col = AttackColumn::from_moduli([1.0, 0.0, 0.0]).unwrap();
        let rho = assemble_rho(&col, &table1()[1].0).unwrap();
        for r in 0..9 {
            for s in 0..9 {
                if r >= 3 || s >= 3 {
                    assert_eq!(rho.matrix()[r][s], Complex64::new(0.0, 0.0));
                }
            }
        }
        let ev = rho.eigenvalues().unwrap();
        assert!(ev.values()[3..].iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn uniform_at_two_thirds_is_maximally_mixed() {
        let col = symmetric_column(2.0 / 3.0).unwrap();
        let rho = assemble_rho(&col, &FrequencyTable::uniform()).unwrap();
        for v in rho.eigenvalues().unwrap().values() {
            assert!((v - 1.0 / 9.0).abs() < 1e-12);
        }
    }

    #[test]
    fn symmetric_coefficients_specialize() {
        let d = 0.37;
        let col = symmetric_column(d).unwrap();
        let group = [0.2, 0.1, 0.05];
        let (c2, c1, c0) = cubic_coefficients(col.moduli_sq(), group).unwrap();
        let e2 = 0.2 * 0.1 + 0.2 * 0.05 + 0.1 * 0.05;
        let e3 = 0.2 * 0.1 * 0.05;
        assert!((c2 + 0.35).abs() < 1e-15);
        assert!((c1 - 3.0 * (d - 0.75 * d * d) * e2).abs() < 1e-15);
        assert!((c0 + 27.0 / 4.0 * (d * d - d * d * d) * e3).abs() < 1e-15);
    }

    #[test]
    fn uniform_group_at_two_thirds() {
        let col = symmetric_column(2.0 / 3.0).unwrap();
        let (c2, c1, c0) = cubic_coefficients(col.moduli_sq(), [1.0 / 9.0; 3]).unwrap();
        assert!((c2 + 1.0 / 3.0).abs() < 1e-15);
        assert!((c1 - 1.0 / 27.0).abs() < 1e-15);
        assert!((c0 + 1.0 / 729.0).abs() < 1e-15);
    }

    #[test]
    fn zero_frequency_gives_zero_root() {
        let col = symmetric_column(0.4).unwrap();
        let (c2, c1, c0) = cubic_coefficients(col.moduli_sq(), [0.3, 0.0, 0.2]).unwrap();
        assert_eq!(c0, 0.0);
        let roots = solve_cubic(c2, c1, c0).unwrap();
        assert!(roots.iter().any(|r| r.abs() < 1e-15));
    }

    #[test]
    fn holevo_examples() {
        let uniform = FrequencyTable::uniform();
        let top = holevo_information(&symmetric_column(2.0 / 3.0).unwrap(), &uniform, InfoUnit::Trit).unwrap();
        assert!((top.value - 2.0).abs() < 1e-9);
        let bottom = holevo_information(&symmetric_column(0.0).unwrap(), &uniform, InfoUnit::Trit).unwrap();
        assert!((bottom.value - 1.0).abs() < 1e-9);
        let row5 = table1()[4].0;
        let h5 = InfoResult::trits(shannon_trits(&[2.0 / 3.0, 1.0 / 3.0])).value;
        for d in [0.0, 0.1, 0.3, 0.5, 2.0 / 3.0] {
            let i0 = holevo_information(&symmetric_column(d).unwrap(), &row5, InfoUnit::Trit).unwrap();
            assert!((i0.value - h5).abs() < 1e-9);
            assert!((i0.value - 0.579).abs() < 5e-4);
        }
    }

    #[test]
    fn source_entropies_match_published() {
        for (t, h) in table1() {
            assert!((source_entropy(&t, InfoUnit::Trit).value - h).abs() < 1e-3);
        }
    }

    #[test]
    fn bit_conversion_is_one_multiplication() {
        let r = source_entropy(&FrequencyTable::uniform(), InfoUnit::Trit);
        let b = source_entropy(&FrequencyTable::uniform(), InfoUnit::Bit);
        assert_eq!(b.value, r.value * BITS_PER_TRIT);
        assert!((BITS_PER_TRIT - 3f64.log2()).abs() < 4e-16);
    }

    #[test]
    fn curve_grid_endpoints() {
        let g = curve_grid(DEFAULT_CURVE_POINTS).unwrap();
        assert_eq!(g.len(), 67);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[66], 2.0 / 3.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert!(curve_grid(1).is_err());
    }

    #[test]
    fn curve_for_row3_ends_at_source_entropy() {
        let pts = info_curve(&table1()[2].0, &[2.0 / 3.0]).unwrap();
        assert!((pts[0].i0_trits - 1.439).abs() < 5e-4);
    }

    #[test]
    fn eigenvalue_set_rejects_out_of_range() {
        let mut v = [0.0; 9];
        v[0] = 1.5;
        v[1] = -0.5;
        assert!(matches!(EigenvalueSet::new(v), Err(Error::EigenvalueOutOfRange(_))));
    }
}
