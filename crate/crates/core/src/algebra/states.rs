//! Qutrit kets, the nine Bell states of a qutrit pair and Alice's coding unitaries.

use num_complex::Complex64;

use crate::error::{Error, Result, ALGEBRAIC_TOL};

pub const SQRT3: f64 = 1.732_050_807_568_877_2;
const HALF_SQRT3: f64 = 0.866_025_403_784_438_6;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `ω^k = e^{2πik/3}`, with the exponent reduced to `{0, 2π/3, 4π/3}`.
pub fn omega(k: i64) -> Complex64 {
    match k.rem_euclid(3) {
        0 => ONE,
        1 => Complex64::new(-0.5, HALF_SQRT3),
        _ => Complex64::new(-0.5, -HALF_SQRT3),
    }
}

pub(crate) fn check_index(i: usize) -> Result<()> {
    if i < 3 {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange(i))
    }
}

pub(crate) fn all_finite(values: &[Complex64]) -> bool {
    values.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub(crate) fn norm_sq(values: &[Complex64]) -> f64 {
    values.iter().map(|z| z.norm_sqr()).sum()
}

pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// A pure single-qutrit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ket3 {
    amp: [Complex64; 3],
}

impl Ket3 {
    pub fn new(amp: [Complex64; 3]) -> Result<Self> {
        if !all_finite(&amp) {
            return Err(Error::NotFinite("Ket3"));
        }
        let n = norm_sq(&amp);
        if (n - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(Error::NotNormalized { what: "Ket3", norm_sq: n });
        }
        Ok(Self { amp })
    }

    pub(crate) const fn from_raw(amp: [Complex64; 3]) -> Self {
        Self { amp }
    }

    /// Computational basis state `|k⟩`.
    pub fn basis(k: usize) -> Result<Self> {
        check_index(k)?;
        let mut amp = [ZERO; 3];
        amp[k] = ONE;
        Ok(Self { amp })
    }

    pub fn amplitudes(&self) -> &[Complex64; 3] {
        &self.amp
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Ket3) -> Complex64 {
        inner(&self.amp, &other.amp)
    }
}

/// A pure state of the (home, travel) qutrit pair; amplitude index is `3 * home + travel`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQutritKet {
    amp: [Complex64; 9],
}

impl TwoQutritKet {
    pub fn new(amp: [Complex64; 9]) -> Result<Self> {
        if !all_finite(&amp) {
            return Err(Error::NotFinite("TwoQutritKet"));
        }
        let n = norm_sq(&amp);
        if (n - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(Error::NotNormalized { what: "TwoQutritKet", norm_sq: n });
        }
        Ok(Self { amp })
    }

    pub fn amplitudes(&self) -> &[Complex64; 9] {
        &self.amp
    }

    pub fn amp(&self, home: usize, travel: usize) -> Complex64 {
        self.amp[3 * home + travel]
    }

    pub fn inner(&self, other: &TwoQutritKet) -> Complex64 {
        inner(&self.amp, &other.amp)
    }

    /// Applies `I ⊗ u`, acting on the travel qutrit only.
    pub fn apply_travel(&self, u: &Unitary3) -> TwoQutritKet {
        let mut out = [ZERO; 9];
        for home in 0..3 {
            for row in 0..3 {
                out[3 * home + row] = (0..3).map(|col| u.m[row][col] * self.amp[3 * home + col]).sum();
            }
        }
        TwoQutritKet { amp: out }
    }

    /// Reduced density matrix of the travel qutrit (home traced out).
    pub fn reduced_travel(&self) -> [[Complex64; 3]; 3] {
        let mut rho = [[ZERO; 3]; 3];
        for (r, row) in rho.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = (0..3).map(|h| self.amp(h, r) * self.amp(h, c).conj()).sum();
            }
        }
        rho
    }
}

/// A 3×3 unitary matrix, `m[row][col]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary3 {
    m: [[Complex64; 3]; 3],
}

impl Unitary3 {
    pub fn new(m: [[Complex64; 3]; 3]) -> Result<Self> {
        Self::with_tolerance(m, ALGEBRAIC_TOL)
    }

    /// Like [`Unitary3::new`] but accepts `m†m = I` within `tol`.
    pub fn with_tolerance(m: [[Complex64; 3]; 3], tol: f64) -> Result<Self> {
        if !m.iter().all(|row| all_finite(row)) {
            return Err(Error::NotFinite("Unitary3"));
        }
        let residual = unitarity_residual(&m);
        if residual > tol {
            return Err(Error::NotUnitary(residual));
        }
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        let mut m = [[ZERO; 3]; 3];
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = ONE;
        }
        Self { m }
    }

    pub fn matrix(&self) -> &[[Complex64; 3]; 3] {
        &self.m
    }

    pub fn apply(&self, ket: &Ket3) -> Ket3 {
        let mut out = [ZERO; 3];
        for (row, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|col| self.m[row][col] * ket.amp[col]).sum();
        }
        Ket3 { amp: out }
    }

    pub fn adjoint(&self) -> Unitary3 {
        let mut m = [[ZERO; 3]; 3];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = self.m[c][r].conj();
            }
        }
        Unitary3 { m }
    }
}

/// Largest elementwise deviation of `m†m` from the identity.
pub fn unitarity_residual(m: &[[Complex64; 3]; 3]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let g: Complex64 = (0..3).map(|k| m[k][i].conj() * m[k][j]).sum();
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((g - target).norm());
        }
    }
    worst
}

/// Bell state `|Ψ_ij⟩`: component `|k, k+j⟩` carries phase `ω^{ik}` and weight `1/√3`.
pub fn bell_state(i: usize, j: usize) -> Result<TwoQutritKet> {
    check_index(i)?;
    check_index(j)?;
    let mut amp = [ZERO; 9];
    for k in 0..3 {
        amp[3 * k + (k + j) % 3] = omega((i * k) as i64) / SQRT3;
    }
    Ok(TwoQutritKet { amp })
}

/// Coding unitary `U_ij = Σ_k ω^{ik} |k+j⟩⟨k|`, mapping `|Ψ_00⟩` to `|Ψ_ij⟩` on the travel qutrit.
pub fn coding_unitary(i: usize, j: usize) -> Result<Unitary3> {
    check_index(i)?;
    check_index(j)?;
    let mut m = [[ZERO; 3]; 3];
    for k in 0..3 {
        m[(k + j) % 3][k] = omega((i * k) as i64);
    }
    Ok(Unitary3 { m })
}
