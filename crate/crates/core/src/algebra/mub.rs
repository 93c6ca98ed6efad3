//! The four mutually unbiased qutrit bases and the control-mode correlation rules.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::states::{bell_state, omega, Ket3, ONE, SQRT3};
use crate::error::{Error, Result, ALGEBRAIC_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisLabel {
    Z,
    X,
    V,
    T,
}

impl BasisLabel {
    pub const ALL: [BasisLabel; 4] = [BasisLabel::Z, BasisLabel::X, BasisLabel::V, BasisLabel::T];

    /// The basis Bob must use on the home qutrit when Alice measured in `self`.
    pub fn partner(self) -> BasisLabel {
        match self {
            BasisLabel::Z => BasisLabel::Z,
            BasisLabel::X => BasisLabel::X,
            BasisLabel::V => BasisLabel::T,
            BasisLabel::T => BasisLabel::V,
        }
    }

    /// Bob's certain result for Alice's result `alice` on an undisturbed `|Ψ_00⟩`.
    pub fn expected_bob_result(self, alice: usize) -> usize {
        match self {
            BasisLabel::X => (3 - alice) % 3,
            _ => alice,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BasisLabel::Z => "z",
            BasisLabel::X => "x",
            BasisLabel::V => "v",
            BasisLabel::T => "t",
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BasisLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(BasisLabel::Z),
            "x" => Ok(BasisLabel::X),
            "v" => Ok(BasisLabel::V),
            "t" => Ok(BasisLabel::T),
            _ => Err(Error::UnknownBasis(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MubBasis {
    pub label: BasisLabel,
    pub vectors: [Ket3; 3],
}

impl MubBasis {
    /// Component `k` of vector `n`.
    pub fn component(&self, n: usize, k: usize) -> Complex64 {
        self.vectors[n].amplitudes()[k]
    }

    /// Coordinates `⟨b_n|ψ⟩` of a travel amplitude vector in this basis.
    pub fn coordinates(&self, psi: &[Complex64; 3]) -> [Complex64; 3] {
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for (n, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|k| self.component(n, k).conj() * psi[k]).sum();
        }
        out
    }
}

pub fn mub(label: BasisLabel) -> MubBasis {
    let s = 1.0 / SQRT3;
    let vectors = match label {
        BasisLabel::Z => {
            let e = |k: usize| {
                let mut a = [Complex64::new(0.0, 0.0); 3];
                a[k] = ONE;
                Ket3::from_raw(a)
            };
            [e(0), e(1), e(2)]
        }
        // |x_n⟩ = Σ_k ω^{nk}|k⟩/√3
        BasisLabel::X => std::array::from_fn(|n| {
            Ket3::from_raw(std::array::from_fn(|k| omega((n * k) as i64) * s))
        }),
        // |v_n⟩ carries ω on component n, |t_n⟩ carries ω² = e^{-2πi/3}
        BasisLabel::V => std::array::from_fn(|n| {
            Ket3::from_raw(std::array::from_fn(|k| if k == n { omega(1) * s } else { ONE * s }))
        }),
        BasisLabel::T => std::array::from_fn(|n| {
            Ket3::from_raw(std::array::from_fn(|k| if k == n { omega(2) * s } else { ONE * s }))
        }),
    };
    MubBasis { label, vectors }
}

/// Decomposition of `|Ψ_00⟩` when Alice measures the travel qutrit in `alice_basis`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisPairDecomposition {
    pub bob_basis: BasisLabel,
    /// `(alice_vector_index, bob_vector_index, amplitude)`.
    pub terms: Vec<(usize, usize, Complex64)>,
}

/// Expands `|Ψ_00⟩` in (Bob partner basis on home) ⊗ (Alice basis on travel), dropping zero terms.
pub fn psi00_in_basis_pair(alice_basis: BasisLabel) -> BasisPairDecomposition {
    let psi = bell_state(0, 0).expect("indices in range");
    let bob_basis = alice_basis.partner();
    let alice = mub(alice_basis);
    let bob = mub(bob_basis);
    let mut terms = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            let mut amp = Complex64::new(0.0, 0.0);
            for h in 0..3 {
                for t in 0..3 {
                    amp += bob.component(b, h).conj() * alice.component(a, t).conj() * psi.amp(h, t);
                }
            }
            if amp.norm() > ALGEBRAIC_TOL {
                terms.push((a, b, amp));
            }
        }
    }
    BasisPairDecomposition { bob_basis, terms }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_basis_is_computational() {
        let z = mub(BasisLabel::Z);
        for n in 0..3 {
            assert_eq!(z.vectors[n], Ket3::basis(n).unwrap());
        }
    }

    #[test]
    fn bases_are_orthonormal_and_mutually_unbiased() {
        for la in BasisLabel::ALL {
            let a = mub(la);
            for lb in BasisLabel::ALL {
                let b = mub(lb);
                for i in 0..3 {
                    for j in 0..3 {
                        let p = a.vectors[i].inner(&b.vectors[j]).norm_sqr();
                        let expected = if la == lb {
                            if i == j { 1.0 } else { 0.0 }
                        } else {
                            1.0 / 3.0
                        };
                        assert!((p - expected).abs() < ALGEBRAIC_TOL, "{la}{i} vs {lb}{j}: {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn v0_t0_overlap() {
        // ⟨v_0|t_0⟩ = (e^{2πi/3} + 2)/3
        let v = mub(BasisLabel::V);
        let t = mub(BasisLabel::T);
        let ov = v.vectors[0].inner(&t.vectors[0]);
        let expected = (omega(1) + 2.0) / 3.0;
        assert!((ov - expected).norm() < ALGEBRAIC_TOL);
        assert!((ov.norm_sqr() - 1.0 / 3.0).abs() < ALGEBRAIC_TOL);
    }

    fn pairs(label: BasisLabel) -> (BasisLabel, Vec<(usize, usize)>) {
        let d = psi00_in_basis_pair(label);
        for &(_, _, amp) in &d.terms {
            assert!((amp - ONE / SQRT3).norm() < ALGEBRAIC_TOL);
        }
        (d.bob_basis, d.terms.iter().map(|&(a, b, _)| (a, b)).collect())
    }

    #[test]
    fn correlation_rules() {
        assert_eq!(pairs(BasisLabel::Z), (BasisLabel::Z, vec![(0, 0), (1, 1), (2, 2)]));
        assert_eq!(pairs(BasisLabel::X), (BasisLabel::X, vec![(0, 0), (1, 2), (2, 1)]));
        assert_eq!(pairs(BasisLabel::V), (BasisLabel::T, vec![(0, 0), (1, 1), (2, 2)]));
        assert_eq!(pairs(BasisLabel::T), (BasisLabel::V, vec![(0, 0), (1, 1), (2, 2)]));
    }

    #[test]
    fn expected_results_agree_with_decomposition() {
        for label in BasisLabel::ALL {
            for (a, b, _) in psi00_in_basis_pair(label).terms {
                assert_eq!(label.expected_bob_result(a), b);
            }
        }
    }

    #[test]
    fn parses_labels() {
        assert_eq!("X".parse::<BasisLabel>().unwrap(), BasisLabel::X);
        assert!(matches!("w".parse::<BasisLabel>(), Err(Error::UnknownBasis(_))));
    }
}
