//! Eve's attack as an operation on the joint state.

use num_complex::Complex64;

use super::state::{index, JointState, ANCILLA_DIM, JOINT_DIM};
use crate::algebra::{mub, MubBasis};
use crate::attack::{circulant_from_column, complete_circulant, AncillaModel, AttackSpec};
use crate::error::Result;

/// The attack matrix `A` (columns are images of the basis vectors of `basis`) plus the way it
/// couples to the ancilla.
///
/// - [`AncillaModel::None`]: travel evolves by `W A W†`, where `W` holds the basis vectors.
/// - [`AncillaModel::Branch`]: `|b_n⟩|0⟩ ↦ Σ_m A_mn |b_m⟩|φ_nm⟩` with `|φ_nm⟩ = |3n + m⟩`.
///   The pointers are orthonormal, so only column norms of `A` matter for this to be an
///   isometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackIsometry {
    basis: MubBasis,
    matrix: [[Complex64; 3]; 3],
    model: AncillaModel,
    active: bool,
}

impl AttackIsometry {
    pub fn passive() -> Self {
        let mut matrix = [[Complex64::new(0.0, 0.0); 3]; 3];
        for (k, row) in matrix.iter_mut().enumerate() {
            row[k] = Complex64::new(1.0, 0.0);
        }
        Self { basis: mub(crate::algebra::BasisLabel::Z), matrix, model: AncillaModel::None, active: false }
    }

    /// Builds the operation for `spec`.
    ///
    /// Column specs are completed by cyclic shifts. Under [`AncillaModel::None`] the completion
    /// must be unitary, so the circulant unitary completion is used and may fail.
    pub fn from_spec(spec: &AttackSpec, model: AncillaModel) -> Result<Self> {
        if matches!(spec, AttackSpec::None) {
            return Ok(Self::passive());
        }
        let basis = mub(spec.basis());
        let matrix = match spec {
            AttackSpec::Unitary { .. } => *spec.unitary()?.matrix(),
            _ => {
                let col = spec.column()?;
                match model {
                    AncillaModel::None => *complete_circulant(&col)?.matrix(),
                    AncillaModel::Branch => circulant_from_column(col.values()),
                }
            }
        };
        Ok(Self { basis, matrix, model, active: true })
    }

    pub fn matrix(&self) -> &[[Complex64; 3]; 3] {
        &self.matrix
    }

    pub fn model(&self) -> AncillaModel {
        self.model
    }

    /// Applies the attack to a state whose ancilla is still in `|0⟩`.
    pub fn apply(&self, state: &JointState) -> JointState {
        if !self.active {
            return *state;
        }
        match self.model {
            AncillaModel::None => state.apply_travel(&self.computational_matrix()),
            AncillaModel::Branch => self.apply_branch(state),
        }
    }

    /// `W A W†`.
    fn computational_matrix(&self) -> [[Complex64; 3]; 3] {
        let w = |k: usize, n: usize| self.basis.component(n, k);
        std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                let mut z = Complex64::new(0.0, 0.0);
                for m in 0..3 {
                    for n in 0..3 {
                        z += w(r, m) * self.matrix[m][n] * w(c, n).conj();
                    }
                }
                z
            })
        })
    }

    fn apply_branch(&self, state: &JointState) -> JointState {
        let mut out = [Complex64::new(0.0, 0.0); JOINT_DIM];
        for h in 0..3 {
            let travel: [Complex64; 3] = std::array::from_fn(|t| state.amp(h, t, 0));
            let coords = self.basis.coordinates(&travel);
            for (n, beta) in coords.iter().enumerate() {
                for m in 0..3 {
                    let weight = beta * self.matrix[m][n];
                    let pointer = 3 * n + m;
                    debug_assert!(pointer < ANCILLA_DIM);
                    for t in 0..3 {
                        out[index(h, t, pointer)] += weight * self.basis.component(m, t);
                    }
                }
            }
        }
        JointState::from_amplitudes(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BasisLabel;

    #[test]
    fn branch_attack_preserves_norm_and_mixedness() {
        for spec in [
            AttackSpec::Symmetric { d_z: 0.3 },
            AttackSpec::Column { basis: BasisLabel::X, values: [[-0.6, 0.0], [0.0, 0.48], [0.64, 0.0]] },
        ] {
            let iso = AttackIsometry::from_spec(&spec, AncillaModel::Branch).unwrap();
            let s = iso.apply(&JointState::prepared());
            assert!((s.norm_sq() - 1.0).abs() < 1e-10);
            let rho = s.reduced_travel();
            for k in 0..3 {
                assert!((rho[k][k].re - 1.0 / 3.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn own_basis_detection_is_one_minus_diagonal_weight() {
        let spec = AttackSpec::Column { basis: BasisLabel::X, values: [[-0.6, 0.0], [0.0, 0.48], [0.64, 0.0]] };
        for model in [AncillaModel::Branch, AncillaModel::None] {
            let Ok(iso) = AttackIsometry::from_spec(&spec, model) else { continue };
            let s = iso.apply(&JointState::prepared());
            assert!((s.detection_probability(BasisLabel::X) - 0.64).abs() < 1e-12, "{model:?}");
        }
    }

    #[test]
    fn none_model_matches_unitary_on_travel() {
        let spec = AttackSpec::Symmetric { d_z: 0.5 };
        let iso = AttackIsometry::from_spec(&spec, AncillaModel::None).unwrap();
        let s = iso.apply(&JointState::prepared());
        assert!((s.norm_sq() - 1.0).abs() < 1e-12);
        assert!((s.detection_probability(BasisLabel::Z) - 0.5).abs() < 1e-9);
        // No ancilla entanglement: everything stays in ancilla slot 0.
        for h in 0..3 {
            for t in 0..3 {
                for a in 1..ANCILLA_DIM {
                    assert_eq!(s.amp(h, t, a), Complex64::new(0.0, 0.0));
                }
            }
        }
    }
}
