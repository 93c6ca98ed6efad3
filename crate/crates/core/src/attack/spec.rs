//! JSON attack specifications.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{detection_from_column, symmetric_column, AttackColumn};
use crate::algebra::{BasisLabel, Unitary3};
use crate::error::{Error, Result, ATTACK_TOL};

fn z_basis() -> BasisLabel {
    BasisLabel::Z
}

/// One of
///
/// ```json
/// {"type": "none"}
/// {"type": "symmetric", "d_z": 0.5}
/// {"type": "column", "basis": "x", "values": [[re, im], [re, im], [re, im]]}
/// {"type": "unitary", "basis": "z", "matrix": [[[re, im], ...], ...]}
/// ```
///
/// `unitary` gives a full matrix (rows of `[re, im]` pairs) for attacks that are not described
/// by a first column alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum AttackSpec {
    None,
    Symmetric {
        d_z: f64,
    },
    Column {
        basis: BasisLabel,
        values: [[f64; 2]; 3],
    },
    Unitary {
        #[serde(default = "z_basis")]
        basis: BasisLabel,
        matrix: [[[f64; 2]; 3]; 3],
    },
}

fn to_complex(v: &[f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

impl AttackSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: AttackSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            AttackSpec::None => Ok(()),
            AttackSpec::Symmetric { d_z } => symmetric_column(*d_z).map(|_| ()),
            AttackSpec::Column { values, .. } => AttackColumn::new(values.map(|v| to_complex(&v))).map(|_| ()),
            AttackSpec::Unitary { .. } => self.unitary().map(|_| ()),
        }
        .map_err(|e| Error::InvalidAttack(e.to_string()))
    }

    /// The basis the attack parameters are written in.
    pub fn basis(&self) -> BasisLabel {
        match self {
            AttackSpec::None | AttackSpec::Symmetric { .. } => BasisLabel::Z,
            AttackSpec::Column { basis, .. } | AttackSpec::Unitary { basis, .. } => *basis,
        }
    }

    /// First column of the attack in [`AttackSpec::basis`].
    pub fn column(&self) -> Result<AttackColumn> {
        match self {
            AttackSpec::None => AttackColumn::from_moduli([1.0, 0.0, 0.0]),
            AttackSpec::Symmetric { d_z } => symmetric_column(*d_z),
            AttackSpec::Column { values, .. } => AttackColumn::new(values.map(|v| to_complex(&v))),
            AttackSpec::Unitary { .. } => {
                let m = self.unitary()?;
                let m = m.matrix();
                AttackColumn::new([m[0][0], m[1][0], m[2][0]])
            }
        }
    }

    /// Full matrix for `unitary` specs.
    pub fn unitary(&self) -> Result<Unitary3> {
        match self {
            AttackSpec::Unitary { matrix, .. } => {
                Unitary3::with_tolerance(matrix.map(|row| row.map(|v| to_complex(&v))), ATTACK_TOL)
            }
            AttackSpec::None => Ok(Unitary3::identity()),
            _ => Err(Error::InvalidAttack("attack is not given as a full matrix".into())),
        }
    }

    /// Single-round detection probability in the attack's own basis from its first column.
    pub fn analytic_detection(&self) -> Result<(BasisLabel, f64)> {
        Ok((self.basis(), detection_from_column(&self.column()?)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_form() {
        assert_eq!(AttackSpec::from_json(r#"{"type":"none"}"#).unwrap(), AttackSpec::None);
        let s = AttackSpec::from_json(r#"{"type":"symmetric","d_z":0.5}"#).unwrap();
        let (b, d) = s.analytic_detection().unwrap();
        assert_eq!(b, BasisLabel::Z);
        assert!((d - 0.5).abs() < 1e-15);
        let s = AttackSpec::from_json(r#"{"type":"column","basis":"x","values":[[0.6,0],[0,0.8],[0,0]]}"#).unwrap();
        let (b, d) = s.analytic_detection().unwrap();
        assert_eq!(b, BasisLabel::X);
        assert!((d - 0.64).abs() < 1e-12);
        let s = AttackSpec::from_json(
            r#"{"type":"unitary","matrix":[[[0,0],[1,0],[0,0]],[[1,0],[0,0],[0,0]],[[0,0],[0,0],[1,0]]]}"#,
        )
        .unwrap();
        assert_eq!(s.basis(), BasisLabel::Z);
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(AttackSpec::from_json(r#"{"type":"symmetric","d_z":0.9}"#).is_err());
        assert!(AttackSpec::from_json(r#"{"type":"column","basis":"x","values":[[1,0],[1,0],[0,0]]}"#).is_err());
        assert!(AttackSpec::from_json(r#"{"type":"column","basis":"w","values":[[1,0],[0,0],[0,0]]}"#).is_err());
        assert!(AttackSpec::from_json(r#"{"type":"symmetric","d_z":0.5,"extra":1}"#).is_err());
        assert!(AttackSpec::from_json(r#"{"type":"bogus"}"#).is_err());
        assert!(AttackSpec::from_json(
            r#"{"type":"unitary","matrix":[[[1,0],[1,0],[0,0]],[[1,0],[0,0],[0,0]],[[0,0],[0,0],[1,0]]]}"#
        )
        .is_err());
    }
}
