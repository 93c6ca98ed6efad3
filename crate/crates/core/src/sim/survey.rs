//! Exact per-basis detection of random BRANCH attacks.
//!
//! Only the attack's own basis has a closed form. This survey shows what the other three bases
//! see for random columns, which is useful when asking whether V/T-representation attacks behave
//! like their Z/X counterparts.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{AttackIsometry, JointState};
use crate::algebra::BasisLabel;
use crate::attack::{AncillaModel, AttackSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveyRow {
    pub representation: BasisLabel,
    pub column: [[f64; 2]; 3],
    /// Closed-form detection in `representation`.
    pub analytic_d: f64,
    /// Exact detection in z, x, v, t.
    pub exact_d: [f64; 4],
}

/// Draws `samples` random unit columns in `representation` and evaluates each basis exactly.
pub fn detection_survey(samples: usize, seed: u64, representation: BasisLabel) -> Result<Vec<SurveyRow>> {
    if samples == 0 {
        return Err(Error::OutOfRange { what: "samples", value: 0.0, range: ">= 1" });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let weights: [f64; 3] = std::array::from_fn(|_| -rng.random::<f64>().max(f64::MIN_POSITIVE).ln());
            let total: f64 = weights.iter().sum();
            let column: [[f64; 2]; 3] = std::array::from_fn(|k| {
                let z = Complex64::from_polar((weights[k] / total).sqrt(), rng.random_range(0.0..std::f64::consts::TAU));
                [z.re, z.im]
            });
            let spec = AttackSpec::Column { basis: representation, values: column };
            let (_, analytic_d) = spec.analytic_detection()?;
            let state = AttackIsometry::from_spec(&spec, AncillaModel::Branch)?.apply(&JointState::prepared());
            let exact_d = BasisLabel::ALL.map(|b| state.detection_probability(b));
            Ok(SurveyRow { representation, column, analytic_d, exact_d })
        })
        .collect()
}
