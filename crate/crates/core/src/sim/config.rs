use serde::{Deserialize, Serialize};

use crate::algebra::BasisLabel;
use crate::attack::{AncillaModel, AttackSpec};
use crate::error::{Error, Result, ALGEBRAIC_TOL};
use crate::info::FrequencyTable;

/// Probabilities with which a control round uses each basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisWeights {
    #[serde(default)]
    pub z: f64,
    #[serde(default)]
    pub x: f64,
    #[serde(default)]
    pub v: f64,
    #[serde(default)]
    pub t: f64,
}

impl Default for BasisWeights {
    fn default() -> Self {
        Self { z: 0.5, x: 0.5, v: 0.0, t: 0.0 }
    }
}

impl BasisWeights {
    pub fn only(basis: BasisLabel) -> Self {
        let mut w = Self { z: 0.0, x: 0.0, v: 0.0, t: 0.0 };
        match basis {
            BasisLabel::Z => w.z = 1.0,
            BasisLabel::X => w.x = 1.0,
            BasisLabel::V => w.v = 1.0,
            BasisLabel::T => w.t = 1.0,
        }
        w
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.z, self.x, self.v, self.t]
    }

    pub fn get(&self, basis: BasisLabel) -> f64 {
        self.as_array()[basis.index()]
    }

    pub fn validate(&self) -> Result<()> {
        let w = self.as_array();
        if w.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidWeights(format!("weights must be finite and non-negative, got {w:?}")));
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(Error::InvalidWeights(format!("weights sum to {sum}, expected 1")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolConfig {
    /// Probability of a control round.
    pub q: f64,
    #[serde(default)]
    pub basis_weights: BasisWeights,
    pub cycles: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "FrequencyTable::uniform")]
    pub freq: FrequencyTable,
    #[serde(default = "no_attack")]
    pub attack: AttackSpec,
    #[serde(default)]
    pub ancilla: AncillaModel,
}

fn no_attack() -> AttackSpec {
    AttackSpec::None
}

impl ProtocolConfig {
    pub fn new(q: f64, cycles: u64, seed: u64) -> Self {
        Self {
            q,
            basis_weights: BasisWeights::default(),
            cycles,
            seed,
            freq: FrequencyTable::uniform(),
            attack: AttackSpec::None,
            ancilla: AncillaModel::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.q) {
            return Err(Error::OutOfRange { what: "q", value: self.q, range: "[0, 1]" });
        }
        if self.cycles == 0 {
            return Err(Error::InvalidConfig("cycles must be at least 1".into()));
        }
        self.basis_weights.validate()?;
        FrequencyTable::new(*self.freq.as_array())?;
        self.attack.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_json_uses_defaults() {
        let cfg = ProtocolConfig::from_json(r#"{"q": 0.5, "cycles": 10}"#).unwrap();
        assert_eq!(cfg.basis_weights, BasisWeights::default());
        assert_eq!(cfg.attack, AttackSpec::None);
        assert_eq!(cfg.ancilla, AncillaModel::Branch);
    }

    #[test]
    fn rejects_bad_fields() {
        for text in [
            r#"{"q": 1.5, "cycles": 10}"#,
            r#"{"q": 0.5, "cycles": 0}"#,
            r#"{"q": 0.5, "cycles": 10, "basis_weights": {"z": 0.7}}"#,
            r#"{"q": 0.5, "cycles": 10, "colour": 1}"#,
            r#"{"q": 0.5, "cycles": 10, "attack": {"type": "symmetric", "d_z": 0.9}}"#,
        ] {
            assert!(ProtocolConfig::from_json(text).is_err(), "{text}");
        }
    }

    #[test]
    fn round_trips() {
        let mut cfg = ProtocolConfig::new(0.3, 100, 7);
        cfg.attack = AttackSpec::Symmetric { d_z: 0.25 };
        cfg.basis_weights = BasisWeights::only(BasisLabel::V);
        let back = ProtocolConfig::from_json(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }
}
