//! Full-state simulation of protocol cycles under an explicit attack.
//!
//! Every cycle starts from `|Ψ_00⟩ ⊗ |0⟩_ancilla`, applies Eve's attack to the travel qutrit and
//! then runs either a control round or a message round. Outcomes are sampled from exact Born
//! probabilities with a [`ChaCha8Rng`] seeded from [`ProtocolConfig::seed`]. Eve never measures;
//! her effect is the attack alone.

mod config;
mod eve;
mod state;
mod survey;

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use config::{BasisWeights, ProtocolConfig};
pub use eve::AttackIsometry;
pub use state::{sample, JointState, ANCILLA_DIM, JOINT_DIM};
pub use survey::{detection_survey, SurveyRow};

use crate::algebra::{coding_unitary, mub, BasisLabel};
use crate::attack::{AncillaModel, AttackSpec};
use crate::error::{Error, Result};

/// Result of one cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum CycleOutcome {
    Message { sent: (usize, usize), decoded: (usize, usize) },
    Control { basis: BasisLabel, alice: usize, bob: usize, detected: bool },
}

impl CycleOutcome {
    pub fn detected(&self) -> bool {
        matches!(self, CycleOutcome::Control { detected: true, .. })
    }
}

/// Alice measures travel in `basis`, Bob measures home in the partner basis. Consumes the state.
pub fn control_round<R: Rng + ?Sized>(mut state: JointState, basis: BasisLabel, rng: &mut R) -> (usize, usize, bool) {
    let alice = state.measure_travel(&mub(basis), rng);
    let bob = state.measure_home(&mub(basis.partner()), rng);
    (alice, bob, bob != basis.expected_bob_result(alice))
}

/// Alice applies `U_ij`, Bob performs the Bell measurement; returns the decoded bigram.
pub fn message_round<R: Rng + ?Sized>(state: &JointState, bigram: (usize, usize), rng: &mut R) -> Result<(usize, usize)> {
    let encoded = state.apply_unitary(&coding_unitary(bigram.0, bigram.1)?);
    let n = sample(&encoded.bell_distribution(), rng);
    Ok((n / 3, n % 3))
}

/// Exact probability that Bob decodes `(i', j')` when `(i, j)` was sent, indexed
/// `[3i + j][3i' + j']`.
pub fn decode_matrix(state: &JointState) -> [[f64; 9]; 9] {
    std::array::from_fn(|sent| {
        let u = coding_unitary(sent / 3, sent % 3).expect("indices in range");
        state.apply_unitary(&u).bell_distribution()
    })
}

/// Smallest `r` with `1 − (1 − d)^r ≥ target`.
pub fn rounds_for_confidence(d: f64, target: f64) -> Result<u64> {
    if !(0.0..=1.0).contains(&d) {
        return Err(Error::OutOfRange { what: "d", value: d, range: "(0, 1]" });
    }
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::OutOfRange { what: "target", value: target, range: "(0, 1)" });
    }
    if d == 0.0 {
        return Err(Error::Undetectable);
    }
    if d == 1.0 {
        return Ok(1);
    }
    let reached = |r: u64| 1.0 - (1.0 - d).powf(r as f64) >= target;
    let mut r = ((1.0 - target).ln() / (1.0 - d).ln()).ceil().max(1.0) as u64;
    while !reached(r) {
        r += 1;
    }
    while r > 1 && reached(r - 1) {
        r -= 1;
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisStats {
    pub basis: BasisLabel,
    pub rounds: u64,
    pub detections: u64,
    pub empirical_d: Option<f64>,
    /// Born-rule detection probability of the attacked state.
    pub exact_d: f64,
    /// Closed-form detection probability, for the attack's own basis only.
    pub analytic_d: Option<f64>,
    /// Three binomial standard deviations around `analytic_d` at `rounds`.
    pub band_3sigma: Option<f64>,
}

impl BasisStats {
    pub fn within_band(&self) -> Option<bool> {
        match (self.empirical_d, self.analytic_d, self.band_3sigma) {
            (Some(e), Some(a), Some(b)) => Some((e - a).abs() <= b),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub seed: u64,
    pub config: ProtocolConfig,
    pub cycles: u64,
    pub message_cycles: u64,
    pub decode_errors: u64,
    pub control_cycles: u64,
    pub detections: u64,
    pub per_basis: Vec<BasisStats>,
    /// Counts of sent bigram `3i + j` (row) decoded as `3i' + j'` (column).
    pub confusion: [[u64; 9]; 9],
    /// Exact message-mode error probability under the configured frequencies.
    pub exact_decode_error: f64,
    /// Exact per-round detection probability under the configured basis weights.
    pub exact_blended_d: f64,
    /// Zero-based index of the first cycle that detected the attack.
    pub first_detection_cycle: Option<u64>,
    /// Control rounds up to and including the first detection.
    pub control_rounds_to_detection: Option<u64>,
    /// Control rounds needed to detect with probability 0.99 at `exact_blended_d`.
    pub rounds_for_99: Option<u64>,
    #[serde(skip)]
    pub transcript: Option<Vec<CycleOutcome>>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn basis(&self, basis: BasisLabel) -> &BasisStats {
        &self.per_basis[basis.index()]
    }
}

/// Simulates `config.cycles` cycles.
pub fn run(config: &ProtocolConfig) -> Result<RunReport> {
    simulate(config, false)
}

/// As [`run`], also keeping every [`CycleOutcome`] in [`RunReport::transcript`].
pub fn run_with_transcript(config: &ProtocolConfig) -> Result<RunReport> {
    simulate(config, true)
}

fn simulate(config: &ProtocolConfig, keep_transcript: bool) -> Result<RunReport> {
    config.validate()?;
    let attack = AttackIsometry::from_spec(&config.attack, config.ancilla)?;
    let attacked = attack.apply(&JointState::prepared());
    let norm = attacked.norm_sq();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { what: "attacked joint state", norm_sq: norm });
    }

    let weights = config.basis_weights.as_array();
    let freq = config.freq.flat();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut rounds = [0u64; 4];
    let mut hits = [0u64; 4];
    let mut confusion = [[0u64; 9]; 9];
    let mut message_cycles = 0;
    let mut decode_errors = 0;
    let mut control_cycles = 0;
    let mut first_detection_cycle = None;
    let mut control_rounds_to_detection = None;
    let mut transcript = keep_transcript.then(Vec::new);

    for cycle in 0..config.cycles {
        let outcome = if rng.random::<f64>() < config.q {
            let basis = BasisLabel::ALL[sample(&weights, &mut rng)];
            let (alice, bob, detected) = control_round(attacked, basis, &mut rng);
            control_cycles += 1;
            rounds[basis.index()] += 1;
            if detected {
                hits[basis.index()] += 1;
                if first_detection_cycle.is_none() {
                    first_detection_cycle = Some(cycle);
                    control_rounds_to_detection = Some(control_cycles);
                }
            }
            CycleOutcome::Control { basis, alice, bob, detected }
        } else {
            let n = sample(&freq, &mut rng);
            let sent = (n / 3, n % 3);
            let decoded = message_round(&attacked, sent, &mut rng)?;
            message_cycles += 1;
            confusion[n][3 * decoded.0 + decoded.1] += 1;
            if decoded != sent {
                decode_errors += 1;
            }
            CycleOutcome::Message { sent, decoded }
        };
        if let Some(t) = transcript.as_mut() {
            t.push(outcome);
        }
    }

    let analytic = analytic_detection(&config.attack, config.ancilla)?;
    let per_basis: Vec<BasisStats> = BasisLabel::ALL
        .iter()
        .map(|&basis| {
            let k = basis.index();
            let analytic_d = analytic.and_then(|(b, d)| (b == basis).then_some(d));
            let band_3sigma = analytic_d
                .filter(|_| rounds[k] > 0)
                .map(|d| 3.0 * (d * (1.0 - d) / rounds[k] as f64).sqrt());
            BasisStats {
                basis,
                rounds: rounds[k],
                detections: hits[k],
                empirical_d: (rounds[k] > 0).then(|| hits[k] as f64 / rounds[k] as f64),
                exact_d: attacked.detection_probability(basis),
                analytic_d,
                band_3sigma,
            }
        })
        .collect();

    let exact_blended_d: f64 = per_basis.iter().zip(weights).map(|(s, w)| w * s.exact_d).sum();
    let decode = decode_matrix(&attacked);
    let exact_decode_error: f64 = (0..9).map(|n| freq[n] * (1.0 - decode[n][n])).sum::<f64>().max(0.0);
    let rounds_for_99 = if exact_blended_d > 1e-12 { Some(rounds_for_confidence(exact_blended_d.min(1.0), 0.99)?) } else { None };

    Ok(RunReport {
        seed: config.seed,
        config: config.clone(),
        cycles: config.cycles,
        message_cycles,
        decode_errors,
        control_cycles,
        detections: hits.iter().sum(),
        per_basis,
        confusion,
        exact_decode_error,
        exact_blended_d,
        first_detection_cycle,
        control_rounds_to_detection,
        rounds_for_99,
        transcript,
    })
}

/// Closed-form detection in the attack's own basis. Under [`AncillaModel::Branch`] an explicit
/// unitary is only analysed through its first column, which needs the mixedness condition.
fn analytic_detection(spec: &AttackSpec, model: AncillaModel) -> Result<Option<(BasisLabel, f64)>> {
    match spec {
        AttackSpec::None => Ok(None),
        AttackSpec::Unitary { .. } if model == AncillaModel::Branch => Ok(None),
        _ => spec.analytic_detection().map(Some),
    }
}

/// Transcript CSV with header `cycle,mode,basis,alice,bob,detected,sent,decoded`. Bigrams are
/// written as two digits `ij`.
pub fn transcript_csv(outcomes: &[CycleOutcome]) -> String {
    let mut out = String::from("cycle,mode,basis,alice,bob,detected,sent,decoded\n");
    for (cycle, o) in outcomes.iter().enumerate() {
        let _ = match o {
            CycleOutcome::Message { sent, decoded } => {
                writeln!(out, "{cycle},message,,,,false,{}{},{}{}", sent.0, sent.1, decoded.0, decoded.1)
            }
            CycleOutcome::Control { basis, alice, bob, detected } => {
                writeln!(out, "{cycle},control,{basis},{alice},{bob},{detected},,")
            }
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn confidence_rounds() {
        assert_eq!(rounds_for_confidence(1.0 / 3.0, 0.99).unwrap(), 12);
        assert_eq!(rounds_for_confidence(2.0 / 3.0, 0.99).unwrap(), 5);
        assert_eq!(rounds_for_confidence(1.0, 0.5).unwrap(), 1);
        assert!(matches!(rounds_for_confidence(0.0, 0.99), Err(Error::Undetectable)));
        assert!(rounds_for_confidence(0.5, 1.0).is_err());
        assert!(rounds_for_confidence(1.5, 0.5).is_err());
    }

    #[test]
    fn undisturbed_run_is_exact() {
        let mut cfg = ProtocolConfig::new(0.4, 2000, 11);
        cfg.basis_weights = BasisWeights { z: 0.25, x: 0.25, v: 0.25, t: 0.25 };
        let r = run(&cfg).unwrap();
        assert_eq!(r.detections, 0);
        assert_eq!(r.decode_errors, 0);
        assert_eq!(r.message_cycles + r.control_cycles, 2000);
        assert!(r.first_detection_cycle.is_none());
        assert!(r.exact_decode_error < 1e-12);
    }

    #[test]
    fn transcript_matches_counts() {
        let mut cfg = ProtocolConfig::new(0.5, 300, 5);
        cfg.attack = AttackSpec::Symmetric { d_z: 0.5 };
        let r = run_with_transcript(&cfg).unwrap();
        let t = r.transcript.as_ref().unwrap();
        assert_eq!(t.len(), 300);
        assert_eq!(t.iter().filter(|o| o.detected()).count() as u64, r.detections);
        let csv = transcript_csv(t);
        assert_eq!(csv.lines().count(), 301);
        assert_eq!(run(&cfg).unwrap().detections, r.detections);
    }

    #[test]
    fn first_detection_bookkeeping() {
        let mut cfg = ProtocolConfig::new(1.0, 50, 2);
        cfg.attack = AttackSpec::Symmetric { d_z: 2.0 / 3.0 };
        cfg.basis_weights = BasisWeights::only(BasisLabel::Z);
        let r = run(&cfg).unwrap();
        let first = r.first_detection_cycle.unwrap();
        assert_eq!(r.control_rounds_to_detection, Some(first + 1));
        assert_eq!(r.rounds_for_99, Some(5));
    }
}
