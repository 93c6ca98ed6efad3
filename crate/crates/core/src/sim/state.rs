//! Pure states of home ⊗ travel ⊗ ancilla (3 × 3 × 9).

use num_complex::Complex64;
use rand::Rng;

use crate::algebra::{bell_state, mub, BasisLabel, MubBasis, TwoQutritKet, Unitary3};

pub const ANCILLA_DIM: usize = 9;
pub const JOINT_DIM: usize = 3 * 3 * ANCILLA_DIM;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[inline]
pub fn index(home: usize, travel: usize, ancilla: usize) -> usize {
    (3 * home + travel) * ANCILLA_DIM + ancilla
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointState {
    amp: [Complex64; JOINT_DIM],
}

impl JointState {
    /// `|Ψ_00⟩ ⊗ |0⟩_ancilla`.
    pub fn prepared() -> Self {
        Self::from_pair(&bell_state(0, 0).expect("indices in range"))
    }

    /// `|ψ⟩ ⊗ |0⟩_ancilla`.
    pub fn from_pair(pair: &TwoQutritKet) -> Self {
        let mut amp = [ZERO; JOINT_DIM];
        for h in 0..3 {
            for t in 0..3 {
                amp[index(h, t, 0)] = pair.amp(h, t);
            }
        }
        Self { amp }
    }

    pub(crate) fn from_amplitudes(amp: [Complex64; JOINT_DIM]) -> Self {
        Self { amp }
    }

    pub fn amplitudes(&self) -> &[Complex64; JOINT_DIM] {
        &self.amp
    }

    pub fn amp(&self, home: usize, travel: usize, ancilla: usize) -> Complex64 {
        self.amp[index(home, travel, ancilla)]
    }

    pub fn norm_sq(&self) -> f64 {
        self.amp.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Applies a 3×3 matrix to the travel qutrit.
    pub fn apply_travel(&self, m: &[[Complex64; 3]; 3]) -> JointState {
        let mut out = [ZERO; JOINT_DIM];
        for h in 0..3 {
            for a in 0..ANCILLA_DIM {
                for (row, mrow) in m.iter().enumerate() {
                    out[index(h, row, a)] = (0..3).map(|col| mrow[col] * self.amp[index(h, col, a)]).sum();
                }
            }
        }
        JointState { amp: out }
    }

    pub fn apply_unitary(&self, u: &Unitary3) -> JointState {
        self.apply_travel(u.matrix())
    }

    /// Reduced density matrix of the travel qutrit.
    pub fn reduced_travel(&self) -> [[Complex64; 3]; 3] {
        let mut rho = [[ZERO; 3]; 3];
        for (r, row) in rho.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                for h in 0..3 {
                    for a in 0..ANCILLA_DIM {
                        *entry += self.amp(h, r, a) * self.amp(h, c, a).conj();
                    }
                }
            }
        }
        rho
    }

    /// Joint Born probabilities `P[alice][bob]` for Alice measuring travel in `basis` and Bob
    /// measuring home in the partner basis.
    pub fn control_distribution(&self, basis: BasisLabel) -> [[f64; 3]; 3] {
        let alice = mub(basis);
        let bob = mub(basis.partner());
        let mut p = [[0.0; 3]; 3];
        for (a, row) in p.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate() {
                for anc in 0..ANCILLA_DIM {
                    let mut z = ZERO;
                    for h in 0..3 {
                        for t in 0..3 {
                            z += bob.component(b, h).conj() * alice.component(a, t).conj() * self.amp(h, t, anc);
                        }
                    }
                    *entry += z.norm_sqr();
                }
            }
        }
        p
    }

    /// Exact probability that a control round in `basis` flags a violation of the
    /// `|Ψ_00⟩` correlations.
    pub fn detection_probability(&self, basis: BasisLabel) -> f64 {
        let p = self.control_distribution(basis);
        let mut d = 0.0;
        for (a, row) in p.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                if b != basis.expected_bob_result(a) {
                    d += v;
                }
            }
        }
        d
    }

    /// Born probabilities of Bob's Bell measurement, indexed `3i + j` for `|Ψ_ij⟩`.
    pub fn bell_distribution(&self) -> [f64; 9] {
        std::array::from_fn(|n| {
            let psi = bell_state(n / 3, n % 3).expect("indices in range");
            (0..ANCILLA_DIM)
                .map(|anc| {
                    let mut z = ZERO;
                    for h in 0..3 {
                        for t in 0..3 {
                            z += psi.amp(h, t).conj() * self.amp(h, t, anc);
                        }
                    }
                    z.norm_sqr()
                })
                .sum()
        })
    }

    /// Measures travel in `basis`, collapses, and returns the outcome.
    pub fn measure_travel<R: Rng + ?Sized>(&mut self, basis: &MubBasis, rng: &mut R) -> usize {
        let mut projected = [[ZERO; 3 * ANCILLA_DIM]; 3];
        let mut probs = [0.0; 3];
        for (n, proj) in projected.iter_mut().enumerate() {
            for h in 0..3 {
                for a in 0..ANCILLA_DIM {
                    let z: Complex64 = (0..3).map(|t| basis.component(n, t).conj() * self.amp(h, t, a)).sum();
                    proj[h * ANCILLA_DIM + a] = z;
                    probs[n] += z.norm_sqr();
                }
            }
        }
        let outcome = sample(&probs, rng);
        let scale = 1.0 / probs[outcome].sqrt();
        let mut amp = [ZERO; JOINT_DIM];
        for h in 0..3 {
            for a in 0..ANCILLA_DIM {
                let z = projected[outcome][h * ANCILLA_DIM + a] * scale;
                for t in 0..3 {
                    amp[index(h, t, a)] = basis.component(outcome, t) * z;
                }
            }
        }
        self.amp = amp;
        outcome
    }

    /// Measures home in `basis`, collapses, and returns the outcome.
    pub fn measure_home<R: Rng + ?Sized>(&mut self, basis: &MubBasis, rng: &mut R) -> usize {
        let mut projected = [[ZERO; 3 * ANCILLA_DIM]; 3];
        let mut probs = [0.0; 3];
        for (n, proj) in projected.iter_mut().enumerate() {
            for t in 0..3 {
                for a in 0..ANCILLA_DIM {
                    let z: Complex64 = (0..3).map(|h| basis.component(n, h).conj() * self.amp(h, t, a)).sum();
                    proj[t * ANCILLA_DIM + a] = z;
                    probs[n] += z.norm_sqr();
                }
            }
        }
        let outcome = sample(&probs, rng);
        let scale = 1.0 / probs[outcome].sqrt();
        let mut amp = [ZERO; JOINT_DIM];
        for t in 0..3 {
            for a in 0..ANCILLA_DIM {
                let z = projected[outcome][t * ANCILLA_DIM + a] * scale;
                for h in 0..3 {
                    amp[index(h, t, a)] = basis.component(outcome, h) * z;
                }
            }
        }
        self.amp = amp;
        outcome
    }
}

/// Cumulative-probability inversion. The last outcome with nonzero weight absorbs rounding.
pub fn sample<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> usize {
    let total: f64 = probs.iter().sum();
    let u: f64 = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut last = 0;
    for (k, &p) in probs.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        acc += p;
        last = k;
        if u < acc {
            return k;
        }
    }
    last
}
