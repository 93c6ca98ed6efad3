//! Small-dimension complex linear algebra for qutrits and qutrit pairs.

mod cubic;
mod eigen;
mod mub;
mod states;

pub use cubic::solve_cubic;
pub use eigen::{hermitian_eigenvalues, jacobi_eigenvalues, Hermitian9, HermitianMatrix};
pub use mub::{mub, psi00_in_basis_pair, BasisLabel, BasisPairDecomposition, MubBasis};
pub use states::{
    bell_state, coding_unitary, omega, unitarity_residual, Ket3, TwoQutritKet, Unitary3, SQRT3,
};

pub use num_complex::Complex64 as Complex;
