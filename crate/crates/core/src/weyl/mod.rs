//! The N^2-oscillator algebra: Fock polynomials, normal-ordered
//! Hamiltonians, Wick expectations, and executable verification of the
//! operator identities they satisfy.
//!
//! Pairing convention, fixed once for the whole crate:
//! `<Z^dag_ij Z_kl> = delta_il delta_jk`, i.e. `Z^dag_ij` acts as
//! `d/dZ_ji`. This is the unique choice under which
//! `<tr(Z^dag F) tr(Z C)> = tr(FC)`, and with it every pairing lemma and
//! eigenvalue identity in this module holds exactly.
//!
//! The anchor computation that pins all sign and normalization choices:
//! `:tr((Z^dag Z)^2):` swaps `(tr Z)^2` and `tr(Z^2)` up to a factor 2, so
//! `s_(2)` and `s_(1,1)` are eigenvectors with eigenvalues +2 and -2.
//!
//! ```
//! use hurwitz_core::matrix::ExactMatrix;
//! use hurwitz_core::scalar::int;
//! use hurwitz_core::weyl::{CostCaps, NormalOp, PolyMatrix, VarSpace};
//!
//! let space = VarSpace::single(2);
//! let op = NormalOp::powersum_hamiltonian(
//!     &"[2]".parse().unwrap(),
//!     &ExactMatrix::identity(2),
//!     &CostCaps::default(),
//! )
//! .unwrap();
//! let z = PolyMatrix::vars(space, 0);
//! let tr_sq = &z.trace() * &z.trace();
//! let tr2 = z.mul(&z).trace();
//! assert_eq!(op.apply(&tr_sq).unwrap(), tr2.scale(&int(2)));
//! assert_eq!(op.apply(&tr2).unwrap(), tr_sq.scale(&int(2)));
//! ```

mod fock;
mod op;
mod verify;
mod wick;

pub use fock::{eval_powersum_at, FockPoly, Monomial, PolyMatrix, VarSpace};
pub use op::{CostCaps, NormalOp};
pub use wick::wick_pair;

pub use crate::matrix::ExactMatrix;
pub use verify::{
    commutator_residuals, commutator_residuals_seq, verify_commutator, verify_commutator_seq,
    verify_lemma_l1, verify_mmn_eigen, verify_schur_pairing, verify_star, verify_three_point,
    BSide, ResidualEntry, VerifyReport, STATUS_EXACT_ZERO, STATUS_MISMATCH,
};
