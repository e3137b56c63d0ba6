//! Exact enumerative algebra around branched coverings of surfaces.
//!
//! Everything in this crate is computed over arbitrary-precision rationals:
//! symmetric-group characters (Murnaghan–Nakayama), Schur functions in three
//! independent constructions, Hurwitz numbers via both the character formula
//! and a brute-force permutation count, the cut-and-join operator, and the
//! normal-ordered oscillator Hamiltonians `:p_mu(Z^dag Z A):` acting on the
//! Fock space of polynomials in the matrix entries `Z_ij`.
//!
//! The crate is organised so that every nontrivial identity has two
//! independent computational routes, compared for exact equality:
//!
//! - [`hurwitz::hurwitz_character`] vs [`hurwitz::hurwitz_permutation_oracle`]
//! - [`symfunc::schur_in_powersums`] vs [`symfunc::jacobi_trudi_schur`] vs
//!   [`symfunc::schur_bialternant`]
//! - operator identities in [`weyl`] vs the character-side predictions
//!
//! Heavy inner loops (permutation-tuple counting, commutator checks on graded
//! pieces, sweep verification) run on rayon when the default `parallel`
//! feature is enabled; every such entry point also has a `_seq` sibling used
//! as the reference scalar path and by the benchmark suite.

pub mod characters;
pub mod hurwitz;
pub mod matrix;
pub(crate) mod par;
pub mod partition;
pub mod scalar;
pub mod symfunc;
pub mod weyl;

pub use matrix::ExactMatrix;
pub use partition::{class_size, enumerate_partitions, zeta, Partition};
pub use scalar::Scalar;

/// Crate-wide error type.
///
/// The CLI maps these onto process exit codes: capacity errors are
/// distinguished from plain usage errors.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Partition weights incompatible with the requested operation.
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    /// The request exceeds a documented cost cap.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// Malformed partition literal or partition data.
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    /// Matrix shape or content unsuitable for the operation.
    #[error("matrix error: {0}")]
    Matrix(String),
    /// A stated precondition does not hold for the given inputs.
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
