//! Wick expectation of a daggered polynomial against a Fock polynomial.

use num::Zero;

use crate::scalar::Scalar;
use crate::weyl::fock::FockPoly;
use crate::{Error, Result};

/// `<f g>` where the slots of `f` are read as `Z^dag` and the slots of `g`
/// as `Z`.
///
/// Each `Z^dag_ij` is realized as `d/dZ_ji` (the pairing convention
/// `<Z^dag_ij Z_kl> = delta_il delta_jk`), `f` is applied to `g` as a
/// differential operator and the result evaluated at `Z = 0`. This equals
/// the sum over all complete pairings; a monomial of `f` meets a monomial
/// of `g` exactly when the exponent patterns are index-transposes of each
/// other, contributing the product of slot factorials. Mismatched total
/// degrees give 0.
pub fn wick_pair(f: &FockPoly, g: &FockPoly) -> Result<Scalar> {
    if f.space() != g.space() {
        return Err(Error::Precondition(format!(
            "variable-space mismatch: {:?} vs {:?}",
            f.space(),
            g.space()
        )));
    }
    let space = f.space();
    let mut acc = Scalar::zero();
    for (alpha, cf) in f.terms() {
        let partner = alpha.transpose_indices(space);
        let cg = g.coeff(&partner);
        if !cg.is_zero() {
            acc += cf * cg * Scalar::from_integer(alpha.factorial_product());
        }
    }
    Ok(acc)
}
