//! The graded ring of polynomials in power-sum generators `p_1, p_2, ...`,
//! Schur functions in three independent constructions, and the cut-and-join
//! operator.
//!
//! A [`PowerSumPoly`] stores its terms keyed by [`Partition`] (the monomial
//! `p_{d_1} p_{d_2} ...`), so commutativity is structural and the graded
//! reverse-lexicographic key order keeps terms bucketed grade by grade.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{One, Zero};

use crate::characters::{character_table_with_cap, dimension};
use crate::matrix::ExactMatrix;
use crate::partition::Partition;
use crate::scalar::{int, Scalar};
use crate::{Error, Result};

/// Polynomial in the power-sum generators with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PowerSumPoly {
    terms: BTreeMap<Partition, Scalar>,
}

impl PowerSumPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1 (the empty monomial).
    pub fn one() -> Self {
        Self::monomial(Partition::empty())
    }

    /// The single-term polynomial `p_Delta` with coefficient 1.
    pub fn monomial(delta: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(delta, Scalar::one());
        PowerSumPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `coeff * p_delta`, dropping the term if it cancels.
    pub fn add_term(&mut self, delta: Partition, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(delta);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, delta: &Partition) -> Scalar {
        self.terms.get(delta).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PowerSumPoly {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Degree of each monomial if the polynomial is homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let first = it.next()?.weight();
        it.all(|k| k.weight() == first).then_some(first)
    }
}

impl std::ops::Add for &PowerSumPoly {
    type Output = PowerSumPoly;
    fn add(self, rhs: &PowerSumPoly) -> PowerSumPoly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl std::ops::Sub for &PowerSumPoly {
    type Output = PowerSumPoly;
    fn sub(self, rhs: &PowerSumPoly) -> PowerSumPoly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), -v.clone());
        }
        out
    }
}

impl std::ops::Mul for &PowerSumPoly {
    type Output = PowerSumPoly;
    fn mul(self, rhs: &PowerSumPoly) -> PowerSumPoly {
        let mut out = PowerSumPoly::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                out.add_term(ka.union(kb), va * vb);
            }
        }
        out
    }
}

impl fmt::Display for PowerSumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (delta, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if delta.is_empty() {
                write!(f, "{coeff}")?;
            } else {
                write!(f, "{coeff}*p{delta}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PowerSumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `p_Delta` as a polynomial: the single monomial with coefficient 1.
pub fn powersum_monomial(delta: &Partition) -> PowerSumPoly {
    PowerSumPoly::monomial(delta.clone())
}

/// `s_lambda` in the power-sum basis via the character map:
/// `s_lambda = (dim lambda / d!) sum_Delta phi_lambda(Delta) p_Delta`,
/// equivalently `sum_Delta chi_lambda(Delta)/zeta_Delta * p_Delta`.
pub fn schur_in_powersums(lambda: &Partition) -> PowerSumPoly {
    let d = lambda.weight();
    let table = character_table_with_cap(d, u32::MAX).expect("no cap");
    let li = table.index_of(lambda).expect("same degree");
    let mut out = PowerSumPoly::zero();
    for (di, delta) in table.partitions().iter().enumerate() {
        let chi = table.chi_at(li, di);
        let coeff = Scalar::new(chi.into(), crate::partition::zeta(delta));
        out.add_term(delta.clone(), coeff);
    }
    out
}

/// Coefficients `c_lambda` with `p_Delta = sum_lambda c_lambda s_lambda`;
/// these are exactly the characters `chi_lambda(Delta)`.
pub fn powersum_in_schur(delta: &Partition) -> BTreeMap<Partition, Scalar> {
    let d = delta.weight();
    let table = character_table_with_cap(d, u32::MAX).expect("no cap");
    let di = table.index_of(delta).expect("same degree");
    let mut out = BTreeMap::new();
    for (li, lambda) in table.partitions().iter().enumerate() {
        let chi = table.chi_at(li, di);
        if chi != 0 {
            out.insert(lambda.clone(), int(chi));
        }
    }
    out
}

/// One-row Schur functions `s_(k) = h_k` from the generating relation
/// `exp(sum p_m z^m / m) = sum h_k z^k`, by the Newton recurrence
/// `k h_k = sum_{m=1}^{k} p_m h_{k-m}`.
pub fn complete_homogeneous(k: u32) -> PowerSumPoly {
    let mut h: Vec<PowerSumPoly> = vec![PowerSumPoly::one()];
    for j in 1..=k {
        let mut acc = PowerSumPoly::zero();
        for m in 1..=j {
            let pm = PowerSumPoly::monomial(Partition::row(m));
            acc = &acc + &(&pm * &h[(j - m) as usize]);
        }
        h.push(acc.scale(&Scalar::new(1.into(), j.into())));
    }
    h.pop().unwrap()
}

/// Jacobi-Trudi determinant: `s_lambda = det[h_{lambda_i - i + j}]` over an
/// `n x n` matrix of one-row Schur functions. Requires `n >= l(lambda)`.
pub fn jacobi_trudi_schur(lambda: &Partition, n: usize) -> Result<PowerSumPoly> {
    if n < lambda.len() {
        return Err(Error::Precondition(format!(
            "Jacobi-Trudi needs at least {} rows for {lambda}, got {n}",
            lambda.len()
        )));
    }
    if n == 0 {
        return Ok(PowerSumPoly::one());
    }
    let max_h = lambda.part(0) as i64 + n as i64;
    let h: Vec<PowerSumPoly> = (0..=max_h.max(0) as u32)
        .map(complete_homogeneous)
        .collect();
    let entry = |i: usize, j: usize| -> PowerSumPoly {
        let idx = lambda.part(i) as i64 - i as i64 + j as i64;
        if idx < 0 {
            PowerSumPoly::zero()
        } else {
            h[idx as usize].clone()
        }
    };
    // Laplace expansion along rows with memoization on the column subset.
    fn det(
        row: usize,
        cols: u32,
        n: usize,
        entry: &dyn Fn(usize, usize) -> PowerSumPoly,
        memo: &mut HashMap<u32, PowerSumPoly>,
    ) -> PowerSumPoly {
        if row == n {
            return PowerSumPoly::one();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = PowerSumPoly::zero();
        let mut sign = Scalar::one();
        for j in 0..n {
            if cols & (1 << j) == 0 {
                continue;
            }
            let e = entry(row, j);
            if !e.is_zero() {
                let minor = det(row + 1, cols & !(1 << j), n, entry, memo);
                acc = &acc + &(&e * &minor).scale(&sign);
            }
            sign = -sign;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    let mut memo = HashMap::new();
    Ok(det(0, (1u32 << n) - 1, n, &entry, &mut memo))
}

/// Substitute `p_m -> tr(X^m)` and evaluate exactly.
pub fn evaluate_at_matrix(f: &PowerSumPoly, x: &ExactMatrix) -> Scalar {
    let mut trace_cache: HashMap<u32, Scalar> = HashMap::new();
    let mut out = Scalar::zero();
    for (delta, coeff) in f.terms() {
        let mut term = coeff.clone();
        for &part in delta.parts() {
            let t = trace_cache
                .entry(part)
                .or_insert_with(|| x.trace_pow(part))
                .clone();
            term *= t;
        }
        out += term;
    }
    out
}

/// The bialternant ratio `det[x_j^{lambda_i - i + N}] / det[x_j^{N - i}]`.
///
/// Returns 0 when `l(lambda) > N`. The evaluation points must be pairwise
/// distinct; coincident points are rejected rather than resolved by limits
/// (use [`evaluate_at_matrix`] for those).
pub fn schur_bialternant(lambda: &Partition, xs: &[Scalar]) -> Result<Scalar> {
    let n = xs.len();
    for i in 0..n {
        for j in i + 1..n {
            if xs[i] == xs[j] {
                return Err(Error::Precondition(format!(
                    "bialternant requires distinct points, got x[{i}] = x[{j}] = {}",
                    xs[i]
                )));
            }
        }
    }
    if lambda.len() > n {
        return Ok(Scalar::zero());
    }
    let power = |x: &Scalar, e: u32| -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc *= x;
        }
        acc
    };
    let alternant = |exps: &[u32]| -> Scalar {
        let rows: Vec<Vec<Scalar>> = exps
            .iter()
            .map(|&e| xs.iter().map(|x| power(x, e)).collect())
            .collect();
        ExactMatrix::from_rows(rows).expect("square").determinant()
    };
    let numer_exps: Vec<u32> = (0..n)
        .map(|i| lambda.part(i) + (n - 1 - i) as u32)
        .collect();
    let denom_exps: Vec<u32> = (0..n).map(|i| (n - 1 - i) as u32).collect();
    let denom = alternant(&denom_exps);
    debug_assert!(!denom.is_zero());
    Ok(alternant(&numer_exps) / denom)
}

/// Apply the cut-and-join operator
/// `sum_{n,m>0} [ p_n p_m (n+m) d/dp_{n+m} + p_{n+m} n m d^2/(dp_n dp_m) ]`
/// with the sum over ordered pairs and no 1/2 symmetrization; the
/// annihilation modes are realized as `p_{-k} = k d/dp_k`. Grading is
/// preserved; on the Schur basis the operator is diagonal.
pub fn cut_and_join_apply(f: &PowerSumPoly) -> PowerSumPoly {
    let mut out = PowerSumPoly::zero();
    for (delta, c) in f.terms() {
        let mults = delta.multiplicities();
        // Join terms: p_{n+m} n m d^2/(dp_n dp_m), ordered pairs (n, m).
        for (&n, &mn) in &mults {
            for (&m, &mm) in &mults {
                let count = if n == m {
                    mn as i64 * (mn as i64 - 1)
                } else {
                    mn as i64 * mm as i64
                };
                if count == 0 {
                    continue;
                }
                let base = delta
                    .remove_part(n)
                    .and_then(|p| p.remove_part(m))
                    .expect("parts present");
                let coeff = c * int(n as i64) * int(m as i64) * int(count);
                out.add_term(base.with_part(n + m), coeff);
            }
        }
        // Cut terms: p_n p_m (n+m) d/dp_{n+m}, ordered pairs with n+m = v.
        for (&v, &mv) in &mults {
            if v < 2 {
                continue;
            }
            let base = delta.remove_part(v).expect("part present");
            for n in 1..v {
                let m = v - n;
                let coeff = c * int(v as i64) * int(mv as i64);
                out.add_term(base.with_part(n).with_part(m), coeff);
            }
        }
    }
    out
}

/// Eigenvalue of the cut-and-join operator on `s_lambda`, predicted from the
/// character side: `2 phi_lambda(Delta)` with `Delta = (2, 1^{d-2})`, i.e.
/// twice the normalized character at the simple class (0 for `d < 2`).
/// Equals the content sum `sum_i lambda_i (lambda_i - 2i + 1)`.
pub fn cut_and_join_eigenvalue(lambda: &Partition) -> Scalar {
    let d = lambda.weight();
    if d < 2 {
        return Scalar::zero();
    }
    let delta = Partition::simple(d);
    let chi = crate::characters::character(lambda, &delta).expect("same weight");
    // 2 * phi = 2 * chi * d! / (dim * zeta).
    Scalar::new(
        num::BigInt::from(2 * chi) * crate::scalar::factorial(d as u64),
        dimension(lambda) * crate::partition::zeta(&delta),
    )
}
