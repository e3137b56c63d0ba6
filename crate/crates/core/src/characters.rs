//! Irreducible characters of the symmetric group.
//!
//! Characters are computed by the Murnaghan-Nakayama border-strip recursion
//! on beta-sets, memoized per thread. [`CharacterTable`] holds the complete
//! table of one degree and is cached process-wide, since the Hurwitz-number
//! sweeps hit the same degrees over and over.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use num::bigint::BigInt;

use crate::partition::{enumerate_partitions, zeta, Partition};
use crate::scalar::{factorial, Scalar};
use crate::{Error, Result};

/// Default cap on the degree of a full character table. Past this the table
/// size (and the Murnaghan-Nakayama recursion tree) grows combinatorially.
pub const DEFAULT_DEGREE_CAP: u32 = 12;

/// `dim lambda`: the number of standard Young tableaux of shape `lambda`,
/// computed from the closed product formula with `N = l(lambda)` rows.
/// The empty partition has dimension 1.
pub fn dimension(lambda: &Partition) -> BigInt {
    dimension_with_rows(lambda, lambda.len())
}

/// Same formula evaluated with `rows >= l(lambda)` rows; the result does not
/// depend on `rows`, which the tests exercise.
pub fn dimension_with_rows(lambda: &Partition, rows: usize) -> BigInt {
    assert!(rows >= lambda.len());
    let n = rows;
    let d = lambda.weight() as u64;
    let mut numer = factorial(d);
    for i in 0..n {
        for j in i + 1..n {
            let f = lambda.part(i) as i64 - lambda.part(j) as i64 - i as i64 + j as i64;
            numer *= BigInt::from(f);
        }
    }
    let mut denom = BigInt::from(1);
    for i in 0..n {
        let h = lambda.part(i) as i64 - i as i64 + n as i64 - 1;
        denom *= factorial(h as u64);
    }
    let (q, r) = num::Integer::div_rem(&numer, &denom);
    debug_assert!(num::Zero::is_zero(&r));
    q
}

type MemoKey = (Vec<u32>, Vec<u32>);

thread_local! {
    static MEMO: RefCell<HashMap<MemoKey, i64>> = RefCell::new(HashMap::new());
}

/// `chi_lambda(Delta)`, the irreducible character of `S_d` at the class
/// `Delta`. Errors when `|lambda| != |Delta|`.
pub fn character(lambda: &Partition, delta: &Partition) -> Result<i64> {
    if lambda.weight() != delta.weight() {
        return Err(Error::WeightMismatch(format!(
            "character: |{lambda}| = {} but |{delta}| = {}",
            lambda.weight(),
            delta.weight()
        )));
    }
    Ok(MEMO.with(|m| mn_char(lambda.parts(), delta.parts(), &mut m.borrow_mut())))
}

fn mn_char(lambda: &[u32], delta: &[u32], memo: &mut HashMap<MemoKey, i64>) -> i64 {
    if lambda.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), delta.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = delta[0] as i64;
    let rest = &delta[1..];
    let l = lambda.len();
    // Beta-set: strictly decreasing.
    let betas: Vec<i64> = (0..l)
        .map(|i| lambda[i] as i64 + (l - 1 - i) as i64)
        .collect();
    let mut total = 0i64;
    for i in 0..l {
        let target = betas[i] - r;
        if target < 0 || betas.contains(&target) {
            continue;
        }
        // Height of the removed strip: betas strictly between target and betas[i].
        let height = betas
            .iter()
            .filter(|&&b| b > target && b < betas[i])
            .count();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        let mut new_betas = betas.clone();
        new_betas[i] = target;
        new_betas.sort_unstable_by(|a, b| b.cmp(a));
        let new_lambda: Vec<u32> = new_betas
            .iter()
            .enumerate()
            .map(|(j, &b)| (b - (l - 1 - j) as i64) as u32)
            .filter(|&p| p > 0)
            .collect();
        total += sign * mn_char(&new_lambda, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Normalized character `phi_lambda(Delta) = chi_lambda(Delta) d! /
/// (dim lambda * zeta_Delta)`.
pub fn phi(lambda: &Partition, delta: &Partition) -> Result<Scalar> {
    let chi = character(lambda, delta)?;
    let d = lambda.weight() as u64;
    Ok(Scalar::new(
        BigInt::from(chi) * factorial(d),
        dimension(lambda) * zeta(delta),
    ))
}

/// Complete character table of `S_d`.
///
/// Rows and columns are both indexed by the partitions of `d` in
/// enumeration order. Immutable once built; lookups are safe to share
/// across threads.
#[derive(Debug)]
pub struct CharacterTable {
    degree: u32,
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    chi: Vec<Vec<i64>>,
    dims: Vec<BigInt>,
}

impl CharacterTable {
    fn build(degree: u32) -> Self {
        let parts = enumerate_partitions(degree);
        let index: HashMap<Partition, usize> = parts
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let chi = MEMO.with(|m| {
            let memo = &mut m.borrow_mut();
            parts
                .iter()
                .map(|lam| {
                    parts
                        .iter()
                        .map(|del| mn_char(lam.parts(), del.parts(), memo))
                        .collect()
                })
                .collect()
        });
        let dims = parts.iter().map(dimension).collect();
        CharacterTable {
            degree,
            parts,
            index,
            chi,
            dims,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Partitions of the degree, in enumeration order.
    pub fn partitions(&self) -> &[Partition] {
        &self.parts
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn chi_at(&self, lambda_idx: usize, delta_idx: usize) -> i64 {
        self.chi[lambda_idx][delta_idx]
    }

    pub fn dim_at(&self, lambda_idx: usize) -> &BigInt {
        &self.dims[lambda_idx]
    }

    pub fn chi(&self, lambda: &Partition, delta: &Partition) -> Result<i64> {
        match (self.index_of(lambda), self.index_of(delta)) {
            (Some(i), Some(j)) => Ok(self.chi[i][j]),
            _ => Err(Error::WeightMismatch(format!(
                "table of degree {}: no entry for ({lambda}, {delta})",
                self.degree
            ))),
        }
    }

    pub fn phi(&self, lambda: &Partition, delta: &Partition) -> Result<Scalar> {
        let i = self.index_of(lambda).ok_or_else(|| {
            Error::WeightMismatch(format!("{lambda} not of degree {}", self.degree))
        })?;
        let j = self.index_of(delta).ok_or_else(|| {
            Error::WeightMismatch(format!("{delta} not of degree {}", self.degree))
        })?;
        Ok(Scalar::new(
            BigInt::from(self.chi[i][j]) * factorial(self.degree as u64),
            self.dims[i].clone() * zeta(delta),
        ))
    }

    /// `dim lambda / d!` as a scalar.
    pub fn dim_fraction(&self, lambda_idx: usize) -> Scalar {
        Scalar::new(self.dims[lambda_idx].clone(), factorial(self.degree as u64))
    }
}

static TABLE_CACHE: LazyLock<Mutex<HashMap<u32, Arc<CharacterTable>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Character table of `S_d`, cached, with the default degree cap.
pub fn character_table(degree: u32) -> Result<Arc<CharacterTable>> {
    character_table_with_cap(degree, DEFAULT_DEGREE_CAP)
}

/// Character table with an explicit cap; degrees above it are refused with a
/// capacity error rather than silently attempted.
pub fn character_table_with_cap(degree: u32, cap: u32) -> Result<Arc<CharacterTable>> {
    if degree > cap {
        return Err(Error::Capacity(format!(
            "character table degree {degree} exceeds cap {cap}"
        )));
    }
    let mut cache = TABLE_CACHE.lock().unwrap();
    Ok(cache
        .entry(degree)
        .or_insert_with(|| Arc::new(CharacterTable::build(degree)))
        .clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use num::{One, Zero};

    /// Independent oracle: count standard Young tableaux of shape `lambda`
    /// by direct backtracking over placements of 1..d.
    fn syt_count(lambda: &Partition) -> u64 {
        fn rec(shape: &[u32], fill: &mut Vec<u32>) -> u64 {
            let done: u32 = fill.iter().sum();
            let total: u32 = shape.iter().sum();
            if done == total {
                return 1;
            }
            let mut count = 0;
            for row in 0..shape.len() {
                let can_grow = fill[row] < shape[row] && (row == 0 || fill[row] < fill[row - 1]);
                if can_grow {
                    fill[row] += 1;
                    count += rec(shape, fill);
                    fill[row] -= 1;
                }
            }
            count
        }
        let mut fill = vec![0u32; lambda.len()];
        rec(lambda.parts(), &mut fill)
    }

    #[test]
    fn dimension_matches_syt_oracle() {
        // Frozen anchor from the oracle.
        assert_eq!(syt_count(&"[2,1]".parse().unwrap()), 2);
        for d in 0..=6 {
            for lam in enumerate_partitions(d) {
                assert_eq!(
                    dimension(&lam),
                    BigInt::from(syt_count(&lam)),
                    "shape {lam}"
                );
            }
        }
    }

    #[test]
    fn dimension_trivial_shapes() {
        for d in 1..=8 {
            assert_eq!(dimension(&Partition::row(d)), BigInt::one());
            assert_eq!(dimension(&Partition::column(d)), BigInt::one());
        }
        assert_eq!(dimension(&Partition::empty()), BigInt::one());
        assert_eq!(dimension(&"[2,1]".parse().unwrap()), BigInt::from(2));
    }

    #[test]
    fn dimension_independent_of_row_padding() {
        for d in 0..=6 {
            for lam in enumerate_partitions(d) {
                let base = dimension(&lam);
                for extra in 1..=3 {
                    assert_eq!(dimension_with_rows(&lam, lam.len() + extra), base);
                }
            }
        }
    }

    #[test]
    fn dimension_squares_sum_to_group_order() {
        for d in 1..=8u32 {
            let sum: BigInt = enumerate_partitions(d)
                .iter()
                .map(|lam| {
                    let dim = dimension(lam);
                    &dim * &dim
                })
                .sum();
            assert_eq!(sum, factorial(d as u64));
        }
    }

    /// Sign of a permutation of cycle type `delta`, computed directly.
    fn sign_of_class(delta: &Partition) -> i64 {
        let transpositions: u32 = delta.parts().iter().map(|&p| p - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn trivial_and_sign_rows() {
        for d in 1..=6 {
            for delta in enumerate_partitions(d) {
                assert_eq!(character(&Partition::row(d), &delta).unwrap(), 1);
                assert_eq!(
                    character(&Partition::column(d), &delta).unwrap(),
                    sign_of_class(&delta),
                    "sign at {delta}"
                );
            }
        }
    }

    #[test]
    fn standard_representation_row_is_fixed_points_minus_one() {
        // chi_{(d-1,1)} equals (#fixed points - 1) of the class: the
        // defining permutation representation minus the trivial summand.
        for d in 2..=7u32 {
            let lam = Partition::new(vec![d - 1, 1]).unwrap();
            for delta in enumerate_partitions(d) {
                let fixed = delta.parts().iter().filter(|&&p| p == 1).count() as i64;
                assert_eq!(character(&lam, &delta).unwrap(), fixed - 1, "class {delta}");
            }
        }
    }

    #[test]
    fn pinned_character_values() {
        // Brute force over the two 2x2 permutation matrices of the sign rep
        // gives chi_{(1,1)}((2)) = -1; frozen here.
        assert_eq!(
            character(&"[1,1]".parse().unwrap(), &"[2]".parse().unwrap()).unwrap(),
            -1
        );
        assert_eq!(
            character(&"[2,1]".parse().unwrap(), &"[1,1,1]".parse().unwrap()).unwrap(),
            2
        );
        assert_eq!(
            character(&"[2,1]".parse().unwrap(), &"[3]".parse().unwrap()).unwrap(),
            -1
        );
    }

    #[test]
    fn identity_column_is_dimension() {
        for d in 1..=8 {
            for lam in enumerate_partitions(d) {
                let chi = character(&lam, &Partition::column(d)).unwrap();
                assert_eq!(BigInt::from(chi), dimension(&lam));
            }
        }
    }

    #[test]
    fn weight_mismatch_is_an_error() {
        let e = character(&"[2]".parse().unwrap(), &"[1,1,1]".parse().unwrap());
        assert!(matches!(e, Err(Error::WeightMismatch(_))));
        assert!(phi(&"[2]".parse().unwrap(), &"[3]".parse().unwrap()).is_err());
    }

    #[test]
    fn phi_values() {
        // phi is 1 on the identity class for every shape.
        for d in 1..=6 {
            for lam in enumerate_partitions(d) {
                assert_eq!(phi(&lam, &Partition::column(d)).unwrap(), int(1));
            }
        }
        assert_eq!(
            phi(&"[1]".parse().unwrap(), &"[1]".parse().unwrap()).unwrap(),
            int(1)
        );
        // chi=1, dim=1, zeta=2, d!=2.
        assert_eq!(
            phi(&"[2]".parse().unwrap(), &"[2]".parse().unwrap()).unwrap(),
            int(1)
        );
    }

    #[test]
    fn table_small_degrees() {
        let t1 = character_table(1).unwrap();
        assert_eq!(t1.partitions().len(), 1);
        assert_eq!(t1.chi_at(0, 0), 1);

        let t2 = character_table(2).unwrap();
        let p2: Partition = "[2]".parse().unwrap();
        let p11: Partition = "[1,1]".parse().unwrap();
        assert_eq!(t2.chi(&p2, &p11).unwrap(), 1);
        assert_eq!(t2.chi(&p2, &p2).unwrap(), 1);
        assert_eq!(t2.chi(&p11, &p11).unwrap(), 1);
        assert_eq!(t2.chi(&p11, &p2).unwrap(), -1);

        let t3 = character_table(3).unwrap();
        assert_eq!(t3.partitions().len(), 3);
        assert_eq!(
            t3.chi(&"[2,1]".parse().unwrap(), &"[3]".parse().unwrap())
                .unwrap(),
            -1
        );
        // Table lookups agree with the memoized recursion.
        for lam in t3.partitions() {
            for del in t3.partitions() {
                assert_eq!(t3.chi(lam, del).unwrap(), character(lam, del).unwrap());
            }
        }
    }

    #[test]
    fn table_cap_enforced() {
        assert!(matches!(
            character_table_with_cap(9, 8),
            Err(Error::Capacity(_))
        ));
        assert!(character_table_with_cap(8, 8).is_ok());
    }

    #[test]
    fn orthogonality_spot_checks() {
        // Column orthogonality at d = 4 with the zeta weight.
        let d = 4u32;
        let t = character_table(d).unwrap();
        let parts = t.partitions().to_vec();
        for (j1, d1) in parts.iter().enumerate() {
            for (j2, d2) in parts.iter().enumerate() {
                let mut sum = Scalar::zero();
                for i in 0..parts.len() {
                    sum += int(t.chi_at(i, j1)) * int(t.chi_at(i, j2));
                }
                let expect = if j1 == j2 {
                    Scalar::from_integer(zeta(d1))
                } else {
                    Scalar::zero()
                };
                assert_eq!(sum, expect, "columns {d1}, {d2}");
            }
        }
    }
}
