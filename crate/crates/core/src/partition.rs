//! Integer partitions: labels for Young diagrams, conjugacy classes and
//! ramification profiles.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::One;

use crate::scalar::factorial;
use crate::{Error, Result};

/// A partition: weakly decreasing sequence of positive integers.
///
/// The empty sequence is the unique partition of 0 and is a first-class
/// value. The textual form is `[3,1,1]` (empty partition: `[]`).
///
/// `Ord` is graded reverse-lexicographic: partitions compare first by
/// weight, then within a weight the one with the larger part at the first
/// differing position comes first. This matches the order produced by
/// [`enumerate_partitions`], so sorted containers keyed by `Partition`
/// iterate grade by grade in enumeration order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Build from an already weakly decreasing list of positive parts.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidPartition(format!(
                    "parts must be weakly decreasing, got {parts:?}"
                )));
            }
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "parts must be positive, got {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    /// Build from parts in any order; zeros are dropped.
    pub fn from_unsorted(parts: impl IntoIterator<Item = u32>) -> Self {
        let mut v: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Single-row partition `(d)`; `empty()` when `d == 0`.
    pub fn row(d: u32) -> Self {
        if d == 0 {
            Self::empty()
        } else {
            Partition(vec![d])
        }
    }

    /// Single-column partition `(1^d)`.
    pub fn column(d: u32) -> Self {
        Partition(vec![1; d as usize])
    }

    /// The class of a simple branch point: `(2, 1^{d-2})`. Requires `d >= 2`.
    pub fn simple(d: u32) -> Self {
        assert!(d >= 2);
        let mut v = vec![1u32; (d - 1) as usize];
        v[0] = 2;
        Partition(v)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `lambda_i` with the convention that parts beyond the length are 0.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Weight `|lambda|`.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Length `l(lambda)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplicity map part value -> count.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Multiset union: the monomial product `p_lambda * p_mu`.
    pub fn union(&self, other: &Partition) -> Partition {
        Partition::from_unsorted(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Remove one occurrence of `part`, if present.
    pub fn remove_part(&self, part: u32) -> Option<Partition> {
        let idx = self.0.iter().position(|&p| p == part)?;
        let mut v = self.0.clone();
        v.remove(idx);
        Some(Partition(v))
    }

    /// Append one part, keeping the parts sorted.
    pub fn with_part(&self, part: u32) -> Partition {
        assert!(part > 0);
        let mut v = self.0.clone();
        let pos = v.partition_point(|&p| p >= part);
        v.insert(pos, part);
        Partition(v)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.weight().cmp(&other.weight()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Same weight: larger leading parts come first.
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            match b.cmp(a) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        // Equal weight and one a prefix of the other cannot happen unless equal.
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidPartition(format!("expected \"[a,b,...]\", got {s:?}")))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in inner.split(',') {
            let p: u32 = tok
                .trim()
                .parse()
                .map_err(|_| Error::InvalidPartition(format!("bad part {tok:?} in {s:?}")))?;
            parts.push(p);
        }
        Partition::new(parts)
    }
}

/// All partitions of `d` in reverse-lexicographic order, from `(d)` down to
/// `(1^d)`. Deterministic; `d = 0` yields the empty partition only.
pub fn enumerate_partitions(d: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    if d == 0 {
        out.push(Partition::empty());
        return out;
    }
    let mut cur = vec![d];
    loop {
        out.push(Partition(cur.clone()));
        // Find the rightmost part > 1 to decrement.
        let Some(k) = cur.iter().rposition(|&p| p > 1) else {
            break;
        };
        let ones = cur.len() - k - 1;
        let new_val = cur[k] - 1;
        cur.truncate(k);
        let mut rem = ones as u32 + new_val + 1;
        while rem > 0 {
            let next = rem.min(new_val);
            cur.push(next);
            rem -= next;
        }
    }
    out
}

/// `zeta_Delta = prod_k m_k! k^{m_k}`: the order of the automorphism group
/// of the Young diagram, equal to the centraliser order of the class.
pub fn zeta(delta: &Partition) -> BigInt {
    let mut acc = BigInt::one();
    for (part, mult) in delta.multiplicities() {
        acc *= factorial(mult as u64);
        acc *= BigInt::from(part).pow(mult);
    }
    acc
}

/// Size of the conjugacy class `C_Delta` in `S_{|Delta|}`: `|Delta|!/zeta`.
pub fn class_size(delta: &Partition) -> BigInt {
    factorial(delta.weight() as u64) / zeta(delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent partition-counting oracle: p(n) by the bounded-part
    /// recurrence p(n, k) = p(n-k, k) + p(n, k-1).
    fn count_partitions(n: u32) -> u64 {
        fn p(n: i64, k: i64, memo: &mut BTreeMap<(i64, i64), u64>) -> u64 {
            if n == 0 {
                return 1;
            }
            if n < 0 || k == 0 {
                return 0;
            }
            if let Some(&v) = memo.get(&(n, k)) {
                return v;
            }
            let v = p(n - k, k, memo) + p(n, k - 1, memo);
            memo.insert((n, k), v);
            v
        }
        p(n as i64, n as i64, &mut BTreeMap::new())
    }

    #[test]
    fn enumerate_degree_zero() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
    }

    #[test]
    fn enumerate_counts_match_recurrence_oracle() {
        // Frozen from the oracle: p(4) = 5, p(5) = 7.
        assert_eq!(count_partitions(4), 5);
        assert_eq!(count_partitions(5), 7);
        for d in 0..=14 {
            assert_eq!(enumerate_partitions(d).len() as u64, count_partitions(d));
        }
    }

    #[test]
    fn enumerate_order_and_uniqueness() {
        for d in 0..=10 {
            let parts = enumerate_partitions(d);
            for w in parts.windows(2) {
                assert!(w[0] < w[1], "{} !< {}", w[0], w[1]);
            }
            for p in &parts {
                assert_eq!(p.weight(), d);
            }
        }
    }

    #[test]
    fn enumerate_d4_explicit() {
        let got: Vec<String> = enumerate_partitions(4)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(got, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta(&"[3,3]".parse().unwrap()), BigInt::from(18));
        assert_eq!(zeta(&"[1]".parse().unwrap()), BigInt::from(1));
        // 1!*2^1 * 2!*1^2 = 4
        assert_eq!(zeta(&"[2,1,1]".parse().unwrap()), BigInt::from(4));
        assert_eq!(zeta(&Partition::empty()), BigInt::from(1));
    }

    #[test]
    fn class_sizes() {
        assert_eq!(class_size(&"[2]".parse().unwrap()), BigInt::from(1));
        assert_eq!(class_size(&"[3]".parse().unwrap()), BigInt::from(2));
        assert_eq!(class_size(&"[2,1]".parse().unwrap()), BigInt::from(3));
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for d in 0..=30u32 {
            let mut sum = BigInt::from(0);
            for p in enumerate_partitions(d) {
                assert_eq!(zeta(&p).clone() * class_size(&p), factorial(d as u64));
                sum += class_size(&p);
            }
            assert_eq!(sum, factorial(d as u64));
        }
    }

    #[test]
    fn parse_and_display() {
        let p: Partition = "[3,1,1]".parse().unwrap();
        assert_eq!(p.parts(), &[3, 1, 1]);
        assert_eq!(p.to_string(), "[3,1,1]");
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("[1,3]".parse::<Partition>().is_err());
        assert!("[0]".parse::<Partition>().is_err());
        assert!("3,1".parse::<Partition>().is_err());
    }

    #[test]
    fn helpers() {
        let p = Partition::simple(4);
        assert_eq!(p.to_string(), "[2,1,1]");
        assert_eq!(p.weight(), 4);
        let u = p.union(&"[3]".parse().unwrap());
        assert_eq!(u.to_string(), "[3,2,1,1]");
        assert_eq!(p.remove_part(2).unwrap().to_string(), "[1,1]");
        assert!(p.remove_part(5).is_none());
        assert_eq!(p.with_part(3).to_string(), "[3,2,1,1]");
    }
}
