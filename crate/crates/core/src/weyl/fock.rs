//! The Fock space: commuting polynomials in the oscillator slots `Z_ij`
//! (one matrix of variables per leg), with exact coefficients.
//!
//! The constant polynomial 1 is the vacuum. [`PolyMatrix`] is the workhorse
//! for building trace words like `tr((ZC)^k)` symbolically: a square matrix
//! whose entries are [`FockPoly`] values.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::{One, Zero};

use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;
use crate::symfunc::PowerSumPoly;

/// The variable space: `mats` matrices of size `n x n`, i.e. `mats * n^2`
/// commuting slots.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VarSpace {
    pub mats: u8,
    pub n: u8,
}

impl VarSpace {
    pub fn new(mats: u8, n: u8) -> Self {
        VarSpace { mats, n }
    }

    /// Single-matrix space of size `n`.
    pub fn single(n: usize) -> Self {
        VarSpace {
            mats: 1,
            n: n as u8,
        }
    }

    pub fn var(&self, mat: u8, row: u8, col: u8) -> u32 {
        debug_assert!(mat < self.mats && row < self.n && col < self.n);
        ((mat as u32 * self.n as u32) + row as u32) * self.n as u32 + col as u32
    }

    pub fn decode(&self, id: u32) -> (u8, u8, u8) {
        let n = self.n as u32;
        let col = id % n;
        let rest = id / n;
        let row = rest % n;
        let mat = rest / n;
        (mat as u8, row as u8, col as u8)
    }

    pub fn num_vars(&self) -> u32 {
        self.mats as u32 * (self.n as u32).pow(2)
    }

    /// Render a slot 1-based, `Z(i,j)` or `Z<k>(i,j)` for multi-leg spaces.
    pub fn var_name(&self, id: u32) -> String {
        let (mat, row, col) = self.decode(id);
        if self.mats == 1 {
            format!("Z({},{})", row + 1, col + 1)
        } else {
            format!("Z{}({},{})", mat + 1, row + 1, col + 1)
        }
    }
}

/// A monomial in the slot variables: sorted `(var id, exponent)` pairs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(id: u32) -> Self {
        Monomial(vec![(id, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (id, e) in pairs {
            if e > 0 {
                *map.entry(id).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent_of(&self, id: u32) -> u32 {
        self.0
            .iter()
            .find(|&&(v, _)| v == id)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_pairs(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Does `self` divide `other` slotwise?
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(id, e)| other.exponent_of(id) >= e)
    }

    /// Apply the derivative multi-index `deriv` to this monomial. Returns
    /// the falling-factorial coefficient and the reduced monomial, or `None`
    /// when a slot is differentiated more often than its exponent.
    pub fn differentiate(&self, deriv: &Monomial) -> Option<(BigInt, Monomial)> {
        let mut coeff = BigInt::one();
        let mut reduced: Vec<(u32, u32)> = Vec::with_capacity(self.0.len());
        let mut d_iter = deriv.0.iter().peekable();
        for &(id, e) in &self.0 {
            let mut rem = e;
            while let Some(&&(did, de)) = d_iter.peek() {
                if did < id {
                    return None; // derivative in a slot absent from the monomial
                }
                if did > id {
                    break;
                }
                if de > e {
                    return None;
                }
                for k in 0..de {
                    coeff *= BigInt::from(e - k);
                }
                rem = e - de;
                d_iter.next();
            }
            if rem > 0 {
                reduced.push((id, rem));
            }
        }
        if d_iter.next().is_some() {
            return None;
        }
        Some((coeff, Monomial(reduced)))
    }

    /// Swap row and column of every slot: `(mat, i, j) -> (mat, j, i)`.
    pub fn transpose_indices(&self, space: VarSpace) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(id, e)| {
            let (mat, row, col) = space.decode(id);
            (space.var(mat, col, row), e)
        }))
    }

    /// `prod_v exp_v!`, the Wick multiplicity of a perfect slotwise pairing.
    pub fn factorial_product(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &(_, e) in &self.0 {
            for k in 2..=e {
                acc *= BigInt::from(k);
            }
        }
        acc
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, &(id, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{id}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial in the oscillator slots with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct FockPoly {
    space: VarSpace,
    terms: BTreeMap<Monomial, Scalar>,
}

impl FockPoly {
    pub fn zero(space: VarSpace) -> Self {
        FockPoly {
            space,
            terms: BTreeMap::new(),
        }
    }

    /// The vacuum: the constant polynomial 1.
    pub fn one(space: VarSpace) -> Self {
        Self::constant(space, Scalar::one())
    }

    pub fn constant(space: VarSpace, c: Scalar) -> Self {
        let mut p = Self::zero(space);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(space: VarSpace, mat: u8, row: u8, col: u8) -> Self {
        let mut p = Self::zero(space);
        p.add_term(Monomial::var(space.var(mat, row, col)), Scalar::one());
        p
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// First (lowest-key) term, if any.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.space);
        }
        FockPoly {
            space: self.space,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let first = it.next()?.degree();
        it.all(|m| m.degree() == first).then_some(first)
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Value at `Z = 0`: the constant coefficient.
    pub fn evaluate_at_zero(&self) -> Scalar {
        self.coeff(&Monomial::one())
    }
}

impl std::ops::Add for &FockPoly {
    type Output = FockPoly;
    fn add(self, rhs: &FockPoly) -> FockPoly {
        assert_eq!(self.space, rhs.space, "variable-space mismatch");
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl std::ops::Sub for &FockPoly {
    type Output = FockPoly;
    fn sub(self, rhs: &FockPoly) -> FockPoly {
        assert_eq!(self.space, rhs.space, "variable-space mismatch");
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), -v.clone());
        }
        out
    }
}

impl std::ops::Mul for &FockPoly {
    type Output = FockPoly;
    fn mul(self, rhs: &FockPoly) -> FockPoly {
        assert_eq!(self.space, rhs.space, "variable-space mismatch");
        let mut out = FockPoly::zero(self.space);
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                out.add_term(ka.mul(kb), va * vb);
            }
        }
        out
    }
}

impl fmt::Display for FockPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.pairs().is_empty() {
                write!(f, "{c}")?;
                continue;
            }
            write!(f, "{c}*")?;
            for (k, &(id, e)) in m.pairs().iter().enumerate() {
                if k > 0 {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.space.var_name(id))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FockPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Square matrix with [`FockPoly`] entries.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    space: VarSpace,
    n: usize,
    entries: Vec<FockPoly>,
}

impl PolyMatrix {
    pub fn from_exact(space: VarSpace, m: &ExactMatrix) -> Self {
        let n = m.size();
        let entries = (0..n * n)
            .map(|idx| FockPoly::constant(space, m[(idx / n, idx % n)].clone()))
            .collect();
        PolyMatrix { space, n, entries }
    }

    /// The matrix of slot variables of one leg.
    pub fn vars(space: VarSpace, mat: u8) -> Self {
        let n = space.n as usize;
        let entries = (0..n * n)
            .map(|idx| FockPoly::var(space, mat, (idx / n) as u8, (idx % n) as u8))
            .collect();
        PolyMatrix { space, n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &FockPoly {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.space, other.space, "variable-space mismatch");
        assert_eq!(self.n, other.n, "size mismatch");
        let n = self.n;
        let entries = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let mut acc = FockPoly::zero(self.space);
                for k in 0..n {
                    acc = &acc + &(self.entry(i, k) * other.entry(k, j));
                }
                acc
            })
            .collect();
        PolyMatrix {
            space: self.space,
            n,
            entries,
        }
    }

    pub fn trace(&self) -> FockPoly {
        let mut acc = FockPoly::zero(self.space);
        for i in 0..self.n {
            acc = &acc + self.entry(i, i);
        }
        acc
    }
}

/// Evaluate a power-sum polynomial at a matrix word: `p_k -> tr(M^k)`.
pub fn eval_powersum_at(f: &PowerSumPoly, m: &PolyMatrix) -> FockPoly {
    let space = m.space;
    let max_part = f
        .terms()
        .flat_map(|(delta, _)| delta.parts().iter().copied())
        .max()
        .unwrap_or(0);
    // Traces of powers up to the largest part appearing in f.
    let mut traces: Vec<FockPoly> = Vec::with_capacity(max_part as usize + 1);
    traces.push(FockPoly::constant(space, crate::scalar::int(m.n as i64)));
    let mut power = None::<PolyMatrix>;
    for _ in 1..=max_part {
        let next = match power {
            None => m.clone(),
            Some(p) => p.mul(m),
        };
        traces.push(next.trace());
        power = Some(next);
    }
    let mut out = FockPoly::zero(space);
    for (delta, coeff) in f.terms() {
        let mut term = FockPoly::constant(space, coeff.clone());
        for &part in delta.parts() {
            term = &term * &traces[part as usize];
        }
        out = &out + &term;
    }
    out
}
