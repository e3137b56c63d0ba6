//! Dense square matrices over exact rationals, plus the seeded generators
//! used for polynomial identity testing.

use std::fmt;

use num::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::{int, Scalar};
use crate::{Error, Result};

/// Square matrix with exact rational entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn new(n: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Matrix(format!(
                "expected {} entries for size {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(ExactMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Matrix("rows must form a square matrix".into()));
        }
        Ok(ExactMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(n: usize, entries: &[i64]) -> Result<Self> {
        Self::new(n, entries.iter().map(|&v| int(v)).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::fill(n, Scalar::zero());
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn diagonal(diag: &[Scalar]) -> Self {
        let n = diag.len();
        let mut m = Self::fill(n, Scalar::zero());
        for (i, v) in diag.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    fn fill(n: usize, v: Scalar) -> Self {
        ExactMatrix {
            n,
            entries: vec![v; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.n != other.n {
            return Err(Error::Matrix(format!(
                "size mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        let n = self.n;
        let mut out = Self::fill(n, Scalar::zero());
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let contrib = a * &other[(k, j)];
                    out[(i, j)] += contrib;
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n).map(|i| self[(i, i)].clone()).sum()
    }

    /// `tr(self^m)`; `m = 0` gives the size.
    pub fn trace_pow(&self, m: u32) -> Scalar {
        if m == 0 {
            return int(self.n as i64);
        }
        let mut acc = self.clone();
        for _ in 1..m {
            acc = acc.mul(self).expect("same size");
        }
        acc.trace()
    }

    /// Exact determinant by Gaussian elimination with pivoting.
    pub fn determinant(&self) -> Scalar {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Scalar::zero();
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] / &p;
                for j in col..n {
                    let sub = &factor * &a[col * n + j];
                    a[r * n + j] -= sub;
                }
            }
        }
        det
    }

    /// Exact inverse via Gauss-Jordan; `None` if singular.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut b = Self::identity(n).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    b.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a[col * n + col].clone();
            for j in 0..n {
                a[col * n + j] /= &p;
                b[col * n + j] /= &p;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for j in 0..n {
                    let s = &factor * &a[col * n + j];
                    a[r * n + j] -= s;
                    let s = &factor * &b[col * n + j];
                    b[r * n + j] -= s;
                }
            }
        }
        Some(ExactMatrix { n, entries: b })
    }

    /// Rank by elimination.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| !a[r * n + col].is_zero()) else {
                continue;
            };
            if pivot != rank {
                for j in 0..n {
                    a.swap(pivot * n + j, rank * n + j);
                }
            }
            let p = a[rank * n + col].clone();
            for r in rank + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] / &p;
                for j in col..n {
                    let sub = &factor * &a[rank * n + j];
                    a[r * n + j] -= sub;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Common denominator of all entries.
    pub fn denominator_lcm(&self) -> num::BigInt {
        let mut l = num::BigInt::one();
        for e in &self.entries {
            let d = e.denom();
            let g = num::Integer::gcd(&l, d);
            l = l / g * d;
        }
        l.abs()
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.n + j]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                write!(f, "{} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let num: i64 = rng.random_range(-4..=4);
    let den: i64 = rng.random_range(1..=3);
    Scalar::new(num.into(), den.into())
}

fn small_int(rng: &mut ChaCha8Rng) -> Scalar {
    int(rng.random_range(-3..=3))
}

/// Seeded invertible matrix with small rational entries.
///
/// The generator is ChaCha8 keyed by `seed_from_u64`, entries are sampled as
/// numerator in `[-4, 4]` over denominator in `[1, 3]`, and the whole matrix
/// is resampled until the determinant is nonzero. Fully reproducible across
/// platforms.
pub fn seeded_invertible(n: usize, seed: u64) -> ExactMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let entries: Vec<Scalar> = (0..n * n).map(|_| small_rational(&mut rng)).collect();
        let m = ExactMatrix { n, entries };
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

/// Seeded diagonal matrix with pairwise distinct nonzero rational entries.
pub fn seeded_distinct_diagonal(n: usize, seed: u64) -> ExactMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut diag: Vec<Scalar> = Vec::with_capacity(n);
    while diag.len() < n {
        let v = small_rational(&mut rng);
        if !v.is_zero() && !diag.contains(&v) {
            diag.push(v);
        }
    }
    ExactMatrix::diagonal(&diag)
}

/// Seeded pair `(A, C)` with `A C = C` exactly, `A` invertible, and
/// `rank(C) = rank`.
///
/// Construction: sample an invertible `P`, set
/// `A = P diag(I_rank, R) P^{-1}` with `R` invertible and without
/// eigenvalue 1 (checked as `det(R - I) != 0`), and `C = P [B; 0]` where the
/// `rank x n` block `B` carries an identity block to pin its row rank.
pub fn seeded_ac_pair(n: usize, rank: usize, seed: u64) -> (ExactMatrix, ExactMatrix) {
    assert!(rank >= 1 && rank <= n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = loop {
        let entries: Vec<Scalar> = (0..n * n).map(|_| small_int(&mut rng)).collect();
        let m = ExactMatrix { n, entries };
        if !m.determinant().is_zero() {
            break m;
        }
    };
    let p_inv = p.inverse().expect("invertible by construction");

    let r_size = n - rank;
    let r = loop {
        if r_size == 0 {
            break ExactMatrix::identity(0);
        }
        let entries: Vec<Scalar> = (0..r_size * r_size).map(|_| small_int(&mut rng)).collect();
        let m = ExactMatrix { n: r_size, entries };
        let mut shifted = m.clone();
        for i in 0..r_size {
            shifted[(i, i)] -= Scalar::one();
        }
        if !m.determinant().is_zero() && !shifted.determinant().is_zero() {
            break m;
        }
    };

    let mut block = ExactMatrix::identity(n);
    for i in 0..r_size {
        for j in 0..r_size {
            block[(rank + i, rank + j)] = r[(i, j)].clone();
        }
    }
    let a = p.mul(&block).unwrap().mul(&p_inv).unwrap();

    let mut c0 = ExactMatrix::fill(n, Scalar::zero());
    for i in 0..rank {
        for j in 0..n {
            c0[(i, j)] = if i == j {
                Scalar::one()
            } else {
                small_int(&mut rng)
            };
        }
    }
    let c = p.mul(&c0).unwrap();
    (a, c)
}
