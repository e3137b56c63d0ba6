//! Hurwitz numbers, by the character formula and by an independent
//! permutation-counting oracle.
//!
//! The character route sums `(dim lambda/d!)^e prod_i phi_lambda(Delta^i)`
//! over the partitions of `d`. The oracle literally counts tuples in `S_d`
//! solving the monodromy equation
//! `sigma_1 ... sigma_f rho_1^2 ... rho_m^2 [a_1,b_1] ... [a_h,b_h] = 1`
//! and divides by `d!`. The two routes never share code and are compared
//! for exact equality in the acceptance suite.

use num::bigint::BigInt;
use num::traits::Pow;

use crate::characters::character_table;
use crate::par::{map_indexed, Exec};
use crate::partition::{class_size, enumerate_partitions, zeta, Partition};
use crate::scalar::{factorial, Scalar};
use crate::{Error, Result};

/// Base-surface data: either a bare Euler characteristic or an explicit
/// handle/cross-cap realization with `e = 2 - 2h - m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceBase {
    Euler(i64),
    HandlesCrosscaps { handles: u32, crosscaps: u32 },
}

impl SurfaceBase {
    pub fn euler(&self) -> i64 {
        match *self {
            SurfaceBase::Euler(e) => e,
            SurfaceBase::HandlesCrosscaps { handles, crosscaps } => {
                2 - 2 * handles as i64 - crosscaps as i64
            }
        }
    }

    /// Canonical `(handles, crosscaps)` realization for the oracle. A bare
    /// Euler characteristic picks the orientable realization when `e` is
    /// even and the purely cross-cap one when `e` is odd.
    pub fn realization(&self) -> (u32, u32) {
        match *self {
            SurfaceBase::HandlesCrosscaps { handles, crosscaps } => (handles, crosscaps),
            SurfaceBase::Euler(e) => {
                debug_assert!(e <= 2);
                if (2 - e) % 2 == 0 {
                    (((2 - e) / 2) as u32, 0)
                } else {
                    (0, (2 - e) as u32)
                }
            }
        }
    }
}

/// Degree, ramification profiles and base surface of a covering count.
#[derive(Clone, Debug)]
pub struct BranchingData {
    degree: u32,
    profiles: Vec<Partition>,
    base: SurfaceBase,
}

impl BranchingData {
    pub fn new(degree: u32, profiles: Vec<Partition>, base: SurfaceBase) -> Result<Self> {
        if base.euler() > 2 {
            return Err(Error::Precondition(format!(
                "euler characteristic must be <= 2, got {}",
                base.euler()
            )));
        }
        for p in &profiles {
            if p.weight() != degree {
                return Err(Error::WeightMismatch(format!(
                    "profile {p} has weight {} but degree is {degree}",
                    p.weight()
                )));
            }
        }
        Ok(BranchingData {
            degree,
            profiles,
            base,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn profiles(&self) -> &[Partition] {
        &self.profiles
    }

    pub fn base(&self) -> SurfaceBase {
        self.base
    }
}

/// Hurwitz number via the character formula:
/// `H_e(Delta^1..Delta^k) = sum_lambda (dim lambda/d!)^e prod_i phi_lambda(Delta^i)`.
pub fn hurwitz_character(data: &BranchingData) -> Result<Scalar> {
    let d = data.degree;
    let e = data.base.euler();
    let table = character_table(d)?;
    let mut profile_idx = Vec::with_capacity(data.profiles.len());
    for p in &data.profiles {
        profile_idx.push(
            table
                .index_of(p)
                .expect("validated: profile weight equals degree"),
        );
    }
    let zetas: Vec<Scalar> = data
        .profiles
        .iter()
        .map(|p| Scalar::from_integer(zeta(p)))
        .collect();
    let mut total = Scalar::new(0.into(), 1.into());
    for li in 0..table.partitions().len() {
        let mut term = table.dim_fraction(li).pow(e as i32);
        for (k, &pi) in profile_idx.iter().enumerate() {
            // phi = chi / (dim/d! * zeta).
            let chi = Scalar::from_integer(BigInt::from(table.chi_at(li, pi)));
            if num::Zero::is_zero(&chi) {
                term = Scalar::new(0.into(), 1.into());
                break;
            }
            term *= chi / (table.dim_fraction(li) * &zetas[k]);
        }
        total += term;
    }
    Ok(total)
}

/// Three-point Hurwitz number on the sphere, `e = 2` in the character
/// formula (the squared-dimension exponent is the one the permutation
/// oracle confirms at `d = 2`).
pub fn three_point_sphere(delta: &Partition, nu: &Partition, mu: &Partition) -> Result<Scalar> {
    let d = delta.weight();
    if nu.weight() != d || mu.weight() != d {
        return Err(Error::WeightMismatch(format!(
            "three-point profiles must share a weight: {delta}, {nu}, {mu}"
        )));
    }
    let data = BranchingData::new(
        d,
        vec![delta.clone(), nu.clone(), mu.clone()],
        SurfaceBase::Euler(2),
    )?;
    hurwitz_character(&data)
}

/// Riemann-Hurwitz: Euler characteristic of the covering surface,
/// `e_base * d + sum_i (l(Delta^i) - d)`.
pub fn riemann_hurwitz_euler(e_base: i64, degree: u32, profiles: &[Partition]) -> Result<i64> {
    for p in profiles {
        if p.weight() != degree {
            return Err(Error::WeightMismatch(format!(
                "profile {p} has weight {} but degree is {degree}",
                p.weight()
            )));
        }
    }
    Ok(e_base * degree as i64
        + profiles
            .iter()
            .map(|p| p.len() as i64 - degree as i64)
            .sum::<i64>())
}

/// All two-point sphere numbers of one degree, for the `delta/zeta` law.
pub fn two_point_sphere_table(d: u32) -> Result<Vec<(Partition, Partition, Scalar)>> {
    two_point_sphere_table_exec(d, Exec::Auto)
}

/// Sequential reference for [`two_point_sphere_table`].
pub fn two_point_sphere_table_seq(d: u32) -> Result<Vec<(Partition, Partition, Scalar)>> {
    two_point_sphere_table_exec(d, Exec::Seq)
}

fn two_point_sphere_table_exec(d: u32, exec: Exec) -> Result<Vec<(Partition, Partition, Scalar)>> {
    let parts = enumerate_partitions(d);
    // Warm the table cache before fanning out.
    character_table(d)?;
    let n = parts.len();
    let rows = map_indexed(exec, n * n, |idx| {
        let (i, j) = (idx / n, idx % n);
        let data = BranchingData::new(
            d,
            vec![parts[i].clone(), parts[j].clone()],
            SurfaceBase::Euler(2),
        )
        .expect("weights match");
        let v = hurwitz_character(&data).expect("degree already validated");
        (parts[i].clone(), parts[j].clone(), v)
    });
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Permutation oracle
// ---------------------------------------------------------------------------

/// Permutations of `0..d` in one-line notation, plus Lehmer-code ranking so
/// the oracle can use dense count vectors indexed by rank.
pub(crate) mod perm {
    use crate::partition::Partition;

    pub type Perm = Vec<u8>;

    pub fn identity(d: usize) -> Perm {
        (0..d as u8).collect()
    }

    /// `(p * q)(i) = p[q[i]]`: apply `q` first.
    pub fn compose(p: &[u8], q: &[u8]) -> Perm {
        q.iter().map(|&i| p[i as usize]).collect()
    }

    pub fn inverse(p: &[u8]) -> Perm {
        let mut inv = vec![0u8; p.len()];
        for (i, &v) in p.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        inv
    }

    pub fn cycle_type(p: &[u8]) -> Partition {
        let d = p.len();
        let mut seen = vec![false; d];
        let mut cycles = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = p[cur] as usize;
                len += 1;
            }
            cycles.push(len);
        }
        Partition::from_unsorted(cycles)
    }

    /// Canonical class representative: cycles laid out over consecutive
    /// blocks `(0..k1)(k1..k1+k2)...`.
    pub fn class_representative(delta: &Partition, d: usize) -> Perm {
        let mut p = identity(d);
        let mut offset = 0usize;
        for &part in delta.parts() {
            let part = part as usize;
            for i in 0..part {
                p[offset + i] = (offset + (i + 1) % part) as u8;
            }
            offset += part;
        }
        p
    }

    pub fn rank(p: &[u8], fact: &[u64]) -> usize {
        let d = p.len();
        let mut r = 0usize;
        for i in 0..d {
            let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
            r += smaller * fact[d - 1 - i] as usize;
        }
        r
    }

    pub fn unrank(mut r: usize, d: usize, fact: &[u64]) -> Perm {
        let mut pool: Vec<u8> = (0..d as u8).collect();
        let mut p = Vec::with_capacity(d);
        for i in 0..d {
            let f = fact[d - 1 - i] as usize;
            let idx = r / f;
            r %= f;
            p.push(pool.remove(idx));
        }
        p
    }

    pub fn factorials(d: usize) -> Vec<u64> {
        let mut f = vec![1u64; d + 1];
        for i in 1..=d {
            f[i] = f[i - 1] * i as u64;
        }
        f
    }

    /// All elements of the conjugacy class `C_delta` in `S_d`.
    pub fn class_elements(delta: &Partition, d: usize) -> Vec<Perm> {
        let fact = factorials(d);
        let n = fact[d] as usize;
        let mut out = Vec::new();
        for r in 0..n {
            let p = unrank(r, d, &fact);
            if &cycle_type(&p) == delta {
                out.push(p);
            }
        }
        out
    }
}

/// Hard limits for the oracle: past these the dense-count convolution would
/// not fit the time/overflow envelope, so the request is refused up front
/// with the estimated search-space size.
const ORACLE_MAX_DEGREE: u32 = 7;
const ORACLE_MAX_FREE_FACTORS: u32 = 9;

/// One multiplicative factor of the monodromy equation, as a multiset of
/// group elements: `(inverse of element, multiplicity)` pairs ready for the
/// gather-form convolution.
struct Factor {
    items: Vec<(perm::Perm, u128)>,
}

fn class_factor(delta: &Partition, d: usize) -> Factor {
    let items = perm::class_elements(delta, d)
        .into_iter()
        .map(|p| (perm::inverse(&p), 1u128))
        .collect();
    Factor { items }
}

fn square_factor(d: usize, fact: &[u64]) -> Factor {
    let n = fact[d] as usize;
    let mut counts = vec![0u128; n];
    for r in 0..n {
        let p = perm::unrank(r, d, fact);
        let sq = perm::compose(&p, &p);
        counts[perm::rank(&sq, fact)] += 1;
    }
    counts_to_factor(counts, d, fact)
}

fn commutator_factor(d: usize, fact: &[u64], exec: Exec) -> Factor {
    let n = fact[d] as usize;
    let partial = map_indexed(exec, n, |ra| {
        let a = perm::unrank(ra, d, fact);
        let a_inv = perm::inverse(&a);
        let mut counts = vec![0u128; n];
        for rb in 0..n {
            let b = perm::unrank(rb, d, fact);
            let c = perm::compose(
                &perm::compose(&a, &b),
                &perm::compose(&a_inv, &perm::inverse(&b)),
            );
            counts[perm::rank(&c, fact)] += 1;
        }
        counts
    });
    let mut counts = vec![0u128; n];
    for local in partial {
        for (t, v) in counts.iter_mut().zip(local) {
            *t += v;
        }
    }
    counts_to_factor(counts, d, fact)
}

fn counts_to_factor(counts: Vec<u128>, d: usize, fact: &[u64]) -> Factor {
    let items = counts
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .map(|(r, c)| (perm::inverse(&perm::unrank(r, d, fact)), c))
        .collect();
    Factor { items }
}

/// `new[x] = sum_h M[h] * dist[x * h^{-1}]`.
fn convolve(dist: &[u128], factor: &Factor, d: usize, fact: &[u64], exec: Exec) -> Vec<u128> {
    map_indexed(exec, dist.len(), |rx| {
        let x = perm::unrank(rx, d, fact);
        let mut acc = 0u128;
        for (h_inv, mult) in &factor.items {
            let g = perm::compose(&x, h_inv);
            acc += dist[perm::rank(&g, fact)] * mult;
        }
        acc
    })
}

/// Count monodromy-equation solutions by brute-force dynamic programming
/// over `S_d`, divided by `d!`.
///
/// The first profile is pinned to a class representative and the final
/// count scaled by the class size; the remaining factors are convolved as
/// dense count vectors. Correctness of the representative trick is checked
/// against a fully naive tuple search at `d <= 4` in the tests.
pub fn hurwitz_permutation_oracle(data: &BranchingData) -> Result<Scalar> {
    hurwitz_permutation_oracle_exec(data, Exec::Auto)
}

/// Sequential reference for [`hurwitz_permutation_oracle`].
pub fn hurwitz_permutation_oracle_seq(data: &BranchingData) -> Result<Scalar> {
    hurwitz_permutation_oracle_exec(data, Exec::Seq)
}

fn hurwitz_permutation_oracle_exec(data: &BranchingData, exec: Exec) -> Result<Scalar> {
    let d = data.degree;
    let (handles, crosscaps) = data.base.realization();
    let f = data.profiles.len() as u32;
    let free_factors = f.saturating_sub(1) + crosscaps + 2 * handles;
    if d > ORACLE_MAX_DEGREE || free_factors > ORACLE_MAX_FREE_FACTORS {
        let space = factorial(d as u64).pow(free_factors);
        return Err(Error::Capacity(format!(
            "oracle search space ~{space} elements (degree {d}, {free_factors} free factors); \
             limits are degree <= {ORACLE_MAX_DEGREE}, free factors <= {ORACLE_MAX_FREE_FACTORS}"
        )));
    }
    if d == 0 {
        // S_0 has one (empty) permutation and the empty equation holds.
        return Ok(Scalar::new(1.into(), 1.into()));
    }

    let du = d as usize;
    let fact = perm::factorials(du);
    let n = fact[du] as usize;

    let mut dist = vec![0u128; n];
    dist[perm::rank(&perm::identity(du), &fact)] = 1;

    for p in data.profiles.iter().skip(1) {
        dist = convolve(&dist, &class_factor(p, du), du, &fact, exec);
    }
    if crosscaps > 0 {
        let sq = square_factor(du, &fact);
        for _ in 0..crosscaps {
            dist = convolve(&dist, &sq, du, &fact, exec);
        }
    }
    if handles > 0 {
        let comm = commutator_factor(du, &fact, exec);
        for _ in 0..handles {
            dist = convolve(&dist, &comm, du, &fact, exec);
        }
    }

    let (count, multiplier) = match data.profiles.first() {
        Some(first) => {
            let rep = perm::class_representative(first, du);
            let target = perm::inverse(&rep);
            (dist[perm::rank(&target, &fact)], class_size(first))
        }
        None => (
            dist[perm::rank(&perm::identity(du), &fact)],
            BigInt::from(1),
        ),
    };
    Ok(Scalar::new(
        BigInt::from(count) * multiplier,
        factorial(d as u64),
    ))
}
