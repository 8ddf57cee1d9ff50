//! Prime generation and the order/index classification of primes `q`
//! relative to a fixed characteristic `p`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cyclo_trace::{self, CycloError};

/// Largest bound the flat sieve handles; above it the segmented sieve runs.
pub const FLAT_SIEVE_LIMIT: u64 = 10_000_000;
/// Hard upper bound for any sieve request.
pub const SIEVE_BUDGET: u64 = 1_000_000_000;
/// Default largest `q` for which the polynomial gcd test is run.
pub const DEFAULT_GCD_BUDGET: u64 = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("q = p = {0} is not supported: the order of p mod p is undefined")]
    SamePrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("sieve bound {requested} exceeds budget {budget}")]
    SieveBudget { requested: u64, budget: u64 },
    #[error("bound must be at least 2, got {0}")]
    BoundTooSmall(u64),
    #[error("gcd budget exceeded: requested x = {requested}, scanned up to {high_water}")]
    GcdBudget {
        requested: u64,
        high_water: u64,
        partial: Vec<u64>,
    },
    #[error(transparent)]
    Cyclo(#[from] Box<CycloError>),
}

impl From<CycloError> for ClassError {
    fn from(e: CycloError) -> Self {
        ClassError::Cyclo(Box::new(e))
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut b = base % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

/// Trial-division primality; fine for the argument sizes the CLI accepts.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mut d = 11u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// All primes `<= x`, ascending.
pub fn sieve_primes(x: u64) -> Result<Vec<u64>, ClassError> {
    if x < 2 {
        return Err(ClassError::BoundTooSmall(x));
    }
    if x > SIEVE_BUDGET {
        return Err(ClassError::SieveBudget {
            requested: x,
            budget: SIEVE_BUDGET,
        });
    }
    if x <= FLAT_SIEVE_LIMIT {
        Ok(flat_sieve(x))
    } else {
        Ok(segmented_sieve(x))
    }
}

/// Odd-only byte sieve.
fn flat_sieve(x: u64) -> Vec<u64> {
    let n = x as usize;
    // index i stands for 2i + 1
    let half = (n - 1) / 2 + 1;
    let mut composite = vec![false; half];
    composite[0] = true;
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= n {
        if !composite[i] {
            let step = 2 * i + 1;
            let mut j = (step * step) / 2;
            while j < half {
                composite[j] = true;
                j += step;
            }
        }
        i += 1;
    }
    let mut out = Vec::with_capacity(estimate_pi(x));
    out.push(2);
    out.extend(
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| 2 * i as u64 + 1),
    );
    out
}

/// Segmented sieve over windows of `SEGMENT` integers.
pub(crate) fn segmented_sieve(x: u64) -> Vec<u64> {
    const SEGMENT: u64 = 1 << 18;
    let root = (x as f64).sqrt() as u64 + 1;
    let base = flat_sieve(root.max(2));
    let mut out = Vec::with_capacity(estimate_pi(x));
    out.extend(base.iter().copied().filter(|&b| b <= x));
    let mut low = root + 1;
    let mut marks = vec![false; SEGMENT as usize];
    while low <= x {
        let high = (low + SEGMENT - 1).min(x);
        let len = (high - low + 1) as usize;
        marks[..len].iter_mut().for_each(|m| *m = false);
        for &b in &base {
            if b * b > high {
                break;
            }
            let start = (low.div_ceil(b) * b).max(b * b);
            let mut m = start;
            while m <= high {
                marks[(m - low) as usize] = true;
                m += b;
            }
        }
        out.extend(
            marks[..len]
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(i, _)| low + i as u64),
        );
        low = high + 1;
    }
    out
}

fn estimate_pi(x: u64) -> usize {
    if x < 17 {
        return 8;
    }
    let xf = x as f64;
    (1.26 * xf / xf.ln()) as usize
}

/// Prime factorization by trial division, as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Multiplicative order of `p` modulo the prime `q`.
///
/// Starts from `q - 1` and strips each prime factor while `p^f == 1` survives.
pub fn mult_order(p: u64, q: u64) -> Result<u64, ClassError> {
    if p % q == 0 {
        return Err(ClassError::SamePrime(q));
    }
    let mut f = q - 1;
    for (ell, e) in factorize(q - 1) {
        for _ in 0..e {
            if pow_mod(p, f / ell, q) == 1 {
                f /= ell;
            } else {
                break;
            }
        }
    }
    Ok(f)
}

/// Per-`q` classification record. Optional fields render as empty CSV cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    pub p: u64,
    pub q: u64,
    pub f: u64,
    pub r: u64,
    pub residue_4p: u64,
    #[serde(rename = "in_E2")]
    pub in_e2: bool,
    #[serde(rename = "in_Eprime")]
    pub in_eprime: Option<bool>,
    pub norm2: Option<i64>,
}

/// `(1 - q*) / 4` with `q* = (-1)^((q-1)/2) q`, for odd `q`.
pub fn index_two_norm(q: u64) -> i64 {
    let q = q as i64;
    let q_star = if q % 4 == 1 { q } else { -q };
    (1 - q_star) / 4
}

fn residue_condition(p: u64, q: u64) -> bool {
    let m = 4 * p;
    let res = q % m;
    res == 1 || res == m - 1
}

pub fn classify(p: u64, q: u64, with_gcd: bool) -> Result<ClassRecord, ClassError> {
    if p == q {
        return Err(ClassError::SamePrime(q));
    }
    for n in [p, q] {
        if !is_prime(n) {
            return Err(ClassError::NotPrime(n));
        }
    }
    let f = mult_order(p, q)?;
    let r = (q - 1) / f;
    let residue_4p = q % (4 * p);
    let in_e2 = r == 2 && residue_condition(p, q);
    let in_eprime = if with_gcd {
        Some(!cyclo_trace::gcd_test(p, q)?.is_one())
    } else {
        None
    };
    let norm2 = (r == 2).then(|| index_two_norm(q));
    Ok(ClassRecord {
        p,
        q,
        f,
        r,
        residue_4p,
        in_e2,
        in_eprime,
        norm2,
    })
}

/// Membership in `E'_2(p)`: index 2 and `q = +-1 (mod 4p)`. Order arithmetic only.
pub fn in_e2_prime(p: u64, q: u64) -> bool {
    if p == q || q < 3 || !residue_condition(p, q) {
        return false;
    }
    let half = (q - 1) / 2;
    // index 2 means ord = (q-1)/2 exactly
    if pow_mod(p, half, q) != 1 {
        return false;
    }
    factorize(half)
        .into_iter()
        .all(|(ell, _)| pow_mod(p, half / ell, q) != 1)
}

/// `E'(p)` up to `x` through the polynomial gcd test. Primes above `gcd_budget`
/// are not examined; in that case the error carries what was found below it.
pub fn enumerate_e_prime(p: u64, x: u64, gcd_budget: u64) -> Result<Vec<u64>, ClassError> {
    if !is_prime(p) {
        return Err(ClassError::NotPrime(p));
    }
    if x < 2 {
        return Ok(Vec::new());
    }
    let scan_to = x.min(gcd_budget);
    let candidates: Vec<u64> = if scan_to >= 2 {
        sieve_primes(scan_to)?
            .into_iter()
            .filter(|&q| q != p)
            .collect()
    } else {
        Vec::new()
    };
    let flags = candidates
        .par_iter()
        .map(|&q| cyclo_trace::gcd_test(p, q).map(|d| !d.is_one()))
        .collect::<Result<Vec<bool>, CycloError>>()?;
    let found: Vec<u64> = candidates
        .into_iter()
        .zip(flags)
        .filter_map(|(q, hit)| hit.then_some(q))
        .collect();
    if x > gcd_budget {
        return Err(ClassError::GcdBudget {
            requested: x,
            high_water: scan_to,
            partial: found,
        });
    }
    Ok(found)
}

/// `E'_2(p)` up to `x`.
pub fn enumerate_e2_prime(p: u64, x: u64) -> Result<Vec<u64>, ClassError> {
    if x < 2 {
        return Ok(Vec::new());
    }
    let primes = sieve_primes(x)?;
    Ok(e2_members(p, &primes))
}

/// Filters an ascending prime list down to `E'_2(p)`, preserving order.
pub fn e2_members(p: u64, primes: &[u64]) -> Vec<u64> {
    primes
        .par_iter()
        .copied()
        .filter(|&q| in_e2_prime(p, q))
        .collect()
}

/// Classification of every prime `q <= x` other than `p`, ascending by `q`.
pub fn classify_range(p: u64, x: u64, with_gcd: bool) -> Result<Vec<ClassRecord>, ClassError> {
    let primes = sieve_primes(x)?;
    primes
        .par_iter()
        .filter(|&&q| q != p)
        .map(|&q| classify(p, q, with_gcd))
        .collect()
}
