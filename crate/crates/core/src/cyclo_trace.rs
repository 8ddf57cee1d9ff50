//! Cyclotomic and trace polynomials over `F_p`, the gcd membership test for
//! `E'(p)`, explicit factorizations of `X^q - 1` in `F_p[X; M]`, and an
//! exhaustive `E(p)` oracle built on the irreducible factors of `Phi_q`.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::ff_poly::{Degree, FieldPoly, PolyError, MAX_MODULUS};
use crate::prime_class::{is_prime, mult_order, pow_mod};

/// Default cap on `r + 1` for the exhaustive bipartition search.
pub const DEFAULT_MAX_INDEX: u64 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("q = p = {0} is not supported")]
    SamePrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} out of range (must be a prime below 2^31)")]
    ModulusRange(u64),
    #[error("f = {given} is not the order of {p} mod {q} (expected {expected})")]
    OrderMismatch {
        p: u64,
        q: u64,
        given: u64,
        expected: u64,
    },
    #[error("{q} is not in E'({p}): gcd(Phi_q, reduced trace) is trivial")]
    NotInEPrime { p: u64, q: u64 },
    #[error("internal error: {0}")]
    Internal(&'static str),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn check_pair(p: u64, q: u64) -> Result<(), CycloError> {
    if p >= MAX_MODULUS || !is_prime(p) {
        return Err(CycloError::ModulusRange(p));
    }
    if !is_prime(q) {
        return Err(CycloError::NotPrime(q));
    }
    if p == q {
        return Err(CycloError::SamePrime(q));
    }
    Ok(())
}

fn order(p: u64, q: u64) -> u64 {
    mult_order(p, q).expect("p != q checked by caller")
}

/// `Phi_q = 1 + X + ... + X^(q-1)` over `F_p`.
pub fn build_cyclotomic(q: u64, p: u64) -> Result<FieldPoly, CycloError> {
    if !is_prime(q) {
        return Err(CycloError::NotPrime(q));
    }
    if p >= MAX_MODULUS || !is_prime(p) {
        return Err(CycloError::ModulusRange(p));
    }
    Ok(FieldPoly::new(p, &vec![1; q as usize])?)
}

/// `sum_{j<f} X^(p^j mod q)`, the trace polynomial with exponents folded mod `q`.
pub fn build_reduced_trace(p: u64, q: u64, f: u64) -> Result<FieldPoly, CycloError> {
    check_pair(p, q)?;
    let expected = order(p, q);
    if f != expected {
        return Err(CycloError::OrderMismatch {
            p,
            q,
            given: f,
            expected,
        });
    }
    let mut coeffs = vec![0i64; q as usize];
    let mut e = 1 % q;
    for _ in 0..f {
        coeffs[e as usize] += 1;
        e = e * p % q;
    }
    Ok(FieldPoly::new(p, &coeffs)?)
}

/// Monic `gcd(Phi_q, reduced trace)`; nontrivial exactly when `q` is in `E'(p)`.
pub fn gcd_test(p: u64, q: u64) -> Result<FieldPoly, CycloError> {
    check_pair(p, q)?;
    let f = order(p, q);
    let trace = build_reduced_trace(p, q, f)?;
    let phi = build_cyclotomic(q, p)?;
    Ok(phi.gcd(&trace)?)
}

/// A factorization `X^q - 1 = factor_a * factor_b` inside `F_p[X; M]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoidFactorization {
    pub p: u64,
    pub q: u64,
    #[serde(rename = "gcd")]
    pub gcd_part: FieldPoly,
    pub factor_a: FieldPoly,
    pub factor_b: FieldPoly,
    pub verified: bool,
}

/// Recovers `X^q - 1 = (-R(d)) * R(h)` from `d = gcd(Phi_q, reduced trace)`
/// and `h = (X^q - 1) / d`, where `R` is coefficient reversal.
pub fn factor_in_monoid_ring(p: u64, q: u64) -> Result<MonoidFactorization, CycloError> {
    let d = gcd_test(p, q)?;
    if d.degree() < Degree::Finite(1) {
        return Err(CycloError::NotInEPrime { p, q });
    }
    let target = FieldPoly::x_pow_minus_one(p, q as usize)?;
    let (h, rem) = target.divmod(&d)?;
    if !rem.is_zero() {
        return Err(CycloError::Internal("gcd does not divide X^q - 1"));
    }
    let factor_a = d.reverse()?.neg();
    let factor_b = h.reverse()?;
    let verified = factor_a.mul(&factor_b)? == target
        && [&factor_a, &factor_b].iter().all(|g| {
            g.degree() >= Degree::Finite(1) && g.in_monoid_support() && g.coeff(0) != 0
        });
    if !verified {
        return Err(CycloError::Internal("reversed factors failed verification"));
    }
    Ok(MonoidFactorization {
        p,
        q,
        gcd_part: d,
        factor_a,
        factor_b,
        verified,
    })
}

/// The irreducible factors of `Phi_q` over `F_p` (all of degree `f`), plus `X - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorSet {
    pub p: u64,
    pub q: u64,
    pub f: u64,
    /// Ascending in the `FieldPoly` order.
    pub factors: Vec<FieldPoly>,
    pub linear: FieldPoly,
}

impl FactorSet {
    pub fn index(&self) -> u64 {
        self.factors.len() as u64
    }
}

/// Splits `Phi_q` into its `(q-1)/f` irreducible factors by equal-degree splitting.
pub fn factor_cyclotomic(p: u64, q: u64, seed: u64) -> Result<FactorSet, CycloError> {
    check_pair(p, q)?;
    let f = order(p, q);
    let phi = build_cyclotomic(q, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = equal_degree_split(&phi, p, q, f, &mut rng)?;
    factors.sort();
    if factors.len() as u64 * f != q - 1 {
        return Err(CycloError::Internal("equal-degree splitting lost a factor"));
    }
    Ok(FactorSet {
        p,
        q,
        f,
        factors,
        linear: FieldPoly::new(p, &[-1, 1])?,
    })
}

/// Elements of `F_p[X]/(X^q - 1)` as length-`q` coefficient vectors. Every
/// factor being split divides `X^q - 1`, so splitting elements can be built
/// here and reduced afterwards. In this ring `c^p = c(X^p)`, so Frobenius is
/// the index permutation `j -> j p mod q`.
struct CyclicRing {
    p: u64,
    q: usize,
}

impl CyclicRing {
    fn frobenius_pow(&self, c: &[u32], k: u64) -> Vec<u32> {
        let step = pow_mod(self.p, k, self.q as u64) as usize;
        let mut out = vec![0u32; self.q];
        for (j, &cj) in c.iter().enumerate() {
            out[j * step % self.q] = cj;
        }
        out
    }

    fn mul(&self, a: &[u32], b: &[u32]) -> Result<Vec<u32>, CycloError> {
        let p = self.p;
        let fa = FieldPoly::from_raw(p as u32, a.to_vec());
        let fb = FieldPoly::from_raw(p as u32, b.to_vec());
        let prod = fa.mul(&fb)?;
        let mut out = vec![0u32; self.q];
        for (i, &c) in prod.coeffs().iter().enumerate() {
            let slot = &mut out[i % self.q];
            *slot = ((*slot as u64 + c as u64) % p) as u32;
        }
        Ok(out)
    }

    fn pow(&self, c: &[u32], mut e: u64) -> Result<Vec<u32>, CycloError> {
        let mut acc = vec![0u32; self.q];
        acc[0] = 1;
        let mut base = c.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// `sum_{i<f} c^(p^i)`.
    fn trace(&self, c: &[u32], f: u64) -> Vec<u32> {
        let mut acc = vec![0u64; self.q];
        let mut step = 1usize;
        for _ in 0..f {
            for (j, &cj) in c.iter().enumerate() {
                acc[j * step % self.q] += cj as u64;
            }
            step = step * self.p as usize % self.q;
        }
        acc.into_iter().map(|a| (a % self.p) as u32).collect()
    }

    /// `prod_{i<f} c^(p^i) = c^((p^f - 1)/(p - 1))`, by doubling on `f`.
    fn norm(&self, c: &[u32], f: u64) -> Result<Vec<u32>, CycloError> {
        let mut acc = c.to_vec();
        let mut k = 1u64;
        for bit in (0..63 - f.leading_zeros()).rev() {
            acc = self.mul(&acc, &self.frobenius_pow(&acc, k))?;
            k *= 2;
            if f >> bit & 1 == 1 {
                acc = self.mul(c, &self.frobenius_pow(&acc, 1))?;
                k += 1;
            }
        }
        debug_assert_eq!(k, f);
        Ok(acc)
    }

    /// The element whose gcd with each pending factor splits it: the trace
    /// map for `p = 2`, otherwise `c^((p^f - 1)/2) - 1`.
    fn splitter(&self, c: &[u32], f: u64) -> Result<Vec<u32>, CycloError> {
        if self.p == 2 {
            return Ok(self.trace(c, f));
        }
        let mut t = self.pow(&self.norm(c, f)?, (self.p - 1) / 2)?;
        t[0] = ((t[0] as u64 + self.p - 1) % self.p) as u32;
        Ok(t)
    }
}

/// Splits a squarefree monic divisor of `X^q - 1` whose irreducible factors
/// all have degree `f`. One random element refines every pending factor.
fn equal_degree_split(
    g: &FieldPoly,
    p: u64,
    q: u64,
    f: u64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<FieldPoly>, CycloError> {
    let ring = CyclicRing { p, q: q as usize };
    let f_usize = f as usize;
    let mut done = Vec::new();
    let mut pending = vec![g.monic()];
    while !pending.is_empty() {
        pending.retain(|h| {
            let irreducible = h.degree() == Degree::Finite(f_usize);
            if irreducible {
                done.push(h.clone());
            }
            !irreducible
        });
        if pending.is_empty() {
            break;
        }
        let c: Vec<u32> = (0..q).map(|_| rng.gen_range(0..p) as u32).collect();
        let t = FieldPoly::from_raw(p as u32, ring.splitter(&c, f)?);
        let mut next = Vec::with_capacity(pending.len() * 2);
        for h in pending {
            let d = h.gcd(&t.rem(&h)?)?;
            let dd = d.degree().finite().expect("gcd of nonzero h");
            if dd == 0 || d.degree() == h.degree() {
                next.push(h);
                continue;
            }
            if dd % f_usize != 0 {
                return Err(CycloError::Internal("split degree not a multiple of f"));
            }
            let (cofactor, rem) = h.divmod(&d)?;
            if !rem.is_zero() {
                return Err(CycloError::Internal("split factor does not divide"));
            }
            next.push(d);
            next.push(cofactor);
        }
        pending = next;
    }
    Ok(done)
}

/// Outcome of the exact `E(p)` membership search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Member,
    NonMember,
    Undecided,
}

/// Constant and linear coefficient of a polynomial, i.e. its image mod `X^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct LowTerms {
    c0: u64,
    c1: u64,
}

impl LowTerms {
    const ONE: LowTerms = LowTerms { c0: 1, c1: 0 };

    fn of(g: &FieldPoly) -> Self {
        LowTerms {
            c0: g.coeff(0) as u64,
            c1: g.coeff(1) as u64,
        }
    }

    fn mul(self, other: Self, p: u64) -> Self {
        LowTerms {
            c0: self.c0 * other.c0 % p,
            c1: (self.c0 * other.c1 + self.c1 * other.c0) % p,
        }
    }
}

/// Exhaustive search over the bipartitions of `{X - 1} ∪ factors(Phi_q)` for
/// two products without an `X^1` term. Reports `Undecided` when `r + 1`
/// exceeds `max_index`.
///
/// Every part is a product of nonconstant factors, and scaling by units does
/// not move the `X^1` coefficient off zero, so monic products decide the
/// question. Only the images mod `X^2` are multiplied per bipartition; a hit
/// is confirmed with full products before it is reported.
pub fn exact_e_membership(
    p: u64,
    q: u64,
    max_index: u64,
    seed: u64,
) -> Result<Membership, CycloError> {
    let set = factor_cyclotomic(p, q, seed)?;
    let r = set.index();
    if r + 1 > max_index || r >= 63 {
        return Ok(Membership::Undecided);
    }
    let mut parts = vec![set.linear.clone()];
    parts.extend(set.factors.iter().cloned());
    let low: Vec<LowTerms> = parts.iter().map(LowTerms::of).collect();
    let all = (1u64 << (r + 1)) - 1;
    // mask picks one side; fixing bit 0 (X - 1) on the complement side counts
    // each unordered bipartition once
    for mask in (2..=all).step_by(2) {
        let (mut a, mut b) = (LowTerms::ONE, LowTerms::ONE);
        for (i, t) in low.iter().enumerate() {
            if mask >> i & 1 == 1 {
                a = a.mul(*t, p);
            } else {
                b = b.mul(*t, p);
            }
        }
        if a.c1 == 0 && b.c1 == 0 {
            confirm_bipartition(&parts, mask, q)?;
            return Ok(Membership::Member);
        }
    }
    Ok(Membership::NonMember)
}

fn confirm_bipartition(parts: &[FieldPoly], mask: u64, q: u64) -> Result<(), CycloError> {
    let one = parts[0].one_like();
    let (mut a, mut b) = (one.clone(), one);
    for (i, g) in parts.iter().enumerate() {
        if mask >> i & 1 == 1 {
            a = a.mul(g)?;
        } else {
            b = b.mul(g)?;
        }
    }
    let target = FieldPoly::x_pow_minus_one(a.modulus() as u64, q as usize)?;
    let ok = a.mul(&b)? == target
        && a.in_monoid_support()
        && b.in_monoid_support()
        && a.degree() >= Degree::Finite(1)
        && b.degree() >= Degree::Finite(1);
    if ok {
        Ok(())
    } else {
        Err(CycloError::Internal("bipartition witness failed full check"))
    }
}

/// `E(p)` membership by closing the set of reachable images mod `X^2` over
/// nonempty subsets of the `Phi_q` factors. Exact for every index `r`.
///
/// With `X - 1` kept on one side, a subset `S` gives the other side `A = prod S`.
/// Since `A * B = X^q - 1` has no `X^1` term and `A(0) != 0`, `A` lacking an
/// `X^1` term forces the same for `B`, so only `A` needs checking.
pub fn exact_e_membership_low_terms(p: u64, q: u64, seed: u64) -> Result<Membership, CycloError> {
    let set = factor_cyclotomic(p, q, seed)?;
    let mut reachable: HashSet<LowTerms> = HashSet::new();
    for g in &set.factors {
        let t = LowTerms::of(g);
        let mut next: HashSet<LowTerms> = reachable.iter().map(|s| s.mul(t, p)).collect();
        next.insert(t);
        reachable.extend(next);
    }
    // the full set is Phi_q, whose X^1 coefficient is 1, so it never qualifies
    if reachable.iter().any(|s| s.c1 == 0) {
        Ok(Membership::Member)
    } else {
        Ok(Membership::NonMember)
    }
}

/// `p^j mod q` for `j < f`, in order.
pub fn trace_exponents(p: u64, q: u64, f: u64) -> Vec<u64> {
    (0..f).map(|j| pow_mod(p, j, q)).collect()
}
