//! Dense univariate polynomials over a prime field `F_p`.
//!
//! Coefficients are stored ascending by exponent with no trailing zeros, so
//! the zero polynomial is the empty vector. Moduli are limited to `p < 2^31`
//! which keeps every product of two residues inside a `u64`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest admissible modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("modulus polynomial must have degree at least 1")]
    ConstantModulus,
    #[error("invalid modulus {0}: must be a prime below 2^31")]
    InvalidModulus(u64),
}

/// Degree of a polynomial. The zero polynomial sits below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial over `F_p` with ascending coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldPoly {
    modulus: u32,
    coeffs: Vec<u32>,
}

#[inline]
fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a != 0);
    // Fermat: a^(p-2)
    let mut base = a as u64;
    let mut e = p as u64 - 2;
    let m = p as u64;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u32
}

fn check_modulus(p: u64) -> Result<u32, PolyError> {
    if p < 2 || p >= MAX_MODULUS || !is_small_prime(p) {
        return Err(PolyError::InvalidModulus(p));
    }
    Ok(p as u32)
}

fn is_small_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldPoly {
    /// Builds a polynomial from ascending coefficients, reducing each one mod `p`.
    pub fn new(modulus: u64, coeffs: &[i64]) -> Result<Self, PolyError> {
        let p = check_modulus(modulus)?;
        let c = coeffs
            .iter()
            .map(|&a| a.rem_euclid(p as i64) as u32)
            .collect();
        Ok(Self::from_raw(p, c))
    }

    /// Builds from coefficients already reduced into `[0, p)`.
    pub(crate) fn from_raw(modulus: u32, mut coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < modulus));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FieldPoly { modulus, coeffs }
    }

    pub fn zero(modulus: u64) -> Result<Self, PolyError> {
        Ok(Self::from_raw(check_modulus(modulus)?, Vec::new()))
    }

    pub fn one(modulus: u64) -> Result<Self, PolyError> {
        Ok(Self::from_raw(check_modulus(modulus)?, vec![1]))
    }

    /// `c * X^n`, with `c` reduced mod `p`.
    pub fn monomial(modulus: u64, c: i64, n: usize) -> Result<Self, PolyError> {
        let p = check_modulus(modulus)?;
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = c.rem_euclid(p as i64) as u32;
        Ok(Self::from_raw(p, coeffs))
    }

    /// `X^n - 1`.
    pub fn x_pow_minus_one(modulus: u64, n: usize) -> Result<Self, PolyError> {
        let p = check_modulus(modulus)?;
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = 1;
        coeffs[0] = sub_mod(coeffs[0], 1, p);
        Ok(Self::from_raw(p, coeffs))
    }

    pub(crate) fn zero_like(&self) -> Self {
        FieldPoly {
            modulus: self.modulus,
            coeffs: Vec::new(),
        }
    }

    pub(crate) fn one_like(&self) -> Self {
        FieldPoly {
            modulus: self.modulus,
            coeffs: vec![1],
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading_coeff(&self) -> Option<u32> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == Some(1)
    }

    /// The coefficient of `X^(m-1)` for a polynomial of degree `m >= 1`.
    pub fn trace_coeff(&self) -> Option<u32> {
        match self.coeffs.len() {
            0 | 1 => None,
            n => Some(self.coeffs[n - 2]),
        }
    }

    fn check_same_field(&self, other: &Self) -> Result<(), PolyError> {
        if self.modulus != other.modulus {
            return Err(PolyError::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.modulus;
        let c = c % p;
        Self::from_raw(p, self.coeffs.iter().map(|&a| mul_mod(a, c, p)).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(self.modulus - 1)
    }

    /// Scales to leading coefficient 1. The zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(inv_mod(lc, self.modulus)),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same_field(other)?;
        let p = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| add_mod(self.coeff(i), other.coeff(i), p))
            .collect();
        Ok(Self::from_raw(p, c))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same_field(other)?;
        let p = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| sub_mod(self.coeff(i), other.coeff(i), p))
            .collect();
        Ok(Self::from_raw(p, c))
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.zero_like());
        }
        let p = self.modulus as u64;
        let (a, b) = (&self.coeffs, &other.coeffs);
        let mut out = vec![0u64; a.len() + b.len() - 1];
        // Accumulate unreduced while the sum provably fits in u64.
        let per_term = (p - 1) * (p - 1);
        let batch = ((u64::MAX - p) / per_term.max(1)).max(1) as usize;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let ai = ai as u64;
            for (o, &bj) in out[i..].iter_mut().zip(b) {
                *o += ai * bj as u64;
            }
            if (i + 1) % batch == 0 {
                out.iter_mut().for_each(|o| *o %= p);
            }
        }
        Ok(Self::from_raw(
            self.modulus,
            out.into_iter().map(|o| (o % p) as u32).collect(),
        ))
    }

    /// Quotient and remainder with `deg r < deg g`.
    pub fn divmod(&self, g: &Self) -> Result<(Self, Self), PolyError> {
        self.check_same_field(g)?;
        if g.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.coeffs.len() < g.coeffs.len() {
            return Ok((self.zero_like(), self.clone()));
        }
        let p = self.modulus;
        let dg = g.coeffs.len() - 1;
        let lead_inv = inv_mod(g.coeffs[dg], p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - dg];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dg];
            if top == 0 {
                continue;
            }
            let c = mul_mod(top, lead_inv, p);
            quot[k] = c;
            sub_scaled(&mut rem[k..k + dg], &g.coeffs[..dg], c, p);
            rem[k + dg] = 0;
        }
        rem.truncate(dg);
        Ok((Self::from_raw(p, quot), Self::from_raw(p, rem)))
    }

    pub fn rem(&self, g: &Self) -> Result<Self, PolyError> {
        self.check_same_field(g)?;
        if g.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let mut r = self.coeffs.clone();
        reduce_in_place(&mut r, &g.monic().coeffs, self.modulus);
        Ok(Self::from_raw(self.modulus, r))
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        let p = self.modulus;
        let mut a = self.monic().coeffs;
        let mut b = other.monic().coeffs;
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let lead_inv = inv_mod(*b.last().expect("nonempty"), p);
            reduce_with_inverse(&mut a, &b, lead_inv, p);
            std::mem::swap(&mut a, &mut b);
        }
        make_monic_in_place(&mut a, p);
        Ok(Self::from_raw(p, a))
    }

    /// `self^exp mod m` by square-and-multiply. Intermediate products never
    /// exceed degree `2 deg m - 2` before reduction.
    pub fn powmod(&self, exp: u64, m: &Self) -> Result<Self, PolyError> {
        self.check_same_field(m)?;
        if m.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if m.coeffs.len() < 2 {
            return Err(PolyError::ConstantModulus);
        }
        let m = m.monic();
        let base = self.rem(&m)?;
        let mut acc = self.one_like();
        for i in (0..u64::BITS - exp.leading_zeros()).rev() {
            acc = acc.mulmod_monic(&acc, &m);
            if exp >> i & 1 == 1 {
                acc = acc.mulmod_monic(&base, &m);
            }
        }
        Ok(acc)
    }

    /// Product reduced mod a monic `m`; operands must already be reduced.
    fn mulmod_monic(&self, other: &Self, m: &Self) -> Self {
        let prod = self.mul(other).expect("same field");
        let mut c = prod.coeffs;
        reduce_in_place(&mut c, &m.coeffs, self.modulus);
        Self::from_raw(self.modulus, c)
    }

    /// Reversal `sum a_(m-j) X^j` of a nonzero polynomial of degree `m`.
    pub fn reverse(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut c = self.coeffs.clone();
        c.reverse();
        Ok(Self::from_raw(self.modulus, c))
    }

    /// Positive degree and vanishing coefficient of `X^(deg - 1)`.
    pub fn is_traceless(&self) -> bool {
        self.trace_coeff() == Some(0)
    }

    /// Membership in `F_p[X; M]` for `M = <2, 3>`: no `X^1` term.
    pub fn in_monoid_support(&self) -> bool {
        self.coeff(1) == 0
    }

    /// Ascending coefficient list, e.g. `[1,1,0,1]`.
    pub fn to_compact(&self) -> String {
        let items: Vec<String> = self.coeffs.iter().map(u32::to_string).collect();
        format!("[{}]", items.join(","))
    }
}

/// `dst[i] -= c * src[i]` over `F_p`.
#[inline]
fn sub_scaled(dst: &mut [u32], src: &[u32], c: u32, p: u32) {
    if p == 2 {
        // c == 1
        for (d, &s) in dst.iter_mut().zip(src) {
            *d ^= s;
        }
        return;
    }
    let neg_c = (p - c) as u64;
    let pm = p as u64;
    if p < 1 << 16 {
        // Barrett reduction: d + neg_c * s < 2^32, so the estimated quotient
        // is off by at most one and a single conditional subtraction suffices.
        let magic = (1u64 << 32) / pm;
        let neg_c = neg_c as u32;
        for (d, &s) in dst.iter_mut().zip(src) {
            let a = *d + neg_c * s;
            let q = ((a as u64 * magic) >> 32) as u32;
            let r = a - q * p;
            *d = if r >= p { r - p } else { r };
        }
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = ((*d as u64 + neg_c * s as u64) % pm) as u32;
    }
}

/// Replaces `a` by `a mod b` for monic `b`, trimming trailing zeros.
fn reduce_in_place(a: &mut Vec<u32>, b: &[u32], p: u32) {
    debug_assert_eq!(b.last(), Some(&1));
    reduce_with_inverse(a, b, 1, p);
}

/// Replaces `a` by `a mod b`, given the inverse of the leading coefficient of `b`.
fn reduce_with_inverse(a: &mut Vec<u32>, b: &[u32], lead_inv: u32, p: u32) {
    let db = b.len() - 1;
    let pm = p as u64;
    if p > 2 && (a.len() as u64 + 1) * (pm - 1) * (pm - 1) + pm < 1 << 32 {
        // Each coefficient takes at most a.len() unreduced updates, which the
        // bound above keeps inside u32; reduce once at the end.
        while a.len() > db {
            let top = a.pop().expect("nonempty") % p;
            if top != 0 {
                let k = a.len() - db;
                let neg_c = p - mul_mod(top, lead_inv, p);
                for (d, &s) in a[k..].iter_mut().zip(&b[..db]) {
                    *d += neg_c * s;
                }
            }
        }
        a.iter_mut().for_each(|d| *d %= p);
        while a.last() == Some(&0) {
            a.pop();
        }
        return;
    }
    while a.len() > db {
        let top = a.pop().expect("nonempty");
        if top != 0 {
            let k = a.len() - db;
            let c = if lead_inv == 1 { top } else { mul_mod(top, lead_inv, p) };
            sub_scaled(&mut a[k..], &b[..db], c, p);
        }
    }
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn make_monic_in_place(a: &mut [u32], p: u32) {
    if let Some(&lc) = a.last() {
        if lc != 1 {
            let inv = inv_mod(lc, p);
            a.iter_mut().for_each(|c| *c = mul_mod(*c, inv, p));
        }
    }
}

impl PartialOrd for FieldPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then by coefficients from the top down.
impl Ord for FieldPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.modulus
            .cmp(&other.modulus)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

/// Descending powers joined by `" + "`, unit coefficients omitted, e.g. `X^3 + X + 1`.
impl fmt::Display for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, c) => write!(f, "{c}X")?,
                (e, 1) => write!(f, "X^{e}")?,
                (e, c) => write!(f, "{c}X^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldPoly(F_{}: {})", self.modulus, self)
    }
}

impl Serialize for FieldPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}
