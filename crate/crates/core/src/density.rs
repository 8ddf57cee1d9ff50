//! Artin's constant, the conjectural density `a(p)` of `E'_2(p)`, and the
//! empirical densities compared against it.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::prime_class::{self, ClassError};

pub const DEFAULT_ARTIN_CUTOFF: u64 = 10_000_000;
pub const MIN_ARTIN_CUTOFF: u64 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("Artin cutoff {0} is below the minimum {MIN_ARTIN_CUTOFF}")]
    CutoffTooSmall(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error(transparent)]
    Class(#[from] ClassError),
}

/// Truncated Euler product for Artin's constant.
///
/// The omitted tail satisfies `sum_{l > c} 1/(l(l-1)) < sum_{n > c} 1/(n(n-1)) = 1/c`,
/// so the true constant lies in `[value * (1 - tail_bound), value]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArtinEstimate {
    pub value: f64,
    pub cutoff: u64,
    pub tail_bound: f64,
}

impl ArtinEstimate {
    pub fn lower(&self) -> f64 {
        self.value * (1.0 - self.tail_bound)
    }

    pub fn upper(&self) -> f64 {
        self.value
    }
}

pub fn artin_constant(cutoff: u64) -> Result<ArtinEstimate, DensityError> {
    if cutoff < MIN_ARTIN_CUTOFF {
        return Err(DensityError::CutoffTooSmall(cutoff));
    }
    let primes = prime_class::sieve_primes(cutoff)?;
    Ok(ArtinEstimate {
        value: euler_product(&primes, &[]),
        cutoff,
        tail_bound: 1.0 / cutoff as f64,
    })
}

/// `prod (1 - 1/(l(l-1)))` over `primes`, skipping those in `exclude`.
pub fn euler_product(primes: &[u64], exclude: &[u64]) -> f64 {
    primes
        .iter()
        .filter(|l| !exclude.contains(l))
        .map(|&l| {
            let l = l as f64;
            1.0 - 1.0 / (l * (l - 1.0))
        })
        .product()
}

/// Rational factor `a(p) / A`: `3/4` for `p = 2`, else `3(2p-1) / (4(p^2-p-1))`.
pub fn density_ratio(p: u64) -> (u64, u64) {
    if p == 2 {
        (3, 4)
    } else {
        (3 * (2 * p - 1), 4 * (p * p - p - 1))
    }
}

/// `a(p)` for a given value of Artin's constant.
pub fn conjectural_density(p: u64, artin: f64) -> f64 {
    let (num, den) = density_ratio(p);
    num as f64 / den as f64 * artin
}

/// Truncates toward zero at five decimals, the rendering used for all
/// density values in reports.
pub fn five_decimals(x: f64) -> String {
    let scaled = (x * 1e5).floor() as i64;
    format!("{}.{:05}", scaled / 100_000, scaled % 100_000)
}

/// Exact truncated decimal rendering of `num / den`.
pub fn ratio_decimals(num: u64, den: u64, places: u32) -> String {
    let scale = 10u128.pow(places);
    let scaled = num as u128 * scale / den as u128;
    format!(
        "{}.{:0width$}",
        scaled / scale,
        scaled % scale,
        width = places as usize
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub p: u64,
    pub x: u64,
    pub count_e2: u64,
    pub count_primes: u64,
    pub empirical: f64,
    pub conjectural: f64,
    pub artin: ArtinEstimate,
}

impl DensityReport {
    /// `count_e2 / count_primes` truncated to five decimals, from the exact counts.
    pub fn empirical_5dp(&self) -> String {
        ratio_decimals(self.count_e2, self.count_primes, 5)
    }

    pub fn conjectural_5dp(&self) -> String {
        five_decimals(self.conjectural)
    }
}

/// Counts `E'_2(p)` among `primes` (all primes up to `x`) and builds the report.
pub fn report_from_primes(
    p: u64,
    x: u64,
    primes: &[u64],
    artin: ArtinEstimate,
) -> Result<DensityReport, DensityError> {
    if !prime_class::is_prime(p) {
        return Err(DensityError::NotPrime(p));
    }
    let count_e2 = prime_class::e2_members(p, primes).len() as u64;
    let count_primes = primes.len() as u64;
    Ok(DensityReport {
        p,
        x,
        count_e2,
        count_primes,
        empirical: count_e2 as f64 / count_primes as f64,
        conjectural: conjectural_density(p, artin.value),
        artin,
    })
}

pub fn empirical_density(
    p: u64,
    x: u64,
    artin: ArtinEstimate,
) -> Result<DensityReport, DensityError> {
    let primes = prime_class::sieve_primes(x)?;
    report_from_primes(p, x, &primes, artin)
}

/// One report per `p`, in input order, sharing a single sieve and Artin estimate.
pub fn table_report(
    ps: &[u64],
    x: u64,
    artin: ArtinEstimate,
) -> Result<Vec<DensityReport>, DensityError> {
    if ps.is_empty() {
        return Ok(Vec::new());
    }
    let primes = prime_class::sieve_primes(x)?;
    ps.par_iter()
        .map(|&p| report_from_primes(p, x, &primes, artin))
        .collect()
}

/// Plain-text table: `p`, empirical ratio, `a(p)`.
pub fn render_table(reports: &[DensityReport]) -> String {
    let x = reports.first().map(|r| r.x).unwrap_or(0);
    let header_emp = format!("pi_p({x})/pi({x})");
    let width = header_emp.len().max(9);
    let mut out = format!("{:>4} | {:>width$} | {:>9}\n", "p", header_emp, "a(p)");
    out.push_str(&format!("{}\n", "-".repeat(4 + 3 + width + 3 + 9)));
    for r in reports {
        out.push_str(&format!(
            "{:>4} | {:>width$} | {:>9}\n",
            r.p,
            r.empirical_5dp(),
            r.conjectural_5dp()
        ));
    }
    out
}
