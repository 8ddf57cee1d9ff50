//! Exceptional primes for the monoid ring `F_p[X; M]`, `M = <2, 3>`.
//!
//! A prime `q` is exceptional for `p` when `X^q - 1` factors nontrivially in
//! the subring of `F_p[X]` spanned by monomials `X^m` with `m != 1`. This crate
//! decides the computable subsets `E'(p)` (gcd criterion) and `E'_2(p)` (order
//! and residue criterion), recovers explicit factorizations, and measures the
//! density of `E'_2(p)` against its conjectural value.

pub mod cyclo_trace;
pub mod density;
pub mod ff_poly;
pub mod prime_class;

pub use cyclo_trace::{
    build_cyclotomic, build_reduced_trace, exact_e_membership, exact_e_membership_low_terms,
    factor_cyclotomic, factor_in_monoid_ring, gcd_test, CycloError, FactorSet, Membership,
    MonoidFactorization,
};
pub use density::{
    artin_constant, conjectural_density, empirical_density, table_report, ArtinEstimate,
    DensityError, DensityReport,
};
pub use ff_poly::{Degree, FieldPoly, PolyError};
pub use prime_class::{
    classify, enumerate_e2_prime, enumerate_e_prime, factorize, mult_order, sieve_primes,
    ClassError, ClassRecord,
};
