//! Reference values from the worked examples, the printed membership lists,
//! and the density table. `verify-examples` checks all of them.

use std::io::{self, Write};

use exceptional::cyclo_trace;
use exceptional::density::{self, DEFAULT_ARTIN_CUTOFF};
use exceptional::prime_class;
use exceptional::FieldPoly;

pub const E_PRIME_2: [u64; 23] = [
    7, 17, 23, 31, 41, 43, 47, 71, 73, 79, 89, 97, 103, 109, 113, 127, 137, 151, 157, 167, 191,
    193, 199,
];
pub const E2_PRIME_2: [u64; 14] = [7, 17, 23, 41, 47, 71, 79, 97, 103, 137, 167, 191, 193, 199];
pub const E_PRIME_3: [u64; 22] = [
    11, 13, 23, 37, 41, 47, 59, 61, 71, 73, 83, 97, 107, 109, 131, 151, 157, 167, 179, 181, 191,
    193,
];
pub const E2_PRIME_3: [u64; 14] = [11, 23, 37, 47, 59, 71, 83, 97, 107, 131, 157, 167, 179, 191];

/// `(p, empirical, conjectural)` rows of the density table at `x = 10^6`.
pub const TABLE1: [(u64, &str, &str); 10] = [
    (2, "0.28143", "0.28046"),
    (3, "0.30052", "0.28046"),
    (5, "0.13815", "0.13285"),
    (7, "0.09112", "0.08892"),
    (11, "0.05461", "0.05403"),
    (13, "0.04635", "0.04523"),
    (17, "0.03448", "0.03415"),
    (19, "0.03076", "0.03043"),
    (23, "0.02563", "0.02499"),
    (29, "0.01949", "0.01971"),
];
pub const ARTIN_5DP: &str = "0.37395";

struct Checker<'a> {
    out: &'a mut dyn Write,
    failures: usize,
}

impl Checker<'_> {
    fn check(&mut self, name: &str, expected: &str, actual: String) -> io::Result<()> {
        if actual == expected {
            writeln!(self.out, "ok    {name}")
        } else {
            self.failures += 1;
            writeln!(self.out, "FAIL  {name}: expected {expected}, got {actual}")
        }
    }
}

fn show<T: std::fmt::Display, E: std::fmt::Display>(r: Result<T, E>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn show_list<E: std::fmt::Display>(r: Result<Vec<u64>, E>) -> String {
    show(r.map(|v| format!("{v:?}")))
}

fn poly(p: u64, c: &[i64]) -> FieldPoly {
    FieldPoly::new(p, c).expect("valid literal")
}

/// Runs every check, writing one line each; returns the number of failures.
pub fn verify_all(out: &mut dyn Write) -> io::Result<usize> {
    let mut c = Checker { out, failures: 0 };

    let a = poly(2, &[1, 1, 0, 1]);
    let b = poly(2, &[1, 1, 1, 0, 1]);
    c.check("(X^3+X+1)(X^4+X^2+X+1) over F_2", "X^7 + 1", show(a.mul(&b)))?;

    let x11 = FieldPoly::x_pow_minus_one(3, 11).expect("valid");
    let d11 = poly(3, &[2, 2, 1, 2, 0, 1]);
    c.check(
        "(X^11-1)/(X^5+2X^3+X^2+2X+2) over F_3",
        "X^6 + X^4 + 2X^3 + 2X^2 + 2X + 1",
        show(x11.divmod(&d11).map(|(q, r)| {
            if r.is_zero() {
                q.to_string()
            } else {
                format!("{q} rem {r}")
            }
        })),
    )?;

    c.check("R(X^3+X+1)", "X^3 + X^2 + 1", show(a.reverse()))?;
    c.check(
        "R(X^6+X^4+2X^3+2X^2+2X+1)",
        "X^6 + 2X^5 + 2X^4 + 2X^3 + X^2 + 1",
        show(poly(3, &[1, 2, 2, 2, 1, 0, 1]).reverse()),
    )?;

    c.check("ord_7(2)", "3", show(prime_class::mult_order(2, 7)))?;
    c.check("ord_11(3)", "5", show(prime_class::mult_order(3, 11)))?;

    c.check("gcd(Phi_7, T_7) over F_2", "X^3 + X + 1", show(cyclo_trace::gcd_test(2, 7)))?;
    c.check(
        "gcd(Phi_11, T_11) over F_3",
        "X^5 + 2X^3 + X^2 + 2X + 2",
        show(cyclo_trace::gcd_test(3, 11)),
    )?;

    let fac = |p, q| {
        show(
            cyclo_trace::factor_in_monoid_ring(p, q)
                .map(|m| format!("({})({}) verified={}", m.factor_a, m.factor_b, m.verified)),
        )
    };
    c.check(
        "X^7-1 in F_2[X;M]",
        "(X^3 + X^2 + 1)(X^4 + X^3 + X^2 + 1) verified=true",
        fac(2, 7),
    )?;
    c.check(
        "X^11-1 in F_3[X;M]",
        "(X^5 + X^4 + 2X^3 + X^2 + 2)(X^6 + 2X^5 + 2X^4 + 2X^3 + X^2 + 1) verified=true",
        fac(3, 11),
    )?;

    let class = |p, q| {
        show(prime_class::classify(p, q, true).map(|r| {
            format!(
                "f={} r={} in_E2={} in_Eprime={:?} norm2={:?}",
                r.f, r.r, r.in_e2, r.in_eprime, r.norm2
            )
        }))
    };
    c.check(
        "classify p=2 q=7",
        "f=3 r=2 in_E2=true in_Eprime=Some(true) norm2=Some(2)",
        class(2, 7),
    )?;
    c.check(
        "classify p=3 q=13",
        "f=3 r=4 in_E2=false in_Eprime=Some(true) norm2=None",
        class(3, 13),
    )?;

    let budget = prime_class::DEFAULT_GCD_BUDGET;
    c.check(
        "E'(2) up to 200",
        &format!("{E_PRIME_2:?}"),
        show_list(prime_class::enumerate_e_prime(2, 200, budget)),
    )?;
    c.check(
        "E'_2(2) up to 200",
        &format!("{E2_PRIME_2:?}"),
        show_list(prime_class::enumerate_e2_prime(2, 200)),
    )?;
    c.check(
        "E'(3) up to 200",
        &format!("{E_PRIME_3:?}"),
        show_list(prime_class::enumerate_e_prime(3, 200, budget)),
    )?;
    c.check(
        "E'_2(3) up to 200",
        &format!("{E2_PRIME_3:?}"),
        show_list(prime_class::enumerate_e2_prime(3, 200)),
    )?;

    match density::artin_constant(DEFAULT_ARTIN_CUTOFF) {
        Ok(artin) => {
            c.check(
                "Artin's constant",
                ARTIN_5DP,
                density::five_decimals(artin.value),
            )?;
            let ps: Vec<u64> = TABLE1.iter().map(|row| row.0).collect();
            match density::table_report(&ps, 1_000_000, artin) {
                Ok(reports) => {
                    for (rep, (p, emp, conj)) in reports.iter().zip(TABLE1) {
                        c.check(&format!("empirical density p={p}"), emp, rep.empirical_5dp())?;
                        c.check(&format!("a({p})"), conj, rep.conjectural_5dp())?;
                    }
                }
                Err(e) => c.check("density table", "computed", format!("error: {e}"))?,
            }
        }
        Err(e) => c.check("Artin's constant", ARTIN_5DP, format!("error: {e}"))?,
    }

    writeln!(
        c.out,
        "{} failure(s)",
        c.failures
    )?;
    Ok(c.failures)
}
