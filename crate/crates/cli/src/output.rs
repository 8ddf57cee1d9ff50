//! Text, CSV and JSON renderings for every subcommand.

use std::io::{self, Write};

use serde::Serialize;

use exceptional::density::{self, DensityReport};
use exceptional::{ClassRecord, Membership, MonoidFactorization};

use crate::Format;

fn json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn csv_rows<T: Serialize>(out: &mut dyn Write, rows: &[T], header: &[&str]) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(&mut *out);
    w.write_record(header)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

pub const CLASS_HEADER: [&str; 8] = [
    "p",
    "q",
    "f",
    "r",
    "residue_4p",
    "in_E2",
    "in_Eprime",
    "norm2",
];

pub fn records(out: &mut dyn Write, fmt: Format, recs: &[ClassRecord]) -> io::Result<()> {
    match fmt {
        Format::Json => json(out, recs),
        Format::Csv => csv_rows(out, recs, &CLASS_HEADER),
        Format::Text => {
            for r in recs {
                writeln!(
                    out,
                    "p={} q={} f={} r={} residue_4p={} in_E2={} in_Eprime={} norm2={}",
                    r.p,
                    r.q,
                    r.f,
                    r.r,
                    r.residue_4p,
                    r.in_e2,
                    opt(&r.in_eprime),
                    opt(&r.norm2)
                )?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct SetOut<'a> {
    set: &'a str,
    p: u64,
    x: u64,
    members: &'a [u64],
}

pub fn set(
    out: &mut dyn Write,
    fmt: Format,
    name: &str,
    p: u64,
    x: u64,
    members: &[u64],
) -> io::Result<()> {
    match fmt {
        Format::Json => json(
            out,
            &SetOut {
                set: name,
                p,
                x,
                members,
            },
        ),
        Format::Csv => {
            writeln!(out, "q")?;
            members.iter().try_for_each(|q| writeln!(out, "{q}"))
        }
        Format::Text => {
            let items: Vec<String> = members.iter().map(u64::to_string).collect();
            writeln!(out, "{name}({p}) up to {x}: {{{}}}", items.join(", "))?;
            writeln!(out, "count = {}", members.len())
        }
    }
}

pub fn factorization(out: &mut dyn Write, fmt: Format, fac: &MonoidFactorization) -> io::Result<()> {
    match fmt {
        Format::Json => json(out, fac),
        Format::Csv => {
            writeln!(out, "p,q,gcd,factor_a,factor_b,verified")?;
            writeln!(
                out,
                "{},{},\"{}\",\"{}\",\"{}\",{}",
                fac.p,
                fac.q,
                fac.gcd_part.to_compact(),
                fac.factor_a.to_compact(),
                fac.factor_b.to_compact(),
                fac.verified
            )
        }
        Format::Text => {
            writeln!(out, "p = {}, q = {}", fac.p, fac.q)?;
            writeln!(out, "gcd = {}", fac.gcd_part)?;
            writeln!(
                out,
                "X^{} - 1 = ({})({})",
                fac.q, fac.factor_a, fac.factor_b
            )?;
            writeln!(out, "verified = {}", fac.verified)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Exhaustive enumeration of bipartitions.
    Bipartitions,
    /// Reachable images mod `X^2`, used above the enumeration cap.
    LowTerms,
}

#[derive(Debug, Serialize)]
pub struct ExactRow {
    pub p: u64,
    pub q: u64,
    pub membership: Membership,
    pub method: Method,
    #[serde(rename = "in_Eprime")]
    pub in_eprime: bool,
}

impl ExactRow {
    fn outside_e_prime(&self) -> bool {
        self.membership == Membership::Member && !self.in_eprime
    }
}

fn label(m: Membership) -> &'static str {
    match m {
        Membership::Member => "member",
        Membership::NonMember => "non_member",
        Membership::Undecided => "undecided",
    }
}

pub fn exact(out: &mut dyn Write, fmt: Format, rows: &[ExactRow]) -> io::Result<()> {
    match fmt {
        Format::Json => json(out, rows),
        Format::Csv => csv_rows(out, rows, &["p", "q", "membership", "method", "in_Eprime"]),
        Format::Text => {
            for r in rows {
                writeln!(
                    out,
                    "q = {} in E({}): {} (by {}); in E'({}): {}{}",
                    r.q,
                    r.p,
                    label(r.membership),
                    match r.method {
                        Method::Bipartitions => "bipartitions",
                        Method::LowTerms => "low terms",
                    },
                    r.p,
                    r.in_eprime,
                    if r.outside_e_prime() {
                        "  <- in E but not E'"
                    } else {
                        ""
                    }
                )?;
            }
            if rows.len() > 1 {
                let outside: Vec<String> = rows
                    .iter()
                    .filter(|r| r.outside_e_prime())
                    .map(|r| r.q.to_string())
                    .collect();
                writeln!(out, "members of E outside E': {{{}}}", outside.join(", "))?;
            }
            Ok(())
        }
    }
}

pub fn densities(out: &mut dyn Write, fmt: Format, reports: &[DensityReport]) -> io::Result<()> {
    match fmt {
        Format::Json => json(out, reports),
        Format::Csv => {
            writeln!(out, "p,empirical,conjectural")?;
            for r in reports {
                writeln!(out, "{},{},{}", r.p, r.empirical_5dp(), r.conjectural_5dp())?;
            }
            Ok(())
        }
        Format::Text => {
            write!(out, "{}", density::render_table(reports))?;
            if let Some(r) = reports.first() {
                writeln!(
                    out,
                    "A = {} (primes <= {}, relative tail < {:e})",
                    density::five_decimals(r.artin.value),
                    r.artin.cutoff,
                    r.artin.tail_bound
                )?;
            }
            Ok(())
        }
    }
}
