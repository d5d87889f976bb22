use std::fmt::Write;
use std::ops::RangeInclusive;

use cellproj::derived::derived_f_vector;
use cellproj::homology::homology;
use cellproj::quotient::cpn_complex;
use cellproj::staircase::sphere_product;
use cellproj::Result;

use crate::{Progress, Table};

/// Accepts `3`, `1..4` or `1..=4` (both ends inclusive), within `1..=4`.
pub fn parse_range(text: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let bad = || format!("invalid range {text:?}; expected e.g. 2 or 1..4");
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            (
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            )
        }
        None => {
            let v: usize = text.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi || hi > 4 {
        return Err(format!("range {lo}..{hi} outside 1..4"));
    }
    Ok(lo..=hi)
}

fn tuple<T: ToString>(xs: &[T]) -> String {
    format!(
        "({})",
        xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
    )
}

pub fn table(kind: Table, range: RangeInclusive<usize>, progress: &Progress) -> Result<String> {
    let mut out = String::new();
    for n in range {
        if progress.over_budget() {
            writeln!(out, "n = {n}: skipped, time budget exhausted").unwrap();
            continue;
        }
        progress.step(&format!("n = {n}"));
        match kind {
            Table::Fvectors => {
                let x = sphere_product(n)?;
                writeln!(
                    out,
                    "f(X^{n}) = {}",
                    tuple(x.complex().f_vector()?.as_slice())
                )
                .unwrap();
                let t = cpn_complex(n)?;
                writeln!(
                    out,
                    "f(T_{n}) = {}",
                    tuple(t.complex().f_vector()?.as_slice())
                )
                .unwrap();
            }
            Table::Derived => {
                let f = cpn_complex(n)?.complex().f_vector()?;
                writeln!(
                    out,
                    "f((T_{n})') = {}",
                    tuple(derived_f_vector(&f)?.as_slice())
                )
                .unwrap();
            }
            Table::Homology => {
                let h = homology(cpn_complex(n)?.complex())?;
                let mut cells: Vec<String> = Vec::new();
                for (k, b) in h.betti.iter().enumerate() {
                    let mut cell = b.to_string();
                    for t in &h.torsion[k] {
                        write!(cell, "+Z/{t}").unwrap();
                    }
                    cells.push(cell);
                }
                writeln!(out, "H(T_{n}) = ({})", cells.join(", ")).unwrap();
            }
        }
    }
    Ok(out)
}
