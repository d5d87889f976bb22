//! The `gcx` text format.
//!
//! ```text
//! gcx <d> <facet_count>
//! facet <id>: <neighbour>/<p0 p1 ... pd> | ... | -
//! ```
//!
//! One entry per face label `0..=d`; `-` marks a free face. Ids are 0-based,
//! lines end with LF.

use std::fmt::Write;

use crate::complex::{GluedComplex, Gluing, LabelPerm};
use crate::error::{Error, Result};

pub fn write_gcx(c: &GluedComplex) -> String {
    let mut out = String::new();
    writeln!(out, "gcx {} {}", c.dim(), c.facet_count()).unwrap();
    for f in 0..c.facet_count() {
        write!(out, "facet {f}:").unwrap();
        for i in 0..c.labels() {
            if i > 0 {
                out.push_str(" |");
            }
            match c.gluing(f, i) {
                None => out.push_str(" -"),
                Some(g) => {
                    write!(out, " {}/", g.facet).unwrap();
                    let images: Vec<String> =
                        g.perm.images().iter().map(|x| x.to_string()).collect();
                    out.push_str(&images.join(" "));
                }
            }
        }
        out.push('\n');
    }
    out
}

fn parse_num(tok: &str, line: usize, col: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| {
        Error::parse(
            line,
            col,
            format!("expected a non-negative integer, found {tok:?}"),
        )
    })
}

/// Column (1-based) of `sub` within `line`; `sub` must be a subslice.
fn col_of(line: &str, sub: &str) -> usize {
    sub.as_ptr() as usize - line.as_ptr() as usize + 1
}

pub fn read_gcx(text: &str) -> Result<GluedComplex> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "empty input"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "gcx" {
        return Err(Error::parse(
            hl,
            1,
            "expected header `gcx <d> <facet_count>`",
        ));
    }
    let dim = parse_num(toks[1], hl, col_of(header, toks[1]))?;
    let count = parse_num(toks[2], hl, col_of(header, toks[2]))?;
    let n = dim + 1;
    let mut table: Vec<Option<Gluing>> = vec![None; count * n];
    let mut seen = vec![false; count];
    for (ln, line) in lines {
        let rest = line
            .trim_start()
            .strip_prefix("facet")
            .ok_or_else(|| Error::parse(ln, 1, "expected `facet <id>:`"))?;
        let (id_part, entries) = rest
            .split_once(':')
            .ok_or_else(|| Error::parse(ln, 1, "missing `:` after facet id"))?;
        let id = parse_num(id_part.trim(), ln, col_of(line, id_part))?;
        if id >= count {
            return Err(Error::parse(
                ln,
                col_of(line, id_part),
                format!("facet id {id} out of range"),
            ));
        }
        if seen[id] {
            return Err(Error::parse(ln, 1, format!("facet {id} listed twice")));
        }
        seen[id] = true;
        let parts: Vec<&str> = entries.split('|').collect();
        if parts.len() != n {
            return Err(Error::parse(
                ln,
                col_of(line, entries),
                format!("expected {n} entries, found {}", parts.len()),
            ));
        }
        for (i, part) in parts.iter().enumerate() {
            let t = part.trim();
            if t == "-" {
                continue;
            }
            let col = col_of(line, part);
            let (nb, perm) = t.split_once('/').ok_or_else(|| {
                Error::parse(ln, col, "expected `<neighbour>/<bijection>` or `-`")
            })?;
            let nb = parse_num(nb.trim(), ln, col)?;
            let images = perm
                .split_whitespace()
                .map(|x| parse_num(x, ln, col))
                .collect::<Result<Vec<_>>>()?;
            if images.len() != n {
                return Err(Error::parse(ln, col, format!("bijection needs {n} labels")));
            }
            let perm = LabelPerm::from_images(&images)
                .map_err(|e| Error::parse(ln, col, e.to_string()))?;
            table[id * n + i] = Some(Gluing {
                facet: nb as u32,
                perm,
            });
        }
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::parse(0, 0, format!("facet {missing} missing")));
    }
    GluedComplex::from_table(dim, count, table)
}
