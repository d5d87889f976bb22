use std::fmt::Write;
use std::path::Path;

use clap::ValueEnum;

use cellproj::complex::{
    is_closed_pseudomanifold, is_simplicial_cell, read_gcx, self_gluings, GluedComplex,
};
use cellproj::derived::{derived_f_vector, derived_subdivision};
use cellproj::gem::{
    canonical_code, complex_to_gem, find_isomorphism, gem_to_complex, import_gem, listing_cp2,
    listing_cp3, listing_cp4, listing_s2xs2, verify_automorphism,
};
use cellproj::homology::homology;
use cellproj::quotient::cross_polytope_boundary;
use cellproj::reference::cpn_derived_f;
use cellproj::staircase::sphere_product;
use cellproj::sym_action::{check_good_action, vertex_orbit_labels};
use cellproj::{Error, Strategy};

use crate::target::Target;
use crate::Progress;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Involution,
    Fvector,
    Euler,
    Good,
    Regular,
    Pseudomanifold,
    Matchings,
    Homology,
    Derived,
    Listing,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Involution,
        Check::Fvector,
        Check::Euler,
        Check::Good,
        Check::Regular,
        Check::Pseudomanifold,
        Check::Matchings,
        Check::Homology,
        Check::Derived,
        Check::Listing,
    ];

    fn name(self) -> &'static str {
        match self {
            Check::Involution => "involution",
            Check::Fvector => "fvector",
            Check::Euler => "euler",
            Check::Good => "good",
            Check::Regular => "regular",
            Check::Pseudomanifold => "pseudomanifold",
            Check::Matchings => "matchings",
            Check::Homology => "homology",
            Check::Derived => "derived",
            Check::Listing => "listing",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

pub struct Row {
    pub check: Check,
    pub status: Status,
    pub detail: String,
}

pub enum Subject {
    Constructed {
        target: Target,
        n: usize,
    },
    Loaded {
        path: String,
        complex: std::result::Result<GluedComplex, Error>,
    },
}

impl Subject {
    pub fn from_file(path: &Path) -> std::result::Result<Subject, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let complex = if text.trim_start().starts_with("gcx") {
            read_gcx(&text)
        } else {
            import_gem(&text).and_then(|g| gem_to_complex(&g))
        };
        Ok(Subject::Loaded {
            path: path.display().to_string(),
            complex,
        })
    }

    fn title(&self) -> String {
        match self {
            Subject::Constructed { target, n } => target.label(*n),
            Subject::Loaded { path, .. } => path.clone(),
        }
    }
}

type Outcome = std::result::Result<(Status, String), Error>;

fn pass(detail: impl Into<String>) -> Outcome {
    Ok((Status::Pass, detail.into()))
}

fn verdict(ok: bool, detail: impl Into<String>) -> Outcome {
    Ok((if ok { Status::Pass } else { Status::Fail }, detail.into()))
}

fn skip(detail: impl Into<String>) -> Outcome {
    Ok((Status::Skip, detail.into()))
}

pub fn run_checks(subject: &Subject, checks: &[Check], progress: &Progress) -> Vec<Row> {
    let owned;
    let built: std::result::Result<&GluedComplex, String> = match subject {
        Subject::Constructed { target, n } => {
            progress.step(&format!("building {}", target.label(*n)));
            owned = target.build(*n);
            owned.as_ref().map_err(|e| e.to_string())
        }
        Subject::Loaded { complex, .. } => complex.as_ref().map_err(|e| e.to_string()),
    };
    let mut rows = Vec::new();
    for &check in checks {
        if progress.over_budget() {
            rows.push(Row {
                check,
                status: Status::Skip,
                detail: "time budget exhausted".into(),
            });
            continue;
        }
        progress.step(&format!("check {}", check.name()));
        let outcome = match built {
            Err(ref e) => Ok((Status::Fail, e.clone())),
            Ok(c) => run_one(subject, c, check),
        };
        let (status, detail) = outcome.unwrap_or_else(|e| (Status::Fail, e.to_string()));
        rows.push(Row {
            check,
            status,
            detail,
        });
    }
    rows
}

fn run_one(subject: &Subject, c: &GluedComplex, check: Check) -> Outcome {
    let constructed = match subject {
        Subject::Constructed { target, n } => Some((*target, *n)),
        Subject::Loaded { .. } => None,
    };
    match check {
        Check::Involution => {
            c.validate()?;
            pass(format!(
                "{} facets, {} glued faces",
                c.facet_count(),
                c.glued_slot_count()
            ))
        }
        Check::Fvector => {
            let f = c.f_vector()?;
            match constructed.and_then(|(t, n)| t.f_vector(n)) {
                Some(expected) => verdict(f.as_slice() == expected.as_slice(), format!("({f})")),
                None => skip(format!("({f}), no reference")),
            }
        }
        Check::Euler => {
            let chi = c.euler_characteristic()?;
            match constructed {
                Some((t, n)) => verdict(chi == t.euler_characteristic(n), format!("chi = {chi}")),
                None => skip(format!("chi = {chi}, no reference")),
            }
        }
        Check::Good => match constructed {
            Some((Target::SphereProduct | Target::Cpn, n)) => {
                let sp = sphere_product(n)?;
                let poset = sp.complex().face_poset()?;
                let labels = vertex_orbit_labels(&sp, &poset)?;
                match check_good_action(&poset, &labels) {
                    Ok(()) => pass(format!("Sym({n}) on X^{n}")),
                    Err(w) => verdict(
                        false,
                        format!("edge {} joins vertices {} and {}", w.edge.index, w.a, w.b),
                    ),
                }
            }
            Some((Target::Rpn | Target::CrossPolytope, n)) => {
                let cp = cross_polytope_boundary(n)?;
                let poset = cp.face_poset()?;
                let labels = antipodal_vertex_labels(&poset, n);
                match check_good_action(&poset, &labels) {
                    Ok(()) => pass("antipodal involution"),
                    Err(w) => verdict(
                        false,
                        format!("edge {} joins vertices {} and {}", w.edge.index, w.a, w.b),
                    ),
                }
            }
            None => skip("no group action for loaded complexes"),
        },
        Check::Regular => {
            let poset = c.face_poset()?;
            match is_simplicial_cell(&poset) {
                Ok(()) => pass("vertices of every facet distinct"),
                Err(w) => verdict(
                    false,
                    format!(
                        "facet {} labels {} and {} share vertex {}",
                        w.facet, w.labels.0, w.labels.1, w.vertex
                    ),
                ),
            }
        }
        Check::Pseudomanifold => match is_closed_pseudomanifold(c) {
            Ok(()) => pass("closed, connected dual graph"),
            Err(w) => verdict(false, format!("{w:?}")),
        },
        Check::Matchings => {
            let loops = self_gluings(c);
            if let Some(&(f, i, j)) = loops.first() {
                return verdict(
                    false,
                    format!("facet {f} glued to itself along faces {i} and {j}"),
                );
            }
            let g = complex_to_gem(c)?;
            match g.unmatched() {
                None => pass(format!("{} colours, perfect, no loops", g.colour_count())),
                Some((colour, node)) => {
                    verdict(false, format!("node {node} unmatched in colour {colour}"))
                }
            }
        }
        Check::Homology => {
            let h = homology(c)?;
            let chi = c.euler_characteristic()?;
            if h.euler_characteristic() != chi {
                return verdict(
                    false,
                    format!(
                        "alternating Betti sum {} != chi {chi}",
                        h.euler_characteristic()
                    ),
                );
            }
            let summary = h
                .betti
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",");
            match constructed {
                Some((t, n)) => {
                    let (betti, torsion) = t.homology(n);
                    let got: Vec<Vec<u64>> = (0..h.betti.len()).map(|k| h.torsion_u64(k)).collect();
                    verdict(
                        h.betti == betti && got == torsion,
                        format!("Betti ({summary}){}", torsion_note(&got)),
                    )
                }
                None => skip(format!("Betti ({summary}), no reference")),
            }
        }
        Check::Derived => {
            let f = c.f_vector()?;
            let formula = derived_f_vector(&f)?;
            let explicit_ok =
                if (f.as_slice()[f.dim()] as u128) * factorial(f.dim() + 1) <= 2_000_000 {
                    let d = derived_subdivision(c)?;
                    Some(d.f_vector()? == formula)
                } else {
                    None
                };
            let table_ok = match constructed {
                Some((Target::Cpn, n)) => cpn_derived_f(n).map(|t| t == formula.as_slice()),
                _ => None,
            };
            let ok = explicit_ok != Some(false) && table_ok != Some(false);
            let how = match (explicit_ok.is_some(), table_ok.is_some()) {
                (true, true) => "explicit and reference agree",
                (true, false) => "explicit subdivision agrees",
                (false, true) => "reference table agrees",
                (false, false) => "formula only",
            };
            verdict(ok, format!("({formula}), {how}"))
        }
        Check::Listing => match constructed {
            Some((Target::Cpn, 2)) => {
                let same = canonical_code(&complex_to_gem(c)?)? == canonical_code(&listing_cp2()?)?;
                verdict(same, "isomorphic to the reference CP^2 encoding")
            }
            Some((Target::SphereProduct, 2)) => {
                let same =
                    canonical_code(&complex_to_gem(c)?)? == canonical_code(&listing_s2xs2()?)?;
                verdict(same, "isomorphic to the reference S^2 x S^2 encoding")
            }
            Some((Target::Cpn, n @ (3 | 4))) => {
                let e = if n == 3 {
                    listing_cp3()?
                } else {
                    listing_cp4()?
                };
                let g = complex_to_gem(c)?;
                match find_isomorphism(&e.graph, &g, Strategy::default())? {
                    None => verdict(false, "not isomorphic to the expanded reference encoding"),
                    Some(phi) => {
                        let all = e
                            .automorphisms
                            .iter()
                            .all(|a| verify_automorphism(&g, &a.transport(&phi)));
                        verdict(
                            all,
                            format!(
                                "isomorphic to the expanded reference (offset {}, group order {}); automorphisms {}",
                                e.offset,
                                e.group_order,
                                if all { "valid" } else { "invalid" }
                            ),
                        )
                    }
                }
            }
            _ => skip("no reference encoding"),
        },
    }
}

fn torsion_note(t: &[Vec<u64>]) -> String {
    let parts: Vec<String> = t
        .iter()
        .enumerate()
        .flat_map(|(k, ts)| ts.iter().map(move |x| format!("Z/{x} in degree {k}")))
        .collect();
    if parts.is_empty() {
        ", torsion-free".into()
    } else {
        format!(", {}", parts.join(", "))
    }
}

/// Vertex `k` of the cross-polytope carries label `k`; antipodes share one.
fn antipodal_vertex_labels(poset: &cellproj::FacePoset, n: usize) -> Vec<usize> {
    (0..poset.class_count(0))
        .map(|v| {
            let m = poset
                .members(cellproj::complex::FaceId { dim: 0, index: v })
                .next()
                .expect("vertex class has a member");
            let label = m.mask.trailing_zeros() as usize;
            debug_assert!(label <= n);
            label
        })
        .collect()
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

pub fn format_table(subject: &Subject, rows: &[Row]) -> String {
    let mut out = String::new();
    writeln!(out, "verify {}", subject.title()).unwrap();
    let width = rows
        .iter()
        .map(|r| r.check.name().len())
        .max()
        .unwrap_or(5)
        .max(5);
    for r in rows {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        writeln!(out, "{:<width$}  {status}  {}", r.check.name(), r.detail).unwrap();
    }
    let failed = rows.iter().filter(|r| r.status == Status::Fail).count();
    writeln!(
        out,
        "{}",
        if failed == 0 {
            "result: PASS".to_string()
        } else {
            format!("result: FAIL ({failed} failed)")
        }
    )
    .unwrap();
    out
}
