//! Quotients of identity-glued complexes by facet partitions: `T_n = X^n / Sym(n)`
//! and the antipodal quotient of the cross-polytope boundary.

use std::fmt::Write;

use crate::complex::{FacePoset, GluedComplex};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::staircase::{sphere_product_with, SphereProduct};
use crate::sym_action::{check_good_action, orbits_with, FacetAction, OrbitTable};

/// A quotient complex: one facet per orbit, in orbit-table order.
#[derive(Debug, Clone)]
pub struct QuotientComplex {
    complex: GluedComplex,
    orbits: OrbitTable,
}

impl QuotientComplex {
    pub fn complex(&self) -> &GluedComplex {
        &self.complex
    }

    pub fn into_complex(self) -> GluedComplex {
        self.complex
    }

    pub fn orbits(&self) -> &OrbitTable {
        &self.orbits
    }

    /// Orbit (= quotient facet) of a source facet.
    pub fn project(&self, facet: usize) -> usize {
        self.orbits.orbit_of(facet)
    }

    /// Lines `proj <global> <orbit>`.
    pub fn projection_text(&self) -> String {
        let mut out = String::new();
        for f in 0..self.orbits.facet_count() {
            writeln!(out, "proj {f} {}", self.project(f)).unwrap();
        }
        out
    }
}

/// Vertex-orbit labels induced by a label-preserving facet partition: label
/// `i` of every member of an orbit lands in one vertex orbit.
pub fn induced_vertex_orbits(poset: &FacePoset, orbits: &OrbitTable) -> Vec<usize> {
    let nv = poset.class_count(0);
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for o in orbits.orbits() {
        let rep = o[0];
        for &m in &o[1..] {
            for l in 0..=poset.dim() {
                let (a, b) = (
                    find(&mut parent, poset.vertex(rep, l)),
                    find(&mut parent, poset.vertex(m, l)),
                );
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut label = vec![usize::MAX; nv];
    let mut next = 0;
    (0..nv)
        .map(|v| {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            label[r]
        })
        .collect()
}

pub fn quotient_complex(c: &GluedComplex, orbits: &OrbitTable) -> Result<QuotientComplex> {
    let poset = c.face_poset()?;
    let vertex_orbit = induced_vertex_orbits(&poset, orbits);
    quotient_complex_with(c, &poset, orbits, &vertex_orbit, Strategy::default())
}

/// Quotient with explicit vertex-orbit labels for the goodness precondition.
pub fn quotient_complex_with(
    c: &GluedComplex,
    poset: &FacePoset,
    orbits: &OrbitTable,
    vertex_orbit: &[usize],
    strategy: Strategy,
) -> Result<QuotientComplex> {
    if let Some((facet, face)) = c.first_non_identity() {
        return Err(Error::NotIdentityGlued { facet, face });
    }
    if orbits.facet_count() != c.facet_count() {
        return Err(Error::InvalidOrbits(format!(
            "orbit table covers {} facets, complex has {}",
            orbits.facet_count(),
            c.facet_count()
        )));
    }
    if vertex_orbit.len() != poset.class_count(0) {
        return Err(Error::InvalidArgument(
            "one orbit label per vertex class required".into(),
        ));
    }
    if let Err(w) = check_good_action(poset, vertex_orbit) {
        return Err(Error::NotGood {
            a: w.a,
            b: w.b,
            orbit: w.orbit,
            edge: w.edge.index,
        });
    }
    let labels = c.labels();
    let targets: Vec<Result<Vec<Option<usize>>>> = strategy.map_range(orbits.len(), |k| {
        let orbit = orbits.orbit(k);
        (0..labels)
            .map(|l| {
                let target_of =
                    |m: usize| c.gluing(m, l).map(|g| orbits.orbit_of(g.facet as usize));
                let t = target_of(orbit[0]);
                for &m in &orbit[1..] {
                    let u = target_of(m);
                    if u != t {
                        return Err(Error::IllDefinedGluing {
                            orbit: k,
                            face: l,
                            reason: format!(
                                "member {} reaches {t:?}, member {m} reaches {u:?}",
                                orbit[0]
                            ),
                        });
                    }
                }
                if t == Some(k) {
                    return Err(Error::SelfGluing { orbit: k, face: l });
                }
                Ok(t)
            })
            .collect()
    });
    let mut q = GluedComplex::new(c.dim(), orbits.len())?;
    for (k, row) in targets.into_iter().enumerate() {
        for (l, t) in row?.into_iter().enumerate() {
            if let Some(t) = t {
                q.glue_identity(k, l, t)
                    .map_err(|e| Error::IllDefinedGluing {
                        orbit: k,
                        face: l,
                        reason: e.to_string(),
                    })?;
            }
        }
    }
    q.validate()?;
    Ok(QuotientComplex {
        complex: q,
        orbits: orbits.clone(),
    })
}

pub const MAX_CPN_N: usize = 4;

/// `T_n = X^n / Sym(n)`.
pub fn cpn_complex(n: usize) -> Result<QuotientComplex> {
    cpn_complex_with(n, Strategy::default())
}

pub fn cpn_complex_with(n: usize, strategy: Strategy) -> Result<QuotientComplex> {
    if n > MAX_CPN_N {
        return Err(Error::CapacityExceeded(format!(
            "T_{n}: the limit is n = {MAX_CPN_N}"
        )));
    }
    let sp = sphere_product_with(n, strategy)?;
    cpn_from_sphere_product(&sp, strategy)
}

pub fn cpn_from_sphere_product(sp: &SphereProduct, strategy: Strategy) -> Result<QuotientComplex> {
    let orbits = orbits_with(sp, strategy)?;
    quotient_by_label_preserving(sp.complex(), &orbits, strategy)
}

/// Quotient by a label-preserving partition, with vertex orbits induced from it.
///
/// Vertex orbits are computed from the facet partition alone, so the source
/// face poset is only needed for goodness; for large sources this builds it.
pub fn quotient_by_label_preserving(
    c: &GluedComplex,
    orbits: &OrbitTable,
    strategy: Strategy,
) -> Result<QuotientComplex> {
    let poset = FacePoset::build_with(c, crate::complex::PosetRoute::Auto, strategy)?;
    let vertex_orbit = induced_vertex_orbits(&poset, orbits);
    quotient_complex_with(c, &poset, orbits, &vertex_orbit, strategy)
}

pub const MAX_CROSS_POLYTOPE_N: usize = 14;

/// Boundary of the `(n+1)`-dimensional cross-polytope.
///
/// Vertices `u_i, v_i` for `i = 0..=n`; facet `b` (a bit mask) takes `v_i` when
/// bit `i` is set and `u_i` otherwise, at label `i`. Face `i` of `b` is glued
/// to `b ^ (1 << i)` by the identity.
pub fn cross_polytope_boundary(n: usize) -> Result<GluedComplex> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if n > MAX_CROSS_POLYTOPE_N {
        return Err(Error::CapacityExceeded(format!(
            "cross-polytope of dimension {}",
            n + 1
        )));
    }
    let facets = 1usize << (n + 1);
    let mut c = GluedComplex::new(n, facets)?;
    for b in 0..facets {
        for i in 0..=n {
            let other = b ^ (1 << i);
            if b < other {
                c.glue_identity(b, i, other)?;
            }
        }
    }
    Ok(c)
}

/// The antipodal involution `u_i ↔ v_i` on facets of the cross-polytope.
pub fn antipodal_action(n: usize) -> FacetAction {
    let facets = 1usize << (n + 1);
    FacetAction {
        facet_map: (0..facets).map(|b| b ^ (facets - 1)).collect(),
        label_maps: None,
    }
}

pub fn antipodal_orbits(n: usize) -> OrbitTable {
    let facets = 1usize << (n + 1);
    let orbits = (0..facets / 2).map(|b| vec![b, b ^ (facets - 1)]).collect();
    OrbitTable::new(orbits, facets).unwrap().canonical()
}

/// `RP^n` as the antipodal quotient of the cross-polytope boundary.
pub fn rpn_complex(n: usize) -> Result<QuotientComplex> {
    let c = cross_polytope_boundary(n)?;
    quotient_complex(&c, &antipodal_orbits(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{two_simplex_sphere, LabelPerm};

    #[test]
    fn cross_polytope_small() {
        assert_eq!(
            cross_polytope_boundary(1).unwrap().f_vector().unwrap().0,
            vec![4, 4]
        );
        let oct = cross_polytope_boundary(2).unwrap();
        assert_eq!(oct.f_vector().unwrap().0, vec![6, 12, 8]);
        assert_eq!(oct.euler_characteristic().unwrap(), 2);
    }

    #[test]
    fn rp_small() {
        let rp1 = rpn_complex(1).unwrap();
        assert_eq!(rp1.complex().f_vector().unwrap().0, vec![2, 2]);
        let rp2 = rpn_complex(2).unwrap();
        assert_eq!(rp2.complex().f_vector().unwrap().0, vec![3, 6, 4]);
        let rp3 = rpn_complex(3).unwrap();
        let f = rp3.complex().f_vector().unwrap();
        assert_eq!(f.0[0], 4);
        assert_eq!(f.0[3], 8);
    }

    #[test]
    fn trivial_partition_is_identity() {
        let s = two_simplex_sphere(2).unwrap();
        let q = quotient_complex(&s, &OrbitTable::trivial(2)).unwrap();
        assert_eq!(q.complex(), &s);
        assert_eq!(q.projection_text(), "proj 0 0\nproj 1 1\n");
    }

    #[test]
    fn swapping_the_two_halves_of_a_circle() {
        // circle from two edges
        let mut c = GluedComplex::new(1, 2).unwrap();
        c.glue_identity(0, 0, 1).unwrap();
        c.glue_identity(0, 1, 1).unwrap();
        let poset = c.face_poset().unwrap();
        let orbits = OrbitTable::new(vec![vec![0, 1]], 2).unwrap();
        // a half turn puts the two adjacent vertices in one orbit: not good
        let err =
            quotient_complex_with(&c, &poset, &orbits, &[0, 0], Strategy::Sequential).unwrap_err();
        assert!(matches!(err, Error::NotGood { .. }));
        // the reflection swapping the edges fixes both vertices; its quotient
        // would glue a face to itself
        let err = quotient_complex(&c, &orbits).unwrap_err();
        assert!(matches!(err, Error::SelfGluing { orbit: 0, .. }));
    }

    #[test]
    fn non_identity_source_rejected() {
        let mut c = GluedComplex::new(1, 2).unwrap();
        c.glue(0, 0, 1, LabelPerm::from_images(&[1, 0]).unwrap())
            .unwrap();
        assert!(matches!(
            quotient_complex(&c, &OrbitTable::trivial(2)),
            Err(Error::NotIdentityGlued { .. })
        ));
    }

    #[test]
    fn ill_defined_partition_detected() {
        // a chain of four edges closed into a circle; pairing facets that do
        // not commute with the gluings
        let mut c = GluedComplex::new(1, 4).unwrap();
        c.glue_identity(0, 0, 1).unwrap();
        c.glue_identity(1, 1, 2).unwrap();
        c.glue_identity(2, 0, 3).unwrap();
        c.glue_identity(3, 1, 0).unwrap();
        let orbits = OrbitTable::new(vec![vec![0, 2], vec![1], vec![3]], 4).unwrap();
        assert!(matches!(
            quotient_complex(&c, &orbits),
            Err(Error::IllDefinedGluing { .. })
        ));
    }
}
