//! Pure simplicial posets stored as facets plus face-to-face gluings.
//!
//! Facet vertices are addressed by local labels `0..=d`; face `i` of a facet is
//! the ridge opposite label `i`. Global vertex identity only exists after the
//! face poset has been built (see [`FacePoset`]): two facets may share the same
//! vertex set without sharing a face.

mod certify;
mod gcx;
mod link;
pub(crate) mod poset;

pub use certify::{
    dual_graph, is_closed_pseudomanifold, is_simplicial_cell, is_simplicial_complex, self_gluings,
    DualArc, DualGraph, PseudomanifoldWitness, RegularityWitness,
};
pub use gcx::{read_gcx, write_gcx};
pub use link::link_of_face;
pub use poset::{FaceId, FacePoset, FaceRef, PosetRoute};

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported dimension; subsets of labels are stored as `u16` masks.
pub const MAX_DIM: usize = 15;
pub const MAX_LABELS: usize = MAX_DIM + 1;

/// A permutation of the facet labels `0..=d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabelPerm {
    images: [u8; MAX_LABELS],
    len: u8,
}

impl LabelPerm {
    pub fn identity(len: usize) -> Self {
        assert!(len <= MAX_LABELS);
        let mut images = [0u8; MAX_LABELS];
        for (i, x) in images.iter_mut().enumerate().take(len) {
            *x = i as u8;
        }
        LabelPerm {
            images,
            len: len as u8,
        }
    }

    pub fn from_images(images: &[usize]) -> Result<Self> {
        if images.len() > MAX_LABELS {
            return Err(Error::DimensionTooLarge(images.len().saturating_sub(1)));
        }
        let mut seen = [false; MAX_LABELS];
        let mut out = [0u8; MAX_LABELS];
        for (i, &x) in images.iter().enumerate() {
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[x] = true;
            out[i] = x as u8;
        }
        Ok(LabelPerm {
            images: out,
            len: images.len() as u8,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn apply(&self, label: usize) -> usize {
        self.images[label] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images[..self.len()]
    }

    pub fn is_identity(&self) -> bool {
        self.images()
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut out = [0u8; MAX_LABELS];
        for (i, &x) in self.images().iter().enumerate() {
            out[x as usize] = i as u8;
        }
        LabelPerm {
            images: out,
            len: self.len,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = [0u8; MAX_LABELS];
        for (i, o) in out.iter_mut().enumerate().take(self.len()) {
            *o = self.images[other.images[i] as usize];
        }
        LabelPerm {
            images: out,
            len: self.len,
        }
    }

    /// Image of a label subset given as a bit mask.
    #[inline]
    pub fn apply_mask(&self, mask: u16) -> u16 {
        let mut out = 0u16;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            out |= 1 << self.images[i];
            m &= m - 1;
        }
        out
    }
}

impl fmt::Debug for LabelPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images())
    }
}

/// Face `i` of some facet glued to a face of `facet`; `perm` sends this
/// facet's labels to the neighbour's labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub facet: u32,
    pub perm: LabelPerm,
}

/// A pure `d`-dimensional simplicial poset given by its facets and gluings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluedComplex {
    dim: usize,
    facet_count: usize,
    gluings: Vec<Option<Gluing>>,
}

impl GluedComplex {
    /// `facet_count` disjoint `dim`-simplices.
    pub fn new(dim: usize, facet_count: usize) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        if facet_count > u32::MAX as usize {
            return Err(Error::CapacityExceeded(format!("{facet_count} facets")));
        }
        Ok(GluedComplex {
            dim,
            facet_count,
            gluings: vec![None; facet_count * (dim + 1)],
        })
    }

    /// Builds a complex from a full gluing table (`facet * (dim+1) + face`),
    /// checking the involution invariant.
    pub fn from_table(dim: usize, facet_count: usize, table: Vec<Option<Gluing>>) -> Result<Self> {
        let mut c = GluedComplex::new(dim, facet_count)?;
        if table.len() != c.gluings.len() {
            return Err(Error::InvalidArgument(format!(
                "gluing table has {} entries, expected {}",
                table.len(),
                c.gluings.len()
            )));
        }
        c.gluings = table;
        c.validate()?;
        Ok(c)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn labels(&self) -> usize {
        self.dim + 1
    }

    #[inline]
    pub fn facet_count(&self) -> usize {
        self.facet_count
    }

    #[inline]
    pub fn gluing(&self, facet: usize, face: usize) -> Option<&Gluing> {
        self.gluings[facet * (self.dim + 1) + face].as_ref()
    }

    pub fn gluing_table(&self) -> &[Option<Gluing>] {
        &self.gluings
    }

    /// Glues face `face` of facet `a` to facet `b` through `perm`
    /// (labels of `a` to labels of `b`), setting both directions.
    pub fn glue(&mut self, a: usize, face: usize, b: usize, perm: LabelPerm) -> Result<()> {
        let n = self.dim + 1;
        if a >= self.facet_count {
            return Err(Error::InvalidFacet {
                id: a,
                count: self.facet_count,
            });
        }
        if b >= self.facet_count {
            return Err(Error::InvalidFacet {
                id: b,
                count: self.facet_count,
            });
        }
        if perm.len() != n {
            return Err(Error::InvalidPermutation(format!(
                "{perm:?} has {} labels, expected {n}",
                perm.len()
            )));
        }
        let back_face = perm.apply(face);
        if a == b && back_face == face {
            return Err(Error::InvolutionViolation {
                facet: a,
                face,
                reason: "face glued to itself".into(),
            });
        }
        let back = Gluing {
            facet: a as u32,
            perm: perm.inverse(),
        };
        let fwd = Gluing {
            facet: b as u32,
            perm,
        };
        let writes = [(a * n + face, fwd), (b * n + back_face, back)];
        // check both slots before writing either, so a refused gluing leaves no trace
        for (slot, g) in &writes {
            if let Some(old) = &self.gluings[*slot] {
                if old != g {
                    return Err(Error::InvolutionViolation {
                        facet: slot / n,
                        face: slot % n,
                        reason: format!("already glued to facet {}", old.facet),
                    });
                }
            }
        }
        for (slot, g) in writes {
            self.gluings[slot] = Some(g);
        }
        Ok(())
    }

    /// Glue with the identity label bijection.
    pub fn glue_identity(&mut self, a: usize, face: usize, b: usize) -> Result<()> {
        self.glue(a, face, b, LabelPerm::identity(self.dim + 1))
    }

    /// Checks the involution invariant and label validity of every gluing.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim + 1;
        for (slot, g) in self.gluings.iter().enumerate() {
            let Some(g) = g else { continue };
            let (facet, face) = (slot / n, slot % n);
            let viol = |reason: String| Error::InvolutionViolation {
                facet,
                face,
                reason,
            };
            if g.facet as usize >= self.facet_count {
                return Err(viol(format!("neighbour {} out of range", g.facet)));
            }
            if g.perm.len() != n {
                return Err(viol(format!("bijection {:?} has wrong length", g.perm)));
            }
            let back_face = g.perm.apply(face);
            if g.facet as usize == facet && back_face == face {
                return Err(viol("face glued to itself".into()));
            }
            match self.gluing(g.facet as usize, back_face) {
                Some(b) if b.facet as usize == facet && b.perm.compose(&g.perm).is_identity() => {}
                Some(b) => {
                    return Err(viol(format!(
                        "neighbour {} face {} points back to facet {} with {:?}",
                        g.facet, back_face, b.facet, b.perm
                    )))
                }
                None => {
                    return Err(viol(format!(
                        "neighbour {} face {} is free",
                        g.facet, back_face
                    )))
                }
            }
        }
        Ok(())
    }

    /// True when every gluing uses the identity bijection, so that labels
    /// form a global colouring (a graph encoding).
    pub fn is_identity_glued(&self) -> bool {
        self.first_non_identity().is_none()
    }

    pub(crate) fn first_non_identity(&self) -> Option<(usize, usize)> {
        let n = self.dim + 1;
        self.gluings
            .iter()
            .enumerate()
            .find_map(|(slot, g)| match g {
                Some(g) if !g.perm.is_identity() => Some((slot / n, slot % n)),
                _ => None,
            })
    }

    /// Count of glued `(facet, face)` slots.
    pub fn glued_slot_count(&self) -> usize {
        self.gluings.iter().filter(|g| g.is_some()).count()
    }

    /// The face poset; see [`FacePoset::build`].
    pub fn face_poset(&self) -> Result<FacePoset> {
        FacePoset::build(self)
    }

    pub fn f_vector(&self) -> Result<FVector> {
        Ok(self.face_poset()?.f_vector())
    }

    pub fn euler_characteristic(&self) -> Result<i64> {
        Ok(self.f_vector()?.euler_characteristic())
    }

    /// Relabels facets: facet `i` becomes `perm[i]`.
    pub fn relabel_facets(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.facet_count {
            return Err(Error::InvalidArgument(
                "facet permutation has wrong length".into(),
            ));
        }
        let n = self.dim + 1;
        let mut table = vec![None; self.gluings.len()];
        for (slot, g) in self.gluings.iter().enumerate() {
            let (f, i) = (slot / n, slot % n);
            table[perm[f] * n + i] = g.map(|g| Gluing {
                facet: perm[g.facet as usize] as u32,
                perm: g.perm,
            });
        }
        GluedComplex::from_table(self.dim, self.facet_count, table)
    }
}

/// Face numbers `(f_0, ..., f_d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    pub fn dim(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(j, &f)| if j % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl From<Vec<u64>> for FVector {
    fn from(v: Vec<u64>) -> Self {
        FVector(v)
    }
}

/// The closure of a single `d`-simplex.
pub fn simplex(dim: usize) -> Result<GluedComplex> {
    GluedComplex::new(dim, 1)
}

/// `S^d` as two `d`-simplices glued along their whole boundary by the identity;
/// for `d = 2` this is the three-vertex two-triangle sphere.
pub fn two_simplex_sphere(dim: usize) -> Result<GluedComplex> {
    let mut c = GluedComplex::new(dim, 2)?;
    for i in 0..=dim {
        c.glue_identity(0, i, 1)?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_ops() {
        let p = LabelPerm::from_images(&[2, 0, 1]).unwrap();
        assert_eq!(p.inverse().compose(&p), LabelPerm::identity(3));
        assert_eq!(p.apply_mask(0b011), 0b101);
        assert!(LabelPerm::from_images(&[0, 0, 1]).is_err());
        assert!(LabelPerm::from_images(&[0, 3, 1]).is_err());
    }

    #[test]
    fn glue_rejects_conflicts() {
        let mut c = GluedComplex::new(2, 3).unwrap();
        c.glue_identity(0, 0, 1).unwrap();
        c.glue_identity(0, 0, 1).unwrap();
        assert!(matches!(
            c.glue_identity(0, 0, 2),
            Err(Error::InvolutionViolation { .. })
        ));
        assert!(matches!(
            c.glue_identity(2, 1, 2),
            Err(Error::InvolutionViolation { .. })
        ));
        c.validate().unwrap();
    }

    #[test]
    fn refused_glue_leaves_no_trace() {
        let mut c = GluedComplex::new(2, 3).unwrap();
        c.glue_identity(1, 0, 2).unwrap();
        // (0, 0) is free but the reverse slot (1, 0) is taken
        assert!(c.glue_identity(0, 0, 1).is_err());
        assert!(c.gluing(0, 0).is_none());
        c.validate().unwrap();
    }

    #[test]
    fn from_table_detects_broken_involution() {
        let mut table = vec![None; 6];
        table[0] = Some(Gluing {
            facet: 1,
            perm: LabelPerm::identity(3),
        });
        let err = GluedComplex::from_table(2, 2, table).unwrap_err();
        assert!(matches!(
            err,
            Error::InvolutionViolation {
                facet: 0,
                face: 0,
                ..
            }
        ));
    }

    #[test]
    fn euler_of_fvector() {
        assert_eq!(FVector(vec![3, 3, 2]).euler_characteristic(), 2);
        assert_eq!(FVector(vec![9, 27, 58, 60, 24]).euler_characteristic(), 4);
    }
}
