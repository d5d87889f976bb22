use std::collections::HashMap;

use crate::complex::poset::mask_labels;
use crate::complex::{FaceId, FacePoset, FaceRef, GluedComplex, LabelPerm};
use crate::error::{Error, Result};

/// The link of a face class.
///
/// One link facet per member `(facet, S)` of the class, carrying the labels
/// outside `S` renumbered in increasing order; gluings are induced from the
/// ridge gluings of `c` on those labels.
pub fn link_of_face(c: &GluedComplex, poset: &FacePoset, face: FaceId) -> Result<GluedComplex> {
    if face.dim > poset.dim() || face.index >= poset.class_count(face.dim) {
        return Err(Error::FaceNotFound(format!("{face:?}")));
    }
    if face.dim == poset.dim() {
        return Err(Error::InvalidArgument(
            "the link of a facet is empty".into(),
        ));
    }
    let members: Vec<FaceRef> = poset.members(face).collect();
    let index: HashMap<FaceRef, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let full: u16 = ((1u32 << c.labels()) - 1) as u16;
    let link_dim = c.dim() - face.dim - 1;
    let mut out = GluedComplex::new(link_dim, members.len())?;
    for (li, m) in members.iter().enumerate() {
        let comp = mask_labels(full & !m.mask);
        for (j, &t) in comp.iter().enumerate() {
            let Some(g) = c.gluing(m.facet as usize, t) else {
                continue;
            };
            let target = FaceRef {
                facet: g.facet,
                mask: g.perm.apply_mask(m.mask),
            };
            let &lj = index.get(&target).ok_or_else(|| {
                Error::ConstructionInconsistency(format!(
                    "gluing of facet {} face {t} leaves the class of {face:?}",
                    m.facet
                ))
            })?;
            let target_comp = mask_labels(full & !target.mask);
            let images: Vec<usize> = comp
                .iter()
                .map(|&x| {
                    let y = g.perm.apply(x);
                    target_comp.iter().position(|&z| z == y).unwrap()
                })
                .collect();
            let perm = LabelPerm::from_images(&images)?;
            if (lj, perm.apply(j)) < (li, j) {
                continue;
            }
            out.glue(li, j, lj, perm)?;
        }
    }
    out.validate()?;
    Ok(out)
}
