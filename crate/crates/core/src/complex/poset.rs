use crate::complex::{FVector, GluedComplex, MAX_DIM};
use crate::error::{Error, Result};
use crate::exec::Strategy;

/// A face of a facet: the facet index and the bit mask of its local labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceRef {
    pub facet: u32,
    pub mask: u16,
}

impl FaceRef {
    pub fn labels(&self) -> Vec<usize> {
        mask_labels(self.mask)
    }
}

/// A face class: its dimension and its index among the classes of that
/// dimension (classes are ordered by canonical representative).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceId {
    pub dim: usize,
    pub index: usize,
}

/// How face classes are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosetRoute {
    /// Residues for identity-glued complexes, union-find otherwise.
    Auto,
    /// Union-find seeded by every ridge gluing.
    UnionFind,
    /// Connected components of the dual graph restricted to the colours
    /// outside each label set. Requires identity gluings.
    Residues,
}

#[derive(Debug, Clone)]
struct Level {
    /// Label subsets of size `k + 1`, in lexicographic order of sorted labels.
    masks: Vec<u16>,
    /// Class of each pair `facet * masks.len() + rank`.
    class_of: Vec<u32>,
    /// Least member of each class.
    reps: Vec<FaceRef>,
    offsets: Vec<usize>,
    /// Pair indices grouped by class, ascending within each class.
    members: Vec<u32>,
}

/// The face poset of a [`GluedComplex`]: every `(facet, label subset)` pair
/// assigned to the face class it represents.
#[derive(Debug, Clone)]
pub struct FacePoset {
    dim: usize,
    facet_count: usize,
    mask_rank: Vec<u32>,
    levels: Vec<Level>,
}

pub(crate) fn mask_labels(mask: u16) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// All `size`-subsets of `0..n` as masks, lexicographic in sorted labels.
pub(crate) fn subsets_lex(n: usize, size: usize) -> Vec<u16> {
    fn rec(n: usize, size: usize, start: usize, cur: u16, out: &mut Vec<u16>) {
        if size == 0 {
            out.push(cur);
            return;
        }
        for i in start..=(n - size) {
            rec(n, size - 1, i + 1, cur | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if size <= n {
        rec(n, size, 0, 0, &mut out);
    }
    out
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller index wins so roots are stable
            if ra < rb {
                self.parent[rb as usize] = ra;
            } else {
                self.parent[ra as usize] = rb;
            }
        }
    }
}

impl FacePoset {
    pub fn build(c: &GluedComplex) -> Result<Self> {
        Self::build_with(c, PosetRoute::Auto, Strategy::default())
    }

    pub fn build_with(c: &GluedComplex, route: PosetRoute, strategy: Strategy) -> Result<Self> {
        c.validate()?;
        let d = c.dim();
        if d > MAX_DIM {
            return Err(Error::DimensionTooLarge(d));
        }
        let n = d + 1;
        let pairs = c.facet_count() as u128 * ((1u128 << n) - 1);
        if pairs > u32::MAX as u128 {
            return Err(Error::CapacityExceeded(format!(
                "{pairs} (facet, face) pairs exceed the face-poset index range"
            )));
        }
        let route = match route {
            PosetRoute::Auto if c.is_identity_glued() => PosetRoute::Residues,
            PosetRoute::Auto => PosetRoute::UnionFind,
            r => r,
        };
        if route == PosetRoute::Residues {
            if let Some((facet, face)) = c.first_non_identity() {
                return Err(Error::NotIdentityGlued { facet, face });
            }
        }
        let all_masks: Vec<Vec<u16>> = (0..n).map(|k| subsets_lex(n, k + 1)).collect();
        let mut mask_rank = vec![u32::MAX; 1 << n];
        for masks in &all_masks {
            for (r, &m) in masks.iter().enumerate() {
                mask_rank[m as usize] = r as u32;
            }
        }
        let roots: Vec<Vec<u32>> = match route {
            PosetRoute::Residues => residue_roots(c, &all_masks, strategy),
            _ => strategy.map_range(n, |k| union_find_roots(c, &all_masks[k], &mask_rank)),
        };
        let levels = strategy.map_range(n, |k| {
            canonical_level(c.facet_count(), all_masks[k].clone(), &roots[k])
        });
        Ok(FacePoset {
            dim: d,
            facet_count: c.facet_count(),
            mask_rank,
            levels,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facet_count(&self) -> usize {
        self.facet_count
    }

    pub fn class_count(&self, k: usize) -> usize {
        self.levels[k].reps.len()
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.levels.iter().map(|l| l.reps.len() as u64).collect())
    }

    /// The class containing the face `(facet, mask)`.
    #[inline]
    pub fn class_of(&self, face: FaceRef) -> FaceId {
        let k = face.mask.count_ones() as usize - 1;
        let level = &self.levels[k];
        let idx =
            face.facet as usize * level.masks.len() + self.mask_rank[face.mask as usize] as usize;
        FaceId {
            dim: k,
            index: level.class_of[idx] as usize,
        }
    }

    #[inline]
    pub fn face(&self, facet: usize, mask: u16) -> FaceId {
        self.class_of(FaceRef {
            facet: facet as u32,
            mask,
        })
    }

    /// Vertex class of label `label` of `facet`.
    #[inline]
    pub fn vertex(&self, facet: usize, label: usize) -> usize {
        self.levels[0].class_of[facet * (self.dim + 1) + label] as usize
    }

    /// Canonical (lexicographically least) member.
    pub fn rep(&self, id: FaceId) -> FaceRef {
        self.levels[id.dim].reps[id.index]
    }

    pub fn members(&self, id: FaceId) -> impl Iterator<Item = FaceRef> + '_ {
        let level = &self.levels[id.dim];
        let m = level.masks.len();
        level.members[level.offsets[id.index]..level.offsets[id.index + 1]]
            .iter()
            .map(move |&p| FaceRef {
                facet: (p as usize / m) as u32,
                mask: level.masks[p as usize % m],
            })
    }

    pub fn member_count(&self, id: FaceId) -> usize {
        let level = &self.levels[id.dim];
        level.offsets[id.index + 1] - level.offsets[id.index]
    }

    /// Codimension-one faces of the representative, in increasing order of the
    /// dropped label.
    pub fn boundary(&self, id: FaceId) -> Vec<FaceId> {
        if id.dim == 0 {
            return Vec::new();
        }
        let rep = self.rep(id);
        mask_labels(rep.mask)
            .into_iter()
            .map(|l| {
                self.class_of(FaceRef {
                    facet: rep.facet,
                    mask: rep.mask & !(1 << l),
                })
            })
            .collect()
    }

    /// Vertex classes of the representative, in label order.
    pub fn vertices_of(&self, id: FaceId) -> Vec<usize> {
        let rep = self.rep(id);
        mask_labels(rep.mask)
            .into_iter()
            .map(|l| self.vertex(rep.facet as usize, l))
            .collect()
    }

    /// Label subsets of size `k + 1` in the order used for pair indices.
    pub fn masks(&self, k: usize) -> &[u16] {
        &self.levels[k].masks
    }

    pub fn ids(&self, k: usize) -> impl Iterator<Item = FaceId> {
        (0..self.class_count(k)).map(move |index| FaceId { dim: k, index })
    }

    /// Raw class assignment of level `k` (pair index to class index).
    pub fn class_table(&self, k: usize) -> &[u32] {
        &self.levels[k].class_of
    }
}

fn union_find_roots(c: &GluedComplex, masks: &[u16], mask_rank: &[u32]) -> Vec<u32> {
    let m = masks.len();
    let n = c.labels();
    let mut uf = UnionFind::new(c.facet_count() * m);
    for f in 0..c.facet_count() {
        for i in 0..n {
            let Some(g) = c.gluing(f, i) else { continue };
            let other = g.facet as usize;
            // each ridge is seen from both sides; one side is enough
            if (other, g.perm.apply(i)) < (f, i) {
                continue;
            }
            for (r, &mask) in masks.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    continue;
                }
                let image = g.perm.apply_mask(mask);
                let a = (f * m + r) as u32;
                let b = (other * m + mask_rank[image as usize] as usize) as u32;
                uf.union(a, b);
            }
        }
    }
    (0..uf.parent.len() as u32).map(|x| uf.find(x)).collect()
}

fn residue_roots(c: &GluedComplex, all_masks: &[Vec<u16>], strategy: Strategy) -> Vec<Vec<u32>> {
    let n = c.labels();
    let fc = c.facet_count();
    let flat: Vec<(usize, usize)> = all_masks
        .iter()
        .enumerate()
        .flat_map(|(k, ms)| (0..ms.len()).map(move |r| (k, r)))
        .collect();
    let per_mask: Vec<Vec<u32>> = strategy.map_slice(&flat, |&(k, r)| {
        let mask = all_masks[k][r];
        let colours: Vec<usize> = (0..n).filter(|c| mask & (1 << c) == 0).collect();
        let mut comp = vec![u32::MAX; fc];
        let mut stack = Vec::new();
        for start in 0..fc {
            if comp[start] != u32::MAX {
                continue;
            }
            comp[start] = start as u32;
            stack.push(start);
            while let Some(f) = stack.pop() {
                for &col in &colours {
                    if let Some(g) = c.gluing(f, col) {
                        let g = g.facet as usize;
                        if comp[g] == u32::MAX {
                            comp[g] = start as u32;
                            stack.push(g);
                        }
                    }
                }
            }
        }
        comp
    });
    let mut out: Vec<Vec<u32>> = all_masks
        .iter()
        .map(|ms| vec![0u32; fc * ms.len()])
        .collect();
    for (&(k, r), comp) in flat.iter().zip(per_mask) {
        let m = all_masks[k].len();
        let level = &mut out[k];
        for (f, &root) in comp.iter().enumerate() {
            level[f * m + r] = root * m as u32 + r as u32;
        }
    }
    out
}

fn canonical_level(facet_count: usize, masks: Vec<u16>, roots: &[u32]) -> Level {
    let m = masks.len();
    let total = facet_count * m;
    let mut class_by_root = vec![u32::MAX; total];
    let mut class_of = vec![0u32; total];
    let mut reps = Vec::new();
    for p in 0..total {
        let root = roots[p] as usize;
        if class_by_root[root] == u32::MAX {
            class_by_root[root] = reps.len() as u32;
            reps.push(FaceRef {
                facet: (p / m) as u32,
                mask: masks[p % m],
            });
        }
        class_of[p] = class_by_root[root];
    }
    drop(class_by_root);
    let mut offsets = vec![0usize; reps.len() + 1];
    for &c in &class_of {
        offsets[c as usize + 1] += 1;
    }
    for i in 0..reps.len() {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut members = vec![0u32; total];
    for (p, &c) in class_of.iter().enumerate() {
        members[fill[c as usize]] = p as u32;
        fill[c as usize] += 1;
    }
    Level {
        masks,
        class_of,
        reps,
        offsets,
        members,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{simplex, two_simplex_sphere, LabelPerm};

    #[test]
    fn lex_subsets() {
        assert_eq!(subsets_lex(3, 2), vec![0b011, 0b101, 0b110]);
        assert_eq!(subsets_lex(4, 4), vec![0b1111]);
        assert_eq!(subsets_lex(5, 2).len(), 10);
    }

    #[test]
    fn single_triangle() {
        let p = FacePoset::build(&simplex(2).unwrap()).unwrap();
        assert_eq!(p.f_vector().0, vec![3, 3, 1]);
        assert_eq!(simplex(2).unwrap().euler_characteristic().unwrap(), 1);
    }

    #[test]
    fn two_triangle_sphere() {
        let s = two_simplex_sphere(2).unwrap();
        let p = FacePoset::build(&s).unwrap();
        assert_eq!(p.f_vector().0, vec![3, 3, 2]);
        let e = p.face(1, 0b011);
        assert_eq!(
            p.rep(e),
            FaceRef {
                facet: 0,
                mask: 0b011
            }
        );
        assert_eq!(p.member_count(e), 2);
    }

    #[test]
    fn routes_agree_on_identity_glued() {
        let s = two_simplex_sphere(3).unwrap();
        let a = FacePoset::build_with(&s, PosetRoute::UnionFind, Strategy::Sequential).unwrap();
        let b = FacePoset::build_with(&s, PosetRoute::Residues, Strategy::Parallel).unwrap();
        for k in 0..=3 {
            assert_eq!(a.class_table(k), b.class_table(k));
        }
    }

    #[test]
    fn twisted_gluing_identifies_vertices() {
        // an edge whose two endpoints are identified: glue face 0 to face 1
        // of a second edge, and vice versa, with a label swap
        let mut c = GluedComplex::new(1, 2).unwrap();
        let swap = LabelPerm::from_images(&[1, 0]).unwrap();
        c.glue(0, 0, 1, swap).unwrap();
        c.glue(0, 1, 1, swap).unwrap();
        let p = FacePoset::build(&c).unwrap();
        assert_eq!(p.f_vector().0, vec![2, 2]);
        assert!(matches!(
            FacePoset::build_with(&c, PosetRoute::Residues, Strategy::Sequential),
            Err(Error::NotIdentityGlued { .. })
        ));
    }
}
