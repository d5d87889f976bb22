//! Staircase subdivision of the `n`-fold triangle product and the complex
//! `X^n` decomposing `(S^2)^n`.
//!
//! Grid vertices of `{1,2,3}^n` get id `Σ (i_k - 1) 3^(n-k)`, so a step along
//! axis `a` (0-based) adds `3^(n-1-a)`. Maximal monotone paths are sorted
//! lexicographically by their sequences of increments. The `2^n` product
//! cells are numbered by their `{U, L}` words with `U = 0`, `L = 1`, and the
//! letter of axis `a` stored in bit `a`. Facet `path + N * cell` of `X^n`
//! carries label `k` on the path vertex at grid distance `k`; every gluing is
//! the identity on labels.

use std::collections::{HashMap, HashSet};

use crate::complex::{GluedComplex, Gluing, LabelPerm};
use crate::error::{Error, Result};
use crate::exec::Strategy;

/// Largest `n` for which `X^n` is built; `(2n)!` facets.
pub const MAX_SPHERE_PRODUCT_N: usize = 4;

/// A vertex `(i_1, ..., i_n)` of the subdivided cube, each `i_k ∈ {1,2,3}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridVertex(pub Vec<u8>);

impl GridVertex {
    pub fn from_id(mut id: u32, n: usize) -> Self {
        let mut coords = vec![1u8; n];
        for k in (0..n).rev() {
            coords[k] = (id % 3) as u8 + 1;
            id /= 3;
        }
        GridVertex(coords)
    }

    pub fn id(&self) -> u32 {
        self.0.iter().fold(0u32, |acc, &c| acc * 3 + (c as u32 - 1))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Edge-graph distance from the all-ones corner.
    pub fn distance(&self) -> usize {
        self.0.iter().map(|&c| c as usize - 1).sum()
    }
}

#[inline]
pub fn axis_increment(n: usize, axis: usize) -> u32 {
    3u32.pow((n - 1 - axis) as u32)
}

/// A maximal monotone path: `2n` axis steps, each axis used twice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonotonePath {
    axes: Vec<u8>,
}

impl MonotonePath {
    pub fn new(axes: Vec<u8>, n: usize) -> Result<Self> {
        let mut count = vec![0usize; n];
        if axes.len() != 2 * n {
            return Err(Error::InvalidArgument(format!(
                "path needs {} steps",
                2 * n
            )));
        }
        for &a in &axes {
            if a as usize >= n {
                return Err(Error::InvalidArgument(format!("axis {a} out of range")));
            }
            count[a as usize] += 1;
        }
        if count.iter().any(|&c| c != 2) {
            return Err(Error::InvalidArgument(format!(
                "{axes:?} does not use every axis twice"
            )));
        }
        Ok(MonotonePath { axes })
    }

    pub fn n(&self) -> usize {
        self.axes.len() / 2
    }

    pub fn axes(&self) -> &[u8] {
        &self.axes
    }

    pub fn increments(&self) -> Vec<u32> {
        let n = self.n();
        self.axes
            .iter()
            .map(|&a| axis_increment(n, a as usize))
            .collect()
    }

    /// Grid ids of the `2n + 1` vertices, by distance from the all-ones corner.
    pub fn vertex_ids(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.axes.len() + 1);
        out.push(0);
        for inc in self.increments() {
            out.push(out.last().unwrap() + inc);
        }
        out
    }

    fn key(&self) -> u64 {
        self.axes.iter().fold(0u64, |k, &a| (k << 4) | a as u64)
    }
}

/// All maximal monotone paths for `n`, sorted by increment sequence.
pub fn enumerate_monotone_paths(n: usize) -> Result<Vec<MonotonePath>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if n > 6 {
        return Err(Error::CapacityExceeded(format!(
            "monotone paths for n = {n}"
        )));
    }
    fn rec(remaining: &mut [u8], cur: &mut Vec<u8>, len: usize, out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for a in 0..remaining.len() {
            if remaining[a] > 0 {
                remaining[a] -= 1;
                cur.push(a as u8);
                rec(remaining, cur, len, out);
                cur.pop();
                remaining[a] += 1;
            }
        }
    }
    let mut raw = Vec::new();
    rec(&mut vec![2u8; n], &mut Vec::new(), 2 * n, &mut raw);
    let mut paths: Vec<MonotonePath> = raw.into_iter().map(|axes| MonotonePath { axes }).collect();
    paths.sort_by_cached_key(|p| p.increments());
    Ok(paths)
}

/// Facets (grid-id lists) of the staircase subdivision of the triangle product.
pub fn triangle_product_complex(n: usize) -> Result<Vec<Vec<u32>>> {
    Ok(enumerate_monotone_paths(n)?
        .iter()
        .map(|p| p.vertex_ids())
        .collect())
}

/// Codimension-one faces occurring an odd number of times, each with the
/// `(facet index, dropped position)` of its last unmatched occurrence, in order
/// of that occurrence.
pub fn boundary_faces(facets: &[Vec<u32>]) -> Vec<(Vec<u32>, (usize, usize))> {
    let mut open: HashMap<Vec<u32>, (usize, (usize, usize))> = HashMap::new();
    let mut seq = 0usize;
    for (f, facet) in facets.iter().enumerate() {
        for k in 0..facet.len() {
            let mut ridge = facet.clone();
            ridge.remove(k);
            if open.remove(&ridge).is_none() {
                open.insert(ridge, (seq, (f, k)));
                seq += 1;
            }
        }
    }
    let mut out: Vec<(usize, Vec<u32>, (usize, usize))> =
        open.into_iter().map(|(r, (s, p))| (s, r, p)).collect();
    out.sort_unstable_by_key(|x| x.0);
    out.into_iter().map(|(_, r, p)| (r, p)).collect()
}

/// `X^n` together with its indexing data.
#[derive(Debug, Clone)]
pub struct SphereProduct {
    n: usize,
    paths: Vec<MonotonePath>,
    path_vertices: Vec<Vec<u32>>,
    lookup: HashMap<u64, usize>,
    complex: GluedComplex,
}

impl SphereProduct {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn complex(&self) -> &GluedComplex {
        &self.complex
    }

    pub fn into_complex(self) -> GluedComplex {
        self.complex
    }

    pub fn paths(&self) -> &[MonotonePath] {
        &self.paths
    }

    /// Paths per cell, `(2n)! / 2^n`.
    pub fn paths_per_cell(&self) -> usize {
        self.paths.len()
    }

    pub fn cell_count(&self) -> usize {
        1 << self.n
    }

    pub fn global_id(&self, path: usize, cell: usize) -> usize {
        path + self.paths.len() * cell
    }

    /// `(path index, cell index)` of a global facet id.
    pub fn split(&self, global: usize) -> (usize, usize) {
        (global % self.paths.len(), global / self.paths.len())
    }

    pub fn path_index(&self, path: &MonotonePath) -> Option<usize> {
        self.lookup.get(&path.key()).copied()
    }

    /// Grid ids of a facet's vertices, indexed by label.
    pub fn facet_vertices(&self, global: usize) -> &[u32] {
        &self.path_vertices[self.split(global).0]
    }
}

/// Where face `k` of a path sits: inside the cell (glued to another path) or
/// on the cell boundary across `axis`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RidgeKind {
    Interior(usize),
    Boundary { axis: usize },
}

fn ridge_kinds(
    paths: &[MonotonePath],
    path_vertices: &[Vec<u32>],
    lookup: &HashMap<u64, usize>,
) -> Result<Vec<Vec<RidgeKind>>> {
    let mut out = Vec::with_capacity(paths.len());
    for (i, p) in paths.iter().enumerate() {
        let steps = p.axes();
        let len = steps.len();
        let mut kinds = Vec::with_capacity(len + 1);
        for k in 0..=len {
            let kind = if k == 0 {
                RidgeKind::Boundary {
                    axis: steps[0] as usize,
                }
            } else if k == len {
                RidgeKind::Boundary {
                    axis: steps[len - 1] as usize,
                }
            } else if steps[k - 1] == steps[k] {
                RidgeKind::Boundary {
                    axis: steps[k] as usize,
                }
            } else {
                let mut axes = steps.to_vec();
                axes.swap(k - 1, k);
                let other = MonotonePath { axes };
                let j = *lookup.get(&other.key()).ok_or_else(|| {
                    Error::ConstructionInconsistency(format!("path {i}: flipped path not found"))
                })?;
                check_identity_match(&path_vertices[i], &path_vertices[j], k)?;
                RidgeKind::Interior(j)
            };
            kinds.push(kind);
        }
        out.push(kinds);
    }
    Ok(out)
}

/// Label bijection matching the shared vertices of two facets that meet in the
/// ridge opposite `k`; must be the identity.
fn check_identity_match(a: &[u32], b: &[u32], k: usize) -> Result<()> {
    let len = a.len();
    let mut images = vec![usize::MAX; len];
    let mut used = vec![false; len];
    for l in (0..len).filter(|&l| l != k) {
        let pos = b.iter().position(|&v| v == a[l]).ok_or_else(|| {
            Error::ConstructionInconsistency(format!("vertex {} missing from neighbour", a[l]))
        })?;
        images[l] = pos;
        used[pos] = true;
    }
    images[k] = used.iter().position(|u| !u).unwrap();
    let perm = LabelPerm::from_images(&images)?;
    if !perm.is_identity() {
        return Err(Error::ConstructionInconsistency(format!(
            "non-identity gluing {perm:?} between {a:?} and {b:?}"
        )));
    }
    Ok(())
}

pub fn sphere_product(n: usize) -> Result<SphereProduct> {
    sphere_product_with(n, Strategy::default())
}

pub fn sphere_product_with(n: usize, strategy: Strategy) -> Result<SphereProduct> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if n > MAX_SPHERE_PRODUCT_N {
        return Err(Error::CapacityExceeded(format!(
            "X^{n} has {}! facets; the limit is n = {MAX_SPHERE_PRODUCT_N}",
            2 * n
        )));
    }
    let paths = enumerate_monotone_paths(n)?;
    let path_vertices: Vec<Vec<u32>> = paths.iter().map(|p| p.vertex_ids()).collect();
    let lookup: HashMap<u64, usize> = paths
        .iter()
        .enumerate()
        .map(|(i, p)| (p.key(), i))
        .collect();
    let kinds = ridge_kinds(&paths, &path_vertices, &lookup)?;

    // the boundary ridges found structurally must be exactly the Z/2 boundary
    let expected: HashSet<(usize, usize)> = boundary_faces(&path_vertices)
        .into_iter()
        .map(|(_, p)| p)
        .collect();
    let found: HashSet<(usize, usize)> = kinds
        .iter()
        .enumerate()
        .flat_map(|(i, ks)| {
            ks.iter()
                .enumerate()
                .filter(|(_, k)| matches!(k, RidgeKind::Boundary { .. }))
                .map(move |(k, _)| (i, k))
        })
        .collect();
    if expected != found {
        return Err(Error::ConstructionInconsistency(format!(
            "{} boundary ridges by structure, {} by parity",
            found.len(),
            expected.len()
        )));
    }

    let d = 2 * n;
    let np = paths.len();
    let id = LabelPerm::identity(d + 1);
    let cells: Vec<Vec<Option<Gluing>>> = strategy.map_range(1 << n, |cell| {
        let mut slots = Vec::with_capacity(np * (d + 1));
        for (i, ks) in kinds.iter().enumerate() {
            for kind in ks {
                let target = match *kind {
                    RidgeKind::Interior(j) => j + np * cell,
                    // same path in the cell whose word differs at `axis`
                    RidgeKind::Boundary { axis } => i + np * (cell ^ (1 << axis)),
                };
                slots.push(Some(Gluing {
                    facet: target as u32,
                    perm: id,
                }));
            }
        }
        slots
    });
    let table: Vec<Option<Gluing>> = cells.into_iter().flatten().collect();
    let complex = GluedComplex::from_table(d, np << n, table)?;
    Ok(SphereProduct {
        n,
        paths,
        path_vertices,
        lookup,
        complex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn path_counts() {
        for n in 1..=4 {
            let expected: usize = (0..n)
                .map(|j| (2 * (n - j)) * (2 * (n - j) - 1) / 2)
                .product();
            let paths = enumerate_monotone_paths(n).unwrap();
            assert_eq!(paths.len(), expected);
            assert_eq!(paths.len(), factorial(2 * n) >> n);
            let keys: Vec<Vec<u32>> = paths.iter().map(|p| p.increments()).collect();
            assert!(keys.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn first_path_for_two_axes() {
        let paths = enumerate_monotone_paths(2).unwrap();
        assert_eq!(paths[0].vertex_ids(), vec![0, 1, 2, 5, 8]);
        assert_eq!(triangle_product_complex(1).unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn grid_ids_round_trip() {
        for n in 1..=4 {
            for id in 0..3u32.pow(n as u32) {
                let v = GridVertex::from_id(id, n);
                assert_eq!(v.id(), id);
                assert!(v.0.iter().all(|&c| (1..=3).contains(&c)));
            }
        }
    }

    #[test]
    fn facet_vertices_climb_one_step_at_a_time() {
        for n in 1..=3 {
            for f in triangle_product_complex(n).unwrap() {
                let d: Vec<usize> = f
                    .iter()
                    .map(|&v| GridVertex::from_id(v, n).distance())
                    .collect();
                assert_eq!(d, (0..=2 * n).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn boundary_of_small_complexes() {
        assert_eq!(boundary_faces(&[vec![0, 1, 2]]).len(), 3);
        assert_eq!(boundary_faces(&[vec![0, 1, 2], vec![1, 2, 3]]).len(), 4);
    }

    // A ridge of the cell lies on its boundary iff some coordinate misses one
    // of the values 1, 2, 3 on all of its vertices.
    #[test]
    fn boundary_ridges_lie_on_the_cell_boundary() {
        for n in 1..=3 {
            let facets = triangle_product_complex(n).unwrap();
            let on_boundary = |ridge: &[u32]| {
                (0..n).any(|k| {
                    let vals: HashSet<u8> = ridge
                        .iter()
                        .map(|&v| GridVertex::from_id(v, n).0[k])
                        .collect();
                    vals.len() < 3
                })
            };
            let boundary = boundary_faces(&facets);
            assert!(boundary.iter().all(|(r, _)| on_boundary(r)));
            let mut all: HashSet<Vec<u32>> = HashSet::new();
            for f in &facets {
                for k in 0..f.len() {
                    let mut r = f.clone();
                    r.remove(k);
                    all.insert(r);
                }
            }
            let geometric = all.iter().filter(|r| on_boundary(r)).count();
            assert_eq!(geometric, boundary.len());
        }
    }

    #[test]
    fn small_sphere_products() {
        let expected: [&[u64]; 3] = [
            &[3, 3, 2],
            &[9, 27, 58, 60, 24],
            &[27, 189, 926, 2460, 3504, 2520, 720],
        ];
        for n in 1..=3 {
            let sp = sphere_product(n).unwrap();
            let c = sp.complex();
            assert_eq!(c.facet_count(), factorial(2 * n));
            assert!(c.is_identity_glued());
            assert_eq!(c.glued_slot_count(), c.facet_count() * (2 * n + 1));
            let f = c.f_vector().unwrap();
            assert_eq!(f.as_slice(), expected[n - 1]);
            assert_eq!(f.euler_characteristic(), 1 << n);
        }
    }

    #[test]
    fn strategies_agree() {
        let a = sphere_product_with(3, Strategy::Sequential).unwrap();
        let b = sphere_product_with(3, Strategy::default()).unwrap();
        assert_eq!(a.complex(), b.complex());
    }

    #[test]
    fn global_ids_split() {
        let sp = sphere_product(2).unwrap();
        assert_eq!(sp.paths_per_cell(), 6);
        assert_eq!(sp.cell_count(), 4);
        for g in 0..24 {
            let (p, c) = sp.split(g);
            assert_eq!(sp.global_id(p, c), g);
        }
    }

    #[test]
    fn too_large_is_refused() {
        assert!(matches!(sphere_product(5), Err(Error::CapacityExceeded(_))));
        assert!(sphere_product(0).is_err());
    }
}
