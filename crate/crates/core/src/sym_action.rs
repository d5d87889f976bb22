//! The coordinate-permuting action of `Sym(n)` on `X^n`, facet orbits, and
//! goodness checks.
//!
//! A permutation `p` acts on grid vertices by `v ↦ w` with `w[k] = v[p(k)]`.
//! On facets the action moves axis `a` to axis `p(a)`, for the path and for
//! the cell word alike; this is the vertex map of `p⁻¹`, which makes the facet
//! action a left action: `(p ∘ q)·f = p·(q·f)`.

use std::collections::{BTreeMap, HashMap};

use crate::complex::{FaceId, FacePoset, FaceRef, GluedComplex, LabelPerm};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::staircase::{GridVertex, MonotonePath, SphereProduct};

/// A permutation of `{0, ..., n-1}` as an image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x as usize >= images.len() || seen[x as usize] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[x as usize] = true;
        }
        Ok(Perm(images))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        Perm(out)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Self {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    /// All of `Sym(n)` in lexicographic order of image tables.
    pub fn all(n: usize) -> Vec<Perm> {
        fn rec(n: usize, cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm(cur.clone()));
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    cur.push(x as u8);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}

/// Coordinate `k` of the image is coordinate `p(k)` of `v`.
pub fn perm_on_vertex(p: &Perm, v: &GridVertex) -> GridVertex {
    GridVertex((0..v.n()).map(|k| v.0[p.apply(k)]).collect())
}

/// Image of a facet of `X^n` under `p`.
pub fn perm_on_facet(sp: &SphereProduct, p: &Perm, facet: usize) -> Result<usize> {
    let count = sp.complex().facet_count();
    if facet >= count {
        return Err(Error::InvalidFacet { id: facet, count });
    }
    let n = sp.n();
    if p.n() != n {
        return Err(Error::InvalidArgument(format!(
            "permutation of {} points acting on X^{n}",
            p.n()
        )));
    }
    let (path, cell) = sp.split(facet);
    let inv = p.inverse();
    // image vertex set, ordered by grid distance
    let mut verts: Vec<GridVertex> = sp
        .facet_vertices(facet)
        .iter()
        .map(|&id| perm_on_vertex(&inv, &GridVertex::from_id(id, n)))
        .collect();
    verts.sort_by_key(|v| v.distance());
    let mut axes = Vec::with_capacity(2 * n);
    for w in verts.windows(2) {
        let diff: Vec<usize> = (0..n).filter(|&k| w[0].0[k] != w[1].0[k]).collect();
        if diff.len() != 1 || w[1].0[diff[0]] != w[0].0[diff[0]] + 1 {
            return Err(Error::ConstructionInconsistency(format!(
                "image of facet {facet} is not a monotone path"
            )));
        }
        axes.push(diff[0] as u8);
    }
    let image_path = sp
        .path_index(&MonotonePath::new(axes, n)?)
        .ok_or_else(|| Error::ConstructionInconsistency("image path not found".into()))?;
    let mut image_cell = 0usize;
    for a in 0..n {
        if cell & (1 << a) != 0 {
            image_cell |= 1 << p.apply(a);
        }
    }
    debug_assert_eq!(path_axis_image(sp, path, p), image_path);
    Ok(sp.global_id(image_path, image_cell))
}

fn path_axis_image(sp: &SphereProduct, path: usize, p: &Perm) -> usize {
    let axes = sp.paths()[path]
        .axes()
        .iter()
        .map(|&a| p.apply(a as usize) as u8)
        .collect();
    sp.path_index(&MonotonePath::new(axes, sp.n()).unwrap())
        .unwrap()
}

/// A partition of facets into orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTable {
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
}

impl OrbitTable {
    /// Validates that `orbits` partition `0..facet_count`. The first member of
    /// each orbit is its representative; order is kept as given.
    pub fn new(orbits: Vec<Vec<usize>>, facet_count: usize) -> Result<Self> {
        let mut orbit_of = vec![usize::MAX; facet_count];
        for (k, o) in orbits.iter().enumerate() {
            if o.is_empty() {
                return Err(Error::InvalidOrbits(format!("orbit {k} is empty")));
            }
            for &f in o {
                if f >= facet_count {
                    return Err(Error::InvalidOrbits(format!("facet {f} out of range")));
                }
                if orbit_of[f] != usize::MAX {
                    return Err(Error::InvalidOrbits(format!("facet {f} in two orbits")));
                }
                orbit_of[f] = k;
            }
        }
        if let Some(f) = orbit_of.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidOrbits(format!("facet {f} in no orbit")));
        }
        Ok(OrbitTable { orbits, orbit_of })
    }

    /// Singleton orbits.
    pub fn trivial(facet_count: usize) -> Self {
        OrbitTable {
            orbits: (0..facet_count).map(|f| vec![f]).collect(),
            orbit_of: (0..facet_count).collect(),
        }
    }

    /// Members sorted, orbits sorted by their member lists.
    pub fn canonical(mut self) -> Self {
        for o in &mut self.orbits {
            o.sort_unstable();
        }
        self.orbits.sort();
        let n = self.orbit_of.len();
        OrbitTable::new(self.orbits, n).expect("reordering keeps a partition")
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit(&self, k: usize) -> &[usize] {
        &self.orbits[k]
    }

    pub fn representative(&self, k: usize) -> usize {
        self.orbits[k][0]
    }

    pub fn orbit_of(&self, facet: usize) -> usize {
        self.orbit_of[facet]
    }

    pub fn facet_count(&self) -> usize {
        self.orbit_of.len()
    }

    /// Lines `orbit <k>: id id ...`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, o) in self.orbits.iter().enumerate() {
            let ids: Vec<String> = o.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("orbit {k}: {}\n", ids.join(" ")));
        }
        out
    }
}

/// Largest `n` for orbit enumeration.
pub const MAX_ORBIT_N: usize = 4;

/// `Sym(n)`-orbits of the facets of `X^n`; every orbit must have `n!` members.
pub fn orbits(sp: &SphereProduct) -> Result<OrbitTable> {
    orbits_with(sp, Strategy::default())
}

pub fn orbits_with(sp: &SphereProduct, strategy: Strategy) -> Result<OrbitTable> {
    let n = sp.n();
    if n > MAX_ORBIT_N {
        return Err(Error::CapacityExceeded(format!("orbits for n = {n}")));
    }
    let group = Perm::all(n);
    let count = sp.complex().facet_count();
    let images: Vec<Result<Vec<usize>>> = strategy.map_range(count, |f| {
        group.iter().map(|p| perm_on_facet(sp, p, f)).collect()
    });
    let mut orbits = Vec::new();
    let mut seen = vec![false; count];
    for (f, img) in images.into_iter().enumerate() {
        let mut orbit = img?;
        if seen[f] {
            continue;
        }
        orbit.sort_unstable();
        orbit.dedup();
        if orbit.len() != group.len() {
            return Err(Error::ConstructionInconsistency(format!(
                "orbit of facet {f} has {} elements, expected {}",
                orbit.len(),
                group.len()
            )));
        }
        for &g in &orbit {
            if seen[g] {
                return Err(Error::ConstructionInconsistency(format!(
                    "facet {g} reached from two orbits"
                )));
            }
            seen[g] = true;
        }
        orbits.push(orbit);
    }
    Ok(OrbitTable::new(orbits, count)?.canonical())
}

/// Grid vertex of every vertex class of `X^n`, checked consistent across
/// all members of each class.
pub fn vertex_grid_ids(sp: &SphereProduct, poset: &FacePoset) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(poset.class_count(0));
    for v in poset.ids(0) {
        let mut grid = None;
        for m in poset.members(v) {
            let label = m.mask.trailing_zeros() as usize;
            let id = sp.facet_vertices(m.facet as usize)[label];
            match grid {
                None => grid = Some(id),
                Some(g) if g != id => {
                    return Err(Error::ConstructionInconsistency(format!(
                        "vertex class {} spans grid vertices {g} and {id}",
                        v.index
                    )))
                }
                _ => {}
            }
        }
        out.push(grid.unwrap());
    }
    Ok(out)
}

/// `Sym(n)`-orbit label of each vertex class: vertices in one orbit have the
/// same multiset of coordinates.
pub fn vertex_orbit_labels(sp: &SphereProduct, poset: &FacePoset) -> Result<Vec<usize>> {
    let n = sp.n();
    let grid = vertex_grid_ids(sp, poset)?;
    let mut ids: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let keys: Vec<Vec<u8>> = grid
        .iter()
        .map(|&g| {
            let mut c = GridVertex::from_id(g, n).0;
            c.sort_unstable();
            c
        })
        .collect();
    for k in &keys {
        let next = ids.len();
        ids.entry(k.clone()).or_insert(next);
    }
    Ok(keys.iter().map(|k| ids[k]).collect())
}

/// An edge whose endpoints share an orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoodnessWitness {
    pub edge: FaceId,
    pub a: usize,
    pub b: usize,
    pub orbit: usize,
}

/// Good iff no edge joins two vertices with the same orbit label.
pub fn check_good_action(
    poset: &FacePoset,
    vertex_orbit: &[usize],
) -> std::result::Result<(), GoodnessWitness> {
    assert_eq!(
        vertex_orbit.len(),
        poset.class_count(0),
        "one orbit label per vertex class"
    );
    if poset.dim() == 0 {
        return Ok(());
    }
    for e in poset.ids(1) {
        let vs = poset.vertices_of(e);
        if vertex_orbit[vs[0]] == vertex_orbit[vs[1]] {
            return Err(GoodnessWitness {
                edge: e,
                a: vs[0],
                b: vs[1],
                orbit: vertex_orbit[vs[0]],
            });
        }
    }
    Ok(())
}

/// One group element acting on a complex: a facet map and, per facet, the
/// label map to its image (`None` means labels are preserved).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetAction {
    pub facet_map: Vec<usize>,
    pub label_maps: Option<Vec<LabelPerm>>,
}

impl FacetAction {
    fn image(&self, face: FaceRef) -> FaceRef {
        let f = face.facet as usize;
        FaceRef {
            facet: self.facet_map[f] as u32,
            mask: match &self.label_maps {
                None => face.mask,
                Some(maps) => maps[f].apply_mask(face.mask),
            },
        }
    }
}

/// The `Sym(n)` action on `X^n` as facet maps; labels are preserved because
/// grid distance is invariant.
pub fn sym_facet_actions(sp: &SphereProduct) -> Result<Vec<FacetAction>> {
    Perm::all(sp.n())
        .iter()
        .map(|p| {
            let facet_map = (0..sp.complex().facet_count())
                .map(|f| perm_on_facet(sp, p, f))
                .collect::<Result<Vec<_>>>()?;
            Ok(FacetAction {
                facet_map,
                label_maps: None,
            })
        })
        .collect()
}

/// Cap on facets × group elements × faces for the cellwise check.
pub const CELLWISE_CAP: u128 = 50_000_000;

/// Good iff for every facet `σ` and element `g`, each cell of `σ ∩ g(σ)` is
/// fixed by `g`. Exhaustive.
pub fn check_good_action_cellwise(
    c: &GluedComplex,
    poset: &FacePoset,
    actions: &[FacetAction],
) -> Result<bool> {
    let n = c.labels();
    let work = c.facet_count() as u128 * actions.len() as u128 * (1u128 << n);
    if work > CELLWISE_CAP {
        return Err(Error::CapacityExceeded(format!(
            "cellwise goodness check needs {work} steps"
        )));
    }
    let full = ((1u32 << n) - 1) as u16;
    for g in actions {
        if g.facet_map.len() != c.facet_count() {
            return Err(Error::InvalidArgument("facet map has wrong length".into()));
        }
        for s in 0..c.facet_count() {
            let t = g.facet_map[s];
            let mut target_cells: HashMap<FaceId, ()> = HashMap::new();
            for mask in 1..=full {
                target_cells.insert(poset.face(t, mask), ());
            }
            for mask in 1..=full {
                let face = FaceRef {
                    facet: s as u32,
                    mask,
                };
                let alpha = poset.class_of(face);
                if !target_cells.contains_key(&alpha) {
                    continue;
                }
                if poset.class_of(g.image(face)) != alpha {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
