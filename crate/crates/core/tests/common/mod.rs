// Shared oracles and property bodies for the integration suites.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cellproj::complex::{read_gcx, two_simplex_sphere, write_gcx};
use cellproj::derived::derived_subdivision;
use cellproj::gem::{
    canonical_code, complex_to_gem, export_gem, find_isomorphism, gem_to_complex, import_gem,
    ColouredGraph,
};
use cellproj::homology::{homology, HomologyResult};
use cellproj::quotient::{cpn_complex, cross_polytope_boundary, quotient_complex, rpn_complex};
use cellproj::staircase::sphere_product;
use cellproj::sym_action::{orbits, OrbitTable};
use cellproj::{GluedComplex, LabelPerm, Strategy};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A complex from explicit vertex lists. Label `i` of a facet is its `i`-th
/// smallest vertex; ridges with equal vertex sets are glued.
pub fn from_simplices(dim: usize, facets: &[Vec<u32>]) -> GluedComplex {
    let facets: Vec<Vec<u32>> = facets
        .iter()
        .map(|f| {
            let mut f = f.clone();
            f.sort_unstable();
            assert_eq!(f.len(), dim + 1);
            f
        })
        .collect();
    let mut ridges: HashMap<Vec<u32>, Vec<(usize, usize)>> = HashMap::new();
    for (fi, f) in facets.iter().enumerate() {
        for i in 0..=dim {
            let mut r = f.clone();
            r.remove(i);
            ridges.entry(r).or_default().push((fi, i));
        }
    }
    let mut c = GluedComplex::new(dim, facets.len()).unwrap();
    for slots in ridges.values() {
        assert!(slots.len() <= 2, "ridge in more than two facets");
        if let [(a, i), (b, j)] = slots[..] {
            // labels of a to labels of b through the shared vertices
            let images: Vec<usize> = (0..=dim)
                .map(|k| {
                    if k == i {
                        j
                    } else {
                        facets[b].iter().position(|v| *v == facets[a][k]).unwrap()
                    }
                })
                .collect();
            c.glue(a, i, b, LabelPerm::from_images(&images).unwrap())
                .unwrap();
        }
    }
    c
}

/// The six-vertex projective plane: the hemi-icosahedron.
pub fn rp2_six_vertex() -> GluedComplex {
    let t = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 6, 2],
        [2, 3, 5],
        [3, 4, 6],
        [4, 5, 2],
        [5, 6, 3],
        [6, 2, 4],
    ];
    from_simplices(2, &t.iter().map(|f| f.to_vec()).collect::<Vec<_>>())
}

/// The five small fixtures: the two-triangle sphere, `T_1`, `T_2`, `RP^2`
/// and the octahedron.
pub fn fixtures() -> &'static [(&'static str, GluedComplex)] {
    static F: OnceLock<Vec<(&'static str, GluedComplex)>> = OnceLock::new();
    F.get_or_init(|| {
        vec![
            ("two-triangle sphere", two_simplex_sphere(2).unwrap()),
            ("T_1", cpn_complex(1).unwrap().into_complex()),
            ("T_2", cpn_complex(2).unwrap().into_complex()),
            ("RP^2", rpn_complex(2).unwrap().into_complex()),
            ("octahedron", cross_polytope_boundary(2).unwrap()),
        ]
    })
}

fn fixture_homology() -> &'static [HomologyResult] {
    static H: OnceLock<Vec<HomologyResult>> = OnceLock::new();
    H.get_or_init(|| {
        fixtures()
            .iter()
            .map(|(_, c)| homology(c).unwrap())
            .collect()
    })
}

pub fn gem_of(c: &GluedComplex) -> ColouredGraph {
    complex_to_gem(c).unwrap()
}

/// GEMs of `T_2`, `X^2` and `T_3`.
pub fn code_fixtures() -> &'static [(&'static str, ColouredGraph)] {
    static G: OnceLock<Vec<(&'static str, ColouredGraph)>> = OnceLock::new();
    G.get_or_init(|| {
        vec![
            ("T_2", gem_of(cpn_complex(2).unwrap().complex())),
            ("X^2", gem_of(sphere_product(2).unwrap().complex())),
            ("T_3", gem_of(cpn_complex(3).unwrap().complex())),
        ]
    })
}

pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Random gluings with arbitrary label bijections; conflicting requests are
/// refused by `glue` and skipped.
pub fn random_complex(rng: &mut ChaCha8Rng) -> GluedComplex {
    let dim = rng.gen_range(1..=4);
    let facets = rng.gen_range(1..=12);
    let mut c = GluedComplex::new(dim, facets).unwrap();
    for _ in 0..rng.gen_range(0..=facets * (dim + 1)) {
        let a = rng.gen_range(0..facets);
        let b = rng.gen_range(0..facets);
        let i = rng.gen_range(0..=dim);
        let perm = LabelPerm::from_images(&random_perm(rng, dim + 1)).unwrap();
        let _ = c.glue(a, i, b, perm);
    }
    c
}

/// A random closed graph encoding: one random perfect matching per colour.
pub fn random_gem(rng: &mut ChaCha8Rng) -> ColouredGraph {
    let colours = rng.gen_range(2..=4);
    let nodes = 2 * rng.gen_range(1..=8);
    let mut g = ColouredGraph::new(nodes, colours);
    for c in 0..colours {
        let p = random_perm(rng, nodes);
        for pair in p.chunks(2) {
            g.add_arc(c, pair[0] as u32, pair[1] as u32).unwrap();
        }
    }
    g
}

/// Drops each arc with probability one third, leaving free faces.
pub fn thin_out(rng: &mut ChaCha8Rng, g: &ColouredGraph) -> ColouredGraph {
    let mut h = ColouredGraph::new(g.node_count(), g.colour_count());
    for c in 0..g.colour_count() {
        for (a, b) in g.arcs(c) {
            if rng.gen_range(0..3) != 0 {
                h.add_arc(c, a, b).unwrap();
            }
        }
    }
    h
}

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Every stored gluing is undone by the gluing it points to.
pub fn prop_gluing_involution(seed: u64) -> Check {
    let mut r = rng(seed);
    let c = random_complex(&mut r);
    c.validate().map_err(|e| e.to_string())?;
    for f in 0..c.facet_count() {
        for i in 0..c.labels() {
            let Some(g) = c.gluing(f, i) else { continue };
            let j = g.perm.apply(i);
            let back = c
                .gluing(g.facet as usize, j)
                .ok_or(format!("({f},{i}) -> free face"))?;
            ensure!(back.facet as usize == f, "({f},{i}) does not return");
            ensure!(back.perm.apply(j) == i, "({f},{i}) returns to another face");
            ensure!(
                back.perm.compose(&g.perm).is_identity(),
                "({f},{i}) bijection not inverted"
            );
            ensure!(
                !(g.facet as usize == f && j == i),
                "({f},{i}) glued to itself"
            );
        }
    }
    let relabelled = c
        .relabel_facets(&random_perm(&mut r, c.facet_count()))
        .map_err(|e| e.to_string())?;
    relabelled.validate().map_err(|e| e.to_string())
}

/// Alternating sum of Betti numbers equals the alternating face count.
pub fn prop_euler_betti(seed: u64) -> Check {
    let mut r = rng(seed);
    let mut g = random_gem(&mut r);
    if r.gen_bool(0.5) {
        g = thin_out(&mut r, &g);
    }
    let c = gem_to_complex(&g).map_err(|e| e.to_string())?;
    let chi = c.euler_characteristic().map_err(|e| e.to_string())?;
    let h = homology(&c).map_err(|e| e.to_string())?;
    ensure!(
        h.euler_characteristic() == chi,
        "betti {:?} vs chi {chi}",
        h.betti
    );
    Ok(())
}

/// Relabelled nodes give the same canonical code, and the isomorphism found
/// maps arcs to arcs of the same colour.
pub fn prop_code_relabel(seed: u64) -> Check {
    let mut r = rng(seed);
    let fx = code_fixtures();
    let (name, g) = &fx[r.gen_range(0..fx.len())];
    let p = random_perm(&mut r, g.node_count());
    let h = g.relabel(&p).map_err(|e| e.to_string())?;
    ensure!(
        canonical_code(g).unwrap() == canonical_code(&h).unwrap(),
        "{name}: codes differ"
    );
    let phi = find_isomorphism(g, &h, Strategy::default())
        .map_err(|e| e.to_string())?
        .ok_or(format!("{name}: no isomorphism found"))?;
    for c in 0..g.colour_count() {
        for (a, b) in g.arcs(c) {
            ensure!(
                h.neighbour(phi[a as usize], c) == Some(phi[b as usize]),
                "{name}: arc ({a},{b}) of colour {c} not preserved"
            );
        }
    }
    Ok(())
}

/// GEM and GCX text survive a write and a read unchanged.
pub fn prop_round_trips(seed: u64) -> Check {
    let mut r = rng(seed);
    let g = random_gem(&mut r);
    let back = import_gem(&export_gem(&g)).map_err(|e| e.to_string())?;
    ensure!(back == g, "GEM round trip changed the graph");
    let c = gem_to_complex(&g).map_err(|e| e.to_string())?;
    ensure!(
        complex_to_gem(&c).map_err(|e| e.to_string())? == g,
        "complex/GEM round trip changed the graph"
    );
    let c = random_complex(&mut r);
    let text = write_gcx(&c);
    let back = read_gcx(&text).map_err(|e| e.to_string())?;
    ensure!(back == c, "GCX round trip changed the complex");
    ensure!(write_gcx(&back) == text, "GCX text not stable");
    Ok(())
}

fn t2_code() -> &'static [u8] {
    static C: OnceLock<Vec<u8>> = OnceLock::new();
    C.get_or_init(|| canonical_code(&code_fixtures()[0].1).unwrap())
}

/// Any choice of orbit representatives and orbit order gives the same
/// quotient up to isomorphism.
pub fn prop_representative_choice(seed: u64) -> Check {
    let mut r = rng(seed);
    let sp = sphere_product(2).unwrap();
    let base = orbits(&sp).unwrap();
    let mut shuffled: Vec<Vec<usize>> = base.orbits().to_vec();
    for o in &mut shuffled {
        o.shuffle(&mut r);
    }
    shuffled.shuffle(&mut r);
    let table = OrbitTable::new(shuffled, base.facet_count()).map_err(|e| e.to_string())?;
    let q = quotient_complex(sp.complex(), &table).map_err(|e| e.to_string())?;
    ensure!(
        q.complex().f_vector().unwrap().0 == [6, 15, 30, 30, 12],
        "quotient f-vector {}",
        q.complex().f_vector().unwrap()
    );
    ensure!(
        canonical_code(&gem_of(q.complex())).unwrap() == t2_code(),
        "quotient not isomorphic to T_2"
    );
    Ok(())
}

/// The derived subdivision of a relabelled fixture has the fixture's homology.
pub fn prop_subdivision_homology(seed: u64) -> Check {
    let mut r = rng(seed);
    let k = r.gen_range(0..fixtures().len());
    let (name, c) = &fixtures()[k];
    let c = c
        .relabel_facets(&random_perm(&mut r, c.facet_count()))
        .unwrap();
    let d = derived_subdivision(&c).map_err(|e| e.to_string())?;
    let h = homology(&d).map_err(|e| e.to_string())?;
    ensure!(
        h == fixture_homology()[k],
        "{name}: {h:?} vs {:?}",
        fixture_homology()[k]
    );
    Ok(())
}

pub type Property = fn(u64) -> Check;

pub const PROPERTIES: [(&str, Property); 6] = [
    ("gluing involution", prop_gluing_involution),
    (
        "euler characteristic equals alternating betti sum",
        prop_euler_betti,
    ),
    ("canonical code relabelling invariance", prop_code_relabel),
    ("export/import round trips", prop_round_trips),
    (
        "quotient independent of representatives",
        prop_representative_choice,
    ),
    (
        "homology invariant under derived subdivision",
        prop_subdivision_homology,
    ),
];
