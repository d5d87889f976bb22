use std::collections::HashMap;

use crate::complex::{FaceId, FacePoset, GluedComplex};

/// Two labels of one facet that land on the same vertex class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularityWitness {
    pub facet: usize,
    pub labels: (usize, usize),
    pub vertex: usize,
}

/// `Ok(())` iff every facet's `d + 1` vertex classes are pairwise distinct.
pub fn is_simplicial_cell(poset: &FacePoset) -> Result<(), RegularityWitness> {
    let n = poset.dim() + 1;
    let mut seen = Vec::with_capacity(n);
    for f in 0..poset.facet_count() {
        seen.clear();
        for a in 0..n {
            let v = poset.vertex(f, a);
            if let Some(b) = seen.iter().position(|&w| w == v) {
                return Err(RegularityWitness {
                    facet: f,
                    labels: (b, a),
                    vertex: v,
                });
            }
            seen.push(v);
        }
    }
    Ok(())
}

/// `Ok(())` iff every face class is determined by its vertex set (a genuine
/// simplicial complex); otherwise two classes with a common vertex set.
pub fn is_simplicial_complex(poset: &FacePoset) -> Result<(), (FaceId, FaceId)> {
    if let Err(w) = is_simplicial_cell(poset) {
        let f = FaceId {
            dim: poset.dim(),
            index: w.facet,
        };
        return Err((f, f));
    }
    for k in 1..=poset.dim() {
        let mut by_vertices: HashMap<Vec<usize>, FaceId> = HashMap::new();
        for id in poset.ids(k) {
            let mut vs = poset.vertices_of(id);
            vs.sort_unstable();
            if let Some(&other) = by_vertices.get(&vs) {
                return Err((other, id));
            }
            by_vertices.insert(vs, id);
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PseudomanifoldWitness {
    FreeRidge { facet: usize, face: usize },
    Disconnected { unreached_facet: usize },
}

/// Closed pseudomanifold: no free ridge and a connected dual graph.
pub fn is_closed_pseudomanifold(c: &GluedComplex) -> Result<(), PseudomanifoldWitness> {
    for f in 0..c.facet_count() {
        for i in 0..c.labels() {
            if c.gluing(f, i).is_none() {
                return Err(PseudomanifoldWitness::FreeRidge { facet: f, face: i });
            }
        }
    }
    match first_unreached(c) {
        Some(f) => Err(PseudomanifoldWitness::Disconnected { unreached_facet: f }),
        None => Ok(()),
    }
}

fn first_unreached(c: &GluedComplex) -> Option<usize> {
    if c.facet_count() == 0 {
        return None;
    }
    let mut seen = vec![false; c.facet_count()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(f) = stack.pop() {
        for i in 0..c.labels() {
            if let Some(g) = c.gluing(f, i) {
                let g = g.facet as usize;
                if !seen[g] {
                    seen[g] = true;
                    stack.push(g);
                }
            }
        }
    }
    seen.iter().position(|s| !s)
}

/// Facets glued to themselves along two distinct faces: `(facet, face, other_face)`.
pub fn self_gluings(c: &GluedComplex) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for f in 0..c.facet_count() {
        for i in 0..c.labels() {
            if let Some(g) = c.gluing(f, i) {
                let j = g.perm.apply(i);
                if g.facet as usize == f && i < j {
                    out.push((f, i, j));
                }
            }
        }
    }
    out
}

/// One glued ridge: face `face_a` of facet `a` meets face `face_b` of `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DualArc {
    pub a: usize,
    pub face_a: usize,
    pub b: usize,
    pub face_b: usize,
}

/// Dual multigraph: one node per facet, one arc per glued ridge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub node_count: usize,
    pub arcs: Vec<DualArc>,
}

impl DualGraph {
    pub fn degree(&self, node: usize) -> usize {
        self.arcs
            .iter()
            .map(|e| (e.a == node) as usize + (e.b == node) as usize)
            .sum()
    }

    /// Induced subgraph on `nodes`, renumbered in the given order.
    pub fn restrict(&self, nodes: &[usize]) -> DualGraph {
        let index: HashMap<usize, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let arcs = self
            .arcs
            .iter()
            .filter_map(|e| {
                Some(DualArc {
                    a: *index.get(&e.a)?,
                    face_a: e.face_a,
                    b: *index.get(&e.b)?,
                    face_b: e.face_b,
                })
            })
            .collect();
        DualGraph {
            node_count: nodes.len(),
            arcs,
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.node_count == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.node_count];
        for e in &self.arcs {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        let mut seen = vec![false; self.node_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

pub fn dual_graph(c: &GluedComplex) -> DualGraph {
    let mut arcs = Vec::new();
    for f in 0..c.facet_count() {
        for i in 0..c.labels() {
            if let Some(g) = c.gluing(f, i) {
                let arc = DualArc {
                    a: f,
                    face_a: i,
                    b: g.facet as usize,
                    face_b: g.perm.apply(i),
                };
                if (arc.a, arc.face_a) <= (arc.b, arc.face_b) {
                    arcs.push(arc);
                }
            }
        }
    }
    DualGraph {
        node_count: c.facet_count(),
        arcs,
    }
}
