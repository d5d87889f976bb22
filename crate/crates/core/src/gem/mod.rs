//! Graph encodings: edge-coloured dual graphs of identity-glued complexes.
//!
//! Text format, one block per colour:
//!
//! ```text
//! Colour 0:
//! ((0,8),(1,7),(2,6))
//!
//! Colour 1:
//! ...
//! ```
//!
//! Node ids are 0-based. The reader accepts any whitespace and line wrapping,
//! with or without the outer parentheses and the commas between pairs.

mod canon;
mod listings;

pub use canon::{
    canonical_code, canonical_code_with, canonical_labelling, find_isomorphism, CanonOptions,
};
pub use listings::{
    automorphism_violation, data, expand_representatives, listing_cp2, listing_cp3, listing_cp4,
    listing_s2xs2, parse_arc_blocks, parse_cycles, verify_automorphism, ArcBlock, AutomorphismKind,
    AutomorphismViolation, GraphAutomorphismData, RepresentativeExpansion,
};

use std::fmt::Write;

use crate::complex::{GluedComplex, Gluing, LabelPerm};
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// Nodes `0..node_count`; each colour class is a partial matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredGraph {
    node_count: usize,
    colours: usize,
    adj: Vec<u32>,
}

impl ColouredGraph {
    pub fn new(node_count: usize, colours: usize) -> Self {
        ColouredGraph {
            node_count,
            colours,
            adj: vec![NONE; node_count * colours],
        }
    }

    pub fn from_arcs(node_count: usize, arcs: &[Vec<(u32, u32)>]) -> Result<Self> {
        let mut g = ColouredGraph::new(node_count, arcs.len());
        for (c, list) in arcs.iter().enumerate() {
            for &(a, b) in list {
                g.add_arc(c, a, b)?;
            }
        }
        Ok(g)
    }

    pub fn add_arc(&mut self, colour: usize, a: u32, b: u32) -> Result<()> {
        if colour >= self.colours {
            return Err(Error::InvalidArgument(format!(
                "colour {colour} out of range"
            )));
        }
        for x in [a, b] {
            if x as usize >= self.node_count {
                return Err(Error::MatchingViolation {
                    colour,
                    node: x as usize,
                    reason: format!("node out of range (graph has {} nodes)", self.node_count),
                });
            }
        }
        if a == b {
            return Err(Error::MatchingViolation {
                colour,
                node: a as usize,
                reason: "loop".into(),
            });
        }
        for x in [a, b] {
            if self.adj[x as usize * self.colours + colour] != NONE {
                return Err(Error::MatchingViolation {
                    colour,
                    node: x as usize,
                    reason: "node repeats within the colour".into(),
                });
            }
        }
        self.adj[a as usize * self.colours + colour] = b;
        self.adj[b as usize * self.colours + colour] = a;
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn colour_count(&self) -> usize {
        self.colours
    }

    #[inline]
    pub fn neighbour(&self, node: usize, colour: usize) -> Option<usize> {
        match self.adj[node * self.colours + colour] {
            NONE => None,
            x => Some(x as usize),
        }
    }

    /// Arcs of one colour as `(a, b)` with `a < b`, sorted.
    pub fn arcs(&self, colour: usize) -> Vec<(u32, u32)> {
        (0..self.node_count)
            .filter_map(|a| match self.neighbour(a, colour) {
                Some(b) if a < b => Some((a as u32, b as u32)),
                _ => None,
            })
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.adj.iter().filter(|&&x| x != NONE).count() / 2
    }

    /// First colour and node left unmatched, if any.
    pub fn unmatched(&self) -> Option<(usize, usize)> {
        let i = self.adj.iter().position(|&x| x == NONE)?;
        Some((i % self.colours, i / self.colours))
    }

    pub fn is_perfect(&self) -> bool {
        self.unmatched().is_none()
    }

    pub fn is_connected(&self) -> bool {
        if self.node_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.node_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for c in 0..self.colours {
                if let Some(w) = self.neighbour(v, c) {
                    if !seen[w] {
                        seen[w] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
        }
        count == self.node_count
    }

    /// Renames node `v` to `new_id[v]`.
    pub fn relabel(&self, new_id: &[usize]) -> Result<Self> {
        if new_id.len() != self.node_count {
            return Err(Error::InvalidArgument(
                "relabelling has wrong length".into(),
            ));
        }
        let mut seen = vec![false; self.node_count];
        for &x in new_id {
            if x >= self.node_count || seen[x] {
                return Err(Error::InvalidArgument(
                    "relabelling is not a bijection".into(),
                ));
            }
            seen[x] = true;
        }
        let mut out = ColouredGraph::new(self.node_count, self.colours);
        for v in 0..self.node_count {
            for c in 0..self.colours {
                if let Some(w) = self.neighbour(v, c) {
                    out.adj[new_id[v] * self.colours + c] = new_id[w] as u32;
                }
            }
        }
        Ok(out)
    }

    /// Colour `c` becomes colour `k - 1 - c`.
    pub fn reverse_colours(&self) -> Self {
        let k = self.colours;
        let mut out = ColouredGraph::new(self.node_count, k);
        for v in 0..self.node_count {
            for c in 0..k {
                out.adj[v * k + (k - 1 - c)] = self.adj[v * k + c];
            }
        }
        out
    }

    /// Subgraph on `nodes`, renumbered in the given order.
    pub fn induced(&self, nodes: &[usize]) -> Self {
        let mut pos = vec![NONE; self.node_count];
        for (i, &v) in nodes.iter().enumerate() {
            pos[v] = i as u32;
        }
        let mut out = ColouredGraph::new(nodes.len(), self.colours);
        for (i, &v) in nodes.iter().enumerate() {
            for c in 0..self.colours {
                if let Some(w) = self.neighbour(v, c) {
                    if pos[w] != NONE {
                        out.adj[i * self.colours + c] = pos[w];
                    }
                }
            }
        }
        out
    }
}

pub fn export_gem(g: &ColouredGraph) -> String {
    let mut out = String::new();
    for c in 0..g.colour_count() {
        if c > 0 {
            out.push('\n');
        }
        writeln!(out, "Colour {c}:").unwrap();
        out.push('(');
        for (i, (a, b)) in g.arcs(c).into_iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "({a},{b})").unwrap();
        }
        out.push_str(")\n");
    }
    out
}

/// Parses 0-based text; the node count is one more than the largest id.
pub fn import_gem(text: &str) -> Result<ColouredGraph> {
    let blocks = parse_arc_blocks(text)?;
    graph_from_blocks(&blocks, 0, None)
}

/// Builds a graph from parsed blocks, subtracting `offset` from every id.
/// Colours must be `0..k` in order.
pub(crate) fn graph_from_blocks(
    blocks: &[ArcBlock],
    offset: u32,
    node_count: Option<usize>,
) -> Result<ColouredGraph> {
    for (i, b) in blocks.iter().enumerate() {
        if b.colour != i {
            return Err(Error::parse(
                b.line,
                1,
                format!("expected colour {i}, found {}", b.colour),
            ));
        }
    }
    let mut max = None;
    for b in blocks {
        for &(x, y, line, col) in &b.arcs {
            for v in [x, y] {
                if v < offset {
                    return Err(Error::parse(
                        line,
                        col,
                        format!("node {v} below offset {offset}"),
                    ));
                }
                max = max.max(Some(v - offset));
            }
        }
    }
    let n = node_count.unwrap_or(max.map_or(0, |m| m as usize + 1));
    let mut g = ColouredGraph::new(n, blocks.len());
    for b in blocks {
        for &(x, y, _, _) in &b.arcs {
            g.add_arc(b.colour, x - offset, y - offset)?;
        }
    }
    Ok(g)
}

/// Dual graph of an identity-glued complex, colour = face label.
pub fn complex_to_gem(c: &GluedComplex) -> Result<ColouredGraph> {
    if let Some((facet, face)) = c.first_non_identity() {
        return Err(Error::NotIdentityGlued { facet, face });
    }
    let labels = c.labels();
    let mut g = ColouredGraph::new(c.facet_count(), labels);
    for f in 0..c.facet_count() {
        for i in 0..labels {
            if let Some(gl) = c.gluing(f, i) {
                if gl.facet as usize == f {
                    return Err(Error::MatchingViolation {
                        colour: i,
                        node: f,
                        reason: "loop".into(),
                    });
                }
                g.adj[f * labels + i] = gl.facet;
            }
        }
    }
    Ok(g)
}

/// Complex with one facet per node; the colour-`c` arc glues face `c`.
pub fn gem_to_complex(g: &ColouredGraph) -> Result<GluedComplex> {
    if g.colour_count() == 0 {
        return Err(Error::InvalidArgument(
            "a graph encoding needs at least one colour".into(),
        ));
    }
    let labels = g.colour_count();
    let id = LabelPerm::identity(labels);
    let table = g
        .adj
        .iter()
        .map(|&x| (x != NONE).then_some(Gluing { facet: x, perm: id }))
        .collect();
    GluedComplex::from_table(labels - 1, g.node_count(), table)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CP2_COLOUR0: &str = "Colour 0:\n((0,8),(1,7),(2,6),(3,9),(4,10),(5,11))\n";

    #[test]
    fn export_format() {
        let g = import_gem(CP2_COLOUR0).unwrap();
        assert_eq!(g.node_count(), 12);
        assert_eq!(export_gem(&g), CP2_COLOUR0);
        let empty = ColouredGraph::new(2, 2);
        assert_eq!(export_gem(&empty), "Colour 0:\n()\n\nColour 1:\n()\n");
    }

    #[test]
    fn tolerant_reader() {
        let g = import_gem("Colour 0:  \n(1,2)\n (0,3),\n\nColour 1:\n((0,1)\n(2,3))").unwrap();
        assert_eq!(g.arcs(0), vec![(0, 3), (1, 2)]);
        assert_eq!(g.arcs(1), vec![(0, 1), (2, 3)]);
        assert!(g.is_perfect());
    }

    #[test]
    fn loops_and_repeats_are_rejected() {
        assert!(matches!(
            import_gem("Colour 0:\n((3,3))"),
            Err(Error::MatchingViolation { node: 3, .. })
        ));
        assert!(matches!(
            import_gem("Colour 0:\n((0,1),(1,2))"),
            Err(Error::MatchingViolation { node: 1, .. })
        ));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match import_gem("Colour 0:\n((0,1),(2;3))") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 10)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            import_gem("Colour 1:\n((0,1))"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn two_facet_sphere() {
        let mut g = ColouredGraph::new(2, 3);
        for c in 0..3 {
            g.add_arc(c, 0, 1).unwrap();
        }
        let c = gem_to_complex(&g).unwrap();
        assert_eq!(c.f_vector().unwrap().as_slice(), &[3, 3, 2]);
        assert_eq!(complex_to_gem(&c).unwrap(), g);
    }

    #[test]
    fn relabel_and_reverse() {
        let g = import_gem("Colour 0:\n((0,1),(2,3))\nColour 1:\n((1,2),(0,3))").unwrap();
        let h = g.relabel(&[1, 2, 3, 0]).unwrap();
        assert_eq!(h.arcs(0), vec![(0, 3), (1, 2)]);
        assert_eq!(h.arcs(1), vec![(0, 1), (2, 3)]);
        let r = g.reverse_colours();
        assert_eq!(r.arcs(0), g.arcs(1));
        assert!(g.relabel(&[0, 0, 1, 2]).is_err());
        assert!(g.is_connected());
        assert_eq!(g.induced(&[0, 1]).arcs(0), vec![(0, 1)]);
    }
}
