//! Canonical codes for connected edge-coloured graphs.
//!
//! From a start node, a breadth-first traversal that scans colours in order
//! numbers every node; the code lists, node by node in that numbering, the
//! numbers of the colour-0, colour-1, ... neighbours (`u32::MAX` for none).
//! The canonical code is the least such code over all start nodes, so two
//! connected graphs have equal codes iff they are colour-preserving
//! isomorphic.

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::gem::{ColouredGraph, NONE};

#[derive(Debug, Clone, Copy, Default)]
pub struct CanonOptions {
    /// Apply the colour reversal `c ↦ d - c` before coding.
    pub reverse_colours: bool,
    pub strategy: Strategy,
}

pub fn canonical_code(g: &ColouredGraph) -> Result<Vec<u8>> {
    canonical_code_with(g, CanonOptions::default())
}

pub fn canonical_code_with(g: &ColouredGraph, opts: CanonOptions) -> Result<Vec<u8>> {
    let (code, _) = canonical_labelling(g, opts)?;
    Ok(code)
}

/// Canonical code and the node numbering that realises it (`labelling[v]`
/// is the canonical number of `v`). Among start nodes giving the minimal code
/// the smallest is used.
pub fn canonical_labelling(g: &ColouredGraph, opts: CanonOptions) -> Result<(Vec<u8>, Vec<usize>)> {
    let reversed;
    let g = if opts.reverse_colours {
        reversed = g.reverse_colours();
        &reversed
    } else {
        g
    };
    let n = g.node_count();
    if n == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let chunk = 16usize;
    let chunks = n.div_ceil(chunk);
    let results: Vec<Option<(Vec<u32>, usize)>> = opts.strategy.map_range(chunks, |ci| {
        let mut scratch = Scratch::new(n);
        let mut best: Option<(Vec<u32>, usize)> = None;
        for s in ci * chunk..((ci + 1) * chunk).min(n) {
            if scratch.traverse(g, s, best.as_ref().map(|b| b.0.as_slice())) {
                best = Some((scratch.code.clone(), s));
            }
        }
        best
    });
    let (code, start) = results
        .into_iter()
        .flatten()
        .min()
        .expect("at least one start node");
    let mut scratch = Scratch::new(n);
    scratch.traverse(g, start, None);
    let labelling = scratch.label.iter().map(|&x| x as usize).collect();

    let mut bytes = Vec::with_capacity(8 + 4 * code.len());
    bytes.extend_from_slice(&(n as u32).to_le_bytes());
    bytes.extend_from_slice(&(g.colour_count() as u32).to_le_bytes());
    for x in code {
        bytes.extend_from_slice(&x.to_le_bytes());
    }
    Ok((bytes, labelling))
}

/// A colour-preserving isomorphism `g → h` as a node map, if one exists.
pub fn find_isomorphism(
    g: &ColouredGraph,
    h: &ColouredGraph,
    strategy: Strategy,
) -> Result<Option<Vec<usize>>> {
    if g.node_count() != h.node_count() || g.colour_count() != h.colour_count() {
        return Ok(None);
    }
    let opts = CanonOptions {
        reverse_colours: false,
        strategy,
    };
    let (cg, lg) = canonical_labelling(g, opts)?;
    let (ch, lh) = canonical_labelling(h, opts)?;
    if cg != ch {
        return Ok(None);
    }
    let mut inv_h = vec![0usize; lh.len()];
    for (v, &l) in lh.iter().enumerate() {
        inv_h[l] = v;
    }
    Ok(Some(lg.iter().map(|&l| inv_h[l]).collect()))
}

struct Scratch {
    label: Vec<u32>,
    order: Vec<u32>,
    code: Vec<u32>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            label: vec![NONE; n],
            order: Vec::with_capacity(n),
            code: Vec::new(),
        }
    }

    /// Codes the traversal from `start`. Returns true iff the code is
    /// strictly less than `best` (or `best` is absent); stops early once it
    /// is known to be greater or equal.
    fn traverse(&mut self, g: &ColouredGraph, start: usize, best: Option<&[u32]>) -> bool {
        let k = g.colour_count();
        self.label.fill(NONE);
        self.order.clear();
        self.code.clear();
        self.label[start] = 0;
        self.order.push(start as u32);
        let mut below = best.is_none();
        let mut head = 0;
        while head < self.order.len() {
            let v = self.order[head] as usize;
            head += 1;
            for c in 0..k {
                let x = match g.neighbour(v, c) {
                    None => NONE,
                    Some(w) => {
                        if self.label[w] == NONE {
                            self.label[w] = self.order.len() as u32;
                            self.order.push(w as u32);
                        }
                        self.label[w]
                    }
                };
                if !below {
                    let y = best.unwrap()[self.code.len()];
                    if x > y {
                        return false;
                    }
                    if x < y {
                        below = true;
                    }
                }
                self.code.push(x);
            }
        }
        below
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gem::import_gem;

    fn cycle(n: u32) -> ColouredGraph {
        // a 2n-cycle alternating colours 0 and 1
        let mut g = ColouredGraph::new(2 * n as usize, 2);
        for i in 0..n {
            g.add_arc(0, 2 * i, 2 * i + 1).unwrap();
            g.add_arc(1, 2 * i + 1, (2 * i + 2) % (2 * n)).unwrap();
        }
        g
    }

    #[test]
    fn relabelled_graphs_share_codes() {
        let g = cycle(5);
        let h = g.relabel(&[3, 7, 1, 0, 9, 2, 4, 8, 6, 5]).unwrap();
        assert_eq!(canonical_code(&g).unwrap(), canonical_code(&h).unwrap());
        let phi = find_isomorphism(&g, &h, Strategy::Sequential)
            .unwrap()
            .unwrap();
        for c in 0..2 {
            for (a, b) in g.arcs(c) {
                assert_eq!(h.neighbour(phi[a as usize], c), Some(phi[b as usize]));
            }
        }
    }

    #[test]
    fn different_graphs_differ() {
        assert_ne!(
            canonical_code(&cycle(3)).unwrap(),
            canonical_code(&cycle(4)).unwrap()
        );
        // same size, colours swapped on one side only
        let a = import_gem("Colour 0:\n((0,1),(2,3))\nColour 1:\n((1,2))").unwrap();
        let b = import_gem("Colour 0:\n((1,2))\nColour 1:\n((0,1),(2,3))").unwrap();
        assert_ne!(canonical_code(&a).unwrap(), canonical_code(&b).unwrap());
        let reversed = CanonOptions {
            reverse_colours: true,
            ..Default::default()
        };
        assert_eq!(
            canonical_code(&a).unwrap(),
            canonical_code_with(&b, reversed).unwrap()
        );
        assert!(find_isomorphism(&a, &b, Strategy::Sequential)
            .unwrap()
            .is_none());
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = import_gem("Colour 0:\n((0,1),(2,3))").unwrap();
        assert!(matches!(canonical_code(&g), Err(Error::Disconnected)));
    }

    #[test]
    fn strategies_agree() {
        let g = cycle(40);
        let seq = CanonOptions {
            strategy: Strategy::Sequential,
            ..Default::default()
        };
        assert_eq!(
            canonical_code_with(&g, seq).unwrap(),
            canonical_code(&g).unwrap()
        );
    }
}
