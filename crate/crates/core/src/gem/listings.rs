//! Reference graph encodings shipped with the crate, automorphism listings in
//! cycle notation, and the expansion of orbit-representative listings.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::gem::{graph_from_blocks, ColouredGraph};

pub mod data {
    pub const S2XS2_GEM: &str = include_str!("../../data/listings/s2xs2.gem");
    pub const CP2_GEM: &str = include_str!("../../data/listings/cp2.gem");
    pub const CP3_AUT_PRESERVING: &str = include_str!("../../data/listings/cp3_aut_preserving.txt");
    pub const CP3_AUT_REVERSING: &str = include_str!("../../data/listings/cp3_aut_reversing.txt");
    pub const CP3_REPRESENTATIVES: &str =
        include_str!("../../data/listings/cp3_representatives.txt");
    pub const CP4_AUT_PRESERVING: &str = include_str!("../../data/listings/cp4_aut_preserving.txt");
    pub const CP4_AUT_REVERSING: &str = include_str!("../../data/listings/cp4_aut_reversing.txt");
    pub const CP4_REPRESENTATIVES: &str =
        include_str!("../../data/listings/cp4_representatives.txt");
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Colour,
    Int(u32),
    Colon,
    LParen,
    RParen,
    Comma,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize, usize)>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let (line_no, col) = (li + 1, i + 1);
            let ch = chars[i];
            let tok = match ch {
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                ':' => Tok::Colon,
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    let v = s.parse::<u32>().map_err(|_| {
                        Error::parse(line_no, col, format!("integer {s} out of range"))
                    })?;
                    out.push((Tok::Int(v), line_no, col));
                    continue;
                }
                c if c.is_alphabetic() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_alphabetic() {
                        i += 1;
                    }
                    let word: String = chars[start..i].iter().collect();
                    if word != "Colour" && word != "Color" {
                        return Err(Error::parse(
                            line_no,
                            col,
                            format!("unexpected word {word:?}"),
                        ));
                    }
                    out.push((Tok::Colour, line_no, col));
                    continue;
                }
                c => {
                    return Err(Error::parse(
                        line_no,
                        col,
                        format!("unexpected character {c:?}"),
                    ))
                }
            };
            out.push((tok, line_no, col));
            i += 1;
        }
    }
    Ok(out)
}

/// Arcs listed under one `Colour c:` header, with their source positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcBlock {
    pub colour: usize,
    pub line: usize,
    /// `(a, b, line, column)` as written.
    pub arcs: Vec<(u32, u32, usize, usize)>,
}

/// Parses `Colour c:` blocks of `(a,b)` pairs without interpreting ids.
pub fn parse_arc_blocks(text: &str) -> Result<Vec<ArcBlock>> {
    let toks = tokenize(text)?;
    let mut blocks: Vec<ArcBlock> = Vec::new();
    let mut i = 0;
    let expect = |i: usize, want: Tok, what: &str| -> Result<()> {
        match toks.get(i) {
            Some(&(t, _, _)) if t == want => Ok(()),
            Some(&(t, l, c)) => Err(Error::parse(l, c, format!("expected {what}, found {t:?}"))),
            None => Err(eof(text, what)),
        }
    };
    while i < toks.len() {
        let (t, line, col) = toks[i];
        if t != Tok::Colour {
            return Err(Error::parse(line, col, "expected `Colour <c>:`"));
        }
        let colour = match toks.get(i + 1) {
            Some(&(Tok::Int(c), _, _)) => c as usize,
            Some(&(t, l, c)) => {
                return Err(Error::parse(
                    l,
                    c,
                    format!("expected colour number, found {t:?}"),
                ))
            }
            None => return Err(eof(text, "colour number")),
        };
        expect(i + 2, Tok::Colon, "`:`")?;
        i += 3;
        let mut block = ArcBlock {
            colour,
            line,
            arcs: Vec::new(),
        };
        let mut depth = 0;
        while i < toks.len() && toks[i].0 != Tok::Colour {
            let (t, l, c) = toks[i];
            match t {
                Tok::Comma => i += 1,
                Tok::LParen if matches!(toks.get(i + 1), Some((Tok::Int(_), _, _))) => {
                    let a = int_at(&toks, i + 1, text)?;
                    expect(i + 2, Tok::Comma, "`,`")?;
                    let b = int_at(&toks, i + 3, text)?;
                    expect(i + 4, Tok::RParen, "`)`")?;
                    block.arcs.push((a, b, l, c));
                    i += 5;
                }
                Tok::LParen if depth == 0 => {
                    depth = 1;
                    i += 1;
                }
                Tok::RParen if depth == 1 => {
                    depth = 0;
                    i += 1;
                }
                _ => return Err(Error::parse(l, c, format!("unexpected {t:?}"))),
            }
        }
        if depth != 0 {
            return Err(eof(text, "`)`"));
        }
        blocks.push(block);
    }
    Ok(blocks)
}

fn int_at(toks: &[(Tok, usize, usize)], i: usize, text: &str) -> Result<u32> {
    match toks.get(i) {
        Some(&(Tok::Int(v), _, _)) => Ok(v),
        Some(&(t, l, c)) => Err(Error::parse(l, c, format!("expected node id, found {t:?}"))),
        None => Err(eof(text, "node id")),
    }
}

fn eof(text: &str, what: &str) -> Error {
    let line = text.lines().count().max(1);
    let col = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
    Error::parse(
        line,
        col,
        format!("unexpected end of input, expected {what}"),
    )
}

/// Parses a permutation in cycle notation, e.g. `(1,106)(2,107)`, over
/// `node_count` nodes whose ids start at `offset`. Points not mentioned are
/// fixed.
pub fn parse_cycles(text: &str, node_count: usize, offset: u32) -> Result<Vec<usize>> {
    let toks = tokenize(text)?;
    let mut perm: Vec<usize> = (0..node_count).collect();
    let mut moved = vec![false; node_count];
    let mut i = 0;
    while i < toks.len() {
        let (t, l, c) = toks[i];
        if t != Tok::LParen {
            return Err(Error::parse(l, c, format!("expected `(`, found {t:?}")));
        }
        i += 1;
        let mut cycle = Vec::new();
        loop {
            let (t, l, c) = *toks.get(i).ok_or_else(|| eof(text, "cycle entry"))?;
            match t {
                Tok::Int(v) => {
                    if v < offset || (v - offset) as usize >= node_count {
                        return Err(Error::parse(
                            l,
                            c,
                            format!(
                                "point {v} outside {offset}..{}",
                                offset as usize + node_count
                            ),
                        ));
                    }
                    let x = (v - offset) as usize;
                    if moved[x] {
                        return Err(Error::parse(l, c, format!("point {v} appears twice")));
                    }
                    moved[x] = true;
                    cycle.push(x);
                    i += 1;
                    match toks.get(i) {
                        Some((Tok::Comma, _, _)) => i += 1,
                        Some((Tok::RParen, _, _)) => {
                            i += 1;
                            break;
                        }
                        Some(&(t, l, c)) => {
                            return Err(Error::parse(
                                l,
                                c,
                                format!("expected `,` or `)`, found {t:?}"),
                            ))
                        }
                        None => return Err(eof(text, "`)`")),
                    }
                }
                _ => return Err(Error::parse(l, c, format!("expected point, found {t:?}"))),
            }
        }
        for k in 0..cycle.len() {
            perm[cycle[k]] = cycle[(k + 1) % cycle.len()];
        }
    }
    Ok(perm)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AutomorphismKind {
    /// Colour `c` goes to colour `c`.
    ColourPreserving,
    /// Colour `c` goes to colour `d - c`.
    ColourReversing,
}

/// A node permutation claimed to be an automorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphAutomorphismData {
    pub perm: Vec<usize>,
    pub kind: AutomorphismKind,
}

impl GraphAutomorphismData {
    pub fn identity(node_count: usize) -> Self {
        GraphAutomorphismData {
            perm: (0..node_count).collect(),
            kind: AutomorphismKind::ColourPreserving,
        }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &GraphAutomorphismData) -> Self {
        let kind = if self.kind == other.kind {
            AutomorphismKind::ColourPreserving
        } else {
            AutomorphismKind::ColourReversing
        };
        GraphAutomorphismData {
            perm: other.perm.iter().map(|&x| self.perm[x]).collect(),
            kind,
        }
    }

    /// The same automorphism seen through the isomorphism `phi`:
    /// `phi ∘ self ∘ phi⁻¹`.
    pub fn transport(&self, phi: &[usize]) -> Self {
        let mut perm = vec![0; phi.len()];
        for (v, &pv) in phi.iter().enumerate() {
            perm[pv] = phi[self.perm[v]];
        }
        GraphAutomorphismData {
            perm,
            kind: self.kind,
        }
    }

    fn target_colour(&self, c: usize, colours: usize) -> usize {
        match self.kind {
            AutomorphismKind::ColourPreserving => c,
            AutomorphismKind::ColourReversing => colours - 1 - c,
        }
    }
}

/// Why a permutation fails to be an automorphism of order at most two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutomorphismViolation {
    WrongLength {
        expected: usize,
        found: usize,
    },
    NotAPermutation,
    /// The colour-`colour` arc at `node` is not mapped onto an arc of the
    /// expected colour.
    Arc {
        colour: usize,
        node: usize,
    },
    NotAnInvolution {
        node: usize,
    },
}

pub fn automorphism_violation(
    g: &ColouredGraph,
    a: &GraphAutomorphismData,
) -> Option<AutomorphismViolation> {
    let n = g.node_count();
    if a.perm.len() != n {
        return Some(AutomorphismViolation::WrongLength {
            expected: n,
            found: a.perm.len(),
        });
    }
    let mut seen = vec![false; n];
    for &x in &a.perm {
        if x >= n || seen[x] {
            return Some(AutomorphismViolation::NotAPermutation);
        }
        seen[x] = true;
    }
    let k = g.colour_count();
    for v in 0..n {
        for c in 0..k {
            let image = g.neighbour(a.perm[v], a.target_colour(c, k));
            if image != g.neighbour(v, c).map(|w| a.perm[w]) {
                return Some(AutomorphismViolation::Arc { colour: c, node: v });
            }
        }
    }
    (0..n)
        .find(|&v| a.perm[a.perm[v]] != v)
        .map(|node| AutomorphismViolation::NotAnInvolution { node })
}

/// True iff `a` maps arcs as its kind says and `a ∘ a` is the identity.
pub fn verify_automorphism(g: &ColouredGraph, a: &GraphAutomorphismData) -> bool {
    automorphism_violation(g, a).is_none()
}

/// A graph rebuilt from orbit representatives.
#[derive(Debug, Clone)]
pub struct RepresentativeExpansion {
    pub graph: ColouredGraph,
    /// Id of the first node in the listings (0 or 1).
    pub offset: u32,
    /// Order of the group generated by the listed automorphisms.
    pub group_order: usize,
    /// The listed automorphisms, renumbered from 0.
    pub automorphisms: Vec<GraphAutomorphismData>,
}

/// Rebuilds a graph with `colours` colours on `node_count` nodes from arcs
/// listed only up to the group generated by `automorphisms` (given in cycle
/// notation with their kinds). Offsets 1 and 0 are tried in turn; the result
/// must consist of perfect matchings on which every listed automorphism
/// validates.
pub fn expand_representatives(
    representatives: &str,
    automorphisms: &[(&str, AutomorphismKind)],
    node_count: usize,
    colours: usize,
) -> Result<RepresentativeExpansion> {
    let blocks = parse_arc_blocks(representatives)?;
    let mut failures = Vec::new();
    for offset in [1u32, 0] {
        match expand_at(&blocks, automorphisms, node_count, colours, offset) {
            Ok(e) => return Ok(e),
            Err(e) => failures.push(format!("offset {offset}: {e}")),
        }
    }
    Err(Error::InvalidArgument(format!(
        "representative listing does not expand: {}",
        failures.join("; ")
    )))
}

const MAX_GROUP_ORDER: usize = 1 << 12;

fn expand_at(
    blocks: &[ArcBlock],
    automorphisms: &[(&str, AutomorphismKind)],
    node_count: usize,
    colours: usize,
    offset: u32,
) -> Result<RepresentativeExpansion> {
    let gens = automorphisms
        .iter()
        .map(|&(text, kind)| {
            Ok(GraphAutomorphismData {
                perm: parse_cycles(text, node_count, offset)?,
                kind,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut group = vec![GraphAutomorphismData::identity(node_count)];
    let mut seen: HashSet<GraphAutomorphismData> = group.iter().cloned().collect();
    let mut head = 0;
    while head < group.len() {
        let x = group[head].clone();
        head += 1;
        for g in &gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                if group.len() >= MAX_GROUP_ORDER {
                    return Err(Error::CapacityExceeded(
                        "automorphism group too large".into(),
                    ));
                }
                group.push(y);
            }
        }
    }
    let mut arcs: Vec<HashSet<(u32, u32)>> = vec![HashSet::new(); colours];
    for block in blocks {
        let colour = block.colour;
        if colour >= colours {
            return Err(Error::parse(
                block.line,
                1,
                format!("colour {colour} out of range"),
            ));
        }
        for &(x, y, line, col) in &block.arcs {
            for v in [x, y] {
                if v < offset || (v - offset) as usize >= node_count {
                    return Err(Error::parse(line, col, format!("node {v} out of range")));
                }
            }
            let (x, y) = ((x - offset) as usize, (y - offset) as usize);
            for g in &group {
                let (a, b) = (g.perm[x] as u32, g.perm[y] as u32);
                arcs[g.target_colour(colour, colours)].insert((a.min(b), a.max(b)));
            }
        }
    }
    let mut graph = ColouredGraph::new(node_count, colours);
    for (c, set) in arcs.iter().enumerate() {
        let mut list: Vec<_> = set.iter().copied().collect();
        list.sort_unstable();
        for (a, b) in list {
            graph.add_arc(c, a, b)?;
        }
    }
    if let Some((colour, node)) = graph.unmatched() {
        return Err(Error::MatchingViolation {
            colour,
            node,
            reason: "unmatched after expansion".into(),
        });
    }
    for g in &gens {
        if let Some(v) = automorphism_violation(&graph, g) {
            return Err(Error::InvalidArgument(format!(
                "listed automorphism fails: {v:?}"
            )));
        }
    }
    Ok(RepresentativeExpansion {
        graph,
        offset,
        group_order: group.len(),
        automorphisms: gens,
    })
}

/// The reference encoding of `S^2 × S^2` (24 nodes, 5 colours).
pub fn listing_s2xs2() -> Result<ColouredGraph> {
    graph_from_blocks(&parse_arc_blocks(data::S2XS2_GEM)?, 0, None)
}

/// The reference encoding of `CP^2` (12 nodes, 5 colours).
pub fn listing_cp2() -> Result<ColouredGraph> {
    graph_from_blocks(&parse_arc_blocks(data::CP2_GEM)?, 0, None)
}

/// The reference encoding of `CP^3`, expanded from its representatives.
pub fn listing_cp3() -> Result<RepresentativeExpansion> {
    expand_representatives(
        data::CP3_REPRESENTATIVES,
        &[
            (data::CP3_AUT_PRESERVING, AutomorphismKind::ColourPreserving),
            (data::CP3_AUT_REVERSING, AutomorphismKind::ColourReversing),
        ],
        120,
        7,
    )
}

/// The reference encoding of `CP^4`, expanded from its representatives.
pub fn listing_cp4() -> Result<RepresentativeExpansion> {
    expand_representatives(
        data::CP4_REPRESENTATIVES,
        &[
            (data::CP4_AUT_PRESERVING, AutomorphismKind::ColourPreserving),
            (data::CP4_AUT_REVERSING, AutomorphismKind::ColourReversing),
        ],
        1680,
        9,
    )
}
