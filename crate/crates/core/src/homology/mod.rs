//! Integer simplicial homology of graded (identity-glued) complexes.
//!
//! With identity gluings the facet labels order the vertices of every face
//! consistently, so each face class has a well-defined oriented boundary
//! `Σ (-1)^j [face without its j-th label]`.

mod snf;

pub use snf::{smith_normal_form, smith_normal_form_sparse, SmithForm, SparseMatrix};

use std::fmt;

use num_bigint::BigUint;

use crate::complex::poset::mask_labels;
use crate::complex::{FacePoset, FaceRef, GluedComplex};
use crate::error::{Error, Result};
use crate::exec::Strategy;

/// Boundary matrices `∂_k : C_k → C_{k-1}` for `k = 1..=d`, bases ordered by
/// canonical representative.
#[derive(Debug, Clone)]
pub struct ChainComplexZ {
    ranks: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplexZ {
    pub fn dim(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Rank of the chain group `C_k`.
    pub fn chain_rank(&self, k: usize) -> usize {
        self.ranks[k]
    }

    /// `∂_k` for `1 <= k <= d`.
    pub fn boundary(&self, k: usize) -> &SparseMatrix {
        &self.boundaries[k - 1]
    }

    /// `∂_{k-1} ∘ ∂_k = 0` for every `k`, checked exactly.
    pub fn is_chain_complex(&self) -> bool {
        (2..=self.dim()).all(|k| {
            self.boundary(k - 1)
                .checked_mul(self.boundary(k))
                .is_some_and(|m| m.is_zero())
        })
    }
}

pub fn chain_complex(c: &GluedComplex) -> Result<ChainComplexZ> {
    let poset = c.face_poset()?;
    chain_complex_from(c, &poset, Strategy::default())
}

pub fn chain_complex_from(
    c: &GluedComplex,
    poset: &FacePoset,
    strategy: Strategy,
) -> Result<ChainComplexZ> {
    if let Some((facet, face)) = c.first_non_identity() {
        return Err(Error::NotGraded { facet, face });
    }
    let d = c.dim();
    let ranks: Vec<usize> = (0..=d).map(|k| poset.class_count(k)).collect();
    let boundaries = strategy.map_range(d, |km1| {
        let k = km1 + 1;
        let columns = poset
            .ids(k)
            .map(|id| {
                let rep = poset.rep(id);
                mask_labels(rep.mask)
                    .into_iter()
                    .enumerate()
                    .map(|(j, l)| {
                        let face = poset.class_of(FaceRef {
                            facet: rep.facet,
                            mask: rep.mask & !(1 << l),
                        });
                        (face.index as u32, if j % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        SparseMatrix::from_columns(ranks[k - 1], columns)
    });
    Ok(ChainComplexZ { ranks, boundaries })
}

/// Betti numbers and torsion coefficients per dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub betti: Vec<u64>,
    pub torsion: Vec<Vec<BigUint>>,
}

impl HomologyResult {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(|t| t.is_empty())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Torsion coefficients of `H_k` as `u64`, for comparisons in tests.
    pub fn torsion_u64(&self, k: usize) -> Vec<u64> {
        self.torsion[k]
            .iter()
            .map(|t| t.to_u64_digits().first().copied().unwrap_or(0))
            .collect()
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.betti.iter().enumerate() {
            write!(f, "H_{k} = Z^{b}")?;
            for t in &self.torsion[k] {
                write!(f, " + Z/{t}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn homology(c: &GluedComplex) -> Result<HomologyResult> {
    homology_with(c, Strategy::default())
}

pub fn homology_with(c: &GluedComplex, strategy: Strategy) -> Result<HomologyResult> {
    let poset = FacePoset::build_with(c, crate::complex::PosetRoute::Auto, strategy)?;
    let cc = chain_complex_from(c, &poset, strategy)?;
    Ok(homology_of_chain_complex(&cc, strategy))
}

pub fn homology_of_chain_complex(cc: &ChainComplexZ, strategy: Strategy) -> HomologyResult {
    let d = cc.dim();
    let forms: Vec<SmithForm> =
        strategy.map_range(d, |i| smith_normal_form_sparse(cc.boundary(i + 1)));
    // rank of ∂_k, with ∂_0 = ∂_{d+1} = 0
    let rank = |k: usize| {
        if k == 0 || k > d {
            0
        } else {
            forms[k - 1].rank()
        }
    };
    let betti = (0..=d)
        .map(|k| (cc.chain_rank(k) - rank(k) - rank(k + 1)) as u64)
        .collect();
    let torsion = (0..=d)
        .map(|k| {
            if k < d {
                forms[k].torsion()
            } else {
                Vec::new()
            }
        })
        .collect();
    HomologyResult { betti, torsion }
}
