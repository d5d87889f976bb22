//! Derived (barycentric) subdivision, explicit and by closed formula.
//!
//! The explicit subdivision numbers its facets `facet * (d+1)! + r`, where `r`
//! is the lexicographic rank of the label ordering `σ` that defines the flag
//! `{σ0} ⊂ {σ0,σ1} ⊂ ... ⊂ all labels`. Label `i` of a derived facet is the
//! barycentre of its `i`-dimensional flag member, so the output is graded and
//! identity-glued.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::complex::{is_simplicial_cell, FVector, GluedComplex, Gluing, LabelPerm};
use crate::error::{Error, Result};
use crate::exec::Strategy;

/// Default cap on explicitly constructed derived facets.
pub const DEFAULT_DERIVED_CAP: u64 = 10_000_000;

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Lexicographic rank of a permutation of `0..len`.
fn lehmer_rank(p: &[u8]) -> usize {
    let n = p.len();
    let mut rank = 0usize;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

fn all_orderings(len: usize) -> Vec<Vec<u8>> {
    crate::sym_action::Perm::all(len)
        .into_iter()
        .map(|p| p.images().to_vec())
        .collect()
}

pub fn derived_subdivision(c: &GluedComplex) -> Result<GluedComplex> {
    derived_subdivision_with(c, DEFAULT_DERIVED_CAP, Strategy::default())
}

pub fn derived_subdivision_with(
    c: &GluedComplex,
    cap: u64,
    strategy: Strategy,
) -> Result<GluedComplex> {
    let d = c.dim();
    let n = d + 1;
    let per_facet = factorial(n);
    let predicted = per_facet as u128 * c.facet_count() as u128;
    if predicted > cap as u128 {
        return Err(Error::CapacityExceeded(format!(
            "derived subdivision has {predicted} facets (cap {cap})"
        )));
    }
    let poset = c.face_poset()?;
    if let Err(w) = is_simplicial_cell(&poset) {
        return Err(Error::InvalidArgument(format!(
            "derived subdivision needs a simplicial cell complex; facet {} repeats vertex {}",
            w.facet, w.vertex
        )));
    }
    let orderings = all_orderings(n);
    let per_facet = per_facet as usize;
    let id = LabelPerm::identity(n);
    let blocks: Vec<Vec<Option<Gluing>>> = strategy.map_range(c.facet_count(), |f| {
        let mut slots = Vec::with_capacity(per_facet * n);
        for sigma in &orderings {
            for i in 0..n {
                let target = if i < d {
                    let mut tau = sigma.clone();
                    tau.swap(i, i + 1);
                    Some(f * per_facet + lehmer_rank(&tau))
                } else {
                    c.gluing(f, sigma[d] as usize).map(|g| {
                        let tau: Vec<u8> = sigma
                            .iter()
                            .map(|&x| g.perm.apply(x as usize) as u8)
                            .collect();
                        g.facet as usize * per_facet + lehmer_rank(&tau)
                    })
                };
                slots.push(target.map(|t| Gluing {
                    facet: t as u32,
                    perm: id,
                }));
            }
        }
        slots
    });
    let table = blocks.into_iter().flatten().collect();
    GluedComplex::from_table(d, c.facet_count() * per_facet, table)
}

/// Number of surjections from an `a`-set onto a `b`-set.
pub fn surjection_count(a: usize, b: usize) -> BigUint {
    if b == 0 {
        return if a == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    let mut sum = BigInt::zero();
    let mut binom = BigInt::one();
    for k in 0..b {
        let term = &binom * BigInt::from(b - k).pow(a as u32);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        binom = binom * BigInt::from(b - k) / BigInt::from(k + 1);
    }
    sum.to_biguint()
        .expect("inclusion-exclusion count is non-negative")
}

/// Face numbers of the derived subdivision, exact.
pub fn derived_f_vector_big(f: &FVector) -> Vec<BigUint> {
    let d = f.dim();
    (0..=d)
        .map(|l| {
            (l..=d)
                .map(|j| surjection_count(j + 1, l + 1) * BigUint::from(f.0[j]))
                .sum()
        })
        .collect()
}

pub fn derived_f_vector(f: &FVector) -> Result<FVector> {
    derived_f_vector_big(f)
        .into_iter()
        .map(|x| {
            x.to_u64()
                .ok_or_else(|| Error::Overflow(format!("{x} does not fit in u64")))
        })
        .collect::<Result<Vec<_>>>()
        .map(FVector)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{is_simplicial_complex, simplex, two_simplex_sphere};

    #[test]
    fn surjections() {
        for a in 1..8 {
            assert_eq!(surjection_count(a, a), BigUint::from(factorial(a)));
        }
        assert_eq!(surjection_count(3, 2), BigUint::from(6u32));
        assert_eq!(surjection_count(2, 3), BigUint::zero());
        assert_eq!(surjection_count(4, 1), BigUint::one());
    }

    #[test]
    fn surjections_match_enumeration() {
        for a in 1..=6usize {
            for b in 1..=6usize {
                let mut count = 0u64;
                let total = b.pow(a as u32);
                for code in 0..total {
                    let mut hit = vec![false; b];
                    let mut x = code;
                    for _ in 0..a {
                        hit[x % b] = true;
                        x /= b;
                    }
                    count += hit.iter().all(|&h| h) as u64;
                }
                assert_eq!(surjection_count(a, b), BigUint::from(count), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn lehmer_ranks_are_lexicographic() {
        for (r, p) in all_orderings(4).iter().enumerate() {
            assert_eq!(lehmer_rank(p), r);
        }
    }

    #[test]
    fn derived_triangle() {
        let d = derived_subdivision(&simplex(2).unwrap()).unwrap();
        assert_eq!(d.facet_count(), 6);
        assert_eq!(d.f_vector().unwrap().0, vec![7, 12, 6]);
        assert_eq!(
            derived_f_vector(&FVector(vec![3, 3, 1])).unwrap().0,
            vec![7, 12, 6]
        );
        assert!(is_simplicial_complex(&d.face_poset().unwrap()).is_ok());
    }

    #[test]
    fn derived_simplex_facet_count() {
        for dim in 0..=4 {
            let d = derived_subdivision(&simplex(dim).unwrap()).unwrap();
            assert_eq!(d.facet_count() as u64, factorial(dim + 1));
        }
    }

    #[test]
    fn derived_sphere_matches_formula() {
        let s = two_simplex_sphere(2).unwrap();
        let d = derived_subdivision(&s).unwrap();
        assert_eq!(
            d.f_vector().unwrap(),
            derived_f_vector(&s.f_vector().unwrap()).unwrap()
        );
        assert_eq!(d.f_vector().unwrap().0, vec![8, 18, 12]);
    }

    #[test]
    fn cap_is_enforced() {
        let s = two_simplex_sphere(3).unwrap();
        assert!(matches!(
            derived_subdivision_with(&s, 10, Strategy::Sequential),
            Err(Error::CapacityExceeded(_))
        ));
    }
}
