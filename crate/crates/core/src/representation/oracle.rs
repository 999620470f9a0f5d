//! Exhaustive search for segment representations.
//!
//! Every prefix of a representing chain is closed, so candidate chains are
//! the maximal chains of closed sets. A pair of chains represents the
//! geometry when all prefix intersections are closed and together they
//! produce every closed set.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::geometry::{ConvexGeometry, Limits};
use crate::representation::SegmentRepresentation;
use crate::set::ElementSet;

/// Outcome of [`brute_force_cdim2`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruteForce {
    pub cdim2: bool,
    /// Every representation, canonical and sorted.
    pub representations: Vec<SegmentRepresentation>,
}

fn maximal_chains(n: usize, closed: &[bool]) -> Vec<Vec<usize>> {
    fn extend(
        n: usize,
        closed: &[bool],
        current: ElementSet,
        chain: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chain.len() == n {
            out.push(chain.clone());
            return;
        }
        for e in current.complement(n).iter() {
            let next = current.with(e);
            if closed[next.bits() as usize] {
                chain.push(e);
                extend(n, closed, next, chain, out);
                chain.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(n, closed, ElementSet::empty(), &mut Vec::new(), &mut out);
    out
}

fn prefixes(chain: &[usize]) -> Vec<ElementSet> {
    let mut acc = ElementSet::empty();
    let mut out = vec![acc];
    for &e in chain {
        acc.insert(e);
        out.push(acc);
    }
    out
}

fn represents(left: &[ElementSet], right: &[ElementSet], closed: &[bool], total: usize) -> bool {
    let mut produced: Vec<u128> = Vec::with_capacity(left.len() * right.len());
    for l in left {
        for r in right {
            let meet = l.intersection(*r);
            if !closed[meet.bits() as usize] {
                return false;
            }
            produced.push(meet.bits());
        }
    }
    produced.sort_unstable();
    produced.dedup();
    produced.len() == total
}

/// Tries every unordered pair of chains. Guarded by
/// [`Limits::brute_force`].
pub fn brute_force_cdim2(geom: &ConvexGeometry) -> Result<BruteForce> {
    let n = geom.n();
    Limits::check(geom.limits().brute_force, n)?;
    let basis = geom.basis();
    let closed: Vec<bool> = (0u128..1 << n)
        .map(|bits| {
            let s = ElementSet::from_bits(bits);
            basis.closure(s) == s
        })
        .collect();
    let total = closed.iter().filter(|&&c| c).count();
    // two chains meet in at most (n + 1)^2 distinct sets
    if total > (n + 1) * (n + 1) {
        return Ok(BruteForce {
            cdim2: false,
            representations: Vec::new(),
        });
    }
    let chains = maximal_chains(n, &closed);
    let prefix_sets: Vec<Vec<ElementSet>> = chains.iter().map(|c| prefixes(c)).collect();
    let found: BTreeSet<SegmentRepresentation> = (0..chains.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let chains = &chains;
            let prefix_sets = &prefix_sets;
            let closed = &closed;
            (i..chains.len())
                .filter(move |&j| represents(&prefix_sets[i], &prefix_sets[j], closed, total))
                .map(move |j| {
                    SegmentRepresentation::from_sequences(chains[i].clone(), chains[j].clone())
                        .expect("chains are permutations")
                })
        })
        .collect();
    let representations: Vec<SegmentRepresentation> = found.into_iter().collect();
    Ok(BruteForce {
        cdim2: !representations.is_empty(),
        representations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::ImplicationBasis;
    use crate::error::Error;
    use crate::geometry::validate_geometry;
    use crate::set::GroundSet;

    fn geom(elements: &[&str], imps: &[(&[&str], &[&str])]) -> ConvexGeometry {
        validate_geometry(ImplicationBasis::from_labels(elements, imps).unwrap()).unwrap()
    }

    #[test]
    fn un_has_exactly_one_representation() {
        let g = geom(
            &["a", "b", "c", "d"],
            &[(&["d"], &["b", "c"]), (&["a", "c"], &["b"])],
        );
        let bf = brute_force_cdim2(&g).unwrap();
        assert!(bf.cdim2);
        assert_eq!(bf.representations.len(), 1);
        assert_eq!(
            bf.representations[0].display(g.ground()),
            "(d c b a ∇ c b d a)"
        );
    }

    #[test]
    fn notsuf_has_none() {
        let g = geom(
            &["a", "b", "c", "d"],
            &[
                (&["a", "b"], &["c"]),
                (&["b", "c"], &["d"]),
                (&["a"], &["d"]),
            ],
        );
        let bf = brute_force_cdim2(&g).unwrap();
        assert!(!bf.cdim2);
        assert!(bf.representations.is_empty());
    }

    #[test]
    fn chain_geometry_is_a_single_diagonal_pair() {
        let g = geom(&["a", "b", "c"], &[(&["b"], &["a"]), (&["c"], &["a", "b"])]);
        let bf = brute_force_cdim2(&g).unwrap();
        assert_eq!(bf.representations.len(), 1);
        let rep = &bf.representations[0];
        assert_eq!(rep.left(), rep.right());
    }

    #[test]
    fn two_free_elements() {
        let g = geom(&["a", "b"], &[]);
        let bf = brute_force_cdim2(&g).unwrap();
        assert_eq!(bf.representations.len(), 1);
        assert_eq!(bf.representations[0].left().sequence(), &[0, 1]);
        assert_eq!(bf.representations[0].right().sequence(), &[1, 0]);
    }

    #[test]
    fn guard() {
        let g = validate_geometry(ImplicationBasis::free(GroundSet::numbered(9).unwrap())).unwrap();
        assert!(matches!(
            brute_force_cdim2(&g),
            Err(Error::GroundSetTooLarge { n: 9, limit: 8 })
        ));
    }
}
