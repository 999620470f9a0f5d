//! Constructing a segment representation by peeling extreme points.
//!
//! `build(S)` takes an extreme point `a` of `S`, represents `S ∖ a`
//! recursively and puts `a` on top of the left chain. In the right chain `a`
//! must sit directly above `Y = φ(a) ∩ S ∖ a`, and every `z` above it must
//! satisfy `φ(a, z) ∩ S = {a} ∪ {w : w ≤_R z}`. The sub-representation is
//! only determined up to flipping its blocks, and each condition only looks
//! at the block holding `z`, so the orientation can be chosen block by block.

use std::collections::HashMap;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::geometry::ConvexGeometry;
use crate::properties::{check_2ex, Witness};
use crate::representation::{chain_closure, verify_representation, SegmentRepresentation};
use crate::set::ElementSet;
use crate::uniqueness::block_ranges;

/// How `a` is inserted into the right chain.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BuilderStrategy {
    /// Per-block orientation choice driven by `φ(a)` and `φ(a, z)`.
    #[default]
    Insertion,
    /// Every block orientation and every insertion position, each checked
    /// against the closures of all seeds of size at most two.
    Backtrack,
}

type Chains = (Vec<usize>, Vec<usize>);

struct Builder<'g> {
    geom: &'g ConvexGeometry,
    strategy: BuilderStrategy,
    memo: HashMap<ElementSet, Option<Chains>>,
    failure: Option<(&'static str, ElementSet)>,
}

impl<'g> Builder<'g> {
    fn fail(&mut self, stage: &'static str, subset: ElementSet) {
        self.failure.get_or_insert((stage, subset));
    }

    fn build(&mut self, s: ElementSet) -> Option<Chains> {
        if s.is_empty() {
            return Some((Vec::new(), Vec::new()));
        }
        if let Some(done) = self.memo.get(&s) {
            return done.clone();
        }
        let ex = self.geom.extreme_points(s);
        let result = match ex.len() {
            1 => {
                let a = ex.first().unwrap();
                self.build(s.without(a)).map(|(mut left, mut right)| {
                    left.push(a);
                    right.push(a);
                    (left, right)
                })
            }
            2 => {
                let (p, q) = (ex.first().unwrap(), ex.last().unwrap());
                let mut found = None;
                for a in [p, q] {
                    let Some(sub) = self.build(s.without(a)) else {
                        continue;
                    };
                    found = match self.strategy {
                        BuilderStrategy::Insertion => self.insert_by_blocks(s, a, &sub),
                        BuilderStrategy::Backtrack => self.insert_by_search(s, a, &sub),
                    };
                    if found.is_some() {
                        break;
                    }
                }
                if found.is_none() {
                    self.fail("insertion", s);
                }
                found
            }
            0 => {
                self.fail("no extreme point", s);
                None
            }
            _ => {
                self.fail("more than two extreme points", s);
                None
            }
        };
        self.memo.insert(s, result.clone());
        result
    }

    fn insert_by_blocks(&mut self, s: ElementSet, a: usize, sub: &Chains) -> Option<Chains> {
        let (l1, r1) = sub;
        let rest = s.without(a);
        let below = self
            .geom
            .closure(ElementSet::singleton(a))
            .intersection(rest);
        let mut with_a = vec![ElementSet::empty(); self.geom.n()];
        for z in rest.difference(below).iter() {
            with_a[z] = self.geom.closure(ElementSet::pair(a, z)).intersection(s);
        }
        let fits = |start: usize, before: ElementSet, chain: &[usize]| {
            let mut prefix = before;
            chain.iter().enumerate().all(|(i, &e)| {
                prefix.insert(e);
                if start + i < below.len() {
                    below.contains(e)
                } else {
                    !below.contains(e) && with_a[e] == prefix.with(a)
                }
            })
        };

        let (mut left, mut right) = (l1.clone(), r1.clone());
        let mut before = ElementSet::empty();
        for range in block_ranges(l1, r1) {
            let keep = &r1[range.clone()];
            let flip = &l1[range.clone()];
            if fits(range.start, before, keep) {
                // current orientation
            } else if keep != flip && fits(range.start, before, flip) {
                left[range.clone()].copy_from_slice(keep);
                right[range.clone()].copy_from_slice(flip);
            } else {
                return None;
            }
            before = before.union(keep.iter().copied().collect());
        }
        left.push(a);
        right.insert(below.len(), a);
        Some((left, right))
    }

    fn insert_by_search(&mut self, s: ElementSet, a: usize, sub: &Chains) -> Option<Chains> {
        let (l1, r1) = sub;
        let switchable: Vec<Range<usize>> = block_ranges(l1, r1)
            .into_iter()
            .filter(|r| l1[r.clone()] != r1[r.clone()])
            .collect();
        let limit = self.geom.limits().blocks;
        if switchable.len() > limit {
            self.fail("too many switchable blocks", s);
            return None;
        }
        let members = s.to_vec();
        let mut seeds = vec![ElementSet::empty()];
        for (i, &u) in members.iter().enumerate() {
            seeds.push(ElementSet::singleton(u));
            for &v in &members[i + 1..] {
                seeds.push(ElementSet::pair(u, v));
            }
        }
        let expected: Vec<(ElementSet, ElementSet)> = seeds
            .into_iter()
            .map(|y| (y, self.geom.closure(y).intersection(s)))
            .collect();

        for mask in 0u64..1 << switchable.len() {
            let (mut left, mut right) = (l1.clone(), r1.clone());
            for (j, range) in switchable.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    left[range.clone()].swap_with_slice(&mut right[range.clone()]);
                }
            }
            left.push(a);
            for position in 0..=right.len() {
                let mut candidate = right.clone();
                candidate.insert(position, a);
                if expected
                    .iter()
                    .all(|&(y, cl)| chain_closure(&left, &candidate, y) == cl)
                {
                    return Some((left, candidate));
                }
            }
        }
        None
    }
}

/// Builds a representation with the default strategy.
pub fn build_representation(geom: &ConvexGeometry) -> Result<SegmentRepresentation> {
    build_representation_with(geom, BuilderStrategy::Insertion)
}

/// Builds a representation and verifies it before returning. Fails with
/// [`Error::Infeasible`] when the geometry has no representation.
pub fn build_representation_with(
    geom: &ConvexGeometry,
    strategy: BuilderStrategy,
) -> Result<SegmentRepresentation> {
    let full = geom.full();
    let mut builder = Builder {
        geom,
        strategy,
        memo: HashMap::new(),
        failure: None,
    };
    let Some((left, right)) = builder.build(full) else {
        let (stage, subset) = builder.failure.unwrap_or(("insertion", full));
        return Err(Error::Infeasible { stage, subset });
    };
    let rep = SegmentRepresentation::from_sequences(left, right)?;
    // pair verification is conclusive only under 2-Caratheodory
    if let Some(Witness::TwoEx { triple }) = check_2ex(geom).witness {
        return Err(Error::Infeasible {
            stage: "2Ex",
            subset: triple.into_iter().collect(),
        });
    }
    match verify_representation(geom, &rep)?.mismatch() {
        None => Ok(rep),
        Some(m) => Err(Error::Infeasible {
            stage: "verification",
            subset: m.seed,
        }),
    }
}
