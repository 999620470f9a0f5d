//! Block structure of a representation and the family of all
//! representations of the same geometry.
//!
//! Reading both chains bottom-up, a block boundary falls wherever the two
//! prefixes hold the same elements. Flipping the two sub-chains of one block
//! gives another representation of the same geometry, and these flips are
//! the only freedom, so a representation with `s` switchable blocks has
//! `2^(s-1)` siblings up to exchanging the two chains.

use std::fmt::Write as _;
use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{ConvexGeometry, ExtremeReport};
use crate::representation::{verify_representation, SegmentRepresentation};
use crate::set::{ElementSet, GroundSet};

/// A maximal run of positions filled by the same elements in both chains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    /// 1-based, inclusive.
    pub start: usize,
    pub end: usize,
    pub members: ElementSet,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub switchable: bool,
}

impl Block {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn positions(&self) -> Range<usize> {
        self.start - 1..self.end
    }

    /// Whether the top `k` elements of the two sub-chains differ as sets
    /// for every `1 <= k <= len - 2`.
    pub fn has_distinct_endings(&self) -> bool {
        let t = self.len();
        (1..t.saturating_sub(1)).all(|k| {
            let top = |chain: &[usize]| chain[t - k..].iter().copied().collect::<ElementSet>();
            top(&self.left) != top(&self.right)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
}

impl BlockDecomposition {
    pub fn switchable_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.switchable).count()
    }

    /// A pair `(u, w)` with `u` in a higher block than `w` but `w ∉ φ(u)`.
    pub fn cross_block_violation(&self, geom: &ConvexGeometry) -> Option<(usize, usize)> {
        let mut below = ElementSet::empty();
        for block in &self.blocks {
            for u in block.members.iter() {
                let missing = below.difference(geom.closure(ElementSet::singleton(u)));
                if let Some(w) = missing.first() {
                    return Some((u, w));
                }
            }
            below = below.union(block.members);
        }
        None
    }

    /// One line per block, bottom to top.
    pub fn report(&self, ground: &GroundSet) -> String {
        let mut out = String::new();
        for (i, b) in self.blocks.iter().enumerate() {
            let _ = writeln!(
                out,
                "block {}: positions [{}..{}], members {}, switchable {}",
                i + 1,
                b.start,
                b.end,
                ground.format_braced(b.members),
                if b.switchable { "yes" } else { "no" }
            );
        }
        out
    }
}

/// Position ranges of the finest common partition of two chains.
pub(crate) fn block_ranges(left: &[usize], right: &[usize]) -> Vec<Range<usize>> {
    let mut ranges = Vec::new();
    let (mut l, mut r) = (ElementSet::empty(), ElementSet::empty());
    let mut start = 0;
    for (i, (&a, &b)) in left.iter().zip(right).enumerate() {
        l.insert(a);
        r.insert(b);
        if l == r {
            ranges.push(start..i + 1);
            start = i + 1;
        }
    }
    ranges
}

pub fn block_decomposition(rep: &SegmentRepresentation) -> BlockDecomposition {
    let (left, right) = (rep.left().sequence(), rep.right().sequence());
    let blocks = block_ranges(left, right)
        .into_iter()
        .map(|range| {
            let l = left[range.clone()].to_vec();
            let r = right[range.clone()].to_vec();
            Block {
                start: range.start + 1,
                end: range.end,
                members: l.iter().copied().collect(),
                switchable: l != r,
                left: l,
                right: r,
            }
        })
        .collect();
    BlockDecomposition { blocks }
}

/// Number of representations of the geometry of `rep`.
pub fn count_representations(rep: &SegmentRepresentation) -> u128 {
    match block_decomposition(rep).switchable_count() {
        0 | 1 => 1,
        s => 1u128 << (s - 1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessVerdict {
    pub unique: bool,
    pub switchable_count: usize,
    /// The only switchable block, when there is exactly one.
    pub core: Option<Block>,
    /// The core has pairwise distinct ending segments.
    pub distinct_endings: bool,
    /// Every other block has identical sub-chains.
    pub rigid_remainder: bool,
}

impl UniquenessVerdict {
    pub fn explain(&self, ground: &GroundSet) -> String {
        if !self.unique {
            return format!(
                "not unique: {} switchable blocks can be flipped independently",
                self.switchable_count
            );
        }
        match &self.core {
            None => "unique: both chains coincide, so the geometry is a chain".to_string(),
            Some(core) => {
                format!(
                "unique: only {} is switchable (ending segments {}), the rest is a single chain",
                ground.format_braced(core.members),
                if self.distinct_endings { "distinct" } else { "not distinct" }
            )
            }
        }
    }
}

pub fn is_unique(rep: &SegmentRepresentation) -> UniquenessVerdict {
    let decomposition = block_decomposition(rep);
    let s = decomposition.switchable_count();
    let core = (s == 1).then(|| {
        decomposition
            .blocks
            .iter()
            .find(|b| b.switchable)
            .cloned()
            .unwrap()
    });
    UniquenessVerdict {
        unique: s <= 1,
        switchable_count: s,
        distinct_endings: core.as_ref().is_none_or(Block::has_distinct_endings),
        rigid_remainder: s <= 1,
        core,
    }
}

/// Swaps the sub-chains of the blocks selected by `mask`.
pub fn flip_blocks(
    rep: &SegmentRepresentation,
    blocks: &[Range<usize>],
    mask: u64,
) -> SegmentRepresentation {
    let mut left = rep.left().sequence().to_vec();
    let mut right = rep.right().sequence().to_vec();
    for (j, range) in blocks.iter().enumerate() {
        if mask >> j & 1 == 1 {
            left[range.clone()].swap_with_slice(&mut right[range.clone()]);
        }
    }
    SegmentRepresentation::from_sequences(left, right).expect("flipping keeps permutations")
}

/// Every representation of the geometry of `rep`, sorted. The first
/// switchable block stays fixed since flipping all blocks only exchanges
/// the chains.
pub fn enumerate_representations(
    rep: &SegmentRepresentation,
    max_blocks: usize,
) -> Result<Vec<SegmentRepresentation>> {
    let switchable: Vec<Range<usize>> = block_decomposition(rep)
        .blocks
        .iter()
        .filter(|b| b.switchable)
        .map(Block::positions)
        .collect();
    let s = switchable.len();
    if s > max_blocks || s > 64 {
        return Err(Error::TooManyBlocks {
            s,
            limit: max_blocks.min(64),
        });
    }
    if s <= 1 {
        return Ok(vec![rep.clone()]);
    }
    let free = &switchable[1..];
    let mut all: Vec<SegmentRepresentation> = (0u64..1 << (s - 1))
        .into_par_iter()
        .map(|mask| flip_blocks(rep, free, mask))
        .collect();
    all.sort();
    all.dedup();
    Ok(all)
}

/// A representation recovered from extreme points alone, with the
/// extreme-point queries in the order they were made.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Peeling {
    pub representation: SegmentRepresentation,
    pub trace: Vec<ExtremeReport>,
}

#[derive(Clone)]
struct PeelState {
    // top-down
    left: Vec<usize>,
    right: Vec<usize>,
    left_known: ElementSet,
    right_known: ElementSet,
    trace: Vec<ExtremeReport>,
    swapped_once: bool,
}

enum PeelOutcome {
    Done(Peeling),
    Failed(ElementSet),
}

fn finish(geom: &ConvexGeometry, state: PeelState) -> Result<PeelOutcome> {
    let mut left = state.left;
    let mut right = state.right;
    left.reverse();
    right.reverse();
    let representation = SegmentRepresentation::from_sequences(left, right)?;
    Ok(if verify_representation(geom, &representation)?.agrees() {
        PeelOutcome::Done(Peeling {
            representation,
            trace: state.trace,
        })
    } else {
        PeelOutcome::Failed(geom.full())
    })
}

fn peel(geom: &ConvexGeometry, mut state: PeelState) -> Result<PeelOutcome> {
    let full = geom.full();
    let n = geom.n();
    loop {
        if state.left.len() == n && state.right.len() == n {
            return finish(geom, state);
        }
        let mut progressed = false;
        // the top of a chain on the unknown part is the extreme point that is
        // not the other chain's top there
        if state.left.len() < n {
            let rest = full.difference(state.left_known);
            if let Some(&r_top) = state.right.iter().find(|&&e| rest.contains(e)) {
                let report = ExtremeReport::compute(geom, rest);
                state.trace.push(report);
                let other = report.extreme.without(r_top);
                let top = match (report.extreme.contains(r_top), other.len()) {
                    (true, 0) => r_top,
                    (true, 1) => other.first().unwrap(),
                    _ => return Ok(PeelOutcome::Failed(rest)),
                };
                state.left.push(top);
                state.left_known.insert(top);
                progressed = true;
            }
        }
        if state.right.len() < n {
            let rest = full.difference(state.right_known);
            if let Some(&l_top) = state.left.iter().find(|&&e| rest.contains(e)) {
                let report = ExtremeReport::compute(geom, rest);
                state.trace.push(report);
                let other = report.extreme.without(l_top);
                let top = match (report.extreme.contains(l_top), other.len()) {
                    (true, 0) => l_top,
                    (true, 1) => other.first().unwrap(),
                    _ => return Ok(PeelOutcome::Failed(rest)),
                };
                state.right.push(top);
                state.right_known.insert(top);
                progressed = true;
            }
        }
        if progressed {
            continue;
        }
        // both chains have consumed the same elements
        let rest = full.difference(state.left_known);
        let report = ExtremeReport::compute(geom, rest);
        state.trace.push(report);
        match report.extreme.len() {
            1 => {
                let top = report.extreme.first().unwrap();
                state.left.push(top);
                state.right.push(top);
                state.left_known.insert(top);
                state.right_known.insert(top);
            }
            2 => {
                let (p, q) = (
                    report.extreme.first().unwrap(),
                    report.extreme.last().unwrap(),
                );
                let assign = |mut s: PeelState, l: usize, r: usize| {
                    s.left.push(l);
                    s.right.push(r);
                    s.left_known.insert(l);
                    s.right_known.insert(r);
                    s.swapped_once = true;
                    s
                };
                if !state.swapped_once {
                    // the first split only decides which chain is which
                    state = assign(state, p, q);
                    continue;
                }
                let first = peel(geom, assign(state.clone(), p, q))?;
                let second = peel(geom, assign(state, q, p))?;
                return Ok(match (first, second) {
                    (PeelOutcome::Done(a), PeelOutcome::Done(b)) => {
                        if a.representation == b.representation {
                            PeelOutcome::Done(a)
                        } else {
                            return Err(Error::NotApplicable { subset: rest });
                        }
                    }
                    (PeelOutcome::Done(a), _) | (_, PeelOutcome::Done(a)) => PeelOutcome::Done(a),
                    (PeelOutcome::Failed(s), _) => PeelOutcome::Failed(s),
                });
            }
            _ => return Ok(PeelOutcome::Failed(rest)),
        }
    }
}

/// Recovers both chains from extreme points of shrinking subsets. Fails
/// with [`Error::NotApplicable`] when two different representations
/// survive, and with [`Error::Infeasible`] when none does.
pub fn reconstruct_by_peeling(geom: &ConvexGeometry) -> Result<Peeling> {
    let start = PeelState {
        left: Vec::new(),
        right: Vec::new(),
        left_known: ElementSet::empty(),
        right_known: ElementSet::empty(),
        trace: Vec::new(),
        swapped_once: false,
    };
    match peel(geom, start)? {
        PeelOutcome::Done(p) => Ok(p),
        PeelOutcome::Failed(subset) => Err(Error::Infeasible {
            stage: "peeling",
            subset,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::validate_geometry;
    use crate::representation::basis_from_representation;

    fn from_display(labels: &[&str], display: &str) -> (ConvexGeometry, SegmentRepresentation) {
        let ground = GroundSet::new(labels.iter().copied()).unwrap();
        let rep = SegmentRepresentation::parse_display(display, &ground).unwrap();
        let basis = basis_from_representation(ground, &rep).unwrap();
        (validate_geometry(basis).unwrap(), rep)
    }

    fn switch() -> (ConvexGeometry, SegmentRepresentation) {
        from_display(
            &["a", "b", "c", "1", "2", "3"],
            "(b a c 2 1 3 ∇ 2 3 1 c b a)",
        )
    }

    fn unique() -> (ConvexGeometry, SegmentRepresentation) {
        from_display(&["1", "2", "3", "4", "5"], "(5 1 3 2 4 ∇ 2 1 3 5 4)")
    }

    #[test]
    fn switch_blocks() {
        let (g, rep) = switch();
        let d = block_decomposition(&rep);
        let gr = g.ground();
        let members: Vec<String> = d.blocks.iter().map(|b| gr.format(b.members)).collect();
        assert_eq!(members, ["1 2 3", "c", "a b"]);
        assert_eq!(
            d.blocks.iter().map(|b| b.switchable).collect::<Vec<_>>(),
            [true, false, true]
        );
        assert_eq!(d.switchable_count(), 2);
        assert_eq!(count_representations(&rep), 2);
        assert!(d.cross_block_violation(&g).is_none());
        assert!(!is_unique(&rep).unique);
        assert!(d
            .report(gr)
            .starts_with("block 1: positions [1..3], members {1, 2, 3}, switchable yes\n"));
    }

    #[test]
    fn switch_enumeration_matches_both_displays() {
        let (g, rep) = switch();
        let all = enumerate_representations(&rep, 20).unwrap();
        let mut expected: Vec<SegmentRepresentation> =
            ["(b a c 2 1 3 ∇ 2 3 1 c b a)", "(b a c 1 3 2 ∇ 3 1 2 c b a)"]
                .iter()
                .map(|d| SegmentRepresentation::parse_display(d, g.ground()).unwrap())
                .collect();
        expected.sort();
        assert_eq!(all, expected);
        assert!(matches!(
            reconstruct_by_peeling(&g),
            Err(Error::NotApplicable { .. })
        ));
    }

    #[test]
    fn unique_example() {
        let (g, rep) = unique();
        assert_eq!(block_decomposition(&rep).blocks.len(), 1);
        let verdict = is_unique(&rep);
        assert!(verdict.unique && verdict.distinct_endings);
        assert_eq!(verdict.core.unwrap().members, g.full());
        let peeled = reconstruct_by_peeling(&g).unwrap();
        assert_eq!(peeled.representation, rep);
        let gr = g.ground();
        let queried = |removed: &[&str]| {
            let subject = g
                .full()
                .difference(gr.set_of(removed.iter().copied()).unwrap());
            let hit = peeled.trace.iter().find(|r| r.subject == subject).unwrap();
            assert!(hit.verify(g.basis()));
            gr.format(hit.extreme)
        };
        assert_eq!(queried(&["5"]), "1 4");
        assert_eq!(queried(&["4"]), "5");
        assert_eq!(queried(&["1", "5"]), "3 4");
        assert_eq!(queried(&["4", "5"]), "1 3");
        assert_eq!(queried(&["5", "1", "3"]), "2 4");
        assert_eq!(queried(&["3", "5", "4"]), "1");
    }

    #[test]
    fn seven_element_example() {
        let (g, rep) = from_display(
            &["a", "b", "c", "d", "1", "2", "3"],
            "(3 d b a c 2 1 ∇ 1 2 d c b a 3)",
        );
        let verdict = is_unique(&rep);
        assert!(verdict.unique);
        assert_eq!(
            verdict.core.unwrap().members,
            g.ground().set_of(["a", "b", "c", "d"]).unwrap()
        );
        assert_eq!(reconstruct_by_peeling(&g).unwrap().representation, rep);
    }

    #[test]
    fn chains_and_small_cases() {
        let ground = GroundSet::new(["a", "b"]).unwrap();
        let rep = SegmentRepresentation::from_sequences(vec![1, 0], vec![1, 0]).unwrap();
        let d = block_decomposition(&rep);
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.switchable_count(), 0);
        assert_eq!(count_representations(&rep), 1);
        assert!(is_unique(&rep).unique);
        assert_eq!(
            enumerate_representations(&rep, 20).unwrap(),
            vec![rep.clone()]
        );

        let g = validate_geometry(basis_from_representation(ground, &rep).unwrap()).unwrap();
        assert_eq!(g.basis().m(), 1);
        assert_eq!(reconstruct_by_peeling(&g).unwrap().representation, rep);
    }

    #[test]
    fn too_many_blocks() {
        let (_, rep) = switch();
        assert!(matches!(
            enumerate_representations(&rep, 1),
            Err(Error::TooManyBlocks { s: 2, limit: 1 })
        ));
    }

    #[test]
    fn distinct_endings() {
        let block = Block {
            start: 1,
            end: 4,
            members: ElementSet::full(4),
            left: vec![0, 1, 2, 3],
            right: vec![1, 0, 3, 2],
            switchable: true,
        };
        assert!(!block.has_distinct_endings());
    }
}
