//! Representations of convex geometries by two linear orders, equivalently
//! by segments on a line that all contain a common point.
//!
//! A chain is stored bottom to top: its `i`-th prefix is a closed set of the
//! geometry it represents. In the segment picture the left chain runs from
//! the origin towards `-∞` and the right chain towards `+∞`; element `e`
//! becomes the interval `[-(rank_L(e)), rank_R(e)]` with 1-based ranks.

mod build;
mod oracle;

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::basis::{Implication, ImplicationBasis};
use crate::error::{Error, Result};
use crate::geometry::{ConvexGeometry, Limits};
use crate::set::{ElementSet, GroundSet};

pub use build::{build_representation, build_representation_with, BuilderStrategy};
pub use oracle::{brute_force_cdim2, BruteForce};

/// A permutation of `0..n`, listed from the minimum to the maximum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearOrder {
    sequence: Vec<usize>,
    position: Vec<usize>,
}

impl LinearOrder {
    pub fn new(sequence: Vec<usize>) -> Result<Self> {
        let n = sequence.len();
        let mut position = vec![usize::MAX; n];
        for (i, &e) in sequence.iter().enumerate() {
            if e >= n || position[e] != usize::MAX {
                return Err(Error::NotAPermutation("linear order"));
            }
            position[e] = i;
        }
        Ok(LinearOrder { sequence, position })
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    /// 0-based rank of `element`.
    pub fn position(&self, element: usize) -> usize {
        self.position[element]
    }

    /// The `len` smallest elements.
    pub fn prefix(&self, len: usize) -> ElementSet {
        self.sequence[..len].iter().copied().collect()
    }

    pub fn top(&self) -> Option<usize> {
        self.sequence.last().copied()
    }

    /// Rank of the largest member of `set`, if any.
    fn max_position(&self, set: ElementSet) -> Option<usize> {
        set.iter().map(|e| self.position[e]).max()
    }
}

impl Serialize for LinearOrder {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.sequence.serialize(serializer)
    }
}

/// Unordered pair of linear orders on the same ground set. The
/// lexicographically smaller chain is always stored as `left`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SegmentRepresentation {
    left: LinearOrder,
    right: LinearOrder,
}

impl SegmentRepresentation {
    pub fn new(left: LinearOrder, right: LinearOrder) -> Result<Self> {
        if left.len() != right.len() {
            return Err(Error::GroundSetMismatch {
                left: left.len(),
                right: right.len(),
            });
        }
        if right.sequence < left.sequence {
            Ok(SegmentRepresentation {
                left: right,
                right: left,
            })
        } else {
            Ok(SegmentRepresentation { left, right })
        }
    }

    pub fn from_sequences(left: Vec<usize>, right: Vec<usize>) -> Result<Self> {
        SegmentRepresentation::new(LinearOrder::new(left)?, LinearOrder::new(right)?)
    }

    /// The empty representation of the empty geometry.
    pub fn empty() -> Self {
        SegmentRepresentation::from_sequences(Vec::new(), Vec::new()).unwrap()
    }

    pub fn left(&self) -> &LinearOrder {
        &self.left
    }

    pub fn right(&self) -> &LinearOrder {
        &self.right
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    /// Elements whose segments lie inside the hull of the segments of `y`:
    /// `{z : z ≤_L max_L(y) and z ≤_R max_R(y)}`.
    pub fn closure(&self, y: ElementSet) -> ElementSet {
        match (self.left.max_position(y), self.right.max_position(y)) {
            (Some(l), Some(r)) => self
                .left
                .prefix(l + 1)
                .intersection(self.right.prefix(r + 1)),
            _ => ElementSet::empty(),
        }
    }

    pub fn layout(&self) -> SegmentLayout {
        SegmentLayout::from_representation(self)
    }

    /// Chain display: the left chain printed from its top down to the
    /// origin `∇`, then the right chain from the origin upwards, e.g.
    /// `(d c b a ∇ c b d a)`.
    pub fn display(&self, ground: &GroundSet) -> String {
        let left: Vec<&str> = self
            .left
            .sequence
            .iter()
            .rev()
            .map(|&e| ground.name(e))
            .collect();
        let right: Vec<&str> = self
            .right
            .sequence
            .iter()
            .map(|&e| ground.name(e))
            .collect();
        let mut out = String::from("(");
        for l in left {
            out.push_str(l);
            out.push(' ');
        }
        out.push('∇');
        for r in right {
            out.push(' ');
            out.push_str(r);
        }
        out.push(')');
        out
    }

    /// Inverse of [`SegmentRepresentation::display`].
    pub fn parse_display(text: &str, ground: &GroundSet) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or(Error::NotAPermutation("chain display"))?;
        let (left, right) = inner
            .split_once('∇')
            .ok_or(Error::NotAPermutation("chain display"))?;
        let labels = |side: &str| -> Result<Vec<usize>> {
            side.split_whitespace()
                .map(|l| {
                    ground
                        .index_of(l)
                        .ok_or_else(|| Error::UnknownLabel(l.to_string()))
                })
                .collect()
        };
        let mut left = labels(left)?;
        left.reverse();
        let right = labels(right)?;
        if left.len() != ground.len() {
            return Err(Error::NotAPermutation("chain display"));
        }
        SegmentRepresentation::from_sequences(left, right)
    }
}

impl PartialOrd for SegmentRepresentation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SegmentRepresentation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.left
            .sequence
            .cmp(&other.left.sequence)
            .then_with(|| self.right.sequence.cmp(&other.right.sequence))
    }
}

/// `segment_closure(rep, y)`; see [`SegmentRepresentation::closure`].
pub fn segment_closure(rep: &SegmentRepresentation, y: ElementSet) -> ElementSet {
    rep.closure(y)
}

/// Closure of a pair of chains given as slices over an arbitrary subset of
/// the ground set.
pub(crate) fn chain_closure(left: &[usize], right: &[usize], y: ElementSet) -> ElementSet {
    if y.is_empty() {
        return ElementSet::empty();
    }
    let prefix_covering = |chain: &[usize]| {
        let mut acc = ElementSet::empty();
        for &e in chain {
            acc.insert(e);
            if y.is_subset(acc) {
                break;
            }
        }
        acc
    };
    prefix_covering(left).intersection(prefix_covering(right))
}

/// Integer interval for every element; all intervals contain 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentLayout {
    pub intervals: Vec<(i64, i64)>,
}

impl SegmentLayout {
    pub fn from_representation(rep: &SegmentRepresentation) -> Self {
        let intervals = (0..rep.len())
            .map(|e| {
                (
                    -(rep.left.position(e) as i64 + 1),
                    rep.right.position(e) as i64 + 1,
                )
            })
            .collect();
        SegmentLayout { intervals }
    }

    pub fn as_f64(&self) -> Vec<(f64, f64)> {
        self.intervals
            .iter()
            .map(|&(a, b)| (a as f64, b as f64))
            .collect()
    }

    /// `element left_endpoint right_endpoint` table, one row per element in
    /// ground-set order.
    pub fn to_table(&self, ground: &GroundSet) -> String {
        let mut out = String::from("element left_endpoint right_endpoint\n");
        for (e, (a, b)) in self.intervals.iter().enumerate() {
            let _ = writeln!(out, "{} {a} {b}", ground.name(e));
        }
        out
    }
}

/// Reads the two chains off a family of intervals with pairwise distinct
/// endpoints. Containment closure only compares left endpoints with left
/// endpoints and right with right, so shifting every right endpoint until
/// all intervals share a point leaves it unchanged; the left chain is the
/// order of decreasing left endpoints, the right chain that of increasing
/// right endpoints.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn normalize_layout(intervals: &[(f64, f64)]) -> Result<SegmentRepresentation> {
    // negated so NaN endpoints are rejected too
    for (index, &(left, right)) in intervals.iter().enumerate() {
        if !(left < right) {
            return Err(Error::InvalidInterval { index, left, right });
        }
    }
    let mut endpoints: Vec<f64> = intervals.iter().flat_map(|&(a, b)| [a, b]).collect();
    endpoints.sort_by(|x, y| x.partial_cmp(y).unwrap());
    if let Some(w) = endpoints.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateEndpoint(w[0]));
    }
    let mut left: Vec<usize> = (0..intervals.len()).collect();
    left.sort_by(|&i, &j| intervals[j].0.partial_cmp(&intervals[i].0).unwrap());
    let mut right: Vec<usize> = (0..intervals.len()).collect();
    right.sort_by(|&i, &j| intervals[i].1.partial_cmp(&intervals[j].1).unwrap());
    SegmentRepresentation::from_sequences(left, right)
}

/// Shift applied to right endpoints so that every interval contains a
/// common point: `max(left) - min(right) + 1` when the intervals do not
/// already overlap, else 0.
pub fn common_point_shift(intervals: &[(f64, f64)]) -> f64 {
    let alpha = intervals
        .iter()
        .map(|i| i.0)
        .fold(f64::NEG_INFINITY, f64::max);
    let beta = intervals.iter().map(|i| i.1).fold(f64::INFINITY, f64::min);
    if beta > alpha {
        0.0
    } else {
        alpha - beta + 1.0
    }
}

/// First seed on which a representation and a geometry disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub seed: ElementSet,
    pub expected: ElementSet,
    pub found: ElementSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Verification {
    Agrees,
    Disagrees(Mismatch),
}

impl Verification {
    pub fn agrees(&self) -> bool {
        matches!(self, Verification::Agrees)
    }

    pub fn mismatch(&self) -> Option<Mismatch> {
        match self {
            Verification::Agrees => None,
            Verification::Disagrees(m) => Some(*m),
        }
    }
}

fn compare_on<I>(geom: &ConvexGeometry, rep: &SegmentRepresentation, seeds: I) -> Verification
where
    I: IntoIterator<Item = ElementSet>,
{
    for seed in seeds {
        let expected = geom.closure(seed);
        let found = rep.closure(seed);
        if expected != found {
            return Verification::Disagrees(Mismatch {
                seed,
                expected,
                found,
            });
        }
    }
    Verification::Agrees
}

/// Seeds of size at most two, in canonical order.
fn small_seeds(n: usize) -> impl Iterator<Item = ElementSet> {
    std::iter::once(ElementSet::empty())
        .chain((0..n).map(ElementSet::singleton))
        .chain((0..n).flat_map(move |a| (a + 1..n).map(move |b| ElementSet::pair(a, b))))
}

/// Compares closures on every seed of at most two elements. Both closure
/// operators satisfy 2-Carathéodory when the geometry satisfies (2Ex), so
/// agreement there means agreement everywhere.
pub fn verify_representation(
    geom: &ConvexGeometry,
    rep: &SegmentRepresentation,
) -> Result<Verification> {
    if rep.len() != geom.n() {
        return Err(Error::GroundSetMismatch {
            left: geom.n(),
            right: rep.len(),
        });
    }
    let mut seeds: Vec<ElementSet> = small_seeds(geom.n()).collect();
    seeds.sort_by(ElementSet::canonical_cmp);
    Ok(compare_on(geom, rep, seeds))
}

/// Compares closures on every subset.
pub fn verify_representation_exhaustive(
    geom: &ConvexGeometry,
    rep: &SegmentRepresentation,
) -> Result<Verification> {
    if rep.len() != geom.n() {
        return Err(Error::GroundSetMismatch {
            left: geom.n(),
            right: rep.len(),
        });
    }
    Limits::check(geom.limits().verify_exhaustive, geom.n())?;
    Ok(compare_on(
        geom,
        rep,
        crate::properties::canonical_subsets(geom.n()),
    ))
}

/// A basis for the geometry of `rep`: `u -> φ(u)` and
/// `u v -> φ(u v) ∖ (φ(u) ∪ φ(v))`, with empty conclusions left out.
pub fn basis_from_representation(
    ground: GroundSet,
    rep: &SegmentRepresentation,
) -> Result<ImplicationBasis> {
    let n = rep.len();
    if ground.len() != n {
        return Err(Error::GroundSetMismatch {
            left: ground.len(),
            right: n,
        });
    }
    let singles: Vec<ElementSet> = (0..n)
        .map(|u| rep.closure(ElementSet::singleton(u)))
        .collect();
    let mut implications = Vec::new();
    for (u, single) in singles.iter().enumerate() {
        let conclusion = single.without(u);
        if !conclusion.is_empty() {
            implications.push(Implication::new(ElementSet::singleton(u), conclusion));
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            let conclusion = rep
                .closure(ElementSet::pair(u, v))
                .difference(singles[u].union(singles[v]));
            if !conclusion.is_empty() {
                implications.push(Implication::new(ElementSet::pair(u, v), conclusion));
            }
        }
    }
    ImplicationBasis::new(ground, implications)
}
