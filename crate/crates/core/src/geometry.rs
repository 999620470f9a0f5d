//! Convex geometries: validation, extreme points and alignments.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::basis::ImplicationBasis;
use crate::error::{Error, Result};
use crate::representation::LinearOrder;
use crate::set::{ElementSet, GroundSet};

/// Size guards for the operations whose cost is exponential in `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Closed-set enumeration, and hence validation.
    pub enumeration: usize,
    /// Subset quantifiers of the exhaustive property checks.
    pub exhaustive: usize,
    /// Permutation-pair search for representations.
    pub brute_force: usize,
    /// Verifying a representation on every subset.
    pub verify_exhaustive: usize,
    /// Number of switchable blocks in representation enumeration.
    pub blocks: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: 20,
            exhaustive: 15,
            brute_force: 8,
            verify_exhaustive: 12,
            blocks: 20,
        }
    }
}

impl Limits {
    /// Every guard set to `n`.
    pub fn uniform(n: usize) -> Self {
        Limits {
            enumeration: n,
            exhaustive: n,
            brute_force: n,
            verify_exhaustive: n,
            blocks: n,
        }
    }

    pub(crate) fn check(limit: usize, n: usize) -> Result<()> {
        if n > limit {
            Err(Error::GroundSetTooLarge { n, limit })
        } else {
            Ok(())
        }
    }
}

/// Why a closure system fails to be a convex geometry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeometryViolation {
    /// `φ(∅) ≠ ∅`.
    EmptyNotClosed { closure_of_empty: ElementSet },
    /// `Y` closed, `x, z ∉ Y`, `z ∈ φ(Y ∪ x)` and `x ∈ φ(Y ∪ z)`.
    AntiExchange {
        closed: ElementSet,
        x: usize,
        z: usize,
    },
}

impl fmt::Display for GeometryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryViolation::EmptyNotClosed { closure_of_empty } => {
                write!(f, "closure of the empty set is {closure_of_empty:?}")
            }
            GeometryViolation::AntiExchange { closed, x, z } => write!(
                f,
                "anti-exchange fails at closed set {closed:?} with elements {x} and {z}"
            ),
        }
    }
}

/// A closure system verified to satisfy `φ(∅) = ∅` and anti-exchange.
///
/// Every closure query made through the geometry is counted; the counter is
/// the cost measure used by the complexity tests.
#[derive(Debug)]
pub struct ConvexGeometry {
    basis: ImplicationBasis,
    limits: Limits,
    closure_calls: AtomicU64,
}

impl Clone for ConvexGeometry {
    fn clone(&self) -> Self {
        ConvexGeometry {
            basis: self.basis.clone(),
            limits: self.limits,
            closure_calls: AtomicU64::new(0),
        }
    }
}

impl ConvexGeometry {
    /// Wraps a basis without the anti-exchange check; only `φ(∅) = ∅` is
    /// enforced. For bases known to describe convex geometries that are too
    /// large to validate by enumeration.
    pub fn assume_valid(basis: ImplicationBasis) -> Result<Self> {
        let closure_of_empty = basis.closure(ElementSet::empty());
        if !closure_of_empty.is_empty() {
            return Err(Error::NotAGeometry(GeometryViolation::EmptyNotClosed {
                closure_of_empty,
            }));
        }
        Ok(ConvexGeometry {
            basis,
            limits: Limits::default(),
            closure_calls: AtomicU64::new(0),
        })
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn basis(&self) -> &ImplicationBasis {
        &self.basis
    }

    pub fn ground(&self) -> &GroundSet {
        self.basis.ground()
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn full(&self) -> ElementSet {
        self.basis.ground().full()
    }

    pub fn closure(&self, seed: ElementSet) -> ElementSet {
        self.closure_calls.fetch_add(1, Ordering::Relaxed);
        self.basis.closure(seed)
    }

    pub fn is_closed(&self, set: ElementSet) -> bool {
        self.closure(set) == set
    }

    /// `φ_S(Y) = φ(Y) ∩ S`.
    pub fn restricted_closure(&self, subset: ElementSet, y: ElementSet) -> Result<ElementSet> {
        if !y.is_subset(subset) {
            return Err(Error::NotASubset {
                subset: y,
                superset: subset,
            });
        }
        Ok(self.closure(y).intersection(subset))
    }

    /// Whether `target ∈ φ(from)`.
    pub fn implies(&self, from: ElementSet, target: usize) -> bool {
        from.contains(target) || self.closure(from).contains(target)
    }

    /// Extreme points of the restriction to `subset`.
    pub fn extreme_points(&self, subset: ElementSet) -> ElementSet {
        extreme_points_by(subset, |s| self.closure(s))
    }

    pub fn closure_calls(&self) -> u64 {
        self.closure_calls.load(Ordering::Relaxed)
    }

    pub fn reset_closure_calls(&self) {
        self.closure_calls.store(0, Ordering::Relaxed);
    }
}

/// `{x ∈ S : x ∉ closure(S ∖ x)}` for an arbitrary closure function.
pub fn extreme_points_by<F>(subset: ElementSet, mut closure: F) -> ElementSet
where
    F: FnMut(ElementSet) -> ElementSet,
{
    subset
        .iter()
        .filter(|&x| !closure(subset.without(x)).contains(x))
        .collect()
}

/// Extreme points of `(S, φ_S)`.
pub fn extreme_points(geom: &ConvexGeometry, subset: ElementSet) -> ElementSet {
    geom.extreme_points(subset)
}

/// A subset together with its extreme points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremeReport {
    pub subject: ElementSet,
    pub extreme: ElementSet,
}

impl ExtremeReport {
    pub fn compute(geom: &ConvexGeometry, subject: ElementSet) -> Self {
        ExtremeReport {
            subject,
            extreme: geom.extreme_points(subject),
        }
    }

    /// Recomputes the extreme points with round-based closure.
    pub fn verify(&self, basis: &ImplicationBasis) -> bool {
        self.extreme.is_subset(self.subject)
            && extreme_points_by(self.subject, |s| basis.closure_naive(s)) == self.extreme
    }
}

/// Validates `basis` as a convex geometry with default limits.
pub fn validate_geometry(basis: ImplicationBasis) -> Result<ConvexGeometry> {
    validate_geometry_with(basis, Limits::default())
}

/// Checks `φ(∅) = ∅` and anti-exchange over every closed set. Reports the
/// violation at the canonically least closed set, least `x`, then least `z`.
pub fn validate_geometry_with(basis: ImplicationBasis, limits: Limits) -> Result<ConvexGeometry> {
    Limits::check(limits.enumeration, basis.n())?;
    let geom = ConvexGeometry::assume_valid(basis)?.with_limits(limits);
    if let Some(violation) = anti_exchange_violation(&geom)? {
        return Err(Error::NotAGeometry(violation));
    }
    geom.reset_closure_calls();
    Ok(geom)
}

fn anti_exchange_violation(geom: &ConvexGeometry) -> Result<Option<GeometryViolation>> {
    let n = geom.n();
    let closed = closed_sets(geom)?;
    let mut extended = vec![ElementSet::empty(); n];
    for y in closed {
        let outside = y.complement(n);
        for x in outside.iter() {
            extended[x] = geom.closure(y.with(x));
        }
        for x in outside.iter() {
            for z in outside.iter().filter(|&z| z > x) {
                if extended[x].contains(z) && extended[z].contains(x) {
                    return Ok(Some(GeometryViolation::AntiExchange { closed: y, x, z }));
                }
            }
        }
    }
    Ok(None)
}

/// All closed sets in lectic order (NextClosure).
fn closed_sets(geom: &ConvexGeometry) -> Result<Vec<ElementSet>> {
    let n = geom.n();
    Limits::check(geom.limits().enumeration, n)?;
    let mut out = Vec::new();
    let mut current = geom.closure(ElementSet::empty());
    out.push(current);
    'outer: loop {
        for i in (0..n).rev() {
            if current.contains(i) {
                continue;
            }
            let below = ElementSet::full(i);
            let candidate = geom.closure(current.intersection(below).with(i));
            if candidate.intersection(below) == current.intersection(below) {
                current = candidate;
                out.push(current);
                continue 'outer;
            }
        }
        break;
    }
    Ok(out)
}

/// The family of closed sets of `geom`, canonically ordered.
pub fn enumerate_closed_sets(geom: &ConvexGeometry) -> Result<Alignment> {
    Ok(Alignment::new(geom.n(), closed_sets(geom)?))
}

/// Why a family of subsets is not an alignment (or not a convex one).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlignmentViolation {
    MissingGroundSet,
    MissingEmptySet,
    NotIntersectionClosed {
        left: ElementSet,
        right: ElementSet,
    },
    /// A proper member with no one-element extension in the family.
    NotExtendable {
        member: ElementSet,
    },
}

/// A family of subsets of an `n`-element ground set, kept deduplicated and
/// in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Alignment {
    n: usize,
    sets: Vec<ElementSet>,
}

impl Alignment {
    pub fn new(n: usize, mut sets: Vec<ElementSet>) -> Self {
        sets.sort_by(ElementSet::canonical_cmp);
        sets.dedup();
        Alignment { n, sets }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: ElementSet) -> bool {
        self.sets
            .binary_search_by(|probe| probe.canonical_cmp(&set))
            .is_ok()
    }

    /// Intersection of all members containing `y`.
    pub fn closure(&self, y: ElementSet) -> ElementSet {
        self.sets
            .iter()
            .filter(|s| y.is_subset(**s))
            .fold(ElementSet::full(self.n), |acc, s| acc.intersection(*s))
    }

    /// Checks the two alignment axioms.
    pub fn alignment_violation(&self) -> Option<AlignmentViolation> {
        if !self.contains(ElementSet::full(self.n)) {
            return Some(AlignmentViolation::MissingGroundSet);
        }
        for (i, &left) in self.sets.iter().enumerate() {
            for &right in &self.sets[i + 1..] {
                if !self.contains(left.intersection(right)) {
                    return Some(AlignmentViolation::NotIntersectionClosed { left, right });
                }
            }
        }
        None
    }

    /// Checks the alignment form of the convex-geometry definition: `∅` is
    /// a member and every proper member extends by one element.
    pub fn convex_geometry_violation(&self) -> Option<AlignmentViolation> {
        if let Some(v) = self.alignment_violation() {
            return Some(v);
        }
        if !self.contains(ElementSet::empty()) {
            return Some(AlignmentViolation::MissingEmptySet);
        }
        let full = ElementSet::full(self.n);
        self.sets
            .iter()
            .filter(|&&s| s != full)
            .find(|&&s| {
                !s.complement(self.n)
                    .iter()
                    .any(|a| self.contains(s.with(a)))
            })
            .map(|&member| AlignmentViolation::NotExtendable { member })
    }

    /// Proper members that are not the intersection of the members strictly
    /// above them.
    pub fn meet_irreducibles(&self) -> Vec<ElementSet> {
        let full = ElementSet::full(self.n);
        self.sets
            .iter()
            .copied()
            .filter(|&s| s != full)
            .filter(|&s| {
                let above = self
                    .sets
                    .iter()
                    .filter(|&&t| t != s && s.is_subset(t))
                    .fold(full, |acc, t| acc.intersection(*t));
                above != s
            })
            .collect()
    }
}

/// `F1 + F2`: every intersection of a member of `f1` with a member of `f2`.
pub fn join_alignments(f1: &Alignment, f2: &Alignment) -> Result<Alignment> {
    if f1.n != f2.n {
        return Err(Error::GroundSetMismatch {
            left: f1.n,
            right: f2.n,
        });
    }
    let sets = f1
        .sets
        .iter()
        .flat_map(|u| f2.sets.iter().map(move |v| u.intersection(*v)))
        .collect();
    Ok(Alignment::new(f1.n, sets))
}

/// The `n + 1` prefixes of a linear order.
pub fn linear_alignment(order: &LinearOrder) -> Alignment {
    let n = order.len();
    let sets = (0..=n).map(|i| order.prefix(i)).collect();
    Alignment::new(n, sets)
}
