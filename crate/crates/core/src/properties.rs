//! Extreme-point and Carathéodory-style properties of convex geometries and
//! the convex-dimension-2 decision built on them.
//!
//! Polynomial checks ([`check_2ex`], [`check_sq`]) have brute-force
//! counterparts ([`check_2ex_exhaustive`], [`check_sq_exhaustive`]) that
//! quantify over every subset and are guarded by
//! [`Limits::exhaustive`](crate::geometry::Limits).

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::basis::{Implication, ImplicationBasis};
use crate::error::{Error, Result};
use crate::geometry::{extreme_points_by, ConvexGeometry, Limits};
use crate::set::{ElementSet, GroundSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// Every subset has at most two extreme points.
    TwoEx,
    /// `n`-Carathéodory.
    Caratheodory(usize),
    /// Some basis has all premises of size at most two.
    TwoImpl,
    /// Square property.
    Sq,
    /// Extreme-point replacement property.
    ExR,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::TwoEx => f.write_str("2Ex"),
            Property::Caratheodory(n) => write!(f, "C{n}"),
            Property::TwoImpl => f.write_str("2Impl"),
            Property::Sq => f.write_str("Sq"),
            Property::ExR => f.write_str("ExR"),
        }
    }
}

/// Counterexample to a property. Every variant can be re-checked against a
/// basis with [`Witness::verify`], which uses round-based closure rather than
/// the counter-based closure the checks run on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Three elements, each outside the closure of the other two.
    TwoEx { triple: [usize; 3] },
    /// `target ∈ φ(subset)` but not in the closure of any `order`-subset.
    Caratheodory {
        subset: ElementSet,
        target: usize,
        order: usize,
    },
    /// `Ex(subset) = {a,b}`, `Ex(subset∖a) = {c,b}`,
    /// `Ex(subset∖{a,b}) = {c,d}`, yet `Ex(subset∖b) = observed` is neither
    /// `{a,d}` nor `{a}`.
    Sq {
        subset: ElementSet,
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        observed: ElementSet,
    },
    /// `Ex(subset) = {a,b}`, `Ex(subset∖a) = {c,b}`, `z ∉ φ(a)`,
    /// `y ∈ φ(a,z)`, but `y ∉ φ(c,z)`.
    ExR {
        subset: ElementSet,
        a: usize,
        b: usize,
        c: usize,
        y: usize,
        z: usize,
    },
}

impl Witness {
    pub fn verify(&self, basis: &ImplicationBasis) -> bool {
        let cl = |s: ElementSet| basis.closure_naive(s);
        let ex = |s: ElementSet| extreme_points_by(s, |t| basis.closure_naive(t));
        match *self {
            Witness::TwoEx { triple: [a, b, c] } => {
                let t = ElementSet::from_iter([a, b, c]);
                t.len() == 3 && ex(t) == t
            }
            Witness::Caratheodory {
                subset,
                target,
                order,
            } => {
                cl(subset).contains(target)
                    && small_subsets(subset, order).all(|t| !cl(t).contains(target))
            }
            Witness::Sq {
                subset,
                a,
                b,
                c,
                d,
                observed,
            } => {
                a != b
                    && b != c
                    && c != d
                    && ex(subset) == ElementSet::pair(a, b)
                    && ex(subset.without(a)) == ElementSet::pair(c, b)
                    && ex(subset.without(a).without(b)) == ElementSet::pair(c, d)
                    && ex(subset.without(b)) == observed
                    && observed != ElementSet::pair(a, d)
                    && observed != ElementSet::singleton(a)
            }
            Witness::ExR {
                subset,
                a,
                b,
                c,
                y,
                z,
            } => {
                let rest = subset.without(a);
                b != c
                    && rest.contains(y)
                    && rest.contains(z)
                    && ex(subset) == ElementSet::pair(a, b)
                    && ex(rest) == ElementSet::pair(c, b)
                    && !cl(ElementSet::singleton(a)).contains(z)
                    && cl(ElementSet::pair(a, z)).contains(y)
                    && !cl(ElementSet::pair(c, z)).contains(y)
            }
        }
    }

    /// Human-readable description using element labels.
    pub fn describe(&self, ground: &GroundSet) -> String {
        let name = |i: usize| ground.name(i);
        let set = |s: ElementSet| ground.format_braced(s);
        match *self {
            Witness::TwoEx { triple: [a, b, c] } => format!(
                "{{{}, {}, {}}} has three extreme points",
                name(a),
                name(b),
                name(c)
            ),
            Witness::Caratheodory {
                subset,
                target,
                order,
            } => format!(
                "{} lies in the closure of {} but of no {order}-element subset",
                name(target),
                set(subset)
            ),
            Witness::Sq {
                subset,
                a,
                b,
                c,
                d,
                observed,
            } => format!(
                "X' = {}: Ex(X') = {{{}, {}}}, Ex(X'\\{}) = {{{}, {}}}, Ex(X'\\{{{}, {}}}) = {{{}, {}}}, but Ex(X'\\{}) = {}",
                set(subset),
                name(a),
                name(b),
                name(a),
                name(c),
                name(b),
                name(a),
                name(b),
                name(c),
                name(d),
                name(b),
                set(observed)
            ),
            Witness::ExR {
                subset,
                a,
                b,
                c,
                y,
                z,
            } => format!(
                "X' = {}: Ex(X') = {{{}, {}}}, Ex(X'\\{}) = {{{}, {}}}, {} does not imply {}, {} {} implies {}, but {} {} does not",
                set(subset),
                name(a),
                name(b),
                name(a),
                name(c),
                name(b),
                name(a),
                name(z),
                name(a),
                name(z),
                name(y),
                name(c),
                name(z)
            ),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Outcome of a property check. `holds` is false exactly when a witness is
/// present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: Property,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl PropertyReport {
    fn holds(property: Property) -> Self {
        PropertyReport {
            property,
            holds: true,
            witness: None,
        }
    }

    fn fails(property: Property, witness: Witness) -> Self {
        PropertyReport {
            property,
            holds: false,
            witness: Some(witness),
        }
    }

    /// Consistency of `holds` with the witness, and re-verification of the
    /// witness.
    pub fn verify(&self, basis: &ImplicationBasis) -> bool {
        match self.witness {
            None => self.holds,
            Some(w) => !self.holds && w.verify(basis),
        }
    }
}

/// Subsets of `set` with at most `order` elements.
fn small_subsets(set: ElementSet, order: usize) -> impl Iterator<Item = ElementSet> {
    let members = set.to_vec();
    let mut out = Vec::new();
    combinations(&members, order, 0, ElementSet::empty(), &mut out);
    out.into_iter()
}

fn combinations(
    members: &[usize],
    budget: usize,
    from: usize,
    current: ElementSet,
    out: &mut Vec<ElementSet>,
) {
    out.push(current);
    if budget == 0 {
        return;
    }
    for i in from..members.len() {
        combinations(members, budget - 1, i + 1, current.with(members[i]), out);
    }
}

/// Every subset of an `n`-element ground set in canonical order.
pub(crate) fn canonical_subsets(n: usize) -> Vec<ElementSet> {
    let mut all: Vec<ElementSet> = ElementSet::full(n).subsets().collect();
    all.sort_by(ElementSet::canonical_cmp);
    all
}

/// Closures of all pairs `{a, b}` with `a < b`, row-major.
struct PairClosures {
    n: usize,
    table: Vec<ElementSet>,
}

impl PairClosures {
    fn new(geom: &ConvexGeometry) -> Self {
        let n = geom.n();
        let mut table = vec![ElementSet::empty(); n * n];
        for a in 0..n {
            for b in a + 1..n {
                let c = geom.closure(ElementSet::pair(a, b));
                table[a * n + b] = c;
                table[b * n + a] = c;
            }
        }
        PairClosures { n, table }
    }

    fn get(&self, a: usize, b: usize) -> ElementSet {
        self.table[a * self.n + b]
    }
}

/// (2Ex) through triples: for all `a, b, c` one of them lies in the closure
/// of the other two. Reports the lexicographically least failing triple.
pub fn check_2ex(geom: &ConvexGeometry) -> PropertyReport {
    let n = geom.n();
    let pairs = PairClosures::new(geom);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let covered = pairs.get(a, b).contains(c)
                    || pairs.get(a, c).contains(b)
                    || pairs.get(b, c).contains(a);
                if !covered {
                    return PropertyReport::fails(
                        Property::TwoEx,
                        Witness::TwoEx { triple: [a, b, c] },
                    );
                }
            }
        }
    }
    PropertyReport::holds(Property::TwoEx)
}

/// (2Ex) by computing the extreme points of every subset.
pub fn check_2ex_exhaustive(geom: &ConvexGeometry) -> Result<PropertyReport> {
    let n = geom.n();
    Limits::check(geom.limits().exhaustive, n)?;
    for subset in canonical_subsets(n).into_iter().filter(|s| s.len() > 2) {
        let ex = geom.extreme_points(subset);
        if ex.len() > 2 {
            let mut it = ex.iter();
            let triple = [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()];
            return Ok(PropertyReport::fails(
                Property::TwoEx,
                Witness::TwoEx { triple },
            ));
        }
    }
    Ok(PropertyReport::holds(Property::TwoEx))
}

/// `order`-Carathéodory: every element of `φ(X')` lies in the closure of
/// some subset of `X'` with at most `order` elements.
pub fn check_caratheodory(geom: &ConvexGeometry, order: usize) -> Result<PropertyReport> {
    let n = geom.n();
    let property = Property::Caratheodory(order);
    if order >= n {
        return Ok(PropertyReport::holds(property));
    }
    Limits::check(geom.limits().exhaustive, n)?;
    let mut small: HashMap<ElementSet, ElementSet> = HashMap::new();
    for t in small_subsets(geom.full(), order) {
        small.insert(t, geom.closure(t));
    }
    for subset in canonical_subsets(n).into_iter().filter(|s| s.len() > order) {
        let closed = geom.closure(subset);
        let generated =
            small_subsets(subset, order).fold(ElementSet::empty(), |acc, t| acc.union(small[&t]));
        if let Some(target) = closed.difference(generated).first() {
            return Ok(PropertyReport::fails(
                property,
                Witness::Caratheodory {
                    subset,
                    target,
                    order,
                },
            ));
        }
    }
    Ok(PropertyReport::holds(property))
}

/// Replaces every implication by implications with premises of at most two
/// elements, each premise a subset of the original premise. Requires
/// 2-Carathéodory.
pub fn reduce_to_binary_basis(geom: &ConvexGeometry) -> Result<ImplicationBasis> {
    let report = check_caratheodory(geom, 2)?;
    if let Some(w) = report.witness {
        return Err(Error::CaratheodoryFails(w));
    }
    let basis = geom.basis();
    let mut premises: Vec<ElementSet> = Vec::new();
    let mut conclusions: HashMap<ElementSet, ElementSet> = HashMap::new();
    let mut add = |premise: ElementSet, target: usize| {
        let entry = conclusions.entry(premise).or_insert_with(|| {
            premises.push(premise);
            ElementSet::empty()
        });
        entry.insert(target);
    };
    for imp in basis.implications() {
        for target in imp.conclusion.difference(imp.premise).iter() {
            if imp.premise.len() <= 2 {
                add(imp.premise, target);
                continue;
            }
            let generator = small_subsets(imp.premise, 2)
                .filter(|t| !t.is_empty())
                .find(|&t| geom.implies(t, target))
                .expect("2-Caratheodory guarantees a generating pair");
            add(generator, target);
        }
    }
    let implications = premises
        .iter()
        .map(|p| Implication::new(*p, conclusions[p]))
        .collect();
    let reduced = ImplicationBasis::new(basis.ground().clone(), implications)?;
    let exhaustive = geom.n() <= geom.limits().exhaustive;
    if let Some(y) = closure_disagreement(basis, &reduced, exhaustive) {
        unreachable!("binary basis disagrees with the original on {y:?}");
    }
    Ok(reduced)
}

/// First seed on which two bases over the same ground set generate different
/// closures: all subsets when `exhaustive`, otherwise subsets of size ≤ 2.
pub fn closure_disagreement(
    left: &ImplicationBasis,
    right: &ImplicationBasis,
    exhaustive: bool,
) -> Option<ElementSet> {
    let full = left.ground().full();
    let seeds: Box<dyn Iterator<Item = ElementSet>> = if exhaustive {
        Box::new(full.subsets())
    } else {
        Box::new(small_subsets(full, 2))
    };
    seeds
        .into_iter()
        .find(|&y| left.closure(y) != right.closure(y))
}

enum SqOutcome {
    NotApplicable,
    Holds,
    Fails(Witness),
}

/// One instance of the square property with `Ex(subset) = {a, b}` ordered.
fn sq_instance(geom: &ConvexGeometry, subset: ElementSet, a: usize, b: usize) -> SqOutcome {
    let without_a = geom.extreme_points(subset.without(a));
    if without_a.len() != 2 || !without_a.contains(b) {
        // c = b, or more than two extreme points
        return SqOutcome::NotApplicable;
    }
    let c = without_a.without(b).first().unwrap();
    let without_ab = geom.extreme_points(subset.without(a).without(b));
    if !without_ab.contains(c) || without_ab.len() > 2 {
        return SqOutcome::NotApplicable;
    }
    if without_ab.len() == 1 {
        // c = d always satisfies the conclusion
        return SqOutcome::Holds;
    }
    let d = without_ab.without(c).first().unwrap();
    let observed = geom.extreme_points(subset.without(b));
    if observed == ElementSet::pair(a, d) || observed == ElementSet::singleton(a) {
        SqOutcome::Holds
    } else {
        SqOutcome::Fails(Witness::Sq {
            subset,
            a,
            b,
            c,
            d,
            observed,
        })
    }
}

/// (Sq) through four-element subsets.
///
/// Under (2Ex) a violation needs `Ex(X'∖b) = {a, c}` with `c ≠ d`, and
/// the conditions `a ∉ φ(X'∖a)`, `b ∉ φ(X'∖b)`, `c ∉ φ(X'∖{a,c})` and
/// `c ∉ φ(X'∖{b,c})` survive shrinking `X'`, so `X' = {a, b, c, d}` is
/// itself a violation. That leaves `d ∉ φ(c)`, `c ∉ φ(a,d)`, `c ∉ φ(b,d)`,
/// `a ∉ φ(b,c,d)` and `b ∉ φ(a,c,d)` to test, `O(n³)` distinct closures.
/// Exact when (2Ex) holds; each hit is confirmed against the definition.
pub fn check_sq(geom: &ConvexGeometry) -> PropertyReport {
    let n = geom.n();
    let singles: Vec<ElementSet> = (0..n)
        .map(|x| geom.closure(ElementSet::singleton(x)))
        .collect();
    let pairs = PairClosures::new(geom);
    let mut triples: HashMap<ElementSet, ElementSet> = HashMap::new();
    let mut triple = |set: ElementSet| *triples.entry(set).or_insert_with(|| geom.closure(set));
    for a in 0..n {
        for b in (0..n).filter(|&b| b != a) {
            for c in (0..n).filter(|&c| c != a && c != b) {
                for d in (0..n).filter(|&d| d != a && d != b && d != c) {
                    if singles[c].contains(d)
                        || pairs.get(a, d).contains(c)
                        || pairs.get(b, d).contains(c)
                    {
                        continue;
                    }
                    let quad: ElementSet = [a, b, c, d].into_iter().collect();
                    if triple(quad.without(a)).contains(a) || triple(quad.without(b)).contains(b) {
                        continue;
                    }
                    if let SqOutcome::Fails(w) = sq_instance(geom, quad, a, b) {
                        return PropertyReport::fails(Property::Sq, w);
                    }
                }
            }
        }
    }
    PropertyReport::holds(Property::Sq)
}

/// (Sq) over every subset of the ground set.
pub fn check_sq_exhaustive(geom: &ConvexGeometry) -> Result<PropertyReport> {
    let n = geom.n();
    Limits::check(geom.limits().exhaustive, n)?;
    for subset in canonical_subsets(n).into_iter().filter(|s| s.len() >= 3) {
        let ex = geom.extreme_points(subset);
        if ex.len() != 2 {
            continue;
        }
        let (p, q) = (ex.first().unwrap(), ex.last().unwrap());
        for (a, b) in [(p, q), (q, p)] {
            if let SqOutcome::Fails(w) = sq_instance(geom, subset, a, b) {
                return Ok(PropertyReport::fails(Property::Sq, w));
            }
        }
    }
    Ok(PropertyReport::holds(Property::Sq))
}

/// Which subsets `X'` the (ExR) quantifier ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExrScope {
    AllSubsets,
    ClosedSets,
}

/// (ExR): when `c` replaces `a` as an extreme point, it also replaces `a`
/// in the implications `a z -> y` with `a ↛ z`.
pub fn check_exr(geom: &ConvexGeometry, scope: ExrScope) -> Result<PropertyReport> {
    let n = geom.n();
    let subsets: Vec<ElementSet> = match scope {
        ExrScope::AllSubsets => {
            Limits::check(geom.limits().exhaustive, n)?;
            canonical_subsets(n)
        }
        ExrScope::ClosedSets => crate::geometry::enumerate_closed_sets(geom)?
            .sets()
            .to_vec(),
    };
    for subset in subsets.into_iter().filter(|s| s.len() >= 2) {
        let ex = geom.extreme_points(subset);
        if ex.len() != 2 {
            continue;
        }
        let (p, q) = (ex.first().unwrap(), ex.last().unwrap());
        for (a, b) in [(p, q), (q, p)] {
            if let Some(w) = exr_instance(geom, subset, a, b) {
                return Ok(PropertyReport::fails(Property::ExR, w));
            }
        }
    }
    Ok(PropertyReport::holds(Property::ExR))
}

fn exr_instance(geom: &ConvexGeometry, subset: ElementSet, a: usize, b: usize) -> Option<Witness> {
    let rest = subset.without(a);
    let ex = geom.extreme_points(rest);
    if ex.len() != 2 || !ex.contains(b) {
        // b = c holds vacuously
        return None;
    }
    let c = ex.without(b).first().unwrap();
    let from_a = geom.closure(ElementSet::singleton(a));
    for z in rest.iter().filter(|&z| !from_a.contains(z)) {
        let from_az = geom.closure(ElementSet::pair(a, z));
        let from_cz = geom.closure(ElementSet::pair(c, z));
        // a -> y implies a z -> y, so the premise reduces to y ∈ φ(a, z)
        if let Some(y) = rest.intersection(from_az).difference(from_cz).first() {
            return Some(Witness::ExR {
                subset,
                a,
                b,
                c,
                y,
                z,
            });
        }
    }
    None
}

/// Outcome of the convex-dimension-2 test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    /// Convex dimension at most 2.
    pub cdim2: bool,
    pub two_ex: PropertyReport,
    pub sq: PropertyReport,
}

impl Decision {
    pub fn witness(&self) -> Option<Witness> {
        self.two_ex.witness.or(self.sq.witness)
    }
}

/// Convex dimension at most 2 iff (2Ex) and (Sq) hold.
pub fn decide_cdim2(geom: &ConvexGeometry) -> Decision {
    let two_ex = check_2ex(geom);
    let sq = check_sq(geom);
    Decision {
        cdim2: two_ex.holds && sq.holds,
        two_ex,
        sq,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::validate_geometry;

    fn geom(elements: &[&str], imps: &[(&[&str], &[&str])]) -> ConvexGeometry {
        validate_geometry(ImplicationBasis::from_labels(elements, imps).unwrap()).unwrap()
    }

    fn notsuf() -> ConvexGeometry {
        geom(
            &["a", "b", "c", "d"],
            &[
                (&["a", "b"], &["c"]),
                (&["b", "c"], &["d"]),
                (&["a"], &["d"]),
            ],
        )
    }

    fn un() -> ConvexGeometry {
        geom(
            &["a", "b", "c", "d"],
            &[(&["d"], &["b", "c"]), (&["a", "c"], &["b"])],
        )
    }

    fn free3() -> ConvexGeometry {
        geom(&["a", "b", "c"], &[])
    }

    fn triangle() -> ConvexGeometry {
        geom(&["a", "b", "c", "x"], &[(&["a", "b"], &["x"])])
    }

    fn five_point() -> ConvexGeometry {
        geom(
            &["a", "b", "c", "d", "x"],
            &[(&["b", "c"], &["d"]), (&["a", "d"], &["x"])],
        )
    }

    #[test]
    fn two_ex_examples() {
        assert!(check_2ex(&notsuf()).holds);
        let r = check_2ex(&free3());
        assert_eq!(r.witness, Some(Witness::TwoEx { triple: [0, 1, 2] }));
        let t = triangle();
        let r = check_2ex(&t);
        assert_eq!(r.witness, Some(Witness::TwoEx { triple: [0, 1, 2] }));
        assert!(r.verify(t.basis()));
    }

    #[test]
    fn two_ex_exhaustive_examples() {
        assert!(check_2ex_exhaustive(&notsuf()).unwrap().holds);
        assert!(!check_2ex_exhaustive(&free3()).unwrap().holds);
    }

    #[test]
    fn caratheodory_examples() {
        let t = triangle();
        assert!(check_caratheodory(&t, 2).unwrap().holds);
        let f = five_point();
        let r = check_caratheodory(&f, 2).unwrap();
        let gr = f.ground();
        assert_eq!(
            r.witness,
            Some(Witness::Caratheodory {
                subset: gr.set_of(["a", "b", "c"]).unwrap(),
                target: gr.index_of("x").unwrap(),
                order: 2,
            })
        );
        assert!(r.verify(f.basis()));
        assert!(check_caratheodory(&f, 5).unwrap().holds);
        assert!(check_caratheodory(&f, 3).unwrap().holds);
    }

    #[test]
    fn binary_reduction_examples() {
        let g = notsuf();
        let reduced = reduce_to_binary_basis(&g).unwrap();
        assert_eq!(reduced.implications(), g.basis().implications());

        let g = geom(
            &["a", "b", "c", "d"],
            &[(&["a", "b", "c"], &["d"]), (&["a", "b"], &["d"])],
        );
        let reduced = reduce_to_binary_basis(&g).unwrap();
        assert!(reduced.implications().iter().all(|i| i.premise.len() <= 2));
        assert_eq!(reduced.m(), 1);
        assert_eq!(
            reduced.format_implication(&reduced.implications()[0]),
            "a b -> d"
        );

        assert!(matches!(
            reduce_to_binary_basis(&five_point()),
            Err(Error::CaratheodoryFails(Witness::Caratheodory { .. }))
        ));
    }

    #[test]
    fn sq_notsuf_witness() {
        let g = notsuf();
        let r = check_sq(&g);
        let gr = g.ground();
        let i = |l: &str| gr.index_of(l).unwrap();
        assert_eq!(
            r.witness,
            Some(Witness::Sq {
                subset: g.full(),
                a: i("a"),
                b: i("b"),
                c: i("c"),
                d: i("d"),
                observed: gr.set_of(["a", "c"]).unwrap(),
            })
        );
        assert!(r.verify(g.basis()));
        assert!(!check_sq_exhaustive(&g).unwrap().holds);
    }

    #[test]
    fn sq_holds_on_un_and_trivial_geometries() {
        assert!(check_sq(&un()).holds);
        assert!(check_sq_exhaustive(&un()).unwrap().holds);
        let single = geom(&["a"], &[]);
        assert!(check_sq(&single).holds);
        assert!(check_sq_exhaustive(&single).unwrap().holds);
    }

    #[test]
    fn sq_violation_outside_pair_closures() {
        // the violating X' = {0, 1, 2, 4} is not closed and not of the form φ(a, b)
        let g = geom(
            &["0", "1", "2", "3", "4"],
            &[
                (&["0"], &["4"]),
                (&["1"], &["4"]),
                (&["0", "1"], &["3"]),
                (&["3"], &["4"]),
                (&["3"], &["2"]),
            ],
        );
        assert!(check_2ex(&g).holds);
        let r = check_sq(&g);
        let gr = g.ground();
        let Some(Witness::Sq {
            subset, observed, ..
        }) = r.witness
        else {
            panic!("expected an Sq witness");
        };
        assert_eq!(subset, gr.set_of(["0", "1", "2", "4"]).unwrap());
        assert_eq!(observed, gr.set_of(["0", "2"]).unwrap());
        assert!(!g.is_closed(subset));
        assert!(r.verify(g.basis()));
        assert!(!check_sq_exhaustive(&g).unwrap().holds);
    }

    #[test]
    fn exr_examples() {
        let g = notsuf();
        let r = check_exr(&g, ExrScope::AllSubsets).unwrap();
        assert!(!r.holds);
        assert!(r.verify(g.basis()));
        assert!(check_exr(&un(), ExrScope::AllSubsets).unwrap().holds);
        // a chain: every Ex(X' \ a) is a singleton, so b = c throughout
        let chain = geom(&["a", "b", "c"], &[(&["c"], &["b"]), (&["b"], &["a"])]);
        assert!(check_exr(&chain, ExrScope::AllSubsets).unwrap().holds);
    }

    #[test]
    fn decide_examples() {
        let d = decide_cdim2(&notsuf());
        assert!(!d.cdim2);
        assert!(d.two_ex.holds);
        assert!(matches!(d.witness(), Some(Witness::Sq { .. })));

        assert!(decide_cdim2(&un()).cdim2);

        let d = decide_cdim2(&free3());
        assert!(!d.cdim2);
        assert!(matches!(d.witness(), Some(Witness::TwoEx { .. })));
    }

    #[test]
    fn exhaustive_guard() {
        let big =
            ConvexGeometry::assume_valid(ImplicationBasis::free(GroundSet::numbered(16).unwrap()))
                .unwrap();
        assert!(matches!(
            check_2ex_exhaustive(&big),
            Err(Error::GroundSetTooLarge { n: 16, limit: 15 })
        ));
        assert!(matches!(
            check_sq_exhaustive(&big),
            Err(Error::GroundSetTooLarge { .. })
        ));
    }

    #[test]
    fn small_subsets_counts() {
        let s = ElementSet::full(5);
        assert_eq!(small_subsets(s, 2).count(), 1 + 5 + 10);
        assert_eq!(small_subsets(s, 0).count(), 1);
    }
}
