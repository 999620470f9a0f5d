//! Implications, implicational bases and forward-chaining closure.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::set::{ElementSet, GroundSet};

/// `premise -> conclusion`: the conclusion lies in the closure of the premise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Implication {
    pub premise: ElementSet,
    pub conclusion: ElementSet,
}

impl Implication {
    pub fn new(premise: ElementSet, conclusion: ElementSet) -> Self {
        Implication {
            premise,
            conclusion,
        }
    }
}

/// A finite list of implications over a ground set, indexed for linear-time
/// closure queries.
#[derive(Clone, Debug)]
pub struct ImplicationBasis {
    ground: GroundSet,
    implications: Vec<Implication>,
    // per element, the implications whose premise mentions it
    occurrences: Vec<Vec<u32>>,
    premise_len: Vec<u32>,
    unconditional: ElementSet,
}

impl ImplicationBasis {
    pub fn new(ground: GroundSet, implications: Vec<Implication>) -> Result<Self> {
        let n = ground.len();
        let universe = ground.full();
        for imp in &implications {
            let all = imp.premise.union(imp.conclusion);
            if !all.is_subset(universe) {
                let index = all.difference(universe).first().unwrap_or(n);
                return Err(Error::ElementOutOfRange { index, n });
            }
        }
        let mut occurrences = vec![Vec::new(); n];
        let mut premise_len = Vec::with_capacity(implications.len());
        let mut unconditional = ElementSet::empty();
        for (i, imp) in implications.iter().enumerate() {
            for e in imp.premise.iter() {
                occurrences[e].push(i as u32);
            }
            premise_len.push(imp.premise.len() as u32);
            if imp.premise.is_empty() {
                unconditional = unconditional.union(imp.conclusion);
            }
        }
        Ok(ImplicationBasis {
            ground,
            implications,
            occurrences,
            premise_len,
            unconditional,
        })
    }

    /// Basis with no implications: every subset is closed.
    pub fn free(ground: GroundSet) -> Self {
        ImplicationBasis::new(ground, Vec::new()).expect("empty basis is well formed")
    }

    /// Convenience constructor from label lists, e.g.
    /// `from_labels(&["a", "b"], &[(&["a"], &["b"])])`.
    pub fn from_labels(elements: &[&str], implications: &[(&[&str], &[&str])]) -> Result<Self> {
        let ground = GroundSet::new(elements.iter().copied())?;
        let imps = implications
            .iter()
            .map(|(p, c)| {
                Ok(Implication::new(
                    ground.set_of(p.iter().copied())?,
                    ground.set_of(c.iter().copied())?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        ImplicationBasis::new(ground, imps)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn implications(&self) -> &[Implication] {
        &self.implications
    }

    /// Number of implications.
    pub fn m(&self) -> usize {
        self.implications.len()
    }

    /// Total size: sum of premise sizes plus sum of conclusion sizes.
    pub fn k(&self) -> usize {
        self.implications
            .iter()
            .map(|i| i.premise.len() + i.conclusion.len())
            .sum()
    }

    /// Least closed superset of `seed`.
    ///
    /// Each implication keeps a counter of premise elements not yet derived
    /// and fires once, when the counter reaches zero.
    pub fn closure(&self, seed: ElementSet) -> ElementSet {
        let mut result = seed.union(self.unconditional);
        if self.implications.is_empty() {
            return result;
        }
        let mut missing = self.premise_len.clone();
        let mut queue: Vec<usize> = result.iter().collect();
        while let Some(x) = queue.pop() {
            for &i in &self.occurrences[x] {
                let i = i as usize;
                missing[i] -= 1;
                if missing[i] == 0 {
                    let fresh = self.implications[i].conclusion.difference(result);
                    if !fresh.is_empty() {
                        result = result.union(fresh);
                        queue.extend(fresh.iter());
                    }
                }
            }
        }
        result
    }

    /// Closure by literal round-based iteration: every round adds the
    /// conclusions of all implications whose premise is already derived,
    /// until nothing changes. Returns the closure and the number of rounds
    /// that added something.
    pub fn closure_rounds(&self, seed: ElementSet) -> (ElementSet, usize) {
        let mut current = seed;
        let mut rounds = 0;
        loop {
            let next = self
                .implications
                .iter()
                .filter(|imp| imp.premise.is_subset(current))
                .fold(current, |acc, imp| acc.union(imp.conclusion));
            if next == current {
                return (current, rounds);
            }
            current = next;
            rounds += 1;
        }
    }

    pub fn closure_naive(&self, seed: ElementSet) -> ElementSet {
        self.closure_rounds(seed).0
    }

    pub fn is_closed(&self, set: ElementSet) -> bool {
        self.closure(set) == set
    }

    /// `φ(y) ∩ subset` for `y ⊆ subset`.
    pub fn restricted_closure(&self, subset: ElementSet, y: ElementSet) -> Result<ElementSet> {
        if !y.is_subset(subset) {
            return Err(Error::NotASubset {
                subset: y,
                superset: subset,
            });
        }
        Ok(self.closure(y).intersection(subset))
    }

    /// Sub-basis on `subset`: implications whose premise lies inside
    /// `subset`, with conclusions cut down to `subset` and emptied ones
    /// dropped. The result is re-indexed over the restricted ground set.
    pub fn restrict(&self, subset: ElementSet) -> Result<ImplicationBasis> {
        let universe = self.ground.full();
        if !subset.is_subset(universe) {
            return Err(Error::NotASubset {
                subset,
                superset: universe,
            });
        }
        let ground = self.ground.restrict(subset);
        let implications = self
            .implications
            .iter()
            .filter(|imp| imp.premise.is_subset(subset))
            .filter_map(|imp| {
                let conclusion = imp.conclusion.intersection(subset);
                (!conclusion.is_empty()).then(|| {
                    Implication::new(imp.premise.compress(subset), conclusion.compress(subset))
                })
            })
            .collect();
        ImplicationBasis::new(ground, implications)
    }

    /// Renders the basis in the geometry file grammar. Empty-premise
    /// implications cannot be expressed there and are written as comments.
    pub fn to_geometry_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "elements {}", self.ground.names().join(" "));
        for imp in &self.implications {
            let premise = self.ground.format(imp.premise);
            let conclusion = self.ground.format(imp.conclusion);
            if imp.premise.is_empty() {
                let _ = writeln!(out, "# imp -> {conclusion}");
            } else {
                let _ = writeln!(out, "imp {premise} -> {conclusion}");
            }
        }
        out
    }

    pub fn format_implication(&self, imp: &Implication) -> String {
        format!(
            "{} -> {}",
            self.ground.format(imp.premise),
            self.ground.format(imp.conclusion)
        )
    }
}

/// Sub-basis of `basis` over `subset`; see [`ImplicationBasis::restrict`].
pub fn restrict_basis(basis: &ImplicationBasis, subset: ElementSet) -> Result<ImplicationBasis> {
    basis.restrict(subset)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn notsuf() -> ImplicationBasis {
        ImplicationBasis::from_labels(
            &["a", "b", "c", "d"],
            &[
                (&["a", "b"], &["c"]),
                (&["b", "c"], &["d"]),
                (&["a"], &["d"]),
            ],
        )
        .unwrap()
    }

    fn un() -> ImplicationBasis {
        ImplicationBasis::from_labels(
            &["a", "b", "c", "d"],
            &[(&["d"], &["b", "c"]), (&["a", "c"], &["b"])],
        )
        .unwrap()
    }

    fn set(b: &ImplicationBasis, labels: &[&str]) -> ElementSet {
        b.ground().set_of(labels.iter().copied()).unwrap()
    }

    #[test]
    fn closure_examples() {
        let b = notsuf();
        assert_eq!(b.closure(set(&b, &["a"])), set(&b, &["a", "d"]));
        assert_eq!(b.closure(ElementSet::empty()), ElementSet::empty());
        assert_eq!(b.closure(set(&b, &["a", "b"])), b.ground().full());

        let u = un();
        assert_eq!(u.closure(set(&u, &["a", "c"])), set(&u, &["a", "b", "c"]));
    }

    #[test]
    fn un_basis_closed_sets_match_listed_family() {
        let u = un();
        let mut closed: Vec<ElementSet> = u
            .ground()
            .full()
            .subsets()
            .filter(|s| u.is_closed(*s))
            .collect();
        closed.sort_by(ElementSet::canonical_cmp);
        let mut expected: Vec<ElementSet> = [
            &[][..],
            &["a"],
            &["b"],
            &["c"],
            &["a", "b"],
            &["b", "c"],
            &["a", "b", "c"],
            &["b", "c", "d"],
            &["a", "b", "c", "d"],
        ]
        .iter()
        .map(|l| set(&u, l))
        .collect();
        expected.sort_by(ElementSet::canonical_cmp);
        assert_eq!(closed, expected);
    }

    #[test]
    fn unconditional_implications_fire_on_empty_seed() {
        let b = ImplicationBasis::new(
            GroundSet::new(["a", "b"]).unwrap(),
            vec![Implication::new(
                ElementSet::empty(),
                ElementSet::singleton(0),
            )],
        )
        .unwrap();
        assert_eq!(b.closure(ElementSet::empty()), ElementSet::singleton(0));
    }

    #[test]
    fn restrict_examples() {
        let b = notsuf();
        let r = b.restrict(set(&b, &["a", "b", "c"])).unwrap();
        assert_eq!(r.n(), 3);
        assert_eq!(r.m(), 1);
        assert_eq!(r.format_implication(&r.implications()[0]), "a b -> c");

        let same = b.restrict(b.ground().full()).unwrap();
        assert_eq!(same.implications(), b.implications());

        let u = un();
        let r = u.restrict(set(&u, &["b", "c", "d"])).unwrap();
        assert_eq!(r.m(), 1);
        assert_eq!(r.format_implication(&r.implications()[0]), "d -> b c");
    }

    #[test]
    fn restricted_closure_examples() {
        let b = notsuf();
        let s = set(&b, &["a", "b", "c"]);
        assert_eq!(
            b.restricted_closure(s, set(&b, &["a", "b"])).unwrap(),
            set(&b, &["a", "b", "c"])
        );
        assert_eq!(
            b.restricted_closure(s, ElementSet::empty()).unwrap(),
            ElementSet::empty()
        );
        assert!(matches!(
            b.restricted_closure(s, set(&b, &["d"])),
            Err(Error::NotASubset { .. })
        ));
    }

    #[test]
    fn out_of_range_elements_are_rejected() {
        let g = GroundSet::new(["a"]).unwrap();
        let err = ImplicationBasis::new(
            g,
            vec![Implication::new(
                ElementSet::singleton(0),
                ElementSet::singleton(3),
            )],
        );
        assert!(matches!(
            err,
            Err(Error::ElementOutOfRange { index: 3, n: 1 })
        ));
    }

    #[test]
    fn sizes() {
        let b = notsuf();
        assert_eq!(b.m(), 3);
        assert_eq!(b.k(), 3 + 3 + 2);
    }
}
