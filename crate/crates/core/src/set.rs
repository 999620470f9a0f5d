//! Ground sets and subsets of them.
//!
//! Elements are addressed by their index in declaration order. An
//! [`ElementSet`] is a 128-bit mask, so a ground set holds at most
//! [`MAX_ELEMENTS`] elements.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest ground set an [`ElementSet`] can address.
pub const MAX_ELEMENTS: usize = 128;

/// Ordered list of distinct element labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut index = HashMap::new();
        for label in labels {
            let label = label.into();
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(Error::InvalidLabel(label));
            }
            if index.contains_key(&label) {
                return Err(Error::DuplicateLabel(label));
            }
            if names.len() == MAX_ELEMENTS {
                return Err(Error::GroundSetTooLarge {
                    n: names.len() + 1,
                    limit: MAX_ELEMENTS,
                });
            }
            index.insert(label.clone(), names.len());
            names.push(label);
        }
        Ok(GroundSet { names, index })
    }

    /// Ground set labelled `0`, `1`, ... `n-1`.
    pub fn numbered(n: usize) -> Result<Self> {
        GroundSet::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, element: usize) -> &str {
        &self.names[element]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// The whole ground set as an [`ElementSet`].
    pub fn full(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    /// Parses labels into a set, failing on the first unknown label.
    pub fn set_of<'a, I>(&self, labels: I) -> Result<ElementSet>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut set = ElementSet::empty();
        for label in labels {
            let i = self
                .index_of(label)
                .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    /// Sub-ground-set holding the members of `subset`, in the original order.
    pub fn restrict(&self, subset: ElementSet) -> GroundSet {
        let names: Vec<String> = subset.iter().map(|i| self.names[i].clone()).collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        GroundSet { names, index }
    }

    /// Space-separated labels of the members of `set`.
    pub fn format(&self, set: ElementSet) -> String {
        set.iter()
            .map(|i| self.names[i].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// `{a, b, c}` style rendering.
    pub fn format_braced(&self, set: ElementSet) -> String {
        let inner = set
            .iter()
            .map(|i| self.names[i].as_str())
            .collect::<Vec<_>>()
            .join(", ");
        format!("{{{inner}}}")
    }
}

/// Subset of a ground set, stored as a bit mask over element indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ElementSet(u128);

impl ElementSet {
    pub const fn empty() -> Self {
        ElementSet(0)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            ElementSet(u128::MAX)
        } else {
            ElementSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(element: usize) -> Self {
        ElementSet(1u128 << element)
    }

    pub fn pair(a: usize, b: usize) -> Self {
        ElementSet((1u128 << a) | (1u128 << b))
    }

    pub const fn from_bits(bits: u128) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, element: usize) -> bool {
        element < MAX_ELEMENTS && self.0 >> element & 1 == 1
    }

    pub fn insert(&mut self, element: usize) {
        self.0 |= 1u128 << element;
    }

    pub fn remove(&mut self, element: usize) {
        self.0 &= !(1u128 << element);
    }

    pub fn with(self, element: usize) -> Self {
        ElementSet(self.0 | 1u128 << element)
    }

    pub fn without(self, element: usize) -> Self {
        ElementSet(self.0 & !(1u128 << element))
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    /// Complement within a ground set of `n` elements.
    pub fn complement(self, n: usize) -> Self {
        ElementSet::full(n).difference(self)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest member.
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros() as usize)
    }

    /// Members in increasing index order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Every subset of `self`, in increasing numeric order of the mask.
    pub fn subsets(self) -> Subsets {
        Subsets {
            set: self.0,
            next: Some(0),
        }
    }

    /// Renumbers the members of `self` by their rank inside `within`.
    ///
    /// `self` must be a subset of `within`.
    pub fn compress(self, within: ElementSet) -> ElementSet {
        let mut out = ElementSet::empty();
        for (rank, element) in within.iter().enumerate() {
            if self.contains(element) {
                out.insert(rank);
            }
        }
        out
    }

    /// Inverse of [`ElementSet::compress`].
    pub fn expand(self, within: ElementSet) -> ElementSet {
        let mut out = ElementSet::empty();
        for (rank, element) in within.iter().enumerate() {
            if self.contains(rank) {
                out.insert(element);
            }
        }
        out
    }

    /// Canonical order used for every reported family and witness: by size,
    /// then by bit pattern.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut set = ElementSet::empty();
        for i in iter {
            set.insert(i);
        }
        set
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

pub struct Members(u128);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Subsets of a mask via the carry-rippler trick.
pub struct Subsets {
    set: u128,
    next: Option<u128>,
}

impl Iterator for Subsets {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        let current = self.next?;
        let following = current.wrapping_sub(self.set) & self.set;
        self.next = (following != 0).then_some(following);
        Some(ElementSet(current))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_must_be_unique_and_non_empty() {
        assert!(matches!(
            GroundSet::new(["a", "b", "a"]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(GroundSet::new([""]), Err(Error::InvalidLabel(_))));
        let g = GroundSet::new(["x", "y"]).unwrap();
        assert_eq!(g.index_of("y"), Some(1));
        assert_eq!(g.index_of("z"), None);
    }

    #[test]
    fn ground_set_size_is_capped() {
        assert!(GroundSet::numbered(MAX_ELEMENTS).is_ok());
        assert!(matches!(
            GroundSet::numbered(MAX_ELEMENTS + 1),
            Err(Error::GroundSetTooLarge { .. })
        ));
        assert_eq!(ElementSet::full(MAX_ELEMENTS).len(), MAX_ELEMENTS);
        assert_eq!(ElementSet::full(MAX_ELEMENTS).last(), Some(127));
    }

    #[test]
    fn subsets_enumerates_every_submask() {
        let s = ElementSet::from_iter([0, 2, 4]);
        let all: Vec<u128> = s.subsets().map(|x| x.bits()).collect();
        assert_eq!(all, vec![0, 1, 4, 5, 16, 17, 20, 21]);
        assert_eq!(ElementSet::empty().subsets().count(), 1);
    }

    #[test]
    fn compress_and_expand_are_inverse() {
        let within = ElementSet::from_iter([1, 3, 4, 7]);
        let s = ElementSet::from_iter([3, 7]);
        let c = s.compress(within);
        assert_eq!(c, ElementSet::from_iter([1, 3]));
        assert_eq!(c.expand(within), s);
    }

    #[test]
    fn canonical_order_is_size_then_bits() {
        let mut v = vec![
            ElementSet::from_iter([0, 1]),
            ElementSet::from_iter([2]),
            ElementSet::empty(),
            ElementSet::from_iter([0]),
        ];
        v.sort_by(ElementSet::canonical_cmp);
        assert_eq!(
            v,
            vec![
                ElementSet::empty(),
                ElementSet::from_iter([0]),
                ElementSet::from_iter([2]),
                ElementSet::from_iter([0, 1]),
            ]
        );
    }

    #[test]
    fn set_algebra() {
        let a = ElementSet::from_iter([0, 1, 2]);
        let b = ElementSet::from_iter([1, 3]);
        assert_eq!(a.union(b), ElementSet::from_iter([0, 1, 2, 3]));
        assert_eq!(a.intersection(b), ElementSet::singleton(1));
        assert_eq!(a.difference(b), ElementSet::pair(0, 2));
        assert_eq!(b.complement(4), ElementSet::pair(0, 2));
        assert!(ElementSet::pair(0, 2).is_subset(a));
        assert_eq!(a.first(), Some(0));
        assert_eq!(a.last(), Some(2));
    }
}
