//! Bundled example geometries with their expected properties, and seeded
//! generators of random geometries.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::basis::{Implication, ImplicationBasis};
use crate::cli::parse_geometry;
use crate::error::{Error, Result};
use crate::geometry::{validate_geometry, ConvexGeometry};
use crate::properties::{check_2ex, check_caratheodory, check_sq, decide_cdim2, Witness};
use crate::representation::{
    basis_from_representation, build_representation, SegmentRepresentation,
};
use crate::set::{ElementSet, GroundSet};
use crate::uniqueness::{enumerate_representations, is_unique};

const MANIFEST: &str = include_str!("../fixtures/manifest.json");

const FILES: &[(&str, &str)] = &[
    ("notsuf.geom", include_str!("../fixtures/notsuf.geom")),
    ("un.geom", include_str!("../fixtures/un.geom")),
    ("switch.geom", include_str!("../fixtures/switch.geom")),
    ("unique.geom", include_str!("../fixtures/unique.geom")),
    ("seven.geom", include_str!("../fixtures/seven.geom")),
    ("triangle.geom", include_str!("../fixtures/triangle.geom")),
    (
        "five_point.geom",
        include_str!("../fixtures/five_point.geom"),
    ),
    ("chain.geom", include_str!("../fixtures/chain.geom")),
];

/// Attempts allowed to [`random_geometry`] before giving up.
pub const REJECTION_BUDGET: usize = 10_000;

#[derive(Deserialize)]
struct Manifest {
    fixtures: Vec<Expected>,
}

/// `Ex(subset) = {a,b}`, `Ex(subset∖a) = {c,b}`, `Ex(subset∖{a,b}) = {c,d}`
/// and `Ex(subset∖b) = observed`, by label.
#[derive(Clone, Debug, Deserialize)]
pub struct SqLabels {
    pub subset: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub observed: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Expected {
    pub name: String,
    pub file: String,
    pub two_ex: bool,
    pub caratheodory2: bool,
    pub sq: Option<bool>,
    pub cdim2: bool,
    pub sq_witness: Option<SqLabels>,
    /// Chain displays of every representation.
    #[serde(default)]
    pub representations: Vec<String>,
    pub unique: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub text: &'static str,
    pub geometry: ConvexGeometry,
    pub expected: Expected,
}

impl Fixture {
    /// Expected representations, canonical and sorted.
    pub fn representations(&self) -> Result<Vec<SegmentRepresentation>> {
        let mut reps = self
            .expected
            .representations
            .iter()
            .map(|d| SegmentRepresentation::parse_display(d, self.geometry.ground()))
            .collect::<Result<Vec<_>>>()?;
        reps.sort();
        Ok(reps)
    }
}

fn manifest() -> Vec<Expected> {
    serde_json::from_str::<Manifest>(MANIFEST)
        .expect("bundled manifest is valid")
        .fixtures
}

pub fn fixture_names() -> Vec<String> {
    manifest().into_iter().map(|e| e.name).collect()
}

fn mismatch(name: &str, detail: impl Into<String>) -> Error {
    Error::FixtureMismatch {
        name: name.to_string(),
        detail: detail.into(),
    }
}

/// Loads a bundled fixture and re-checks every expectation recorded for it.
pub fn load_fixture(name: &str) -> Result<Fixture> {
    let expected = manifest()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    let text = FILES
        .iter()
        .find(|(file, _)| *file == expected.file)
        .map(|(_, text)| *text)
        .ok_or_else(|| mismatch(name, format!("missing file {}", expected.file)))?;
    let basis = parse_geometry(text).map_err(|e| mismatch(name, e.to_string()))?;
    let geometry = validate_geometry(basis)?;
    let fixture = Fixture {
        name: name.to_string(),
        text,
        geometry,
        expected,
    };
    check_expectations(&fixture)?;
    Ok(fixture)
}

fn check_expectations(fixture: &Fixture) -> Result<()> {
    let (name, geom, exp) = (&fixture.name, &fixture.geometry, &fixture.expected);
    let same = |what: &str, expected: bool, found: bool| {
        if expected == found {
            Ok(())
        } else {
            Err(mismatch(
                name,
                format!("{what}: expected {expected}, found {found}"),
            ))
        }
    };
    same("2Ex", exp.two_ex, check_2ex(geom).holds)?;
    same("C2", exp.caratheodory2, check_caratheodory(geom, 2)?.holds)?;
    let sq = check_sq(geom);
    if let Some(expected) = exp.sq {
        same("Sq", expected, sq.holds)?;
    }
    same("cdim2", exp.cdim2, decide_cdim2(geom).cdim2)?;
    if let Some(w) = &exp.sq_witness {
        let ground = geom.ground();
        let one = |l: &str| {
            ground
                .index_of(l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let many = |l: &str| ground.set_of(l.split_whitespace());
        let wanted = Witness::Sq {
            subset: many(&w.subset)?,
            a: one(&w.a)?,
            b: one(&w.b)?,
            c: one(&w.c)?,
            d: one(&w.d)?,
            observed: many(&w.observed)?,
        };
        if sq.witness != Some(wanted) {
            return Err(mismatch(name, format!("Sq witness {:?}", sq.witness)));
        }
    }
    if exp.cdim2 {
        let rep = build_representation(geom)?;
        let all = enumerate_representations(&rep, geom.limits().blocks)?;
        if all != fixture.representations()? {
            return Err(mismatch(name, "representations differ"));
        }
        if let Some(unique) = exp.unique {
            same("unique", unique, is_unique(&rep).unique)?;
        }
    }
    Ok(())
}

/// Draws `round(density * n)` implications with one- or two-element
/// premises and a single conclusion, and keeps the first draw that is a
/// convex geometry.
pub fn random_geometry(n: usize, seed: u64, density: f64) -> Result<ConvexGeometry> {
    let ground = GroundSet::numbered(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n < 2 {
        return validate_geometry(ImplicationBasis::free(ground));
    }
    let m = (density * n as f64).round() as usize;
    let elements: Vec<usize> = (0..n).collect();
    for _ in 0..REJECTION_BUDGET {
        let implications = (0..m)
            .map(|_| {
                let size = if n > 2 { rng.gen_range(1..=2) } else { 1 };
                let picked: Vec<usize> = elements
                    .choose_multiple(&mut rng, size + 1)
                    .copied()
                    .collect();
                Implication::new(
                    picked[..size].iter().copied().collect(),
                    ElementSet::singleton(picked[size]),
                )
            })
            .collect();
        let basis = ImplicationBasis::new(ground.clone(), implications)?;
        match validate_geometry(basis) {
            Ok(geom) => return Ok(geom),
            Err(Error::NotAGeometry(_)) => continue,
            Err(other) => return Err(other),
        }
    }
    Err(Error::RejectionBudgetExceeded(REJECTION_BUDGET))
}

/// Geometry of two uniformly random chains, so convex dimension at most 2.
pub fn random_cdim2_geometry(
    n: usize,
    seed: u64,
) -> Result<(ConvexGeometry, SegmentRepresentation)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut left: Vec<usize> = (0..n).collect();
    let mut right = left.clone();
    left.shuffle(&mut rng);
    right.shuffle(&mut rng);
    let rep = SegmentRepresentation::from_sequences(left, right)?;
    let basis = basis_from_representation(GroundSet::numbered(n)?, &rep)?;
    Ok((validate_geometry(basis)?, rep))
}
