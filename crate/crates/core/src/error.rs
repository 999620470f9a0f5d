use thiserror::Error;

use crate::geometry::GeometryViolation;
use crate::properties::Witness;
use crate::set::ElementSet;

#[derive(Debug, Error)]
pub enum Error {
    #[error("label {0:?} is empty or contains whitespace")]
    InvalidLabel(String),
    #[error("element {0:?} declared twice")]
    DuplicateLabel(String),
    #[error("unknown element {0:?}")]
    UnknownLabel(String),
    #[error("element index {index} outside a ground set of {n} elements")]
    ElementOutOfRange { index: usize, n: usize },
    #[error("ground set has {n} elements, limit is {limit}")]
    GroundSetTooLarge { n: usize, limit: usize },
    #[error("ground sets differ ({left} vs {right} elements)")]
    GroundSetMismatch { left: usize, right: usize },
    #[error("{subset:?} is not contained in {superset:?}")]
    NotASubset {
        subset: ElementSet,
        superset: ElementSet,
    },
    #[error("not a convex geometry: {0}")]
    NotAGeometry(GeometryViolation),
    #[error("2-Caratheodory property fails: {0}")]
    CaratheodoryFails(Witness),
    #[error("no segment representation ({stage}) at subset {subset:?}")]
    Infeasible {
        stage: &'static str,
        subset: ElementSet,
    },
    #[error("representation is not determined by extreme points: ambiguity at {subset:?}")]
    NotApplicable { subset: ElementSet },
    #[error("{0} is not a permutation of the ground set")]
    NotAPermutation(&'static str),
    #[error("endpoint {0} is shared by two intervals")]
    DuplicateEndpoint(f64),
    #[error("interval {index} has left endpoint {left} not below right endpoint {right}")]
    InvalidInterval { index: usize, left: f64, right: f64 },
    #[error("{s} switchable blocks exceed the limit of {limit}")]
    TooManyBlocks { s: usize, limit: usize },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("fixture {name}: {detail}")]
    FixtureMismatch { name: String, detail: String },
    #[error("no convex geometry found after {0} attempts")]
    RejectionBudgetExceeded(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
