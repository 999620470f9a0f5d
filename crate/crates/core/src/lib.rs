//! Convex geometries given by implicational bases: recognising convex
//! dimension 2, building and verifying segment representations on a line,
//! and counting how many such representations a geometry has.
//!
//! ```
//! use cdim2::{build_representation, decide_cdim2, validate_geometry, ImplicationBasis};
//!
//! let basis = ImplicationBasis::from_labels(
//!     &["a", "b", "c", "d"],
//!     &[(&["d"], &["b", "c"]), (&["a", "c"], &["b"])],
//! )?;
//! let geom = validate_geometry(basis)?;
//! assert!(decide_cdim2(&geom).cdim2);
//! let rep = build_representation(&geom)?;
//! assert_eq!(rep.display(geom.ground()), "(d c b a ∇ c b d a)");
//! # Ok::<(), cdim2::Error>(())
//! ```

pub mod basis;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod properties;
pub mod representation;
pub mod set;
pub mod uniqueness;

pub use basis::{restrict_basis, Implication, ImplicationBasis};
pub use error::{Error, Result};
pub use geometry::{
    enumerate_closed_sets, extreme_points, join_alignments, linear_alignment, validate_geometry,
    validate_geometry_with, Alignment, ConvexGeometry, ExtremeReport, GeometryViolation, Limits,
};
pub use properties::{
    check_2ex, check_2ex_exhaustive, check_caratheodory, check_exr, check_sq, check_sq_exhaustive,
    decide_cdim2, reduce_to_binary_basis, Decision, ExrScope, Property, PropertyReport, Witness,
};
pub use representation::{
    basis_from_representation, brute_force_cdim2, build_representation, build_representation_with,
    normalize_layout, segment_closure, verify_representation, verify_representation_exhaustive,
    BruteForce, BuilderStrategy, LinearOrder, SegmentLayout, SegmentRepresentation, Verification,
};
pub use set::{ElementSet, GroundSet, MAX_ELEMENTS};
pub use uniqueness::{
    block_decomposition, count_representations, enumerate_representations, is_unique,
    reconstruct_by_peeling, Block, BlockDecomposition, Peeling, UniquenessVerdict,
};
