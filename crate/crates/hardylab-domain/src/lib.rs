//! Axisymmetric computational domains whose boundary passes through the
//! origin, where the inverse-square potential is centred.
//!
//! The crate provides:
//! - generating curves in the meridian `(z, r)` half-plane with validation
//!   (simplicity, axis orthogonality, origin incidence);
//! - preset shapes: tangent ball, half ball, chopped ball, bumped half ball,
//!   and custom curves;
//! - exact mean curvature of the boundary at the origin and meridian distance
//!   to the boundary;
//! - a deterministic Delaunay mesher with geometric grading toward the origin
//!   and a guaranteed minimum-angle floor;
//! - JSON domain files with exact float round-trips and a plain-text mesh
//!   dump format.
//!
//! Domains are bodies of revolution in dimension `n >= 3`. Working in the
//! meridian plane is justified by symmetry of the associated variational
//! problems: minimizers on such domains can be taken axisymmetric, so all
//! assembly downstream happens on the meridian triangulation.

mod curve;
mod domain;
mod io;
mod mesh;
mod mesher;

pub use curve::{CurveSegment, GeneratingCurve, SegmentKind, GEOM_TOL};
pub use domain::{bump_profile, make_domain, AxisymmetricDomain, Preset};
pub use io::{domain_from_json, domain_to_json, mesh_from_text, mesh_to_text};
pub use mesh::{Grading, Mesh, MeshStats, NodeMarker};
pub use mesher::{generate_mesh, MeshOptions};

use thiserror::Error;

/// Errors arising from curve validation, geometric queries, and meshing.
#[derive(Debug, Error)]
pub enum DomainError {
    #[error("curve is not simple: segments {0} and {1} intersect")]
    SelfIntersection(usize, usize),
    #[error("the origin (0, 0) does not lie on the curve")]
    OriginMissing,
    #[error("curve meets the axis non-orthogonally at ({0}, {1}); |axial tangent| = {2:.3e}")]
    AxisNotOrthogonal(f64, f64, f64),
    #[error("curve reaches negative radius r = {0}")]
    NegativeRadius(f64),
    #[error("chain endpoint ({0}, {1}) is off the axis")]
    ChainEndpointOffAxis(f64, f64),
    #[error("invalid preset: {0}")]
    InvalidPreset(String),
    #[error("mean curvature undefined at the origin: {0}")]
    CurvatureUndefined(String),
    #[error("point ({0}, {1}) lies outside the closure of the domain")]
    PointOutsideDomain(f64, f64),
    #[error("meshing failed: {0}")]
    Meshing(String),
    #[error("mesh quality: {0}")]
    Quality(String),
    #[error("domain file: {0}")]
    File(String),
}
