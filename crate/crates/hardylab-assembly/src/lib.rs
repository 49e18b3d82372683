//! Discrete quadratic forms for the singular-potential operator on meridian
//! meshes.
//!
//! A function on the axisymmetric body is represented by its meridian trace,
//! a piecewise-linear field on the `(z, r)` triangulation. Volume integrals
//! reduce to weighted plane integrals against `omega * r^{n-2} dz dr`, with
//! `omega` the area of the unit `(n-2)`-sphere. The crate assembles
//!
//! * the stiffness form `int |grad u|^2`,
//! * the singular mass form `int u^2 / |x|^2` and its `|x|^{-s}` relatives,
//! * the critical-exponent functional `int |u|^{2*(s)} / |x|^s` with its
//!   gradient,
//! * the substitution identity linking `int |grad(rho v)|^2` to
//!   `int rho^2 |grad v|^2`, and
//! * a weighted interpolation inequality margin on half-space-shaped bodies.
//!
//! Elements touching the origin integrate in polar form: the radial direction
//! factors into exact power moments and only the cross-edge direction is
//! quadratured, so the singular weights never meet a quadrature point at the
//! origin itself.

mod ckn;
mod forms;
mod gauss;
mod hs;
mod identity;
mod local;
mod sparse;

pub use ckn::ckn_margin;
pub use forms::{
    assemble_hardy, assemble_stiffness, assemble_weighted_mass, integrate_gradient_sq,
    integrate_weighted_sq, Quadrature,
};
pub use gauss::{gauss01, gauss_legendre};
pub use hs::hs_functional;
pub use identity::hardy_identity_residual;
pub use sparse::{FreeMap, SymmetricOperator};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AssemblyError {
    #[error("dimension n = {0} must be at least 3")]
    Dimension(usize),
    #[error("element {element} has non-positive doubled area {area2:.3e}")]
    SingularElement { element: usize, area2: f64 },
    #[error("mesh has no node marked as the origin")]
    NoOrigin,
    #[error("non-finite value while assembling {what} on element {element}")]
    NonFinite { what: &'static str, element: usize },
    #[error("weight requires positive axial coordinate, found z = {z:.3e} on element {element}")]
    WeightSign { element: usize, z: f64 },
    #[error("exponent outside the admissible range: {0}")]
    BadExponent(String),
    #[error(transparent)]
    Param(#[from] hardylab_params::ParamError),
}
