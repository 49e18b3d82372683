//! Parameter algebra for the operator L_γ = -Δ - γ/|x|² with the singularity
//! placed on the boundary of the domain.
//!
//! Everything in this crate is closed-form: no meshes, no linear algebra.
//! It provides
//!
//! - the characteristic exponents α_±(γ), roots of α(n-α) = γ, and the
//!   critical Hardy-Sobolev exponent 2*(s) = 2(n-s)/(n-2),
//! - the Hardy constants of model cones (half-space, orthant-type cones,
//!   and the interior-singularity constant as the degenerate case),
//! - the model profiles x₁|x|^{-α} that govern boundary behaviour, together
//!   with a finite-difference residual check of -Δ(x₁|x|^{-α}) = α(n-α)x₁|x|^{-α-2},
//! - the Kelvin transform u ↦ |x|^{2-n} u(x/|x|²), which swaps the two profiles,
//! - the dictionary between (γ, s) and the weighted-inequality parameters (a, b, q),
//! - the best Sobolev constant 1/K(n,2)² from the explicit radial bubble,
//! - unit sphere areas ω_m and a small adaptive quadrature utility.
//!
//! Dimensions are restricted to n ≥ 3 throughout; γ must stay below n²/4, the
//! Hardy constant of the half-space, for the exponents to be real.

pub mod ckn;
pub mod constants;
pub mod exponents;
pub mod profiles;
pub mod quad;

pub use ckn::{ckn_to_hardy, hardy_to_ckn, CknParams};
pub use constants::{sobolev_constant, sphere_area};
pub use exponents::{
    alpha_exponents, cone_hardy_constant, critical_exponent, gamma_from_alpha, ExponentPair,
};
pub use profiles::{kelvin_transform, laplacian_identity_residual, ClosedFormSolution};

/// Errors for parameter validation and closed-form evaluations.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamError {
    /// Dimension below 3; the critical exponent 2(n-s)/(n-2) degenerates at n = 2.
    DimensionTooSmall { n: usize },
    /// γ at or above n²/4, where the exponents α_± leave the real line.
    GammaAboveHalfSpace { gamma: f64, limit: f64 },
    /// Weight exponent s outside the admissible interval.
    SOutOfRange { s: f64, max_inclusive: f64 },
    /// Cone index k outside 0..=n.
    ConeIndexOutOfRange { k: usize, n: usize },
    /// γ above (n-2)²/4 has no representation in the (a, b) parameter plane.
    NoCknRepresentation { gamma: f64, threshold: f64 },
    /// A (a, b, q) triple violating its defining constraints.
    InvalidCkn(String),
}

impl std::fmt::Display for ParamError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamError::DimensionTooSmall { n } => {
                write!(f, "dimension n = {n} is below the minimum 3")
            }
            ParamError::GammaAboveHalfSpace { gamma, limit } => write!(
                f,
                "gamma = {gamma} is not below the half-space Hardy constant n²/4 = {limit}"
            ),
            ParamError::SOutOfRange { s, max_inclusive } => {
                write!(f, "s = {s} outside [0, {max_inclusive}]")
            }
            ParamError::ConeIndexOutOfRange { k, n } => {
                write!(f, "cone index k = {k} outside 0..={n}")
            }
            ParamError::NoCknRepresentation { gamma, threshold } => write!(
                f,
                "gamma = {gamma} exceeds (n-2)²/4 = {threshold}; no real parameter a exists"
            ),
            ParamError::InvalidCkn(msg) => write!(f, "invalid weighted-inequality parameters: {msg}"),
        }
    }
}

impl std::error::Error for ParamError {}

/// Validated (n, γ, s) triple for the Hardy-Sobolev quotient.
///
/// Invariants enforced at construction: n ≥ 3, γ < n²/4 and 0 ≤ s < 2.
/// The upper bound on γ is the half-space Hardy constant, the largest value
/// any domain with the singularity on its boundary can reach.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardyParams {
    pub n: usize,
    pub gamma: f64,
    pub s: f64,
}

impl HardyParams {
    pub fn new(n: usize, gamma: f64, s: f64) -> Result<Self, ParamError> {
        if n < 3 {
            return Err(ParamError::DimensionTooSmall { n });
        }
        let limit = (n * n) as f64 / 4.0;
        if gamma.is_nan() || gamma >= limit {
            return Err(ParamError::GammaAboveHalfSpace { gamma, limit });
        }
        if !(0.0..2.0).contains(&s) {
            return Err(ParamError::SOutOfRange {
                s,
                max_inclusive: 2.0,
            });
        }
        Ok(HardyParams { n, gamma, s })
    }

    /// Characteristic exponents α_±(γ) for these parameters.
    pub fn alpha(&self) -> ExponentPair {
        alpha_exponents(self.n, self.gamma).expect("validated at construction")
    }

    /// Critical exponent 2*(s) = 2(n-s)/(n-2).
    pub fn two_star(&self) -> f64 {
        2.0 * (self.n as f64 - self.s) / (self.n as f64 - 2.0)
    }

    /// Half-space Hardy constant n²/4, the supremum of admissible γ.
    pub fn half_space_limit(&self) -> f64 {
        (self.n * self.n) as f64 / 4.0
    }

    /// Interior-singularity Hardy constant (n-2)²/4.
    pub fn interior_constant(&self) -> f64 {
        ((self.n - 2) * (self.n - 2)) as f64 / 4.0
    }

    /// Threshold (n²-1)/4 separating the curvature regime (below) from the
    /// mass regime (above); equivalent to the profile gap α_+ - α_- crossing 1.
    pub fn regime_threshold(&self) -> f64 {
        ((n_sq(self.n)) - 1.0) / 4.0
    }
}

fn n_sq(n: usize) -> f64 {
    (n * n) as f64
}

/// Euclidean norm of a point given as a slice.
pub(crate) fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}
