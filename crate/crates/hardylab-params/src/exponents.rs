//! Characteristic exponents and model-cone Hardy constants.

use crate::ParamError;

/// The pair α_-(γ) ≤ α_+(γ) of roots of α(n-α) = γ.
///
/// α_- is the variational ("small") exponent: x₁|x|^{-α_-} is the profile of
/// finite-energy solutions, x₁|x|^{-α_+} the singular one. The pair satisfies
/// α_- + α_+ = n and α_-·α_+ = γ exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPair {
    pub minus: f64,
    pub plus: f64,
}

impl ExponentPair {
    pub fn sum(&self) -> f64 {
        self.minus + self.plus
    }

    pub fn product(&self) -> f64 {
        self.minus * self.plus
    }

    /// Gap α_+ - α_-; exceeds 1 exactly when γ < (n²-1)/4.
    pub fn gap(&self) -> f64 {
        self.plus - self.minus
    }
}

/// Roots α_±(γ) = n/2 ± √(n²/4 - γ) of α(n-α) = γ.
///
/// Rejects γ ≥ n²/4 (complex roots) and n < 3.
pub fn alpha_exponents(n: usize, gamma: f64) -> Result<ExponentPair, ParamError> {
    if n < 3 {
        return Err(ParamError::DimensionTooSmall { n });
    }
    let half_n = n as f64 / 2.0;
    let disc = half_n * half_n - gamma;
    if disc.is_nan() || disc <= 0.0 {
        return Err(ParamError::GammaAboveHalfSpace {
            gamma,
            limit: half_n * half_n,
        });
    }
    let root = disc.sqrt();
    Ok(ExponentPair {
        minus: half_n - root,
        plus: half_n + root,
    })
}

/// The map α ↦ α(n-α), inverse of `alpha_exponents` on either branch.
pub fn gamma_from_alpha(n: usize, alpha: f64) -> f64 {
    alpha * (n as f64 - alpha)
}

/// Critical Hardy-Sobolev exponent 2*(s) = 2(n-s)/(n-2).
///
/// Interpolates between the Sobolev exponent 2n/(n-2) at s = 0 and the Hardy
/// endpoint 2 at s = 2; both endpoints are admissible here.
pub fn critical_exponent(n: usize, s: f64) -> Result<f64, ParamError> {
    if n < 3 {
        return Err(ParamError::DimensionTooSmall { n });
    }
    if !(0.0..=2.0).contains(&s) {
        return Err(ParamError::SOutOfRange {
            s,
            max_inclusive: 2.0,
        });
    }
    Ok(2.0 * (n as f64 - s) / (n as f64 - 2.0))
}

/// Hardy constant ((n + 2k - 2)/2)² of the model cone
/// {x : x₁ > 0, ..., x_k > 0} with the singularity at its tip.
///
/// k = 0 is the degenerate cone ℝⁿ (singularity in the interior), giving the
/// classical constant (n-2)²/4; k = 1 is the half-space with n²/4. The
/// constant is optimal but never attained. Rejects k > n.
pub fn cone_hardy_constant(n: usize, k: usize) -> Result<f64, ParamError> {
    if n < 3 {
        return Err(ParamError::DimensionTooSmall { n });
    }
    if k > n {
        return Err(ParamError::ConeIndexOutOfRange { k, n });
    }
    let half = (n as f64 + 2.0 * k as f64 - 2.0) / 2.0;
    Ok(half * half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exponent_pair_algebra() {
        let p = alpha_exponents(3, 2.0).unwrap();
        assert_relative_eq!(p.minus, 1.0, max_relative = 1e-14);
        assert_relative_eq!(p.plus, 2.0, max_relative = 1e-14);
        assert_relative_eq!(p.sum(), 3.0, max_relative = 1e-14);
        assert_relative_eq!(p.product(), 2.0, max_relative = 1e-14);
    }

    #[test]
    fn negative_gamma_gives_exponents_outside_zero_n() {
        let p = alpha_exponents(3, -1.0).unwrap();
        assert!(p.minus < 0.0);
        assert!(p.plus > 3.0);
        assert_relative_eq!(gamma_from_alpha(3, p.plus), -1.0, max_relative = 1e-12);
    }

    #[test]
    fn rejects_gamma_at_and_above_limit() {
        assert!(alpha_exponents(3, 2.25).is_err());
        assert!(alpha_exponents(3, 5.0).is_err());
        assert!(alpha_exponents(4, 4.0).is_err());
    }

    #[test]
    fn cone_constants_interpolate_interior_and_half_space() {
        assert_relative_eq!(cone_hardy_constant(3, 0).unwrap(), 0.25);
        assert_relative_eq!(cone_hardy_constant(3, 1).unwrap(), 2.25);
        assert_relative_eq!(cone_hardy_constant(4, 1).unwrap(), 4.0);
        assert_relative_eq!(cone_hardy_constant(3, 3).unwrap(), 12.25);
        assert!(cone_hardy_constant(3, 4).is_err());
    }

    #[test]
    fn critical_exponent_endpoints() {
        assert_relative_eq!(critical_exponent(3, 0.0).unwrap(), 6.0);
        assert_relative_eq!(critical_exponent(3, 2.0).unwrap(), 2.0);
        assert_relative_eq!(critical_exponent(5, 1.0).unwrap(), 8.0 / 3.0);
        assert!(critical_exponent(3, 2.1).is_err());
        assert!(critical_exponent(3, -0.1).is_err());
    }
}
