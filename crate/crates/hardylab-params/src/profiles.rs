//! Model profiles x₁|x|^{-α}, the Kelvin transform, and a finite-difference
//! residual check of the closed-form identity -Δ(x₁|x|^{-α}) = α(n-α)x₁|x|^{-α-2}.

use crate::norm;

/// Step used by the residual check; chosen so that the O(h²) truncation error
/// stays below 1e-6 at moderate radii.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// The model solution x ↦ x₁|x|^{-α} of L_γ u = 0 on the half-space,
/// with γ = α(n-α).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormSolution {
    pub alpha: f64,
}

impl ClosedFormSolution {
    pub fn new(alpha: f64) -> Self {
        ClosedFormSolution { alpha }
    }

    /// Evaluate x₁|x|^{-α}. Requires |x| > 0.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let r = norm(x);
        debug_assert!(r > 0.0, "model profile undefined at the origin");
        x[0] * r.powf(-self.alpha)
    }

    /// Closed-form value of -Δ(x₁|x|^{-α}) = α(n-α)x₁|x|^{-α-2}.
    pub fn minus_laplacian(&self, n: usize, x: &[f64]) -> f64 {
        let r = norm(x);
        debug_assert!(r > 0.0);
        self.alpha * (n as f64 - self.alpha) * x[0] * r.powf(-self.alpha - 2.0)
    }
}

/// Kelvin transform u ↦ |x|^{2-n} u(x/|x|²).
///
/// An involution on functions of n variables; on the model profiles it swaps
/// α_- and α_+ because x₁|x|^{-α} maps to x₁|x|^{-(n-α)}. The returned
/// evaluator panics at x = 0, where the inversion is undefined.
pub fn kelvin_transform<F>(u: F, n: usize) -> impl Fn(&[f64]) -> f64
where
    F: Fn(&[f64]) -> f64,
{
    move |x: &[f64]| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        assert!(r2 > 0.0, "Kelvin transform undefined at the origin");
        let inverted: Vec<f64> = x.iter().map(|v| v / r2).collect();
        r2.powf((2.0 - n as f64) / 2.0) * u(&inverted)
    }
}

/// Relative residual of the identity -Δ(x₁|x|^{-α}) = α(n-α)x₁|x|^{-α-2} at x,
/// with the Laplacian replaced by central second differences of step h.
///
/// Converges at rate O(h²). When the right-hand side vanishes (α(n-α) = 0, or
/// x₁ = 0) the residual is absolute instead of relative. Keep |x| within
/// roughly [0.1, 10]; far outside, truncation or cancellation in the h²
/// differences dominates the quantity being measured.
pub fn laplacian_identity_residual(alpha: f64, n: usize, x: &[f64], h: f64) -> f64 {
    assert_eq!(x.len(), n, "point dimension mismatch");
    assert!(norm(x) > 0.0, "residual undefined at the origin");
    let sol = ClosedFormSolution::new(alpha);
    let mut lap = 0.0;
    let mut xp = x.to_vec();
    let center = sol.eval(x);
    for i in 0..n {
        xp[i] = x[i] + h;
        let up = sol.eval(&xp);
        xp[i] = x[i] - h;
        let um = sol.eval(&xp);
        xp[i] = x[i];
        lap += (up - 2.0 * center + um) / (h * h);
    }
    let rhs = sol.minus_laplacian(n, x);
    let diff = (-lap - rhs).abs();
    if rhs == 0.0 {
        diff
    } else {
        diff / rhs.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha_exponents;
    use approx::assert_relative_eq;

    #[test]
    fn harmonic_profile_has_zero_residual() {
        // alpha = 0 gives u = x1, exactly harmonic; residual is absolute here.
        let res = laplacian_identity_residual(0.0, 3, &[0.7, 0.2, -0.4], DEFAULT_FD_STEP);
        assert!(res < 1e-8, "absolute residual {res}");
    }

    #[test]
    fn contract_example_points_meet_tolerance() {
        let a = alpha_exponents(3, 2.0).unwrap();
        let res = laplacian_identity_residual(a.minus, 3, &[1.0, 0.5, 0.0], DEFAULT_FD_STEP);
        assert!(res < 1e-6, "residual {res}");
        let a4 = alpha_exponents(4, 3.0).unwrap();
        let res = laplacian_identity_residual(a4.plus, 4, &[0.3, 1.0, 0.0, 0.0], DEFAULT_FD_STEP);
        assert!(res < 1e-6, "residual {res}");
    }

    #[test]
    fn kelvin_swaps_model_profiles() {
        let pair = alpha_exponents(3, 2.0).unwrap();
        let minus_profile = ClosedFormSolution::new(pair.minus);
        let plus_profile = ClosedFormSolution::new(pair.plus);
        let transformed = kelvin_transform(move |x: &[f64]| minus_profile.eval(x), 3);
        for &x in &[[0.5, 0.2, 0.1], [2.0, -1.0, 0.3], [0.1, 0.0, 0.0]] {
            assert_relative_eq!(
                transformed(&x),
                plus_profile.eval(&x),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    #[should_panic(expected = "undefined at the origin")]
    fn kelvin_rejects_origin() {
        let t = kelvin_transform(|x: &[f64]| x[0], 3);
        t(&[0.0, 0.0, 0.0]);
    }
}
