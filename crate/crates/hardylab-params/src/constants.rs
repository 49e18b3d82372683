//! Sphere areas and the best Sobolev constant from the explicit radial bubble.

use crate::quad::integrate_half_line;
use crate::ParamError;

/// Area ω_m of the unit sphere S^m ⊂ ℝ^{m+1}, by the two-step recursion
/// ω_m = 2π/(m-1) · ω_{m-2} with ω_0 = 2 and ω_1 = 2π.
pub fn sphere_area(m: usize) -> f64 {
    match m {
        0 => 2.0,
        1 => 2.0 * std::f64::consts::PI,
        _ => 2.0 * std::f64::consts::PI / (m as f64 - 1.0) * sphere_area(m - 2),
    }
}

/// Best Sobolev constant 1/K(n,2)² = inf ∫|∇u|² / (∫|u|^{2n/(n-2)})^{(n-2)/n},
/// evaluated on the extremal bubble U(x) = (1+|x|²)^{-(n-2)/2} by radial
/// quadrature. The infimum over all of ℝⁿ is attained at U, so the quotient
/// at U is the constant itself.
pub fn sobolev_constant(n: usize) -> Result<f64, ParamError> {
    if n < 3 {
        return Err(ParamError::DimensionTooSmall { n });
    }
    let nf = n as f64;
    let area = sphere_area(n - 1);
    // |U'(ρ)|² = (n-2)² ρ² (1+ρ²)^{-n}
    let grad = area
        * (nf - 2.0)
        * (nf - 2.0)
        * integrate_half_line(
            &|rho: f64| rho.powi(n as i32 + 1) * (1.0 + rho * rho).powf(-nf),
            1e-13,
        );
    // U^{2n/(n-2)} = (1+ρ²)^{-n}
    let den = area
        * integrate_half_line(
            &|rho: f64| rho.powi(n as i32 - 1) * (1.0 + rho * rho).powf(-nf),
            1e-13,
        );
    Ok(grad / den.powf((nf - 2.0) / nf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn low_sphere_areas() {
        assert_relative_eq!(sphere_area(1), 2.0 * std::f64::consts::PI);
        assert_relative_eq!(sphere_area(2), 4.0 * std::f64::consts::PI, max_relative = 1e-14);
        // ω_3 = 2π²
        assert_relative_eq!(
            sphere_area(3),
            2.0 * std::f64::consts::PI * std::f64::consts::PI,
            max_relative = 1e-14
        );
    }

    #[test]
    fn sobolev_constant_dimension_three() {
        // Known closed form: 1/K(3,2)² = 3 (π/2)^{4/3}.
        let s = sobolev_constant(3).unwrap();
        let exact = 3.0 * (std::f64::consts::PI / 2.0).powf(4.0 / 3.0);
        assert_relative_eq!(s, exact, max_relative = 1e-9);
    }

    #[test]
    fn rejects_low_dimension() {
        assert!(sobolev_constant(2).is_err());
    }
}
