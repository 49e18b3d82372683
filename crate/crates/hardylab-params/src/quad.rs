//! Small 1D adaptive quadrature used for closed-form radial integrals.

/// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance tol.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let c = 0.5 * (a + b);
    let (fa, fb, fc) = (f(a), f(b), f(c));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
    simpson_rec(f, a, b, fa, fb, fc, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    fc: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let c = 0.5 * (a + b);
    let (d, e) = (0.5 * (a + c), 0.5 * (c + b));
    let (fd, fe) = (f(d), f(e));
    let left = (c - a) / 6.0 * (fa + 4.0 * fd + fc);
    let right = (b - c) / 6.0 * (fc + 4.0 * fe + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_rec(f, a, c, fa, fc, fd, left, 0.5 * tol, depth - 1)
            + simpson_rec(f, c, b, fc, fb, fe, right, 0.5 * tol, depth - 1)
    }
}

/// Integral of f over (0, ∞) via the substitution ρ = t/(1-t).
///
/// The integrand must decay fast enough for the transformed integrand
/// t ↦ f(t/(1-t))/(1-t)² to stay bounded near t = 1.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: &F, tol: f64) -> f64 {
    let g = |t: f64| {
        let omt = 1.0 - t;
        if omt <= 0.0 {
            return 0.0;
        }
        let rho = t / omt;
        f(rho) / (omt * omt)
    };
    // Stop just short of t = 1; the tail beyond maps to rho > 1e14.
    adaptive_simpson(&g, 0.0, 1.0 - 1e-14, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_is_exact() {
        let v = adaptive_simpson(&|x| x * x * x, 0.0, 2.0, 1e-12);
        assert_relative_eq!(v, 4.0, max_relative = 1e-12);
    }

    #[test]
    fn oscillatory_integral_converges() {
        let v = adaptive_simpson(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-12);
        assert_relative_eq!(v, 2.0, max_relative = 1e-10);
    }

    #[test]
    fn half_line_gaussian_moment() {
        // ∫_0^∞ e^{-ρ} dρ = 1
        let v = integrate_half_line(&|rho: f64| (-rho).exp(), 1e-12);
        assert_relative_eq!(v, 1.0, max_relative = 1e-10);
    }
}
