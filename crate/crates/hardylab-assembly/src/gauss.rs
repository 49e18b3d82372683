//! Gauss-Legendre rules, computed on demand by Newton iteration on the
//! three-term recurrence.

/// Value and derivative of the Legendre polynomial `P_m` at `x`.
fn legendre(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 1..m {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Nodes (ascending) and weights of the m-point rule on [-1, 1].
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1, "rule needs at least one point");
    let mut xs = vec![0.0; m];
    let mut ws = vec![0.0; m];
    for i in 0..m {
        // Chebyshev-like initial guess for the (i+1)-th largest root.
        let mut x =
            (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        for _ in 0..60 {
            let (p, dp) = legendre(m, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(m, x);
        // Guess i = 0 is the largest root; store ascending.
        xs[m - 1 - i] = x;
        ws[m - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    // The midpoint root of odd rules lands on 0 exactly.
    if m % 2 == 1 {
        xs[m / 2] = 0.0;
    }
    (xs, ws)
}

/// The same rule shifted to [0, 1].
pub fn gauss01(m: usize) -> (Vec<f64>, Vec<f64>) {
    let (xs, ws) = gauss_legendre(m);
    (
        xs.iter().map(|x| 0.5 * (x + 1.0)).collect(),
        ws.iter().map(|w| 0.5 * w).collect(),
    )
}
