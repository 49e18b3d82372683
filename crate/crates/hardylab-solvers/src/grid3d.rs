//! Full 3D finite-difference audit of the axisymmetry assumption: minimize
//! the same critical quotient on a Cartesian staircase grid over the half
//! ball, with no symmetry built in, and compare against the meridian solver.

use crate::eigen::{smallest_pencil_eigenvalue, EigenOptions};
use crate::linalg::{dot, dual_norm, pcg, LinearMap, ShiftedSum};
use crate::quotient::{minimize_quotient_on_mesh, QuotientOptions};
use crate::SolverError;
use hardylab_domain::{generate_mesh, make_domain, MeshOptions, Preset};
use hardylab_params::critical_exponent;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[derive(Debug, Clone)]
pub struct SymmetryOptions {
    /// Hard ceiling on points per axis; the default honors the desk-scale
    /// memory budget.
    pub grid_limit: usize,
    /// Random restarts beyond the deterministic all-ones run.
    pub multistarts: usize,
    pub seed: u64,
    pub max_iterations: usize,
    pub value_tol: f64,
    pub stall_window: usize,
    pub el_tol: f64,
    pub cg_tol: f64,
    pub cg_max: usize,
    /// Meridian mesh target for the axisymmetric comparison run.
    pub meridian_h: f64,
    pub axisym: QuotientOptions,
}

impl Default for SymmetryOptions {
    fn default() -> Self {
        SymmetryOptions {
            grid_limit: 48,
            multistarts: 2,
            seed: 7,
            max_iterations: 4000,
            value_tol: 1e-9,
            stall_window: 10,
            el_tol: 1e-5,
            cg_tol: 1e-10,
            cg_max: 20_000,
            meridian_h: 0.08,
            axisym: QuotientOptions::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SymmetryReport {
    pub grid_size: usize,
    pub spacing: f64,
    pub unknowns: usize,
    pub mu_grid: f64,
    pub mu_axisym: f64,
    pub rel_difference: f64,
    /// Root mean square angular wobble of the 3D minimizer around its own
    /// rotational average, relative to the field size.
    pub angular_variation: f64,
    /// Largest deviation of the restarted minima from the deterministic one.
    pub multistart_spread: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Staircase grid over the half ball x1 > 0, |x| < 1. Lattice spacing h =
/// 1/(m+1); axial index 1..=m, transverse indices 1..=2m+1 centered on the
/// rotation axis. Edges cut by the sphere or the flat face carry penalty
/// weights from the exact intersection distance.
struct HalfBallGrid {
    h: f64,
    coords: Vec<[f64; 3]>,
    neighbors: Vec<[i64; 6]>,
    cut_weight: Vec<f64>,
    inv_r2: Vec<f64>,
    index: Vec<i64>,
    m: usize,
}

const DIRS: [[i64; 3]; 6] =
    [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]];

impl HalfBallGrid {
    fn build(grid_size: usize) -> Self {
        let m = (grid_size.max(5) - 1) / 2;
        let h = 1.0 / (m as f64 + 1.0);
        let t = 2 * m + 1;
        let flat = |i: usize, j: usize, k: usize| ((i - 1) * t + (j - 1)) * t + (k - 1);
        let coord = |i: usize, j: usize, k: usize| -> [f64; 3] {
            [
                i as f64 * h,
                (j as f64 - (m as f64 + 1.0)) * h,
                (k as f64 - (m as f64 + 1.0)) * h,
            ]
        };
        let mut index = vec![-1i64; m * t * t];
        let mut coords = Vec::new();
        for i in 1..=m {
            for j in 1..=t {
                for k in 1..=t {
                    let p = coord(i, j, k);
                    if p[0] * p[0] + p[1] * p[1] + p[2] * p[2] < 1.0 {
                        index[flat(i, j, k)] = coords.len() as i64;
                        coords.push(p);
                    }
                }
            }
        }
        let lookup = |i: i64, j: i64, k: i64| -> i64 {
            if i < 1 || i > m as i64 || j < 1 || j > t as i64 || k < 1 || k > t as i64 {
                return -1;
            }
            index[flat(i as usize, j as usize, k as usize)]
        };
        let mut neighbors = vec![[-1i64; 6]; coords.len()];
        let mut cut_weight = vec![0.0; coords.len()];
        let mut inv_r2 = vec![0.0; coords.len()];
        for (a, p) in coords.iter().enumerate() {
            inv_r2[a] = 1.0 / (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
            let (pi, pj, pk) = {
                let i = (p[0] / h).round() as i64;
                let j = (p[1] / h).round() as i64 + m as i64 + 1;
                let k = (p[2] / h).round() as i64 + m as i64 + 1;
                (i, j, k)
            };
            for (dir, d) in DIRS.iter().enumerate() {
                let q = lookup(pi + d[0], pj + d[1], pk + d[2]);
                if q >= 0 {
                    neighbors[a][dir] = q;
                    continue;
                }
                // The boundary crosses this arm: either the flat face at
                // x1 = 0 or the unit sphere. Linear segment from u at p to
                // zero at the crossing, cross-section h^2.
                let u = [d[0] as f64, d[1] as f64, d[2] as f64];
                let pu = p[0] * u[0] + p[1] * u[1] + p[2] * u[2];
                let p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
                let mut dist = (-pu + (pu * pu + 1.0 - p2).sqrt()).max(1e-3 * h);
                if d[0] == -1 {
                    dist = dist.min(p[0]);
                }
                cut_weight[a] += h * h / dist.min(h).max(1e-3 * h);
            }
        }
        HalfBallGrid { h, coords, neighbors, cut_weight, inv_r2, index, m }
    }

    fn node_lookup(&self, i: i64, j: i64, k: i64) -> i64 {
        let m = self.m as i64;
        let t = 2 * m + 1;
        if i < 1 || i > m || j < 1 || j > t || k < 1 || k > t {
            return -1;
        }
        self.index[(((i - 1) * t + (j - 1)) * t + (k - 1)) as usize]
    }

    /// Trilinear interpolation with zero extension outside the active set.
    fn interpolate(&self, u: &[f64], x: [f64; 3]) -> f64 {
        let h = self.h;
        let m = self.m as f64;
        let gi = x[0] / h;
        let gj = x[1] / h + m + 1.0;
        let gk = x[2] / h + m + 1.0;
        let (i0, j0, k0) = (gi.floor() as i64, gj.floor() as i64, gk.floor() as i64);
        let (fi, fj, fk) = (gi - i0 as f64, gj - j0 as f64, gk - k0 as f64);
        let mut acc = 0.0;
        for di in 0..2i64 {
            for dj in 0..2i64 {
                for dk in 0..2i64 {
                    let idx = self.node_lookup(i0 + di, j0 + dj, k0 + dk);
                    if idx < 0 {
                        continue;
                    }
                    let wi = if di == 0 { 1.0 - fi } else { fi };
                    let wj = if dj == 0 { 1.0 - fj } else { fj };
                    let wk = if dk == 0 { 1.0 - fk } else { fk };
                    acc += wi * wj * wk * u[idx as usize];
                }
            }
        }
        acc
    }
}

/// Quadratic form of the grid operator: the cut-aware difference energy
/// minus gamma times the singular mass.
struct GridForm<'g> {
    grid: &'g HalfBallGrid,
    gamma: f64,
}

impl LinearMap for GridForm<'_> {
    fn dim(&self) -> usize {
        self.grid.coords.len()
    }

    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        let g = self.grid;
        let h = g.h;
        let vol = h * h * h;
        for (a, out) in y.iter_mut().enumerate() {
            let mut acc = (g.cut_weight[a] - self.gamma * vol * g.inv_r2[a]) * x[a];
            for q in g.neighbors[a] {
                if q >= 0 {
                    acc += h * (x[a] - x[q as usize]);
                }
            }
            *out = acc;
        }
    }

    fn diagonal(&self) -> Vec<f64> {
        let g = self.grid;
        let vol = g.h * g.h * g.h;
        (0..g.coords.len())
            .map(|a| {
                let active = g.neighbors[a].iter().filter(|&&q| q >= 0).count() as f64;
                g.h * active + g.cut_weight[a] - self.gamma * vol * g.inv_r2[a]
            })
            .collect()
    }
}

/// Plain diagonal operator, used for the mass form and descent metric.
struct DiagMap {
    d: Vec<f64>,
}

impl LinearMap for DiagMap {
    fn dim(&self) -> usize {
        self.d.len()
    }

    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        for ((yi, xi), di) in y.iter_mut().zip(x).zip(&self.d) {
            *yi = di * xi;
        }
    }

    fn diagonal(&self) -> Vec<f64> {
        self.d.clone()
    }
}

struct GridRun {
    mu: f64,
    u: Vec<f64>,
    iterations: usize,
    converged: bool,
}

/// Projected gradient on the grid, mirroring the meridian solver: descent in
/// a stabilized metric, exact renormalization by homogeneity, entrywise
/// absolute value each accepted step (always energy-decreasing here since
/// the potential terms are diagonal).
#[allow(clippy::too_many_arguments)]
fn minimize_on_grid(
    form: &GridForm<'_>,
    metric_shift: f64,
    mass: &DiagMap,
    sweight: &[f64],
    two_star: f64,
    start: Vec<f64>,
    opts: &SymmetryOptions,
) -> Result<GridRun, SolverError> {
    let g = form.grid;
    let vol = g.h * g.h * g.h;
    let dim = form.dim();
    let metric = ShiftedSum { a: form, b: mass, shift: metric_shift };
    let diag_pos: Vec<f64> = (0..dim)
        .map(|a| {
            let active = g.neighbors[a].iter().filter(|&&q| q >= 0).count() as f64;
            g.h * active + g.cut_weight[a]
        })
        .collect();

    let constraint = |u: &[f64]| -> f64 {
        u.iter().zip(sweight).map(|(ui, wi)| vol * wi * ui.abs().powf(two_star)).sum()
    };
    let gradient = |u: &[f64]| -> Vec<f64> {
        u.iter()
            .zip(sweight)
            .map(|(ui, wi)| two_star * vol * wi * ui.abs().powf(two_star - 2.0) * ui)
            .collect()
    };
    let normalize = |u: &mut Vec<f64>| -> Result<(), SolverError> {
        let f = constraint(u);
        if !(f > 0.0) {
            return Err(SolverError::Breakdown("grid constraint vanished"));
        }
        let c = f.powf(-1.0 / two_star);
        for x in u.iter_mut() {
            *x *= c;
        }
        Ok(())
    };

    let mut u = start;
    normalize(&mut u)?;
    let mut cu = form.apply_vec(&u);
    let mut mu = dot(&u, &cu);
    let mut g_vec = gradient(&u);
    let mut history = vec![mu];
    let mut converged = false;
    let mut iterations = 0;
    let residual_of = |cu: &[f64], gv: &[f64], mu: f64| -> f64 {
        let factor = mu / two_star;
        let r: Vec<f64> = cu.iter().zip(gv).map(|(c, gi)| c - factor * gi).collect();
        let scaled: Vec<f64> = gv.iter().map(|gi| factor * gi).collect();
        let scale =
            dual_norm(cu, &diag_pos).max(dual_norm(&scaled, &diag_pos)).max(f64::MIN_POSITIVE);
        dual_norm(&r, &diag_pos) / scale
    };

    for k in 0..opts.max_iterations {
        iterations = k + 1;
        let el = residual_of(&cu, &g_vec, mu);
        let settled = history.len() > opts.stall_window
            && history[history.len() - 1 - opts.stall_window..]
                .iter()
                .all(|v| (v - mu).abs() <= opts.value_tol * mu.abs().max(1e-30));
        if el < opts.el_tol && settled {
            converged = true;
            break;
        }
        let two_cu: Vec<f64> = cu.iter().map(|x| 2.0 * x).collect();
        let (y, _) = pcg(&metric, &two_cu, None, opts.cg_tol, opts.cg_max)?;
        let (z, _) = pcg(&metric, &g_vec, None, opts.cg_tol, opts.cg_max)?;
        let gz = dot(&g_vec, &z);
        if !(gz > 0.0) {
            return Err(SolverError::Breakdown("grid constraint gradient degenerated"));
        }
        let beta = dot(&g_vec, &y) / gz;
        let d: Vec<f64> = y.iter().zip(&z).map(|(yi, zi)| -yi + beta * zi).collect();
        let slope = -dot(&two_cu, &d);
        if !(slope > 0.0) {
            converged = el < opts.el_tol && settled;
            break;
        }
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let mut w: Vec<f64> =
                u.iter().zip(&d).map(|(ui, di)| (ui + t * di).abs()).collect();
            if normalize(&mut w).is_ok() {
                let cw = form.apply_vec(&w);
                let ew = dot(&w, &cw);
                if ew <= mu - 1e-4 * t * slope {
                    u = w;
                    cu = cw;
                    mu = ew;
                    g_vec = gradient(&u);
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        history.push(mu);
        if !accepted {
            converged = residual_of(&cu, &g_vec, mu) < opts.el_tol;
            break;
        }
    }
    Ok(GridRun { mu, u, iterations, converged })
}

/// Minimize the critical quotient on a full 3D grid with no symmetry
/// assumption and compare with the meridian solver at the same coupling.
pub fn symmetry_audit(
    gamma: f64,
    s: f64,
    grid_size: usize,
    opts: &SymmetryOptions,
) -> Result<SymmetryReport, SolverError> {
    if grid_size > opts.grid_limit {
        return Err(SolverError::GridBudget {
            requested: grid_size.pow(3),
            limit: opts.grid_limit.pow(3),
        });
    }
    let n = 3;
    let two_star = critical_exponent(n, s)?;
    let grid = HalfBallGrid::build(grid_size);
    let form = GridForm { grid: &grid, gamma };
    let vol = grid.h.powi(3);
    let mass = DiagMap { d: vec![vol; grid.coords.len()] };
    let sweight: Vec<f64> =
        grid.coords.iter().map(|p| (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).powf(-s / 2.0)).collect();

    // Stabilizing shift for the descent metric; zero when the form is
    // already coercive on the grid.
    let eig_opts = EigenOptions::default();
    let metric_shift = {
        let mut shift = 0.0;
        loop {
            let op = ShiftedSum { a: &form, b: &mass, shift };
            match smallest_pencil_eigenvalue(&op, &mass, &eig_opts) {
                Ok(sol) => {
                    let lambda1 = sol.value - shift;
                    break if lambda1 > 0.0 { 0.0 } else { 1.25 * (-lambda1) + 1e-12 };
                }
                Err(SolverError::Breakdown(_)) => {
                    shift = if shift == 0.0 { 1.0 } else { shift * 4.0 };
                    if shift > 1e18 {
                        return Err(SolverError::Breakdown("grid form resists stabilization"));
                    }
                }
                Err(e) => return Err(e),
            }
        }
    };

    let deterministic = minimize_on_grid(
        &form,
        metric_shift,
        &mass,
        &sweight,
        two_star,
        vec![1.0; grid.coords.len()],
        opts,
    )?;

    let mut spread: f64 = 0.0;
    let mut rng = StdRng::seed_from_u64(opts.seed);
    for _ in 0..opts.multistarts {
        let start: Vec<f64> = (0..grid.coords.len()).map(|_| rng.gen_range(0.05..1.0)).collect();
        let run = minimize_on_grid(&form, metric_shift, &mass, &sweight, two_star, start, opts)?;
        spread = spread.max((run.mu - deterministic.mu).abs());
    }

    // Rotational wobble of the minimizer: compare each node against the mean
    // of its interpolated orbit under eight rotations about the axis.
    let u = &deterministic.u;
    let mut num = 0.0;
    let mut den = 0.0;
    for (a, p) in grid.coords.iter().enumerate() {
        let r = (p[1] * p[1] + p[2] * p[2]).sqrt();
        if r < 2.5 * grid.h || u[a] == 0.0 {
            continue;
        }
        let mut samples = [0.0f64; 8];
        let mut ok = true;
        for (j, sample) in samples.iter_mut().enumerate() {
            let th = std::f64::consts::TAU * j as f64 / 8.0;
            let x = [p[0], r * th.cos(), r * th.sin()];
            if x[1].abs() >= 1.0 - grid.h || x[2].abs() >= 1.0 - grid.h {
                ok = false;
                break;
            }
            *sample = grid.interpolate(u, x);
        }
        if !ok {
            continue;
        }
        let mean = samples.iter().sum::<f64>() / 8.0;
        num += samples.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / 8.0;
        den += mean * mean;
    }
    let angular_variation = if den > 0.0 { (num / den).sqrt() } else { 0.0 };

    // Meridian comparison at matched coupling.
    let dom = make_domain(n, &Preset::HalfBall { radius: 1.0 })?;
    let mesh_opts = MeshOptions { layers: 10, ratio: 0.45, ..MeshOptions::default() };
    let mesh = generate_mesh(&dom, opts.meridian_h, &mesh_opts)?;
    let axi = minimize_quotient_on_mesh(
        &mesh,
        n,
        gamma,
        s,
        &hardylab_assembly::Quadrature::default(),
        &opts.axisym,
    )?;

    let rel_difference = (deterministic.mu - axi.value).abs() / axi.value.abs().max(1e-30);
    Ok(SymmetryReport {
        grid_size,
        spacing: grid.h,
        unknowns: grid.coords.len(),
        mu_grid: deterministic.mu,
        mu_axisym: axi.value,
        rel_difference,
        angular_variation,
        multistart_spread: spread,
        iterations: deterministic.iterations,
        converged: deterministic.converged,
    })
}
