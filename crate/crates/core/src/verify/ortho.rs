//! Orthogonality of `ψ_n`, `P_n`, `Q_n` and weak self-adjointness of `L(N)`,
//! all through the circle inner product with weight `ρ(θ;N)`.

use super::config::SuiteConfig;
use super::quadrature::{gram, node_values, QuadratureGrid, MAX_NODES};
use super::report::CheckReport;
use crate::algebra::{random_panel, PANEL_RADIUS};
use crate::dunkl::{build_k, build_l, DunklOperator, LForm};
use crate::error::Result;
use crate::jacobi::{JacobiParams, SievedFamily};
use crate::laurent::LaurentPoly;
use crate::par::{nan_max, Execution};
use crate::realline::{Kind, SymmetricFamily};
use num_complex::Complex64;

type Gram = Vec<Vec<Complex64>>;

/// Tolerance floor when the weight is not a trigonometric polynomial: the
/// trapezoid rule then converges only algebraically near the zeros of `ρ`.
pub const ADAPTIVE_TOLERANCE: f64 = 1e-5;

fn effective_tolerance(requested: f64, grid: &QuadratureGrid) -> f64 {
    if grid.exact { requested } else { requested.max(ADAPTIVE_TOLERANCE) }
}

/// Gram matrices of several families on one grid.
fn grams(families: &[&[LaurentPoly]], grid: &QuadratureGrid, p: &JacobiParams, order: usize, exec: Execution) -> Result<Vec<Gram>> {
    let w = grid.weight_values(p, order)?;
    Ok(families.iter().map(|polys| gram(&node_values(polys, grid, exec), &w, grid.step(), exec)).collect())
}

fn largest_change(a: &[Gram], b: &[Gram]) -> f64 {
    let mut worst: f64 = 0.0;
    for (ga, gb) in a.iter().zip(b) {
        let scale = ga[0][0].norm().max(f64::MIN_POSITIVE);
        for (ra, rb) in ga.iter().zip(gb) {
            for (x, y) in ra.iter().zip(rb) {
                worst = nan_max(worst, (x - y).norm() / scale);
            }
        }
    }
    worst
}

/// Gram matrices on the exact grid (polynomial weights) or by doubling until
/// successive results agree to `target` or the grid reaches [`MAX_NODES`].
/// Returns the matrices, the grid used and the last doubling change.
fn converged_grams(
    families: &[&[LaurentPoly]],
    degree: usize,
    p: &JacobiParams,
    order: usize,
    target: f64,
    exec: Execution,
) -> Result<(Vec<Gram>, QuadratureGrid, f64)> {
    let mut grid = QuadratureGrid::for_degree(p, order, degree);
    let mut current = grams(families, &grid, p, order, exec)?;
    loop {
        let next_grid = grid.refined();
        let next = grams(families, &next_grid, p, order, exec)?;
        let change = largest_change(&current, &next);
        if grid.exact || change <= target || next_grid.nodes >= MAX_NODES {
            // report the finer of the two
            return Ok((next, next_grid, change));
        }
        grid = next_grid;
        current = next;
    }
}

/// `max_{m≠n} |G_mn| / G_00`.
fn off_diagonal(g: &Gram) -> f64 {
    let g00 = g[0][0].re;
    let mut worst: f64 = 0.0;
    for (m, row) in g.iter().enumerate() {
        for (n, v) in row.iter().enumerate() {
            if m != n {
                worst = nan_max(worst, v.norm() / g00);
            }
        }
    }
    worst
}

/// Gram matrices of `ψ_0..ψ_{n_max}`, `P_0..P_{n_max}` and `(z − 1/z)Q_0..`
/// under `ρ(θ;N)`: off-diagonal size relative to `G_00`, and `G_nn/G_00`
/// against `h_n(N)`.
///
/// On `[−2, 2]` the weights `w(x)` and `w(x)(4 − x²)` are the images of
/// `ρ(θ;N)` and `|z − 1/z|² ρ(θ;N)`, so the `P` and `Q` Grams are circle Grams.
pub fn orthogonality_suite(cfg: &SuiteConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let (p, n) = (cfg.params, cfg.order);
    let fam = SievedFamily::new(p, n, cfg.n_max)?;
    let psis: Vec<LaurentPoly> = (0..=cfg.n_max).map(|k| fam.psi(k)).collect::<Result<_>>()?;
    let ps: Vec<LaurentPoly> =
        SymmetricFamily::new(Kind::P, p, n, cfg.n_max)?.polys().iter().map(|f| f.laurent.clone()).collect();
    let qs = SymmetricFamily::new(Kind::Q, p, n, cfg.n_max)?;
    let phi_q: Vec<LaurentPoly> = (0..=cfg.n_max).map(|k| qs.numerator(k).cloned().unwrap_or_default()).collect();

    let degree = 2 * cfg.n_max + 4;
    let (g, grid, change) =
        converged_grams(&[&psis, &ps, &phi_q], degree, &p, n, 0.1 * cfg.tolerance, cfg.execution)?;
    let mut report = cfg.report("ortho").with_samples(grid.nodes);
    report.tolerance = effective_tolerance(cfg.tolerance, &grid);

    report.record("psi/off-diagonal", off_diagonal(&g[0]));
    let g00 = g[0][0][0].re;
    let mut diag: f64 = 0.0;
    for k in 0..=cfg.n_max {
        diag = nan_max(diag, (g[0][k][k].re / g00 - fam.h(k)?).abs());
    }
    report.record("psi/diagonal vs h_n", diag);
    report.record("P/off-diagonal", off_diagonal(&g[1]));
    report.record("Q/off-diagonal", off_diagonal(&g[2]));
    let positive = g.iter().all(|m| (0..m.len()).all(|k| m[k][k].re > 0.0));
    report.record_flag("diagonal positive", positive);
    report
        .record("quadrature/doubling change", change)
        .note(format!("{} nodes, {}", grid.nodes, if grid.exact { "exact weight" } else { "adaptive" }));
    Ok(report)
}

/// `(Lf, g) − (f, Lg)` over random pairs, normalized by `‖f‖‖g‖`.
///
/// `L f` is formed exactly as a Laurent polynomial, so the quadrature sees no
/// removable singularities. For `N = 1` the operator is `K`.
pub fn selfadjoint_check(cfg: &SuiteConfig, pairs: usize) -> Result<CheckReport> {
    cfg.validate()?;
    let (p, n) = (cfg.params, cfg.order);
    let op: DunklOperator = if n == 1 { build_k(&p) } else { build_l(&p, n, LForm::Reflection)? };
    let panel = random_panel(cfg.seed, 2 * pairs, PANEL_RADIUS);
    let images: Vec<LaurentPoly> = cfg.execution.try_map(&panel, |f| op.apply_exact(f, 1e-9))?;

    let grid = {
        let g = QuadratureGrid::for_degree(&p, n, 4 * PANEL_RADIUS as usize + 2);
        if g.exact { g } else { QuadratureGrid::new(MAX_NODES, &p) }
    };
    let w = grid.weight_values(&p, n)?;
    let f_vals = node_values(&panel, &grid, cfg.execution);
    let l_vals = node_values(&images, &grid, cfg.execution);
    let inner = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).zip(&w).map(|((x, y), w)| x * y.conj() * *w).sum::<Complex64>() * grid.step()
    };

    let idx: Vec<usize> = (0..pairs).collect();
    let weak = cfg.execution.max_by(&idx, |&i| {
        let (f, g) = (2 * i, 2 * i + 1);
        let lhs = inner(&l_vals[f], &f_vals[g]);
        let rhs = inner(&f_vals[f], &l_vals[g]);
        let norm = (inner(&f_vals[f], &f_vals[f]).re * inner(&f_vals[g], &f_vals[g]).re).sqrt();
        (lhs - rhs).norm() / norm
    });
    let diagonal = cfg.execution.max_by(&idx, |&i| {
        let f = 2 * i;
        inner(&l_vals[f], &f_vals[f]).im.abs() / inner(&f_vals[f], &f_vals[f]).re
    });

    // the exact image agrees with pointwise application away from the poles
    let plan = cfg.plan(2 * PANEL_RADIUS as usize + 2 * n)?;
    let pts = plan.points()?;
    let mut exact_vs_pointwise: f64 = 0.0;
    for (f, lf) in panel.iter().zip(&images).take(4) {
        let direct = op.apply_many(f, &pts, cfg.execution)?;
        let scale = direct.iter().map(|v| v.norm()).fold(1.0, nan_max);
        for (z, d) in pts.iter().zip(&direct) {
            exact_vs_pointwise = nan_max(exact_vs_pointwise, (lf.eval_unchecked(*z) - d).norm() / scale);
        }
    }

    let mut report = cfg.report("selfadjoint").with_seed(cfg.seed).with_samples(grid.nodes);
    report.tolerance = effective_tolerance(cfg.tolerance, &grid);
    report.record("weak form", weak).note(format!("{pairs} pairs"));
    report.record("Im (Lf, f)", diagonal);
    report.record("exact image", exact_vs_pointwise);
    if !grid.exact {
        report.reference("weight is not a trigonometric polynomial", 0.0).note(format!("{} nodes", grid.nodes));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_weight_orthogonality() {
        let r = orthogonality_suite(&SuiteConfig::new(0.5, 0.5, 2, 12).with_tolerance(1e-9)).unwrap();
        assert!(r.pass, "{r}");
        let r = orthogonality_suite(&SuiteConfig::new(0.5, 1.5, 3, 12).with_tolerance(1e-9)).unwrap();
        assert!(r.pass, "{r}");
    }

    #[test]
    fn generic_weight_uses_adaptive_tolerance() {
        let r = orthogonality_suite(&SuiteConfig::new(0.3, 1.7, 3, 12)).unwrap();
        assert_eq!(r.tolerance, ADAPTIVE_TOLERANCE);
        assert!(r.pass, "{r}");
    }

    #[test]
    fn self_adjoint() {
        for n in 1..=3 {
            let r = selfadjoint_check(&SuiteConfig::new(0.5, 0.5, n, 0), 30).unwrap();
            assert!(r.pass, "{r}");
        }
    }
}
