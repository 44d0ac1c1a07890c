//! Eigenvalue-equation suites: `L(N)` on `ψ_n`, `H(N)` on `P_n`, the
//! conjugated operators on `Q_n`, and the rotation sums `Y_m`.

use super::config::SuiteConfig;
use super::report::CheckReport;
use crate::algebra::{panel_residual, random_panel, PANEL_RADIUS, PANEL_SIZE};
use crate::dunkl::{
    build_h, build_h_hat_explicit, build_h_variant, build_k, build_l, build_y, conjugate_apply, conjugate_by_phi,
    Conjugate, DunklOperator, EigenvalueTable, HMode, LForm,
};
use crate::error::{Error, Result};
use crate::jacobi::SievedFamily;
use crate::laurent::{LaurentPoly, SamplePlan};
use crate::par::nan_max;
use crate::realline::{Kind, SymmetricFamily};
use num_complex::Complex64;

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `max |op f − λ f| / max(1, max |λ f|)` over the plan points.
pub fn eigen_residual(op: &DunklOperator, f: &LaurentPoly, lambda: Complex64, plan: &SamplePlan) -> Result<f64> {
    let pts = plan.points()?;
    let lhs = op.apply_many(f, &pts, plan.execution)?;
    Ok(relative_gap(&lhs, &pts, f, lambda))
}

fn relative_gap(values: &[Complex64], pts: &[Complex64], f: &LaurentPoly, lambda: Complex64) -> f64 {
    let rhs: Vec<Complex64> = pts.iter().map(|&z| lambda * f.eval_unchecked(z)).collect();
    let scale = rhs.iter().map(|v| v.norm()).fold(1.0, nan_max);
    values.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, nan_max) / scale
}

/// Worst eigen-residual over a list of `(f, λ)` pairs, with the index where it occurs.
fn worst_over<'a>(
    op: &DunklOperator,
    pairs: impl IntoIterator<Item = (usize, &'a LaurentPoly, f64)>,
    plan: &SamplePlan,
) -> Result<(f64, usize)> {
    let mut worst = (0.0, 0);
    for (n, f, lambda) in pairs {
        let r = eigen_residual(op, f, real(lambda), plan)?;
        if r > worst.0 || r.is_nan() {
            worst = (r, n);
        }
    }
    Ok(worst)
}

fn record_worst(report: &mut CheckReport, name: &str, (residual, n): (f64, usize)) {
    report.record(name, residual).note(format!("worst at n = {n}"));
}

/// `L(N) ψ_n = λ_n(N) ψ_n` for `n ≤ n_max`, in both presentations of `L`,
/// and `K ψ_n = μ_n ψ_n` when `N = 1`.
pub fn eigen_l(cfg: &SuiteConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let (p, n) = (cfg.params, cfg.order);
    let fam = SievedFamily::new(p, n, cfg.n_max)?;
    let psis: Vec<LaurentPoly> = (0..=cfg.n_max).map(|k| fam.psi(k)).collect::<Result<_>>()?;
    let plan = cfg.plan(cfg.n_max + 2 * n)?;
    let spec = EigenvalueTable::new(p, n);
    let mut report = cfg.report("eigen-l").with_samples(plan.count);
    for (name, form) in [("L/reflection form", LForm::Reflection), ("L/with B", LForm::WithB)] {
        let l = build_l(&p, n, form)?;
        let worst = worst_over(&l, psis.iter().enumerate().map(|(k, f)| (k, f, spec.lambda(k))), &plan)?;
        record_worst(&mut report, name, worst);
    }
    if n == 1 {
        let k = build_k(&p);
        let worst = worst_over(&k, psis.iter().enumerate().map(|(k, f)| (k, f, spec.mu(k))), &plan)?;
        record_worst(&mut report, "K", worst);
    }
    Ok(report)
}

/// `H(N) P_n = Λ_n(N) P_n` in all three presentations of `H(N)`.
pub fn eigen_h(cfg: &SuiteConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let (p, n) = (cfg.params, cfg.order);
    let fam = SymmetricFamily::new(Kind::P, p, n, cfg.n_max)?;
    let plan = cfg.plan(2 * cfg.n_max + 4 * n)?;
    let spec = EigenvalueTable::new(p, n);
    let mut report = cfg.report("eigen-h").with_samples(plan.count);
    for (name, mode) in [("H/square", HMode::Square), ("H/reflections", HMode::ExplicitR), ("H/rotations", HMode::ExplicitT)] {
        let h = build_h(&p, n, mode)?;
        let pairs = fam.polys().iter().enumerate().map(|(k, f)| (k, &f.laurent, spec.big_lambda(k)));
        record_worst(&mut report, name, worst_over(&h, pairs, &plan)?);
    }
    Ok(report)
}

/// `H̃(N) Q_n = Λ_{n+1}(N) Q_n`, symbolically conjugated and pointwise; for
/// `α = β` also `Ĥ(N) Q_n = Ξ_n(N) Q_n` from the conjugation and from the
/// explicit coefficients.
pub fn eigen_q(cfg: &SuiteConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let (p, n) = (cfg.params, cfg.order);
    let fam = SymmetricFamily::new(Kind::Q, p, n, cfg.n_max)?;
    let plan = cfg.plan(2 * cfg.n_max + 4 * n + 2)?;
    let spec = EigenvalueTable::new(p, n);
    let mut report = cfg.report("eigen-q").with_samples(plan.count);

    let tilde = build_h_variant(&p, n, Conjugate::Tilde)?;
    let pairs = fam.polys().iter().enumerate().map(|(k, f)| (k, &f.laurent, spec.big_lambda(k + 1)));
    record_worst(&mut report, "H~/symbolic", worst_over(&tilde, pairs, &plan)?);

    let h = build_h(&p, n, HMode::ExplicitR)?;
    let pts = plan.points()?;
    let mut worst = (0.0, 0);
    for (k, f) in fam.polys().iter().enumerate() {
        let values = plan.execution.try_map(&pts, |&z| conjugate_apply(&h, &f.laurent, z))?;
        let r = relative_gap(&values, &pts, &f.laurent, real(spec.big_lambda(k + 1)));
        if r > worst.0 || r.is_nan() {
            worst = (r, k);
        }
    }
    record_worst(&mut report, "H~/pointwise", worst);

    if p.alpha == p.beta {
        let hat = build_h_variant(&p, n, Conjugate::Hat)?;
        let pairs = fam.polys().iter().enumerate().map(|(k, f)| (k, &f.laurent, spec.xi(k)));
        record_worst(&mut report, "H^/conjugated", worst_over(&hat, pairs, &plan)?);
        let explicit = build_h_hat_explicit(p.alpha, n, false)?;
        let pairs = fam.polys().iter().enumerate().map(|(k, f)| (k, &f.laurent, spec.xi(k)));
        record_worst(&mut report, "H^/explicit", worst_over(&explicit, pairs, &plan)?);
    }
    Ok(report)
}

/// Ratio `(op f)(z)/f(z)` at every plan point: its first value and its spread.
pub fn measured_eigenvalue(op: &DunklOperator, f: &LaurentPoly, plan: &SamplePlan) -> Result<(Complex64, f64)> {
    let pts = plan.points()?;
    let values = op.apply_many(f, &pts, plan.execution)?;
    let ratios: Vec<Complex64> = values.iter().zip(&pts).map(|(v, &z)| v / f.eval_unchecked(z)).collect();
    let first = *ratios.first().ok_or_else(|| Error::Plan("empty sample plan".into()))?;
    let spread = ratios.iter().map(|r| (r - first).norm()).fold(0.0, nan_max);
    Ok((first, spread))
}

/// Radius of the sample circle for ratio measurements; off the unit circle,
/// where `P_n` and `Q_n` have no zeros.
const RATIO_RADIUS: f64 = 1.25;

/// `Y_m P_n = ω_{m,n} P_n` and `Ỹ_m Q_{n−1} = ω_{m,n} Q_{n−1}` for `1 ≤ m ≤ N−1`:
/// constancy of the measured ratio, the number of distinct values, agreement
/// with the closed form, and `[H(N), Y_m] = 0` on symmetric inputs.
pub fn eigen_y(cfg: &SuiteConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let (p, n) = (cfg.params, cfg.order);
    let first = SymmetricFamily::new(Kind::P, p, n, cfg.n_max)?;
    let second = SymmetricFamily::new(Kind::Q, p, n, cfg.n_max)?;
    let plan = cfg.plan(2 * cfg.n_max + 4 * n + 2)?.with_radius(RATIO_RADIUS);
    let spec = EigenvalueTable::new(p, n);
    let mut report = cfg.report("eigen-y").with_samples(plan.count);
    if n == 1 {
        report.record_flag("no rotations for N = 1", true);
        return Ok(report);
    }
    let h = build_h(&p, n, HMode::ExplicitR)?;
    let unit_plan = cfg.plan(2 * cfg.n_max + 4 * n + 2)?;
    let panel: Vec<LaurentPoly> = random_panel(cfg.seed, PANEL_SIZE, PANEL_RADIUS)
        .into_iter()
        .map(|f| (&f + &f.reflect()).scale_real(0.5))
        .collect();
    let general_panel = random_panel(cfg.seed, PANEL_SIZE, PANEL_RADIUS);
    let panel_plan = cfg.plan(2 * PANEL_RADIUS as usize + 4 * n)?;

    for m in 1..n {
        let y = build_y(n, m, false)?;
        let y_tilde = build_y(n, m, true)?;
        let y_conj = conjugate_by_phi(&y)?;
        let (mut spread, mut derived, mut printed, mut tilde_gap) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        let mut distinct: Vec<Complex64> = Vec::new();
        for k in 0..=cfg.n_max {
            let (w, s) = measured_eigenvalue(&y, &first.get(k)?.laurent, &plan)?;
            spread = nan_max(spread, s);
            derived = nan_max(derived, (w - spec.omega(m, k)).norm());
            printed = nan_max(printed, (w - spec.omega_printed(m, k)).norm());
            if !distinct.iter().any(|v| (v - w).norm() < 1e-6) {
                distinct.push(w);
            }
            if k >= 1 {
                let q = &second.get(k - 1)?.laurent;
                let (wt, st) = measured_eigenvalue(&y_tilde, q, &plan)?;
                spread = nan_max(spread, st);
                tilde_gap = nan_max(tilde_gap, (wt - spec.omega(m, k)).norm());
                let (wc, sc) = measured_eigenvalue(&y_conj, q, &plan)?;
                spread = nan_max(spread, sc);
                tilde_gap = nan_max(tilde_gap, (wc - wt).norm());
            }
        }
        report.record(format!("Y{m}/constant ratio"), spread);
        report
            .record_flag(format!("Y{m}/at most N values"), distinct.len() <= n)
            .note(format!("{} distinct values", distinct.len()));
        report.record(format!("Y{m}/closed form"), derived);
        report.reference(format!("Y{m}/closed form (printed)"), printed);
        report.record(format!("Y{m}/second kind"), tilde_gap);

        let comm = h.commutator(&y)?;
        let zero = DunklOperator::zero(n);
        let mut on_family = 0.0f64;
        for f in first.polys() {
            on_family = nan_max(on_family, eigen_residual(&comm, &f.laurent, real(0.0), &unit_plan)?);
        }
        report.record(format!("[H,Y{m}]/P basis"), on_family);
        report.record(format!("[H,Y{m}]/symmetric panel"), panel_residual(&comm, &zero, &panel, &panel_plan)?);
        report
            .reference(format!("[H,Y{m}]/general panel"), panel_residual(&comm, &zero, &general_panel, &panel_plan)?)
            .note("not expected to vanish off the symmetric span");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l_on_psi() {
        let r = eigen_l(&SuiteConfig::new(0.5, 1.5, 3, 20)).unwrap();
        assert!(r.pass, "{r}");
        let r = eigen_l(&SuiteConfig::new(1.0, 0.0, 1, 12)).unwrap();
        assert!(r.detail("K").unwrap().residual < 1e-10, "{r}");
    }

    #[test]
    fn constant_eigenfunction() {
        let cfg = SuiteConfig::new(0.3, 1.7, 4, 0);
        let p0 = LaurentPoly::one();
        let h = build_h(&cfg.params, 4, HMode::ExplicitR).unwrap();
        assert!(eigen_residual(&h, &p0, real(0.0), &cfg.plan(16).unwrap()).unwrap() < 1e-10);
    }

    #[test]
    fn h_and_q_families() {
        let r = eigen_h(&SuiteConfig::new(0.3, 1.7, 3, 10)).unwrap();
        assert!(r.pass, "{r}");
        let r = eigen_q(&SuiteConfig::new(0.5, 0.5, 4, 10)).unwrap();
        assert!(r.pass, "{r}");
    }

    #[test]
    fn rotation_sums() {
        let r = eigen_y(&SuiteConfig::new(0.3, 1.7, 4, 12)).unwrap();
        assert!(r.pass, "{r}");
    }
}
