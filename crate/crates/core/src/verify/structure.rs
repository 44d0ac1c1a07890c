//! CMV matrix relations and the coefficient identities behind `L(N)²`.

use super::config::SuiteConfig;
use super::report::CheckReport;
use crate::algebra::{panel_residual, random_panel, PANEL_RADIUS, PANEL_SIZE};
use crate::dunkl::coeffs::{coeff_a, coeff_b, coeff_b_sum, coeff_d, sumgen};
use crate::dunkl::{build_h, DunklOperator, HMode};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::jacobi::{rotation_phase, PhaseTable, SievedFamily};
use crate::laurent::{LaurentPoly, SamplePlan};
use crate::opuc::{cmv_matrices, VerblunskySequence};
use crate::par::nan_max;
use crate::roots::q_pow;
use num_complex::Complex64;

/// Row-wise relative gap `max_i |a_i − b_i| / max(1, max_i |b_i|)` over the first `rows` rows.
fn vector_gap(a: &[Complex64], b: &[Complex64], rows: usize) -> f64 {
    let scale = b[..rows].iter().map(|v| v.norm()).fold(1.0, nan_max);
    a[..rows].iter().zip(&b[..rows]).map(|(x, y)| (x - y).norm()).fold(0.0, nan_max) / scale
}

fn psi_vector(psis: &[LaurentPoly], z: Complex64) -> Vec<Complex64> {
    psis.iter().map(|f| f.eval_unchecked(z)).collect()
}

/// Largest gap of a vector relation `lhs(z) = M ψ(z)` over the plan points.
fn matrix_relation(
    psis: &[LaurentPoly],
    plan: &SamplePlan,
    rows: usize,
    lhs: impl Fn(Complex64) -> Vec<Complex64> + Sync + Send,
    rhs: impl Fn(&[Complex64], Complex64) -> Vec<Complex64> + Sync + Send,
) -> Result<f64> {
    let pts = plan.points()?;
    Ok(plan.execution.max_by(&pts, |&z| {
        let psi = psi_vector(psis, z);
        vector_gap(&lhs(z), &rhs(&psi, z), rows)
    }))
}

/// CMV structure of the sieved family: involutions, `Cψ = zψ`, the reflection
/// relations and their rotated analogues with measured phases.
pub fn cmv_suite(cfg: &SuiteConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let (p, n) = (cfg.params, cfg.order);
    let size = (cfg.n_max + 1).max(4).next_multiple_of(2);
    let fam = SievedFamily::new(p, n, size - 1)?;
    let psis: Vec<LaurentPoly> = (0..size).map(|k| fam.psi(k)).collect::<Result<_>>()?;
    let t = cmv_matrices(&VerblunskySequence::sieved(p.alpha, p.beta, n), size)?;
    let plan = cfg.plan(size + 2)?;
    let rows = t.valid_rows();
    let mut report = cfg.report("cmv").with_samples(plan.count);

    report.record("M1^2 = I", t.m1.matmul(&t.m1).identity_defect(rows));
    report.record("M2^2 = I", t.m2.matmul(&t.m2).identity_defect(size));
    let reflect = |z: Complex64| psi_vector(&psis, z.inv());
    report.record(
        "RM1",
        matrix_relation(&psis, &plan, rows, reflect, |psi, _| t.m1.matvec(psi))?,
    );
    report.record(
        "RM2",
        matrix_relation(&psis, &plan, size, |z| scaled(z, reflect(z)), |psi, _| t.m2.matvec(psi))?,
    );
    report.record(
        "GEVP",
        matrix_relation(&psis, &plan, rows, |z| scaled(z, t.m1.matvec(&psi_vector(&psis, z))), |psi, _| {
            t.m2.matvec(psi)
        })?,
    );
    report.record(
        "C psi = z psi",
        matrix_relation(&psis, &plan, rows, |z| scaled(z, psi_vector(&psis, z)), |psi, _| t.c.matvec(psi))?,
    );

    let phases = PhaseTable::measure(&fam, &plan)?;
    report.record("phases/unit modulus", phases.modulus_defect());
    report.record("phases/constant", phases.entries.iter().map(|e| e.variation).fold(0.0, nan_max));
    let mut closed: f64 = 0.0;
    for e in &phases.entries {
        closed = nan_max(closed, (e.reflection_phase - rotation_phase(e.n, n, -(e.j as i64))).norm());
    }
    report.record("phases/closed form", closed);
    let (mut m1_gap, mut m2_gap) = (0.0f64, 0.0f64);
    for j in 0..n {
        let column = phases
            .reflection_column(j, size)
            .ok_or_else(|| Error::Consistency(format!("missing phase column {j}")))?;
        let qj = q_pow(n, j as i64);
        let (m1j, m2j) = t.reflected(qj, &column)?;
        let image = |z: Complex64| psi_vector(&psis, qj / z);
        m1_gap = nan_max(m1_gap, matrix_relation(&psis, &plan, rows, image, |psi, _| m1j.matvec(psi))?);
        m2_gap = nan_max(
            m2_gap,
            matrix_relation(&psis, &plan, size, |z| scaled(z, image(z)), |psi, _| m2j.matvec(psi))?,
        );
        // applying R_j twice is the identity, so M_{1;j}² = I
        report.record(format!("M1;{j} involution"), m1j.matmul(&m1j).identity_defect(rows));
    }
    report.record("M1;j relation", m1_gap);
    report.record("M2;j relation", m2_gap);
    Ok(report)
}

fn scaled(z: Complex64, v: Vec<Complex64>) -> Vec<Complex64> {
    v.into_iter().map(|x| z * x).collect()
}

/// Coefficient identities and the agreement of the three presentations of `H(N)`.
///
/// The identity residuals are relative to the sum of the magnitudes of the
/// terms, so cancellation near the removable singularities is measured fairly.
pub fn identity_suite(cfg: &SuiteConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let (p, n) = (cfg.params, cfg.order);
    let plan = cfg.plan(2 * PANEL_RADIUS as usize + 4 * n)?;
    let pts = plan.points()?;
    let mut report = cfg.report("identities").with_seed(cfg.seed).with_samples(plan.count);
    let exec = plan.execution;
    let ni = n as i64;

    // E_k(z) = Σ_i A_i(z) A_{i+k}(q^i/z) = 0 for k = 1..N−1
    let mut e_worst: f64 = 0.0;
    for k in 1..ni {
        let a: Vec<_> = (0..ni).map(|i| coeff_a(&p, n, i)).collect();
        let shifted: Vec<_> = (0..ni).map(|i| coeff_a(&p, n, i + k)).collect();
        let r = exec.try_map(&pts, |&z| {
            let mut sum = Complex64::new(0.0, 0.0);
            let mut mag = 0.0;
            for i in 0..n {
                let term = a[i].eval(z)? * shifted[i].eval(q_pow(n, i as i64) / z)?;
                sum += term;
                mag += term.norm();
            }
            Ok::<_, Error>(sum.norm() / mag.max(1.0))
        })?;
        e_worst = r.into_iter().fold(e_worst, nan_max);
    }
    report.record("E_k = 0", e_worst);

    // the rotation coefficients of L∘L − N s L vanish
    let square = build_h(&p, n, HMode::Square)?;
    let mut rot_worst: f64 = 0.0;
    for k in 1..ni {
        for d in 0..=2 {
            let key = (d, GroupElement::rotation(n, k));
            let r = exec.try_map(&pts, |&z| square.coefficient_at(key, z).map(|c| c.norm()))?;
            rot_worst = r.into_iter().fold(rot_worst, nan_max);
        }
    }
    report.record("square form has no rotations", rot_worst);

    let b = coeff_b(&p, n);
    let nf = n as f64;
    let mut bb_worst: f64 = 0.0;
    for k in 0..ni {
        let r = exec.try_map(&pts, |&z| {
            let (u, v) = (b.eval(z)?, b.eval(q_pow(n, k) / z)?);
            Ok::<_, Error>((u + v - nf * p.s()).norm() / (u.norm() + v.norm()).max(1.0))
        })?;
        bb_worst = r.into_iter().fold(bb_worst, nan_max);
    }
    report.record("B(z) + B(q^k/z) = N(a+b+1)", bb_worst);

    let b_sum = coeff_b_sum(&p, n);
    let r = exec.try_map(&pts, |&z| {
        let terms: Vec<Complex64> = (0..ni).map(|k| coeff_a(&p, n, k).eval(z)).collect::<Result<_>>()?;
        let mag: f64 = terms.iter().map(|t| t.norm()).sum();
        Ok::<_, Error>((b_sum.eval(z)? - b.eval(z)?).norm() / mag.max(1.0))
    })?;
    report.record("B = -sum A_k", r.into_iter().fold(0.0, nan_max));

    let mut sg: f64 = 0.0;
    for h in 0..ni {
        let r = exec.map(&pts, |&z| {
            // sample inside and outside the unit circle
            let w = z * 0.7;
            let (l, rr) = sumgen(n, h, w);
            let mag: f64 = (0..ni).map(|l| (q_pow(n, l * (h + 1)) / (q_pow(n, l) - w)).norm()).sum();
            (l - rr).norm() / mag.max(1.0)
        });
        sg = r.into_iter().fold(sg, nan_max);
    }
    report.record("geometric root sum", sg);

    let mut dg: f64 = 0.0;
    for k in 0..ni {
        // A_k (B(z) + B(q^k/z) − N s) + z A_k', evaluated piece by piece
        let (direct, a) = (coeff_d(&p, n, k), coeff_a(&p, n, k));
        let r = exec.try_map(&pts, |&z| {
            let (b1, b2, y, ak) = (b.eval(z)?, b.eval(q_pow(n, k) / z)?, direct.eval(z)?, a.eval(z)?);
            let x = ak * (b1 + b2 - nf * p.s()) + y;
            let mag = ak.norm() * (b1.norm() + b2.norm() + nf * p.s()) + y.norm();
            Ok::<_, Error>((x - y).norm() / mag.max(1.0))
        })?;
        dg = r.into_iter().fold(dg, nan_max);
    }
    report.record("reflection coefficient = z A_k'", dg);

    let symmetric: Vec<LaurentPoly> = random_panel(cfg.seed, PANEL_SIZE, PANEL_RADIUS)
        .into_iter()
        .map(|f| (&f + &f.reflect()).scale_real(0.5))
        .collect();
    let mut rt: f64 = 0.0;
    for k in 0..ni {
        let r = DunklOperator::group(GroupElement::reflection(n, k));
        let t = DunklOperator::group(GroupElement::rotation(n, -k));
        rt = nan_max(rt, panel_residual(&r, &t, &symmetric, &plan)?);
    }
    report.record("R_k = T_-k on symmetric inputs", rt);

    let explicit_r = build_h(&p, n, HMode::ExplicitR)?;
    let explicit_t = build_h(&p, n, HMode::ExplicitT)?;
    report.record("H/square vs reflections", panel_residual(&square, &explicit_r, &symmetric, &plan)?);
    report.record("H/reflections vs rotations", panel_residual(&explicit_r, &explicit_t, &symmetric, &plan)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cmv_relations_hold() {
        for n in 1..=4 {
            let r = cmv_suite(&SuiteConfig::new(0.3, 1.7, n, 15).with_tolerance(1e-10)).unwrap();
            assert!(r.pass, "{r}");
        }
    }

    #[test]
    fn identities_hold() {
        for n in 1..=5 {
            let r = identity_suite(&SuiteConfig::new(0.5, 1.5, n, 0).with_tolerance(1e-10)).unwrap();
            assert!(r.pass, "{r}");
        }
    }
}
