//! Relations of the dihedral group with the reflection multipliers `M_j = z R_j`,
//! and the (anti)commutation relations closing on `L(N)`.
//!
//! Every relation is checked twice where possible: symbolically, by reducing
//! words `q^s z^p g`, and semantically, by applying both sides to a seeded
//! panel of random Laurent polynomials at the points of a [`SamplePlan`].

use crate::dunkl::{build_k, build_l, DunklOperator, LForm, Rational};
use crate::error::{Error, Result};
use crate::group::{DihedralWord, GroupElement};
use crate::jacobi::JacobiParams;
use crate::laurent::{LaurentPoly, SamplePlan};
use crate::par::{nan_max, Execution};
use crate::roots::q_pow;
use crate::verify::{CheckReport, RunParams};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Number of functions in the default test panel.
pub const PANEL_SIZE: usize = 20;
/// Exponent window `[−r, r]` of panel functions.
pub const PANEL_RADIUS: i32 = 8;

/// Operator product of two reduced words.
pub fn compose_group(a: &DihedralWord, b: &DihedralWord) -> DihedralWord {
    a.compose(b)
}

/// `count` random Laurent polynomials with exponents in `[−radius, radius]`
/// and coefficients uniform in the unit square `[0,1) + i[0,1)`.
pub fn random_panel(seed: u64, count: usize, radius: i32) -> Vec<LaurentPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            LaurentPoly::from_pairs(
                (-radius..=radius).map(|e| (e, Complex64::new(rng.random::<f64>(), rng.random::<f64>()))),
            )
        })
        .collect()
}

/// The operator `q^s z^p g`.
pub fn word_operator(w: &DihedralWord) -> DunklOperator {
    let coeff = LaurentPoly::monomial(w.z_power(), w.scalar());
    DunklOperator::zero(w.group_element().order()).with(Rational::poly(coeff), 0, w.group_element())
}

/// Largest relative discrepancy `|lhs f − rhs f| / max(1, |lhs f|, |rhs f|)`
/// over the panel and the plan points.
pub fn panel_residual(
    lhs: &DunklOperator,
    rhs: &DunklOperator,
    panel: &[LaurentPoly],
    plan: &SamplePlan,
) -> Result<f64> {
    let pts = plan.points()?;
    let per_fn = plan.execution.try_map(panel, |f| {
        let a = lhs.apply_many(f, &pts, Execution::Sequential)?;
        let b = rhs.apply_many(f, &pts, Execution::Sequential)?;
        let scale = a.iter().chain(&b).map(|v| v.norm()).fold(1.0, nan_max);
        Ok::<_, Error>(a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, nan_max) / scale)
    })?;
    Ok(per_fn.into_iter().fold(0.0, nan_max))
}

/// A group relation `lhs₁ ∘ lhs₂ = rhs` between reduced words.
struct WordRelation {
    left: DihedralWord,
    right: DihedralWord,
    expect: DihedralWord,
}

impl WordRelation {
    fn new(left: DihedralWord, right: DihedralWord, expect: DihedralWord) -> Self {
        WordRelation { left, right, expect }
    }

    fn symbolic_ok(&self) -> bool {
        compose_group(&self.left, &self.right) == self.expect
    }

    fn semantic(&self, panel: &[LaurentPoly], plan: &SamplePlan) -> Result<f64> {
        let lhs = word_operator(&self.left).compose(&word_operator(&self.right))?;
        panel_residual(&lhs, &word_operator(&self.expect), panel, plan)
    }
}

fn el(g: GroupElement) -> DihedralWord {
    DihedralWord::element(g)
}

/// Group relations for one family, by name.
fn word_relations(n: usize) -> Vec<(&'static str, Vec<WordRelation>)> {
    let r = |j: i64| el(GroupElement::reflection(n, j));
    let t = |k: i64| el(GroupElement::rotation(n, k));
    let m = |j: i64| DihedralWord::reflection_multiplier(n, j);
    let word = |s: i64, p: i32, g: GroupElement| DihedralWord::new(s, p, g);
    let idx: Vec<(i64, i64)> = (0..n as i64).flat_map(|j| (0..n as i64).map(move |k| (j, k))).collect();

    let mut out = Vec::new();
    out.push(("RRT", idx.iter().map(|&(k, j)| WordRelation::new(r(k), r(j), t(j - k))).collect()));
    let mut rel_d = Vec::new();
    for &(k, j) in &idx {
        rel_d.push(WordRelation::new(t(k), t(j), t(k + j)));
        rel_d.push(WordRelation::new(t(j), t(k), t(k + j)));
        rel_d.push(WordRelation::new(t(k), r(j), r(j - k)));
        rel_d.push(WordRelation::new(r(j), t(k), r(j + k)));
    }
    out.push(("rel_D", rel_d));
    let mut order = Vec::new();
    for j in 0..n as i64 {
        order.push(WordRelation::new(r(j), r(j), t(0)));
        // T_j^{N} = T_j ∘ T_j^{N−1}
        order.push(WordRelation::new(t(j), t(j * (n as i64 - 1)), t(0)));
    }
    out.push(("RT_order", order));
    out.push((
        "zR2/MM",
        idx.iter()
            .map(|&(j, k)| WordRelation::new(m(j), m(k), word(j, 0, GroupElement::rotation(n, k - j))))
            .collect(),
    ));
    out.push((
        "zR2/MR",
        idx.iter()
            .map(|&(j, k)| WordRelation::new(m(j), r(k), word(0, 1, GroupElement::rotation(n, k - j))))
            .collect(),
    ));
    out.push((
        "zR2/RM",
        idx.iter()
            .map(|&(j, k)| WordRelation::new(r(k), m(j), word(k, -1, GroupElement::rotation(n, j - k))))
            .collect(),
    ));
    out.push((
        "zR2/RM (printed)",
        idx.iter()
            .map(|&(j, k)| WordRelation::new(r(k), m(j), word(j, -1, GroupElement::rotation(n, j - k))))
            .collect(),
    ));
    out
}

/// Number of associativity failures over all triples of the words
/// `{T_k, R_j, M_j}`; zero for a correct composition table.
pub fn associativity_defects(n: usize) -> usize {
    let mut words: Vec<DihedralWord> = GroupElement::all(n).into_iter().map(el).collect();
    words.extend((0..n as i64).map(|j| DihedralWord::reflection_multiplier(n, j)));
    let mut bad = 0;
    for a in &words {
        for b in &words {
            let ab = compose_group(a, b);
            for c in &words {
                if compose_group(&ab, c) != compose_group(a, &compose_group(b, c)) {
                    bad += 1;
                }
            }
        }
    }
    bad
}

fn scalar(n: usize, c: Complex64) -> DunklOperator {
    DunklOperator::scalar(n, c)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn rotation_sum(n: usize, terms: impl IntoIterator<Item = (i64, Complex64)>) -> DunklOperator {
    terms.into_iter().fold(DunklOperator::zero(n), |acc, (k, c)| {
        acc.add(&DunklOperator::group(GroupElement::rotation(n, k)).scale(c))
    })
}

/// Operator relations `lhs = rhs` with `L(N)`; names ending in `(printed)`
/// carry the alternative printed coefficients and are reference checks.
fn operator_relations(p: &JacobiParams, n: usize) -> Result<Vec<(String, DunklOperator, DunklOperator)>> {
    let l = build_l(p, n, LForm::Reflection)?;
    let (s, d) = (p.s(), p.d());
    let nf = n as f64;
    let mut out = Vec::new();
    for j in 0..n as i64 {
        let t = DunklOperator::group(GroupElement::rotation(n, j));
        out.push((format!("comm_LT/j={j}"), l.commutator(&t)?, DunklOperator::zero(n)));
    }
    for j in 0..n as i64 {
        let r = DunklOperator::group(GroupElement::reflection(n, j));
        let m = DunklOperator::reflection_multiplier(n, j);
        let acr = r.anticommutator(&l)?;
        let acm = m.anticommutator(&l)?;
        if n.is_multiple_of(2) {
            let half = n as i64 / 2;
            let rhs = r.scale_real(nf * s)
                .add(&rotation_sum(n, (0..half).map(|k| (2 * k + j, real(-(2.0 * p.alpha + 1.0))))))
                .add(&rotation_sum(n, (0..half).map(|k| (2 * k + j + 1, real(-(2.0 * p.beta + 1.0))))));
            out.push((format!("acm_even_1/j={j}"), acr, rhs));
            out.push((format!("acm_even_2/j={j}"), acm, m.scale_real(nf * s + 1.0)));
        } else {
            let rhs = r.scale_real(nf * s).add(&rotation_sum(n, (0..n as i64).map(|k| (k, real(-s)))));
            out.push((format!("acm_odd_1/j={j}"), acr, rhs));
            let big_j = (n as i64 - 1) / 2;
            let base = m.scale_real(nf * s + 1.0);
            let corrected = base.add(&rotation_sum(n, (0..n as i64).map(|k| (j + k, q_pow(n, k * big_j) * d))));
            let printed = base.add(&rotation_sum(n, (0..n as i64).map(|k| (j + k, q_pow(n, j + k * big_j) * d))));
            out.push((format!("acm_odd_2/j={j}"), acm.clone(), corrected));
            out.push((format!("acm_odd_2/j={j} (printed)"), acm, printed));
        }
    }
    if n == 1 {
        let k = build_k(p);
        let m1 = DunklOperator::group(GroupElement::reflection(1, 0));
        let m2 = DunklOperator::reflection_multiplier(1, 0);
        let rhs1 = m1.sub(&scalar(1, real(1.0))).scale_real(s);
        let rhs2 = m2.scale_real(s + 1.0).add(&scalar(1, real(d)));
        out.push(("KM12/M1".to_string(), k.anticommutator(&m1)?, rhs1));
        out.push(("KM12/M2".to_string(), k.anticommutator(&m2)?, rhs2));
    }
    Ok(out)
}

/// Options for [`relation_suite`].
#[derive(Debug, Clone, Copy)]
pub struct RelationConfig {
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub execution: Execution,
}

impl Default for RelationConfig {
    fn default() -> Self {
        RelationConfig {
            seed: 42,
            samples: 2 * (2 * PANEL_RADIUS as usize) + 17,
            tolerance: 1e-10,
            execution: Execution::default(),
        }
    }
}

/// Checks the group, multiplier and `L(N)` relations for one parameter set.
///
/// Group relations are checked over all index pairs, both as reduced words
/// and on the panel; operator relations on the panel.
pub fn relation_suite(p: &JacobiParams, n: usize, cfg: &RelationConfig) -> Result<CheckReport> {
    if n == 0 {
        return Err(Error::Domain("dihedral order N must be at least 1".into()));
    }
    let panel = random_panel(cfg.seed, PANEL_SIZE, PANEL_RADIUS);
    let plan = SamplePlan::for_order(cfg.samples, n).with_execution(cfg.execution);
    plan.certify_span(2 * PANEL_RADIUS as usize + 2)?;
    let mut report = CheckReport::new("algebra", RunParams::new(p.alpha, p.beta, n, 0), cfg.tolerance)
        .with_seed(cfg.seed)
        .with_samples(plan.count);

    let generated = GroupElement::generated_by(&[GroupElement::reflection(n, 0), GroupElement::reflection(n, 1)]);
    report.record_flag("generation/R0,R1", generated.len() == 2 * n).note(format!("{} elements", generated.len()));
    let bad = associativity_defects(n);
    report.record_flag("associativity", bad == 0).note(format!("{bad} failing triples"));

    for (name, rels) in word_relations(n) {
        let mismatches = rels.iter().filter(|r| !r.symbolic_ok()).count();
        let semantic = rels.iter().try_fold(0.0, |acc, r| Ok::<_, Error>(nan_max(acc, r.semantic(&panel, &plan)?)))?;
        let printed = name.ends_with("(printed)");
        let note = format!("{mismatches} of {} symbolic mismatches", rels.len());
        let residual = if mismatches > 0 { semantic.max(1.0) } else { semantic };
        if printed {
            report.reference(name, residual).note(note);
        } else {
            report.record(name, residual).note(note);
        }
    }

    for (name, lhs, rhs) in operator_relations(p, n)? {
        let residual = panel_residual(&lhs, &rhs, &panel, &plan)?;
        if name.ends_with("(printed)") {
            report.reference(name, residual);
        } else {
            report.record(name, residual);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_group_examples() {
        for n in 1..=6 {
            let r = |j| el(GroupElement::reflection(n, j));
            let t = |k| el(GroupElement::rotation(n, k));
            assert_eq!(compose_group(&r(1), &r(0)), t(n as i64 - 1));
            assert_eq!(compose_group(&t(2), &t(3)), t(5));
            for j in 0..n as i64 {
                assert_eq!(compose_group(&r(j), &r(j)), t(0));
            }
        }
    }

    #[test]
    fn table_is_associative() {
        for n in 1..=6 {
            assert_eq!(associativity_defects(n), 0, "N = {n}");
        }
    }

    #[test]
    fn panel_is_reproducible() {
        let a = random_panel(7, 3, 2);
        let b = random_panel(7, 3, 2);
        assert_eq!(a, b);
        assert_ne!(a, random_panel(8, 3, 2));
        assert_eq!(a[0].span(), Some((-2, 2)));
        assert!(a.iter().flat_map(|f| f.iter()).all(|(_, c)| (0.0..1.0).contains(&c.re) && (0.0..1.0).contains(&c.im)));
    }

    #[test]
    fn even_reflection_anticommutator() {
        let report = relation_suite(&JacobiParams::new(0.5, 1.5), 2, &RelationConfig::default()).unwrap();
        assert!(report.detail("acm_even_1/j=0").unwrap().residual < 1e-10);
        assert!(report.pass, "{report}");
    }

    #[test]
    fn odd_multiplier_anticommutator() {
        let report = relation_suite(&JacobiParams::new(0.3, 1.7), 3, &RelationConfig::default()).unwrap();
        assert!(report.detail("acm_odd_2/j=1").unwrap().residual < 1e-10);
        assert!(report.detail("acm_odd_2/j=0 (printed)").unwrap().pass);
        assert!(!report.detail("acm_odd_2/j=1 (printed)").unwrap().pass);
        assert!(!report.detail("zR2/RM (printed)").unwrap().pass);
        assert!(report.pass, "{report}");
    }

    #[test]
    fn circle_jacobi_algebra() {
        let report = relation_suite(&JacobiParams::new(1.0, 0.0), 1, &RelationConfig::default()).unwrap();
        assert!(report.detail("KM12/M1").unwrap().residual < 1e-10);
        assert!(report.detail("KM12/M2").unwrap().residual < 1e-10);
        assert!(report.pass, "{report}");
    }
}
