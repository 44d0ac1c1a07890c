//! Polynomials on `[−2, 2]` obtained from the sieved Jacobi OPUC through the
//! Szegő map `x = z + 1/z`, their recurrences and the special-case operators.

use crate::dunkl::{build_h, build_h_hat_explicit, build_h_ultra, build_k, build_l, coeffs, DunklOperator, HMode, LForm, Rational};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::jacobi::{JacobiParams, SievedFamily};
use crate::laurent::{LaurentPoly, SamplePlan};
use crate::par::{nan_max, Execution};
use crate::verify::{eigen_residual, CheckReport, RunParams};
use num_complex::Complex64;
use serde::Serialize;

/// Tolerance used when converting to the x-basis and dividing by `z − 1/z`.
const STRUCTURE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Kind {
    /// First kind, orthogonal for `w(x)`.
    P,
    /// Second kind, orthogonal for `w(x)(4 − x²)`.
    Q,
}

/// A polynomial in `x = z + 1/z`, kept both as a symmetric Laurent polynomial
/// and as coefficients `[c_0, …, c_n]` in `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricPoly {
    pub laurent: LaurentPoly,
    pub x_coeffs: Vec<Complex64>,
}

impl SymmetricPoly {
    fn from_laurent(laurent: LaurentPoly) -> Result<Self> {
        let x_coeffs = laurent.to_x_basis(STRUCTURE_TOL).map_err(|e| match e {
            Error::Symmetry { deviation } => {
                Error::Consistency(format!("Szegő image is not symmetric (deviation {deviation:e})"))
            }
            other => other,
        })?;
        Ok(SymmetricPoly { laurent, x_coeffs })
    }

    pub fn degree(&self) -> usize {
        self.x_coeffs.len().saturating_sub(1)
    }

    /// Leading x-coefficient (1 for a monic polynomial).
    pub fn leading(&self) -> Complex64 {
        *self.x_coeffs.last().expect("x-coefficients are never empty")
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::Domain("sieving order N must be at least 1".into()));
    }
    Ok(())
}

/// `P_n = z^{1−n} Φ_{2n−1}(z;N) + z^{n−1} Φ_{2n−1}(1/z;N)`, `P_0 = 1`.
fn p_from_phi(fam: &SievedFamily, n: usize) -> Result<LaurentPoly> {
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let psi = fam.phi(2 * n - 1)?.shift(1 - n as i32);
    Ok(&psi + &psi.reflect())
}

/// `ψ_{2n} + (1 + a_{2n−1}) ψ_{2n−1}`.
fn p_from_psi(fam: &SievedFamily, n: usize) -> Result<LaurentPoly> {
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let a = fam.a(2 * n - 1)?;
    Ok(&fam.psi(2 * n)? + &fam.psi(2 * n - 1)?.scale_real(1.0 + a))
}

/// `z^{−n} Φ_{2n+1}(z;N) − z^{n} Φ_{2n+1}(1/z;N)`, divisible by `z − 1/z`.
fn q_numerator_from_phi(fam: &SievedFamily, n: usize) -> Result<LaurentPoly> {
    let psi = fam.phi(2 * n + 1)?.shift(-(n as i32));
    Ok(&psi - &psi.reflect())
}

/// `−ψ_{2n+2} + (1 − a_{2n+1}) ψ_{2n+1}`.
fn q_numerator_from_psi(fam: &SievedFamily, n: usize) -> Result<LaurentPoly> {
    let a = fam.a(2 * n + 1)?;
    Ok(&fam.psi(2 * n + 1)?.scale_real(1.0 - a) - &fam.psi(2 * n + 2)?)
}

/// `P_n(x;N)`.
pub fn poly_p(p: &JacobiParams, order: usize, n: usize) -> Result<SymmetricPoly> {
    check_order(order)?;
    let fam = SievedFamily::new(*p, order, 2 * n + 2)?;
    SymmetricPoly::from_laurent(p_from_phi(&fam, n)?)
}

/// `Q_n(x;N)`, by exact division of the antisymmetric numerator by `z − 1/z`.
pub fn poly_q(p: &JacobiParams, order: usize, n: usize) -> Result<SymmetricPoly> {
    check_order(order)?;
    let fam = SievedFamily::new(*p, order, 2 * n + 2)?;
    q_from_numerator(q_numerator_from_phi(&fam, n)?)
}

fn q_from_numerator(num: LaurentPoly) -> Result<SymmetricPoly> {
    let q = num.div_exact(&LaurentPoly::phi(), STRUCTURE_TOL)?;
    SymmetricPoly::from_laurent(q)
}

/// `P_0 … P_{n_max}` or `Q_0 … Q_{n_max}` for one parameter set.
#[derive(Debug, Clone)]
pub struct SymmetricFamily {
    kind: Kind,
    params: JacobiParams,
    order: usize,
    polys: Vec<SymmetricPoly>,
    /// For `Q`, the numerators before division by `z − 1/z`.
    numerators: Vec<LaurentPoly>,
    source: SievedFamily,
}

impl SymmetricFamily {
    pub fn new(kind: Kind, params: JacobiParams, order: usize, n_max: usize) -> Result<Self> {
        check_order(order)?;
        let source = SievedFamily::new(params, order, 2 * n_max + 2)?;
        let mut polys = Vec::with_capacity(n_max + 1);
        let mut numerators = Vec::new();
        for n in 0..=n_max {
            match kind {
                Kind::P => polys.push(SymmetricPoly::from_laurent(p_from_phi(&source, n)?)?),
                Kind::Q => {
                    let num = q_numerator_from_phi(&source, n)?;
                    polys.push(q_from_numerator(num.clone())?);
                    numerators.push(num);
                }
            }
        }
        Ok(SymmetricFamily { kind, params, order, polys, numerators, source })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn params(&self) -> JacobiParams {
        self.params
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn n_max(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn get(&self, n: usize) -> Result<&SymmetricPoly> {
        self.polys.get(n).ok_or(Error::IndexOutOfRange { index: n, max: self.n_max() })
    }

    pub fn polys(&self) -> &[SymmetricPoly] {
        &self.polys
    }

    /// The antisymmetric precursor `φ Q_n` (second kind only).
    pub fn numerator(&self, n: usize) -> Option<&LaurentPoly> {
        self.numerators.get(n)
    }

    /// Largest coefficient distance between the Φ-route and the ψ-route,
    /// relative to the size of the polynomial.
    pub fn route_defect(&self) -> Result<f64> {
        let mut worst = 0.0;
        for n in 0..=self.n_max() {
            let (a, b) = match self.kind {
                Kind::P => (self.polys[n].laurent.clone(), p_from_psi(&self.source, n)?),
                Kind::Q => (self.numerators[n].clone(), q_numerator_from_psi(&self.source, n)?),
            };
            worst = nan_max(worst, a.distance(&b) / a.max_abs_coeff().max(1.0));
        }
        Ok(worst)
    }

    /// Largest `|leading x-coefficient − 1|`.
    pub fn monic_defect(&self) -> f64 {
        self.polys.iter().map(|p| (p.leading() - 1.0).norm()).fold(0.0, nan_max)
    }
}

/// Closed-form recurrence coefficients of the special families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UFamily {
    /// `N = 2`, any `α, β`.
    GeneralizedUltra,
    /// `α = β`, first kind.
    SievedUltra1,
    /// `α = β`, second kind.
    SievedUltra2,
}

impl UFamily {
    pub fn kind(self) -> Kind {
        match self {
            UFamily::SievedUltra2 => Kind::Q,
            _ => Kind::P,
        }
    }

    pub fn check(self, p: &JacobiParams, order: usize) -> Result<()> {
        match self {
            UFamily::GeneralizedUltra if order != 2 => {
                Err(Error::Constraint(format!("generalized ultraspherical family needs N = 2 (got {order})")))
            }
            UFamily::SievedUltra1 | UFamily::SievedUltra2 if p.alpha != p.beta => Err(Error::Constraint(format!(
                "sieved ultraspherical families need α = β (got α = {}, β = {})",
                p.alpha, p.beta
            ))),
            UFamily::SievedUltra1 | UFamily::SievedUltra2 if order < 2 => Err(Error::Constraint(
                "sieved ultraspherical index rule needs N ≥ 2".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// `u_n` of `P_{n+1} + u_n P_{n−1} = x P_n` for the special families.
///
/// For the generalized ultraspherical family the odd coefficients are
/// `u_{2m+1} = 4(β+m+1)(α+β+m+1)/((α+β+2m+1)(α+β+2m+2))`.
pub fn recurrence_u(family: UFamily, p: &JacobiParams, order: usize, n: usize) -> Result<f64> {
    family.check(p, order)?;
    let (a, b) = (p.alpha, p.beta);
    Ok(match family {
        UFamily::GeneralizedUltra => {
            let m = (n / 2) as f64;
            if n.is_multiple_of(2) {
                4.0 * m * (a + m) / ((a + b + 2.0 * m) * (a + b + 2.0 * m + 1.0))
            } else {
                4.0 * (b + m + 1.0) * (a + b + m + 1.0) / ((a + b + 2.0 * m + 1.0) * (a + b + 2.0 * m + 2.0))
            }
        }
        UFamily::SievedUltra1 => {
            let m = (n / order) as f64;
            match n % order {
                0 => 2.0 * m / (2.0 * a + 2.0 * m + 1.0),
                1 => (4.0 * a + 2.0 * m + 2.0) / (2.0 * a + 2.0 * m + 1.0),
                _ => 1.0,
            }
        }
        UFamily::SievedUltra2 => {
            if n == 0 {
                // multiplies Q_{−1} = 0
                return Ok(0.0);
            }
            if n.is_multiple_of(order) {
                let m = (n / order) as f64;
                2.0 * m / (2.0 * a + 2.0 * m + 1.0)
            } else if (n + 1).is_multiple_of(order) {
                let m = ((n + 1) / order) as f64;
                (4.0 * a + 2.0 * m + 2.0) / (2.0 * a + 2.0 * m + 1.0)
            } else {
                1.0
            }
        }
    })
}

/// The alternative odd coefficient `4(β+m+1)(α+m+1)/((α+β+2m+2)(α+β+2m+1))`
/// placed at index `2m+1` (even indices as in [`recurrence_u`]).
pub fn recurrence_u_printed(p: &JacobiParams, n: usize) -> Result<f64> {
    if n.is_multiple_of(2) {
        return recurrence_u(UFamily::GeneralizedUltra, p, 2, n);
    }
    let (a, b, m) = (p.alpha, p.beta, (n / 2) as f64);
    Ok(4.0 * (b + m + 1.0) * (a + m + 1.0) / ((a + b + 2.0 * m + 2.0) * (a + b + 2.0 * m + 1.0)))
}

/// `u_n` read off a family: `u_n = [x^{n−1}](x P_n − P_{n+1}) / [x^{n−1}] P_{n−1}`.
pub fn measured_u(fam: &SymmetricFamily, n: usize) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let next = fam.get(n + 1)?;
    let cur = fam.get(n)?;
    let shifted = if n >= 2 { cur.x_coeffs[n - 2] } else { Complex64::new(0.0, 0.0) };
    Ok((shifted - next.x_coeffs[n - 1]).re)
}

/// Residual of `P_{n+1} + u_n P_{n−1} − x P_n` in x-coefficient space,
/// relative to `max(1, max|coeff of x P_n|)`.
pub fn three_term_residual(fam: &SymmetricFamily, u: impl Fn(usize) -> Result<f64>, n: usize) -> Result<f64> {
    let cur = &fam.get(n)?.x_coeffs;
    let next = &fam.get(n + 1)?.x_coeffs;
    let zero = Complex64::new(0.0, 0.0);
    let un = u(n)?;
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for k in 0..=n + 1 {
        let x_pn = if k == 0 { zero } else { cur.get(k - 1).copied().unwrap_or(zero) };
        let prev = if n == 0 { zero } else { fam.get(n - 1)?.x_coeffs.get(k).copied().unwrap_or(zero) };
        let r = next.get(k).copied().unwrap_or(zero) + un * prev - x_pn;
        worst = nan_max(worst, r.norm());
        scale = nan_max(scale, x_pn.norm());
    }
    Ok(worst / scale)
}

/// Checks the three-term recurrence for `n ≤ n_max` with the closed-form `u`.
pub fn check_three_term(family: UFamily, p: &JacobiParams, order: usize, n_max: usize, tol: f64) -> Result<CheckReport> {
    family.check(p, order)?;
    let fam = SymmetricFamily::new(family.kind(), *p, order, n_max + 1)?;
    let mut report = CheckReport::new("three-term", RunParams::new(p.alpha, p.beta, order, n_max), tol);
    let name = match family {
        UFamily::GeneralizedUltra => "generalized_ultra",
        UFamily::SievedUltra1 => "sieved_ultra_1",
        UFamily::SievedUltra2 => "sieved_ultra_2",
    };
    let worst = (0..=n_max).try_fold(0.0, |acc, n| {
        three_term_residual(&fam, |k| recurrence_u(family, p, order, k), n).map(|r| nan_max(acc, r))
    })?;
    report.record(name, worst);
    if family == UFamily::GeneralizedUltra {
        let printed = (0..=n_max).try_fold(0.0, |acc, n| {
            three_term_residual(&fam, |k| recurrence_u_printed(p, k), n).map(|r| nan_max(acc, r))
        })?;
        report.reference(format!("{name} (printed)"), printed);
    }
    report.record("monic", fam.monic_defect());
    report.record("routes", fam.route_defect()?);
    Ok(report)
}

/// Which special-case operator to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Special {
    /// `N = 2`: `z²∂² + C∂ + c_T(z)(T − I)` with `T f(z) = f(−z)`.
    HGu { printed: bool },
    /// `α = β`: `H(N)` from the ultraspherical coefficients.
    HUltraP,
    /// `α = β`: `Ĥ(N)` acting on the second kind.
    HUltraQ,
}

/// `c_T` of the `N = 2` operator: `−2(2β+1)z²/(z²+1)²`, or the alternative
/// `−(2β+1)z²/(z²+1)`.
fn gu_t_coeff(beta: f64, printed: bool) -> Rational {
    let w = -(2.0 * beta + 1.0);
    let zsq1 = LaurentPoly::from_real_slice(0, &[1.0, 0.0, 1.0]);
    let (num, den) = if printed {
        (LaurentPoly::monomial(2, Complex64::new(w, 0.0)), zsq1)
    } else {
        (LaurentPoly::monomial(2, Complex64::new(2.0 * w, 0.0)), &zsq1 * &zsq1)
    };
    Rational::new(num, den).expect("nonzero denominator")
}

/// `C(z) = z(2α+2β+3 + 4(α+β+1 + (α−β)z²)/(z⁴−1))`.
fn gu_c_coeff(p: &JacobiParams) -> Rational {
    let den = LaurentPoly::from_real_slice(0, &[-1.0, 0.0, 0.0, 0.0, 1.0]);
    let lead = &LaurentPoly::monomial(1, Complex64::new(2.0 * p.s() + 1.0, 0.0)) * &den;
    let tail = LaurentPoly::from_real_slice(1, &[4.0 * p.s(), 0.0, 4.0 * p.d()]);
    Rational::new(&lead + &tail, den).expect("nonzero denominator")
}

/// The same `C` with the numerator read literally as `α+β+1 + α − βz²`.
fn gu_c_coeff_literal(p: &JacobiParams) -> Rational {
    let den = LaurentPoly::from_real_slice(0, &[-1.0, 0.0, 0.0, 0.0, 1.0]);
    let lead = &LaurentPoly::monomial(1, Complex64::new(2.0 * p.s() + 1.0, 0.0)) * &den;
    let tail = LaurentPoly::from_real_slice(1, &[4.0 * (p.s() + p.alpha), 0.0, -4.0 * p.beta]);
    Rational::new(&lead + &tail, den).expect("nonzero denominator")
}

pub fn special_operator(p: &JacobiParams, order: usize, which: Special) -> Result<DunklOperator> {
    match which {
        Special::HGu { printed } => {
            if order != 2 {
                return Err(Error::Constraint(format!("the reflection-form operator needs N = 2 (got {order})")));
            }
            let id = GroupElement::identity(2);
            let t = gu_t_coeff(p.beta, printed);
            Ok(DunklOperator::zero(2)
                .with(Rational::poly(LaurentPoly::z_pow(2)), 2, id)
                .with(gu_c_coeff(p), 1, id)
                .with(t.clone(), 0, GroupElement::rotation(2, 1))
                .with(t.neg(), 0, id))
        }
        Special::HUltraP | Special::HUltraQ => {
            if p.alpha != p.beta {
                return Err(Error::Constraint(format!(
                    "ultraspherical operators need α = β (got α = {}, β = {})",
                    p.alpha, p.beta
                )));
            }
            if which == Special::HUltraP {
                build_h_ultra(p.alpha, order, false)
            } else {
                build_h_hat_explicit(p.alpha, order, false)
            }
        }
    }
}

/// Largest relative difference of the coefficient functions of two operators
/// over the union of their term keys.
pub fn coefficient_defect(a: &DunklOperator, b: &DunklOperator, plan: &SamplePlan) -> Result<f64> {
    let mut keys = a.keys();
    for k in b.keys() {
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    let pts = plan.points()?;
    let mut worst = 0.0;
    for key in keys {
        let per = plan.execution.try_map(&pts, |&z| {
            let (x, y) = (a.coefficient_at(key, z)?, b.coefficient_at(key, z)?);
            Ok::<_, Error>((x - y).norm() / x.norm().max(y.norm()).max(1.0))
        })?;
        worst = per.into_iter().fold(worst, nan_max);
    }
    Ok(worst)
}

/// Special-case checks: the `N = 2` operator against generic `H(2)`, the
/// ultraspherical spectra, the `N = 1` reduction and `L(1)` against `K`.
pub fn special_suite(p: &JacobiParams, order: usize, n_max: usize, samples: usize, tol: f64, exec: Execution) -> Result<CheckReport> {
    check_order(order)?;
    let mut report = CheckReport::new("special", RunParams::new(p.alpha, p.beta, order, n_max), tol);
    let width = 4 * n_max + 8;
    let plan = SamplePlan::for_order(samples.max(2 * width + 17), order).with_execution(exec);
    report.samples = plan.count;
    let first = SymmetricFamily::new(Kind::P, *p, order, n_max)?;

    if order == 2 {
        let generic = build_h(p, 2, HMode::ExplicitT)?;
        let corrected = special_operator(p, 2, Special::HGu { printed: false })?;
        let printed = special_operator(p, 2, Special::HGu { printed: true })?;
        report.record("H_gu/coefficients", coefficient_defect(&generic, &corrected, &plan)?);
        report.reference("H_gu/coefficients (printed)", coefficient_defect(&generic, &printed, &plan)?);
        let literal_c = DunklOperator::zero(2).with(gu_c_coeff_literal(p), 1, GroupElement::identity(2));
        let c_only = DunklOperator::zero(2).with(coeffs::coeff_c(p, 2), 1, GroupElement::identity(2));
        report.reference("H_gu/C (literal numerator)", coefficient_defect(&c_only, &literal_c, &plan)?);
        let mut worst: f64 = 0.0;
        let mut worst_printed: f64 = 0.0;
        let spectrum = crate::dunkl::EigenvalueTable::new(*p, 2);
        for (n, poly) in first.polys().iter().enumerate() {
            let lambda = Complex64::new(spectrum.big_lambda(n), 0.0);
            worst = nan_max(worst, eigen_residual(&corrected, &poly.laurent, lambda, &plan)?);
            worst_printed = nan_max(worst_printed, eigen_residual(&printed, &poly.laurent, lambda, &plan)?);
        }
        report.record("H_gu/spectrum", worst);
        report.reference("H_gu/spectrum (printed)", worst_printed);
    }

    if p.alpha == p.beta {
        let t = 2.0 * p.alpha + 1.0;
        let nf = order as f64;
        let h = special_operator(p, order, Special::HUltraP)?;
        let mut worst: f64 = 0.0;
        for (n, poly) in first.polys().iter().enumerate() {
            let lambda = n as f64 * (n as f64 + t * nf);
            worst = nan_max(worst, eigen_residual(&h, &poly.laurent, Complex64::new(lambda, 0.0), &plan)?);
        }
        report.record("EE_ultra", worst);
        let h_hat = special_operator(p, order, Special::HUltraQ)?;
        let second = SymmetricFamily::new(Kind::Q, *p, order, n_max)?;
        let mut worst: f64 = 0.0;
        for (n, poly) in second.polys().iter().enumerate() {
            let xi = n as f64 * (n as f64 + t * nf + 2.0);
            worst = nan_max(worst, eigen_residual(&h_hat, &poly.laurent, Complex64::new(xi, 0.0), &plan)?);
        }
        report.record("EQ_ultra", worst);
    }

    if order == 1 {
        let h = build_h(p, 1, HMode::ExplicitR)?;
        let id = GroupElement::identity(1);
        let classical = DunklOperator::zero(1)
            .with(Rational::poly(LaurentPoly::z_pow(2)), 2, id)
            .with(coeffs::coeff_c(p, 1), 1, id);
        let spectrum = crate::dunkl::EigenvalueTable::new(*p, 1);
        let mut reduction: f64 = 0.0;
        let mut classical_eig: f64 = 0.0;
        for (n, poly) in first.polys().iter().enumerate() {
            let pts = plan.points()?;
            let a = h.apply_many(&poly.laurent, &pts, exec)?;
            let b = classical.apply_many(&poly.laurent, &pts, exec)?;
            let scale = b.iter().map(|v| v.norm()).fold(1.0, nan_max);
            reduction = nan_max(reduction, a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, nan_max) / scale);
            let lambda = Complex64::new(spectrum.big_lambda(n), 0.0);
            classical_eig = nan_max(classical_eig, eigen_residual(&classical, &poly.laurent, lambda, &plan)?);
        }
        report.record("N1/reflections trivial", reduction);
        report.record("N1/classical equation", classical_eig);
        let l1 = build_l(p, 1, LForm::Reflection)?;
        let k = build_k(p);
        let mut same_keys = l1.keys();
        let mut k_keys = k.keys();
        same_keys.sort();
        k_keys.sort();
        report.record_flag("L1=K/terms", same_keys == k_keys);
        report.record("L1=K/coefficients", coefficient_defect(&l1, &k, &plan)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn low_degree_examples() {
        let p = JacobiParams::new(1.0, 0.0);
        let p0 = poly_p(&p, 1, 0).unwrap();
        assert_eq!(p0.x_coeffs, vec![c(1.0)]);
        let p1 = poly_p(&p, 1, 1).unwrap();
        assert!((p1.x_coeffs[0] - c(2.0 / 3.0)).norm() < 1e-15);
        assert!((p1.x_coeffs[1] - c(1.0)).norm() < 1e-15);
        for order in 1..=4 {
            let q0 = poly_q(&JacobiParams::new(0.3, 1.7), order, 0).unwrap();
            assert!((q0.laurent.distance(&LaurentPoly::one())) < 1e-15);
        }
    }

    #[test]
    fn routes_agree_and_families_are_monic() {
        for &(a, b) in &[(0.0, 0.0), (0.5, 1.5), (1.0, 0.0), (0.3, 1.7)] {
            for order in 1..=4 {
                for kind in [Kind::P, Kind::Q] {
                    let fam = SymmetricFamily::new(kind, JacobiParams::new(a, b), order, 20).unwrap();
                    assert!(fam.route_defect().unwrap() < 1e-10, "{kind:?} N={order}");
                    assert!(fam.monic_defect() < 1e-10);
                    for (n, poly) in fam.polys().iter().enumerate() {
                        assert_eq!(poly.degree(), n);
                    }
                }
            }
        }
    }

    #[test]
    fn u_examples() {
        let p = JacobiParams::new(0.7, 0.7);
        let u3 = recurrence_u(UFamily::SievedUltra1, &p, 3, 3).unwrap();
        assert!((u3 - 2.0 / (2.0 * 0.7 + 3.0)).abs() < 1e-15);
        assert_eq!(recurrence_u(UFamily::SievedUltra1, &p, 3, 2).unwrap(), 1.0);
        let q = JacobiParams::new(0.3, 1.7);
        assert!(matches!(recurrence_u(UFamily::SievedUltra1, &q, 3, 2), Err(Error::Constraint(_))));
        assert!(matches!(recurrence_u(UFamily::GeneralizedUltra, &q, 3, 2), Err(Error::Constraint(_))));
        let u1 = recurrence_u(UFamily::GeneralizedUltra, &q, 2, 1).unwrap();
        assert!((u1 - 4.0 * 2.7 * 3.0 / (3.0 * 4.0)).abs() < 1e-14);
    }

    #[test]
    fn closed_forms_match_measured_coefficients() {
        let q = JacobiParams::new(0.3, 1.7);
        let fam = SymmetricFamily::new(Kind::P, q, 2, 12).unwrap();
        for n in 1..12 {
            let want = recurrence_u(UFamily::GeneralizedUltra, &q, 2, n).unwrap();
            assert!((measured_u(&fam, n).unwrap() - want).abs() < 1e-10, "n = {n}");
        }
    }

    #[test]
    fn three_term_families() {
        let gu = check_three_term(UFamily::GeneralizedUltra, &JacobiParams::new(0.3, 1.7), 2, 30, 1e-9).unwrap();
        assert!(gu.pass, "{gu}");
        assert!(!gu.detail("generalized_ultra (printed)").unwrap().pass);
        for order in 2..=5 {
            let p = JacobiParams::new(0.6, 0.6);
            for fam in [UFamily::SievedUltra1, UFamily::SievedUltra2] {
                let r = check_three_term(fam, &p, order, 30, 1e-9).unwrap();
                assert!(r.pass, "{r}");
            }
        }
    }

    #[test]
    fn special_operators() {
        let r = special_suite(&JacobiParams::new(0.3, 1.7), 2, 10, 0, 1e-9, Execution::Sequential).unwrap();
        assert!(r.pass, "{r}");
        assert!(!r.detail("H_gu/coefficients (printed)").unwrap().pass);
        for order in 1..=4 {
            let r = special_suite(&JacobiParams::new(0.5, 0.5), order, 10, 0, 1e-8, Execution::Sequential).unwrap();
            assert!(r.pass, "{r}");
        }
        let r = special_suite(&JacobiParams::new(1.0, 0.0), 1, 10, 0, 1e-9, Execution::Sequential).unwrap();
        assert!(r.detail("L1=K/coefficients").unwrap().residual < 1e-14);
    }
}
