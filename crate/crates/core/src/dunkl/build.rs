//! Constructors for `K`, `L(N)`, `H(N)` and its conjugates, and `Y_m`.

use super::coeffs::*;
use super::operator::DunklOperator;
use super::rational::Rational;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::jacobi::JacobiParams;
use crate::laurent::LaurentPoly;
use crate::roots::q_pow;
use num_complex::Complex64;

/// The two equivalent presentations of `L(N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LForm {
    /// `z∂ + Σ A_k (R_k − I)`
    Reflection,
    /// `z∂ + Σ A_k R_k + B(z) I`
    WithB,
}

/// Presentations of `H(N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HMode {
    /// `L∘L − N(α+β+1) L`, composed term by term
    Square,
    /// `z²∂² + C∂ + Σ z A'_k (R_k − I)`
    ExplicitR,
    /// `z²∂² + C∂ + Σ z A'_k (T_{−k} − I)`
    ExplicitT,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conjugate {
    /// `φ⁻¹ H φ`
    Tilde,
    /// `φ⁻¹ H φ − (N(2α+1) + 1)`, α = β only
    Hat,
}

fn id(n: usize) -> GroupElement {
    GroupElement::identity(n)
}

fn z_pow(k: i32) -> Rational {
    Rational::poly(LaurentPoly::z_pow(k))
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("dihedral order N must be at least 1".into()));
    }
    Ok(())
}

/// `K = z∂ + G(z)(R − I)` of the unsieved Jacobi OPUC.
pub fn build_k(p: &JacobiParams) -> DunklOperator {
    let g = coeff_g(p);
    DunklOperator::euler(1)
        .with(g.clone(), 0, GroupElement::reflection(1, 0))
        .with(g.neg(), 0, id(1))
}

pub fn build_l(p: &JacobiParams, n: usize, form: LForm) -> Result<DunklOperator> {
    check_order(n)?;
    let mut op = DunklOperator::euler(n);
    for k in 0..n as i64 {
        let a = coeff_a(p, n, k);
        op = op.with(a.clone(), 0, GroupElement::reflection(n, k));
        if form == LForm::Reflection {
            op = op.with(a.neg(), 0, id(n));
        }
    }
    if form == LForm::WithB {
        op = op.with(coeff_b(p, n), 0, id(n));
    }
    Ok(op)
}

/// `z²∂² + c∂ + Σ_k b_k (g_k − I)`.
fn second_order(n: usize, c: Rational, parts: Vec<(Rational, GroupElement)>) -> DunklOperator {
    let mut op = DunklOperator::zero(n).with(z_pow(2), 2, id(n)).with(c, 1, id(n));
    for (b, g) in parts {
        if g.is_identity() {
            continue;
        }
        op = op.with(b.clone(), 0, g).with(b.neg(), 0, id(n));
    }
    op
}

pub fn build_h(p: &JacobiParams, n: usize, mode: HMode) -> Result<DunklOperator> {
    check_order(n)?;
    match mode {
        HMode::Square => {
            let l = build_l(p, n, LForm::WithB)?;
            Ok(l.compose(&l)?.sub(&l.scale_real(n as f64 * p.s())))
        }
        HMode::ExplicitR | HMode::ExplicitT => {
            let parts = (0..n as i64)
                .map(|k| {
                    let g = if mode == HMode::ExplicitR {
                        GroupElement::reflection(n, k)
                    } else {
                        GroupElement::rotation(n, -k)
                    };
                    (coeff_d(p, n, k), g)
                })
                .collect();
            Ok(second_order(n, coeff_c(p, n), parts))
        }
    }
}

/// `φ(z) = z − 1/z` as a multiplication operator, and its inverse.
fn phi_ops(n: usize) -> (DunklOperator, DunklOperator) {
    let phi = LaurentPoly::phi();
    let inv = Rational::new(LaurentPoly::one(), phi.clone()).expect("φ is nonzero");
    (
        DunklOperator::multiplication(n, Rational::poly(phi)),
        DunklOperator::multiplication(n, inv),
    )
}

/// `φ⁻¹ ∘ op ∘ φ`, composed symbolically.
pub fn conjugate_by_phi(op: &DunklOperator) -> Result<DunklOperator> {
    let (phi, inv) = phi_ops(op.dihedral_order());
    inv.compose(&op.compose(&phi)?)
}

/// `(φ⁻¹ op φ f)(z)` evaluated pointwise: multiply, apply, divide.
pub fn conjugate_apply(op: &DunklOperator, f: &LaurentPoly, z: Complex64) -> Result<Complex64> {
    let phi_z = z - z.inv();
    if phi_z.norm() <= 1e-12 {
        return Err(Error::Plan(format!("φ(z) vanishes at z = {z}")));
    }
    Ok(op.apply(&(&LaurentPoly::phi() * f), z)? / phi_z)
}

fn require_ultra(p: &JacobiParams) -> Result<()> {
    if p.alpha != p.beta {
        return Err(Error::Constraint(format!(
            "the standardized operator needs α = β (got α = {}, β = {})",
            p.alpha, p.beta
        )));
    }
    Ok(())
}

pub fn build_h_variant(p: &JacobiParams, n: usize, which: Conjugate) -> Result<DunklOperator> {
    let h = build_h(p, n, HMode::ExplicitR)?;
    let tilde = conjugate_by_phi(&h)?;
    match which {
        Conjugate::Tilde => Ok(tilde),
        Conjugate::Hat => {
            require_ultra(p)?;
            let shift = n as f64 * (2.0 * p.alpha + 1.0) + 1.0;
            Ok(tilde.add(&DunklOperator::scalar(n, Complex64::new(-shift, 0.0))))
        }
    }
}

/// `H(N)` for α = β from the ultraspherical coefficients `B_k`, `C`.
pub fn build_h_ultra(alpha: f64, n: usize, rotations: bool) -> Result<DunklOperator> {
    check_order(n)?;
    let parts = (0..n as i64)
        .map(|k| (coeff_b_ultra(alpha, n, k), reflection_or_rotation(n, k, rotations)))
        .collect();
    Ok(second_order(n, coeff_c_ultra(alpha, n), parts))
}

/// `Ĥ(N)` from `B̂_k`, `Ĉ`.
pub fn build_h_hat_explicit(alpha: f64, n: usize, rotations: bool) -> Result<DunklOperator> {
    check_order(n)?;
    let parts = (0..n as i64)
        .map(|k| (coeff_b_hat(alpha, n, k), reflection_or_rotation(n, k, rotations)))
        .collect();
    Ok(second_order(n, coeff_c_hat(alpha, n), parts))
}

fn reflection_or_rotation(n: usize, k: i64, rotations: bool) -> GroupElement {
    if rotations {
        GroupElement::rotation(n, -k)
    } else {
        GroupElement::reflection(n, k)
    }
}

fn check_m(n: usize, m: usize) -> Result<()> {
    if m == 0 || m >= n {
        return Err(Error::Constraint(format!("Y_m needs 1 ≤ m ≤ N − 1 (m = {m}, N = {n})")));
    }
    Ok(())
}

/// `Y_m = T_m + T_{−m}`, or with `tilde` the closed form of `φ⁻¹ Y_m φ`.
pub fn build_y(n: usize, m: usize, tilde: bool) -> Result<DunklOperator> {
    check_m(n, m)?;
    let m = m as i64;
    let (up, down) = (GroupElement::rotation(n, m), GroupElement::rotation(n, -m));
    if !tilde {
        return Ok(DunklOperator::group(up).add(&DunklOperator::group(down)));
    }
    let phi = LaurentPoly::phi();
    // (z q^{±m} − q^{∓m}/z)/(z − 1/z)
    let coeff = |s: i64| {
        let num = LaurentPoly::from_pairs([(1, q_pow(n, s * m)), (-1, -q_pow(n, -s * m))]);
        Rational::new(num, phi.clone()).expect("φ is nonzero")
    };
    Ok(DunklOperator::zero(n).with(coeff(1), 0, up).with(coeff(-1), 0, down))
}
