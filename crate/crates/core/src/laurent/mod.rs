//! Laurent polynomials with complex coefficients.
//!
//! Coefficients live in an ordered map from exponent to value. Exact zeros are
//! dropped after every operation; nothing is rounded away unless a caller asks
//! for it through [`LaurentPoly::prune`].

mod sample;

pub use sample::{
    default_tolerance, max_residual_on_samples, SamplePlan, DEFAULT_PHASE_OFFSET, DEFAULT_POLE_TOLERANCE,
};

use crate::error::{Error, Result};
use crate::group::{ElementKind, GroupElement};
use crate::roots::q_pow;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Default, PartialEq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, Complex64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i32, c: Complex64) -> Self {
        let mut p = LaurentPoly::zero();
        if c != ZERO {
            p.coeffs.insert(exp, c);
        }
        p
    }

    /// `z^exp` with unit coefficient.
    pub fn z_pow(exp: i32) -> Self {
        Self::monomial(exp, ONE)
    }

    /// `z - z^{-1}`.
    pub fn phi() -> Self {
        Self::from_pairs([(1, ONE), (-1, -ONE)])
    }

    /// `z + z^{-1}`.
    pub fn x_of_z() -> Self {
        Self::from_pairs([(1, ONE), (-1, ONE)])
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_pairs<I: IntoIterator<Item = (i32, Complex64)>>(pairs: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in pairs {
            *p.coeffs.entry(e).or_insert(ZERO) += c;
        }
        p.normalize();
        p
    }

    /// Real coefficients `coeffs[i]` at exponent `lowest + i`.
    pub fn from_real_slice(lowest: i32, coeffs: &[f64]) -> Self {
        Self::from_pairs(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (lowest + i as i32, Complex64::new(c, 0.0))),
        )
    }

    fn normalize(&mut self) {
        self.coeffs.retain(|_, c| *c != ZERO);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// `[min_exp, max_exp]`, or `None` for the zero polynomial.
    pub fn span(&self) -> Option<(i32, i32)> {
        Some((self.min_exp()?, self.max_exp()?))
    }

    /// `max_exp - min_exp` (0 for constants and zero).
    pub fn span_width(&self) -> usize {
        self.span().map_or(0, |(lo, hi)| (hi - lo) as usize)
    }

    /// `max(|min_exp|, |max_exp|)`.
    pub fn radius(&self) -> usize {
        self.span().map_or(0, |(lo, hi)| lo.unsigned_abs().max(hi.unsigned_abs()) as usize)
    }

    pub fn coeff(&self, exp: i32) -> Complex64 {
        self.coeffs.get(&exp).copied().unwrap_or(ZERO)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i32, Complex64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.min_exp().is_some_and(|e| e < 0)
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.coeffs.values().all(|c| c.im == 0.0)
    }

    /// Evaluates `Σ c_k z^k`, Horner over the nonnegative part in `z` and over
    /// the negative part in `1/z`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z == ZERO && self.has_negative_exponents() {
            return Err(Error::Domain(
                "evaluation at z = 0 of a Laurent polynomial with negative exponents".into(),
            ));
        }
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        let mut pos = ZERO;
        let mut prev: Option<i32> = None;
        for (&e, &c) in self.coeffs.range(0..).rev() {
            if let Some(p) = prev {
                pos *= z.powi(p - e);
            }
            pos += c;
            prev = Some(e);
        }
        if let Some(p) = prev {
            pos *= z.powi(p);
        }

        let w = if self.has_negative_exponents() { z.inv() } else { ZERO };
        let mut neg = ZERO;
        let mut prev: Option<i32> = None;
        for (&e, &c) in self.coeffs.range(..0) {
            // ascending exponents = descending powers of w
            if let Some(p) = prev {
                neg *= w.powi(e - p);
            }
            neg += c;
            prev = Some(e);
        }
        if let Some(p) = prev {
            neg *= w.powi(-p);
        }
        pos + neg
    }

    /// `d/dz`.
    pub fn derivative(&self) -> LaurentPoly {
        LaurentPoly::from_pairs(
            self.iter()
                .filter(|&(e, _)| e != 0)
                .map(|(e, c)| (e - 1, c * e as f64)),
        )
    }

    /// `d^order/dz^order`.
    pub fn nth_derivative(&self, order: usize) -> LaurentPoly {
        (0..order).fold(self.clone(), |p, _| p.derivative())
    }

    /// `p(g·z)`: reflections send `z^k` to `q^{jk} z^{-k}`, rotations to `q^{jk} z^k`.
    pub fn substitute(&self, g: &GroupElement) -> LaurentPoly {
        let n = g.order();
        match g.kind() {
            ElementKind::Identity => self.clone(),
            ElementKind::Reflection(j) => LaurentPoly::from_pairs(
                self.iter().map(|(e, c)| (-e, c * q_pow(n, j as i64 * e as i64))),
            ),
            ElementKind::Rotation(k) => LaurentPoly::from_pairs(
                self.iter().map(|(e, c)| (e, c * q_pow(n, k as i64 * e as i64))),
            ),
        }
    }

    /// `p(z^s)`.
    pub fn substitute_power(&self, s: i32) -> LaurentPoly {
        LaurentPoly::from_pairs(self.iter().map(|(e, c)| (e * s, c)))
    }

    /// `z^k · p`.
    pub fn shift(&self, k: i32) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    /// `p(1/z)`.
    pub fn reflect(&self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    pub fn scale(&self, s: Complex64) -> LaurentPoly {
        LaurentPoly::from_pairs(self.iter().map(|(e, c)| (e, c * s)))
    }

    pub fn scale_real(&self, s: f64) -> LaurentPoly {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Coefficient-wise complex conjugate.
    pub fn conj_coeffs(&self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e, c.conj())).collect() }
    }

    /// Drops coefficients with magnitude `<= threshold`.
    pub fn prune(&self, threshold: f64) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().filter(|(_, c)| c.norm() > threshold).map(|(&e, &c)| (e, c)).collect(),
        }
    }

    /// Largest coefficient difference.
    pub fn distance(&self, other: &LaurentPoly) -> f64 {
        (self - other).max_abs_coeff()
    }

    /// Largest coefficient of `p - p(1/z)`.
    pub fn symmetry_defect(&self) -> f64 {
        self.distance(&self.reflect())
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.symmetry_defect() <= tol
    }

    /// Laurent long division. Returns `(quotient, remainder)` with
    /// `self = quotient · divisor + remainder` and the remainder supported
    /// strictly below `min_exp(self) + span(divisor)`.
    pub fn div_rem(&self, divisor: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
        let (d_lo, d_hi) = divisor
            .span()
            .ok_or_else(|| Error::Domain("division by the zero Laurent polynomial".into()))?;
        let Some((p_lo, _)) = self.span() else {
            return Ok((LaurentPoly::zero(), LaurentPoly::zero()));
        };
        let lead = divisor.coeff(d_hi);
        let mut rem = self.coeffs.clone();
        let mut quot = BTreeMap::new();
        let floor = p_lo + (d_hi - d_lo);
        loop {
            let Some((&top, &c)) = rem.iter().next_back() else { break };
            if top < floor {
                break;
            }
            let qc = c / lead;
            let qe = top - d_hi;
            quot.insert(qe, qc);
            for (e, dc) in divisor.iter() {
                let slot = rem.entry(qe + e).or_insert(ZERO);
                *slot -= qc * dc;
            }
            rem.remove(&top);
            rem.retain(|_, v| *v != ZERO);
        }
        let mut q = LaurentPoly { coeffs: quot };
        q.normalize();
        Ok((q, LaurentPoly { coeffs: rem }))
    }

    /// Divides exactly, failing when the remainder exceeds `tol · max(1, max|coeff|)`.
    pub fn div_exact(&self, divisor: &LaurentPoly, tol: f64) -> Result<LaurentPoly> {
        let (q, r) = self.div_rem(divisor)?;
        let scale = self.max_abs_coeff().max(1.0);
        let res = r.max_abs_coeff();
        if res > tol * scale {
            return Err(Error::Consistency(format!(
                "division remainder {res:e} exceeds tolerance {:e}",
                tol * scale
            )));
        }
        Ok(q)
    }

    /// Coefficients `[c_0, c_1, …]` of the polynomial `P` with `P(z + 1/z) = p(z)`.
    ///
    /// Repeatedly removes the top symmetric pair `c (z^k + z^{-k})` by subtracting
    /// `c (z + 1/z)^k` expanded with binomial coefficients.
    pub fn to_x_basis(&self, tol: f64) -> Result<Vec<Complex64>> {
        let defect = self.symmetry_defect();
        let scale = self.max_abs_coeff().max(1.0);
        if defect > tol * scale {
            return Err(Error::Symmetry { deviation: defect });
        }
        let degree = self.radius();
        let mut out = vec![ZERO; degree + 1];
        // symmetrize to remove the sub-tolerance odd part before elimination
        let mut work: BTreeMap<i32, Complex64> =
            (0..=degree as i32).map(|k| (k, 0.5 * (self.coeff(k) + self.coeff(-k)))).collect();
        for k in (1..=degree).rev() {
            let c = work[&(k as i32)];
            out[k] = c;
            if c == ZERO {
                continue;
            }
            // (z + 1/z)^k = Σ_i C(k,i) z^{k-2i}; fold exponents onto |e|
            let mut binom = 1.0f64;
            for i in 0..=k {
                let e = k as i32 - 2 * i as i32;
                // symmetric storage keeps one copy per |e|
                if e >= 0 {
                    *work.get_mut(&e).unwrap() -= c * binom;
                }
                binom = binom * (k - i) as f64 / (i + 1) as f64;
            }
        }
        out[0] = work[&0];
        Ok(out)
    }

    /// `P(z + 1/z)` for x-coefficients `[c_0, c_1, …]` (Horner in `x = z + 1/z`).
    pub fn from_x_basis(coeffs: &[Complex64]) -> LaurentPoly {
        let x = LaurentPoly::x_of_z();
        coeffs
            .iter()
            .rev()
            .fold(LaurentPoly::zero(), |acc, &c| &(&acc * &x) + &LaurentPoly::constant(c))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({c})")?;
            }
            if e != 0 {
                write!(f, "·z^{e}")?;
            }
        }
        Ok(())
    }
}

impl<'b> Add<&'b LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'b LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.iter() {
            *out.coeffs.entry(e).or_insert(ZERO) += c;
        }
        out.normalize();
        out
    }
}

impl<'b> Sub<&'b LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'b LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.iter() {
            *out.coeffs.entry(e).or_insert(ZERO) -= c;
        }
        out.normalize();
        out
    }
}

impl<'b> Mul<&'b LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'b LaurentPoly) -> LaurentPoly {
        let mut out: BTreeMap<i32, Complex64> = BTreeMap::new();
        for (a, ca) in self.iter() {
            for (b, cb) in rhs.iter() {
                *out.entry(a + b).or_insert(ZERO) += ca * cb;
            }
        }
        let mut p = LaurentPoly { coeffs: out };
        p.normalize();
        p
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Ring operation selector for [`combine`].
#[derive(Debug, Clone)]
pub enum Combine<'a> {
    Add(&'a LaurentPoly, &'a LaurentPoly),
    Multiply(&'a LaurentPoly, &'a LaurentPoly),
    Scale(&'a LaurentPoly, Complex64),
}

pub fn combine(op: Combine<'_>) -> LaurentPoly {
    match op {
        Combine::Add(a, b) => a + b,
        Combine::Multiply(a, b) => a * b,
        Combine::Scale(a, s) => a.scale(s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn lp(pairs: &[(i32, f64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(pairs.iter().map(|&(e, v)| (e, c(v))))
    }

    #[test]
    fn eval_basics() {
        assert_eq!(LaurentPoly::one().eval(Complex64::new(0.3, 2.0)).unwrap(), c(1.0));
        assert_eq!(LaurentPoly::x_of_z().eval(c(1.0)).unwrap(), c(2.0));
        assert!(LaurentPoly::x_of_z().eval(c(0.0)).is_err());
        assert_eq!(lp(&[(0, 1.0), (2, 1.0)]).eval(c(0.0)).unwrap(), c(1.0));
    }

    #[test]
    fn eval_matches_naive_sum_with_gaps() {
        let p = lp(&[(-7, 0.5), (-2, -1.25), (0, 3.0), (3, 2.0), (9, -0.75)]);
        let z = Complex64::new(0.5, 0.1);
        let naive: Complex64 = p.iter().map(|(e, c)| c * z.powi(e)).sum();
        assert!((p.eval(z).unwrap() - naive).norm() < 1e-12 * naive.norm());
    }

    #[test]
    fn derivative_power_rule() {
        assert_eq!(lp(&[(-1, 1.0)]).derivative(), lp(&[(-2, -1.0)]));
        assert!(lp(&[(0, 5.0)]).derivative().is_zero());
        assert_eq!(lp(&[(2, 1.0), (-2, 1.0)]).derivative(), lp(&[(1, 2.0), (-3, -2.0)]));
    }

    #[test]
    fn substitution_examples() {
        let r0 = GroupElement::reflection(1, 0);
        assert_eq!(lp(&[(1, 1.0), (-1, 2.0)]).substitute(&r0), lp(&[(-1, 1.0), (1, 2.0)]));
        let r1 = GroupElement::reflection(2, 1);
        assert_eq!(lp(&[(1, 1.0)]).substitute(&r1), lp(&[(-1, -1.0)]));
        let t1 = GroupElement::rotation(4, 1);
        assert_eq!(lp(&[(2, 1.0)]).substitute(&t1), lp(&[(2, -1.0)]));
        assert_eq!(lp(&[(1, 1.0), (-2, 3.0)]).substitute_power(-3), lp(&[(-3, 1.0), (6, 3.0)]));
    }

    #[test]
    fn combine_examples() {
        let a = 0.7;
        let p = lp(&[(1, 1.0), (0, -a)]);
        let zi = LaurentPoly::z_pow(-1);
        assert_eq!(combine(Combine::Multiply(&p, &zi)), lp(&[(0, 1.0), (-1, -a)]));
        let neg = combine(Combine::Scale(&p, c(-1.0)));
        assert!(combine(Combine::Add(&p, &neg)).is_zero());
        let x = LaurentPoly::x_of_z();
        assert_eq!(&x * &x, lp(&[(2, 1.0), (0, 2.0), (-2, 1.0)]));
    }

    #[test]
    fn x_basis_examples() {
        let tol = 1e-12;
        let v = LaurentPoly::x_of_z().to_x_basis(tol).unwrap();
        assert_eq!(v, vec![c(0.0), c(1.0)]);
        let v = lp(&[(2, 1.0), (-2, 1.0)]).to_x_basis(tol).unwrap();
        assert_eq!(v, vec![c(-2.0), c(0.0), c(1.0)]);
        assert!(matches!(LaurentPoly::phi().to_x_basis(tol), Err(Error::Symmetry { .. })));
    }

    #[test]
    fn long_division_by_phi() {
        // (z^2 - z^{-2}) = (z - 1/z)(z + 1/z)
        let num = lp(&[(2, 1.0), (-2, -1.0)]);
        let q = num.div_exact(&LaurentPoly::phi(), 1e-14).unwrap();
        assert_eq!(q, LaurentPoly::x_of_z());
        let (_, r) = LaurentPoly::one().div_rem(&LaurentPoly::phi()).unwrap();
        assert!(!r.is_zero());
        assert!(LaurentPoly::one().div_exact(&LaurentPoly::phi(), 1e-12).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-8i32..=8, -1.0f64..1.0, -1.0f64..1.0), 1..10).prop_map(|v| {
            LaurentPoly::from_pairs(v.into_iter().map(|(e, re, im)| (e, Complex64::new(re, im))))
        })
    }

    fn arb_symmetric() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec(-2.0f64..2.0, 1..14).prop_map(|v| {
            let mut pairs = vec![(0, c(v[0]))];
            for (k, &x) in v.iter().enumerate().skip(1) {
                pairs.push((k as i32, c(x)));
                pairs.push((-(k as i32), c(x)));
            }
            LaurentPoly::from_pairs(pairs)
        })
    }

    proptest! {
        #[test]
        fn reflection_is_an_involution(p in arb_poly(), n in 1usize..7, j in 0i64..7) {
            let r = GroupElement::reflection(n, j);
            let back = p.substitute(&r).substitute(&r);
            prop_assert!(back.distance(&p) <= 1e-15 * p.max_abs_coeff().max(1.0));
        }

        #[test]
        fn product_rule(p in arb_poly(), q in arb_poly()) {
            let lhs = (&p * &q).derivative();
            let rhs = &(&p.derivative() * &q) + &(&p * &q.derivative());
            prop_assert!(lhs.distance(&rhs) <= 1e-13 * (1.0 + lhs.max_abs_coeff()));
        }

        #[test]
        fn x_basis_round_trip(p in arb_symmetric()) {
            let x = p.to_x_basis(1e-12).unwrap();
            let back = LaurentPoly::from_x_basis(&x);
            let deg = p.radius().max(1) as f64;
            prop_assert!(back.distance(&p) <= 1e-12 * deg * p.max_abs_coeff().max(1.0));
        }

        #[test]
        fn multiplication_is_pointwise(p in arb_poly(), q in arb_poly(), count in 35usize..60) {
            let plan = SamplePlan::new(count);
            for z in plan.points().unwrap() {
                let lhs = (&p * &q).eval(z).unwrap();
                let rhs = p.eval(z).unwrap() * q.eval(z).unwrap();
                prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
            }
        }
    }
}
