use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::laurent::LaurentPoly;
use num_complex::Complex64;
use std::fmt;

/// Relative size of `|den(z)|` below which a coefficient counts as sitting on a pole.
pub(crate) const POLE_EPS: f64 = 1e-12;

/// Quotient of two Laurent polynomials, used as an operator coefficient.
///
/// No normal form is kept: denominators are only multiplied, never reduced,
/// and identical denominators are recognized by exact comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Rational {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl Rational {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational coefficient with zero denominator".into()));
        }
        Ok(Rational { num, den })
    }

    pub fn poly(num: LaurentPoly) -> Self {
        Rational { num, den: LaurentPoly::one() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::poly(LaurentPoly::constant(c))
    }

    pub fn real(c: f64) -> Self {
        Self::constant(Complex64::new(c, 0.0))
    }

    pub fn zero() -> Self {
        Self::poly(LaurentPoly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den == LaurentPoly::one()
    }

    /// Value at `z`; a plan error when `z` lies on a pole.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z == Complex64::new(0.0, 0.0) && (self.num.has_negative_exponents() || self.den.has_negative_exponents()) {
            return Err(Error::Plan("coefficient evaluated at z = 0".into()));
        }
        let d = self.den.eval_unchecked(z);
        if d.norm() <= POLE_EPS * self.den.max_abs_coeff().max(1.0) * z.norm().max(1.0).powi(self.den.radius() as i32) {
            return Err(Error::Plan(format!("coefficient has a pole at z = {z}")));
        }
        Ok(self.num.eval_unchecked(z) / d)
    }

    pub fn derivative(&self) -> Rational {
        if self.is_polynomial() {
            return Rational::poly(self.num.derivative());
        }
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Rational { num, den: &self.den * &self.den }
    }

    /// `c(g·z)`.
    pub fn substitute(&self, g: &GroupElement) -> Rational {
        Rational { num: self.num.substitute(g), den: self.den.substitute(g) }
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        let den = match (self.is_polynomial(), other.is_polynomial()) {
            (true, _) => other.den.clone(),
            (_, true) => self.den.clone(),
            _ => &self.den * &other.den,
        };
        Rational { num: &self.num * &other.num, den }
    }

    pub fn add(&self, other: &Rational) -> Rational {
        if self.den == other.den {
            return Rational { num: &self.num + &other.num, den: self.den.clone() };
        }
        Rational {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }

    pub fn scale(&self, s: Complex64) -> Rational {
        Rational { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn neg(&self) -> Rational {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl From<LaurentPoly> for Rational {
    fn from(p: LaurentPoly) -> Self {
        Rational::poly(p)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn quotient_rule_matches_difference_quotient() {
        // z^2 / (1 - z^2)
        let r = Rational::new(
            LaurentPoly::z_pow(2),
            LaurentPoly::from_real_slice(0, &[1.0, 0.0, -1.0]),
        )
        .unwrap();
        let z = Complex64::new(0.3, 0.7);
        let h = 1e-6;
        let fd = (r.eval(z + h).unwrap() - r.eval(z - h).unwrap()) / (2.0 * h);
        assert!((r.derivative().eval(z).unwrap() - fd).norm() < 1e-7);
    }

    #[test]
    fn pole_is_reported() {
        let r = Rational::new(LaurentPoly::one(), LaurentPoly::phi()).unwrap();
        assert!(matches!(r.eval(c(1.0)), Err(Error::Plan(_))));
        assert!(matches!(r.eval(c(0.0)), Err(Error::Plan(_))));
        assert!(r.eval(c(2.0)).is_ok());
        assert!(Rational::new(LaurentPoly::one(), LaurentPoly::zero()).is_err());
    }

    #[test]
    fn arithmetic() {
        let a = Rational::new(LaurentPoly::one(), LaurentPoly::phi()).unwrap();
        let b = Rational::poly(LaurentPoly::phi());
        let z = Complex64::new(-0.2, 1.3);
        assert!((a.mul(&b).eval(z).unwrap() - c(1.0)).norm() < 1e-15);
        let s = a.add(&b).eval(z).unwrap();
        let phi = z - z.inv();
        assert!((s - (phi.inv() + phi)).norm() < 1e-14);
        let g = GroupElement::reflection(3, 1);
        let sub = a.substitute(&g).eval(z).unwrap();
        let w = g.image(z);
        assert!((sub - (w - w.inv()).inv()).norm() < 1e-14);
    }
}
