//! Rational coefficients of the sieved Jacobi operators.
//!
//! Notation: `s = α + β + 1`, `d = α − β`, `q = e^{2πi/N}`.

use super::rational::Rational;
use crate::group::GroupElement;
use crate::jacobi::JacobiParams;
use crate::laurent::LaurentPoly;
use crate::roots::{q_half_pow, q_pow};
use num_complex::Complex64;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn poly(pairs: &[(i32, Complex64)]) -> LaurentPoly {
    LaurentPoly::from_pairs(pairs.iter().copied())
}

fn rational(num: LaurentPoly, den: LaurentPoly) -> Rational {
    Rational::new(num, den).expect("nonzero denominator by construction")
}

/// `q^k − z²`.
pub fn pole_factor(n: usize, k: i64) -> LaurentPoly {
    poly(&[(0, q_pow(n, k)), (2, c(-1.0))])
}

/// `z^{2N} − 1`.
fn cyclic_factor(n: usize) -> LaurentPoly {
    poly(&[(0, c(-1.0)), (2 * n as i32, c(1.0))])
}

/// `σ_k = s + (−1)^k d` (even N).
pub fn sigma(p: &JacobiParams, k: i64) -> f64 {
    p.s() + if k.rem_euclid(2) == 0 { p.d() } else { -p.d() }
}

/// `ρ_k = q^{k/2}` for even `k`, `q^{(k−N)/2}` for odd `k` (odd N).
pub fn rho(n: usize, k: i64) -> Complex64 {
    let k = k.rem_euclid(n as i64);
    if k % 2 == 0 {
        q_half_pow(n, k)
    } else {
        q_half_pow(n, k - n as i64)
    }
}

/// `A_k(z;N)`; the index is taken mod `N`.
pub fn coeff_a(p: &JacobiParams, n: usize, k: i64) -> Rational {
    let k = k.rem_euclid(n as i64);
    let num = if n.is_multiple_of(2) {
        poly(&[(2, c(sigma(p, k)))])
    } else {
        poly(&[(2, c(p.s())), (1, rho(n, k) * p.d())])
    };
    rational(num, pole_factor(n, k))
}

/// `−Σ_k A_k(z;N)`, summed term by term.
pub fn coeff_b_sum(p: &JacobiParams, n: usize) -> Rational {
    (0..n as i64).fold(Rational::zero(), |acc, k| acc.add(&coeff_a(p, n, k).neg()))
}

/// `B(z) = N (s z^{2N} + d z^N)/(z^{2N} − 1)`.
pub fn coeff_b(p: &JacobiParams, n: usize) -> Rational {
    let nn = n as f64;
    let num = poly(&[(2 * n as i32, c(nn * p.s())), (n as i32, c(nn * p.d()))]);
    rational(num, cyclic_factor(n))
}

/// `B(z) + B(q^k/z) − N s`.
pub fn coeff_bb(p: &JacobiParams, n: usize, k: i64) -> Rational {
    let b = coeff_b(p, n);
    b.add(&b.substitute(&GroupElement::reflection(n, k))).add(&Rational::real(-(n as f64) * p.s()))
}

/// `C(z) = z (1 + N s + 2N (s + d z^N)/(z^{2N} − 1))`.
pub fn coeff_c(p: &JacobiParams, n: usize) -> Rational {
    let nn = n as f64;
    let den = cyclic_factor(n);
    let lead = &LaurentPoly::monomial(1, c(1.0 + nn * p.s())) * &den;
    let tail = poly(&[(1, c(2.0 * nn * p.s())), (n as i32 + 1, c(2.0 * nn * p.d()))]);
    rational(&lead + &tail, den)
}

/// `z A'_k(z;N)` through the quotient rule.
pub fn coeff_d(p: &JacobiParams, n: usize, k: i64) -> Rational {
    Rational::poly(LaurentPoly::z_pow(1)).mul(&coeff_a(p, n, k).derivative())
}

/// `A_k (B(z) + B(q^k/z) − N s) + z A'_k`, the reflection coefficient of `L²`
/// before the `B`-identity is used.
pub fn coeff_d_general(p: &JacobiParams, n: usize, k: i64) -> Rational {
    coeff_a(p, n, k).mul(&coeff_bb(p, n, k)).add(&coeff_d(p, n, k))
}

/// `E_k(z) = Σ_i A_i(z;N) A_{i+k}(q^i/z;N)`, the rotation coefficient of `L²`.
pub fn coeff_e(p: &JacobiParams, n: usize, k: i64) -> Rational {
    (0..n as i64).fold(Rational::zero(), |acc, i| {
        let moved = coeff_a(p, n, i + k).substitute(&GroupElement::reflection(n, i));
        acc.add(&coeff_a(p, n, i).mul(&moved))
    })
}

/// `G(z) = z (s z + d)/(1 − z²)`.
pub fn coeff_g(p: &JacobiParams) -> Rational {
    rational(poly(&[(2, c(p.s())), (1, c(p.d()))]), poly(&[(0, c(1.0)), (2, c(-1.0))]))
}

/// `B_k(z) = 2(2α+1) q^k z² / (q^k − z²)²` (α = β).
pub fn coeff_b_ultra(alpha: f64, n: usize, k: i64) -> Rational {
    let f = pole_factor(n, k);
    let num = LaurentPoly::monomial(2, 2.0 * (2.0 * alpha + 1.0) * q_pow(n, k));
    rational(num, &f * &f)
}

/// `C(z) = z (1 + N(2α+1) + 2N(2α+1)/(z^{2N} − 1))` (α = β).
pub fn coeff_c_ultra(alpha: f64, n: usize) -> Rational {
    let (nn, t) = (n as f64, 2.0 * alpha + 1.0);
    let den = cyclic_factor(n);
    let lead = &LaurentPoly::monomial(1, c(1.0 + nn * t)) * &den;
    rational(&lead + &LaurentPoly::monomial(1, c(2.0 * nn * t)), den)
}

/// `B̂_k(z) = (q^{2k} − z²)/(q^k (z² − 1)) · B_k(z)`.
pub fn coeff_b_hat(alpha: f64, n: usize, k: i64) -> Rational {
    let factor = rational(
        pole_factor(n, 2 * k),
        poly(&[(2, q_pow(n, k)), (0, -q_pow(n, k))]),
    );
    factor.mul(&coeff_b_ultra(alpha, n, k))
}

/// `Ĉ(z) = C(z) + 2z(z² + 1)/(z² − 1)`.
pub fn coeff_c_hat(alpha: f64, n: usize) -> Rational {
    let extra = rational(poly(&[(3, c(2.0)), (1, c(2.0))]), poly(&[(2, c(1.0)), (0, c(-1.0))]));
    coeff_c_ultra(alpha, n).add(&extra)
}

/// `Σ_l q^{l(h+1)}/(q^l − z)` and its closed form `N z^h/(1 − z^N)`.
pub fn sumgen(n: usize, h: i64, z: Complex64) -> (Complex64, Complex64) {
    let lhs = (0..n as i64).map(|l| q_pow(n, l * (h + 1)) / (q_pow(n, l) - z)).sum();
    let rhs = n as f64 * z.powi(h as i32) / (1.0 - z.powi(n as i32));
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::SamplePlan;

    fn worst(a: &Rational, b: &Rational, n: usize) -> f64 {
        SamplePlan::for_order(60, n)
            .points()
            .unwrap()
            .into_iter()
            .map(|z| (a.eval(z).unwrap() - b.eval(z).unwrap()).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn ultraspherical_a_and_b() {
        let p = JacobiParams::new(0.8, 0.8);
        for n in 1..=6 {
            for k in 0..n as i64 {
                let expect = rational(
                    LaurentPoly::monomial(2, c(2.0 * 0.8 + 1.0)),
                    pole_factor(n, k),
                );
                assert!(worst(&coeff_a(&p, n, k), &expect, n) < 1e-13);
            }
            let b_ultra = rational(
                LaurentPoly::monomial(2 * n as i32, c(n as f64 * 2.6)),
                cyclic_factor(n),
            );
            assert!(worst(&coeff_b(&p, n), &b_ultra, n) < 1e-12);
        }
    }

    #[test]
    fn sigma_and_rho_examples() {
        let p = JacobiParams::new(0.3, 1.7);
        assert!((sigma(&p, 1) - (2.0 * 1.7 + 1.0)).abs() < 1e-15);
        assert!((rho(3, 1) - q_pow(3, -1)).norm() < 1e-15);
        assert!((rho(5, 2) - q_pow(5, 1)).norm() < 1e-15);
    }

    #[test]
    fn cyclic_extension() {
        let p = JacobiParams::new(0.3, 1.7);
        for n in 1..=5 {
            for k in 0..n as i64 {
                assert_eq!(coeff_a(&p, n, k + n as i64), coeff_a(&p, n, k));
            }
        }
    }

    #[test]
    fn b_closed_form_and_bb_identity() {
        for &(a, b) in &[(0.0, 0.0), (0.5, 1.5), (1.0, 0.0), (0.3, 1.7)] {
            let p = JacobiParams::new(a, b);
            for n in 1..=6 {
                assert!(worst(&coeff_b_sum(&p, n), &coeff_b(&p, n), n) < 1e-11);
                for k in 0..n as i64 {
                    assert!(worst(&coeff_bb(&p, n, k), &Rational::zero(), n) < 1e-11);
                }
            }
        }
    }

    #[test]
    fn d_matches_finite_difference() {
        let p = JacobiParams::new(0.3, 1.7);
        let (n, k) = (3, 2);
        let a = coeff_a(&p, n, k);
        let z = Complex64::from_polar(1.0, 0.37);
        let h = 1e-5;
        let fd = z * (a.eval(z + h).unwrap() - a.eval(z - h).unwrap()) / (2.0 * h);
        assert!((coeff_d(&p, n, k).eval(z).unwrap() - fd).norm() < 1e-7);
    }

    #[test]
    fn ultra_d_equals_b_k() {
        let alpha = 0.8;
        let p = JacobiParams::new(alpha, alpha);
        for n in 1..=5 {
            for k in 0..n as i64 {
                assert!(worst(&coeff_d(&p, n, k), &coeff_b_ultra(alpha, n, k), n) < 1e-11);
            }
            assert!(worst(&coeff_c(&p, n), &coeff_c_ultra(alpha, n), n) < 1e-11);
        }
    }

    #[test]
    fn geometric_sum() {
        let z = Complex64::new(0.3, -0.45);
        for n in 1..=7 {
            for h in 0..n as i64 {
                let (l, r) = sumgen(n, h, z);
                assert!((l - r).norm() < 1e-13);
            }
        }
    }
}
