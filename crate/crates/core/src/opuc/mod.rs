//! Monic orthogonal polynomials on the unit circle with real Verblunsky
//! parameters, and their CMV Laurent polynomials.

mod cmv;

pub use cmv::{cmv_matrices, BandMatrix, CmvTruncation};

use crate::error::{Error, Result};
use crate::jacobi::{jacobi_verblunsky, sieved_verblunsky, JacobiParams};
use crate::laurent::LaurentPoly;
use serde::Serialize;

/// Source of real reflection coefficients `a_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum VerblunskySequence {
    Explicit(Vec<f64>),
    Jacobi(JacobiParams),
    SievedJacobi { params: JacobiParams, order: usize },
}

impl VerblunskySequence {
    pub fn jacobi(alpha: f64, beta: f64) -> Self {
        VerblunskySequence::Jacobi(JacobiParams::new(alpha, beta))
    }

    pub fn sieved(alpha: f64, beta: f64, order: usize) -> Self {
        VerblunskySequence::SievedJacobi { params: JacobiParams::new(alpha, beta), order }
    }

    /// `a_n`, validated against `|a_n| < 1`.
    pub fn get(&self, n: usize) -> Result<f64> {
        let a = match self {
            VerblunskySequence::Explicit(v) => {
                let a = *v.get(n).ok_or(Error::IndexOutOfRange {
                    index: n,
                    max: v.len().saturating_sub(1),
                })?;
                if !(a.abs() < 1.0) {
                    return Err(Error::Validity { n, value: a });
                }
                a
            }
            VerblunskySequence::Jacobi(p) => jacobi_verblunsky(p, n)?,
            VerblunskySequence::SievedJacobi { params, order } => sieved_verblunsky(params, *order, n)?,
        };
        Ok(a)
    }

    /// `a_0, …, a_{count-1}`.
    pub fn first(&self, count: usize) -> Result<Vec<f64>> {
        (0..count).map(|n| self.get(n)).collect()
    }

    /// Sieving order (1 for unsieved sequences).
    pub fn order(&self) -> usize {
        match self {
            VerblunskySequence::SievedJacobi { order, .. } => *order,
            _ => 1,
        }
    }
}

/// `Φ_0, …, Φ_{n_max}` together with the coefficients that produced them.
#[derive(Debug, Clone)]
pub struct OpucFamily {
    verblunsky: Vec<f64>,
    phis: Vec<LaurentPoly>,
}

/// Runs the Szegő recurrence `Φ_{k+1} = zΦ_k − a_k Φ_k^*` up to degree `n_max`.
pub fn szego_sequence(a: &VerblunskySequence, n_max: usize) -> Result<OpucFamily> {
    let coeffs = a.first(n_max)?;
    Ok(OpucFamily::from_coefficients(coeffs))
}

impl OpucFamily {
    /// Family of degree `coeffs.len()`; the caller guarantees `|a_k| < 1`.
    fn from_coefficients(coeffs: Vec<f64>) -> Self {
        let mut phis = Vec::with_capacity(coeffs.len() + 1);
        phis.push(LaurentPoly::one());
        for (k, &a) in coeffs.iter().enumerate() {
            let phi = &phis[k];
            // real coefficients: Φ_k^*(z) = z^k Φ_k(1/z) is the coefficient reversal
            let star = phi.reflect().shift(k as i32);
            phis.push(&phi.shift(1) - &star.scale_real(a));
        }
        OpucFamily { verblunsky: coeffs, phis }
    }

    pub fn n_max(&self) -> usize {
        self.phis.len() - 1
    }

    pub fn verblunsky(&self) -> &[f64] {
        &self.verblunsky
    }

    /// `a_n` as used by this family (`n < n_max`).
    pub fn a(&self, n: usize) -> Result<f64> {
        self.verblunsky.get(n).copied().ok_or(Error::IndexOutOfRange {
            index: n,
            max: self.verblunsky.len().saturating_sub(1),
        })
    }

    pub fn phi(&self, n: usize) -> Result<&LaurentPoly> {
        self.phis.get(n).ok_or(Error::IndexOutOfRange { index: n, max: self.n_max() })
    }

    /// `ψ_{2m} = z^m Φ_{2m}(1/z)`, `ψ_{2m+1} = z^{-m} Φ_{2m+1}(z)`.
    pub fn psi(&self, n: usize) -> Result<LaurentPoly> {
        psi_n(self, n)
    }

    /// `h_n = ∏_{k<n} (1 − a_k²)`.
    pub fn h(&self, n: usize) -> Result<f64> {
        if n > self.n_max() {
            return Err(Error::IndexOutOfRange { index: n, max: self.n_max() });
        }
        Ok(self.verblunsky[..n].iter().map(|a| 1.0 - a * a).product())
    }
}

pub fn psi_n(family: &OpucFamily, n: usize) -> Result<LaurentPoly> {
    let phi = family.phi(n)?;
    let m = (n / 2) as i32;
    Ok(if n.is_multiple_of(2) { phi.reflect().shift(m) } else { phi.shift(-m) })
}

/// `h_n = ∏_{k<n} (1 − a_k²)`.
pub fn h_norm(a: &VerblunskySequence, n: usize) -> Result<f64> {
    Ok(a.first(n)?.iter().map(|a| 1.0 - a * a).product())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn real(p: &LaurentPoly) -> Vec<(i32, f64)> {
        p.iter().map(|(e, c)| (e, c.re)).collect()
    }

    #[test]
    fn first_two_steps() {
        let (a0, a1) = (0.3, -0.45);
        let fam = szego_sequence(&VerblunskySequence::Explicit(vec![a0, a1]), 2).unwrap();
        assert_eq!(real(fam.phi(1).unwrap()), vec![(0, -a0), (1, 1.0)]);
        let phi2 = fam.phi(2).unwrap();
        assert!((phi2.coeff(0).re + a1).abs() < 1e-15);
        assert!((phi2.coeff(1).re + a0 * (1.0 - a1)).abs() < 1e-15);
        assert_eq!(phi2.coeff(2).re, 1.0);
    }

    #[test]
    fn symmetric_jacobi_starts_with_z() {
        let fam = szego_sequence(&VerblunskySequence::jacobi(0.0, 0.0), 1).unwrap();
        assert_eq!(*fam.phi(1).unwrap(), LaurentPoly::z_pow(1));
    }

    #[test]
    fn norms() {
        let a = VerblunskySequence::jacobi(0.0, 0.0);
        assert_eq!(h_norm(&a, 0).unwrap(), 1.0);
        assert!((h_norm(&a, 2).unwrap() - 8.0 / 9.0).abs() < 1e-15);
        let fam = szego_sequence(&a, 10).unwrap();
        for n in 0..10 {
            let an = fam.a(n).unwrap();
            let ratio = fam.h(n + 1).unwrap() / fam.h(n).unwrap();
            assert!((ratio - (1.0 - an * an)).abs() < 1e-15);
        }
    }

    #[test]
    fn psi_examples() {
        let a0 = -0.2;
        let fam = szego_sequence(&VerblunskySequence::Explicit(vec![a0, 0.6, 0.1]), 3).unwrap();
        assert_eq!(fam.psi(0).unwrap(), LaurentPoly::one());
        assert_eq!(real(&fam.psi(1).unwrap()), vec![(0, -a0), (1, 1.0)]);
        // ψ_2 = z Φ_2(1/z) checked against direct evaluation
        let psi2 = fam.psi(2).unwrap();
        assert_eq!(psi2.span(), Some((-1, 1)));
        let z = Complex64::new(0.4, -0.8);
        let direct = z * fam.phi(2).unwrap().eval(z.inv()).unwrap();
        assert!((psi2.eval(z).unwrap() - direct).norm() < 1e-14);
        assert!(matches!(fam.psi(4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn monic_real_and_of_exact_degree() {
        let fam = szego_sequence(&VerblunskySequence::jacobi(0.3, 1.7), 30).unwrap();
        for n in 0..=30 {
            let p = fam.phi(n).unwrap();
            assert_eq!(p.max_exp(), Some(n as i32));
            assert_eq!(p.coeff(n as i32), Complex64::new(1.0, 0.0));
            assert!(p.has_real_coefficients());
            assert!(!p.has_negative_exponents());
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        let a = VerblunskySequence::Explicit(vec![0.1, 1.0]);
        assert_eq!(szego_sequence(&a, 2).unwrap_err(), Error::Validity { n: 1, value: 1.0 });
        assert!(szego_sequence(&VerblunskySequence::jacobi(5.0, -1.4), 3).is_err());
    }
}
