use super::rational::Rational;
use crate::error::{Error, Result};
use crate::group::{ElementKind, GroupElement};
use crate::laurent::LaurentPoly;
use crate::par::Execution;
use crate::roots::q_pow;
use num_complex::Complex64;
use std::collections::BTreeMap;

/// One summand `c(z) · ∂^d ∘ g` acting as `f ↦ c(z) · ∂^d [f(g·z)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorTerm {
    pub coeff: Rational,
    pub d_order: usize,
    pub element: GroupElement,
}

/// `(derivative order, group element)`: terms sharing a key act on the same
/// transformed function.
pub type TermKey = (usize, GroupElement);

impl OperatorTerm {
    pub fn new(coeff: Rational, d_order: usize, element: GroupElement) -> Self {
        OperatorTerm { coeff, d_order, element }
    }

    pub fn key(&self) -> TermKey {
        (self.d_order, self.element)
    }
}

/// A finite sum of [`OperatorTerm`]s over the dihedral group `D_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct DunklOperator {
    dihedral: usize,
    terms: Vec<OperatorTerm>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    Compose,
    Add,
    Commutator,
    Anticommutator,
}

pub fn op_algebra(a: &DunklOperator, b: &DunklOperator, kind: OpKind) -> Result<DunklOperator> {
    match kind {
        OpKind::Compose => a.compose(b),
        OpKind::Add => Ok(a.add(b)),
        OpKind::Commutator => a.commutator(b),
        OpKind::Anticommutator => a.anticommutator(b),
    }
}

impl DunklOperator {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "dihedral order must be at least 1");
        DunklOperator { dihedral: n, terms: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Complex64::new(1.0, 0.0))
    }

    pub fn scalar(n: usize, c: Complex64) -> Self {
        Self::multiplication(n, Rational::constant(c))
    }

    /// `f ↦ c(z) f(z)`.
    pub fn multiplication(n: usize, c: Rational) -> Self {
        Self::zero(n).with(c, 0, GroupElement::identity(n))
    }

    /// `z∂_z`.
    pub fn euler(n: usize) -> Self {
        Self::zero(n).with(Rational::poly(LaurentPoly::z_pow(1)), 1, GroupElement::identity(n))
    }

    /// `f ↦ f(g·z)`.
    pub fn group(g: GroupElement) -> Self {
        Self::zero(g.order()).with(Rational::real(1.0), 0, g)
    }

    /// `M_j = z R_j`.
    pub fn reflection_multiplier(n: usize, j: i64) -> Self {
        Self::zero(n).with(Rational::poly(LaurentPoly::z_pow(1)), 0, GroupElement::reflection(n, j))
    }

    /// Adds a term and returns the operator (builder style).
    pub fn with(mut self, coeff: Rational, d_order: usize, element: GroupElement) -> Self {
        self.push(OperatorTerm::new(coeff, d_order, element));
        self
    }

    /// Adds a term, merging it into an existing one with the same key and
    /// the same denominator.
    pub fn push(&mut self, term: OperatorTerm) {
        assert_eq!(term.element.order(), self.dihedral, "term from a different dihedral group");
        if term.coeff.is_zero() {
            return;
        }
        if let Some(t) = self
            .terms
            .iter_mut()
            .find(|t| t.key() == term.key() && t.coeff.den == term.coeff.den)
        {
            t.coeff = t.coeff.add(&term.coeff);
            if t.coeff.is_zero() {
                let key = term.key();
                let den = term.coeff.den;
                self.terms.retain(|t| !(t.key() == key && t.coeff.den == den && t.coeff.is_zero()));
            }
            return;
        }
        self.terms.push(term);
    }

    pub fn dihedral_order(&self) -> usize {
        self.dihedral
    }

    pub fn terms(&self) -> &[OperatorTerm] {
        &self.terms
    }

    pub fn max_d_order(&self) -> usize {
        self.terms.iter().map(|t| t.d_order).max().unwrap_or(0)
    }

    /// Distinct keys in a stable order.
    pub fn keys(&self) -> Vec<TermKey> {
        let mut keys: Vec<TermKey> = self.terms.iter().map(|t| t.key()).collect();
        keys.sort();
        keys.dedup();
        keys
    }

    /// Sum of the coefficients attached to `key`, evaluated at `z`.
    pub fn coefficient_at(&self, key: TermKey, z: Complex64) -> Result<Complex64> {
        self.terms
            .iter()
            .filter(|t| t.key() == key)
            .try_fold(Complex64::new(0.0, 0.0), |acc, t| Ok(acc + t.coeff.eval(z)?))
    }

    /// `∂^d [f(g·z)]` for every key of the operator.
    fn transformed(&self, f: &LaurentPoly) -> BTreeMap<TermKey, LaurentPoly> {
        let mut by_element: BTreeMap<GroupElement, LaurentPoly> = BTreeMap::new();
        let mut out = BTreeMap::new();
        for (d, g) in self.keys() {
            let base = by_element.entry(g).or_insert_with(|| f.substitute(&g));
            out.insert((d, g), base.nth_derivative(d));
        }
        out
    }

    fn apply_prepared(&self, prepared: &BTreeMap<TermKey, LaurentPoly>, z: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            acc += t.coeff.eval(z)? * prepared[&t.key()].eval(z)?;
        }
        Ok(acc)
    }

    /// `(op f)(z)`.
    pub fn apply(&self, f: &LaurentPoly, z: Complex64) -> Result<Complex64> {
        self.apply_prepared(&self.transformed(f), z)
    }

    /// `(op f)(z_i)` for every point, sharing the symbolic preprocessing.
    pub fn apply_many(&self, f: &LaurentPoly, points: &[Complex64], exec: Execution) -> Result<Vec<Complex64>> {
        let prepared = self.transformed(f);
        exec.try_map(points, |&z| self.apply_prepared(&prepared, z))
    }

    /// `op f` as a Laurent polynomial, valid when every pole of the
    /// coefficients cancels against the function values.
    ///
    /// Terms are put over the product of their distinct denominators and the
    /// numerator is divided exactly; a remainder above `tol` is an error.
    pub fn apply_exact(&self, f: &LaurentPoly, tol: f64) -> Result<LaurentPoly> {
        let prepared = self.transformed(f);
        let mut groups: Vec<(LaurentPoly, LaurentPoly)> = Vec::new();
        for t in &self.terms {
            let piece = &t.coeff.num * &prepared[&t.key()];
            match groups.iter_mut().find(|(den, _)| *den == t.coeff.den) {
                Some((_, acc)) => *acc = &*acc + &piece,
                None => groups.push((t.coeff.den.clone(), piece)),
            }
        }
        let mut total = LaurentPoly::zero();
        let mut common = LaurentPoly::one();
        for (i, (_, num)) in groups.iter().enumerate() {
            let others = groups
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .fold(num.clone(), |acc, (_, (den, _))| &acc * den);
            total = &total + &others;
        }
        for (den, _) in &groups {
            common = &common * den;
        }
        total.div_exact(&common, tol)
    }

    pub fn scale(&self, s: Complex64) -> DunklOperator {
        let mut out = DunklOperator::zero(self.dihedral);
        for t in &self.terms {
            out.push(OperatorTerm::new(t.coeff.scale(s), t.d_order, t.element));
        }
        out
    }

    pub fn scale_real(&self, s: f64) -> DunklOperator {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn add(&self, other: &DunklOperator) -> DunklOperator {
        self.check_compatible(other);
        let mut out = self.clone();
        for t in &other.terms {
            out.push(t.clone());
        }
        out
    }

    pub fn sub(&self, other: &DunklOperator) -> DunklOperator {
        self.add(&other.scale_real(-1.0))
    }

    fn check_compatible(&self, other: &DunklOperator) {
        assert_eq!(self.dihedral, other.dihedral, "operators over different dihedral groups");
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DunklOperator) -> Result<DunklOperator> {
        self.check_compatible(other);
        let mut out = DunklOperator::zero(self.dihedral);
        for a in &self.terms {
            for b in &other.terms {
                for t in compose_terms(a, b)? {
                    out.push(t);
                }
            }
        }
        Ok(out)
    }

    /// `[self, other] = self∘other − other∘self`.
    pub fn commutator(&self, other: &DunklOperator) -> Result<DunklOperator> {
        Ok(self.compose(other)?.sub(&other.compose(self)?))
    }

    /// `{self, other} = self∘other + other∘self`.
    pub fn anticommutator(&self, other: &DunklOperator) -> Result<DunklOperator> {
        Ok(self.compose(other)?.add(&other.compose(self)?))
    }
}

/// Writes `(∂^d F)(g·z)` as `Σ e_m(z) ∂^m [F(g·z)]`.
fn chain_factors(g: &GroupElement, d: usize) -> Result<Vec<(usize, Rational)>> {
    let n = g.order();
    Ok(match (g.kind(), d) {
        (_, 0) => vec![(0, Rational::real(1.0))],
        (ElementKind::Identity, _) => vec![(d, Rational::real(1.0))],
        (ElementKind::Rotation(k), _) => vec![(d, Rational::constant(q_pow(n, -(k as i64) * d as i64)))],
        (ElementKind::Reflection(j), 1) => {
            let qj = q_pow(n, -(j as i64));
            vec![(1, Rational::poly(LaurentPoly::monomial(2, -qj)))]
        }
        (ElementKind::Reflection(j), 2) => {
            let q2 = q_pow(n, -2 * j as i64);
            vec![
                (2, Rational::poly(LaurentPoly::monomial(4, q2))),
                (1, Rational::poly(LaurentPoly::monomial(3, 2.0 * q2))),
            ]
        }
        (_, d) => return Err(Error::UnsupportedComposition(d)),
    })
}

/// `(c₁ ∂^{d₁} g₁) ∘ (c₂ ∂^{d₂} g₂)` expanded into normal-ordered terms.
fn compose_terms(a: &OperatorTerm, b: &OperatorTerm) -> Result<Vec<OperatorTerm>> {
    let g1 = a.element;
    let element = g1.compose(&b.element);
    let moved = b.coeff.substitute(&g1);
    // g₁ [c₂ ∂^{d₂} u] = Σ_m h_m ∂^m (g₁ u)
    let inner: Vec<(usize, Rational)> = chain_factors(&g1, b.d_order)?
        .into_iter()
        .map(|(m, e)| (m, moved.mul(&e)))
        .collect();

    let mut out: Vec<(usize, Rational)> = Vec::new();
    for (m, h) in inner {
        match a.d_order {
            0 => out.push((m, h)),
            1 => {
                out.push((m, h.derivative()));
                out.push((m + 1, h));
            }
            2 => {
                let h1 = h.derivative();
                out.push((m, h1.derivative()));
                out.push((m + 1, h1.scale(Complex64::new(2.0, 0.0))));
                out.push((m + 2, h));
            }
            d => return Err(Error::UnsupportedComposition(d + m)),
        }
    }
    let mut terms = Vec::new();
    for (d, h) in out {
        if h.is_zero() {
            continue;
        }
        if d > 2 {
            return Err(Error::UnsupportedComposition(d));
        }
        terms.push(OperatorTerm::new(a.coeff.mul(&h), d, element));
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::SamplePlan;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn sample_poly() -> LaurentPoly {
        LaurentPoly::from_pairs([(-3, c(0.5)), (-1, Complex64::new(1.0, -2.0)), (0, c(0.25)), (2, c(-1.5)), (5, c(0.75))])
    }

    /// Compares two operators on `f` at plan samples.
    fn agree(a: &DunklOperator, b: &DunklOperator, f: &LaurentPoly, n: usize) -> f64 {
        let pts = SamplePlan::for_order(40, n).points().unwrap();
        let x = a.apply_many(f, &pts, Execution::Sequential).unwrap();
        let y = b.apply_many(f, &pts, Execution::Sequential).unwrap();
        x.iter().zip(&y).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn identity_and_euler() {
        let f = sample_poly();
        let z = Complex64::new(0.3, 0.9);
        assert_eq!(DunklOperator::identity(3).apply(&f, z).unwrap(), f.eval(z).unwrap());
        for k in [-4, 0, 3] {
            let zk = LaurentPoly::z_pow(k);
            let v = DunklOperator::euler(1).apply(&zk, z).unwrap();
            assert!((v - k as f64 * z.powi(k)).norm() < 1e-14);
        }
    }

    #[test]
    fn multiplier_squares_to_identity() {
        let m0 = DunklOperator::reflection_multiplier(1, 0);
        let sq = m0.compose(&m0).unwrap();
        assert_eq!(sq.terms().len(), 1);
        assert!(agree(&sq, &DunklOperator::identity(1), &sample_poly(), 1) < 1e-13);
    }

    #[test]
    fn composition_matches_sequential_application() {
        let n = 4;
        let f = sample_poly();
        let a = DunklOperator::euler(n)
            .with(Rational::poly(LaurentPoly::from_real_slice(-1, &[1.0, 0.0, 2.0])), 0, GroupElement::reflection(n, 1))
            .with(Rational::real(0.5), 1, GroupElement::rotation(n, 3));
        let b = DunklOperator::zero(n)
            .with(Rational::poly(LaurentPoly::z_pow(2)), 1, GroupElement::reflection(n, 3))
            .with(Rational::real(-1.0), 0, GroupElement::rotation(n, 1));
        let ab = a.compose(&b).unwrap();
        // apply b exactly (polynomial coefficients), then a
        let bf = b.apply_exact(&f, 1e-14).unwrap();
        let pts = SamplePlan::for_order(40, n).points().unwrap();
        for z in pts {
            let lhs = ab.apply(&f, z).unwrap();
            let rhs = a.apply(&bf, z).unwrap();
            assert!((lhs - rhs).norm() < 1e-11 * (1.0 + rhs.norm()), "{lhs} {rhs}");
        }
    }

    #[test]
    fn second_order_reflection_chain_rule() {
        let n = 3;
        let f = sample_poly();
        let d2 = DunklOperator::zero(n).with(Rational::real(1.0), 2, GroupElement::identity(n));
        let r = DunklOperator::group(GroupElement::reflection(n, 2));
        let rd2 = r.compose(&d2).unwrap();
        let pts = SamplePlan::for_order(20, n).points().unwrap();
        let f2 = f.nth_derivative(2);
        for z in pts {
            let expect = f2.eval(GroupElement::reflection(n, 2).image(z)).unwrap();
            assert!((rd2.apply(&f, z).unwrap() - expect).norm() < 1e-11 * (1.0 + expect.norm()));
        }
    }

    #[test]
    fn order_overflow_is_rejected() {
        let d2 = DunklOperator::zero(1).with(Rational::real(1.0), 2, GroupElement::identity(1));
        let e = DunklOperator::euler(1);
        assert_eq!(d2.compose(&e).unwrap_err(), Error::UnsupportedComposition(3));
    }

    #[test]
    fn exact_action_cancels_removable_poles() {
        // (R_0 f − f)/(1 − z²) is a Laurent polynomial
        let den = LaurentPoly::from_real_slice(0, &[1.0, 0.0, -1.0]);
        let coeff = Rational::new(LaurentPoly::one(), den).unwrap();
        let op = DunklOperator::zero(1)
            .with(coeff.clone(), 0, GroupElement::reflection(1, 0))
            .with(coeff.neg(), 0, GroupElement::identity(1));
        let f = sample_poly();
        let exact = op.apply_exact(&f, 1e-12).unwrap();
        let z = Complex64::new(0.2, 1.1);
        assert!((exact.eval(z).unwrap() - op.apply(&f, z).unwrap()).norm() < 1e-12);
        let bad = DunklOperator::multiplication(1, coeff);
        assert!(bad.apply_exact(&f, 1e-12).is_err());
    }

    #[test]
    fn commutator_of_rotations_vanishes() {
        let n = 5;
        let a = DunklOperator::group(GroupElement::rotation(n, 2));
        let b = DunklOperator::group(GroupElement::rotation(n, 4));
        assert!(a.commutator(&b).unwrap().terms().is_empty());
        let r = DunklOperator::group(GroupElement::reflection(n, 1));
        let anti = r.anticommutator(&r).unwrap();
        assert!(agree(&anti, &DunklOperator::scalar(n, c(2.0)), &sample_poly(), n) < 1e-13);
    }
}
