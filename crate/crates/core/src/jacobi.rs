//! Jacobi and sieved Jacobi Verblunsky parameters, the sieving map on `Φ_n`
//! and `ψ_n`, rotation phases, and the weight functions.

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, SamplePlan};
use crate::opuc::{szego_sequence, OpucFamily, VerblunskySequence};
use crate::roots::q_pow;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Self {
        JacobiParams { alpha, beta }
    }

    /// `α + β + 1`, the recurring combination in every operator coefficient.
    pub fn s(&self) -> f64 {
        self.alpha + self.beta + 1.0
    }

    /// `α − β`.
    pub fn d(&self) -> f64 {
        self.alpha - self.beta
    }

    /// Checks `|a_n| < 1` for `n < count`.
    pub fn validate(&self, count: usize) -> Result<()> {
        (0..count).try_for_each(|n| jacobi_verblunsky(self, n).map(|_| ()))
    }
}

/// `a_n = −(α + ½ + (−1)^{n+1}(β + ½)) / (n + α + β + 2)`.
pub fn jacobi_verblunsky(p: &JacobiParams, n: usize) -> Result<f64> {
    let den = n as f64 + p.alpha + p.beta + 2.0;
    if den == 0.0 || !den.is_finite() {
        return Err(Error::Domain(format!("a_{n} has vanishing denominator n + α + β + 2")));
    }
    let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    let a = -(p.alpha + 0.5 + sign * (p.beta + 0.5)) / den;
    if !(a.abs() < 1.0) {
        return Err(Error::Validity { n, value: a });
    }
    Ok(a)
}

/// `a_n(N) = a_{k−1}` when `n = Nk − 1`, zero otherwise.
pub fn sieved_verblunsky(p: &JacobiParams, order: usize, n: usize) -> Result<f64> {
    check_order(order)?;
    if (n + 1).is_multiple_of(order) {
        jacobi_verblunsky(p, (n + 1) / order - 1)
    } else {
        Ok(0.0)
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::Domain("sieving order N must be at least 1".into()));
    }
    Ok(())
}

/// Which of the four sieving forms relates `ψ_n(z;N)` to `ψ_k`, keyed by the
/// parities of `n` and `k` in `n = Nk + j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PsiCase {
    /// `z^{−j/2} ψ_k(z^N)`
    EvenNEvenK,
    /// `z^{(N−j)/2} ψ_k(z^{−N})`
    EvenNOddK,
    /// `z^{(j+1)/2} ψ_k(z^{−N})`
    OddNEvenK,
    /// `z^{(j+1−N)/2} ψ_k(z^N)`
    OddNOddK,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PsiCaseDescriptor {
    pub n: usize,
    pub order: usize,
    pub k: usize,
    pub j: usize,
    pub nu: i32,
    pub power_sign: i32,
    pub case: PsiCase,
}

/// Decomposes `n = Nk + j` and returns the exponent data with
/// `ψ_n(z;N) = z^ν ψ_k(z^{power_sign·N})`.
pub fn psi_case(n: usize, order: usize) -> PsiCaseDescriptor {
    assert!(order >= 1, "sieving order must be at least 1");
    let (k, j) = (n / order, n % order);
    let (ni, ji) = (order as i32, j as i32);
    let (case, nu, power_sign) = match (n % 2, k % 2) {
        (0, 0) => (PsiCase::EvenNEvenK, -ji / 2, 1),
        (0, _) => (PsiCase::EvenNOddK, (ni - ji) / 2, -1),
        (_, 0) => (PsiCase::OddNEvenK, (ji + 1) / 2, -1),
        _ => (PsiCase::OddNOddK, (ji + 1 - ni) / 2, 1),
    };
    PsiCaseDescriptor { n, order, k, j, nu, power_sign, case }
}

/// Sieved family `Φ_n(z;N)`, `ψ_n(z;N)` for `n ≤ n_max`, carried by the plain
/// Jacobi family it is built from.
#[derive(Debug, Clone)]
pub struct SievedFamily {
    params: JacobiParams,
    order: usize,
    n_max: usize,
    base: OpucFamily,
}

impl SievedFamily {
    pub fn new(params: JacobiParams, order: usize, n_max: usize) -> Result<Self> {
        check_order(order)?;
        let base = szego_sequence(&VerblunskySequence::Jacobi(params), n_max / order + 1)?;
        Ok(SievedFamily { params, order, n_max, base })
    }

    pub fn params(&self) -> JacobiParams {
        self.params
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// The unsieved Jacobi family `Φ_k`.
    pub fn base(&self) -> &OpucFamily {
        &self.base
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            return Err(Error::IndexOutOfRange { index: n, max: self.n_max });
        }
        Ok(())
    }

    /// `a_n(N)`.
    pub fn a(&self, n: usize) -> Result<f64> {
        sieved_verblunsky(&self.params, self.order, n)
    }

    /// `Φ_n(z;N) = z^j Φ_k(z^N)`.
    pub fn phi(&self, n: usize) -> Result<LaurentPoly> {
        self.check(n)?;
        let (k, j) = (n / self.order, n % self.order);
        Ok(self.base.phi(k)?.substitute_power(self.order as i32).shift(j as i32))
    }

    /// `ψ_{2m}(z;N) = z^m Φ_{2m}(1/z;N)`, `ψ_{2m+1}(z;N) = z^{−m} Φ_{2m+1}(z;N)`.
    pub fn psi(&self, n: usize) -> Result<LaurentPoly> {
        let phi = self.phi(n)?;
        let m = (n / 2) as i32;
        Ok(if n.is_multiple_of(2) { phi.reflect().shift(m) } else { phi.shift(-m) })
    }

    /// `ψ_n(z;N)` rebuilt from `ψ_k` through [`psi_case`].
    pub fn psi_from_case(&self, n: usize) -> Result<LaurentPoly> {
        self.check(n)?;
        let d = psi_case(n, self.order);
        let inner = self.base.psi(d.k)?;
        Ok(inner.substitute_power(d.power_sign * self.order as i32).shift(d.nu))
    }

    /// `h_n(N) = ∏_{m<n} (1 − a_m(N)²)`.
    pub fn h(&self, n: usize) -> Result<f64> {
        (0..n).try_fold(1.0, |acc, m| self.a(m).map(|a| acc * (1.0 - a * a)))
    }
}

pub fn sieved_phi(p: &JacobiParams, order: usize, n: usize) -> Result<LaurentPoly> {
    SievedFamily::new(*p, order, n)?.phi(n)
}

pub fn sieved_psi(p: &JacobiParams, order: usize, n: usize) -> Result<LaurentPoly> {
    SievedFamily::new(*p, order, n)?.psi(n)
}

/// Measured phases for one `(n, j)`:
/// `ψ_n(q^{−j}z) = reflection_phase · ψ_n(z)` and `ψ_n(q^{j}z) = rotation_phase · ψ_n(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseEntry {
    pub n: usize,
    pub j: usize,
    #[serde(serialize_with = "ser_complex")]
    pub reflection_phase: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub rotation_phase: Complex64,
    /// Largest spread of either ratio across the sample plan.
    pub variation: f64,
}

pub(crate) fn ser_complex<S: serde::Serializer>(c: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&c.re)?;
    t.serialize_element(&c.im)?;
    t.end()
}

#[derive(Debug, Clone, Serialize)]
pub struct PhaseTable {
    pub order: usize,
    pub entries: Vec<PhaseEntry>,
}

impl PhaseTable {
    /// Measures the phases as ratios at the first sample and records how far
    /// the ratio drifts over the rest of the plan.
    pub fn measure(family: &SievedFamily, plan: &SamplePlan) -> Result<PhaseTable> {
        let order = family.order();
        let pts = plan.points()?;
        let mut entries = Vec::new();
        for n in 0..=family.n_max() {
            let psi = family.psi(n)?;
            for j in 0..order {
                let (down, up) = (q_pow(order, -(j as i64)), q_pow(order, j as i64));
                let mut first: Option<(Complex64, Complex64)> = None;
                let mut variation: f64 = 0.0;
                for &z in &pts {
                    let base = psi.eval(z)?;
                    let r = psi.eval(down * z)? / base;
                    let t = psi.eval(up * z)? / base;
                    match first {
                        None => first = Some((r, t)),
                        Some((r0, t0)) => variation = variation.max((r - r0).norm()).max((t - t0).norm()),
                    }
                }
                let (reflection_phase, rotation_phase) = first.expect("plan has at least one point");
                entries.push(PhaseEntry { n, j, reflection_phase, rotation_phase, variation });
            }
        }
        Ok(PhaseTable { order, entries })
    }

    pub fn get(&self, n: usize, j: usize) -> Option<&PhaseEntry> {
        self.entries.get(n * self.order + j).filter(|e| e.n == n && e.j == j)
    }

    /// Phases `ω_n` for a fixed `j`, `n = 0..count`.
    pub fn reflection_column(&self, j: usize, count: usize) -> Option<Vec<Complex64>> {
        (0..count).map(|n| self.get(n, j).map(|e| e.reflection_phase)).collect()
    }

    /// Largest `| |ω| − 1 |` over the table.
    pub fn modulus_defect(&self) -> f64 {
        self.entries
            .iter()
            .flat_map(|e| [e.reflection_phase, e.rotation_phase])
            .map(|w| (w.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// `q^{jν}` with `ν` from [`psi_case`]: the rotation phase of `ψ_n(·;N)` under `T_j`.
pub fn rotation_phase(n: usize, order: usize, j: i64) -> Complex64 {
    q_pow(order, j * psi_case(n, order).nu as i64)
}

/// Weight functions on the circle and on `[−2, 2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// `ρ(θ) = (1 − cos θ)^{α+½} (1 + cos θ)^{β+½}`
    Rho,
    /// `ρ(θ;N) = ρ(Nθ)`
    RhoN(usize),
    /// `w(x) = ρ(θ;N)/√(4 − x²)` with `x = 2cos θ`
    Interval(usize),
}

/// `(1 − cos t)^{α+½}(1 + cos t)^{β+½}` via half-angle forms for accuracy near the endpoints.
fn rho_at(p: &JacobiParams, t: f64) -> f64 {
    let (s, c) = (t / 2.0).sin_cos();
    (2.0 * s * s).powf(p.alpha + 0.5) * (2.0 * c * c).powf(p.beta + 0.5)
}

/// Evaluates a weight at `point` (an angle for `Rho`/`RhoN`, an abscissa `x` for `Interval`).
pub fn weights(which: Weight, p: &JacobiParams, point: f64) -> Result<f64> {
    match which {
        Weight::Rho => Ok(rho_at(p, point)),
        Weight::RhoN(order) => {
            check_order(order)?;
            Ok(rho_at(p, order as f64 * point))
        }
        Weight::Interval(order) => {
            check_order(order)?;
            if !(point.abs() < 2.0) {
                return Err(Error::Domain(format!("interval weight needs |x| < 2, got {point}")));
            }
            let theta = (point / 2.0).acos();
            Ok(rho_at(p, order as f64 * theta) / (4.0 - point * point).sqrt())
        }
    }
}

/// `ρ(θ;N)` is invariant under `θ → 2πk/N − θ`; returns the largest violation over a grid.
pub fn reflection_invariance_defect(p: &JacobiParams, order: usize, grid: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..grid {
        let t = 2.0 * PI * (i as f64 + 0.5) / grid as f64;
        let base = weights(Weight::RhoN(order), p, t)?;
        for k in 0..order {
            let image = 2.0 * PI * k as f64 / order as f64 - t;
            let v = weights(Weight::RhoN(order), p, image)?;
            worst = worst.max((v - base).abs() / base.max(1.0));
        }
    }
    Ok(worst)
}
