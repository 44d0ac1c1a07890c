//! Sample plans for certifying Laurent-polynomial identities by evaluation.
//!
//! A Laurent polynomial whose exponents lie in a window of width `w` is zero
//! as soon as it vanishes at `w + 1` distinct points on a circle. Operator
//! identities with rational coefficients become polynomial identities once the
//! denominators are cleared, so a plan with enough points away from the poles
//! turns a sampled residual into a certificate.

use crate::error::{Error, Result};
use crate::par::{nan_max, Execution};
use crate::roots::root_of_unity;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Angular offset of the first sample, in radians.
pub const DEFAULT_PHASE_OFFSET: f64 = 0.37;

/// Default minimum distance from any pole.
pub const DEFAULT_POLE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePlan {
    pub count: usize,
    pub radius: f64,
    pub phase_offset: f64,
    pub excluded_pole_tolerance: f64,
    /// Dihedral order whose 2N-th roots of unity must be avoided; `None` only avoids ±1.
    pub pole_order: Option<usize>,
    pub execution: Execution,
}

impl SamplePlan {
    pub fn new(count: usize) -> Self {
        SamplePlan {
            count,
            radius: 1.0,
            phase_offset: DEFAULT_PHASE_OFFSET,
            excluded_pole_tolerance: DEFAULT_POLE_TOLERANCE,
            pole_order: None,
            execution: Execution::default(),
        }
    }

    /// Plan avoiding the 2N-th roots of unity.
    ///
    /// The count is raised to a multiple of `2N`; then every pole sits at the
    /// same offset `phase_offset mod 2π/count` from the sample grid, and the
    /// count is stepped further until that offset is at least a quarter of
    /// the grid spacing.
    pub fn for_order(count: usize, n: usize) -> Self {
        let n = n.max(1);
        let base = count.max(1).div_ceil(2 * n) * 2 * n;
        let count = (0..256)
            .map(|i| base + 2 * n * i)
            .find(|&c| {
                let frac = (DEFAULT_PHASE_OFFSET * c as f64 / (2.0 * PI)).fract();
                (0.25..=0.75).contains(&frac)
            })
            .unwrap_or(base);
        SamplePlan { pole_order: Some(n), ..SamplePlan::new(count) }
    }

    /// Smallest distance from any sample to an excluded pole.
    pub fn min_pole_distance(&self) -> f64 {
        (0..self.count).map(|j| self.pole_distance(self.point(j))).fold(f64::INFINITY, f64::min)
    }

    pub fn with_radius(mut self, radius: f64) -> Self {
        self.radius = radius;
        self
    }

    pub fn with_phase_offset(mut self, phase_offset: f64) -> Self {
        self.phase_offset = phase_offset;
        self
    }

    pub fn with_pole_tolerance(mut self, tol: f64) -> Self {
        self.excluded_pole_tolerance = tol;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    /// Grows `count` so the plan certifies identities spanning `width` exponents.
    pub fn covering(mut self, width: usize) -> Self {
        self.count = self.count.max(2 * width + 1);
        self
    }

    /// The `j`-th sample without validation.
    pub fn point(&self, j: usize) -> Complex64 {
        let theta = 2.0 * PI * j as f64 / self.count as f64 + self.phase_offset;
        Complex64::from_polar(self.radius, theta)
    }

    /// Distance from `z` to the nearest excluded pole (0, ±1 and, with an
    /// order set, every 2N-th root of unity).
    pub fn pole_distance(&self, z: Complex64) -> f64 {
        let mut d = z.norm().min((z - 1.0).norm()).min((z + 1.0).norm());
        if let Some(n) = self.pole_order {
            // nearest 2N-th root by angle
            let m = 2 * n;
            let k = (z.arg() * m as f64 / (2.0 * PI)).round() as i64;
            for kk in [k - 1, k, k + 1] {
                d = d.min((z - root_of_unity(m, kk)).norm());
            }
        }
        d
    }

    /// All sample points, checked for validity.
    pub fn points(&self) -> Result<Vec<Complex64>> {
        if self.count == 0 {
            return Err(Error::Plan("sample count must be positive".into()));
        }
        if !(self.radius > 0.0) || !self.radius.is_finite() {
            return Err(Error::Plan(format!("radius must be positive, got {}", self.radius)));
        }
        let pts: Vec<Complex64> = (0..self.count).map(|j| self.point(j)).collect();
        for (j, z) in pts.iter().enumerate() {
            let d = self.pole_distance(*z);
            if d <= self.excluded_pole_tolerance {
                return Err(Error::Plan(format!(
                    "sample {j} at {z} lies within {d:e} of an excluded pole"
                )));
            }
        }
        Ok(pts)
    }

    /// Checks that the plan has enough points to certify an identity whose
    /// exponents span `width`.
    pub fn certify_span(&self, width: usize) -> Result<()> {
        if self.count < 2 * width + 1 {
            return Err(Error::Plan(format!(
                "{} samples cannot certify an identity of exponent span {width} (need {})",
                self.count,
                2 * width + 1
            )));
        }
        Ok(())
    }
}

/// Default relative tolerance for identities of exponent span `width`.
pub fn default_tolerance(width: usize) -> f64 {
    1e-9 * (1.0 + width as f64)
}

/// `max_j |f(z_j) - g(z_j)| / max(1, max_j |g(z_j)|)` over the plan.
pub fn max_residual_on_samples<F, G>(f: F, g: G, plan: &SamplePlan) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync + Send,
    G: Fn(Complex64) -> Result<Complex64> + Sync + Send,
{
    let pts = plan.points()?;
    let pairs = plan.execution.try_map(&pts, |&z| Ok::<_, Error>((f(z)?, g(z)?)))?;
    let scale = pairs.iter().map(|(_, b)| b.norm()).fold(1.0, nan_max);
    Ok(pairs.iter().map(|(a, b)| (a - b).norm()).fold(0.0, nan_max) / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    #[test]
    fn points_are_distinct_and_avoid_poles() {
        for n in 1..=12 {
            let plan = SamplePlan::for_order(97, n);
            let pts = plan.points().unwrap();
            for i in 0..pts.len() {
                for j in 0..i {
                    assert!((pts[i] - pts[j]).norm() > 1e-3);
                }
            }
        }
    }

    #[test]
    fn rounded_counts_keep_a_uniform_margin() {
        for n in 1..=6 {
            for want in [10, 50, 97, 200] {
                let plan = SamplePlan::for_order(want, n);
                assert!(plan.count >= want && plan.count.is_multiple_of(2 * n));
                let spacing = 2.0 * PI / plan.count as f64;
                assert!(plan.min_pole_distance() > 0.24 * spacing, "N={n} count={}", plan.count);
            }
        }
    }

    #[test]
    fn offset_clears_roots_of_unity_up_to_360() {
        // the first sample alone sits at angle 0.37
        let plan = SamplePlan::for_order(1, 180);
        assert!(plan.points().is_ok());
    }

    #[test]
    fn zero_offset_hits_one() {
        let plan = SamplePlan::new(8).with_phase_offset(0.0);
        assert!(matches!(plan.points(), Err(Error::Plan(_))));
    }

    #[test]
    fn residual_examples() {
        let p = LaurentPoly::from_real_slice(-3, &[1.0, -2.0, 0.5, 0.0, 4.0]);
        let plan = SamplePlan::new(21);
        let r = max_residual_on_samples(|z| p.eval(z), |z| p.eval(z), &plan).unwrap();
        assert_eq!(r, 0.0);

        let bumped = &p + &LaurentPoly::monomial(1, Complex64::new(1e-6, 0.0));
        let r = max_residual_on_samples(|z| bumped.eval(z), |z| p.eval(z), &plan).unwrap();
        assert!(r > 1e-7 && r <= 1e-6, "{r}");
    }

    #[test]
    fn certify_span_threshold() {
        assert!(SamplePlan::new(9).certify_span(4).is_ok());
        assert!(SamplePlan::new(8).certify_span(4).is_err());
        assert_eq!(SamplePlan::new(3).covering(10).count, 21);
    }
}
