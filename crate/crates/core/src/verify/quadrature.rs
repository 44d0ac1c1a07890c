use crate::error::Result;
use crate::jacobi::{weights, JacobiParams, Weight};
use crate::laurent::LaurentPoly;
use crate::par::Execution;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Largest node count tried by adaptive refinement.
pub const MAX_NODES: usize = 1 << 16;

/// Periodic trapezoid rule on the unit circle with half-step nodes
/// `θ_j = 2π(j + ½)/M` and equal weights `2π/M`.
///
/// The half step keeps every node off the 2N-th roots of unity for even `M`,
/// where the operator coefficients have removable singularities and the
/// sieved weight vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureGrid {
    pub nodes: usize,
    /// `true` when the weight is a trigonometric polynomial, i.e. when
    /// `α + ½` and `β + ½` are nonnegative integers.
    pub exact: bool,
}

/// Whether `ρ(θ;N)` is a trigonometric polynomial, and if so its degree.
pub fn weight_degree(p: &JacobiParams, order: usize) -> Option<usize> {
    let as_int = |x: f64| {
        let r = x.round();
        ((x - r).abs() < 1e-12 && r >= 0.0).then_some(r as usize)
    };
    Some((as_int(p.alpha + 0.5)? + as_int(p.beta + 0.5)?) * order)
}

impl QuadratureGrid {
    pub fn new(nodes: usize, p: &JacobiParams) -> Self {
        assert!(nodes >= 1, "quadrature needs at least one node");
        QuadratureGrid { nodes, exact: weight_degree(p, 1).is_some() }
    }

    /// Smallest power-of-two grid that integrates trigonometric polynomials of
    /// degree `integrand_degree` times `ρ(θ;N)` exactly (or a 256-node start
    /// for non-polynomial weights).
    pub fn for_degree(p: &JacobiParams, order: usize, integrand_degree: usize) -> Self {
        let nodes = match weight_degree(p, order) {
            Some(w) => (integrand_degree + w + 1).next_power_of_two().max(16),
            None => 256,
        };
        QuadratureGrid::new(nodes, p)
    }

    pub fn refined(&self) -> Self {
        QuadratureGrid { nodes: self.nodes * 2, ..*self }
    }

    pub fn angle(&self, j: usize) -> f64 {
        2.0 * PI * (j as f64 + 0.5) / self.nodes as f64
    }

    pub fn angles(&self) -> Vec<f64> {
        (0..self.nodes).map(|j| self.angle(j)).collect()
    }

    pub fn points(&self) -> Vec<Complex64> {
        self.angles().into_iter().map(|t| Complex64::from_polar(1.0, t)).collect()
    }

    pub fn step(&self) -> f64 {
        2.0 * PI / self.nodes as f64
    }

    /// `ρ(θ_j;N)` at every node.
    pub fn weight_values(&self, p: &JacobiParams, order: usize) -> Result<Vec<f64>> {
        self.angles().into_iter().map(|t| weights(Weight::RhoN(order), p, t)).collect()
    }
}

/// `∫ f(e^{iθ}) conj(g(e^{iθ})) w(θ) dθ` by the trapezoid rule.
pub fn circle_inner(
    f: &LaurentPoly,
    g: &LaurentPoly,
    weight: impl Fn(f64) -> Result<f64> + Sync + Send,
    grid: &QuadratureGrid,
    exec: Execution,
) -> Result<Complex64> {
    let angles = grid.angles();
    let terms = exec.try_map(&angles, |&t| {
        let z = Complex64::from_polar(1.0, t);
        Ok::<_, crate::Error>(f.eval_unchecked(z) * g.eval_unchecked(z).conj() * weight(t)?)
    })?;
    Ok(terms.into_iter().sum::<Complex64>() * grid.step())
}

/// Gram matrix `G_{mn} = Σ_j f_m(z_j) conj(f_n(z_j)) w_j · 2π/M` from
/// precomputed node values.
pub fn gram(values: &[Vec<Complex64>], weights: &[f64], step: f64, exec: Execution) -> Vec<Vec<Complex64>> {
    let idx: Vec<usize> = (0..values.len()).collect();
    exec.map(&idx, |&m| {
        (0..values.len())
            .map(|n| {
                values[m]
                    .iter()
                    .zip(&values[n])
                    .zip(weights)
                    .map(|((a, b), w)| a * b.conj() * *w)
                    .sum::<Complex64>()
                    * step
            })
            .collect()
    })
}

/// Values of each polynomial at the grid points.
pub fn node_values(polys: &[LaurentPoly], grid: &QuadratureGrid, exec: Execution) -> Vec<Vec<Complex64>> {
    let pts = grid.points();
    exec.map(polys, |f| pts.iter().map(|&z| f.eval_unchecked(z)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_weight_gives_two_pi() {
        let p = JacobiParams::new(0.5, 0.5);
        let grid = QuadratureGrid::new(8, &p);
        let one = LaurentPoly::one();
        let v = circle_inner(&one, &one, |_| Ok(1.0), &grid, Execution::Sequential).unwrap();
        assert!((v - Complex64::new(2.0 * PI, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn exactness_flag() {
        assert!(QuadratureGrid::new(4, &JacobiParams::new(0.5, 1.5)).exact);
        assert!(!QuadratureGrid::new(4, &JacobiParams::new(0.3, 1.7)).exact);
        assert_eq!(weight_degree(&JacobiParams::new(-0.5, 0.5), 3), Some(3));
        assert_eq!(weight_degree(&JacobiParams::new(0.0, 0.0), 3), None);
    }

    #[test]
    fn doubling_is_stable_for_polynomial_weights() {
        let p = JacobiParams::new(0.5, 1.5);
        let f = LaurentPoly::from_real_slice(-3, &[1.0, 0.5, -0.2, 0.3, 0.0, 0.7, 1.0]);
        let grid = QuadratureGrid::for_degree(&p, 3, 6);
        let rho = |t| weights(Weight::RhoN(3), &p, t);
        let a = circle_inner(&f, &f, rho, &grid, Execution::Sequential).unwrap();
        let b = circle_inner(&f, &f, rho, &grid.refined(), Execution::Sequential).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm());
    }
}
