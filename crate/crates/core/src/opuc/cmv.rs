use super::VerblunskySequence;
use crate::error::{Error, Result};
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Square matrix stored by diagonals `-width..=width`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandMatrix {
    size: usize,
    width: usize,
    data: Vec<Complex64>,
}

impl BandMatrix {
    pub fn zeros(size: usize, width: usize) -> Self {
        BandMatrix { size, width, data: vec![ZERO; size * (2 * width + 1)] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = BandMatrix::zeros(size, 0);
        for i in 0..size {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.size || j >= self.size || i.abs_diff(j) > self.width {
            return None;
        }
        Some(i * (2 * self.width + 1) + (j + self.width - i))
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.slot(i, j).map_or(ZERO, |s| self.data[s])
    }

    /// Panics when `(i, j)` lies outside the band.
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        let s = self.slot(i, j).expect("entry outside the band");
        self.data[s] = v;
    }

    /// Column range of nonzero storage in row `i`.
    fn cols(&self, i: usize) -> std::ops::Range<usize> {
        i.saturating_sub(self.width)..(i + self.width + 1).min(self.size)
    }

    pub fn row(&self, i: usize) -> Vec<(usize, Complex64)> {
        self.cols(i).map(|j| (j, self.get(i, j))).collect()
    }

    pub fn matmul(&self, rhs: &BandMatrix) -> BandMatrix {
        assert_eq!(self.size, rhs.size, "band matrix size mismatch");
        let mut out = BandMatrix::zeros(self.size, self.width + rhs.width);
        for i in 0..self.size {
            for k in self.cols(i) {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in rhs.cols(k) {
                    let s = out.slot(i, j).unwrap();
                    out.data[s] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.size, "vector length mismatch");
        (0..self.size).map(|i| self.cols(i).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    /// `self · diag(d)`.
    pub fn mul_diag(&self, d: &[Complex64]) -> BandMatrix {
        let mut out = self.clone();
        for i in 0..self.size {
            for j in self.cols(i) {
                let s = out.slot(i, j).unwrap();
                out.data[s] *= d[j];
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> BandMatrix {
        BandMatrix { data: self.data.iter().map(|v| v * s).collect(), ..self.clone() }
    }

    /// `max |A[i,j] − δ_ij|` over rows `0..rows` and all columns.
    pub fn identity_defect(&self, rows: usize) -> f64 {
        (0..rows.min(self.size))
            .flat_map(|i| self.cols(i).map(move |j| (i, j)))
            .map(|(i, j)| (self.get(i, j) - if i == j { 1.0 } else { 0.0 }).norm())
            .fold(0.0, f64::max)
    }

    /// Number of nonzero entries in row `i`.
    pub fn row_nnz(&self, i: usize) -> usize {
        self.cols(i).filter(|&j| self.get(i, j) != ZERO).count()
    }
}

/// Leading `size × size` corner of `M₁`, `M₂` and `C = M₁M₂`.
///
/// `M₁ = [1] ⊕ Θ(a₁) ⊕ Θ(a₃) ⊕ …` and `M₂ = Θ(a₀) ⊕ Θ(a₂) ⊕ …` with
/// `Θ(a) = [[a, 1], [1 − a², −a]]`. The last `M₁` block is cut by the
/// truncation, so only rows `0..size−2` of `M₁`-based identities are exact.
#[derive(Debug, Clone)]
pub struct CmvTruncation {
    pub size: usize,
    pub m1: BandMatrix,
    pub m2: BandMatrix,
    pub c: BandMatrix,
}

fn put_block(m: &mut BandMatrix, top: usize, a: f64) {
    let c = |x: f64| Complex64::new(x, 0.0);
    m.set(top, top, c(a));
    if top + 1 < m.size() {
        m.set(top, top + 1, c(1.0));
        m.set(top + 1, top, c(1.0 - a * a));
        m.set(top + 1, top + 1, c(-a));
    }
}

pub fn cmv_matrices(a: &VerblunskySequence, size: usize) -> Result<CmvTruncation> {
    if size < 4 || !size.is_multiple_of(2) {
        return Err(Error::Domain(format!("CMV truncation size must be even and at least 4, got {size}")));
    }
    let coeffs = a.first(size)?;
    let mut m1 = BandMatrix::zeros(size, 1);
    m1.set(0, 0, Complex64::new(1.0, 0.0));
    for top in (1..size).step_by(2) {
        put_block(&mut m1, top, coeffs[top]);
    }
    let mut m2 = BandMatrix::zeros(size, 1);
    for top in (0..size).step_by(2) {
        put_block(&mut m2, top, coeffs[top]);
    }
    let c = m1.matmul(&m2);
    Ok(CmvTruncation { size, m1, m2, c })
}

impl CmvTruncation {
    pub fn build(a: &VerblunskySequence, size: usize) -> Result<Self> {
        cmv_matrices(a, size)
    }

    /// Rows on which identities involving `M₁` are unaffected by the cut.
    pub fn valid_rows(&self) -> usize {
        self.size - 2
    }

    /// `M_{1;j} = M₁ Ω` and `M_{2;j} = q^j M₂ Ω`, where `Ω = diag(ω_n)` holds
    /// the phases `ψ_n(q^{-j}z) = ω_n ψ_n(z)`.
    pub fn reflected(&self, q_j: Complex64, phases: &[Complex64]) -> Result<(BandMatrix, BandMatrix)> {
        if phases.len() != self.size {
            return Err(Error::Domain(format!(
                "expected {} phases, got {}",
                self.size,
                phases.len()
            )));
        }
        Ok((self.m1.mul_diag(phases), self.m2.mul_diag(phases).scale(q_j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_layout() {
        let a = VerblunskySequence::Explicit(vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6]);
        let t = cmv_matrices(&a, 6).unwrap();
        assert_eq!(t.m1.get(0, 0), Complex64::new(1.0, 0.0));
        assert_eq!(t.m1.get(1, 1).re, 0.2);
        assert_eq!(t.m1.get(2, 1).re, 1.0 - 0.04);
        assert_eq!(t.m2.get(2, 3).re, 1.0);
        assert_eq!(t.m2.get(3, 3).re, -0.3);
        assert_eq!(t.m1.get(0, 1), ZERO);
        // C is pentadiagonal
        assert!(t.c.width() == 2);
        assert!((0..6).all(|i| t.c.row_nnz(i) <= 4));
    }

    #[test]
    fn involutions_on_window() {
        let a = VerblunskySequence::jacobi(0.3, 1.7);
        let t = cmv_matrices(&a, 20).unwrap();
        assert!(t.m1.matmul(&t.m1).identity_defect(t.valid_rows()) < 1e-14);
        assert!(t.m2.matmul(&t.m2).identity_defect(t.size) < 1e-14);
    }

    #[test]
    fn size_must_be_even() {
        let a = VerblunskySequence::jacobi(0.0, 0.0);
        assert!(cmv_matrices(&a, 7).is_err());
        assert!(cmv_matrices(&a, 2).is_err());
    }
}
