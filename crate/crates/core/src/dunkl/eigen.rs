use crate::jacobi::{psi_case, JacobiParams};
use crate::roots::{q_half_pow, q_pow};
use num_complex::Complex64;
use serde::Serialize;

/// Closed-form spectra of `K`, `L(N)`, `H(N)`, `Ĥ(N)` and `Y_m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenvalueTable {
    pub params: JacobiParams,
    pub order: usize,
}

impl EigenvalueTable {
    pub fn new(params: JacobiParams, order: usize) -> Self {
        assert!(order >= 1, "sieving order must be at least 1");
        EigenvalueTable { params, order }
    }

    /// `μ_n`: `−n/2` for even `n`, `(n+1)/2 + α + β + 1` for odd `n`.
    pub fn mu(&self, n: usize) -> f64 {
        lambda_with(n, self.params.s())
    }

    /// `λ_n(N)`: `−n/2` for even `n`, `(n+1)/2 + (α+β+1)N` for odd `n`.
    pub fn lambda(&self, n: usize) -> f64 {
        lambda_with(n, self.params.s() * self.order as f64)
    }

    /// `λ̃_n = λ_n² − N(α+β+1) λ_n`.
    pub fn lambda_tilde(&self, n: usize) -> f64 {
        let l = self.lambda(n);
        l * l - self.order as f64 * self.params.s() * l
    }

    /// `Λ_n(N) = n(n + N(α+β+1))`.
    pub fn big_lambda(&self, n: usize) -> f64 {
        let n = n as f64;
        n * (n + self.order as f64 * self.params.s())
    }

    /// `Ξ_n(N) = Λ_{n+1}(N) − Λ_1(N)`.
    pub fn xi(&self, n: usize) -> f64 {
        self.big_lambda(n + 1) - self.big_lambda(1)
    }

    /// `ω_{m,n} = q^{mν} + q^{−mν}` with `ν` the sieving exponent of `ψ_{2n−1}(·;N)`;
    /// `ω_{m,0} = 2`.
    pub fn omega(&self, m: usize, n: usize) -> Complex64 {
        if n == 0 {
            return Complex64::new(2.0, 0.0);
        }
        let nu = psi_case(2 * n - 1, self.order).nu as i64;
        let m = m as i64;
        q_pow(self.order, m * nu) + q_pow(self.order, -m * nu)
    }

    /// The printed parity rule with the double negation read as a plain
    /// conjugate pair: `q^{t/2} + q^{−t/2}` with `t = m(N − j)` when `N ≡ j`
    /// (mod 2) and `t = m(j + 1 − N)` otherwise, `j = (2n − 1) mod N`.
    pub fn omega_printed(&self, m: usize, n: usize) -> Complex64 {
        let big_n = self.order as i64;
        let j = (2 * n as i64 - 1).rem_euclid(big_n);
        let m = m as i64;
        let t = if (big_n - j) % 2 == 0 { m * (big_n - j) } else { m * (j + 1 - big_n) };
        q_half_pow(self.order, t) + q_half_pow(self.order, -t)
    }
}

fn lambda_with(n: usize, shift: f64) -> f64 {
    if n.is_multiple_of(2) {
        -(n as f64) / 2.0
    } else {
        (n as f64 + 1.0) / 2.0 + shift
    }
}
