//! Roots of unity with exact values on the quarter turns.

use num_complex::Complex64;
use std::f64::consts::PI;

/// `exp(2πi·k/n)`. Exponents are reduced mod `n` first; multiples of a
/// quarter turn return exact `±1`, `±i`.
pub fn root_of_unity(n: usize, k: i64) -> Complex64 {
    assert!(n > 0, "root of unity of order 0");
    let n = n as i64;
    let k = k.rem_euclid(n);
    if (4 * k) % n == 0 {
        return match 4 * k / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    // fold to the angle nearest zero so large multiples of 2π never reach sin/cos
    let k = if 2 * k > n { k - n } else { k };
    let (s, c) = (2.0 * PI * k as f64 / n as f64).sin_cos();
    Complex64::new(c, s)
}

/// `q^k` for `q = exp(2πi/n)`.
pub fn q_pow(n: usize, k: i64) -> Complex64 {
    root_of_unity(n, k)
}

/// `q^{t/2} = exp(iπ t/n)`, the branch used for half-integer powers of `q`.
pub fn q_half_pow(n: usize, t: i64) -> Complex64 {
    root_of_unity(2 * n, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_turns_exact() {
        assert_eq!(q_pow(2, 1), Complex64::new(-1.0, 0.0));
        assert_eq!(q_pow(4, 1), Complex64::new(0.0, 1.0));
        assert_eq!(q_pow(4, -1), Complex64::new(0.0, -1.0));
        assert_eq!(q_pow(3, 3), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn half_power_squares_to_q() {
        for n in 1..8 {
            for t in -9..9 {
                let h = q_half_pow(n, t);
                let e = (h * h - q_pow(n, t)).norm(); assert!(e < 4.0 * f64::EPSILON, "{n} {t} {h} {e}");
            }
        }
    }
}
