//! Coefficient families of q-series and the even/odd splitting used to apply
//! the k = 2 statements to entire functions.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{truncate_series, SeriesFunction};

/// Threshold below which the partial theta function has only real zeros.
pub const Q_TILDE: f64 = 0.309_249_338_6;
/// `Q_TILDE^(1/4)`.
pub const Q_STAR: f64 = 0.745_722_410_7;

/// `q^e` with an integer exponent `e >= 0`, by repeated squaring.
pub fn qpow(q: Complex64, e: u64) -> Complex64 {
    let mut base = q;
    let mut e = e;
    let mut acc = Complex64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        e >>= 1;
        if e > 0 {
            base *= base;
        }
    }
    acc
}

fn tri(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|x| (x as f64).ln()).sum()
}

/// `c_n = q^{n(n-1)/2} / n!`, `n = 0..=n_max`.
pub fn disturbed_exp_coeffs(q: Complex64, n_max: usize) -> Vec<Complex64> {
    let mut fact = 1.0f64;
    (0..=n_max as u64)
        .map(|n| {
            if n > 0 {
                fact *= n as f64;
            }
            let qe = qpow(q, tri(n));
            if fact.is_finite() && qe.norm() > 1e-290 {
                qe / fact
            } else if q.norm() == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                let lm = tri(n) as f64 * q.norm().ln() - ln_factorial(n);
                let unit = qpow(q / q.norm(), tri(n));
                unit * lm.exp()
            }
        })
        .collect()
}

/// `c_n = binom(N, n) q^{n(n-1)/2}`.
pub fn sokal_poly_coeffs(q: Complex64, n_deg: usize) -> Vec<Complex64> {
    let mut binom = 1.0f64;
    (0..=n_deg as u64)
        .map(|n| {
            if n > 0 {
                binom = binom * (n_deg as u64 - n + 1) as f64 / n as f64;
            }
            qpow(q, tri(n)) * binom
        })
        .collect()
}

/// `c_n = q^{n(n-1)/2}`.
pub fn partial_theta_coeffs(q: Complex64, n_max: usize) -> Vec<Complex64> {
    (0..=n_max as u64).map(|n| qpow(q, tri(n))).collect()
}

/// How the odd part enters `H(z) = f(z^2) + z g(+-z^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitMode {
    /// `H(z) = f(z^2) + z g(z^2)`.
    Plain,
    /// `H(z) = f(z^2) + z g(-z^2)`.
    AlternatingOdd,
}

/// Even and odd parts: `f_n = c_{2n}`, `g_n = +-c_{2n+1}`.
pub fn split_even_odd(c: &[Complex64], mode: SplitMode) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    if c.first().map_or(true, |x| x.norm() == 0.0) {
        return Err(Error::ZeroInput("c_0"));
    }
    let f = c.iter().step_by(2).copied().collect();
    let g = c
        .iter()
        .skip(1)
        .step_by(2)
        .enumerate()
        .map(|(n, &x)| if mode == SplitMode::AlternatingOdd && n % 2 == 1 { -x } else { x })
        .collect();
    Ok((f, g))
}

/// Coefficients of `h(conj(mu) z)` where `h(z) = sum (sign i)^{n(n-1)/2} f_n z^n`
/// and `mu = exp(sign i pi/4)`: `c_{2n} = f_{2n}`, `c_{2l+1} = conj(mu) (-1)^l f_{2l+1}`.
pub fn rotate_half_i(f: &[f64], sign: i32) -> Result<Vec<Complex64>> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument(format!("sign must be +1 or -1, got {sign}")));
    }
    let mu_bar = Complex64::from_polar(1.0, -(sign as f64) * std::f64::consts::FRAC_PI_4);
    Ok(f
        .iter()
        .enumerate()
        .map(|(n, &x)| {
            if n % 2 == 0 {
                Complex64::new(x, 0.0)
            } else {
                let l = n / 2;
                mu_bar * if l % 2 == 0 { x } else { -x }
            }
        })
        .collect())
}

/// Confirms that the even and odd parts of the partial theta function are
/// `Theta0(qz; q^4)` and `Theta0(q^3 z; q^4)`, using `2n^2 - n = n + 4 n(n-1)/2`
/// and `2n^2 + n = 3n + 4 n(n-1)/2`.
pub fn theta_split_check(q: f64, n_terms: usize) -> bool {
    let c = partial_theta_coeffs(Complex64::new(q, 0.0), 2 * n_terms + 1);
    theta_split_matches(&c, q)
}

/// As [`theta_split_check`] for a given coefficient list.
pub fn theta_split_matches(c: &[Complex64], q: f64) -> bool {
    let Ok((f, g)) = split_even_odd(c, SplitMode::Plain) else {
        return false;
    };
    let q = Complex64::new(q, 0.0);
    let q4 = qpow(q, 4);
    let close = |a: Complex64, b: Complex64| (a - b).norm() <= 1e-12 * a.norm().max(b.norm()) + 1e-290;
    let even_ok = f.iter().enumerate().all(|(n, &x)| {
        let n = n as u64;
        2 * n * n - n == n + 4 * tri(n) && close(x, qpow(q4, tri(n)) * qpow(q, n))
    });
    let odd_ok = g.iter().enumerate().all(|(n, &x)| {
        let n = n as u64;
        2 * n * n + n == 3 * n + 4 * tri(n) && close(x, qpow(q4, tri(n)) * qpow(q, 3 * n))
    });
    even_ok && odd_ok
}

/// A named coefficient family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesFamily {
    PartialTheta,
    DisturbedExp,
    SokalPoly,
}

/// A q-series family with parameter `q` truncated at `N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QSeriesSpec {
    pub family: SeriesFamily,
    #[serde(with = "crate::io::cjson")]
    pub q: Complex64,
    #[serde(rename = "N")]
    pub n: usize,
    /// Substitute `z -> conj(mu) z`, `mu = exp(+-i pi/4)`; needs purely imaginary `q`.
    #[serde(default)]
    pub rotate: bool,
    #[serde(default = "default_tail_tol")]
    pub tail_tol: f64,
}

fn default_tail_tol() -> f64 {
    1e-10
}

impl QSeriesSpec {
    pub fn new(family: SeriesFamily, q: Complex64, n: usize) -> Self {
        QSeriesSpec { family, q, n, rotate: false, tail_tol: default_tail_tol() }
    }

    pub fn rotated(mut self) -> Self {
        self.rotate = true;
        self
    }

    fn raw(&self, q: Complex64, len: usize) -> Vec<Complex64> {
        match self.family {
            SeriesFamily::PartialTheta => partial_theta_coeffs(q, len),
            SeriesFamily::DisturbedExp => disturbed_exp_coeffs(q, len),
            SeriesFamily::SokalPoly => sokal_poly_coeffs(q, self.n),
        }
    }

    /// Coefficients through degree `len` (rotated if requested).
    pub fn coeffs(&self, len: usize) -> Result<Vec<Complex64>> {
        if !self.rotate {
            return Ok(self.raw(self.q, len));
        }
        if self.q.re != 0.0 || self.q.im == 0.0 {
            return Err(Error::InvalidSpec("rotation needs a purely imaginary nonzero q".into()));
        }
        let sign = if self.q.im > 0.0 { 1 } else { -1 };
        let f: Vec<f64> = self.raw(Complex64::new(self.q.im.abs(), 0.0), len).iter().map(|c| c.re).collect();
        rotate_half_i(&f, sign)
    }

    /// The truncated series with its trust radius.
    pub fn to_series(&self) -> Result<SeriesFunction> {
        if self.family == SeriesFamily::SokalPoly {
            return Ok(SeriesFunction::polynomial(self.coeffs(self.n)?, 2));
        }
        let c = self.coeffs(self.n + 10)?;
        truncate_series(&c, self.n, self.tail_tol, 2)
    }

    /// Ratio `alpha` such that the zeros of the rotated series are the
    /// alpha-points of `F(z) = (f(z^2)/f_0) / (z g(-z^2)/f_1)`, `p = -1`.
    pub fn rotated_alpha(&self) -> Result<Complex64> {
        let c = self.coeffs(1)?;
        if !self.rotate {
            return Err(Error::InvalidSpec("only defined for rotated series".into()));
        }
        Ok(-c[1] / c[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_consistent() {
        assert!((Q_STAR.powi(4) - Q_TILDE).abs() < 1e-9);
    }

    #[test]
    fn exact_powers_of_i() {
        let i = Complex64::new(0.0, 1.0);
        assert_eq!(qpow(i, 6), Complex64::new(-1.0, 0.0));
        assert_eq!(qpow(i, 0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn theta_at_zero() {
        let c = partial_theta_coeffs(Complex64::new(0.0, 0.0), 3);
        assert_eq!(c, vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]);
    }

    #[test]
    fn split_rejects_zero_constant() {
        let c = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        assert_eq!(split_even_odd(&c, SplitMode::Plain), Err(Error::ZeroInput("c_0")));
    }

    #[test]
    fn exponential_split() {
        let c = disturbed_exp_coeffs(Complex64::new(1.0, 0.0), 7);
        let (f, g) = split_even_odd(&c, SplitMode::Plain).unwrap();
        assert!((f[2].re - 1.0 / 24.0).abs() < 1e-16);
        assert!((g[1].re - 1.0 / 6.0).abs() < 1e-16);
    }
}
