//! Dense polynomial helpers. Coefficients are stored in ascending order.

use num_complex::Complex64;

pub fn mul_real(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Monic real polynomial `prod (x - r)`.
pub fn from_real_roots(roots: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut p = vec![1.0];
    for r in roots {
        p = mul_real(&p, &[-r, 1.0]);
    }
    p
}

/// Monic complex polynomial `prod (z - r)`.
pub fn from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut p = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        p = mul(&p, &[-r, Complex64::new(1.0, 0.0)]);
    }
    p
}

pub fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &x| acc * z + x)
}

/// Value and first derivative.
pub fn horner_d(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    let mut p = zero;
    let mut dp = zero;
    for &x in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + x;
    }
    (p, dp)
}

/// Drops trailing (highest-degree) exact zeros.
pub fn trim(mut c: Vec<Complex64>) -> Vec<Complex64> {
    while c.len() > 1 && c.last().map_or(false, |x| x.re == 0.0 && x.im == 0.0) {
        c.pop();
    }
    c
}
