//! Adaptive composite Gauss-Legendre quadrature for complex integrands.

use num_complex::Complex64;
use std::sync::OnceLock;

const ORDER: usize = 10;

fn nodes() -> &'static (Vec<f64>, Vec<f64>) {
    static CELL: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    CELL.get_or_init(|| gauss_legendre(ORDER))
}

/// Nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * t * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
            let dt = p1 / dp;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    (x, w)
}

fn rule<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> Complex64 {
    let (x, w) = nodes();
    let h = 0.5 * (b - a);
    let m = 0.5 * (a + b);
    let mut s = Complex64::new(0.0, 0.0);
    for (xi, wi) in x.iter().zip(w) {
        s += f(m + h * xi) * *wi;
    }
    s * h
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: Complex64,
    pub error: f64,
    /// False when the subdivision limit was hit before the tolerance was met.
    pub converged: bool,
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`, comparing each
/// panel against its two halves.
pub fn integrate<F: FnMut(f64) -> Complex64>(mut f: F, a: f64, b: f64, tol: f64) -> Quadrature {
    let whole = rule(&mut f, a, b);
    let mut out = Quadrature { value: Complex64::new(0.0, 0.0), error: 0.0, converged: true };
    recurse(&mut f, a, b, whole, tol, 0, &mut out);
    out
}

fn recurse<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    a: f64,
    b: f64,
    whole: Complex64,
    tol: f64,
    depth: usize,
    out: &mut Quadrature,
) {
    let m = 0.5 * (a + b);
    let left = rule(f, a, m);
    let right = rule(f, m, b);
    let split = left + right;
    let err = (split - whole).norm();
    let finite = split.re.is_finite() && split.im.is_finite();
    if finite && (err <= tol || depth >= 40) {
        if err > tol {
            out.converged = false;
        }
        out.value += split;
        out.error += err;
        return;
    }
    if !finite && depth >= 40 {
        out.converged = false;
        out.value += Complex64::new(f64::NAN, f64::NAN);
        return;
    }
    recurse(f, a, m, left, 0.5 * tol, depth + 1, out);
    recurse(f, m, b, right, 0.5 * tol, depth + 1, out);
}
