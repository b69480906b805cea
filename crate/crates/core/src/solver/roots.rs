//! Simultaneous polynomial root finding (Aberth-Ehrlich) with Newton polish
//! and cluster detection.
//!
//! Evaluation is done in a log-scaled form so that coefficient lists with a
//! very wide dynamic range (truncated q-series) neither overflow nor lose
//! the small terms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    /// Relative step size at which an iterate counts as converged.
    pub tol: f64,
    pub max_iters: usize,
    /// Candidate clusters form at distance below `sqrt(cluster_tol) (1 + |c|)`.
    pub cluster_tol: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { tol: 1e-14, max_iters: 200, cluster_tol: 1e-7 }
    }
}

/// A root of multiplicity `multiplicity` reported as the mean of its members.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootCluster {
    pub center: Complex64,
    pub multiplicity: usize,
    pub members: Vec<Complex64>,
    /// Largest member distance from the center.
    pub radius: f64,
}

/// Coefficients stored as log-modulus and unit phase.
pub(crate) struct ScaledPoly {
    logm: Vec<f64>,
    unit: Vec<Complex64>,
}

/// Scaled derivative sums: `z^j P^(j)(z) = exp(L) * s[j]` for a common `L`.
pub(crate) struct ScaledEval {
    pub s: Vec<Complex64>,
    /// Sum of `|c_n| |z|^n`, scaled by the same factor.
    pub abs: f64,
}

impl ScaledEval {
    pub fn backward_error(&self) -> f64 {
        if self.abs == 0.0 {
            0.0
        } else {
            self.s[0].norm() / self.abs
        }
    }
}

impl ScaledPoly {
    pub fn new(c: &[Complex64]) -> Self {
        let logm = c.iter().map(|x| x.norm().ln()).collect();
        let unit = c
            .iter()
            .map(|x| {
                let m = x.norm();
                if m == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    x / m
                }
            })
            .collect();
        ScaledPoly { logm, unit }
    }

    pub fn degree(&self) -> usize {
        self.logm.len() - 1
    }

    pub fn eval(&self, z: Complex64, order: usize) -> ScaledEval {
        let r = z.norm();
        let mut s = vec![Complex64::new(0.0, 0.0); order + 1];
        if r == 0.0 {
            // Only the constant term and the first `order` derivatives at 0 survive,
            // but z^j P^(j) vanishes for j >= 1.
            let m = self.logm[0];
            s[0] = self.unit[0];
            return ScaledEval { s, abs: if m.is_finite() { 1.0 } else { 0.0 } };
        }
        let lz = r.ln();
        let zeta = z / r;
        let mut l = f64::NEG_INFINITY;
        for (n, &m) in self.logm.iter().enumerate() {
            let t = m + n as f64 * lz;
            if t > l {
                l = t;
            }
        }
        let mut abs = 0.0;
        let mut ph = Complex64::new(1.0, 0.0);
        for (n, (&m, &u)) in self.logm.iter().zip(&self.unit).enumerate() {
            if n > 0 {
                ph *= zeta;
            }
            let e = m + n as f64 * lz - l;
            if e > -745.0 {
                let w = e.exp();
                abs += w;
                let term = u * ph * w;
                let mut ff = 1.0;
                for (j, sj) in s.iter_mut().enumerate() {
                    if j > n {
                        break;
                    }
                    *sj += term * ff;
                    ff *= (n - j) as f64;
                }
            }
        }
        ScaledEval { s, abs }
    }

    /// Newton correction `P(z) / P'(z)` and backward error.
    fn newton(&self, z: Complex64) -> (Complex64, f64) {
        let e = self.eval(z, 1);
        let be = e.backward_error();
        if e.s[1].norm() == 0.0 {
            return (Complex64::new(0.0, 0.0), be);
        }
        (z * e.s[0] / e.s[1], be)
    }
}

/// Upper convex hull of `(n, log|c_n|)`, used for initial radii.
fn newton_polygon(logm: &[f64]) -> Vec<usize> {
    let pts: Vec<usize> = (0..logm.len()).filter(|&n| logm[n].is_finite()).collect();
    let mut hull: Vec<usize> = Vec::new();
    for &n in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b as f64 - a as f64) * (logm[n] - logm[a]) - (logm[b] - logm[a]) * (n as f64 - a as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(n);
    }
    hull
}

fn initial_guesses(sp: &ScaledPoly) -> Vec<Complex64> {
    const GOLDEN: f64 = 2.399_963_229_728_653;
    let hull = newton_polygon(&sp.logm);
    let mut out = Vec::with_capacity(sp.degree());
    for (e, w) in hull.windows(2).enumerate() {
        let (i, j) = (w[0], w[1]);
        let cnt = j - i;
        let radius = ((sp.logm[i] - sp.logm[j]) / cnt as f64).exp();
        let offset = 0.5 + GOLDEN * e as f64;
        for t in 0..cnt {
            let ang = offset + 2.0 * std::f64::consts::PI * t as f64 / cnt as f64;
            out.push(Complex64::from_polar(radius, ang));
        }
    }
    out
}

/// All roots of `sum c_n z^n`, grouped into clusters.
pub fn find_roots(coeffs: &[Complex64], opts: &RootOptions) -> Result<Vec<RootCluster>> {
    if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(Error::InvalidArgument("coefficients must be finite".into()));
    }
    let is_zero = |c: &Complex64| c.re == 0.0 && c.im == 0.0;
    let mut hi = coeffs.len();
    while hi > 0 && is_zero(&coeffs[hi - 1]) {
        hi -= 1;
    }
    if hi == 0 {
        return Err(Error::ZeroInput("polynomial"));
    }
    let lo = coeffs[..hi].iter().take_while(|c| is_zero(c)).count();
    let c = &coeffs[lo..hi];
    let deg = c.len() - 1;
    if deg + lo > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(deg + lo));
    }
    let mut clusters = Vec::new();
    if lo > 0 {
        let zero = Complex64::new(0.0, 0.0);
        clusters.push(RootCluster { center: zero, multiplicity: lo, members: vec![zero; lo], radius: 0.0 });
    }
    if deg == 0 {
        return Ok(clusters);
    }
    if deg == 1 {
        let r = -c[0] / c[1];
        clusters.push(RootCluster { center: r, multiplicity: 1, members: vec![r], radius: 0.0 });
        return Ok(clusters);
    }

    let sp = ScaledPoly::new(c);
    let mut z = initial_guesses(&sp);
    let noise = 16.0 * deg as f64 * f64::EPSILON;
    let mut done = vec![false; deg];
    let mut converged = false;
    for _ in 0..opts.max_iters {
        for i in 0..deg {
            if done[i] {
                continue;
            }
            let (nw, be) = sp.newton(z[i]);
            if be <= noise {
                done[i] = true;
                continue;
            }
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..deg {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        sum += 1.0 / d;
                    }
                }
            }
            let w = nw / (1.0 - nw * sum);
            if !(w.re.is_finite() && w.im.is_finite()) {
                let bump = Complex64::new(1e-8, 1e-8) * (1.0 + z[i].norm());
                z[i] += bump;
                continue;
            }
            z[i] -= w;
            if w.norm() <= opts.tol * z[i].norm() {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            converged = true;
            break;
        }
    }
    if !converged {
        let worst = z.iter().map(|&r| sp.eval(r, 0).backward_error()).fold(0.0, f64::max);
        if worst > 1e3 * noise {
            return Err(Error::NotConverged { iterations: opts.max_iters, worst_residual: worst });
        }
    }

    let groups = group_clusters(&sp, &z, opts.cluster_tol, noise);
    for g in groups {
        if g.len() == 1 {
            let r = polish(&sp, z[g[0]]);
            clusters.push(RootCluster { center: r, multiplicity: 1, members: vec![r], radius: 0.0 });
        } else {
            let members: Vec<Complex64> = g.iter().map(|&i| z[i]).collect();
            let center = members.iter().sum::<Complex64>() / members.len() as f64;
            if g.len() >= 3 {
                return Err(Error::UnresolvedCluster { size: g.len(), re: center.re, im: center.im });
            }
            let radius = members.iter().map(|m| (m - center).norm()).fold(0.0, f64::max);
            clusters.push(RootCluster { center, multiplicity: g.len(), members, radius });
        }
    }
    clusters.sort_by(|a, b| {
        a.center
            .norm()
            .partial_cmp(&b.center.norm())
            .unwrap()
            .then(a.center.arg().partial_cmp(&b.center.arg()).unwrap())
    });
    Ok(clusters)
}

fn polish(sp: &ScaledPoly, mut z: Complex64) -> Complex64 {
    let mut be = sp.eval(z, 0).backward_error();
    for _ in 0..4 {
        let (nw, _) = sp.newton(z);
        let cand = z - nw;
        let cbe = sp.eval(cand, 0).backward_error();
        if cbe < be || (cbe == be && nw.norm() < 1e-15 * z.norm()) {
            z = cand;
            be = cbe;
        } else {
            break;
        }
        if nw.norm() <= 1e-16 * z.norm() {
            break;
        }
    }
    z
}

/// True when the members are indistinguishable from a single root of
/// multiplicity `m` at working precision.
fn confirm_multiple(sp: &ScaledPoly, members: &[Complex64], noise: f64) -> bool {
    let m = members.len();
    let center = members.iter().sum::<Complex64>() / m as f64;
    let spread = members.iter().map(|x| (x - center).norm()).fold(0.0, f64::max);
    let e = sp.eval(center, m);
    let r = center.norm();
    // |P^(m)(c)| relative to the rounding bound of P(c); the common scale cancels.
    let dm = if r > 0.0 { e.s[m].norm() / r.powi(m as i32) } else { e.s[m].norm() };
    let err = noise * e.abs;
    if dm == 0.0 {
        return true;
    }
    let fact: f64 = (1..=m).map(|x| x as f64).product();
    let amb = (fact * err / dm).powf(1.0 / m as f64);
    spread <= 10.0 * amb
}

fn group_clusters(sp: &ScaledPoly, z: &[Complex64], cluster_tol: f64, noise: f64) -> Vec<Vec<usize>> {
    let n = z.len();
    let thr = cluster_tol.sqrt();
    let mut cand: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = (z[i] - z[j]).norm();
            let c = 0.5 * (z[i] + z[j]).norm();
            if d < thr * (1.0 + c) {
                cand.push((d, i, j));
            }
        }
    }
    cand.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut group: Vec<usize> = (0..n).collect();
    let mut members: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    for (_, i, j) in cand {
        let (gi, gj) = (group[i], group[j]);
        if gi == gj {
            continue;
        }
        let merged: Vec<usize> = members[gi].iter().chain(&members[gj]).copied().collect();
        let pts: Vec<Complex64> = merged.iter().map(|&x| z[x]).collect();
        if confirm_multiple(sp, &pts, noise) {
            for &x in &members[gj] {
                group[x] = gi;
            }
            members[gi] = merged;
            members[gj].clear();
        }
    }
    members.into_iter().filter(|g| !g.is_empty()).collect()
}
