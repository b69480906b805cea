//! Independent alpha-point counts from the argument principle.
//!
//! For a structured function the integrand is the logarithmic derivative of
//! `Num - (alpha/C) Den`, which has the alpha-points as its zeros and no
//! poles away from the origin; the poles of `G` (on the rays through the
//! k-th roots of `b` and `1/d`) therefore never sit on the contour as
//! singularities.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::poly;
use crate::quadrature::integrate;
use crate::solver::FunctionSpec;

pub const DEFAULT_QUAD_TOL: f64 = 1e-8;

/// `{ r_in < |z| < r_out, s_from pi/k < Arg z < s_to pi/k }`, `s_to` exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnularSector {
    pub r_in: f64,
    pub r_out: f64,
    pub s_from: i64,
    pub s_to: i64,
    pub k: u32,
}

impl AnnularSector {
    pub fn full(r_in: f64, r_out: f64, k: u32) -> Self {
        AnnularSector { r_in, r_out, s_from: 0, s_to: 2 * k as i64, k }
    }

    /// The part of the annulus inside one sector `Q_s`.
    pub fn slice(r_in: f64, r_out: f64, s: i64, k: u32) -> Self {
        AnnularSector { r_in, r_out, s_from: s, s_to: s + 1, k }
    }

    pub fn is_full(&self) -> bool {
        self.s_to - self.s_from == 2 * self.k as i64
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_in > 0.0 && self.r_in < self.r_out && self.r_out.is_finite()) {
            return Err(Error::InvalidArgument(format!("need 0 < r_in < r_out, got {} and {}", self.r_in, self.r_out)));
        }
        let span = self.s_to - self.s_from;
        if self.k == 0 || span < 1 || span > 2 * self.k as i64 {
            return Err(Error::InvalidArgument(format!("sector span {}..{} invalid for k = {}", self.s_from, self.s_to, self.k)));
        }
        Ok(())
    }

    fn describe(&self) -> String {
        format!("{} < |z| < {}, sectors {}..{} (k = {})", self.r_in, self.r_out, self.s_from, self.s_to, self.k)
    }
}

/// A winding count with its raw integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindingCount {
    pub count: u32,
    /// `(1/2 pi i) * integral`, before rounding.
    pub raw: Complex64,
    /// Poles of the function strictly inside the region (already accounted for).
    pub poles_inside: usize,
}

fn log_derivative(spec: &FunctionSpec, alpha: Complex64, z: Complex64) -> Complex64 {
    match spec {
        FunctionSpec::Structured(f) => {
            let (v, d) = f.pole_cleared(z, alpha);
            d / v
        }
        FunctionSpec::Series(s) => {
            let (v, d) = poly::horner_d(&s.coeffs, z);
            d / (v - alpha)
        }
    }
}

const PANELS: usize = 16;

fn piece<F: FnMut(f64) -> Complex64>(mut f: F, a: f64, b: f64, tol: f64) -> (Complex64, bool) {
    let h = (b - a) / PANELS as f64;
    let mut total = Complex64::new(0.0, 0.0);
    let mut ok = true;
    for j in 0..PANELS {
        let q = integrate(&mut f, a + j as f64 * h, a + (j + 1) as f64 * h, tol / PANELS as f64);
        total += q.value;
        ok &= q.converged;
    }
    (total, ok)
}

/// Number of solutions of `F(z) = alpha` inside `region`.
pub fn count_in_contour(spec: &FunctionSpec, alpha: Complex64, region: &AnnularSector, quad_tol: f64) -> Result<WindingCount> {
    region.validate()?;
    let k = region.k as f64;
    let (t0, t1) = (region.s_from as f64 * PI / k, region.s_to as f64 * PI / k);
    let (ri, ro) = (region.r_in, region.r_out);
    let tol = quad_tol * 2.0 * PI;
    let i = Complex64::new(0.0, 1.0);
    let mut total = Complex64::new(0.0, 0.0);
    let mut ok = true;

    let arc = |r: f64| {
        move |t: f64| {
            let z = Complex64::from_polar(r, t);
            log_derivative(spec, alpha, z) * i * z
        }
    };
    let (v, c) = piece(arc(ro), t0, t1, tol);
    total += v;
    ok &= c;
    let (v, c) = piece(arc(ri), t0, t1, tol);
    total -= v;
    ok &= c;
    if !region.is_full() {
        let radial = |theta: f64| {
            move |s: f64| {
                let z = Complex64::from_polar(s.exp(), theta);
                log_derivative(spec, alpha, z) * z
            }
        };
        let (v, c) = piece(radial(t0), ri.ln(), ro.ln(), tol);
        total += v;
        ok &= c;
        let (v, c) = piece(radial(t1), ri.ln(), ro.ln(), tol);
        total -= v;
        ok &= c;
    }
    let raw = total / (2.0 * PI * i);
    let n = raw.re.round();
    if !ok || !(raw.re.is_finite() && raw.im.is_finite()) || (raw.re - n).abs() > 0.25 || raw.im.abs() > 0.25 || n < 0.0 {
        return Err(Error::Inconclusive { region: region.describe(), value: raw.re });
    }
    let poles_inside = match spec {
        FunctionSpec::Structured(f) => f
            .poles()
            .iter()
            .filter(|z| {
                let m = z.norm();
                let a = (z.arg() - t0).rem_euclid(2.0 * PI);
                m > ri && m < ro && (region.is_full() || (a > 1e-12 && a < t1 - t0 - 1e-12))
            })
            .count(),
        FunctionSpec::Series(_) => 0,
    };
    Ok(WindingCount { count: n as u32, raw, poles_inside })
}

/// Per-sector counts over an annulus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Census {
    pub counts: Vec<u32>,
    /// Radii actually used after nudging off alpha-point moduli.
    pub r_in: f64,
    pub r_out: f64,
}

impl Census {
    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }
}

/// Counts in each of the 2k sector slices of `r_in < |z| < r_out`.
///
/// If a slice is inconclusive (a point too near the contour) both radii are
/// moved slightly and the whole census is repeated.
pub fn sector_census(spec: &FunctionSpec, alpha: Complex64, r_in: f64, r_out: f64, k: u32, quad_tol: f64) -> Result<Census> {
    const NUDGES: [f64; 7] = [0.0, 1e-3, -1e-3, 3e-3, -3e-3, 1e-2, -1e-2];
    let mut last = None;
    for (j, &a) in NUDGES.iter().enumerate() {
        let b = NUDGES[(j * 3) % NUDGES.len()];
        let (ri, ro) = (r_in * (1.0 + a), r_out * (1.0 + b));
        let attempt: Result<Vec<u32>> = (0..2 * k as i64)
            .map(|s| count_in_contour(spec, alpha, &AnnularSector::slice(ri, ro, s, k), quad_tol).map(|w| w.count))
            .collect();
        match attempt {
            Ok(counts) => return Ok(Census { counts, r_in: ri, r_out: ro }),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::StructuredFunction;

    #[test]
    fn fig1_full_annulus() {
        let f: FunctionSpec = StructuredFunction::rational(-1, 3, vec![0.1, 1.0, 4.0], vec![1.0, 5.0]).unwrap().into();
        let alpha = Complex64::new(-1.0, -1.0);
        let w = count_in_contour(&f, alpha, &AnnularSector::full(0.01, 10.0, 3), DEFAULT_QUAD_TOL).unwrap();
        assert_eq!(w.count, 9);
        assert_eq!(w.poles_inside, 6);
    }

    #[test]
    fn rejects_bad_region() {
        let f: FunctionSpec = StructuredFunction::rational(1, 2, vec![1.0], vec![]).unwrap().into();
        let r = AnnularSector { r_in: 2.0, r_out: 1.0, s_from: 0, s_to: 1, k: 2 };
        assert!(count_in_contour(&f, Complex64::new(1.0, 0.0), &r, 1e-8).is_err());
    }
}
