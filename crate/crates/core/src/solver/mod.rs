//! Alpha-point computation.

pub mod roots;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{truncate_series, Evaluation, SeriesFunction, StructuredFunction, DEFAULT_POLE_TOL};
use crate::sector::{classify_sector, SectorIndex, DEFAULT_ANGLE_TOL};
use roots::{find_roots, RootCluster, RootOptions};

/// Either kind of function the solver accepts.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    Structured(StructuredFunction),
    Series(SeriesFunction),
}

impl FunctionSpec {
    /// Symmetry order used to label sectors.
    pub fn k(&self) -> u32 {
        match self {
            FunctionSpec::Structured(f) => f.k,
            FunctionSpec::Series(s) => s.k,
        }
    }

    pub fn as_structured(&self) -> Option<&StructuredFunction> {
        match self {
            FunctionSpec::Structured(f) => Some(f),
            FunctionSpec::Series(_) => None,
        }
    }

    /// Trust radius; infinite for functions known in closed form.
    pub fn trust_radius(&self) -> f64 {
        match self {
            FunctionSpec::Structured(_) => f64::INFINITY,
            FunctionSpec::Series(s) => s.trust_radius,
        }
    }
}

impl From<StructuredFunction> for FunctionSpec {
    fn from(f: StructuredFunction) -> Self {
        FunctionSpec::Structured(f)
    }
}

impl From<SeriesFunction> for FunctionSpec {
    fn from(s: SeriesFunction) -> Self {
        FunctionSpec::Series(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub roots: RootOptions,
    pub angle_tol: f64,
    pub pole_tol: f64,
    /// Tail tolerance used when an exponential factor forces a series expansion.
    pub tail_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            roots: RootOptions::default(),
            angle_tol: DEFAULT_ANGLE_TOL,
            pole_tol: DEFAULT_POLE_TOL,
            tail_tol: 1e-10,
        }
    }
}

/// A solution of `F(z) = alpha`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaPoint {
    pub value: Complex64,
    pub modulus: f64,
    pub sector: SectorIndex,
    pub boundary: bool,
    pub multiplicity: usize,
    pub residual: f64,
}

/// Sorts by modulus, breaking near-ties (relative `1e-9`) by principal argument.
pub fn sort_points(points: &mut [AlphaPoint]) {
    points.sort_by(|a, b| a.modulus.partial_cmp(&b.modulus).unwrap());
    let mut i = 0;
    while i < points.len() {
        let mut j = i + 1;
        while j < points.len() && points[j].modulus - points[j - 1].modulus <= 1e-9 * points[j].modulus {
            j += 1;
        }
        points[i..j].sort_by(|a, b| a.value.arg().partial_cmp(&b.value.arg()).unwrap());
        i = j;
    }
}

fn label(
    clusters: Vec<RootCluster>,
    radius: f64,
    k: u32,
    angle_tol: f64,
    residual: impl Fn(Complex64) -> Result<f64>,
) -> Result<Vec<AlphaPoint>> {
    let mut out = Vec::new();
    for c in clusters {
        let z = c.center;
        let m = z.norm();
        if m == 0.0 || m > radius {
            continue;
        }
        let l = classify_sector(z, k, angle_tol)?;
        out.push(AlphaPoint {
            value: z,
            modulus: m,
            sector: l.sector,
            boundary: l.boundary,
            multiplicity: c.multiplicity,
            residual: residual(z)?,
        });
    }
    sort_points(&mut out);
    Ok(out)
}

/// All solutions of `F(z) = alpha` with `0 < |z| <= radius`.
///
/// For series inputs `alpha = 0` is allowed and gives the zeros.
pub fn alpha_points(spec: &FunctionSpec, alpha: Complex64, radius: f64, opts: &SolveOptions) -> Result<Vec<AlphaPoint>> {
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
    }
    match spec {
        FunctionSpec::Structured(f) => structured_points(f, alpha, radius, opts),
        FunctionSpec::Series(s) => {
            if radius > s.trust_radius {
                return Err(Error::BeyondTrustRadius { radius, trust: s.trust_radius });
            }
            let mut c = s.coeffs.clone();
            if c.is_empty() {
                return Err(Error::ZeroInput("series"));
            }
            c[0] -= alpha;
            let clusters = find_roots(&c, &opts.roots)?;
            label(clusters, radius, s.k, opts.angle_tol, |z| Ok((s.evaluate(z) - alpha).norm()))
        }
    }
}

fn structured_points(f: &StructuredFunction, alpha: Complex64, radius: f64, opts: &SolveOptions) -> Result<Vec<AlphaPoint>> {
    f.validate()?;
    if alpha.re == 0.0 && alpha.im == 0.0 {
        return Err(Error::ZeroInput("alpha"));
    }
    let residual = |z: Complex64| -> Result<f64> {
        match f.evaluate_g(z, opts.pole_tol)? {
            Evaluation::Finite(v) => Ok((v - alpha).norm()),
            Evaluation::Pole => Err(Error::PoleAdjacent { re: z.re, im: z.im }),
        }
    };
    if f.is_rational() {
        let p = f.to_polynomial(alpha)?;
        let clusters = find_roots(&p, &opts.roots)?;
        return label(clusters, radius, f.k, opts.angle_tol, residual);
    }
    if f.exp_a0 != 0.0 {
        return Err(Error::InvalidSpec("alpha-points of a factor exp(A0 z^-k) accumulate at the origin".into()));
    }
    if !radius.is_finite() {
        return Err(Error::InvalidArgument("an exponential factor needs a finite radius".into()));
    }
    let mut n = 64usize;
    loop {
        let coeffs = f.alpha_series_coeffs(alpha, n + 10)?;
        let s = truncate_series(&coeffs, n, opts.tail_tol, f.k)?;
        if s.trust_radius >= radius {
            let clusters = find_roots(&s.coeffs, &opts.roots)?;
            return label(clusters, radius, f.k, opts.angle_tol, residual);
        }
        if n >= 400 {
            return Err(Error::BeyondTrustRadius { radius, trust: s.trust_radius });
        }
        n *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig1_points() {
        let f = StructuredFunction::rational(-1, 3, vec![0.1, 1.0, 4.0], vec![1.0, 5.0]).unwrap();
        let alpha = Complex64::new(-1.0, -1.0);
        let pts = alpha_points(&f.clone().into(), alpha, f64::INFINITY, &SolveOptions::default()).unwrap();
        assert_eq!(pts.len(), 9);
        for w in pts.windows(2) {
            assert!(w[0].modulus < w[1].modulus);
        }
        for p in &pts {
            assert_eq!(p.multiplicity, 1);
            assert!(p.residual <= 1e-8 * (1.0 + alpha.norm()));
        }
    }

    #[test]
    fn exponential_factor_uses_series() {
        let mut f = StructuredFunction::rational(1, 2, vec![1.0], vec![]).unwrap();
        f.exp_a = 0.5;
        let alpha = Complex64::new(0.3, 0.8);
        let pts = alpha_points(&f.clone().into(), alpha, 3.0, &SolveOptions::default()).unwrap();
        assert!(!pts.is_empty());
        for p in &pts {
            assert!(p.residual <= 1e-8 * (1.0 + alpha.norm()), "{p:?}");
        }
    }

    #[test]
    fn series_radius_guard() {
        let s = SeriesFunction { coeffs: vec![Complex64::new(1.0, 0.0); 5], trust_radius: 0.5, k: 2 };
        let r = alpha_points(&s.into(), Complex64::new(0.0, 0.0), 1.0, &SolveOptions::default());
        assert!(matches!(r, Err(Error::BeyondTrustRadius { .. })));
    }
}
