//! Function models: the structured sector-symmetric meromorphic function
//! and truncated power series with a certified trust radius.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;
use crate::sector::gcd;
use crate::solver::roots::{find_roots, RootOptions};

/// Default relative distance to a pole below which evaluation reports a pole.
pub const DEFAULT_POLE_TOL: f64 = 1e-9;

/// How the factor lists are normalized.
///
/// `Monic` writes the rational part as `prod (z^k + a) / prod (z^k - b)`
/// (and `prod (z^-k + c) / prod (z^-k - d)`), `Unit` as
/// `prod (1 + z^k/a) / prod (1 - z^k/b)` (and likewise for `c`, `d`).
/// The two differ by the real constant [`StructuredFunction::scale`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    #[default]
    Monic,
    Unit,
}

/// `G(z) = C z^p exp(A z^k + A0 z^-k)
///        prod(1 + z^k/a) / prod(1 - z^k/b)
///        prod(1 + z^-k/c) / prod(1 - z^-k/d)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructuredFunction {
    pub p: i64,
    pub k: u32,
    #[serde(rename = "A", default)]
    pub exp_a: f64,
    #[serde(rename = "A0", default)]
    pub exp_a0: f64,
    #[serde(default)]
    pub a: Vec<f64>,
    #[serde(default)]
    pub b: Vec<f64>,
    #[serde(default)]
    pub c: Vec<f64>,
    #[serde(default)]
    pub d: Vec<f64>,
    #[serde(default)]
    pub normalization: Normalization,
}

/// Outcome of evaluating a meromorphic function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Evaluation {
    Finite(Complex64),
    Pole,
}

impl Evaluation {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            Evaluation::Finite(v) => Some(v),
            Evaluation::Pole => None,
        }
    }
}

fn check_list(name: &str, v: &[f64]) -> Result<()> {
    for (i, &x) in v.iter().enumerate() {
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::InvalidSpec(format!("{name}[{i}] must be a positive finite number, got {x}")));
        }
    }
    Ok(())
}

impl StructuredFunction {
    /// Rational function with `A = A0 = 0` and no Laurent factors.
    pub fn rational(p: i64, k: u32, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        let f = StructuredFunction {
            p,
            k,
            exp_a: 0.0,
            exp_a0: 0.0,
            a,
            b,
            c: Vec::new(),
            d: Vec::new(),
            normalization: Normalization::Monic,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn with_normalization(mut self, n: Normalization) -> Self {
        self.normalization = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidSpec(format!("k must be at least 2, got {}", self.k)));
        }
        if self.p == 0 || gcd(self.p, self.k as i64) != 1 {
            return Err(Error::NotCoprime { p: self.p, k: self.k as i64 });
        }
        for (name, v) in [("A", self.exp_a), ("A0", self.exp_a0)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidSpec(format!("{name} must be a nonnegative finite number, got {v}")));
            }
        }
        check_list("a", &self.a)?;
        check_list("b", &self.b)?;
        check_list("c", &self.c)?;
        check_list("d", &self.d)?;
        if self.exp_a == 0.0
            && self.exp_a0 == 0.0
            && self.a.is_empty()
            && self.b.is_empty()
            && self.c.is_empty()
            && self.d.is_empty()
        {
            return Err(Error::InvalidSpec("function is a pure power of z".into()));
        }
        Ok(())
    }

    /// True for the form without `A0`, `c` and `d`.
    pub fn is_f_form(&self) -> bool {
        self.exp_a0 == 0.0 && self.c.is_empty() && self.d.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.exp_a == 0.0 && self.exp_a0 == 0.0
    }

    /// The constant `C` multiplying the unit-normalized product.
    pub fn scale(&self) -> f64 {
        match self.normalization {
            Normalization::Unit => 1.0,
            Normalization::Monic => {
                let num: f64 = self.a.iter().chain(&self.c).product();
                let den: f64 = self.b.iter().chain(&self.d).map(|x| -x).product();
                num / den
            }
        }
    }

    /// `alpha / C`: the value the unit-normalized product has to reach.
    pub fn effective_alpha(&self, alpha: Complex64) -> Complex64 {
        alpha / self.scale()
    }

    fn near_pole(&self, u: Complex64, pole_tol: f64) -> bool {
        self.b.iter().any(|&b| (u - b).norm() <= pole_tol * b)
            || self.d.iter().any(|&d| (u - 1.0 / d).norm() <= pole_tol / d)
    }

    /// Everything except `C z^p`, as a function of `u = z^k`.
    fn u_part(&self, u: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let mut v = (self.exp_a * u + self.exp_a0 / u).exp();
        if self.exp_a == 0.0 && self.exp_a0 == 0.0 {
            v = one;
        }
        for &a in &self.a {
            v *= one + u / a;
        }
        for &c in &self.c {
            v *= one + 1.0 / (u * c);
        }
        for &b in &self.b {
            v /= one - u / b;
        }
        for &d in &self.d {
            v /= one - 1.0 / (u * d);
        }
        v
    }

    /// Evaluates `G(z)`; points within `pole_tol` (relative) of a pole give [`Evaluation::Pole`].
    pub fn evaluate_g(&self, z: Complex64, pole_tol: f64) -> Result<Evaluation> {
        if z.re == 0.0 && z.im == 0.0 {
            return Err(Error::ZeroInput("z"));
        }
        let u = z.powi(self.k as i32);
        if self.near_pole(u, pole_tol) {
            return Ok(Evaluation::Pole);
        }
        Ok(Evaluation::Finite(self.scale() * z.powi(self.p as i32) * self.u_part(u)))
    }

    /// Evaluates `R(w)` with `G(z) = R(z^k)` on the closed upper half-plane,
    /// using the branch `w^(1/k) = |w|^(1/k) exp(i Arg(w)/k)`, `Arg w` in `[0, pi]`.
    pub fn evaluate_r(&self, w: Complex64, pole_tol: f64) -> Result<Evaluation> {
        if w.im < 0.0 {
            return Err(Error::OutsideUpperHalfPlane(w.im));
        }
        if w.re == 0.0 && w.im == 0.0 {
            return Err(Error::ZeroInput("w"));
        }
        if self.near_pole(w, pole_tol) {
            return Ok(Evaluation::Pole);
        }
        let arg = w.im.abs().atan2(w.re);
        let root = Complex64::from_polar(w.norm().powf(1.0 / self.k as f64), arg / self.k as f64);
        Ok(Evaluation::Finite(self.scale() * root.powi(self.p as i32) * self.u_part(w)))
    }

    /// Pieces of `G(z) = kappa z^e N(z^k) e^{A z^k} / D(z^k)` with monic real `N`, `D`.
    fn monic_parts(&self) -> (f64, i64, Vec<f64>, Vec<f64>) {
        let n = poly::from_real_roots(self.a.iter().map(|a| -a).chain(self.c.iter().map(|c| -1.0 / c)));
        let d = poly::from_real_roots(self.b.iter().copied().chain(self.d.iter().map(|d| 1.0 / d)));
        let prod_a: f64 = self.a.iter().product();
        let prod_mb: f64 = self.b.iter().map(|b| -b).product();
        let prod_c: f64 = self.c.iter().product();
        let prod_md: f64 = self.d.iter().map(|d| -d).product();
        let kappa = self.scale() * prod_mb * prod_md / (prod_a * prod_c);
        let e = self.p + self.k as i64 * (self.d.len() as i64 - self.c.len() as i64);
        (kappa, e, n, d)
    }

    /// Polynomial whose roots are exactly the alpha-points, ascending coefficients.
    ///
    /// With the default normalization and no Laurent factors this is
    /// `z^max(p,0) prod(z^k + a) - alpha z^max(-p,0) prod(z^k - b)`.
    pub fn to_polynomial(&self, alpha: Complex64) -> Result<Vec<Complex64>> {
        if !self.is_rational() {
            return Err(Error::NotRational);
        }
        if alpha.re == 0.0 && alpha.im == 0.0 {
            return Err(Error::ZeroInput("alpha"));
        }
        let (kappa, e, n, d) = self.monic_parts();
        let k = self.k as usize;
        let (ep, em) = (e.max(0) as usize, (-e).max(0) as usize);
        let deg = (ep + k * (n.len() - 1)).max(em + k * (d.len() - 1));
        let mut c = vec![Complex64::new(0.0, 0.0); deg + 1];
        for (i, &x) in n.iter().enumerate() {
            c[ep + k * i] += x;
        }
        let beta = alpha / kappa;
        for (i, &x) in d.iter().enumerate() {
            c[em + k * i] -= beta * x;
        }
        if ep + k * (n.len() - 1) == em + k * (d.len() - 1) && (Complex64::new(1.0, 0.0) - beta).norm() <= 1e-14 {
            c[deg] = Complex64::new(0.0, 0.0);
        }
        let c = poly::trim(c);
        if c.len() > crate::solver::roots::MAX_DEGREE + 1 {
            return Err(Error::DegreeTooLarge(c.len() - 1));
        }
        Ok(c)
    }

    /// Taylor coefficients (through `z^degree`) of the entire function
    /// `z^e+ N(z^k) e^{A z^k} - (alpha/kappa) z^e- D(z^k)` whose zeros are
    /// the alpha-points when `A0 = 0`.
    pub fn alpha_series_coeffs(&self, alpha: Complex64, degree: usize) -> Result<Vec<Complex64>> {
        if self.exp_a0 != 0.0 {
            return Err(Error::InvalidSpec("A0 > 0 has an essential singularity at the origin".into()));
        }
        let (kappa, e, n, d) = self.monic_parts();
        let k = self.k as usize;
        let (ep, em) = (e.max(0) as usize, (-e).max(0) as usize);
        let mut c = vec![Complex64::new(0.0, 0.0); degree + 1];
        let terms = degree / k + 1;
        let mut ex = vec![1.0; terms];
        for j in 1..terms {
            ex[j] = ex[j - 1] * self.exp_a / j as f64;
        }
        let ne = poly::mul_real(&n, &ex);
        for (i, &x) in ne.iter().enumerate() {
            let deg = ep + k * i;
            if deg <= degree {
                c[deg] += x;
            }
        }
        let beta = alpha / kappa;
        for (i, &x) in d.iter().enumerate() {
            let deg = em + k * i;
            if deg <= degree {
                c[deg] -= beta * x;
            }
        }
        Ok(c)
    }

    /// Values and derivatives of `Num(z) - (alpha/C) Den(z)` where
    /// `G = C Num / Den` and `Den = prod(1 - z^k/b) prod(1 - z^-k/d)`.
    /// This function has the alpha-points as zeros and no poles off the origin.
    pub fn pole_cleared(&self, z: Complex64, alpha: Complex64) -> (Complex64, Complex64) {
        let k = self.k as i32;
        let u = Dual::var(z).powi(k);
        let one = Dual::constant(Complex64::new(1.0, 0.0));
        let mut num = Dual::var(z).powi(self.p as i32);
        if self.exp_a != 0.0 || self.exp_a0 != 0.0 {
            num = num * (u.scale(self.exp_a) + u.recip().scale(self.exp_a0)).exp();
        }
        for &a in &self.a {
            num = num * (one + u.scale(1.0 / a));
        }
        for &c in &self.c {
            num = num * (one + u.recip().scale(1.0 / c));
        }
        let mut den = one;
        for &b in &self.b {
            den = den * (one - u.scale(1.0 / b));
        }
        for &d in &self.d {
            den = den * (one - u.recip().scale(1.0 / d));
        }
        let beta = self.effective_alpha(alpha);
        (num.v - beta * den.v, num.d - beta * den.d)
    }

    /// Points where `G` has a pole, i.e. `z^k = b` or `z^k = 1/d`.
    pub fn poles(&self) -> Vec<Complex64> {
        let k = self.k;
        let mut out = Vec::new();
        for &w in self.b.iter().chain(self.d.iter().map(|d| 1.0 / d).collect::<Vec<_>>().iter()) {
            let r = w.powf(1.0 / k as f64);
            for m in 0..k {
                out.push(r * crate::sector::unit_rotation(2 * m as i64, k));
            }
        }
        out
    }

    /// Zeros of the rational factors, i.e. `z^k = -a` or `z^k = -1/c`.
    pub fn zeros(&self) -> Vec<Complex64> {
        let k = self.k;
        let mut out = Vec::new();
        for &w in self.a.iter().chain(self.c.iter().map(|c| 1.0 / c).collect::<Vec<_>>().iter()) {
            let r = w.powf(1.0 / k as f64);
            for m in 0..k {
                out.push(r * crate::sector::unit_rotation(2 * m as i64 + 1, k));
            }
        }
        out
    }
}

/// Forward-mode dual number for value and derivative.
#[derive(Debug, Clone, Copy)]
struct Dual {
    v: Complex64,
    d: Complex64,
}

impl Dual {
    fn var(z: Complex64) -> Self {
        Dual { v: z, d: Complex64::new(1.0, 0.0) }
    }
    fn constant(v: Complex64) -> Self {
        Dual { v, d: Complex64::new(0.0, 0.0) }
    }
    fn scale(self, s: f64) -> Self {
        Dual { v: self.v * s, d: self.d * s }
    }
    fn recip(self) -> Self {
        let r = 1.0 / self.v;
        Dual { v: r, d: -self.d * r * r }
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        Dual { v: e, d: self.d * e }
    }
    fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Dual::constant(Complex64::new(1.0, 0.0));
        }
        let pm1 = self.v.powi(n - 1);
        Dual { v: pm1 * self.v, d: self.d * pm1 * n as f64 }
    }
}

impl std::ops::Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual { v: self.v * o.v, d: self.d * o.v + self.v * o.d }
    }
}

impl std::ops::Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual { v: self.v + o.v, d: self.d + o.d }
    }
}

impl std::ops::Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual { v: self.v - o.v, d: self.d - o.d }
    }
}

/// A truncated power series `sum c_n z^n` trusted on `|z| < trust_radius`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesFunction {
    #[serde(with = "crate::io::cjson::many")]
    pub coeffs: Vec<Complex64>,
    /// `f64::INFINITY` for an exact polynomial; 0 when nothing is certified.
    #[serde(with = "radius_serde")]
    pub trust_radius: f64,
    /// Number of sector pairs used to label points.
    #[serde(default = "default_series_k")]
    pub k: u32,
}

fn default_series_k() -> u32 {
    2
}

mod radius_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &f64, s: S) -> Result<S::Ok, S::Error> {
        if r.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*r)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Str(s) if s == "inf" => Ok(f64::INFINITY),
            Repr::Str(s) => Err(serde::de::Error::custom(format!("invalid trust radius {s:?}"))),
        }
    }
}

impl SeriesFunction {
    /// An exact polynomial (infinite trust radius).
    pub fn polynomial(coeffs: Vec<Complex64>, k: u32) -> Self {
        SeriesFunction { coeffs, trust_radius: f64::INFINITY, k }
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        poly::horner(&self.coeffs, z)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// Truncates `source` at degree `n` and certifies a trust radius.
///
/// The radius is the largest `rho` whose tail bound satisfies
/// `tail(rho) <= tail_tol * max(1, min_{|z|=rho} |T_n(z)|)`, capped where the
/// roots of the degree-`n` and degree-`n+10` truncations stop agreeing to
/// `10 tail_tol`. Zero tail coefficients count as underflowed, not exact;
/// use [`SeriesFunction::polynomial`] for polynomials.
pub fn truncate_series(source: &[Complex64], n: usize, tail_tol: f64, k: u32) -> Result<SeriesFunction> {
    if source.len() < n + 11 {
        return Err(Error::TooFewCoefficients { needed: n + 10, available: source.len().saturating_sub(1) });
    }
    if !(tail_tol > 0.0) {
        return Err(Error::InvalidArgument("tail_tol must be positive".into()));
    }
    let trunc: Vec<Complex64> = source[..=n].to_vec();
    let tail: Vec<f64> = source[n + 1..].iter().map(|c| c.norm()).collect();
    // Decay ratio over the last available window, ignoring underflowed zeros.
    let nz: Vec<(usize, f64)> = tail.iter().copied().enumerate().filter(|&(_, t)| t > 0.0).collect();
    let mut ratio = 0.0f64;
    let window = &nz[nz.len().saturating_sub(6)..];
    for w in window.windows(2) {
        let step = (w[1].0 - w[0].0) as f64;
        ratio = ratio.max((w[1].1 / w[0].1).powf(1.0 / step));
    }
    let last_idx = tail.len() - 1;
    let trailing_zeros = tail.iter().rev().take_while(|&&t| t == 0.0).count();
    if window.len() < 2 {
        // A single nonzero coefficient: no decay estimate, assume geometric decay stops there.
        ratio = 0.0;
    }
    if ratio >= 1.0 {
        return Ok(SeriesFunction { coeffs: trunc, trust_radius: 0.0, k });
    }
    let tail_bound = |rho: f64| -> f64 {
        let lr = rho.ln();
        let mut s = 0.0;
        for (i, &t) in tail.iter().enumerate() {
            if t > 0.0 {
                s += (t.ln() + (n + 1 + i) as f64 * lr).exp();
            }
        }
        if trailing_zeros == 0 {
            let x = ratio * rho;
            if x >= 1.0 {
                return f64::INFINITY;
            }
            s += (tail[last_idx].ln() + (n + 1 + last_idx) as f64 * lr).exp() * x / (1.0 - x);
        } else {
            // Coefficients that underflowed are below the smallest normal number.
            let lx = rho.max(1.0).ln();
            s += (f64::MIN_POSITIVE.ln() + (n + 1 + last_idx) as f64 * lx).exp();
        }
        s
    };
    let samples = (8 * (n + 1)).max(256);
    let min_on_circle = |rho: f64| -> f64 {
        (0..samples)
            .map(|j| {
                let z = Complex64::from_polar(rho, 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / samples as f64);
                poly::horner(&trunc, z).norm()
            })
            .fold(f64::INFINITY, f64::min)
    };
    // Smallest radius with tail above tail_tol, by bisection in log space.
    let upper = if ratio > 0.0 { 1.0 / ratio } else { 1e12 };
    let (mut lo, mut hi) = (1e-12f64, upper);
    if tail_bound(lo) > tail_tol {
        return Ok(SeriesFunction { coeffs: trunc, trust_radius: 0.0, k });
    }
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if tail_bound(mid) <= tail_tol {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi / lo < 1.0 + 1e-12 {
            break;
        }
    }
    let mut rho = lo;
    // Beyond that the condition can still hold where |T_n| is large.
    let mut r = lo;
    while r < upper {
        r *= 1.02;
        let tb = tail_bound(r);
        if !tb.is_finite() {
            break;
        }
        let m = min_on_circle(r);
        if tb <= tail_tol * m.max(1.0) {
            rho = r;
        } else if tb > tail_tol * 1e30 * m.max(1.0) {
            break;
        }
        if r > 1e12 {
            break;
        }
    }
    // Root agreement cap.
    let opts = RootOptions::default();
    let roots_n = find_roots(&trunc, &opts)?;
    let long: Vec<Complex64> = source[..=n + 10].to_vec();
    let roots_l = find_roots(&long, &opts)?;
    let agree = 10.0 * tail_tol;
    let mut bad = f64::INFINITY;
    for r in &roots_n {
        let z = r.center;
        if z.norm() > rho {
            continue;
        }
        let near = roots_l.iter().map(|q| (q.center - z).norm()).fold(f64::INFINITY, f64::min);
        if near > agree * z.norm().max(1.0) {
            bad = bad.min(z.norm());
        }
    }
    for r in &roots_l {
        let z = r.center;
        if z.norm() > rho {
            continue;
        }
        let near = roots_n.iter().map(|q| (q.center - z).norm()).fold(f64::INFINITY, f64::min);
        if near > agree * z.norm().max(1.0) {
            bad = bad.min(z.norm());
        }
    }
    if bad.is_finite() {
        let below = roots_n
            .iter()
            .chain(&roots_l)
            .map(|r| r.center.norm())
            .filter(|&m| m < bad)
            .fold(0.0, f64::max);
        rho = rho.min(0.5 * (below + bad));
    }
    Ok(SeriesFunction { coeffs: trunc, trust_radius: rho, k })
}
