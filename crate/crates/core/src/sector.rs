//! Sector geometry for the 2k open sectors
//! `Q_s = { z : 0 < Arg(z e_{-s}) < pi/k }` with `e_m = exp(i pi m / k)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Default angular tolerance (radians) for boundary detection.
pub const DEFAULT_ANGLE_TOL: f64 = 1e-9;

/// Canonical sector index `s` in `[0, 2k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SectorIndex {
    pub s: u32,
    pub k: u32,
}

impl SectorIndex {
    /// Reduces any integer index modulo 2k.
    pub fn new(s: i64, k: u32) -> Self {
        let n = 2 * k as i64;
        SectorIndex { s: s.rem_euclid(n) as u32, k }
    }

    /// Splits the index as `2q - kappa`, `q` in `[0, k)`, `kappa` in {0, 1}.
    pub fn half_split(self) -> (u32, u32) {
        half_split(self.s as i64, self.k)
    }

    pub fn is_even(self) -> bool {
        self.s % 2 == 0
    }
}

impl std::fmt::Display for SectorIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Q_{}", self.s)
    }
}

/// Writes `j = 2q - kappa` with `q` reduced mod k.
pub fn half_split(j: i64, k: u32) -> (u32, u32) {
    let j = j.rem_euclid(2 * k as i64);
    if j % 2 == 0 {
        ((j / 2) as u32 % k, 0)
    } else {
        (((j + 1) / 2) as u32 % k, 1)
    }
}

/// Ceiling of `a / 2` in integer arithmetic.
pub fn ceil_half(a: i64) -> i64 {
    (a + 1).div_euclid(2)
}

/// Result of classifying a point against the sector partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorLabel {
    pub sector: SectorIndex,
    /// When true, the point lies on the ray `Arg z = s pi / k` within tolerance.
    pub boundary: bool,
}

/// `exp(i pi m / k)`, exact at multiples of `pi / 2`.
pub fn unit_rotation(m: i64, k: u32) -> Complex64 {
    assert!(k >= 1, "k must be positive");
    let n = 2 * k as i64;
    let r = m.rem_euclid(n);
    if (2 * r) % k as i64 == 0 {
        return match (2 * r) / k as i64 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    // Quarter turns exactly, the remainder |theta| <= pi/4 by cos/sin.
    let k = k as i64;
    let q = (4 * r + k).div_euclid(2 * k);
    let theta = PI * (2 * r - q * k) as f64 / (2 * k) as f64;
    let w = Complex64::new(theta.cos(), theta.sin());
    match q.rem_euclid(4) {
        0 => w,
        1 => Complex64::new(-w.im, w.re),
        2 => -w,
        _ => Complex64::new(w.im, -w.re),
    }
}

/// Argument mapped into `[0, 2 pi)`.
pub fn arg_positive(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Locates `z` in the 2k-sector partition.
pub fn classify_sector(z: Complex64, k: u32, angle_tol: f64) -> Result<SectorLabel> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::ZeroInput("z"));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidArgument("z must be finite".into()));
    }
    let width = PI / k as f64;
    let theta = arg_positive(z);
    let t = theta / width;
    let n = t.round();
    if (theta - n * width).abs() <= angle_tol {
        return Ok(SectorLabel { sector: SectorIndex::new(n as i64, k), boundary: true });
    }
    Ok(SectorLabel { sector: SectorIndex::new(t.floor() as i64, k), boundary: false })
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Greatest common divisor of the absolute values.
pub fn gcd(a: i64, b: i64) -> i64 {
    ext_gcd(a.abs(), b.abs()).0
}

/// Unique `m` in `[0, k)` with `p m = r (mod k)`; requires `gcd(|p|, k) = 1`.
pub fn solve_linear_congruence(p: i64, r: i64, k: u32) -> Result<u32> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let kk = k as i64;
    let (g, x, _) = ext_gcd(p.rem_euclid(kk), kk);
    if g != 1 && kk != 1 {
        return Err(Error::NotCoprime { p, k: kk });
    }
    if kk == 1 {
        return Ok(0);
    }
    Ok(((x.rem_euclid(kk) as i128 * r.rem_euclid(kk) as i128) % kk as i128) as u32)
}

/// The `s` in `[0, k)` with `Im(alpha e_{ps}) = 0`, if any.
pub fn real_direction_index(alpha: Complex64, p: i64, k: u32, angle_tol: f64) -> Result<Option<u32>> {
    if alpha.re == 0.0 && alpha.im == 0.0 {
        return Err(Error::ZeroInput("alpha"));
    }
    if gcd(p, k as i64) != 1 {
        return Err(Error::NotCoprime { p, k: k as i64 });
    }
    let theta = alpha.im.atan2(alpha.re);
    let mut best: Option<(u32, f64)> = None;
    for s in 0..k {
        let phi = theta + PI * ((p * s as i64).rem_euclid(2 * k as i64)) as f64 / k as f64;
        let d = phi.rem_euclid(PI);
        let d = d.min(PI - d);
        if d <= angle_tol && best.map_or(true, |(_, b)| d < b) {
            best = Some((s, d));
        }
    }
    Ok(best.map(|(s, _)| s))
}

/// Angular distance from `alpha` to the nearest real direction
/// `{Im(alpha e_{ps}) = 0}`, together with that `s`.
pub fn nearest_real_direction(alpha: Complex64, p: i64, k: u32) -> (u32, f64) {
    let theta = alpha.im.atan2(alpha.re);
    let mut best = (0, f64::INFINITY);
    for s in 0..k {
        let phi = theta + PI * ((p * s as i64).rem_euclid(2 * k as i64)) as f64 / k as f64;
        let d = phi.rem_euclid(PI);
        let d = d.min(PI - d);
        if d < best.1 {
            best = (s, d);
        }
    }
    best
}

/// Indices `m` (mod k) naming the rays of the line `Im(z e_s) = 0`:
/// the ray `z e_s > 0` is `cl Q_{2m} ∩ cl Q_{-2s-2m-1}` for `m = positive`,
/// and `z e_s < 0` the same for `m = negative`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayIndices {
    pub positive: u32,
    pub negative: u32,
}

pub fn ray_indices(s: i64, k: u32) -> RayIndices {
    let kk = k as i64;
    RayIndices {
        positive: (-ceil_half(s)).rem_euclid(kk) as u32,
        negative: (-ceil_half(s - kk)).rem_euclid(kk) as u32,
    }
}
