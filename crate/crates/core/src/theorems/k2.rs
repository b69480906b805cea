use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{VerificationReport, VerifyOptions};
use crate::error::{Error, Result};
use crate::sector::classify_sector;
use crate::solver::AlphaPoint;

/// The six cases for `k = 2`, `p = 2j + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum K2Case {
    /// `j < 0`, `Im alpha^2 != 0`.
    I,
    /// `j < 0`, `alpha` real.
    II,
    /// `j < 0`, `alpha` imaginary.
    III,
    /// `j >= 0`, `Im alpha^2 != 0`.
    IV,
    /// `j >= 0`, `alpha` real.
    V,
    /// `j >= 0`, `alpha` imaginary.
    VI,
}

#[derive(Clone, Copy, PartialEq)]
enum Axis {
    Real,
    Imag,
}

impl Axis {
    fn along(self, z: Complex64) -> f64 {
        match self {
            Axis::Real => z.re,
            Axis::Imag => z.im,
        }
    }
    fn across(self, z: Complex64) -> f64 {
        match self {
            Axis::Real => z.im,
            Axis::Imag => z.re,
        }
    }
    /// Reflection in this axis.
    fn reflect(self, z: Complex64) -> Complex64 {
        match self {
            Axis::Real => z.conj(),
            Axis::Imag => -z.conj(),
        }
    }
}

/// Checks the k = 2 distribution statements for the alpha-points of a
/// function with `p = 2j + 1`. The points must be sorted by modulus; each
/// is repeated according to its multiplicity.
pub fn verify_k2_distribution(points: &[AlphaPoint], alpha: Complex64, j: i64, opts: &VerifyOptions) -> Result<VerificationReport> {
    if alpha.re == 0.0 && alpha.im == 0.0 {
        return Err(Error::ZeroInput("alpha"));
    }
    let tol = opts.angle_tol;
    let on = |z: Complex64, a: Axis| a.across(z).abs() <= tol * z.norm();
    let a_real = alpha.im.abs() <= tol * alpha.norm();
    let a_imag = alpha.re.abs() <= tol * alpha.norm();
    let case = match (j < 0, a_real, a_imag) {
        (true, false, false) => K2Case::I,
        (true, true, _) => K2Case::II,
        (true, _, true) => K2Case::III,
        (false, false, false) => K2Case::IV,
        (false, true, _) => K2Case::V,
        (false, _, true) => K2Case::VI,
    };
    let mut r = VerificationReport::new("k2");
    r.note(format!("case {case:?}, p = {}", 2 * j + 1));

    let mut z: Vec<Complex64> = Vec::new();
    let mut src: Vec<usize> = Vec::new();
    let mut mult: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for _ in 0..p.multiplicity {
            z.push(p.value);
            src.push(i);
            mult.push(p.multiplicity);
        }
    }
    let n = z.len();
    if n == 0 {
        return Ok(r);
    }
    let lt = |a: usize, b: usize| z[b].norm() - z[a].norm() > opts.gap_tol * z[b].norm();
    let near = |a: Complex64, b: Complex64| (a - b).norm() <= opts.pair_tol * a.norm().max(b.norm());
    let ids = |a: &[usize]| a.iter().map(|&t| src[t]).collect::<Vec<usize>>();
    let first = opts.first_point;

    match case {
        K2Case::I | K2Case::IV => {
            let sign = if (alpha * alpha).im > 0.0 { 1 } else { -1 };
            for t in 0..n {
                r.check("simple", mult[t] == 1, &ids(&[t]), || format!("multiplicity {}", mult[t]));
                r.check("off-axes", !on(z[t], Axis::Real) && !on(z[t], Axis::Imag), &ids(&[t]), || format!("{} lies on an axis", z[t]));
            }
            for t in 1..n {
                r.check("strict-modulus", lt(t - 1, t), &ids(&[t - 1, t]), || "equal moduli".into());
                let a = classify_sector(z[t - 1], 2, tol)?.sector;
                let b = classify_sector(z[t], 2, tol)?.sector;
                let want = (a.s as i64 + sign).rem_euclid(4) as u32;
                r.check("quadrant-step", b.s == want, &ids(&[t - 1, t]), || format!("from {a} expected Q_{want}, found {b}"));
            }
            if first {
                let z1 = z[0];
                if case == K2Case::I {
                    let sj = if j.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                    r.check("first-imag-sign", sj * alpha.im * z1.im > 0.0, &[src[0]], || format!("(-1)^j Im alpha Im z1 = {}", sj * alpha.im * z1.im));
                    let v = (alpha * alpha).im * z1.re * z1.im;
                    r.check("first-quadrant", v < 0.0, &[src[0]], || format!("Im alpha^2 Re z1 Im z1 = {v}"));
                } else {
                    r.check("first-imag-sign", alpha.im * z1.im > 0.0, &[src[0]], || format!("Im alpha Im z1 = {}", alpha.im * z1.im));
                    r.check("first-real-sign", alpha.re * z1.re > 0.0, &[src[0]], || format!("Re alpha Re z1 = {}", alpha.re * z1.re));
                }
            }
        }
        _ => {
            let (axis, offset) = match case {
                K2Case::II => (Axis::Real, 0),
                K2Case::III => (Axis::Imag, 1),
                K2Case::V => (Axis::Real, 1),
                _ => (Axis::Imag, 0),
            };
            let other = if axis == Axis::Real { Axis::Imag } else { Axis::Real };
            for t in 0..n {
                r.check("no-cross-axis", !on(z[t], other), &ids(&[t]), || format!("{} lies on the wrong axis", z[t]));
                let ok = if on(z[t], axis) { mult[t] <= 2 } else { mult[t] == 1 };
                r.check("multiplicity", ok, &ids(&[t]), || format!("multiplicity {} at {}", mult[t], z[t]));
            }
            // Pairs (offset + 2i, offset + 2i + 1); strict gaps between pairs.
            let mut a = offset;
            while a + 1 < n {
                let b = a + 1;
                if lt(a, b) {
                    let ok = on(z[a], axis)
                        && on(z[b], axis)
                        && axis.along(z[a]).signum() == axis.along(z[b]).signum();
                    r.check("pair-same-ray", ok, &ids(&[a, b]), || format!("{} and {} differ in modulus but not on one ray", z[a], z[b]));
                } else {
                    r.check("pair-reflection", near(z[a], axis.reflect(z[b])), &ids(&[a, b]), || {
                        format!("{} and {} are not reflections", z[a], z[b])
                    });
                }
                a += 2;
            }
            let mut t = if offset == 0 { 1 } else { 0 };
            while t + 1 < n {
                r.check("strict-modulus", lt(t, t + 1), &ids(&[t, t + 1]), || "equal moduli across pairs".into());
                let v = axis.along(z[t]) * axis.along(z[t + 1]);
                r.check("sign-alternation", v < 0.0, &ids(&[t, t + 1]), || format!("product {v} is not negative"));
                t += 2;
            }
            if first {
                let z1 = z[0];
                let sj = if j.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                let single = n < 2 || lt(0, 1);
                match case {
                    K2Case::II => {
                        r.check("first-sign", sj * alpha.re * z1.re < 0.0, &[src[0]], || format!("(-1)^j alpha Re z1 = {}", sj * alpha.re * z1.re));
                        if n >= 2 {
                            r.check("first-ray-pair", !single || j == -1, &ids(&[0, 1]), || "|z1| < |z2| needs j = -1".into());
                        }
                    }
                    K2Case::III => {
                        r.check("first-sign", sj * alpha.im * z1.im > 0.0, &[src[0]], || format!("(-1)^j Im alpha Im z1 = {}", sj * alpha.im * z1.im));
                        r.check("first-on-axis", on(z1, Axis::Imag), &[src[0]], || format!("Re z1 = {}", z1.re));
                    }
                    K2Case::V => {
                        r.check("first-on-axis", on(z1, Axis::Real), &[src[0]], || format!("Im z1 = {}", z1.im));
                        r.check("first-sign", alpha.re * z1.re > 0.0, &[src[0]], || format!("alpha z1 = {}", alpha * z1));
                    }
                    _ => {
                        r.check("first-sign", alpha.im * z1.im > 0.0, &[src[0]], || format!("Im alpha Im z1 = {}", alpha.im * z1.im));
                        if n >= 2 {
                            r.check("first-ray-pair", !single || j == 0, &ids(&[0, 1]), || "|z1| < |z2| needs j = 0".into());
                        }
                    }
                }
            }
        }
    }
    Ok(r)
}
