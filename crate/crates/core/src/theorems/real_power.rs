use num_complex::Complex64;

use super::{VerificationReport, VerifyOptions};
use crate::error::{Error, Result};
use crate::model::StructuredFunction;
use crate::sector::{ray_indices, real_direction_index, unit_rotation};
use crate::solver::AlphaPoint;

/// Points sharing one modulus.
struct Group {
    idx: Vec<usize>,
    /// `m` with the group inside `cl Q_{2m} ∪ cl Q_{-2s-2m-1}`.
    m: Option<u32>,
    /// For a point on the line `Im(z e_s) = 0`: sign of `z e_s`.
    ray: Option<bool>,
    multiplicity: usize,
}

/// Checks the structure of the alpha-set when `Im alpha^k = 0`: points come
/// in reflected pairs `{z, conj(z) e_{-2s}}` or sit alone on the line
/// `Im(z e_s) = 0`, and consecutive moduli obey `p(m - l) = 1 (mod k)`.
pub fn verify_real_power_case(
    points: &[AlphaPoint],
    alpha: Complex64,
    f: &StructuredFunction,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let beta = f.effective_alpha(alpha);
    let k = f.k;
    let kk = k as i64;
    let s = real_direction_index(beta, f.p, k, opts.angle_tol)?
        .ok_or_else(|| Error::InvalidArgument("alpha is not on a real direction (Im alpha^k != 0)".into()))?;
    let es = unit_rotation(s as i64, k);
    let e2s = unit_rotation(-2 * s as i64, k);
    let rays = ray_indices(s as i64, k);
    let mut r = VerificationReport::new("main2");
    r.note(format!("real direction s = {s}"));

    let mut groups: Vec<Group> = Vec::new();
    let mut i = 0;
    while i < points.len() {
        let mut j = i + 1;
        while j < points.len() && (points[j].modulus - points[j - 1].modulus) <= opts.gap_tol * points[j].modulus {
            j += 1;
        }
        let idx: Vec<usize> = (i..j).collect();
        let mult = idx.iter().map(|&t| points[t].multiplicity).sum();
        groups.push(Group { idx, m: None, ray: None, multiplicity: mult });
        i = j;
    }

    for g in groups.iter_mut() {
        let n = g.idx.len();
        r.check("group-size", n <= 2, &g.idx, || format!("{n} points share one modulus"));
        if n == 2 {
            let (a, b) = (&points[g.idx[0]], &points[g.idx[1]]);
            let refl = a.value.conj() * e2s;
            let d = (refl - b.value).norm();
            r.check("pair-reflection", d <= opts.pair_tol * a.modulus, &g.idx, || format!("|conj(z) e_-2s - z'| = {d:e}"));
            for &t in &g.idx {
                let pt = &points[t];
                r.check("pair-simple", pt.multiplicity == 1, &[t], || format!("multiplicity {}", pt.multiplicity));
                r.check("pair-off-line", !pt.boundary, &[t], || "paired point lies on a ray".into());
            }
            let (ev, od) = if a.sector.s % 2 == 0 { (a, b) } else { (b, a) };
            let m = ev.sector.s as i64 / 2;
            let want = (-2 * s as i64 - 2 * m - 1).rem_euclid(2 * kk);
            r.check("pair-sectors", ev.sector.s % 2 == 0 && od.sector.s as i64 == want, &g.idx, || {
                format!("sectors {} and {}, expected Q_{} paired with Q_{want}", ev.sector, od.sector, 2 * m)
            });
            g.m = Some(m as u32);
        } else if n == 1 {
            let t = g.idx[0];
            let pt = &points[t];
            let w = pt.value * es;
            let on_line = pt.boundary && w.im.abs() <= 4.0 * opts.angle_tol.max(1e-12) * w.norm();
            r.check("single-on-line", on_line, &[t], || format!("unpaired point {} is off the line Im(z e_s) = 0", pt.value));
            r.check("ray-multiplicity", pt.multiplicity <= 2, &[t], || format!("multiplicity {}", pt.multiplicity));
            let positive = w.re > 0.0;
            g.ray = Some(positive);
            g.m = Some(if positive { rays.positive } else { rays.negative });
        }
    }

    let same_ray = |a: &Group, b: &Group| a.ray.is_some() && a.ray == b.ray;
    for t in 0..groups.len() {
        let g = &groups[t];
        if t + 1 < groups.len() {
            let h = &groups[t + 1];
            let ids: Vec<usize> = g.idx.iter().chain(&h.idx).copied().collect();
            if same_ray(g, h) {
                r.check("same-ray-simple", g.multiplicity == 1 && h.multiplicity == 1, &ids, || {
                    "adjacent points on one ray must be simple".into()
                });
                if t >= 1 {
                    r.check("same-ray-separated", !same_ray(&groups[t - 1], g), &ids, || {
                        "three consecutive points on one ray".into()
                    });
                }
            } else if let (Some(m), Some(l)) = (g.m, h.m) {
                let ok = (f.p * (m as i64 - l as i64) - 1).rem_euclid(kk) == 0;
                r.check("successor-congruence", ok, &ids, || format!("p(m - l) = {}(m={m}, l={l}) is not 1 mod {k}", f.p));
            }
        }
        if g.ray.is_some() && t >= 1 && t + 1 < groups.len() && !same_ray(g, &groups[t + 1]) {
            let simple_expected = same_ray(&groups[t - 1], g);
            let ok = if simple_expected { g.multiplicity == 1 } else { g.multiplicity == 2 };
            r.check("ray-point-multiplicity", ok, &g.idx, || {
                format!(
                    "point on a ray with neighbours off its ray must be {} (found multiplicity {})",
                    if simple_expected { "simple" } else { "double" },
                    g.multiplicity
                )
            });
        }
    }
    Ok(r)
}
