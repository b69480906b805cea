use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{VerificationReport, VerifyOptions};
use crate::error::{Error, Result};
use crate::model::StructuredFunction;
use crate::sector::{ceil_half, classify_sector, real_direction_index, solve_linear_congruence, SectorIndex};
use crate::solver::AlphaPoint;

/// Where the alpha-point closest to the origin lies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FirstPointForecast {
    /// A simple point inside the sector.
    InteriorSector { sector: SectorIndex },
    /// A simple point on the ray `Arg z = ray pi / k`.
    PositiveRay { ray: SectorIndex },
    /// Two points of equal modulus, one in each sector.
    PairOfSectors { sectors: [SectorIndex; 2] },
    /// As `PairOfSectors`, or both points (possibly one double point) on the ray.
    RayPairPossible { sectors: [SectorIndex; 2], ray: SectorIndex },
}

/// Forecast for `F = C z^p e^{A z^k} prod(1 + z^k/a) / prod(1 - z^k/b)`.
pub fn predict_first_location(f: &StructuredFunction, alpha: Complex64, angle_tol: f64) -> Result<FirstPointForecast> {
    f.validate()?;
    if !f.is_f_form() {
        return Err(Error::InvalidSpec("first-point forecast needs A0 = 0 and no Laurent factors".into()));
    }
    let beta = f.effective_alpha(alpha);
    let (p, k) = (f.p, f.k);
    let la = classify_sector(beta, k, angle_tol)?;
    let (q, kappa) = la.sector.half_split();
    let (q, kappa) = (q as i64, kappa as i64);
    let sec = |j: i64| SectorIndex::new(j, k);
    let solve = |r: i64| solve_linear_congruence(p, r, k).map(|m| m as i64);
    let s = || -> Result<i64> {
        real_direction_index(beta, p, k, angle_tol)?
            .map(|s| s as i64)
            .ok_or_else(|| Error::InvalidArgument("no real direction for a boundary alpha".into()))
    };
    if p > 0 {
        let m = solve(q)?;
        if !la.boundary {
            return Ok(FirstPointForecast::InteriorSector { sector: sec(2 * m - kappa) });
        }
        if kappa == 0 {
            return Ok(FirstPointForecast::PositiveRay { ray: sec(2 * m) });
        }
        let mt = solve(q - 1)?;
        let sectors = [sec(2 * m - 1), sec(2 * mt)];
        if p == 1 {
            return Ok(FirstPointForecast::RayPairPossible { sectors, ray: sec(2 * m - 1) });
        }
        return Ok(FirstPointForecast::PairOfSectors { sectors });
    }
    if !la.boundary {
        let sigma = if p % 2 == 0 { kappa } else { 1 - kappa };
        let sign = if sigma == 0 { 1 } else { -1 };
        let m = solve(q - sign * ceil_half(p))?;
        return Ok(FirstPointForecast::InteriorSector { sector: sec(2 * m - sigma) });
    }
    if (p - kappa).rem_euclid(2) == 0 {
        let m = solve(q + ceil_half(p - 1))?;
        return Ok(FirstPointForecast::PositiveRay { ray: sec(2 * m - 1) });
    }
    let m = solve(q - ceil_half(p + 1))?;
    let sectors = [sec(2 * m), sec(-2 * s()? - 2 * m - 1)];
    if p == -1 {
        return Ok(FirstPointForecast::RayPairPossible { sectors, ray: sec(2 * m) });
    }
    Ok(FirstPointForecast::PairOfSectors { sectors })
}

fn same_set(a: [SectorIndex; 2], b: [SectorIndex; 2]) -> bool {
    (a[0] == b[0] && a[1] == b[1]) || (a[0] == b[1] && a[1] == b[0])
}

/// Checks the smallest points of a modulus-sorted list against a forecast.
pub fn check_first_location(forecast: &FirstPointForecast, points: &[AlphaPoint], opts: &VerifyOptions) -> VerificationReport {
    let mut r = VerificationReport::new("first");
    if points.is_empty() {
        r.check("nonempty", false, &[], || "no alpha-points".into());
        return r;
    }
    let z0 = &points[0];
    let gap_after = |i: usize| -> bool {
        i + 1 >= points.len() || (points[i + 1].modulus - points[i].modulus) > opts.gap_tol * points[i + 1].modulus
    };
    let equal_mod = |i: usize| -> bool {
        i + 1 < points.len() && (points[i + 1].modulus - points[i].modulus) <= opts.gap_tol * points[i + 1].modulus
    };
    match *forecast {
        FirstPointForecast::InteriorSector { sector } => {
            r.check("first-sector", !z0.boundary && z0.sector == sector, &[0], || {
                format!("expected interior of {sector}, found {}{}", z0.sector, if z0.boundary { " (on ray)" } else { "" })
            });
            r.check("first-simple", z0.multiplicity == 1, &[0], || format!("multiplicity {}", z0.multiplicity));
            r.check("first-separated", gap_after(0), &[0, 1], || "next point has the same modulus".into());
        }
        FirstPointForecast::PositiveRay { ray } => {
            r.check("first-ray", z0.boundary && z0.sector == ray, &[0], || {
                format!("expected ray {}, found {}{}", ray.s, z0.sector, if z0.boundary { " (on ray)" } else { "" })
            });
            r.check("first-simple", z0.multiplicity == 1, &[0], || format!("multiplicity {}", z0.multiplicity));
            r.check("first-separated", gap_after(0), &[0, 1], || "next point has the same modulus".into());
        }
        FirstPointForecast::PairOfSectors { sectors } | FirstPointForecast::RayPairPossible { sectors, .. } => {
            let pair_ok = equal_mod(0)
                && !z0.boundary
                && !points[1].boundary
                && same_set([z0.sector, points[1].sector], sectors);
            let ray_ok = match *forecast {
                FirstPointForecast::RayPairPossible { ray, .. } => {
                    let on = |p: &AlphaPoint| p.boundary && p.sector == ray;
                    (on(z0) && z0.multiplicity == 2) || (points.len() > 1 && on(z0) && on(&points[1]) && z0.multiplicity == 1)
                }
                _ => false,
            };
            r.check("first-pair", pair_ok || ray_ok, &[0, 1], || {
                let second = points.get(1).map(|p| p.sector.to_string()).unwrap_or_else(|| "none".into());
                format!("expected {} and {} (or the ray), found {} and {}", sectors[0], sectors[1], z0.sector, second)
            });
        }
    }
    r
}
