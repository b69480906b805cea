use num_complex::Complex64;

use super::{VerificationReport, VerifyOptions};
use crate::error::{Error, Result};
use crate::model::StructuredFunction;
use crate::sector::{classify_sector, solve_linear_congruence, SectorIndex};
use crate::solver::AlphaPoint;

/// Sector of the next alpha-point (by modulus) when `Im alpha^k != 0`.
///
/// With `alpha in Q_{2q-kappa}` and the current point in `Q_{2m-sigma}`, the
/// next one lies in `Q_{2l-1+sigma}` where `p(l+m) = 2q+1-kappa-sigma (mod k)`.
pub fn predict_next_sector(p: i64, k: u32, alpha_sector: SectorIndex, current: SectorIndex) -> Result<SectorIndex> {
    if alpha_sector.k != k || current.k != k {
        return Err(Error::InvalidArgument("sector indices must use the same k".into()));
    }
    let (q, kappa) = alpha_sector.half_split();
    let (m, sigma) = current.half_split();
    let r = 2 * q as i64 + 1 - kappa as i64 - sigma as i64;
    let lm = solve_linear_congruence(p, r, k)? as i64;
    let l = (lm - m as i64).rem_euclid(k as i64);
    Ok(SectorIndex::new(2 * l - 1 + sigma as i64, k))
}

/// Checks simplicity, strict modulus growth, absence of points on rays and
/// every sector hop of a list sorted by modulus.
pub fn verify_generic_interlacing(
    points: &[AlphaPoint],
    alpha: Complex64,
    f: &StructuredFunction,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let beta = f.effective_alpha(alpha);
    let la = classify_sector(beta, f.k, opts.angle_tol)?;
    if la.boundary {
        return Err(Error::InvalidArgument("alpha lies on a real direction (Im alpha^k = 0)".into()));
    }
    let mut r = VerificationReport::new("main");
    for (i, pt) in points.iter().enumerate() {
        r.check("simple", pt.multiplicity == 1, &[i], || format!("multiplicity {}", pt.multiplicity));
        r.check("off-ray", !pt.boundary, &[i], || format!("point {} lies on a ray", pt.value));
    }
    for i in 1..points.len() {
        let (a, b) = (&points[i - 1], &points[i]);
        let gap = (b.modulus - a.modulus) / b.modulus;
        r.check("modulus-gap", gap > opts.gap_tol, &[i - 1, i], || format!("relative gap {gap:e}"));
        let want = predict_next_sector(f.p, f.k, la.sector, a.sector)?;
        r.check("sector-hop", b.sector == want, &[i - 1, i], || format!("expected {want}, found {}", b.sector));
    }
    if points.len() <= 1 {
        r.note("fewer than two points: no hops to check");
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn next_sector_examples() {
        let n = predict_next_sector(-1, 3, SectorIndex::new(3, 3), SectorIndex::new(0, 3)).unwrap();
        assert_eq!(n.s, 3);
        let n = predict_next_sector(1, 2, SectorIndex::new(0, 2), SectorIndex::new(0, 2)).unwrap();
        assert_eq!(n.s, 1);
    }
}
