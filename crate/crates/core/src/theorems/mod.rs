//! Prediction and verification of the distribution of alpha-points over sectors.

mod first_point;
mod interlacing;
mod k2;
mod real_power;

pub use first_point::{check_first_location, predict_first_location, FirstPointForecast};
pub use interlacing::{predict_next_sector, verify_generic_interlacing};
pub use k2::{verify_k2_distribution, K2Case};
pub use real_power::verify_real_power_case;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::Result;
use crate::model::StructuredFunction;
use crate::sector::{nearest_real_direction, real_direction_index, DEFAULT_ANGLE_TOL};
use crate::solver::AlphaPoint;

/// Tolerances shared by the verifiers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Minimal relative gap between consecutive distinct moduli.
    pub gap_tol: f64,
    pub angle_tol: f64,
    /// Relative tolerance for coincidences such as `z* = conj(z) e_{-2s}`.
    pub pair_tol: f64,
    /// Run the predicates about the first point (k = 2 verifier only).
    pub first_point: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { gap_tol: 1e-6, angle_tol: DEFAULT_ANGLE_TOL, pair_tol: 1e-6, first_point: true }
    }
}

/// A failed predicate with the indices of the points involved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub predicate: String,
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub passed: bool,
    /// Number of evaluations per predicate.
    pub checks: BTreeMap<String, usize>,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(theorem: &str) -> Self {
        VerificationReport {
            theorem: theorem.to_string(),
            passed: true,
            checks: BTreeMap::new(),
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn check(&mut self, predicate: &str, ok: bool, indices: &[usize], detail: impl FnOnce() -> String) {
        *self.checks.entry(predicate.to_string()).or_insert(0) += 1;
        if !ok {
            self.passed = false;
            self.violations.push(Violation { predicate: predicate.to_string(), indices: indices.to_vec(), detail: detail() });
        }
    }

    pub fn count(&self, predicate: &str) -> usize {
        self.checks.get(predicate).copied().unwrap_or(0)
    }

    pub fn checks_run(&self) -> usize {
        self.checks.values().sum()
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Appends all checks and violations of `other`.
    pub fn merge(&mut self, other: VerificationReport) {
        for (k, v) in other.checks {
            *self.checks.entry(k).or_insert(0) += v;
        }
        self.passed &= other.passed;
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }
}

/// Which statement to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    /// Generic interlacing when `Im alpha^k != 0`.
    Main,
    /// Pairing when `Im alpha^k = 0`.
    Main2,
    /// Location of the alpha-point closest to the origin.
    First,
    /// The k = 2 summary statements.
    K2,
}

/// Picks the generic or real-direction verifier from `alpha`.
///
/// Points flagged as lying on a ray send a marginal `alpha` to the
/// real-direction verifier; the angular margin is reported.
pub fn verify_auto(points: &[AlphaPoint], alpha: Complex64, f: &StructuredFunction, opts: &VerifyOptions) -> Result<VerificationReport> {
    let beta = f.effective_alpha(alpha);
    if real_direction_index(beta, f.p, f.k, opts.angle_tol)?.is_some() {
        return verify_real_power_case(points, alpha, f, opts);
    }
    if points.iter().any(|p| p.boundary) {
        let (_, margin) = nearest_real_direction(beta, f.p, f.k);
        let loose = VerifyOptions { angle_tol: margin * 1.01, ..*opts };
        let mut r = verify_real_power_case(points, alpha, f, &loose)?;
        r.note(format!("alpha is {margin:e} rad from a real direction; points on rays routed to the real-direction check"));
        return Ok(r);
    }
    verify_generic_interlacing(points, alpha, f, opts)
}
