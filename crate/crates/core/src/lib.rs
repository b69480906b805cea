//! Sector localization and interlacing of the solutions of `F(z) = alpha`
//! for functions with k-fold rotational structure
//! `F(z) = z^p R(z^k)`, `gcd(|p|, k) = 1`.
//!
//! * [`sector`] sector labels, rotations and congruences
//! * [`model`] the structured function and truncated series
//! * [`solver`] roots and alpha-points
//! * [`winding`] independent argument-principle counts
//! * [`theorems`] prediction and verification of the point distribution
//! * [`special`] q-series coefficient families
//! * [`io`] JSON specs, CSV/JSON/SVG output and demo fixtures

pub mod error;
pub mod io;
pub mod model;
pub mod poly;
pub mod quadrature;
pub mod sector;
pub mod solver;
pub mod special;
pub mod theorems;
pub mod winding;

pub use error::{Error, Result};
pub use model::{Evaluation, Normalization, SeriesFunction, StructuredFunction};
pub use sector::SectorIndex;
pub use solver::{alpha_points, AlphaPoint, FunctionSpec, SolveOptions};
