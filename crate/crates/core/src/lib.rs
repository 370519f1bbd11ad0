//! Rigorous numerics for the Grothendieck-constant lower bound built on the
//! Davie–Reeds operator `R_λ = P₁ − λI` and its third-chaos perturbation
//! `R_{λ,β} = P₁ − λI − βP₃` on Gaussian space.
//!
//! Module map:
//! - [`gauss`]: Gaussian density/CDF, Hermite polynomials, adaptive quadrature.
//! - [`reeds`]: the Reeds point, the baseline ratio bound and `F(α)`.
//! - [`profile`]: one-dimensional profiles, the primal/dual pair and gap bounds.
//! - [`pairing`]: third-chaos pairing constants.
//! - [`chain`]: stability constants and the final inequality chain.
//! - [`explorer`]: norms of conditional profiles, sign ascent, Monte Carlo.
//! - [`interval`] and [`certify`]: outward-rounded re-evaluation of the headline numbers.

// Negated float comparisons below are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod explorer;
pub mod certify;
pub mod chain;
pub mod gauss;
pub mod interval;
pub mod json;
pub mod pairing;
pub mod profile;
pub mod reeds;
pub mod roots;
pub mod sample;

pub use error::{Error, Result};
pub use gauss::QuadratureSpec;
pub use profile::{Profile, TailRule};
pub use reeds::ReedsParams;
