//! Ramanujan-type transformation formulas, Lambert series, principal-value
//! quadrature and the generalized Raabe cosine transform, each paired with a
//! numerical check of the identity it satisfies.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: Bernoulli numbers, Γ, ψ, Riemann and Hurwitz ζ, Shi/Chi,
//!   the cancellation-free `G_m`, compensated summation and Gauss rules.
//! * [`raabe`]: the transform `𝕽_z(y, w)` and its sum/integral laws.
//! * [`lambert`]: shifted, alternating and twisted Lambert series, the
//!   Lipschitz summation formula and the Hurwitz-zeta route.
//! * [`pv_quad`]: principal-value integrals against `cot` pole lattices.
//! * [`identities`]: the registry of checkable identities.
//! * [`asymptotics`]: small-`y` expansions, plane partitions, order fits.

pub mod asymptotics;
pub mod error;
pub mod identities;
pub mod lambert;
pub mod numerics;
pub mod pv_quad;
pub mod raabe;

pub use error::{Error, Result};
pub use numerics::{ComplexValue, PrecisionConfig, Rational, SeriesValue};
