//! Exact coefficient arithmetic: rationals, Laurent polynomials in `t`,
//! truncated series in `h`, and polynomials in `z, w`.

mod laurent;
mod phi;
mod polyzw;
pub mod rational;
mod series;

pub use laurent::{laurent_to_series, LaurentPoly};
pub use phi::{loop_power_series, phi0, phi1, phi_coeff, phi_series_oracle};
pub use polyzw::{c_map, pi_k, PolyZW, StateWeightFn};
pub use rational::{int, rat, Rational};
pub use series::TruncSeries;
