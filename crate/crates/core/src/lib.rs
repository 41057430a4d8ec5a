//! Exact arithmetic for non-Archimedean reward systems.
//!
//! * [`rational`]: arbitrary-precision rationals with an inline fast path.
//! * [`laurent`]: finite-support formal Laurent series and their total order.
//! * [`sig_order`]: significant orders, non-Archimedean witnesses and the
//!   affine `≪′` decision procedure.
//! * [`measurement`]: accurate-measurement checks and their finite
//!   impossibility renderings.
//! * [`rl`]: the delayed-gratification bandit under exact and approximated
//!   rewards.

pub mod error;
pub mod laurent;
pub mod measurement;
pub mod rational;
pub mod rl;
pub mod sig_order;

pub use error::{Error, ParseError, Result};
pub use laurent::{LaurentSeries, Order};
pub use rational::Rational;
pub use sig_order::{SigThreshold, SignificantOrder};
