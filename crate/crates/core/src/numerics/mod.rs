//! Special functions and quadrature weights.
//!
//! Everything here is a pure function of its arguments.

mod gamma;
mod series;
mod weights;

pub use gamma::gamma_function;
pub(crate) use gamma::gamma_pos;
pub use series::{
    delayed_series_oracle, mittag_leffler, mittag_leffler_with_cap, DEFAULT_SERIES_CAP,
};
pub(crate) use weights::{first_weight, interior_weight};
pub use weights::{trapezoid_weights, WeightRow};

use crate::error::{Error, Result};

/// Order α of the Caputo derivative, restricted to `0 < α ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha <= 1.0 {
            Ok(FractionalOrder(alpha))
        } else {
            Err(Error::InvalidOrder(alpha))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for FractionalOrder {
    type Error = Error;

    fn try_from(alpha: f64) -> Result<Self> {
        FractionalOrder::new(alpha)
    }
}
