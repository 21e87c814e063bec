//! Term structures: discounting, CPI inflation, carbon price scenarios and
//! negative-emissions technology (NET) costs.
//!
//! Every curve is evaluated on the decimal-year time coordinate.

mod carbon;
mod discount;
mod inflation;
mod net;

pub use carbon::{CarbonPriceCurve, SCENARIO_PRICE_BASE_YEAR};
pub use discount::DiscountCurve;
pub use inflation::InflationIndex;
pub use net::{cheapest_net, NetBound, NetCostCurve, NetTechnology, NET_COST_BASE_YEAR};

use alloc::vec::Vec;

use crate::calendar::YearTime;
use crate::{Error, Result};

/// A nominal USD-per-tonne curve.
pub trait PriceCurve {
    fn price(&self, t: YearTime) -> f64;

    /// Earliest time the curve may be queried.
    fn available_from(&self) -> YearTime {
        f64::NEG_INFINITY
    }

    /// Latest time the curve is defined for.
    fn horizon(&self) -> YearTime {
        f64::INFINITY
    }

    fn label(&self) -> &str {
        "price curve"
    }
}

impl<C: PriceCurve + ?Sized> PriceCurve for &C {
    fn price(&self, t: YearTime) -> f64 {
        (**self).price(t)
    }
    fn available_from(&self) -> YearTime {
        (**self).available_from()
    }
    fn horizon(&self) -> YearTime {
        (**self).horizon()
    }
    fn label(&self) -> &str {
        (**self).label()
    }
}

/// Piecewise-linear curve through sampled points; flat outside them.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedCurve {
    times: Vec<YearTime>,
    values: Vec<f64>,
}

impl TabulatedCurve {
    pub fn new(times: Vec<YearTime>, values: Vec<f64>) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::Empty("tabulated curve"));
        }
        if times.len() != values.len() {
            return Err(Error::InvalidField {
                field: "values",
                reason: "length must match times",
            });
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::NonIncreasing("tabulated curve"));
        }
        if values.iter().chain(&times).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("tabulated curve"));
        }
        Ok(TabulatedCurve { times, values })
    }

    pub fn times(&self) -> &[YearTime] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl PriceCurve for TabulatedCurve {
    fn price(&self, t: YearTime) -> f64 {
        interp_linear(&self.times, &self.values, t)
    }

    fn available_from(&self) -> YearTime {
        self.times[0]
    }

    fn horizon(&self) -> YearTime {
        self.times[self.times.len() - 1]
    }
}

/// Linear interpolation with flat extrapolation. `xs` strictly increasing.
pub(crate) fn interp_linear(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let last = xs.len() - 1;
    if x <= xs[0] {
        return ys[0];
    }
    if x >= xs[last] {
        return ys[last];
    }
    let i = xs.partition_point(|&k| k <= x) - 1;
    let w = (x - xs[i]) / (xs[i + 1] - xs[i]);
    ys[i] + w * (ys[i + 1] - ys[i])
}
