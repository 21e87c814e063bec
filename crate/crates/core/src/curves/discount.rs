use alloc::vec::Vec;

use chrono::NaiveDate;

use crate::calendar::{decimal_year, YearTime};
use crate::{Error, Result};

/// Zero curve with continuously compounded rates by tenor plus a flat spread.
///
/// Between knots `ln D` is linear in time (log-linear discount factors);
/// before the first knot and after the last one the nearest zero rate is held
/// flat. The spread is applied as `exp(-spread * tau)` on top of the base
/// curve, so a riskless curve and its risky (funding) sibling share knots.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscountCurve {
    as_of: NaiveDate,
    origin: YearTime,
    tenors: Vec<f64>,
    zero_rates: Vec<f64>,
    spread_bps: f64,
}

impl DiscountCurve {
    /// `knots` are `(tenor_years, zero_rate)` pairs.
    pub fn build(as_of: NaiveDate, knots: &[(f64, f64)], spread_bps: f64) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::Empty("discount curve"));
        }
        if knots
            .iter()
            .any(|&(tenor, rate)| !tenor.is_finite() || !rate.is_finite())
            || !spread_bps.is_finite()
        {
            return Err(Error::NonFinite("discount curve"));
        }
        if knots[0].0 <= 0.0 || knots.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::NonIncreasing("discount curve"));
        }
        Ok(DiscountCurve {
            as_of,
            origin: decimal_year(as_of),
            tenors: knots.iter().map(|k| k.0).collect(),
            zero_rates: knots.iter().map(|k| k.1).collect(),
            spread_bps,
        })
    }

    pub fn flat(as_of: NaiveDate, zero_rate: f64, spread_bps: f64) -> Result<Self> {
        Self::build(as_of, &[(1.0, zero_rate)], spread_bps)
    }

    /// Same base knots with a different flat spread.
    pub fn with_spread(&self, spread_bps: f64) -> Self {
        DiscountCurve {
            spread_bps,
            ..self.clone()
        }
    }

    pub fn as_of(&self) -> NaiveDate {
        self.as_of
    }

    pub fn origin(&self) -> YearTime {
        self.origin
    }

    pub fn spread_bps(&self) -> f64 {
        self.spread_bps
    }

    /// Base zero rate at `tau` years, excluding the spread.
    pub fn base_zero_rate(&self, tau: f64) -> f64 {
        let last = self.tenors.len() - 1;
        if tau <= self.tenors[0] {
            return self.zero_rates[0];
        }
        if tau >= self.tenors[last] {
            return self.zero_rates[last];
        }
        let i = self.tenors.partition_point(|&k| k <= tau) - 1;
        let (t0, t1) = (self.tenors[i], self.tenors[i + 1]);
        let (y0, y1) = (self.zero_rates[i] * t0, self.zero_rates[i + 1] * t1);
        let w = (tau - t0) / (t1 - t0);
        (y0 + w * (y1 - y0)) / tau
    }

    /// Zero rate including the spread.
    pub fn zero_rate(&self, tau: f64) -> f64 {
        self.base_zero_rate(tau) + self.spread_bps * 1e-4
    }

    /// Discount factor from the as-of date to `t`.
    pub fn discount(&self, t: YearTime) -> f64 {
        let tau = t - self.origin;
        if tau == 0.0 {
            return 1.0;
        }
        libm::exp(-self.zero_rate(tau) * tau)
    }

    pub fn discount_date(&self, date: NaiveDate) -> f64 {
        self.discount(decimal_year(date))
    }

    /// Forward discount factor `D(t, u) = D(u) / D(t)`.
    pub fn forward_discount(&self, t: YearTime, u: YearTime) -> f64 {
        self.discount(u) / self.discount(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn as_of() -> NaiveDate {
        NaiveDate::from_ymd_opt(2021, 11, 30).unwrap()
    }

    #[test]
    fn zero_curve_is_unit() {
        let c = DiscountCurve::flat(as_of(), 0.0, 0.0).unwrap();
        for k in 0..50 {
            assert_eq!(c.discount(c.origin() + k as f64), 1.0);
        }
    }

    #[test]
    fn flat_two_percent_five_years() {
        let c = DiscountCurve::flat(as_of(), 0.02, 0.0).unwrap();
        let d = c.discount(c.origin() + 5.0);
        assert!((d - libm::exp(-0.10)).abs() < 1e-12);
        assert!((d - 0.904837).abs() < 1e-6);
    }

    #[test]
    fn risky_spread_on_zero_curve() {
        let c = DiscountCurve::flat(as_of(), 0.0, 157.0).unwrap();
        let d = c.discount(c.origin() + 5.0);
        assert!((d - libm::exp(-0.0157 * 5.0)).abs() < 1e-12);
        assert_eq!(c.with_spread(0.0).discount(c.origin() + 5.0), 1.0);
    }

    #[test]
    fn log_linear_between_knots() {
        let c = DiscountCurve::build(as_of(), &[(1.0, 0.01), (3.0, 0.03)], 0.0).unwrap();
        let ln_d1 = -0.01;
        let ln_d3 = -0.09;
        let d2 = c.discount(c.origin() + 2.0);
        assert!((libm::log(d2) - 0.5 * (ln_d1 + ln_d3)).abs() < 1e-12);
        // flat terminal zero rate
        let d10 = c.discount(c.origin() + 10.0);
        assert!((d10 - libm::exp(-0.3)).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_knots() {
        assert!(matches!(
            DiscountCurve::build(as_of(), &[], 0.0),
            Err(Error::Empty(_))
        ));
        assert!(matches!(
            DiscountCurve::build(as_of(), &[(2.0, 0.01), (1.0, 0.01)], 0.0),
            Err(Error::NonIncreasing(_))
        ));
        assert!(matches!(
            DiscountCurve::build(as_of(), &[(1.0, f64::NAN)], 0.0),
            Err(Error::NonFinite(_))
        ));
    }

    proptest! {
        #[test]
        fn upward_sloping_nonnegative_rates_give_nonincreasing_factors(
            mut rates in proptest::collection::vec(0.0f64..0.15, 1..6),
            spread in 0.0f64..500.0,
        ) {
            // A falling zero curve can imply negative forwards, so monotonicity
            // of D is only guaranteed for non-decreasing zero rates.
            rates.sort_by(f64::total_cmp);
            let knots: Vec<(f64, f64)> = rates.iter().enumerate()
                .map(|(i, &r)| ((i + 1) as f64 * 2.5, r)).collect();
            let c = DiscountCurve::build(as_of(), &knots, spread).unwrap();
            let mut prev = 1.0;
            for k in 0..=400 {
                let d = c.discount(c.origin() + k as f64 * 0.125);
                prop_assert!(d > 0.0 && d <= 1.0);
                prop_assert!(d <= prev + 1e-15);
                prev = d;
            }
        }
    }
}
