//! Constant NET capacity that makes a financing financially net-zero.
//!
//! Selling sequestration at the scenario carbon price `p(t)` while producing
//! it at the permanence-adjusted NET cost `c(t)` earns `max(0, p - c)` per
//! tonne. The capacity `v` (tonnes per year) solves
//!
//! ```text
//! v * int_{t0}^{T} D(t) max(0, p(t) - c(t)) dt = carbon cost NPV
//! ```

use crate::calendar::YearTime;
use crate::curves::{DiscountCurve, PriceCurve};
use crate::grid::monthly_trapezoid;
use crate::{Error, Result};

const TONNES_PER_MT: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NetZeroSolution {
    /// MT/year, `None` when no capacity can earn a profit.
    pub capacity: Option<f64>,
    /// USD earned per MT/year of capacity over the window.
    pub profit_integral: f64,
    /// Carbon cost NPV to offset, USD.
    pub target_npv: f64,
}

impl NetZeroSolution {
    pub fn is_solved(&self) -> bool {
        self.capacity.is_some()
    }
}

/// Solves for the NET capacity. `discount = None` integrates undiscounted
/// profits.
pub fn required_net_capacity(
    carbon_npv: f64,
    prices: &impl PriceCurve,
    net_cost: &impl PriceCurve,
    discount: Option<&DiscountCurve>,
    t0: YearTime,
    t1: YearTime,
) -> Result<NetZeroSolution> {
    if !(carbon_npv >= 0.0) {
        return Err(Error::InvalidField {
            field: "carbon_npv",
            reason: "must be >= 0",
        });
    }
    if t1 < t0 {
        return Err(Error::ReversedInterval { start: t0, end: t1 });
    }
    if t1 > prices.horizon() {
        return Err(Error::CurveHorizon {
            needed: t1,
            available: prices.horizon(),
        });
    }
    let margin = |t: f64| {
        let m = prices.price(t) - net_cost.price(t);
        let d = discount.map_or(1.0, |c| c.discount(t));
        if m > 0.0 {
            d * m
        } else {
            0.0
        }
    };
    let profit_integral = monthly_trapezoid(t0, t1, margin) * TONNES_PER_MT;
    let capacity = (profit_integral > 0.0).then(|| carbon_npv / profit_integral);
    Ok(NetZeroSolution {
        capacity,
        profit_integral,
        target_npv: carbon_npv,
    })
}

/// `|capacity * profit_integral - target_npv|` in USD.
pub fn verify_net_zero(solution: &NetZeroSolution) -> Result<f64> {
    let capacity = solution.capacity.ok_or(Error::NoSolution)?;
    Ok((capacity * solution.profit_integral - solution.target_npv).abs())
}

/// Residual relative to the target (absolute when the target is zero).
pub fn relative_residual(solution: &NetZeroSolution) -> Result<f64> {
    let abs = verify_net_zero(solution)?;
    Ok(if solution.target_npv == 0.0 {
        abs
    } else {
        abs / solution.target_npv.abs()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use crate::curves::TabulatedCurve;
    use crate::testing::as_of;
    use proptest::prelude::*;

    struct Const(f64);
    impl PriceCurve for Const {
        fn price(&self, _: YearTime) -> f64 {
            self.0
        }
    }

    fn t0() -> YearTime {
        crate::calendar::decimal_year(as_of())
    }

    #[test]
    fn no_profit_means_no_solution() {
        // zero carbon price for the first ten years
        let dt = TabulatedCurve::new(vec![t0(), t0() + 10.0, t0() + 15.0], vec![0.0, 0.0, 300.0]).unwrap();
        let s = required_net_capacity(5e9, &dt, &Const(40.0), None, t0(), t0() + 10.0).unwrap();
        assert_eq!(s.capacity, None);
        assert_eq!(s.profit_integral, 0.0);
        assert_eq!(verify_net_zero(&s), Err(Error::NoSolution));
        let later = required_net_capacity(5e9, &dt, &Const(40.0), None, t0(), t0() + 15.0).unwrap();
        assert!(later.is_solved());
    }

    #[test]
    fn zero_target_needs_zero_capacity() {
        let s = required_net_capacity(0.0, &Const(100.0), &Const(40.0), None, t0(), t0() + 10.0).unwrap();
        assert_eq!(s.capacity, Some(0.0));
    }

    #[test]
    fn one_dollar_margin_analytic() {
        // 10M USD over 10 years at 1 USD/t margin: 1 Mt/yr
        let curve = DiscountCurve::flat(as_of(), 0.0, 0.0).unwrap();
        let s = required_net_capacity(10e6, &Const(41.0), &Const(40.0), Some(&curve), t0(), t0() + 10.0)
            .unwrap();
        assert!((s.capacity.unwrap() - 1.0).abs() < 1e-12);
        assert!(relative_residual(&s).unwrap() < 1e-12);
    }

    #[test]
    fn negative_target_is_rejected() {
        assert!(required_net_capacity(-1.0, &Const(1.0), &Const(0.0), None, t0(), t0() + 1.0).is_err());
    }

    proptest! {
        #[test]
        fn capacity_linear_in_target_and_falls_with_higher_prices(
            npv in 1e6f64..1e11, k in 0.1f64..10.0, shift in 0.1f64..100.0,
        ) {
            let times: Vec<f64> = (0..=40).map(|i| t0() + i as f64).collect();
            let p: Vec<f64> = times.iter().map(|t| 10.0 + 5.0 * (t - t0())).collect();
            let up: Vec<f64> = p.iter().map(|v| v + shift).collect();
            let prices = TabulatedCurve::new(times.clone(), p).unwrap();
            let shifted = TabulatedCurve::new(times, up).unwrap();
            let curve = DiscountCurve::flat(as_of(), 0.03, 0.0).unwrap();
            let c = Const(60.0);
            let a = required_net_capacity(npv, &prices, &c, Some(&curve), t0(), t0() + 30.0).unwrap();
            let b = required_net_capacity(npv * k, &prices, &c, Some(&curve), t0(), t0() + 30.0).unwrap();
            let s = required_net_capacity(npv, &shifted, &c, Some(&curve), t0(), t0() + 30.0).unwrap();
            let (ca, cb, cs) = (a.capacity.unwrap(), b.capacity.unwrap(), s.capacity.unwrap());
            prop_assert!((cb - k * ca).abs() <= 1e-9 * cb);
            prop_assert!(cs <= ca);
            prop_assert!(relative_residual(&a).unwrap() < 1e-6);
        }
    }
}
