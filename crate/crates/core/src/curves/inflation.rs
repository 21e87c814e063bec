use alloc::vec::Vec;

use crate::calendar::YearTime;
use crate::curves::interp_linear;
use crate::{Error, Result};

/// Annual CPI levels plus a swap-implied projection.
///
/// The level for year `Y` sits at `t = Y.0`; within the history the index is
/// interpolated geometrically. Past the last historical year the index grows
/// at the zero-coupon inflation swap rate for the elapsed tenor (linear in
/// tenor between quotes), held flat at the longest quoted rate beyond it.
#[derive(Debug, Clone, PartialEq)]
pub struct InflationIndex {
    years: Vec<i32>,
    levels: Vec<f64>,
    swap_tenors: Vec<f64>,
    swap_rates: Vec<f64>,
}

impl InflationIndex {
    /// `history` is `(year, level)`; `swaps` is `(tenor_years, rate)`. No swaps
    /// means zero projected inflation.
    pub fn new(history: &[(i32, f64)], swaps: &[(f64, f64)]) -> Result<Self> {
        if history.is_empty() {
            return Err(Error::Empty("inflation index"));
        }
        if history.iter().any(|&(_, l)| !(l > 0.0) || !l.is_finite()) {
            return Err(Error::InvalidField {
                field: "index",
                reason: "levels must be finite and > 0",
            });
        }
        if history.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::NonIncreasing("inflation index"));
        }
        if swaps
            .iter()
            .any(|&(t, r)| !t.is_finite() || !r.is_finite() || r <= -1.0)
        {
            return Err(Error::NonFinite("inflation swaps"));
        }
        if swaps.windows(2).any(|w| !(w[1].0 > w[0].0)) || swaps.first().is_some_and(|s| s.0 <= 0.0)
        {
            return Err(Error::NonIncreasing("inflation swaps"));
        }
        Ok(InflationIndex {
            years: history.iter().map(|h| h.0).collect(),
            levels: history.iter().map(|h| h.1).collect(),
            swap_tenors: swaps.iter().map(|s| s.0).collect(),
            swap_rates: swaps.iter().map(|s| s.1).collect(),
        })
    }

    /// Index starting at 100 in `base_year` and compounding at `annual_rate`,
    /// with every year up to `base_year + 200` on record.
    pub fn constant_rate(base_year: i32, annual_rate: f64) -> Self {
        let history: Vec<(i32, f64)> = (0..=200)
            .map(|k| (base_year + k, 100.0 * libm::pow(1.0 + annual_rate, k as f64)))
            .collect();
        Self::new(&history, &[(1.0, annual_rate)]).expect("valid constant index")
    }

    pub fn first_year(&self) -> i32 {
        self.years[0]
    }

    pub fn last_year(&self) -> i32 {
        self.years[self.years.len() - 1]
    }

    pub fn has_year(&self, year: i32) -> bool {
        self.years.binary_search(&year).is_ok()
    }

    fn projected_rate(&self, tenor: f64) -> f64 {
        if self.swap_tenors.is_empty() {
            0.0
        } else {
            interp_linear(&self.swap_tenors, &self.swap_rates, tenor)
        }
    }

    /// Index level at `t`. Flat before the first historical year.
    pub fn level(&self, t: YearTime) -> f64 {
        let last = self.years.len() - 1;
        let last_t = self.years[last] as f64;
        if t >= last_t {
            let tenor = t - last_t;
            if tenor == 0.0 {
                return self.levels[last];
            }
            let rate = self.projected_rate(tenor);
            return self.levels[last] * libm::pow(1.0 + rate, tenor);
        }
        if t <= self.years[0] as f64 {
            return self.levels[0];
        }
        let i = self.years.partition_point(|&y| (y as f64) <= t) - 1;
        let (t0, t1) = (self.years[i] as f64, self.years[i + 1] as f64);
        let w = (t - t0) / (t1 - t0);
        self.levels[i] * libm::pow(self.levels[i + 1] / self.levels[i], w)
    }

    /// Converts `amount` in `base_year` dollars to nominal dollars at `target`.
    pub fn inflation_adjust(&self, amount: f64, base_year: i32, target: YearTime) -> Result<f64> {
        Ok(amount * self.ratio(base_year, target)?)
    }

    /// `level(target) / level(base_year)`.
    pub fn ratio(&self, base_year: i32, target: YearTime) -> Result<f64> {
        if !self.has_year(base_year) {
            return Err(Error::MissingIndexYear(base_year));
        }
        if target < self.years[0] as f64 {
            return Err(Error::MissingIndexYear(libm::floor(target) as i32));
        }
        Ok(self.level(target) / self.level(base_year as f64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn same_year_is_identity() {
        let idx = InflationIndex::new(&[(2010, 100.0), (2021, 125.0)], &[]).unwrap();
        assert_eq!(idx.inflation_adjust(100.0, 2010, 2010.0).unwrap(), 100.0);
        assert_eq!(idx.inflation_adjust(100.0, 2021, 2021.0).unwrap(), 100.0);
    }

    #[test]
    fn ratio_definition() {
        let idx = InflationIndex::new(&[(2010, 100.0), (2021, 125.0)], &[]).unwrap();
        assert!((idx.inflation_adjust(100.0, 2010, 2021.0).unwrap() - 125.0).abs() < 1e-12);
        // zero projected inflation without swaps
        assert!((idx.level(2040.0) - 125.0).abs() < 1e-12);
    }

    #[test]
    fn missing_base_year_is_an_error() {
        let idx = InflationIndex::new(&[(2010, 100.0), (2021, 125.0)], &[]).unwrap();
        assert_eq!(
            idx.inflation_adjust(1.0, 2011, 2021.0),
            Err(Error::MissingIndexYear(2011))
        );
        assert!(idx.inflation_adjust(1.0, 2010, 2005.0).is_err());
    }

    #[test]
    fn projection_is_flat_at_longest_swap_rate() {
        let idx =
            InflationIndex::new(&[(2021, 100.0)], &[(1.0, 0.03), (10.0, 0.02)]).unwrap();
        let at10 = idx.level(2031.0);
        assert!((at10 - 100.0 * 1.02f64.powi(10)).abs() < 1e-9);
        let at30 = idx.level(2051.0);
        assert!((at30 - 100.0 * 1.02f64.powi(30)).abs() < 1e-9);
        let at1 = idx.level(2022.0);
        assert!((at1 - 103.0).abs() < 1e-9);
    }

    #[test]
    fn history_is_geometric_between_years() {
        let idx = InflationIndex::new(&[(2010, 100.0), (2012, 121.0)], &[]).unwrap();
        assert!((idx.level(2011.0) - 110.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_history() {
        assert!(InflationIndex::new(&[], &[]).is_err());
        assert!(InflationIndex::new(&[(2010, 0.0)], &[]).is_err());
        assert!(InflationIndex::new(&[(2011, 1.0), (2010, 1.0)], &[]).is_err());
    }

    proptest! {
        #[test]
        fn adjustment_is_additive(a in 0.0f64..1e6, b in 0.0f64..1e6, t in 2010.0f64..2100.0) {
            let idx = InflationIndex::new(&[(2010, 100.0), (2015, 108.0), (2021, 126.0)],
                                          &[(2.0, 0.025), (30.0, 0.022)]).unwrap();
            let lhs = idx.inflation_adjust(a + b, 2010, t).unwrap();
            let rhs = idx.inflation_adjust(a, 2010, t).unwrap() + idx.inflation_adjust(b, 2010, t).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(1.0));
        }
    }
}
