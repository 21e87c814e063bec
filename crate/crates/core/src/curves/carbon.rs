use alloc::vec::Vec;

use crate::calendar::YearTime;
use crate::curves::{InflationIndex, PriceCurve};
use crate::domain::ScenarioId;
use crate::{Error, Result};

/// Dollar vintage of raw scenario price series.
pub const SCENARIO_PRICE_BASE_YEAR: i32 = 2010;

/// Nominal carbon price path for one scenario.
///
/// Raw knots are real (base-year) dollars placed at `Y.0`. Each knot is
/// re-inflated to nominal and the curve is linear in nominal price between
/// knots. Outside the knots the real price of the nearest knot is held
/// constant and re-inflated, so `price(t) / cpi(t)` is flat there.
#[derive(Debug, Clone, PartialEq)]
pub struct CarbonPriceCurve {
    scenario: ScenarioId,
    times: Vec<YearTime>,
    nominal: Vec<f64>,
    index: InflationIndex,
    horizon: YearTime,
}

impl CarbonPriceCurve {
    pub fn build(
        raw: &[(i32, f64)],
        scenario: ScenarioId,
        index: &InflationIndex,
        horizon: YearTime,
    ) -> Result<Self> {
        Self::build_with_base_year(raw, SCENARIO_PRICE_BASE_YEAR, scenario, index, horizon)
    }

    pub fn build_with_base_year(
        raw: &[(i32, f64)],
        base_year: i32,
        scenario: ScenarioId,
        index: &InflationIndex,
        horizon: YearTime,
    ) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Empty("carbon price curve"));
        }
        if let Some(&(year, price)) = raw.iter().find(|k| !k.1.is_finite() || k.1 < 0.0) {
            return Err(Error::NegativePrice { year, price });
        }
        if raw.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::NonIncreasing("carbon price curve"));
        }
        let last = raw[raw.len() - 1].0 as f64;
        if !(horizon >= last) {
            return Err(Error::InvalidField {
                field: "horizon",
                reason: "must not precede the last scenario knot",
            });
        }
        let mut times = Vec::with_capacity(raw.len());
        let mut nominal = Vec::with_capacity(raw.len());
        for &(year, real) in raw {
            let t = year as f64;
            times.push(t);
            nominal.push(index.inflation_adjust(real, base_year, t)?);
        }
        Ok(CarbonPriceCurve {
            scenario,
            times,
            nominal,
            index: index.clone(),
            horizon,
        })
    }

    pub fn scenario(&self) -> &ScenarioId {
        &self.scenario
    }

    pub fn knots(&self) -> impl Iterator<Item = (YearTime, f64)> + '_ {
        self.times.iter().copied().zip(self.nominal.iter().copied())
    }
}

impl PriceCurve for CarbonPriceCurve {
    fn price(&self, t: YearTime) -> f64 {
        let last = self.times.len() - 1;
        if t >= self.times[last] {
            let t_last = self.times[last];
            return self.nominal[last] * self.index.level(t) / self.index.level(t_last);
        }
        if t <= self.times[0] {
            let t_first = self.times[0];
            return self.nominal[0] * self.index.level(t) / self.index.level(t_first);
        }
        super::interp_linear(&self.times, &self.nominal, t)
    }

    fn horizon(&self) -> YearTime {
        self.horizon
    }

    fn label(&self) -> &str {
        self.scenario.name()
    }
}
