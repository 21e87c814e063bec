use alloc::vec::Vec;

use chrono::NaiveDate;

use crate::calendar::{anniversary, date_from_decimal_year, decimal_year};
use crate::curves::DiscountCurve;
use crate::pricing::DayCount;
use crate::{Error, Result};

/// Annuity paying `notional * accrual` on each pay date.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnuitySpec {
    notional: f64,
    pay_dates: Vec<NaiveDate>,
    daycount: DayCount,
}

impl AnnuitySpec {
    pub fn new(notional: f64, pay_dates: Vec<NaiveDate>, daycount: DayCount) -> Result<Self> {
        if !(notional > 0.0) {
            return Err(Error::InvalidField {
                field: "notional",
                reason: "must be > 0",
            });
        }
        if pay_dates.is_empty() {
            return Err(Error::Empty("annuity schedule"));
        }
        if pay_dates.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::NonIncreasing("annuity schedule"));
        }
        Ok(AnnuitySpec {
            notional,
            pay_dates,
            daycount,
        })
    }

    /// Actual/Actual annual schedule on start-date anniversaries, ending with a
    /// short stub when `years` is fractional.
    pub fn annual(start: NaiveDate, years: f64, notional: f64) -> Result<Self> {
        if !(years > 0.0) {
            return Err(Error::InvalidField {
                field: "maturity",
                reason: "must be > 0",
            });
        }
        let whole = libm::floor(years + 1e-9) as u32;
        let mut dates: Vec<NaiveDate> = (1..=whole).map(|k| anniversary(start, k)).collect();
        let end = date_from_decimal_year(decimal_year(start) + years);
        if dates.last().is_none_or(|&last| end > last) {
            dates.push(end);
        }
        Self::new(notional, dates, DayCount::ActualActual)
    }

    pub fn notional(&self) -> f64 {
        self.notional
    }

    pub fn pay_dates(&self) -> &[NaiveDate] {
        &self.pay_dates
    }

    pub fn with_notional(&self, notional: f64) -> Result<Self> {
        Self::new(notional, self.pay_dates.clone(), self.daycount)
    }
}

/// `N * sum_i D(t_i) * dc(t_{i-1}, t_i)` with `t_0` the curve as-of date.
pub fn annuity_npv(spec: &AnnuitySpec, curve: &DiscountCurve) -> Result<f64> {
    let mut prev = curve.as_of();
    let mut sum = 0.0;
    for &date in &spec.pay_dates {
        if date < curve.as_of() {
            return Err(Error::PayDateBeforeAsOf(date));
        }
        sum += curve.discount_date(date) * spec.daycount.year_fraction(prev, date)?;
        prev = date;
    }
    Ok(spec.notional * sum)
}
