use core::fmt;

use chrono::{Datelike, NaiveDate};

use crate::calendar::{days_in_year, decimal_year};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum DayCount {
    /// ISDA Actual/Actual: days in each calendar year over that year's length.
    #[cfg_attr(feature = "serde", serde(rename = "ACT/ACT"))]
    ActualActual,
    #[cfg_attr(feature = "serde", serde(rename = "ACT/360"))]
    Actual360,
}

impl DayCount {
    pub fn year_fraction(self, d1: NaiveDate, d2: NaiveDate) -> Result<f64> {
        if d2 < d1 {
            return Err(Error::ReversedInterval {
                start: decimal_year(d1),
                end: decimal_year(d2),
            });
        }
        Ok(match self {
            DayCount::ActualActual => act_act(d1, d2),
            DayCount::Actual360 => (d2 - d1).num_days() as f64 / 360.0,
        })
    }
}

fn act_act(d1: NaiveDate, d2: NaiveDate) -> f64 {
    let (y1, y2) = (d1.year(), d2.year());
    let part = |d: NaiveDate| d.ordinal0() as f64 / days_in_year(d.year()) as f64;
    if y1 == y2 {
        return (d2 - d1).num_days() as f64 / days_in_year(y1) as f64;
    }
    (1.0 - part(d1)) + (y2 - y1 - 1) as f64 + part(d2)
}

impl fmt::Display for DayCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DayCount::ActualActual => "ACT/ACT",
            DayCount::Actual360 => "ACT/360",
        })
    }
}

/// ISDA Actual/Actual year fraction.
pub fn year_fraction(d1: NaiveDate, d2: NaiveDate) -> Result<f64> {
    DayCount::ActualActual.year_fraction(d1, d2)
}
