//! Date <-> time-coordinate conversion.
//!
//! A [`YearTime`] is a decimal calendar year: `2022.0` is 2022-01-01 and
//! `y + (d - 1) / days_in_year(y)` is day-of-year `d`. Differences of decimal
//! years are ISDA Actual/Actual year fractions.

use chrono::{Datelike, Months, NaiveDate};

/// Decimal calendar year.
pub type YearTime = f64;

pub const MONTHS_PER_YEAR: f64 = 12.0;

pub fn is_leap_year(year: i32) -> bool {
    (year % 4 == 0 && year % 100 != 0) || year % 400 == 0
}

pub fn days_in_year(year: i32) -> u32 {
    if is_leap_year(year) {
        366
    } else {
        365
    }
}

pub fn decimal_year(date: NaiveDate) -> YearTime {
    let year = date.year();
    year as f64 + (date.ordinal() - 1) as f64 / days_in_year(year) as f64
}

/// Nearest calendar date to a decimal year (round half up on the day).
pub fn date_from_decimal_year(t: YearTime) -> NaiveDate {
    let year = libm::floor(t) as i32;
    let days = days_in_year(year);
    let mut ordinal = libm::round((t - year as f64) * days as f64) as u32 + 1;
    let mut year = year;
    if ordinal > days {
        ordinal -= days;
        year += 1;
    }
    NaiveDate::from_yo_opt(year, ordinal).expect("ordinal within year")
}

/// `date` moved forward by whole months, clamped to month end.
pub fn add_months(date: NaiveDate, months: u32) -> NaiveDate {
    date.checked_add_months(Months::new(months))
        .expect("date within chrono range")
}

/// `date` moved forward by whole years on the same month/day (Feb 29 clamps).
pub fn anniversary(date: NaiveDate, years: u32) -> NaiveDate {
    add_months(date, years * 12)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(y: i32, m: u32, day: u32) -> NaiveDate {
        NaiveDate::from_ymd_opt(y, m, day).unwrap()
    }

    #[test]
    fn decimal_year_start_of_year_is_integral() {
        assert_eq!(decimal_year(d(2022, 1, 1)), 2022.0);
        assert_eq!(decimal_year(d(2024, 1, 1)), 2024.0);
    }

    #[test]
    fn decimal_year_round_trips_every_day_of_a_leap_cycle() {
        let mut date = d(2020, 1, 1);
        while date < d(2025, 1, 1) {
            assert_eq!(date_from_decimal_year(decimal_year(date)), date);
            date = date.succ_opt().unwrap();
        }
    }

    #[test]
    fn anniversary_clamps_leap_day() {
        assert_eq!(anniversary(d(2024, 2, 29), 1), d(2025, 2, 28));
        assert_eq!(anniversary(d(2021, 11, 30), 20), d(2041, 11, 30));
    }
}
