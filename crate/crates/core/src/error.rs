use alloc::string::String;

use crate::domain::Currency;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid {field}: {reason}")]
    InvalidField {
        field: &'static str,
        reason: &'static str,
    },
    #[error("currency mismatch: {left} vs {right}")]
    CurrencyMismatch { left: Currency, right: Currency },
    #[error("{0} has no knots")]
    Empty(&'static str),
    #[error("{0} knots must be strictly increasing")]
    NonIncreasing(&'static str),
    #[error("{0} contains a non-finite value")]
    NonFinite(&'static str),
    #[error("inflation index has no level for year {0}")]
    MissingIndexYear(i32),
    #[error("negative carbon price {price} at year {year}")]
    NegativePrice { year: i32, price: f64 },
    #[error("{technology} is unavailable at {time:.4}")]
    Unavailable { technology: String, time: f64 },
    #[error("reversed interval [{start}, {end}]")]
    ReversedInterval { start: f64, end: f64 },
    #[error("curve horizon {available:.4} is shorter than required {needed:.4}")]
    CurveHorizon { needed: f64, available: f64 },
    #[error("annuity has zero present value")]
    ZeroAnnuity,
    #[error("net-zero problem has no solution")]
    NoSolution,
    #[error("pay date {0} precedes the curve as-of date")]
    PayDateBeforeAsOf(chrono::NaiveDate),
    #[error("unknown net-emissions technology {0}")]
    UnknownTechnology(String),
}
