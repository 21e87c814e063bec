//! Pricing core for carbon-linked project finance.
//!
//! Every financing termsheet gets a second, linked leg of carbon flows
//! denominated in the pseudo-currency `XCE` (tonnes CO2e). From those flows
//! this crate prices:
//!
//! - the cost of enabled carbon as a running spread on a capital-cost annuity
//!   ([`pricing`]),
//! - the cost of keeping sequestered carbon sequestered under a Poisson
//!   default-and-repurchase model ([`permanence`]),
//! - the constant negative-emissions capacity whose sale profits offset the
//!   carbon cost of the financing ([`netzero`]),
//! - stranded-asset recovery effects on financing spreads ([`pricing::credit`]).
//!
//! The crate is `no_std` and only needs `alloc`. All time arithmetic runs on a
//! single coordinate, the decimal calendar year (see [`calendar`]), so that the
//! difference of two coordinates is exactly the ISDA Actual/Actual year
//! fraction between the corresponding dates.

#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
#[macro_use]
extern crate std;

pub mod calendar;
pub mod curves;
pub mod domain;
pub mod emissions;
mod error;
pub(crate) mod grid;
pub mod netzero;
pub mod permanence;
pub mod pricing;
pub mod termsheet;
#[cfg(test)]
mod testing;

pub use error::{Error, Result};

pub use calendar::{date_from_decimal_year, decimal_year, YearTime};
pub use curves::{
    CarbonPriceCurve, DiscountCurve, InflationIndex, NetBound, NetCostCurve, NetTechnology,
    PriceCurve, TabulatedCurve,
};
pub use domain::{Currency, DateGrid, Money, ScenarioId, TechnologyCase};
pub use emissions::{EmissionProfile, Phase, Segment};
pub use netzero::NetZeroSolution;
pub use permanence::PermanenceModel;
pub use pricing::{AnnuitySpec, CreditParams, Maturity};
pub use termsheet::{LifecycleEvent, LinkedTermsheet};
