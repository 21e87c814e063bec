use core::fmt;
use core::str::FromStr;

use crate::calendar::{date_from_decimal_year, YearTime};
use crate::curves::{DiscountCurve, PriceCurve};
use crate::domain::TechnologyCase;
use crate::emissions::EmissionProfile;
use crate::grid::monthly_trapezoid;
use crate::pricing::{annuity_npv, AnnuitySpec};
use crate::{Error, Result};

/// Financing length. Every choice is cut back to the end of operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Maturity {
    Years(u32),
    /// To end of operation.
    All,
}

impl Maturity {
    pub const STANDARD: [Maturity; 4] = [
        Maturity::Years(10),
        Maturity::Years(20),
        Maturity::Years(30),
        Maturity::All,
    ];
}

impl fmt::Display for Maturity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Maturity::Years(y) => write!(f, "{y}y"),
            Maturity::All => f.write_str("All"),
        }
    }
}

impl FromStr for Maturity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("all") {
            return Ok(Maturity::All);
        }
        let digits = s.strip_suffix(['y', 'Y']).unwrap_or(s);
        match digits.parse::<u32>() {
            Ok(y) if y > 0 => Ok(Maturity::Years(y)),
            _ => Err(Error::InvalidField {
                field: "maturity",
                reason: "expected <years>y or All",
            }),
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Maturity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Maturity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let s = <alloc::borrow::Cow<'de, str>>::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `[start, end]` of the financing: from project start for the chosen length,
/// cut at the end of operation.
pub fn financing_window(profile: &EmissionProfile, maturity: Maturity) -> Result<(YearTime, YearTime)> {
    let start = profile.start().ok_or(Error::Empty("emission profile"))?;
    let end_of_operation = profile
        .end_of_operation()
        .ok_or(Error::Empty("emission profile"))?;
    let end = match maturity {
        Maturity::Years(y) => (start + y as f64).min(end_of_operation),
        Maturity::All => end_of_operation,
    };
    Ok((start, end))
}

/// Present value of buying offsets for every tonne emitted in `[t0, t1]`.
///
/// Each constant-rate segment contributes `rate * int D(t) p(t) dt`, with the
/// integral taken by the trapezoid rule on monthly steps.
pub fn carbon_cost_npv(
    profile: &EmissionProfile,
    prices: &impl PriceCurve,
    curve: &DiscountCurve,
    t0: YearTime,
    t1: YearTime,
) -> Result<f64> {
    if t1 < t0 {
        return Err(Error::ReversedInterval { start: t0, end: t1 });
    }
    if t1 > prices.horizon() {
        return Err(Error::CurveHorizon {
            needed: t1,
            available: prices.horizon(),
        });
    }
    let mut npv = 0.0;
    for seg in profile.segments() {
        let a = seg.start.max(t0);
        let b = seg.end.min(t1);
        if b <= a || seg.rate == 0.0 {
            continue;
        }
        npv += seg.rate * monthly_trapezoid(a, b, |t| curve.discount(t) * prices.price(t));
    }
    Ok(npv)
}

/// Carbon cost over the financing as a running spread (bps) on an annuity
/// whose notional is the capital cost.
pub fn carbon_spread_bps(
    case: &TechnologyCase,
    profile: &EmissionProfile,
    prices: &impl PriceCurve,
    curve: &DiscountCurve,
    maturity: Maturity,
) -> Result<f64> {
    let (t0, t1) = financing_window(profile, maturity)?;
    let npv = carbon_cost_npv(profile, prices, curve, t0, t1)?;
    let annuity = AnnuitySpec::annual(date_from_decimal_year(t0), t1 - t0, case.capital_cost_usd())?;
    let annuity_value = annuity_npv(&annuity, curve)?;
    if annuity_value == 0.0 {
        return Err(Error::ZeroAnnuity);
    }
    Ok(1e4 * npv / annuity_value)
}
