//! Value types shared by every module.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use chrono::NaiveDate;

use crate::calendar::{decimal_year, YearTime};
use crate::{Error, Result};

/// One generation technology: sizing, timing, cost and emission inputs.
///
/// Carbon quantities are megatonnes CO2e; `carbon_per_year` applies during
/// operation and `carbon_to_build` is the total over the build phase.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TechnologyCase {
    pub case_id: String,
    pub name: String,
    pub size_mw: f64,
    pub capital_cost_busd: f64,
    pub develop_months: f64,
    pub build_months: f64,
    pub lifespan_years: f64,
    pub capacity_factor: f64,
    pub carbon_per_year_mt: f64,
    pub carbon_to_build_mt: f64,
    /// Total deconstruction carbon. `None` falls back to the configured
    /// fraction of `carbon_to_build_mt`.
    #[cfg_attr(feature = "serde", serde(default))]
    pub deconstruct_carbon_mt: Option<f64>,
}

impl TechnologyCase {
    /// Returns the case unchanged iff every field invariant holds, otherwise
    /// the first violation by field name.
    pub fn validate(self) -> Result<Self> {
        fn check(ok: bool, field: &'static str, reason: &'static str) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidField { field, reason })
            }
        }
        // NaN fails every comparison below, so it is rejected too.
        check(self.size_mw > 0.0, "size", "must be > 0")?;
        check(self.capital_cost_busd > 0.0, "capital_cost", "must be > 0")?;
        check(self.develop_months >= 0.0, "develop", "must be >= 0")?;
        check(self.build_months >= 0.0, "build", "must be >= 0")?;
        check(self.lifespan_years > 0.0, "lifespan", "must be > 0")?;
        check(
            (0.0..=1.0).contains(&self.capacity_factor),
            "capacity_factor",
            "must be within [0, 1]",
        )?;
        check(self.carbon_per_year_mt >= 0.0, "carbon_per_year", "must be >= 0")?;
        check(self.carbon_to_build_mt >= 0.0, "carbon_to_build", "must be >= 0")?;
        if let Some(decon) = self.deconstruct_carbon_mt {
            check(decon >= 0.0, "deconstruct_carbon", "must be >= 0")?;
        }
        Ok(self)
    }

    /// Deconstruction takes half the build time.
    pub fn deconstruct_months(&self) -> f64 {
        self.build_months / 2.0
    }

    pub fn capital_cost_usd(&self) -> f64 {
        self.capital_cost_busd * 1e9
    }

    /// Months from project start to end of operation.
    pub fn months_to_end_of_operation(&self) -> f64 {
        self.develop_months + self.build_months + self.lifespan_years * 12.0
    }

    pub fn is_zero_operating_emission(&self) -> bool {
        self.carbon_per_year_mt == 0.0
    }
}

/// Three-letter currency code. `XCE` denotes tonnes of CO2e.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Currency([u8; 3]);

impl Currency {
    pub const USD: Currency = Currency(*b"USD");
    pub const XCE: Currency = Currency(*b"XCE");

    pub fn from_code(code: &str) -> Result<Self> {
        let bytes = code.as_bytes();
        if bytes.len() != 3 || !bytes.iter().all(u8::is_ascii_uppercase) {
            return Err(Error::InvalidField {
                field: "currency",
                reason: "expected three upper-case ASCII letters",
            });
        }
        Ok(Currency([bytes[0], bytes[1], bytes[2]]))
    }

    pub fn code(&self) -> &str {
        core::str::from_utf8(&self.0).expect("ascii code")
    }

    pub fn is_carbon(&self) -> bool {
        *self == Self::XCE
    }
}

impl fmt::Display for Currency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl fmt::Debug for Currency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Currency({})", self.code())
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Currency {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Currency {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let code = <alloc::borrow::Cow<'de, str>>::deserialize(d)?;
        Currency::from_code(&code).map_err(serde::de::Error::custom)
    }
}

/// An amount in a cash currency or in `XCE` tonnes.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Money {
    pub amount: f64,
    pub currency: Currency,
}

impl Money {
    pub fn new(amount: f64, currency: Currency) -> Self {
        Money { amount, currency }
    }

    pub fn usd(amount: f64) -> Self {
        Money::new(amount, Currency::USD)
    }

    pub fn xce(tonnes: f64) -> Self {
        Money::new(tonnes, Currency::XCE)
    }

    fn same_currency(&self, other: &Money) -> Result<()> {
        if self.currency == other.currency {
            Ok(())
        } else {
            Err(Error::CurrencyMismatch {
                left: self.currency,
                right: other.currency,
            })
        }
    }

    pub fn checked_add(self, other: Money) -> Result<Money> {
        self.same_currency(&other)?;
        Ok(Money::new(self.amount + other.amount, self.currency))
    }

    pub fn checked_sub(self, other: Money) -> Result<Money> {
        self.same_currency(&other)?;
        Ok(Money::new(self.amount - other.amount, self.currency))
    }

    pub fn scale(self, factor: f64) -> Money {
        Money::new(self.amount * factor, self.currency)
    }

    /// Converts an `XCE` amount to USD at a carbon price in USD per tonne.
    pub fn xce_to_usd(self, usd_per_tonne: f64) -> Result<Money> {
        if !self.currency.is_carbon() {
            return Err(Error::CurrencyMismatch {
                left: self.currency,
                right: Currency::XCE,
            });
        }
        Ok(Money::usd(self.amount * usd_per_tonne))
    }
}

/// Carbon price scenario name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScenarioId {
    NetZero2050,
    Ndc,
    DelayedTransition,
    Custom(String),
}

impl ScenarioId {
    /// Canonical identifier used in files.
    pub fn name(&self) -> &str {
        match self {
            ScenarioId::NetZero2050 => "NetZero2050",
            ScenarioId::Ndc => "NDC",
            ScenarioId::DelayedTransition => "DelayedTransition",
            ScenarioId::Custom(name) => name,
        }
    }

    /// Row label used in rendered tables.
    pub fn label(&self) -> &str {
        match self {
            ScenarioId::NetZero2050 => "net-zero 2050",
            ScenarioId::Ndc => "NDCs",
            ScenarioId::DelayedTransition => "Delayed transition",
            ScenarioId::Custom(name) => name,
        }
    }
}

impl FromStr for ScenarioId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(Error::InvalidField {
                field: "scenario",
                reason: "name must be nonempty",
            });
        }
        let key: String = trimmed
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        Ok(match key.as_str() {
            "netzero2050" => ScenarioId::NetZero2050,
            "ndc" | "ndcs" => ScenarioId::Ndc,
            "delayedtransition" => ScenarioId::DelayedTransition,
            _ => ScenarioId::Custom(String::from(trimmed)),
        })
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Regular grid of dated points starting at the as-of date.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DateGrid {
    pub as_of: NaiveDate,
    /// Step as a fraction of a year.
    pub step: f64,
    pub horizon: f64,
}

impl DateGrid {
    pub fn monthly(as_of: NaiveDate, horizon: f64) -> Result<Self> {
        Self::new(as_of, 1.0 / 12.0, horizon)
    }

    pub fn new(as_of: NaiveDate, step: f64, horizon: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::InvalidField {
                field: "step",
                reason: "must be > 0",
            });
        }
        if !(horizon > 0.0) {
            return Err(Error::InvalidField {
                field: "horizon",
                reason: "must be > 0",
            });
        }
        Ok(DateGrid {
            as_of,
            step,
            horizon,
        })
    }

    pub fn start(&self) -> YearTime {
        decimal_year(self.as_of)
    }

    /// Points `as_of + k * step` for `k * step <= horizon` (strictly increasing).
    pub fn points(&self) -> Vec<YearTime> {
        let start = self.start();
        let n = libm::floor(self.horizon / self.step + 1e-9) as usize;
        (0..=n).map(|k| start + k as f64 * self.step).collect()
    }
}
