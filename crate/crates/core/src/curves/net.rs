use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::calendar::YearTime;
use crate::curves::{InflationIndex, PriceCurve};
use crate::{Error, Result};

/// Dollar vintage of NET cost ranges.
pub const NET_COST_BASE_YEAR: i32 = 2011;

/// First year emergent technologies are available at utility scale.
pub const EMERGENT_FROM_YEAR: i32 = 2030;

/// One NET row: maturity year and a real cost range per tonne.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NetTechnology {
    pub name: String,
    pub mature_from: i32,
    pub cost_low: f64,
    pub cost_high: f64,
}

impl NetTechnology {
    pub fn new(name: &str, mature_from: i32, cost_low: f64, cost_high: f64) -> Self {
        NetTechnology {
            name: name.into(),
            mature_from,
            cost_low,
            cost_high,
        }
    }

    /// Utility-scale NET cost ranges in 2011 USD per tonne.
    pub fn reference_table() -> Vec<NetTechnology> {
        alloc::vec![
            NetTechnology::new("Forest", 2021, 5.0, 50.0),
            NetTechnology::new("BECCS", 2050, 100.0, 200.0),
            NetTechnology::new("DACCS", 2050, 100.0, 300.0),
            NetTechnology::new("Enhanced weathering", 2050, 50.0, 200.0),
            NetTechnology::new("Biochar", 2050, 30.0, 120.0),
            NetTechnology::new("Soil carbon", 2050, 0.0, 100.0),
        ]
    }
}

/// Which end of a NET cost range to price with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum NetBound {
    Low,
    High,
    Mid,
}

impl NetBound {
    /// Cost multiplier at the start of the emergent window.
    pub fn emergent_multiplier(self) -> f64 {
        match self {
            NetBound::Low => 6.0,
            NetBound::High => 3.0,
            NetBound::Mid => 4.5,
        }
    }

    pub fn base_cost(self, tech: &NetTechnology) -> f64 {
        match self {
            NetBound::Low => tech.cost_low,
            NetBound::High => tech.cost_high,
            NetBound::Mid => 0.5 * (tech.cost_low + tech.cost_high),
        }
    }
}

impl FromStr for NetBound {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "low" => Ok(NetBound::Low),
            "high" => Ok(NetBound::High),
            "mid" => Ok(NetBound::Mid),
            _ => Err(Error::InvalidField {
                field: "bound",
                reason: "expected low, high or mid",
            }),
        }
    }
}

impl fmt::Display for NetBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NetBound::Low => "low",
            NetBound::High => "high",
            NetBound::Mid => "mid",
        })
    }
}

/// Nominal cost per tonne sequestered for one NET.
///
/// Technologies mature by the emergent year are available from their
/// maturity year at their base cost. Others become available in the emergent
/// year at a multiple of their base cost that falls linearly to 1 at
/// maturity. The real cost is flat after maturity; all costs are re-inflated
/// from the 2011 vintage.
#[derive(Debug, Clone, PartialEq)]
pub struct NetCostCurve {
    technology: String,
    bound: NetBound,
    mature_from: i32,
    available_from: YearTime,
    base_cost: f64,
    initial_multiplier: f64,
    index: InflationIndex,
    base_level: f64,
}

impl NetCostCurve {
    pub fn build(tech: &NetTechnology, bound: NetBound, index: &InflationIndex) -> Result<Self> {
        if !(tech.cost_low >= 0.0 && tech.cost_high >= tech.cost_low) {
            return Err(Error::InvalidField {
                field: "net cost",
                reason: "expected 0 <= low <= high",
            });
        }
        if !index.has_year(NET_COST_BASE_YEAR) {
            return Err(Error::MissingIndexYear(NET_COST_BASE_YEAR));
        }
        let emergent = tech.mature_from > EMERGENT_FROM_YEAR;
        Ok(NetCostCurve {
            technology: tech.name.clone(),
            bound,
            mature_from: tech.mature_from,
            available_from: if emergent {
                EMERGENT_FROM_YEAR as f64
            } else {
                tech.mature_from as f64
            },
            base_cost: bound.base_cost(tech),
            initial_multiplier: if emergent {
                bound.emergent_multiplier()
            } else {
                1.0
            },
            index: index.clone(),
            base_level: index.level(NET_COST_BASE_YEAR as f64),
        })
    }

    pub fn technology(&self) -> &str {
        &self.technology
    }

    pub fn bound(&self) -> NetBound {
        self.bound
    }

    pub fn mature_from(&self) -> i32 {
        self.mature_from
    }

    pub fn is_available(&self, t: YearTime) -> bool {
        t >= self.available_from
    }

    /// Emergent-technology multiplier on the real base cost.
    pub fn multiplier(&self, t: YearTime) -> f64 {
        let start = self.available_from;
        let end = self.mature_from as f64;
        if self.initial_multiplier == 1.0 || t >= end {
            1.0
        } else if t <= start {
            self.initial_multiplier
        } else {
            self.initial_multiplier + (1.0 - self.initial_multiplier) * (t - start) / (end - start)
        }
    }

    /// Real (base-vintage) cost at `t`, ignoring availability.
    pub fn real_cost(&self, t: YearTime) -> f64 {
        self.base_cost * self.multiplier(t)
    }

    /// Nominal cost at `t`.
    pub fn cost(&self, t: YearTime) -> Result<f64> {
        if !self.is_available(t) {
            return Err(Error::Unavailable {
                technology: self.technology.clone(),
                time: t,
            });
        }
        Ok(self.price(t))
    }
}

impl PriceCurve for NetCostCurve {
    /// Nominal cost without the availability check.
    fn price(&self, t: YearTime) -> f64 {
        self.real_cost(t) * self.index.level(t) / self.base_level
    }

    fn available_from(&self) -> YearTime {
        self.available_from
    }

    fn label(&self) -> &str {
        &self.technology
    }
}

/// Cheapest available curve at `t`; ties go to the earlier curve.
pub fn cheapest_net(t: YearTime, curves: &[NetCostCurve]) -> Result<(&NetCostCurve, f64)> {
    let mut best: Option<(&NetCostCurve, f64)> = None;
    for curve in curves.iter().filter(|c| c.is_available(t)) {
        let cost = curve.price(t);
        if best.is_none_or(|(_, b)| cost < b) {
            best = Some((curve, cost));
        }
    }
    best.ok_or_else(|| Error::Unavailable {
        technology: String::from("any NET"),
        time: t,
    })
}
