//! Piecewise-constant carbon emission profiles over a plant's life.
//!
//! A project runs through four contiguous phases starting at the as-of date:
//! plan (no emissions), build (`carbon_to_build` spread evenly), operate
//! (`carbon_per_year`) and deconstruct (half the build time). Profile rates
//! are tonnes CO2e per year; technology inputs are megatonnes.

use alloc::vec::Vec;
use core::fmt;

use chrono::NaiveDate;

use crate::calendar::{decimal_year, YearTime, MONTHS_PER_YEAR};
use crate::domain::TechnologyCase;
use crate::{Error, Result};

/// Default deconstruction carbon as a fraction of construction carbon.
pub const DEFAULT_DECONSTRUCT_FRACTION: f64 = 0.5;

const TONNES_PER_MT: f64 = 1e6;
const HOURS_PER_YEAR: f64 = 8760.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Phase {
    Plan,
    Build,
    Operate,
    Deconstruct,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Plan => "plan",
            Phase::Build => "build",
            Phase::Operate => "operate",
            Phase::Deconstruct => "deconstruct",
        })
    }
}

/// Constant emission rate (t CO2e / year) on `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Segment {
    pub start: YearTime,
    pub end: YearTime,
    pub rate: f64,
    pub phase: Phase,
}

impl Segment {
    pub fn duration(&self) -> f64 {
        self.end - self.start
    }

    /// Tonnes emitted within `[t0, t1]`.
    pub fn overlap_total(&self, t0: YearTime, t1: YearTime) -> f64 {
        let a = self.start.max(t0);
        let b = self.end.min(t1);
        if b > a {
            self.rate * (b - a)
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EmissionProfile {
    segments: Vec<Segment>,
}

impl EmissionProfile {
    /// Contiguous, non-overlapping, non-negative segments.
    pub fn from_segments(segments: Vec<Segment>) -> Result<Self> {
        for s in &segments {
            if !(s.rate >= 0.0) || !s.rate.is_finite() {
                return Err(Error::InvalidField {
                    field: "rate",
                    reason: "emission rates must be finite and >= 0",
                });
            }
            if !(s.end > s.start) {
                return Err(Error::NonIncreasing("emission segment"));
            }
        }
        if segments.windows(2).any(|w| w[1].start != w[0].end) {
            return Err(Error::InvalidField {
                field: "segments",
                reason: "must be contiguous",
            });
        }
        Ok(EmissionProfile { segments })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn start(&self) -> Option<YearTime> {
        self.segments.first().map(|s| s.start)
    }

    pub fn end(&self) -> Option<YearTime> {
        self.segments.last().map(|s| s.end)
    }

    pub fn phase(&self, phase: Phase) -> Option<&Segment> {
        self.segments.iter().find(|s| s.phase == phase)
    }

    /// End of the operate phase, or of the last phase before it.
    pub fn end_of_operation(&self) -> Option<YearTime> {
        self.segments
            .iter()
            .rev()
            .find(|s| s.phase <= Phase::Operate)
            .map(|s| s.end)
    }

    pub fn rate_at(&self, t: YearTime) -> f64 {
        self.segments
            .iter()
            .find(|s| s.start <= t && t < s.end)
            .map_or(0.0, |s| s.rate)
    }

    /// Exact integral of the profile over `[t0, t1]`, in tonnes.
    pub fn total_emissions(&self, t0: YearTime, t1: YearTime) -> Result<f64> {
        if t1 < t0 {
            return Err(Error::ReversedInterval { start: t0, end: t1 });
        }
        Ok(self.segments.iter().map(|s| s.overlap_total(t0, t1)).sum())
    }

    pub fn lifetime_total(&self) -> f64 {
        self.segments.iter().map(|s| s.rate * s.duration()).sum()
    }

    /// Profile with every rate multiplied by `factor >= 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::from_segments(
            self.segments
                .iter()
                .map(|s| Segment {
                    rate: s.rate * factor,
                    ..*s
                })
                .collect(),
        )
    }
}

/// Profile for `case` with the default deconstruction assumption.
pub fn build_profile(case: &TechnologyCase, as_of: NaiveDate) -> Result<EmissionProfile> {
    build_profile_with(case, as_of, DEFAULT_DECONSTRUCT_FRACTION)
}

/// Profile for `case`; `deconstruct_fraction` of build carbon is emitted over
/// deconstruction unless the case carries its own figure.
pub fn build_profile_with(
    case: &TechnologyCase,
    as_of: NaiveDate,
    deconstruct_fraction: f64,
) -> Result<EmissionProfile> {
    let case = case.clone().validate()?;
    if !(deconstruct_fraction >= 0.0) {
        return Err(Error::InvalidField {
            field: "deconstruct_fraction",
            reason: "must be >= 0",
        });
    }
    let deconstruct_mt = case
        .deconstruct_carbon_mt
        .unwrap_or(deconstruct_fraction * case.carbon_to_build_mt);
    if case.build_months == 0.0 && (case.carbon_to_build_mt > 0.0 || deconstruct_mt > 0.0) {
        return Err(Error::InvalidField {
            field: "build",
            reason: "zero-length build cannot carry construction carbon",
        });
    }

    let plan_years = case.develop_months / MONTHS_PER_YEAR;
    let build_years = case.build_months / MONTHS_PER_YEAR;
    let decon_years = case.deconstruct_months() / MONTHS_PER_YEAR;
    let phases = [
        (Phase::Plan, plan_years, 0.0),
        (Phase::Build, build_years, case.carbon_to_build_mt),
        (Phase::Operate, case.lifespan_years, case.carbon_per_year_mt * case.lifespan_years),
        (Phase::Deconstruct, decon_years, deconstruct_mt),
    ];

    let mut t = decimal_year(as_of);
    let mut segments = Vec::with_capacity(phases.len());
    for (phase, years, total_mt) in phases {
        if years <= 0.0 {
            continue;
        }
        segments.push(Segment {
            start: t,
            end: t + years,
            rate: total_mt * TONNES_PER_MT / years,
            phase,
        });
        t += years;
    }
    EmissionProfile::from_segments(segments)
}

/// Operating emissions (MT/year) from plant size, capacity factor and an
/// emission factor in t CO2e per MWh.
pub fn operating_emissions_check(size_mw: f64, capacity_factor: f64, emission_factor: f64) -> f64 {
    size_mw * capacity_factor * HOURS_PER_YEAR * emission_factor / TONNES_PER_MT
}
