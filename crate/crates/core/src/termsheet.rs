//! Linked cash/XCE termsheets and their lifecycle events.
//!
//! Part 1 is the financing (a fixed-rate bullet bond from party A, the
//! financier, to party B, the project). Part 2 lists the dated carbon flows
//! the financing enables, in `XCE` tonnes per year. The carbon liability
//! travels with the money and returns to the project at redemption.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use chrono::NaiveDate;

use crate::calendar::{anniversary, date_from_decimal_year, decimal_year, YearTime};
use crate::domain::{Currency, Money, TechnologyCase};
use crate::emissions::{build_profile_with, Phase, DEFAULT_DECONSTRUCT_FRACTION};
use crate::pricing::DayCount;
use crate::{Error, Result};

pub const CEP_VERSION: &str = "1.0";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Party {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Parties {
    pub a: String,
    pub b: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CashFlowKind {
    Notional,
    Coupon,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CashFlow {
    pub date: NaiveDate,
    pub amount: Money,
    pub payer: Party,
    pub receiver: Party,
    pub kind: CashFlowKind,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CashLeg {
    pub notional: Money,
    pub coupon_bps: f64,
    pub day_count: DayCount,
    pub flows: Vec<CashFlow>,
}

/// Constant XCE rate (tonnes per year) over a phase.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct XceFlow {
    pub start: NaiveDate,
    pub end: NaiveDate,
    /// Exact period bounds on the decimal-year axis.
    pub start_time: YearTime,
    pub end_time: YearTime,
    pub rate: Money,
    pub phase: Phase,
}

impl XceFlow {
    fn total_within(&self, t0: YearTime, t1: YearTime) -> f64 {
        let a = self.start_time.max(t0);
        let b = self.end_time.min(t1);
        if b > a {
            self.rate.amount * (b - a)
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct XceLeg {
    pub size_mw: f64,
    pub flows: Vec<XceFlow>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LinkedTermsheet {
    pub cep_version: String,
    pub case_id: String,
    pub technology: String,
    pub parties: Parties,
    pub issue_date: NaiveDate,
    pub maturity_date: NaiveDate,
    pub issue_time: YearTime,
    pub maturity_time: YearTime,
    #[cfg_attr(feature = "serde", serde(rename = "part1"))]
    pub cash_leg: CashLeg,
    #[cfg_attr(feature = "serde", serde(rename = "part2"))]
    pub xce_leg: XceLeg,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermsheetParams {
    pub financing_years: u32,
    pub coupon_bps: f64,
    /// Defaults to the capital cost of the case.
    pub notional_usd: Option<f64>,
    pub deconstruct_fraction: f64,
}

impl TermsheetParams {
    pub fn new(financing_years: u32, coupon_bps: f64) -> Self {
        TermsheetParams {
            financing_years,
            coupon_bps,
            notional_usd: None,
            deconstruct_fraction: DEFAULT_DECONSTRUCT_FRACTION,
        }
    }
}

/// Builds the bond and its carbon leg. Financing starts at `as_of` and runs
/// `financing_years`, but never past the end of deconstruction. The XCE leg
/// always carries the whole profile.
pub fn generate_termsheet(
    case: &TechnologyCase,
    as_of: NaiveDate,
    params: &TermsheetParams,
) -> Result<LinkedTermsheet> {
    if params.financing_years == 0 {
        return Err(Error::InvalidField {
            field: "financing_years",
            reason: "must be > 0",
        });
    }
    let notional = params.notional_usd.unwrap_or(case.capital_cost_usd());
    if !(notional > 0.0) {
        return Err(Error::InvalidField {
            field: "notional",
            reason: "must be > 0",
        });
    }
    let profile = build_profile_with(case, as_of, params.deconstruct_fraction)?;
    let issue_time = decimal_year(as_of);
    let life_end = profile.end().unwrap_or(issue_time);
    let nominal_end = issue_time + params.financing_years as f64;
    let (maturity_time, maturity_date) = if nominal_end > life_end {
        (life_end, date_from_decimal_year(life_end))
    } else {
        (nominal_end, anniversary(as_of, params.financing_years))
    };

    let notional_usd = Money::usd(notional);
    let mut flows = Vec::new();
    flows.push(CashFlow {
        date: as_of,
        amount: notional_usd,
        payer: Party::A,
        receiver: Party::B,
        kind: CashFlowKind::Notional,
        description: String::from("initial notional"),
    });
    let day_count = DayCount::Actual360;
    let mut prev = as_of;
    let mut k = 1;
    loop {
        let date = anniversary(as_of, k).min(maturity_date);
        let accrual = day_count.year_fraction(prev, date)?;
        flows.push(CashFlow {
            date,
            amount: notional_usd.scale(params.coupon_bps * 1e-4 * accrual),
            payer: Party::B,
            receiver: Party::A,
            kind: CashFlowKind::Coupon,
            description: format!("coupon {k}"),
        });
        if date >= maturity_date {
            break;
        }
        prev = date;
        k += 1;
    }
    flows.push(CashFlow {
        date: maturity_date,
        amount: notional_usd,
        payer: Party::B,
        receiver: Party::A,
        kind: CashFlowKind::Notional,
        description: String::from("final notional"),
    });

    let xce_flows = profile
        .segments()
        .iter()
        .map(|s| XceFlow {
            start: date_from_decimal_year(s.start),
            end: date_from_decimal_year(s.end),
            start_time: s.start,
            end_time: s.end,
            rate: Money::xce(s.rate),
            phase: s.phase,
        })
        .collect();

    Ok(LinkedTermsheet {
        cep_version: String::from(CEP_VERSION),
        case_id: case.case_id.clone(),
        technology: case.name.clone(),
        parties: Parties {
            a: String::from("financier"),
            b: format!("project {}", case.case_id),
        },
        issue_date: as_of,
        maturity_date,
        issue_time,
        maturity_time,
        cash_leg: CashLeg {
            notional: notional_usd,
            coupon_bps: params.coupon_bps,
            day_count,
            flows,
        },
        xce_leg: XceLeg {
            size_mw: case.size_mw,
            flows: xce_flows,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum EventKind {
    NotionalExchange,
    Coupon,
    XceAccrual,
    Redemption,
    LiabilityReturn,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::NotionalExchange => "notional_exchange",
            EventKind::Coupon => "coupon",
            EventKind::XceAccrual => "xce_accrual",
            EventKind::Redemption => "redemption",
            EventKind::LiabilityReturn => "liability_return",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LifecycleEvent {
    pub date: NaiveDate,
    pub kind: EventKind,
    pub amount: Money,
}

/// Date-ordered events: notional exchange, coupons, XCE accrued within the
/// financing, redemption and the return of the remaining carbon liability.
pub fn lifecycle_schedule(ts: &LinkedTermsheet) -> Vec<LifecycleEvent> {
    schedule(ts, None)
}

/// As [`lifecycle_schedule`] for a project that defaults on `default_date`:
/// nothing (cash or carbon) happens after the default.
pub fn lifecycle_schedule_with_default(ts: &LinkedTermsheet, default_date: NaiveDate) -> Vec<LifecycleEvent> {
    schedule(ts, Some(default_date))
}

fn schedule(ts: &LinkedTermsheet, default_date: Option<NaiveDate>) -> Vec<LifecycleEvent> {
    let cutoff_date = default_date.map_or(ts.maturity_date, |d| d.min(ts.maturity_date));
    let cutoff_time = default_date.map_or(ts.maturity_time, |d| decimal_year(d).min(ts.maturity_time));
    let defaulted = cutoff_date < ts.maturity_date;

    let mut events = Vec::new();
    for flow in &ts.cash_leg.flows {
        if flow.date > cutoff_date {
            continue;
        }
        let kind = match flow.kind {
            CashFlowKind::Coupon => EventKind::Coupon,
            CashFlowKind::Notional if flow.payer == Party::A => EventKind::NotionalExchange,
            CashFlowKind::Notional => EventKind::Redemption,
        };
        events.push(LifecycleEvent {
            date: flow.date,
            kind,
            amount: flow.amount,
        });
    }
    for flow in &ts.xce_leg.flows {
        let end = flow.end_time.min(cutoff_time);
        if end <= flow.start_time.max(ts.issue_time) {
            continue;
        }
        let date = if end == cutoff_time { cutoff_date } else { flow.end };
        events.push(LifecycleEvent {
            date,
            kind: EventKind::XceAccrual,
            amount: Money::xce(flow.total_within(ts.issue_time, end)),
        });
    }
    if !defaulted && !ts.xce_leg.flows.is_empty() {
        let remaining = ts
            .xce_leg
            .flows
            .iter()
            .map(|f| f.total_within(ts.maturity_time, f64::INFINITY))
            .sum();
        events.push(LifecycleEvent {
            date: ts.maturity_date,
            kind: EventKind::LiabilityReturn,
            amount: Money::xce(remaining),
        });
    }

    events.sort_by_key(|e| (e.date, e.kind));
    let mut merged: Vec<LifecycleEvent> = Vec::with_capacity(events.len());
    for e in events {
        match merged.last_mut() {
            Some(last) if last.date == e.date && last.kind == e.kind => {
                last.amount.amount += e.amount.amount;
            }
            _ => merged.push(e),
        }
    }
    merged
}

/// Whole financing-window XCE as one flow on the issue date.
pub fn summarize_xce(ts: &LinkedTermsheet) -> (NaiveDate, Money) {
    let total = ts
        .xce_leg
        .flows
        .iter()
        .map(|f| f.total_within(ts.issue_time, ts.maturity_time))
        .sum();
    (ts.issue_date, Money::xce(total))
}

#[derive(Debug, Clone, PartialEq)]
pub enum TermsheetWarning {
    /// Net sequestration in a period; allowed but unusual.
    NegativeXce { index: usize },
}

/// Structural checks; returns soft warnings when the termsheet is usable.
pub fn validate(ts: &LinkedTermsheet) -> Result<Vec<TermsheetWarning>> {
    let flows = &ts.cash_leg.flows;
    let initial = flows
        .iter()
        .filter(|f| f.kind == CashFlowKind::Notional && f.payer == Party::A)
        .count();
    let terminal = flows
        .iter()
        .filter(|f| f.kind == CashFlowKind::Notional && f.payer == Party::B)
        .count();
    if initial != 1 || terminal != 1 {
        return Err(Error::InvalidField {
            field: "cash_leg",
            reason: "needs exactly one initial and one terminal notional",
        });
    }
    if flows.iter().any(|f| f.amount.currency == Currency::XCE) {
        return Err(Error::InvalidField {
            field: "cash_leg",
            reason: "cash flows cannot be denominated in XCE",
        });
    }
    if flows.windows(2).any(|w| w[1].date < w[0].date) {
        return Err(Error::NonIncreasing("cash leg"));
    }
    if ts.maturity_date < ts.issue_date {
        return Err(Error::NonIncreasing("termsheet dates"));
    }
    let xce = &ts.xce_leg.flows;
    if xce.iter().any(|f| f.rate.currency != Currency::XCE) {
        return Err(Error::InvalidField {
            field: "xce_leg",
            reason: "carbon flows must be denominated in XCE",
        });
    }
    if xce.iter().any(|f| !(f.end_time > f.start_time)) || xce.windows(2).any(|w| w[1].start_time < w[0].end_time) {
        return Err(Error::NonIncreasing("xce leg"));
    }
    Ok(xce
        .iter()
        .enumerate()
        .filter(|(_, f)| f.rate.amount < 0.0)
        .map(|(index, _)| TermsheetWarning::NegativeXce { index })
        .collect())
}
