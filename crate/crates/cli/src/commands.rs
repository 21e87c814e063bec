//! One function per subcommand. Each returns the files to write and a short
//! summary for the terminal; nothing here touches the filesystem.

use std::fs;
use std::path::{Path, PathBuf};

use cep_core::emissions::operating_emissions_check;
use cep_core::netzero::relative_residual;
use cep_core::permanence::{permanence_curve, simulate_permanence_cost};
use cep_core::termsheet::{generate_termsheet, lifecycle_schedule, validate, TermsheetParams};
use cep_core::{date_from_decimal_year, LinkedTermsheet, PriceCurve, YearTime};
use chrono::Datelike;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{netzero_grid, spread_grid, Market};
use crate::config::Format;
use crate::error::{CliError, Result};
use crate::report::{Cell, Header, Report};

/// Files produced by a command, in write order.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub files: Vec<(String, String)>,
    pub summary: String,
}

impl Output {
    pub fn write_to(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        self.files
            .iter()
            .map(|(name, body)| {
                let path = dir.join(name);
                fs::write(&path, body).map_err(|e| CliError::io(&path, e))?;
                Ok(path)
            })
            .collect()
    }
}

fn header(market: &Market, command: &str) -> Header {
    Header::new(command, market.config.hash(), &market.inputs)
}

fn file_name(stem: &str, format: Format) -> String {
    format!("{stem}.{}", format.extension())
}

fn grid_columns(market: &Market) -> Vec<String> {
    let mut cols = vec!["case_id".to_string(), "technology".into(), "scenario".into()];
    cols.extend(market.config.maturities.iter().map(|m| m.to_string()));
    cols
}

fn grid_report(title: &str, header: Header, columns: &[String]) -> Report {
    let cols: Vec<&str> = columns.iter().map(String::as_str).collect();
    Report::new(title, header, &cols)
}

pub fn spreads(market: &Market) -> Result<Output> {
    let format = market.config.format;
    let rows = spread_grid(market)?;
    let mut report = grid_report(
        "Annuity spread (bps) of enabled carbon by financing maturity",
        header(market, "spreads"),
        &grid_columns(market),
    );
    for row in &rows {
        let mut cells = vec![
            Cell::text(&row.case_id),
            Cell::text(&row.technology),
            Cell::text(&row.scenario),
        ];
        cells.extend(row.values.iter().map(|v| Cell::Int(v.round() as i64)));
        report.push(cells);
    }
    Ok(Output {
        files: vec![(file_name("spreads", format), report.render(format))],
        summary: format!("{} spread rows", rows.len()),
    })
}

pub fn netzero(market: &Market) -> Result<Output> {
    let format = market.config.format;
    let rows = netzero_grid(market)?;
    let mut report = grid_report(
        "NET capacity (MT/year) for financial net-zero; NA means no solution",
        header(market, "netzero"),
        &grid_columns(market),
    );
    let mut worst = 0.0f64;
    let mut unsolved = 0;
    for row in &rows {
        let mut cells = vec![
            Cell::text(&row.case_id),
            Cell::text(&row.technology),
            Cell::text(&row.scenario),
        ];
        for sol in &row.values {
            match sol.capacity {
                Some(v) => {
                    worst = worst.max(relative_residual(sol)?);
                    cells.push(Cell::Num(v, 1));
                }
                None => {
                    unsolved += 1;
                    cells.push(Cell::Missing);
                }
            }
        }
        report.push(cells);
    }
    Ok(Output {
        files: vec![(file_name("netzero", format), report.render(format))],
        summary: format!(
            "{} net-zero rows, {unsolved} cells without solution, max relative residual {worst:.1e}",
            rows.len()
        ),
    })
}

/// Annual points from as-of while before `until_year`.
fn annual_times(market: &Market) -> Vec<YearTime> {
    let start = market.as_of_time();
    let until = market.config.permanence.until_year as f64;
    (0..).map(|k| start + k as f64).take_while(|&t| t <= until).collect()
}

pub fn permanence(market: &Market, seed: u64) -> Result<Output> {
    let config = &market.config;
    let format = config.format;
    let paths = config.permanence.mc_paths;
    let times = annual_times(market);
    let model = &market.permanence;

    let per_tech = market
        .net_curves
        .par_iter()
        .enumerate()
        .map(|(i, curve)| {
            let from = times.partition_point(|&t| !curve.is_available(t));
            let points = permanence_curve(curve, model, &times[from..])?;
            let mut rows = Vec::with_capacity(points.len());
            for (k, p) in points.iter().enumerate() {
                let mut cells = vec![
                    Cell::text(date_from_decimal_year(p.t).to_string()),
                    Cell::text(curve.technology()),
                    Cell::Num(p.raw_cost, 4),
                    Cell::Num(p.add_on, 4),
                    Cell::Num(p.adjusted_cost, 4),
                ];
                if paths > 0 {
                    // one stream family per technology and point
                    let point_seed = seed ^ ((i as u64) << 32 | k as u64);
                    let mc = simulate_permanence_cost(curve, p.t, model, paths, point_seed)?;
                    cells.push(Cell::Num(mc.mean, 4));
                    cells.push(Cell::Num(mc.std_error, 4));
                }
                rows.push(cells);
            }
            Ok(rows)
        })
        .collect::<cep_core::Result<Vec<_>>>()?;

    let mut columns = vec!["date", "technology", "raw_cost", "add_on", "adjusted_cost"];
    if paths > 0 {
        columns.extend(["mc_add_on", "mc_std_error"]);
    }
    let mut report = Report::new(
        "Permanence-adjusted NET cost (nominal USD per tonne)",
        header(market, "permanence"),
        &columns,
    );
    let mut n = 0;
    for rows in per_tech {
        for row in rows {
            report.push(row);
            n += 1;
        }
    }
    Ok(Output {
        files: vec![(file_name("permanence", format), report.render(format))],
        summary: format!(
            "{n} permanence points, hazard {:.6}, recovery {}, {} years",
            model.hazard(),
            model.recovery(),
            model.t_perm()
        ),
    })
}

#[derive(Serialize)]
struct TermsheetDocument<'a> {
    header: &'a Header,
    termsheet: &'a LinkedTermsheet,
}

pub fn build_termsheet(market: &Market, case_id: &str, years: u32) -> Result<LinkedTermsheet> {
    let t = &market.config.termsheet;
    let case = market.case(case_id)?;
    let params = TermsheetParams {
        financing_years: years,
        coupon_bps: t.coupon_bps,
        notional_usd: t.notional_usd,
        deconstruct_fraction: market.config.deconstruct_fraction,
    };
    Ok(generate_termsheet(case, market.config.as_of, &params)?)
}

pub fn termsheet(market: &Market, case_id: &str, years: u32) -> Result<Output> {
    let format = market.config.format;
    let ts = build_termsheet(market, case_id, years)?;
    let warnings = validate(&ts)?;
    let head = header(market, "termsheet");
    let doc = TermsheetDocument {
        header: &head,
        termsheet: &ts,
    };
    let mut json = serde_json::to_string_pretty(&doc).expect("termsheet serializes");
    json.push('\n');

    let mut events = Report::new(
        "Termsheet lifecycle events",
        head.clone(),
        &["date", "event", "amount", "currency"],
    );
    for e in lifecycle_schedule(&ts) {
        events.push(vec![
            Cell::text(e.date.to_string()),
            Cell::text(e.kind.as_str()),
            Cell::Num(e.amount.amount, 2),
            Cell::text(e.amount.currency.code()),
        ]);
    }
    let stem = format!("{case_id}_{years}y");
    Ok(Output {
        files: vec![
            (format!("termsheet_{stem}.json"), json),
            (file_name(&format!("events_{stem}"), format), events.render(format)),
        ],
        summary: format!(
            "termsheet {stem}: issue {} maturity {}, {} cash flows, {} carbon periods, {} warnings",
            ts.issue_date,
            ts.maturity_date,
            ts.cash_leg.flows.len(),
            ts.xce_leg.flows.len(),
            warnings.len()
        ),
    })
}

/// Outcome of the operating-emissions cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct SanityResult {
    pub case_id: String,
    pub alternative_mt: f64,
    pub table_mt: f64,
    pub relative_gap: f64,
    pub band: f64,
    pub pass: bool,
}

pub fn sanity_result(market: &Market) -> Result<SanityResult> {
    let s = &market.config.sanity;
    let case = market.case(&s.case)?;
    let alternative_mt = operating_emissions_check(s.size_mw, s.capacity_factor, s.emission_factor);
    let table_mt = case.carbon_per_year_mt;
    let relative_gap = if table_mt == 0.0 {
        if alternative_mt == 0.0 { 0.0 } else { f64::INFINITY }
    } else {
        (alternative_mt - table_mt).abs() / table_mt
    };
    Ok(SanityResult {
        case_id: case.case_id.clone(),
        alternative_mt,
        table_mt,
        relative_gap,
        band: s.band,
        pass: relative_gap <= s.band,
    })
}

pub fn sanity(market: &Market) -> Result<Output> {
    let format = market.config.format;
    let s = &market.config.sanity;
    let r = sanity_result(market)?;
    let verdict = if r.pass { "pass" } else { "fail" };
    let mut report = Report::new(
        "Operating emissions cross-check",
        header(market, "sanity"),
        &[
            "case_id",
            "size_mw",
            "capacity_factor",
            "emission_factor",
            "alternative_mt_per_year",
            "table_mt_per_year",
            "relative_gap",
            "band",
            "verdict",
        ],
    );
    report.push(vec![
        Cell::text(&r.case_id),
        Cell::Num(s.size_mw, 0),
        Cell::Num(s.capacity_factor, 3),
        Cell::Num(s.emission_factor, 4),
        Cell::Num(r.alternative_mt, 2),
        Cell::Num(r.table_mt, 2),
        Cell::Num(r.relative_gap, 4),
        Cell::Num(r.band, 4),
        Cell::text(verdict),
    ]);
    Ok(Output {
        files: vec![(file_name("sanity", format), report.render(format))],
        summary: format!(
            "{:.2}MT versus {:.2}MT, sanity check {verdict}",
            r.alternative_mt, r.table_mt
        ),
    })
}

/// Plot-ready series: scenario prices, NET costs and emission profiles.
pub fn ingest(market: &Market) -> Result<Output> {
    let format = market.config.format;
    let years: Vec<i32> = (market.config.as_of.year()..=market.config.curves.horizon_year).collect();

    let mut prices = Report::new(
        "Carbon price scenarios (nominal USD per tonne)",
        header(market, "ingest"),
        &["year", "scenario", "usd_per_tonne"],
    );
    for s in market.price_scenarios() {
        for &y in &years {
            prices.push(vec![Cell::Int(y as i64), Cell::text(&s.label), Cell::Num(s.prices.price(y as f64), 4)]);
        }
    }

    let (cheapest, choice) = market.cheapest_net()?;
    let mut net = Report::new(
        "NET costs (nominal USD per tonne); adjusted is the cheapest after permanence",
        header(market, "ingest"),
        &["year", "technology", "bound", "cost"],
    );
    for curve in &market.net_curves {
        for &y in &years {
            let cost = curve.cost(y as f64).map_or(Cell::Missing, |c| Cell::Num(c, 4));
            net.push(vec![
                Cell::Int(y as i64),
                Cell::text(curve.technology()),
                Cell::text(curve.bound().to_string()),
                cost,
            ]);
        }
    }
    let times = cheapest.times();
    for &y in &years {
        let t = y as f64;
        if t < times[0] {
            continue;
        }
        let k = times.partition_point(|&u| u <= t).saturating_sub(1);
        net.push(vec![
            Cell::Int(y as i64),
            Cell::text(format!("cheapest adjusted ({})", market.net_curves[choice[k]].technology())),
            Cell::text(market.config.net.bound.to_string()),
            Cell::Num(cheapest.price(t), 4),
        ]);
    }

    let mut profiles = Report::new(
        "Emission profiles (MT CO2e per year by phase)",
        header(market, "ingest"),
        &["case_id", "technology", "phase", "start", "end", "start_years", "end_years", "mt_per_year"],
    );
    let t0 = market.as_of_time();
    for case in &market.cases {
        for seg in market.profile(case)?.segments() {
            profiles.push(vec![
                Cell::text(&case.case_id),
                Cell::text(&case.name),
                Cell::text(seg.phase.to_string()),
                Cell::text(date_from_decimal_year(seg.start).to_string()),
                Cell::text(date_from_decimal_year(seg.end).to_string()),
                Cell::Num(seg.start - t0, 4),
                Cell::Num(seg.end - t0, 4),
                Cell::Num(seg.rate / 1e6, 6),
            ]);
        }
    }

    Ok(Output {
        summary: format!(
            "{} technologies, {} scenarios, {} NET technologies, {} input files",
            market.cases.len(),
            market.scenarios.len(),
            market.net_curves.len(),
            market.inputs.len()
        ),
        files: vec![
            (file_name("ingest_prices", format), prices.render(format)),
            (file_name("ingest_net", format), net.render(format)),
            (file_name("ingest_profiles", format), profiles.render(format)),
        ],
    })
}
