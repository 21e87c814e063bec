//! Shared unit-test inputs.

use alloc::vec::Vec;

use chrono::NaiveDate;

use crate::domain::TechnologyCase;

pub(crate) fn as_of() -> NaiveDate {
    NaiveDate::from_ymd_opt(2021, 11, 30).unwrap()
}

#[allow(clippy::too_many_arguments)]
fn row(
    id: &str,
    name: &str,
    size: f64,
    capex: f64,
    develop: f64,
    build: f64,
    life: f64,
    cf: f64,
    per_year: f64,
    to_build: f64,
) -> TechnologyCase {
    TechnologyCase {
        case_id: id.into(),
        name: name.into(),
        size_mw: size,
        capital_cost_busd: capex,
        develop_months: develop,
        build_months: build,
        lifespan_years: life,
        capacity_factor: cf,
        carbon_per_year_mt: per_year,
        carbon_to_build_mt: to_build,
        deconstruct_carbon_mt: None,
    }
}

pub(crate) fn technology_table() -> Vec<TechnologyCase> {
    alloc::vec![
        row("01", "Ultra-supercritical coal (USC)", 650.0, 2.552, 24.0, 36.0, 40.0, 0.850, 3.91, 1.37),
        row("03", "USC with 90% CCS", 650.0, 4.079, 24.0, 36.0, 40.0, 0.850, 0.57, 1.37),
        row("08", "Combined-cycle, single shaft", 418.0, 0.484, 18.0, 24.0, 40.0, 0.870, 1.09, 0.12),
        row("09", "Combined-cycle with 90% CCS", 377.0, 0.999, 24.0, 30.0, 40.0, 0.870, 0.11, 0.11),
        row("12", "Nuclear, small modular reactor", 600.0, 3.967, 24.0, 48.0, 40.0, 0.900, 0.00, 0.42),
        row("15", "Geothermal", 50.0, 0.135, 24.0, 36.0, 40.0, 0.950, 0.00, 0.26),
        row("17", "Conventional hydropower", 100.0, 0.568, 36.0, 36.0, 50.0, 0.500, 0.00, 0.27),
        row("20", "Wind", 200.0, 0.270, 12.0, 9.0, 25.0, 0.380, 0.00, 0.48),
        row("24", "Solar photovoltaic (PV) with tracking", 150.0, 0.210, 12.0, 6.0, 30.0, 0.158, 0.00, 1.70),
        row("25", "Solar PV with storage", 150.0, 0.280, 12.0, 6.0, 30.0, 0.158, 0.00, 1.70),
    ]
}

pub(crate) fn case(id: &str) -> TechnologyCase {
    technology_table()
        .into_iter()
        .find(|c| c.case_id == id)
        .unwrap()
}
