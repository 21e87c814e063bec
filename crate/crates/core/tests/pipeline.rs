use cep_core::emissions::build_profile;
use cep_core::netzero::{relative_residual, required_net_capacity};
use cep_core::permanence::cheapest_adjusted_curve;
use cep_core::pricing::{carbon_cost_npv, carbon_spread_bps, financing_window};
use cep_core::termsheet::{generate_termsheet, summarize_xce, validate, TermsheetParams};
use cep_core::{
    decimal_year, CarbonPriceCurve, DiscountCurve, InflationIndex, Maturity, NetBound,
    NetCostCurve, NetTechnology, PermanenceModel, ScenarioId, TechnologyCase,
};
use chrono::NaiveDate;

fn as_of() -> NaiveDate {
    NaiveDate::from_ymd_opt(2021, 11, 30).unwrap()
}

fn coal() -> TechnologyCase {
    TechnologyCase {
        case_id: "01".into(),
        name: "Ultra-supercritical coal (USC)".into(),
        size_mw: 650.0,
        capital_cost_busd: 2.552,
        develop_months: 24.0,
        build_months: 36.0,
        lifespan_years: 40.0,
        capacity_factor: 0.85,
        carbon_per_year_mt: 3.91,
        carbon_to_build_mt: 1.37,
        deconstruct_carbon_mt: None,
    }
    .validate()
    .unwrap()
}

fn prices(scale: f64, index: &InflationIndex) -> CarbonPriceCurve {
    let knots: Vec<(i32, f64)> = [(2020, 30.0), (2030, 110.0), (2050, 230.0)]
        .iter()
        .map(|&(y, p)| (y, p * scale))
        .collect();
    CarbonPriceCurve::build(&knots, ScenarioId::Custom("test".into()), index, 2100.0).unwrap()
}

fn curve() -> DiscountCurve {
    DiscountCurve::build(as_of(), &[(1.0, 0.01), (10.0, 0.015), (30.0, 0.02)], 0.0).unwrap()
}

#[test]
fn spread_is_linear_in_price_level() {
    let index = InflationIndex::constant_rate(2010, 0.02);
    let case = coal();
    let profile = build_profile(&case, as_of()).unwrap();
    let d = curve();
    for m in [Maturity::Years(10), Maturity::Years(30), Maturity::All] {
        let one = carbon_spread_bps(&case, &profile, &prices(1.0, &index), &d, m).unwrap();
        let three = carbon_spread_bps(&case, &profile, &prices(3.0, &index), &d, m).unwrap();
        assert!(one > 0.0);
        assert!((three / one - 3.0).abs() < 1e-9, "{m:?}: {one} {three}");
    }
}

#[test]
fn termsheet_carbon_matches_profile_over_its_life() {
    let case = coal();
    let profile = build_profile(&case, as_of()).unwrap();
    for years in [5, 20, 60] {
        let ts = generate_termsheet(&case, as_of(), &TermsheetParams::new(years, 400.0)).unwrap();
        assert!(validate(&ts).unwrap().is_empty());
        let (date, xce) = summarize_xce(&ts);
        assert_eq!(date, ts.issue_date);
        let expected = profile.total_emissions(ts.issue_time, ts.maturity_time).unwrap();
        assert!((xce.amount - expected).abs() <= 1e-9 * expected, "{years}y");
        assert!(ts.maturity_time <= profile.end().unwrap() + 1e-9);
    }
}

#[test]
fn net_zero_capacity_offsets_the_carbon_cost() {
    let index = InflationIndex::constant_rate(2010, 0.02);
    let d = curve();
    let nets: Vec<NetCostCurve> = NetTechnology::reference_table()
        .iter()
        .map(|t| NetCostCurve::build(t, NetBound::Mid, &index).unwrap())
        .collect();
    let model = PermanenceModel::new(0.025 / 0.6, 0.4, 100.0, d.with_spread(157.0)).unwrap();
    let start = decimal_year(as_of());
    let times: Vec<f64> = (0..=12 * 78).map(|k| start + k as f64 / 12.0).collect();
    let (net, _) = cheapest_adjusted_curve(&nets, &model, &times).unwrap();

    let profile = build_profile(&coal(), as_of()).unwrap();
    let p = prices(3.0, &index);
    let (t0, t1) = financing_window(&profile, Maturity::Years(20)).unwrap();
    let npv = carbon_cost_npv(&profile, &p, &d, t0, t1).unwrap();
    let solution = required_net_capacity(npv, &p, &net, Some(&d), t0, t1).unwrap();
    assert!(solution.is_solved());
    assert!(relative_residual(&solution).unwrap() < 1e-12);
}
