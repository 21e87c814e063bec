//! Market data assembled from a config, and the scenario grids built on it.

use cep_core::emissions::build_profile_with;
use cep_core::netzero::required_net_capacity;
use cep_core::permanence::cheapest_adjusted_curve;
use cep_core::pricing::{carbon_cost_npv, carbon_spread_bps, financing_window};
use cep_core::{
    decimal_year, CarbonPriceCurve, DiscountCurve, EmissionProfile, InflationIndex, Maturity,
    NetCostCurve, NetTechnology, NetZeroSolution, PermanenceModel, PriceCurve, TabulatedCurve,
    TechnologyCase, YearTime,
};
use rayon::prelude::*;

use crate::config::{CurveChoice, RunConfig};
use crate::data::{self, CpiRow, CpiSwapRow, InputFile, NetRow, RateRow, ScenarioRow};
use crate::error::{CliError, Result};

/// Row label of the permanence-adjusted cheapest NET price.
pub const FOREST_LABEL: &str = "Forest";

pub struct Market {
    pub config: RunConfig,
    pub cases: Vec<TechnologyCase>,
    pub scenarios: Vec<CarbonPriceCurve>,
    pub index: InflationIndex,
    pub riskless: DiscountCurve,
    pub risky: DiscountCurve,
    pub net_technologies: Vec<NetTechnology>,
    pub net_curves: Vec<NetCostCurve>,
    pub permanence: PermanenceModel,
    pub inputs: Vec<InputFile>,
}

impl Market {
    pub fn load(config: RunConfig) -> Result<Self> {
        config.validate()?;
        let d = &config.data;
        let mut inputs = Vec::new();

        let (cases, input) = data::read_technology(&config.resolve(&d.technology))?;
        inputs.push(input);

        let (cpi, input) = data::read_csv::<CpiRow>(&config.resolve(&d.cpi))?;
        inputs.push(input);
        let swaps: Vec<(f64, f64)> = match &d.cpi_swaps {
            Some(path) => {
                let (rows, input) = data::read_csv::<CpiSwapRow>(&config.resolve(path))?;
                inputs.push(input);
                rows.iter().map(|r| (r.tenor_years, r.swap_rate)).collect()
            }
            None => Vec::new(),
        };
        let history: Vec<(i32, f64)> = cpi.iter().map(|r| (r.year, r.index)).collect();
        let index = InflationIndex::new(&history, &swaps)?;

        let (rates, input) = data::read_csv::<RateRow>(&config.resolve(&d.rates))?;
        inputs.push(input);
        let knots: Vec<(f64, f64)> = rates.iter().map(|r| (r.tenor_years, r.zero_rate)).collect();
        let riskless = DiscountCurve::build(config.as_of, &knots, 0.0)?;
        let risky = riskless.with_spread(config.curves.financing_spread_bps);

        let (rows, input) = data::read_csv::<ScenarioRow>(&config.resolve(&d.scenarios))?;
        inputs.push(input);
        let horizon = config.curves.horizon_year as f64;
        let scenarios = data::scenario_knots(&rows)?
            .into_iter()
            .map(|(id, knots)| {
                CarbonPriceCurve::build(&knots, id.clone(), &index, horizon)
                    .map_err(|e| CliError::Data(format!("scenario {id}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;

        let net_technologies = match &d.net {
            Some(path) => {
                let (rows, input) = data::read_csv::<NetRow>(&config.resolve(path))?;
                inputs.push(input);
                data::net_technologies(&rows)?
            }
            None => NetTechnology::reference_table(),
        };
        let net_curves = net_technologies
            .iter()
            .map(|t| NetCostCurve::build(t, config.net.bound, &index))
            .collect::<cep_core::Result<Vec<_>>>()?;

        let p = &config.permanence;
        let funding = match p.funding {
            CurveChoice::Riskless => riskless.clone(),
            CurveChoice::Risky => risky.clone(),
        };
        let permanence = PermanenceModel::new(p.hazard, p.recovery, p.years, funding)
            .map_err(|e| CliError::Config(e.to_string()))?;

        Ok(Market {
            config,
            cases,
            scenarios,
            index,
            riskless,
            risky,
            net_technologies,
            net_curves,
            permanence,
            inputs,
        })
    }

    pub fn as_of_time(&self) -> YearTime {
        decimal_year(self.config.as_of)
    }

    /// Curve the carbon cost and the annuity are discounted on.
    pub fn carbon_curve(&self) -> &DiscountCurve {
        match self.config.curves.carbon_discount {
            CurveChoice::Riskless => &self.riskless,
            CurveChoice::Risky => &self.risky,
        }
    }

    pub fn case(&self, id: &str) -> Result<&TechnologyCase> {
        self.cases
            .iter()
            .find(|c| c.case_id == id)
            .ok_or_else(|| CliError::Data(format!("unknown technology case {id:?}")))
    }

    pub fn profile(&self, case: &TechnologyCase) -> Result<EmissionProfile> {
        Ok(build_profile_with(case, self.config.as_of, self.config.deconstruct_fraction)?)
    }

    /// Monthly grid from as-of to the price horizon.
    pub fn monthly_times(&self) -> Vec<YearTime> {
        let start = self.as_of_time();
        let end = self.config.curves.horizon_year as f64;
        let n = ((end - start) * 12.0).floor() as usize;
        (0..=n).map(|k| start + k as f64 / 12.0).collect()
    }

    /// Cheapest permanence-adjusted NET cost on the monthly grid, with the
    /// index of the winning technology at each point.
    pub fn cheapest_net(&self) -> Result<(TabulatedCurve, Vec<usize>)> {
        Ok(cheapest_adjusted_curve(&self.net_curves, &self.permanence, &self.monthly_times())?)
    }

    /// Scenario rows for the spread report, sorted by label.
    pub fn spread_scenarios(&self) -> Result<Vec<Scenario>> {
        let mut out: Vec<Scenario> = self
            .scenarios
            .iter()
            .map(|c| Scenario {
                label: c.scenario().label().to_string(),
                prices: Prices::Carbon(c.clone()),
            })
            .collect();
        if self.config.net.forest_row {
            out.push(Scenario {
                label: FOREST_LABEL.to_string(),
                prices: Prices::Tabulated(self.cheapest_net()?.0),
            });
        }
        out.sort_by_key(|s| s.label.to_lowercase());
        Ok(out)
    }

    /// Carbon price scenarios only, sorted by label.
    pub fn price_scenarios(&self) -> Vec<Scenario> {
        let mut out: Vec<Scenario> = self
            .scenarios
            .iter()
            .map(|c| Scenario {
                label: c.scenario().label().to_string(),
                prices: Prices::Carbon(c.clone()),
            })
            .collect();
        out.sort_by_key(|s| s.label.to_lowercase());
        out
    }
}

pub enum Prices {
    Carbon(CarbonPriceCurve),
    Tabulated(TabulatedCurve),
}

impl PriceCurve for Prices {
    fn price(&self, t: YearTime) -> f64 {
        match self {
            Prices::Carbon(c) => c.price(t),
            Prices::Tabulated(c) => c.price(t),
        }
    }

    fn horizon(&self) -> YearTime {
        match self {
            Prices::Carbon(c) => c.horizon(),
            Prices::Tabulated(c) => c.horizon(),
        }
    }
}

pub struct Scenario {
    pub label: String,
    pub prices: Prices,
}

/// One technology under one scenario, a value per maturity.
#[derive(Debug, Clone, PartialEq)]
pub struct GridRow<T> {
    pub case_id: String,
    pub technology: String,
    pub scenario: String,
    pub values: Vec<T>,
}

fn grid<T: Send>(
    market: &Market,
    scenarios: &[Scenario],
    cell: impl Fn(&TechnologyCase, &EmissionProfile, &Scenario, Maturity) -> Result<T> + Sync,
) -> Result<Vec<GridRow<T>>> {
    let profiles = market
        .cases
        .iter()
        .map(|c| market.profile(c))
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(usize, usize)> = (0..market.cases.len())
        .flat_map(|i| (0..scenarios.len()).map(move |j| (i, j)))
        .collect();
    jobs.par_iter()
        .map(|&(i, j)| {
            let case = &market.cases[i];
            let scenario = &scenarios[j];
            let values = market
                .config
                .maturities
                .iter()
                .map(|&m| cell(case, &profiles[i], scenario, m))
                .collect::<Result<Vec<T>>>()
                .map_err(|e| CliError::Data(format!("case {} / {}: {e}", case.case_id, scenario.label)))?;
            Ok(GridRow {
                case_id: case.case_id.clone(),
                technology: case.name.clone(),
                scenario: scenario.label.clone(),
                values,
            })
        })
        .collect()
}

/// Annuity spreads in bps for every technology, scenario and maturity.
pub fn spread_grid(market: &Market) -> Result<Vec<GridRow<f64>>> {
    let scenarios = market.spread_scenarios()?;
    let curve = market.carbon_curve();
    grid(market, &scenarios, |case, profile, scenario, m| {
        Ok(carbon_spread_bps(case, profile, &scenario.prices, curve, m)?)
    })
}

/// Net-zero NET capacity against the cheapest permanence-adjusted NET.
pub fn netzero_grid(market: &Market) -> Result<Vec<GridRow<NetZeroSolution>>> {
    let scenarios = market.price_scenarios();
    let (net_cost, _) = market.cheapest_net()?;
    let curve = market.carbon_curve();
    let profit_discount = market.config.netzero.discounted.then_some(curve);
    grid(market, &scenarios, |_, profile, scenario, m| {
        let (t0, t1) = financing_window(profile, m)?;
        let npv = carbon_cost_npv(profile, &scenario.prices, curve, t0, t1)?;
        Ok(required_net_capacity(npv, &scenario.prices, &net_cost, profit_discount, t0, t1)?)
    })
}
