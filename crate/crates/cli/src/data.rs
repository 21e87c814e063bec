//! CSV ingestion. Lines starting with `#` are comments.
//!
//! | file | columns |
//! |------|---------|
//! | technology | case_id, name, size, capital_cost, develop, build, lifespan, capacity_factor, carbon_per_year, carbon_to_build, [deconstruct_carbon] |
//! | scenarios | scenario, year, usd2010_per_tonne |
//! | cpi | year, index |
//! | cpi_swaps | tenor_years, swap_rate |
//! | rates | tenor_years, zero_rate |
//! | net | technology, mature_from, cost_low, cost_high |

use std::fs;
use std::path::Path;

use cep_core::{NetTechnology, ScenarioId, TechnologyCase};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

/// Name and sha256 of one ingested file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputFile {
    pub name: String,
    pub sha256: String,
}

/// Reads `path`, returning its rows and checksum.
pub fn read_csv<T: DeserializeOwned>(path: &Path) -> Result<(Vec<T>, InputFile)> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let input = InputFile {
        name: name.clone(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    };
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(bytes.as_slice());
    let rows = reader
        .deserialize()
        .collect::<std::result::Result<Vec<T>, _>>()
        .map_err(|e| CliError::Data(format!("{name}: {e}")))?;
    if rows.is_empty() {
        return Err(CliError::Data(format!("{name}: no rows")));
    }
    Ok((rows, input))
}

#[derive(Debug, Deserialize)]
struct TechnologyRow {
    case_id: String,
    name: String,
    size: f64,
    capital_cost: f64,
    develop: f64,
    build: f64,
    lifespan: f64,
    capacity_factor: f64,
    carbon_per_year: f64,
    carbon_to_build: f64,
    #[serde(default)]
    deconstruct_carbon: Option<f64>,
}

/// Reads and validates the technology table.
pub fn read_technology(path: &Path) -> Result<(Vec<TechnologyCase>, InputFile)> {
    let (rows, input) = read_csv::<TechnologyRow>(path)?;
    Ok((technology_cases(rows)?, input))
}

fn technology_cases(rows: Vec<TechnologyRow>) -> Result<Vec<TechnologyCase>> {
    let mut cases: Vec<TechnologyCase> = Vec::with_capacity(rows.len());
    for r in rows {
        if cases.iter().any(|c| c.case_id == r.case_id) {
            return Err(CliError::Data(format!("duplicate technology case {}", r.case_id)));
        }
        let case = TechnologyCase {
            case_id: r.case_id,
            name: r.name,
            size_mw: r.size,
            capital_cost_busd: r.capital_cost,
            develop_months: r.develop,
            build_months: r.build,
            lifespan_years: r.lifespan,
            capacity_factor: r.capacity_factor,
            carbon_per_year_mt: r.carbon_per_year,
            carbon_to_build_mt: r.carbon_to_build,
            deconstruct_carbon_mt: r.deconstruct_carbon,
        };
        let id = case.case_id.clone();
        cases.push(
            case.validate()
                .map_err(|e| CliError::Data(format!("technology case {id}: {e}")))?,
        );
    }
    Ok(cases)
}

#[derive(Debug, Deserialize)]
pub struct ScenarioRow {
    pub scenario: String,
    pub year: i32,
    pub usd2010_per_tonne: f64,
}

/// Scenario name with its `(year, price)` knots.
pub type ScenarioKnots = (ScenarioId, Vec<(i32, f64)>);

/// Groups scenario rows by name (first appearance order), knots sorted by year.
pub fn scenario_knots(rows: &[ScenarioRow]) -> Result<Vec<ScenarioKnots>> {
    let mut out: Vec<ScenarioKnots> = Vec::new();
    for r in rows {
        let id: ScenarioId = r.scenario.parse()?;
        match out.iter_mut().find(|(s, _)| *s == id) {
            Some((_, knots)) => knots.push((r.year, r.usd2010_per_tonne)),
            None => out.push((id, vec![(r.year, r.usd2010_per_tonne)])),
        }
    }
    for (id, knots) in &mut out {
        knots.sort_by_key(|k| k.0);
        if knots.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(CliError::Data(format!("scenario {id}: duplicate year")));
        }
    }
    Ok(out)
}

#[derive(Debug, Deserialize)]
pub struct CpiRow {
    pub year: i32,
    pub index: f64,
}

#[derive(Debug, Deserialize)]
pub struct CpiSwapRow {
    pub tenor_years: f64,
    pub swap_rate: f64,
}

#[derive(Debug, Deserialize)]
pub struct RateRow {
    pub tenor_years: f64,
    pub zero_rate: f64,
}

#[derive(Debug, Deserialize)]
pub struct NetRow {
    pub technology: String,
    pub mature_from: i32,
    pub cost_low: f64,
    pub cost_high: f64,
}

pub fn net_technologies(rows: &[NetRow]) -> Result<Vec<NetTechnology>> {
    rows.iter()
        .map(|r| {
            if !(r.cost_low >= 0.0 && r.cost_high >= r.cost_low) {
                return Err(CliError::Data(format!(
                    "NET {}: need 0 <= cost_low <= cost_high",
                    r.technology
                )));
            }
            Ok(NetTechnology::new(&r.technology, r.mature_from, r.cost_low, r.cost_high))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> std::path::PathBuf {
        let path = dir.path().join(name);
        fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
        path
    }

    #[test]
    fn technology_rows_with_comments_and_optional_column() {
        let dir = tempfile::tempdir().unwrap();
        let path = write(
            &dir,
            "tech.csv",
            "# synthetic\ncase_id,name,size,capital_cost,develop,build,lifespan,capacity_factor,carbon_per_year,carbon_to_build,deconstruct_carbon\n\
             01,Coal,650,2.552,24,36,40,0.85,3.91,1.37,\n\
             20,Wind,200,0.270,12,9,25,0.38,0,0.48,0.1\n",
        );
        let (cases, input) = read_technology(&path).unwrap();
        assert_eq!(input.name, "tech.csv");
        assert_eq!(input.sha256.len(), 64);
        assert_eq!(cases[0].case_id, "01");
        assert_eq!(cases[0].deconstruct_carbon_mt, None);
        assert_eq!(cases[1].deconstruct_carbon_mt, Some(0.1));
    }

    #[test]
    fn invalid_case_names_the_field() {
        let dir = tempfile::tempdir().unwrap();
        let path = write(
            &dir,
            "tech.csv",
            "case_id,name,size,capital_cost,develop,build,lifespan,capacity_factor,carbon_per_year,carbon_to_build\n\
             01,Coal,650,2.552,24,36,40,1.5,3.91,1.37\n",
        );
        let err = read_technology(&path).unwrap_err().to_string();
        assert!(err.contains("capacity_factor"), "{err}");
    }

    #[test]
    fn scenarios_group_and_sort() {
        let rows = vec![
            ScenarioRow { scenario: "NDC".into(), year: 2030, usd2010_per_tonne: 2.0 },
            ScenarioRow { scenario: "Delayed Transition".into(), year: 2020, usd2010_per_tonne: 0.0 },
            ScenarioRow { scenario: "NDCs".into(), year: 2020, usd2010_per_tonne: 1.0 },
        ];
        let grouped = scenario_knots(&rows).unwrap();
        assert_eq!(grouped.len(), 2);
        assert_eq!(grouped[0].0, ScenarioId::Ndc);
        assert_eq!(grouped[0].1, vec![(2020, 1.0), (2030, 2.0)]);
        assert_eq!(grouped[1].0, ScenarioId::DelayedTransition);
    }

    #[test]
    fn malformed_numbers_are_data_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = write(&dir, "cpi.csv", "year,index\n2010,abc\n");
        let err = read_csv::<CpiRow>(&path).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
