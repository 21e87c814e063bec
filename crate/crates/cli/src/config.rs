//! Run configuration, read from TOML.
//!
//! Relative data paths are resolved against the directory holding the config
//! file. The config hash embedded in reports covers every field except the
//! output directory, so the same run written to two places stays
//! byte-identical.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use cep_core::{Maturity, NetBound};
use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Markdown,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Markdown => "md",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?}; expected csv, markdown or json")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveChoice {
    /// Zero curve as ingested.
    Riskless,
    /// Zero curve plus the financing spread.
    Risky,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataPaths {
    pub technology: PathBuf,
    pub scenarios: PathBuf,
    pub cpi: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cpi_swaps: Option<PathBuf>,
    pub rates: PathBuf,
    /// NET cost ranges; the built-in reference table when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub net: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CurvesConfig {
    pub financing_spread_bps: f64,
    pub carbon_discount: CurveChoice,
    /// Last year the carbon price scenarios are trusted to (real-constant
    /// beyond the last knot).
    pub horizon_year: i32,
}

impl Default for CurvesConfig {
    fn default() -> Self {
        CurvesConfig {
            financing_spread_bps: 157.0,
            carbon_discount: CurveChoice::Riskless,
            horizon_year: 2100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NetConfig {
    pub bound: NetBound,
    /// Add a row priced at the cheapest permanence-adjusted NET to the
    /// spread report.
    pub forest_row: bool,
}

impl Default for NetConfig {
    fn default() -> Self {
        NetConfig {
            bound: NetBound::Mid,
            forest_row: true,
        }
    }
}

/// BBB default rate of 2.5% a year expressed per unit loss.
pub const DEFAULT_RECOVERY: f64 = 0.4;
pub const DEFAULT_HAZARD: f64 = 0.025 / (1.0 - DEFAULT_RECOVERY);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PermanenceConfig {
    pub hazard: f64,
    pub recovery: f64,
    pub years: f64,
    pub funding: CurveChoice,
    /// Monte Carlo paths per point in the permanence report; 0 disables.
    pub mc_paths: u64,
    pub until_year: i32,
}

impl Default for PermanenceConfig {
    fn default() -> Self {
        PermanenceConfig {
            hazard: DEFAULT_HAZARD,
            recovery: DEFAULT_RECOVERY,
            years: cep_core::permanence::DEFAULT_PERMANENCE_YEARS,
            funding: CurveChoice::Risky,
            mc_paths: 2000,
            until_year: 2060,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NetZeroConfig {
    /// Discount NET profits with the carbon discount curve.
    pub discounted: bool,
}

impl Default for NetZeroConfig {
    fn default() -> Self {
        NetZeroConfig { discounted: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TermsheetConfig {
    pub case: String,
    pub years: u32,
    pub coupon_bps: f64,
    pub notional_usd: Option<f64>,
}

impl Default for TermsheetConfig {
    fn default() -> Self {
        TermsheetConfig {
            case: "01".into(),
            years: 20,
            coupon_bps: 450.0,
            notional_usd: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SanityConfig {
    pub case: String,
    pub size_mw: f64,
    pub capacity_factor: f64,
    /// t CO2e per MWh from the alternative source.
    pub emission_factor: f64,
    /// Largest accepted relative gap to the table figure.
    pub band: f64,
}

impl Default for SanityConfig {
    fn default() -> Self {
        SanityConfig {
            case: "01".into(),
            size_mw: 650.0,
            capacity_factor: 0.85,
            emission_factor: 0.882,
            band: 0.15,
        }
    }
}

fn default_as_of() -> NaiveDate {
    NaiveDate::from_ymd_opt(2021, 11, 30).expect("valid date")
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_maturities() -> Vec<Maturity> {
    Maturity::STANDARD.to_vec()
}

fn default_deconstruct_fraction() -> f64 {
    cep_core::emissions::DEFAULT_DECONSTRUCT_FRACTION
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_as_of")]
    pub as_of: NaiveDate,
    #[serde(default = "default_out_dir", skip_serializing)]
    pub out_dir: PathBuf,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_maturities")]
    pub maturities: Vec<Maturity>,
    #[serde(default = "default_deconstruct_fraction")]
    pub deconstruct_fraction: f64,
    pub data: DataPaths,
    #[serde(default)]
    pub curves: CurvesConfig,
    #[serde(default)]
    pub net: NetConfig,
    #[serde(default)]
    pub permanence: PermanenceConfig,
    #[serde(default)]
    pub netzero: NetZeroConfig,
    #[serde(default)]
    pub termsheet: TermsheetConfig,
    #[serde(default)]
    pub sanity: SanityConfig,
    /// Directory relative data paths are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl RunConfig {
    pub fn from_toml(text: &str, base_dir: &Path) -> Result<Self> {
        let mut config: RunConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        config.base_dir = base_dir.to_path_buf();
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_toml(&text, base)
    }

    pub fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.base_dir.join(path)
        }
    }

    /// Output directory, resolved against the working directory.
    pub fn out_dir(&self) -> &Path {
        &self.out_dir
    }

    /// sha256 over the canonical JSON form of the config.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn validate(&self) -> Result<()> {
        fn check(ok: bool, what: &str) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(CliError::Config(what.to_string()))
            }
        }
        let p = &self.permanence;
        check(p.hazard >= 0.0 && p.hazard.is_finite(), "permanence.hazard must be finite and >= 0")?;
        check((0.0..=1.0).contains(&p.recovery), "permanence.recovery must be within [0, 1]")?;
        check(p.years > 0.0 && p.years.is_finite(), "permanence.years must be > 0")?;
        check(
            p.until_year as f64 > cep_core::decimal_year(self.as_of),
            "permanence.until_year must follow as_of",
        )?;
        check(
            self.curves.financing_spread_bps.is_finite(),
            "curves.financing_spread_bps must be finite",
        )?;
        check(
            self.curves.horizon_year as f64 > cep_core::decimal_year(self.as_of),
            "curves.horizon_year must follow as_of",
        )?;
        check(
            self.deconstruct_fraction >= 0.0 && self.deconstruct_fraction.is_finite(),
            "deconstruct_fraction must be >= 0",
        )?;
        check(!self.maturities.is_empty(), "maturities must not be empty")?;
        check(self.termsheet.years > 0, "termsheet.years must be > 0")?;
        check(
            self.termsheet.notional_usd.is_none_or(|n| n > 0.0),
            "termsheet.notional_usd must be > 0",
        )?;
        let s = &self.sanity;
        check(s.size_mw >= 0.0, "sanity.size_mw must be >= 0")?;
        check((0.0..=1.0).contains(&s.capacity_factor), "sanity.capacity_factor must be within [0, 1]")?;
        check(s.emission_factor >= 0.0, "sanity.emission_factor must be >= 0")?;
        check(s.band > 0.0, "sanity.band must be > 0")?;

        let d = &self.data;
        let required = [&d.technology, &d.scenarios, &d.cpi, &d.rates];
        let optional = [d.cpi_swaps.as_ref(), d.net.as_ref()];
        for path in required.into_iter().chain(optional.into_iter().flatten()) {
            let full = self.resolve(path);
            if !full.is_file() {
                return Err(CliError::Config(format!("data file not found: {}", full.display())));
            }
        }
        Ok(())
    }
}
