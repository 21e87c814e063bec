//! Day counts, annuity valuation, carbon-cost NPVs and annuity spreads, and
//! credit arithmetic (hazard, recovery, stranding).

mod annuity;
mod carbon;
pub mod credit;
pub mod daycount;

pub use annuity::{annuity_npv, AnnuitySpec};
pub use carbon::{carbon_cost_npv, carbon_spread_bps, financing_window, Maturity};
pub use credit::{cds_from_hazard, hazard_from_cds, stranded_spread_multiplier, CreditParams};
pub use daycount::{year_fraction, DayCount};
