//! Credit-triangle arithmetic: `hazard = spread / (1 - recovery)`.
//!
//! Spreads are in basis points, hazards per year.

use crate::{Error, Result};

fn check_recovery(recovery: f64) -> Result<()> {
    if (0.0..1.0).contains(&recovery) {
        Ok(())
    } else {
        Err(Error::InvalidField {
            field: "recovery",
            reason: "must be within [0, 1)",
        })
    }
}

pub fn hazard_from_cds(spread_bps: f64, recovery: f64) -> Result<f64> {
    check_recovery(recovery)?;
    Ok(spread_bps * 1e-4 / (1.0 - recovery))
}

pub fn cds_from_hazard(hazard: f64, recovery: f64) -> Result<f64> {
    check_recovery(recovery)?;
    Ok(hazard * (1.0 - recovery) * 1e4)
}

/// Consistent (recovery, hazard, spread) triple.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CreditParams {
    recovery: f64,
    hazard: f64,
    cds_spread_bps: f64,
}

impl CreditParams {
    pub fn from_spread(spread_bps: f64, recovery: f64) -> Result<Self> {
        if !(spread_bps >= 0.0) {
            return Err(Error::InvalidField {
                field: "cds_spread",
                reason: "must be >= 0",
            });
        }
        Ok(CreditParams {
            recovery,
            hazard: hazard_from_cds(spread_bps, recovery)?,
            cds_spread_bps: spread_bps,
        })
    }

    pub fn from_hazard(hazard: f64, recovery: f64) -> Result<Self> {
        if !(hazard >= 0.0) {
            return Err(Error::InvalidField {
                field: "hazard",
                reason: "must be >= 0",
            });
        }
        Ok(CreditParams {
            recovery,
            hazard,
            cds_spread_bps: cds_from_hazard(hazard, recovery)?,
        })
    }

    pub fn recovery(&self) -> f64 {
        self.recovery
    }

    pub fn hazard(&self) -> f64 {
        self.hazard
    }

    pub fn cds_spread_bps(&self) -> f64 {
        self.cds_spread_bps
    }

    /// Same hazard, different recovery.
    pub fn with_recovery(&self, recovery: f64) -> Result<Self> {
        Self::from_hazard(self.hazard, recovery)
    }
}

/// Recovery blended over the chance the asset ends up stranded.
pub fn effective_recovery(base_recovery: f64, stranded_recovery: f64, p_stranded: f64) -> Result<f64> {
    check_recovery(base_recovery)?;
    check_recovery(stranded_recovery)?;
    if !(0.0..=1.0).contains(&p_stranded) {
        return Err(Error::InvalidField {
            field: "p_stranded",
            reason: "must be within [0, 1]",
        });
    }
    Ok((1.0 - p_stranded) * base_recovery + p_stranded * stranded_recovery)
}

/// Factor on the financing spread at unchanged hazard when stranding risk
/// lowers recovery: `(1 - R_eff) / (1 - R_base)`.
pub fn stranded_spread_multiplier(
    base_recovery: f64,
    stranded_recovery: f64,
    p_stranded: f64,
) -> Result<f64> {
    let r_eff = effective_recovery(base_recovery, stranded_recovery, p_stranded)?;
    Ok((1.0 - r_eff) / (1.0 - base_recovery))
}

/// Viability heuristic: operating carbon cost per year above the revenue
/// threshold marks the asset as a stranding candidate.
pub fn is_stranding_candidate(annual_carbon_cost: f64, revenue_threshold: f64) -> bool {
    annual_carbon_cost > revenue_threshold
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hundred_bps_at_sixty_percent_recovery() {
        assert!((hazard_from_cds(100.0, 0.6).unwrap() - 0.025).abs() < 1e-15);
        assert_eq!(hazard_from_cds(0.0, 0.6).unwrap(), 0.0);
    }

    #[test]
    fn recovery_drop_doubles_spread() {
        let base = CreditParams::from_spread(120.0, 0.75).unwrap();
        let lower = base.with_recovery(0.50).unwrap();
        assert_eq!(lower.cds_spread_bps() / base.cds_spread_bps(), 2.0);
        assert_eq!(stranded_spread_multiplier(0.75, 0.50, 1.0).unwrap(), 2.0);
    }

    #[test]
    fn stranding_multiplier_cases() {
        assert_eq!(stranded_spread_multiplier(0.735, 0.0, 0.0).unwrap(), 1.0);
        let m = stranded_spread_multiplier(0.735, 0.0, 1.0).unwrap();
        assert!((m - 1.0 / 0.265).abs() < 1e-12);
        assert!((m - 3.77).abs() < 0.01);
        assert!(stranded_spread_multiplier(0.735, 0.0, 1.5).is_err());
        assert!(stranded_spread_multiplier(1.0, 0.0, 0.5).is_err());
    }

    #[test]
    fn full_recovery_is_rejected() {
        assert!(hazard_from_cds(100.0, 1.0).is_err());
        assert!(cds_from_hazard(0.01, 1.2).is_err());
    }

    #[test]
    fn stranding_flag() {
        assert!(is_stranding_candidate(2.0e8, 1.0e8));
        assert!(!is_stranding_candidate(0.5e8, 1.0e8));
    }

    proptest! {
        #[test]
        fn hazard_and_spread_round_trip(h in 0.0f64..1.0, r in 0.0f64..0.99) {
            let s = cds_from_hazard(h, r).unwrap();
            let back = hazard_from_cds(s, r).unwrap();
            prop_assert!((back - h).abs() <= 1e-12 * h.max(1e-12));
        }
    }
}
