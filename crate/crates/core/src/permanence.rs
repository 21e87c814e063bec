//! Cost of keeping sequestered carbon sequestered.
//!
//! A sequestration supplier defaults as a homogeneous Poisson process with
//! intensity `hazard`. Each default at `u` forces a repurchase at the
//! then-current cost `f(u)`, of which the fraction `recovery` is recovered.
//! Conditioning on the number of defaults in `[t, t + t_perm]` collapses the
//! expected discounted cost to
//!
//! ```text
//! PV(t) = hazard * (1 - recovery) * int_t^{t + t_perm} D_F(t, u) f(u) du
//! ```
//!
//! where `D_F` discounts at the project's funding rate. The simulator in this
//! module draws the default times directly and is kept as an oracle for the
//! closed form.

use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::calendar::{YearTime, MONTHS_PER_YEAR};
use crate::curves::{DiscountCurve, NetCostCurve, PriceCurve, TabulatedCurve};
use crate::grid::monthly_trapezoid;
use crate::{Error, Result};

/// Default permanence horizon, in years from the sequestration date.
pub const DEFAULT_PERMANENCE_YEARS: f64 = 100.0;

#[derive(Debug, Clone, PartialEq)]
pub struct PermanenceModel {
    hazard: f64,
    recovery: f64,
    t_perm: f64,
    funding_curve: DiscountCurve,
}

impl PermanenceModel {
    pub fn new(hazard: f64, recovery: f64, t_perm: f64, funding_curve: DiscountCurve) -> Result<Self> {
        if !(hazard >= 0.0) || !hazard.is_finite() {
            return Err(Error::InvalidField {
                field: "hazard",
                reason: "must be finite and >= 0",
            });
        }
        if !(0.0..=1.0).contains(&recovery) {
            return Err(Error::InvalidField {
                field: "recovery",
                reason: "must be within [0, 1]",
            });
        }
        if !(t_perm > 0.0) || !t_perm.is_finite() {
            return Err(Error::InvalidField {
                field: "t_perm",
                reason: "must be finite and > 0",
            });
        }
        Ok(PermanenceModel {
            hazard,
            recovery,
            t_perm,
            funding_curve,
        })
    }

    pub fn hazard(&self) -> f64 {
        self.hazard
    }

    pub fn recovery(&self) -> f64 {
        self.recovery
    }

    pub fn t_perm(&self) -> f64 {
        self.t_perm
    }

    pub fn funding_curve(&self) -> &DiscountCurve {
        &self.funding_curve
    }

    /// Expected loss rate per unit cost per year, `hazard * (1 - recovery)`.
    pub fn loss_intensity(&self) -> f64 {
        self.hazard * (1.0 - self.recovery)
    }
}

fn ensure_available(f: &impl PriceCurve, t: YearTime) -> Result<()> {
    if t < f.available_from() {
        return Err(Error::Unavailable {
            technology: String::from(f.label()),
            time: t,
        });
    }
    Ok(())
}

/// Present value at `t` of repurchases needed to keep one tonne sequestered
/// until `t + t_perm`.
pub fn pv_permanence(f: &impl PriceCurve, t: YearTime, model: &PermanenceModel) -> Result<f64> {
    ensure_available(f, t)?;
    let intensity = model.loss_intensity();
    if intensity == 0.0 {
        return Ok(0.0);
    }
    let curve = &model.funding_curve;
    let d_t = curve.discount(t);
    let integral = monthly_trapezoid(t, t + model.t_perm, |u| curve.discount(u) / d_t * f.price(u));
    Ok(intensity * integral)
}

/// Cost at `t` plus the permanence add-on.
pub fn permanence_adjusted_cost(f: &impl PriceCurve, t: YearTime, model: &PermanenceModel) -> Result<f64> {
    Ok(f.price(t) + pv_permanence(f, t, model)?)
}

/// Sample mean and its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub paths: u64,
}

/// Uniform draw in `[0, 1)` from the top 53 bits.
fn uniform(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Discounted repurchase cost along one path. Path `i` draws from ChaCha8
/// stream `i` of `seed`, so paths are independent of evaluation order.
fn simulate_path(f: &impl PriceCurve, t: YearTime, model: &PermanenceModel, seed: u64, path: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path);
    let end = t + model.t_perm;
    let d_t = model.funding_curve.discount(t);
    let loss = 1.0 - model.recovery;
    let mut u = t;
    let mut cost = 0.0;
    loop {
        u += -libm::log(1.0 - uniform(&mut rng)) / model.hazard;
        if u > end {
            return cost;
        }
        cost += model.funding_curve.discount(u) / d_t * f.price(u) * loss;
    }
}

/// Monte Carlo estimate of [`pv_permanence`] from simulated default times.
pub fn simulate_permanence_cost(
    f: &impl PriceCurve,
    t: YearTime,
    model: &PermanenceModel,
    n_paths: u64,
    seed: u64,
) -> Result<McEstimate> {
    if n_paths == 0 {
        return Err(Error::InvalidField {
            field: "n_paths",
            reason: "must be >= 1",
        });
    }
    ensure_available(f, t)?;
    if model.hazard == 0.0 {
        return Ok(McEstimate {
            mean: 0.0,
            std_error: 0.0,
            paths: n_paths,
        });
    }
    // Welford
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for i in 0..n_paths {
        let x = simulate_path(f, t, model, seed, i);
        let delta = x - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (x - mean);
    }
    let std_error = if n_paths > 1 {
        libm::sqrt(m2 / (n_paths - 1) as f64 / n_paths as f64)
    } else {
        0.0
    };
    Ok(McEstimate {
        mean,
        std_error,
        paths: n_paths,
    })
}

/// One row of a permanence curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PermanencePoint {
    pub t: YearTime,
    pub raw_cost: f64,
    pub add_on: f64,
    pub adjusted_cost: f64,
}

/// Running integral of `D_F(u) f(u)` on a monthly grid, so the add-on at many
/// dates costs one pass instead of one quadrature per date.
struct CumulativeIntegral {
    start: f64,
    step: f64,
    values: Vec<f64>,
}

impl CumulativeIntegral {
    fn new(start: f64, end: f64, g: impl Fn(f64) -> f64) -> Self {
        let steps = libm::ceil((end - start) * MONTHS_PER_YEAR - 1e-9).max(1.0) as usize;
        let step = (end - start) / steps as f64;
        let mut values = Vec::with_capacity(steps + 1);
        values.push(0.0);
        let mut prev = g(start);
        let mut acc = 0.0;
        for k in 1..=steps {
            let next = g(start + k as f64 * step);
            acc += 0.5 * (prev + next) * step;
            values.push(acc);
            prev = next;
        }
        CumulativeIntegral { start, step, values }
    }

    fn at(&self, u: f64) -> f64 {
        let x = (u - self.start) / self.step;
        let last = self.values.len() - 1;
        if x <= 0.0 {
            return 0.0;
        }
        if x >= last as f64 {
            return self.values[last];
        }
        let i = libm::floor(x) as usize;
        let w = x - i as f64;
        self.values[i] + w * (self.values[i + 1] - self.values[i])
    }
}

/// Permanence curve of `f` at each of `times` (sorted, all available).
pub fn permanence_curve(
    f: &impl PriceCurve,
    model: &PermanenceModel,
    times: &[YearTime],
) -> Result<Vec<PermanencePoint>> {
    let (Some(&first), Some(&last)) = (times.first(), times.last()) else {
        return Ok(Vec::new());
    };
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::NonIncreasing("permanence curve times"));
    }
    ensure_available(f, first)?;
    let curve = &model.funding_curve;
    let intensity = model.loss_intensity();
    let cumulative = (intensity > 0.0).then(|| {
        CumulativeIntegral::new(first, last + model.t_perm, |u| curve.discount(u) * f.price(u))
    });
    Ok(times
        .iter()
        .map(|&t| {
            let raw_cost = f.price(t);
            let add_on = cumulative.as_ref().map_or(0.0, |c| {
                intensity * (c.at(t + model.t_perm) - c.at(t)) / curve.discount(t)
            });
            PermanencePoint {
                t,
                raw_cost,
                add_on,
                adjusted_cost: raw_cost + add_on,
            }
        })
        .collect())
}

/// Pointwise cheapest permanence-adjusted cost among `curves`.
///
/// Returns the tabulated curve and, per time, the index of the winning curve
/// (ties go to the earlier curve).
pub fn cheapest_adjusted_curve(
    curves: &[NetCostCurve],
    model: &PermanenceModel,
    times: &[YearTime],
) -> Result<(TabulatedCurve, Vec<usize>)> {
    let mut best: Vec<Option<(usize, f64)>> = alloc::vec![None; times.len()];
    for (ci, curve) in curves.iter().enumerate() {
        let from = times.partition_point(|&t| !curve.is_available(t));
        for (k, p) in permanence_curve(curve, model, &times[from..])?.into_iter().enumerate() {
            let slot = &mut best[from + k];
            if slot.is_none_or(|(_, v)| p.adjusted_cost < v) {
                *slot = Some((ci, p.adjusted_cost));
            }
        }
    }
    let mut values = Vec::with_capacity(times.len());
    let mut choice = Vec::with_capacity(times.len());
    for (k, slot) in best.into_iter().enumerate() {
        let (ci, v) = slot.ok_or_else(|| Error::Unavailable {
            technology: String::from("any NET"),
            time: times[k],
        })?;
        values.push(v);
        choice.push(ci);
    }
    Ok((TabulatedCurve::new(times.to_vec(), values)?, choice))
}
