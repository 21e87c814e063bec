//! Composite trapezoid quadrature on (at most) monthly steps.

use crate::calendar::MONTHS_PER_YEAR;

/// Number of equal sub-steps of at most one month covering `[a, b]`.
pub(crate) fn monthly_steps(a: f64, b: f64) -> usize {
    let n = libm::ceil((b - a) * MONTHS_PER_YEAR - 1e-9);
    if n < 1.0 {
        1
    } else {
        n as usize
    }
}

pub(crate) fn trapezoid(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let h = (b - a) / n as f64;
    let mut sum = 0.5 * (f(a) + f(b));
    for k in 1..n {
        sum += f(a + k as f64 * h);
    }
    sum * h
}

/// Trapezoid rule on monthly steps over `[a, b]`.
pub(crate) fn monthly_trapezoid(a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
    trapezoid(a, b, monthly_steps(a, b), f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_integrands_are_exact() {
        let v = monthly_trapezoid(2.0, 7.3, |t| 3.0 * t - 1.0);
        let exact = 1.5 * (7.3f64 * 7.3 - 4.0) - (7.3 - 2.0);
        assert!((v - exact).abs() < 1e-12);
    }

    #[test]
    fn steps_are_at_most_one_month() {
        assert_eq!(monthly_steps(0.0, 1.0), 12);
        assert_eq!(monthly_steps(0.0, 1.01), 13);
        assert_eq!(monthly_steps(0.0, 0.0), 1);
        assert_eq!(trapezoid(1.0, 1.0, 1, |_| 5.0), 0.0);
    }
}
