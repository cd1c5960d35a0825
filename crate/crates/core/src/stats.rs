//! Small numeric helpers shared across modules: empirical quantiles with
//! linear interpolation, moments, and order-statistic counts.

/// Empirical quantile of an ascending-sorted, non-empty slice, with linear
/// interpolation between order statistics (the common `h = (n-1)p` rule).
/// As `p` approaches 0 or 1 the result approaches the min or max.
pub(crate) fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    debug_assert!((0.0..=1.0).contains(&p));
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    let frac = h - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

/// `ceil(p * n)` with a snap to the nearest integer when `p * n` sits within
/// 1e-9 of one, so that exact fractions like 0.4 * 5 do not round up thanks
/// to binary representation error. Clamped to `[1, n]` for `p` in (0, 1).
pub(crate) fn ceil_fraction(p: f64, n: usize) -> usize {
    let x = p * n as f64;
    let snapped = if (x - x.round()).abs() < 1e-9 { x.round() } else { x.ceil() };
    (snapped as usize).clamp(1, n)
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample standard deviation (n-1 denominator); 0 for length-1 input.
pub(crate) fn sample_sd(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let m = mean(values);
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    (ss / (n - 1) as f64).sqrt()
}

pub(crate) fn is_constant(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}
