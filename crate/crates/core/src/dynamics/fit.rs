//! Least-squares fit of `F(τ) = F∞ + (1 − F∞)·exp(−ln2·τ/λ)`.

use std::f64::consts::LN_2;

use crate::error::{CpcError, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfLifeFit {
    pub lambda: f64,
    pub f_inf: f64,
    /// Root-mean-square residual.
    pub residual: f64,
    /// The optimum sits on the edge of the scanned λ range, so the data do
    /// not constrain λ well.
    pub at_bound: bool,
}

fn best_f_inf(times: &[f64], values: &[f64], lambda: f64) -> (f64, f64) {
    let g: Vec<f64> = times.iter().map(|t| (-LN_2 * t / lambda).exp()).collect();
    let (mut num, mut den) = (0.0, 0.0);
    for (gi, fi) in g.iter().zip(values) {
        num += (fi - gi) * (1.0 - gi);
        den += (1.0 - gi) * (1.0 - gi);
    }
    let f_inf = if den > 0.0 {
        (num / den).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let sse = g
        .iter()
        .zip(values)
        .map(|(gi, fi)| (f_inf + (1.0 - f_inf) * gi - fi).powi(2))
        .sum();
    (f_inf, sse)
}

pub fn fit_half_life(times: &[f64], values: &[f64]) -> Result<HalfLifeFit> {
    if times.len() != values.len() {
        return Err(CpcError::Dimension(format!(
            "{} times, {} values",
            times.len(),
            values.len()
        )));
    }
    if times.len() < 4 {
        return Err(CpcError::InvalidArgument(
            "a half-life fit needs at least 4 points".into(),
        ));
    }
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo < 1e-12 {
        return Err(CpcError::Fit(format!(
            "degenerate series: constant at {lo}"
        )));
    }
    let t_hi = times.iter().cloned().fold(0.0, f64::max);
    let t_lo = times
        .iter()
        .cloned()
        .filter(|&t| t > 0.0)
        .fold(f64::INFINITY, f64::min);
    if !t_lo.is_finite() {
        return Err(CpcError::Fit("no positive times".into()));
    }
    let (a, b) = ((t_lo * 1e-2).ln(), (t_hi * 1e4).ln());
    const GRID: usize = 400;
    let sse = |x: f64| best_f_inf(times, values, x.exp()).1;
    let xs: Vec<f64> = (0..=GRID)
        .map(|i| a + (b - a) * i as f64 / GRID as f64)
        .collect();
    let best = (0..=GRID)
        .min_by(|&i, &j| sse(xs[i]).total_cmp(&sse(xs[j])))
        .expect("grid is non-empty");
    let at_bound = best == 0 || best == GRID;
    let (mut l, mut r) = (xs[best.saturating_sub(1)], xs[(best + 1).min(GRID)]);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = r - phi * (r - l);
    let mut d = l + phi * (r - l);
    for _ in 0..100 {
        if sse(c) < sse(d) {
            r = d;
        } else {
            l = c;
        }
        c = r - phi * (r - l);
        d = l + phi * (r - l);
    }
    let lambda = ((l + r) / 2.0).exp();
    let (f_inf, s) = best_f_inf(times, values, lambda);
    Ok(HalfLifeFit {
        lambda,
        f_inf,
        residual: (s / times.len() as f64).sqrt(),
        at_bound,
    })
}

/// Slope, intercept and R² of an ordinary least-squares line.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    (slope, my - slope * mx, r2)
}
