//! Finite-window surrogates for limits: dyadic grids, log-slope trend
//! tests and robust limit fits. All results are estimates.

use serde::Serialize;

/// Fitted slope against `log r` above which a trace counts as growing.
pub const SLOPE_THRESHOLD: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Trend {
    Bounded,
    Growing,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendReport {
    pub trace: Vec<(f64, f64)>,
    pub slope: f64,
    pub verdict: Trend,
}

/// Points `lo·2^{k/per_octave}` up to `hi` inclusive of `lo`.
pub fn dyadic_grid(lo: f64, hi: f64, per_octave: usize) -> Vec<f64> {
    let m = per_octave.max(1) as f64;
    let mut out = Vec::new();
    let mut k = 0u32;
    loop {
        let r = lo * (k as f64 / m).exp2();
        if r > hi * (1.0 + 1e-12) {
            break;
        }
        out.push(r.min(hi));
        k += 1;
    }
    out
}

/// Least-squares slope of `v` against `ln r`.
pub fn log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    if points.len() < 2 {
        return 0.0;
    }
    let mx = points.iter().map(|p| p.0.ln()).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for &(r, v) in points {
        let dx = r.ln() - mx;
        sxy += dx * (v - my);
        sxx += dx * dx;
    }
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Slope test over the last two decades of the trace.
pub fn trend(trace: Vec<(f64, f64)>) -> TrendReport {
    let rmax = trace.iter().map(|p| p.0).fold(0.0, f64::max);
    let window: Vec<(f64, f64)> = trace.iter().copied().filter(|p| p.0 >= rmax / 100.0).collect();
    let slope = log_slope(&window);
    let verdict = if slope > SLOPE_THRESHOLD {
        Trend::Growing
    } else {
        Trend::Bounded
    };
    TrendReport { trace, slope, verdict }
}

/// As [`trend`] with values divided by `max(1, max |v|)`, so the verdict
/// does not depend on the overall scale of a bounded trace.
pub fn relative_trend(trace: Vec<(f64, f64)>) -> TrendReport {
    let scale = trace.iter().map(|p| p.1.abs()).fold(1.0, f64::max);
    let scaled: Vec<(f64, f64)> = trace.iter().map(|&(r, v)| (r, v / scale)).collect();
    let slope = trend(scaled).slope;
    let verdict = if slope > SLOPE_THRESHOLD {
        Trend::Growing
    } else {
        Trend::Bounded
    };
    TrendReport { trace, slope, verdict }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitFit {
    pub limit: f64,
    pub spread: f64,
    /// Fraction of grid points discarded as exceptional.
    pub exceptional_density: f64,
    pub stable: bool,
    pub window: (f64, f64),
}

/// Robust limit candidate: discard at most a `drop` fraction of the points
/// farthest from the median (only those off by more than `tol/2`), then
/// require the rest to lie within `tol` of each other.
pub fn fit_limit(points: &[(f64, f64)], drop: f64, tol: f64) -> LimitFit {
    let n = points.len();
    if n == 0 {
        return LimitFit {
            limit: f64::NAN,
            spread: f64::NAN,
            exceptional_density: 0.0,
            stable: false,
            window: (f64::NAN, f64::NAN),
        };
    }
    let window = (points[0].0, points[n - 1].0);
    let mut vals: Vec<f64> = points.iter().map(|p| p.1).collect();
    vals.sort_by(f64::total_cmp);
    let median = if n % 2 == 1 {
        vals[n / 2]
    } else {
        0.5 * (vals[n / 2 - 1] + vals[n / 2])
    };
    let mut by_residual = vals.clone();
    by_residual.sort_by(|a, b| (b - median).abs().total_cmp(&(a - median).abs()));
    let max_drop = (drop * n as f64).floor() as usize;
    let dropped = by_residual
        .iter()
        .take(max_drop)
        .take_while(|v| (*v - median).abs() > 0.5 * tol || v.is_nan())
        .count();
    let kept = &by_residual[dropped..];
    let lo = kept.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = kept.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let spread = hi - lo;
    LimitFit {
        limit: kept.iter().sum::<f64>() / kept.len() as f64,
        spread,
        exceptional_density: dropped as f64 / n as f64,
        stable: spread.is_finite() && spread < tol,
        window,
    }
}
