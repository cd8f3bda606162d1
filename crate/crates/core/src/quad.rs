//! Globally adaptive Gauss-Kronrod (7/15) quadrature with bisection.
//!
//! Finite pieces are integrated directly; half-infinite tails go through
//! `t = a + (1 - s)/s` on `(0, 1]`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_segments: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-10,
            rel: 1e-12,
            max_segments: 5000,
        }
    }
}

impl Tolerance {
    pub fn abs(abs: f64) -> Self {
        Tolerance {
            abs,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy)]
enum Piece {
    Finite,
    Upper(f64),
    Lower(f64),
}

struct Segment {
    piece: usize,
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = resk * h;
    resabs *= h.abs();
    resasc *= h.abs();
    let mut err = ((resk - resg) * h).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (value, err)
}

fn eval_piece<F: Fn(f64) -> f64>(f: &F, piece: Piece, s: f64) -> f64 {
    match piece {
        Piece::Finite => f(s),
        Piece::Upper(a) => f(a + (1.0 - s) / s) / (s * s),
        Piece::Lower(b) => f(b - (1.0 - s) / s) / (s * s),
    }
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, pieces: &[(Piece, f64, f64)], tol: Tolerance) -> Result<Estimate> {
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    for (i, &(piece, a, b)) in pieces.iter().enumerate() {
        if a == b {
            continue;
        }
        let g = |s: f64| eval_piece(f, piece, s);
        let (value, error) = kronrod(&g, a, b);
        total += value;
        total_err += error;
        heap.push(Segment {
            piece: i,
            a,
            b,
            value,
            error,
        });
    }
    loop {
        if !total.is_finite() || !total_err.is_finite() {
            return Err(Error::QuadratureFailure {
                estimate: f64::INFINITY,
                tol: tol.abs,
            });
        }
        let target = tol.abs.max(tol.rel * total.abs());
        if total_err <= target {
            return Ok(Estimate {
                value: total,
                error: total_err,
            });
        }
        if heap.len() >= tol.max_segments {
            return Err(Error::QuadratureFailure {
                estimate: total_err,
                tol: target,
            });
        }
        let Some(seg) = heap.pop() else {
            return Ok(Estimate {
                value: total,
                error: total_err,
            });
        };
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // cannot bisect further; accept what we have
            return Err(Error::QuadratureFailure {
                estimate: total_err,
                tol: target,
            });
        }
        let piece = pieces[seg.piece].0;
        let g = |s: f64| eval_piece(f, piece, s);
        let (v1, e1) = kronrod(&g, seg.a, mid);
        let (v2, e2) = kronrod(&g, mid, seg.b);
        total += v1 + v2 - seg.value;
        total_err += e1 + e2 - seg.error;
        if total_err < 0.0 {
            total_err = heap.iter().map(|s| s.error).sum::<f64>() + e1 + e2;
        }
        heap.push(Segment {
            piece: seg.piece,
            a: seg.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            piece: seg.piece,
            a: mid,
            b: seg.b,
            value: v2,
            error: e2,
        });
    }
}

fn sorted_inside(points: &[f64], a: f64, b: f64) -> Vec<f64> {
    let mut pts: Vec<f64> = points
        .iter()
        .copied()
        .filter(|p| p.is_finite() && *p > a && *p < b)
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Integral of `f` over `[a, b]` (`a <= b`, finite).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Estimate> {
    integrate_with_breaks(f, a, b, &[], tol)
}

/// Integral over `[a, b]` split at the given interior break points.
/// Either endpoint may be infinite.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: Tolerance,
) -> Result<Estimate> {
    if a > b {
        let r = integrate_with_breaks(f, b, a, breaks, tol)?;
        return Ok(Estimate {
            value: -r.value,
            error: r.error,
        });
    }
    let inner = sorted_inside(breaks, a, b);
    let mut knots = Vec::with_capacity(inner.len() + 2);
    knots.push(a);
    knots.extend(inner);
    knots.push(b);
    let mut pieces = Vec::new();
    for w in knots.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        match (lo.is_finite(), hi.is_finite()) {
            (true, true) => pieces.push((Piece::Finite, lo, hi)),
            (true, false) => pieces.push((Piece::Upper(lo), 0.0, 1.0)),
            (false, true) => pieces.push((Piece::Lower(hi), 0.0, 1.0)),
            (false, false) => {
                pieces.push((Piece::Lower(0.0), 0.0, 1.0));
                pieces.push((Piece::Upper(0.0), 0.0, 1.0));
            }
        }
    }
    adaptive(&f, &pieces, tol)
}

/// Integral over the whole real line with optional break points.
pub fn integrate_real_line<F: Fn(f64) -> f64>(f: F, breaks: &[f64], tol: Tolerance) -> Result<Estimate> {
    integrate_with_breaks(f, f64::NEG_INFINITY, f64::INFINITY, breaks, tol)
}
