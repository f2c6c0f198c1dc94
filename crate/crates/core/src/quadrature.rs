//! Adaptive Gauss–Kronrod (7/15-point) integration of functions that may
//! themselves be approximate, carrying an error bar alongside each value.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::Serialize;

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
/// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// A value with an absolute error estimate and an evaluation count.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub err_estimate: f64,
    pub evaluations: u64,
    /// False when the subdivision budget ran out before reaching the tolerance.
    pub converged: bool,
}

impl QuadratureResult {
    pub fn exact(value: f64) -> Self {
        QuadratureResult { value, err_estimate: 0.0, evaluations: 1, converged: true }
    }

    pub fn add(&mut self, other: QuadratureResult) {
        self.value += other.value;
        self.err_estimate += other.err_estimate;
        self.evaluations += other.evaluations;
        self.converged &= other.converged;
    }

    pub fn scaled(mut self, c: f64) -> Self {
        self.value *= c;
        self.err_estimate *= c.abs();
        self
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    /// |Kronrod − Gauss| for this segment.
    err: f64,
    /// Propagated error of the integrand values.
    inner: f64,
    evals: u64,
    converged: bool,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
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
        self.err.total_cmp(&other.err)
    }
}

fn rule<F>(f: &F, a: f64, b: f64, parallel: bool) -> Segment
where
    F: Fn(f64) -> QuadratureResult + Sync,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let nodes: Vec<f64> = XGK[..7]
        .iter()
        .flat_map(|&x| [c - h * x, c + h * x])
        .chain(std::iter::once(c))
        .collect();
    let vals: Vec<QuadratureResult> = if parallel {
        nodes.par_iter().map(|&x| f(x)).collect()
    } else {
        nodes.iter().map(|&x| f(x)).collect()
    };
    let mut k = WGK[7] * vals[14].value;
    let mut g = WG[3] * vals[14].value;
    let mut inner = WGK[7] * vals[14].err_estimate;
    let mut evals = vals[14].evaluations;
    let mut converged = vals[14].converged;
    for i in 0..7 {
        let (lo, hi) = (vals[2 * i], vals[2 * i + 1]);
        k += WGK[i] * (lo.value + hi.value);
        inner += WGK[i] * (lo.err_estimate + hi.err_estimate);
        if i % 2 == 1 {
            g += WG[i / 2] * (lo.value + hi.value);
        }
        evals += lo.evaluations + hi.evaluations;
        converged &= lo.converged && hi.converged;
    }
    Segment { a, b, value: k * h, err: ((k - g) * h).abs(), inner: inner * h, evals, converged }
}

/// Integrate f over [a, b], bisecting the segment with the largest rule error
/// until the summed rule error drops below `tol`.
///
/// `f` returns its own error estimate, which is propagated with the Kronrod
/// weights and added to the reported error; subdivision cannot reduce it, so
/// callers should evaluate `f` to a correspondingly tighter tolerance. With
/// `parallel` the nodes of each rule run on rayon.
pub fn adaptive_gk<F>(f: F, a: f64, b: f64, tol: f64, max_segments: usize, parallel: bool) -> QuadratureResult
where
    F: Fn(f64) -> QuadratureResult + Sync,
{
    if !(b > a) {
        return QuadratureResult { value: 0.0, err_estimate: 0.0, evaluations: 0, converged: true };
    }
    let mut heap = BinaryHeap::new();
    let first = rule(&f, a, b, parallel);
    let mut total = first.err;
    heap.push(first);
    let mut evals_dropped = 0;
    while total > tol && heap.len() < max_segments {
        let worst = heap.pop().expect("nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            break;
        }
        evals_dropped += worst.evals;
        let (left, right) = (rule(&f, worst.a, mid, parallel), rule(&f, mid, worst.b, parallel));
        total += left.err + right.err - worst.err;
        if heap.len() % 256 == 0 {
            total = heap.iter().map(|s| s.err).sum::<f64>() + left.err + right.err;
        }
        heap.push(left);
        heap.push(right);
    }
    let mut segs: Vec<Segment> = heap.into_vec();
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let rule_err: f64 = segs.iter().map(|s| s.err).sum();
    QuadratureResult {
        value: segs.iter().map(|s| s.value).sum(),
        err_estimate: rule_err + segs.iter().map(|s| s.inner).sum::<f64>(),
        evaluations: evals_dropped + segs.iter().map(|s| s.evals).sum::<u64>(),
        converged: rule_err <= tol && segs.iter().all(|s| s.converged),
    }
}

/// Convenience wrapper for an exactly computable integrand.
pub fn integrate_fn<F>(f: F, a: f64, b: f64, tol: f64) -> QuadratureResult
where
    F: Fn(f64) -> f64 + Sync,
{
    adaptive_gk(|x| QuadratureResult::exact(f(x)), a, b, tol, 2000, false)
}
