//! Numeric truncation oracle: partial `ℓ^θ` sums over nested windows.
//!
//! Grid and radial sectors are summed point by point through the weight's
//! evaluator. Along unbounded fibers the inner sum over `m` is done exactly
//! for short ranges and by a midpoint integral beyond that, so fibers whose
//! inner edge sits at `2^{κn}` stay cheap. The window of radius `R` keeps
//! `|n_j| ≤ R` and truncates every fiber at `2^R` times its inner edge.

use alloc::vec;
use alloc::vec::Vec;

use super::{ExpPolyWeight, Fiber, Region, Sector};
use crate::exponents::ExtExponent;
use crate::numeric::{ceil_pow2, log2_one_minus_exp2, rat_f64, LogAcc};

/// A positive sequence that can report masses of window shells.
pub trait LatticeSeries {
    /// Number of coordinates of an index.
    fn dimension(&self) -> usize;

    /// `log2` of `Σ w^θ` (or of `sup w` for `θ = ∞`) over
    /// `window(hi) \ window(lo)`; `-∞` when that set is empty.
    fn log2_mass(&self, lo: Option<u64>, hi: u64, theta: ExtExponent) -> f64;
}

/// A black-box sequence on a grid or radial sector, given by `log2 w`.
pub struct FnSeries<F> {
    pub sector: Sector,
    pub log2_w: F,
}

impl<F: Fn(&[i64]) -> f64> LatticeSeries for FnSeries<F> {
    fn dimension(&self) -> usize {
        self.sector.arity()
    }

    fn log2_mass(&self, lo: Option<u64>, hi: u64, theta: ExtExponent) -> f64 {
        let mut acc = LogAcc::new();
        cube_shell(&self.sector, lo, hi, |idx| push(&mut acc, (self.log2_w)(idx), theta));
        acc.log2()
    }
}

impl LatticeSeries for ExpPolyWeight {
    fn dimension(&self) -> usize {
        self.arity()
    }

    fn log2_mass(&self, lo: Option<u64>, hi: u64, theta: ExtExponent) -> f64 {
        let mut acc = LogAcc::new();
        for r in self.regions() {
            match &r.sector {
                Sector::Fibered { .. } => fibered_shell(r, lo, hi, theta, &mut acc),
                s => cube_shell(s, lo, hi, |idx| push(&mut acc, r.log2_at(idx), theta)),
            }
        }
        acc.log2()
    }
}

fn push(acc: &mut LogAcc, log2_w: f64, theta: ExtExponent) {
    match theta.finite() {
        Some(t) => acc.add(rat_f64(t) * log2_w),
        None => acc.add_max(log2_w),
    }
}

fn axis_range(axis: super::Axis, hi: i64) -> (i64, i64) {
    match axis {
        super::Axis::Natural => (0, hi),
        super::Axis::Negative => (-hi, -1),
        super::Axis::Integers => (-hi, hi),
    }
}

/// Visits the points of a grid or radial sector with `lo < max_j |k_j| ≤ hi`.
fn cube_shell(sector: &Sector, lo: Option<u64>, hi: u64, mut f: impl FnMut(&[i64])) {
    let hi = hi as i64;
    let lo = lo.map(|l| l as i64).unwrap_or(-1);
    let ranges: Vec<(i64, i64)> = match sector {
        Sector::Grid(axes) => axes.iter().map(|&a| axis_range(a, hi)).collect(),
        Sector::Radial { dim } => vec![(-hi, hi); *dim as usize],
        Sector::Fibered { .. } => unreachable!("fibered sectors use fibered_shell"),
    };
    if ranges.iter().any(|&(a, b)| a > b) {
        return;
    }
    let mut idx: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        let norm = idx.iter().map(|k| k.abs()).max().unwrap_or(0);
        if norm > lo && sector.contains(&idx) {
            f(&idx);
        }
        let mut j = 0;
        loop {
            if j == idx.len() {
                return;
            }
            if idx[j] < ranges[j].1 {
                idx[j] += 1;
                break;
            }
            idx[j] = ranges[j].0;
            j += 1;
        }
    }
}

/// Absolute `m` ranges `[a, b]` given by `log2` endpoints.
#[derive(Clone, Copy)]
struct Span {
    a_l2: f64,
    b_l2: f64,
}

const EXACT_LOG2: f64 = 50.0;
const DIRECT_TERMS: f64 = 4096.0;

fn inner_edge_log2(fiber: Fiber, n: i64) -> Option<f64> {
    match fiber {
        Fiber::Punctured => Some(0.0),
        Fiber::Above { kappa, plus_one } => {
            let e = rat_f64(kappa) * n as f64;
            if e < EXACT_LOG2 {
                Some(libm::log2(ceil_pow2(e) + if plus_one { 1.0 } else { 0.0 }))
            } else {
                Some(e)
            }
        }
        _ => None,
    }
}

fn fibered_shell(r: &Region, lo: Option<u64>, hi: u64, theta: ExtExponent, acc: &mut LogAcc) {
    let (axis, fiber) = match &r.sector {
        Sector::Fibered { axis, fiber } => (*axis, *fiber),
        _ => unreachable!(),
    };
    let (n0, n1) = axis_range(axis, hi as i64);
    let lo_i = lo.map(|l| l as i64).unwrap_or(-1);
    for n in n0..=n1 {
        let outer = n.abs() > lo_i;
        match fiber {
            Fiber::Origin => {
                if outer {
                    push(acc, r.log2_at(&[n, 0]), theta);
                }
            }
            Fiber::Below { kappa, minus_one } => {
                if !outer {
                    continue;
                }
                push(acc, r.log2_at(&[n, 0]), theta);
                let e = rat_f64(kappa) * n as f64;
                let top_l2 = if e < EXACT_LOG2 {
                    let top = ceil_pow2(e) - if minus_one { 1.0 } else { 0.0 };
                    if top < 1.0 {
                        continue;
                    }
                    libm::log2(top)
                } else {
                    e
                };
                fiber_span(r, n, Span { a_l2: 0.0, b_l2: top_l2 }, theta, acc);
            }
            Fiber::Punctured | Fiber::Above { .. } => {
                let edge = inner_edge_log2(fiber, n).expect("unbounded fiber");
                let top = edge + hi as f64;
                if outer {
                    fiber_span(r, n, Span { a_l2: edge, b_l2: top }, theta, acc);
                } else if let Some(l) = lo {
                    let from = edge + l as f64;
                    let a_l2 = if from < EXACT_LOG2 { libm::log2(libm::exp2(from) + 1.0) } else { from };
                    fiber_span(r, n, Span { a_l2, b_l2: top }, theta, acc);
                }
            }
        }
    }
}

/// Adds `Σ_{a ≤ |m| ≤ b} w(n, m)^θ` (both signs of `m`).
fn fiber_span(r: &Region, n: i64, span: Span, theta: ExtExponent, acc: &mut LogAcc) {
    if span.b_l2 < span.a_l2 {
        return;
    }
    let small = span.b_l2 < EXACT_LOG2;
    let (a, b) = (libm::round(libm::exp2(span.a_l2)), libm::round(libm::exp2(span.b_l2)));
    if small && b - a < DIRECT_TERMS {
        let mut m = a;
        while m <= b {
            push(acc, 1.0 / theta_scale(theta) + r.log2_at(&[n, m as i64]), theta);
            m += 1.0;
        }
        return;
    }
    for atom in &r.atoms {
        let base = atom.log2_at(&r.sector, &[n, 1]);
        let rho = rat_f64(atom.fiber);
        match theta.finite() {
            Some(t) => {
                let t = rat_f64(t);
                acc.add(1.0 + t * base + log2_power_sum(span, t * rho));
            }
            None => {
                let edge = if rho >= 0.0 { span.b_l2 } else { span.a_l2 };
                acc.add_max(base + rho * edge);
            }
        }
    }
}

/// Factor turning the `+1` for `±m` into the θ-scaled domain used by `push`.
fn theta_scale(theta: ExtExponent) -> f64 {
    match theta.finite() {
        Some(t) => rat_f64(t),
        None => f64::INFINITY,
    }
}

/// `log2 Σ_{m=a}^{b} m^s` for a span with `a ≥ 1`.
fn log2_power_sum(span: Span, s: f64) -> f64 {
    let mut acc = LogAcc::new();
    let mut from_l2 = span.a_l2;
    if span.a_l2 < EXACT_LOG2 {
        let a = libm::round(libm::exp2(span.a_l2));
        let b = if span.b_l2 < EXACT_LOG2 { libm::round(libm::exp2(span.b_l2)) } else { f64::INFINITY };
        let stop = if b - a < DIRECT_TERMS { b } else { a + 2047.0 };
        let mut m = a;
        while m <= stop {
            acc.add(s * libm::log2(m));
            m += 1.0;
        }
        if stop >= b {
            return acc.log2();
        }
        from_l2 = libm::log2(stop + 0.5);
    }
    let to_l2 = if span.b_l2 < EXACT_LOG2 { libm::log2(libm::exp2(span.b_l2) + 0.5) } else { span.b_l2 };
    acc.add(log2_power_integral(from_l2, to_l2, s));
    acc.log2()
}

/// `log2 ∫_a^b x^s dx` from `log2` endpoints.
fn log2_power_integral(a_l2: f64, b_l2: f64, s: f64) -> f64 {
    if b_l2 <= a_l2 {
        return f64::NEG_INFINITY;
    }
    let t = s + 1.0;
    let width = b_l2 - a_l2;
    if libm::fabs(t) < 1e-12 {
        return libm::log2(width * core::f64::consts::LN_2);
    }
    if t > 0.0 {
        t * b_l2 + log2_one_minus_exp2(t * width) - libm::log2(t)
    } else {
        t * a_l2 + log2_one_minus_exp2(-t * width) - libm::log2(-t)
    }
}

/// Nested window radii; the last three drive the classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusSchedule {
    radii: Vec<u64>,
}

impl RadiusSchedule {
    /// Strictly increasing radii, at least three, the last at least 3.
    pub fn new(mut radii: Vec<u64>) -> Option<Self> {
        radii.dedup();
        let ok = radii.len() >= 3 && radii.windows(2).all(|w| w[0] < w[1]) && *radii.last()? >= 3;
        ok.then_some(RadiusSchedule { radii })
    }

    /// `2^lo, …, 2^hi`.
    pub fn dyadic(lo: u32, hi: u32) -> Self {
        Self::new((lo..=hi).map(|e| 1u64 << e).collect()).expect("at least three dyadic radii")
    }

    /// Up to `2^14` in one dimension, `2^8` per axis in two, `2^5` beyond.
    pub fn for_dimension(d: usize) -> Self {
        match d {
            0 | 1 => Self::dyadic(3, 14),
            2 => Self::dyadic(3, 8),
            _ => Self::dyadic(2, 5),
        }
    }

    pub fn radii(&self) -> &[u64] {
        &self.radii
    }

    pub fn last(&self) -> u64 {
        *self.radii.last().expect("nonempty")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Partial sums beyond this count as divergent.
    pub blowup: f64,
    /// Growth between the last two radii that counts as divergent.
    pub growth_factor: f64,
    /// Largest shell ratio accepted as geometric decay.
    pub decay_ratio: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { blowup: 1e12, growth_factor: 1.5, decay_ratio: 0.9 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailVerdict {
    /// `partial_sum` is `Σ w^θ` (or `sup w`) on the last window.
    Convergent { partial_sum: f64, tail_bound: f64 },
    /// `growth` is the ratio of the last two partial sums.
    Divergent { partial_sum: f64, growth: f64 },
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailClassification {
    pub verdict: TailVerdict,
    pub window_radius: u64,
}

impl TailClassification {
    pub fn is_convergent(&self) -> bool {
        matches!(self.verdict, TailVerdict::Convergent { .. })
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self.verdict, TailVerdict::Divergent { .. })
    }

    /// `Some(true)` for Convergent, `Some(false)` for Divergent.
    pub fn decided(&self) -> Option<bool> {
        match self.verdict {
            TailVerdict::Convergent { .. } => Some(true),
            TailVerdict::Divergent { .. } => Some(false),
            TailVerdict::Inconclusive => None,
        }
    }
}

/// `2^{a-b}`, with `0/0 = 0` and `x/0 = ∞`.
fn ratio(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        0.0
    } else if b == f64::NEG_INFINITY {
        f64::INFINITY
    } else {
        libm::exp2(a - b)
    }
}

/// Classifies `Σ w^θ` (or `sup w`) from partial sums over nested windows.
pub fn truncated_oracle<S: LatticeSeries + ?Sized>(
    w: &S,
    theta: ExtExponent,
    schedule: &RadiusSchedule,
    config: &OracleConfig,
) -> TailClassification {
    let radii = schedule.radii();
    let top = schedule.last();
    let mut shells = Vec::with_capacity(radii.len());
    let mut partial = Vec::with_capacity(radii.len());
    let mut acc = LogAcc::new();
    let mut prev = None;
    for &r in radii {
        let s = w.log2_mass(prev, r, theta);
        if theta.is_infinite() {
            acc.add_max(s);
        } else {
            acc.add(s);
        }
        shells.push(s);
        partial.push(acc.log2());
        prev = Some(r);
    }
    let j = radii.len() - 1;
    let (last, before) = (partial[j], partial[j - 1]);
    let growth = ratio(last, before);
    let done = |verdict| TailClassification { verdict, window_radius: top };
    if last > libm::log2(config.blowup) || growth >= config.growth_factor {
        return done(TailVerdict::Divergent { partial_sum: libm::exp2(last), growth });
    }
    let unit: Vec<f64> = (0..3).map(|i| w.log2_mass(Some(top - i - 1), top - i, theta)).collect();
    let partial_sum = libm::exp2(last);
    if theta.is_infinite() {
        let monotone = unit[0] <= unit[1] && unit[1] <= unit[2] && shells[j] <= shells[j - 1];
        return if monotone {
            done(TailVerdict::Convergent { partial_sum, tail_bound: libm::exp2(unit[0]) })
        } else {
            done(TailVerdict::Inconclusive)
        };
    }
    let rho_unit = ratio(unit[0], unit[1]).max(ratio(unit[1], unit[2]));
    if rho_unit <= config.decay_ratio {
        let tail_bound = libm::exp2(unit[0]) * rho_unit / (1.0 - rho_unit);
        return done(TailVerdict::Convergent { partial_sum, tail_bound });
    }
    let rho_dyadic = ratio(shells[j], shells[j - 1]).max(ratio(shells[j - 1], shells[j - 2]));
    if rho_dyadic <= config.decay_ratio {
        let tail_bound = libm::exp2(shells[j]) * rho_dyadic / (1.0 - rho_dyadic);
        return done(TailVerdict::Convergent { partial_sum, tail_bound });
    }
    done(TailVerdict::Inconclusive)
}
