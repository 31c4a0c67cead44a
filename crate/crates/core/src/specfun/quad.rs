//! Globally adaptive Gauss-Kronrod (7/15) quadrature.
//!
//! Semi-infinite ranges are mapped onto `[0, 1)` with `t = a + s·v/(1-v)`;
//! power-law endpoint singularities `(t - a)^p` are removed by the
//! substitution `v = w^(1/(1+p))` before the rule ever sees them.

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

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Values of `log_f` further than this below the peak are treated as zero.
const LOG_CUTOFF: f64 = 52.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Interval {
    Finite { lower: f64, upper: f64 },
    /// `[lower, ∞)`; `scale` sets where the bulk of the mass sits.
    SemiInfinite { lower: f64, scale: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub relative_tolerance: f64,
    pub absolute_tolerance: f64,
    pub max_subdivisions: usize,
    pub interval: Interval,
    /// Exponent `p > -1` of an integrable `(t - lower)^p` behaviour.
    pub lower_exponent: Option<f64>,
    /// Exponent of `(upper - t)^p`; ignored on semi-infinite intervals.
    pub upper_exponent: Option<f64>,
    /// Interior points where the integrand changes character.
    pub breakpoints: Vec<f64>,
}

impl QuadratureSpec {
    pub fn finite(lower: f64, upper: f64) -> Self {
        Self::new(Interval::Finite { lower, upper })
    }

    pub fn semi_infinite(lower: f64) -> Self {
        Self::new(Interval::SemiInfinite { lower, scale: 1.0 })
    }

    fn new(interval: Interval) -> Self {
        Self {
            relative_tolerance: 1e-10,
            absolute_tolerance: 0.0,
            max_subdivisions: 2000,
            interval,
            lower_exponent: None,
            upper_exponent: None,
            breakpoints: Vec::new(),
        }
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        if let Interval::SemiInfinite { lower, .. } = self.interval {
            self.interval = Interval::SemiInfinite { lower, scale };
        }
        self
    }

    pub fn with_tolerance(mut self, relative_tolerance: f64) -> Self {
        self.relative_tolerance = relative_tolerance;
        self
    }

    pub fn with_absolute_tolerance(mut self, absolute_tolerance: f64) -> Self {
        self.absolute_tolerance = absolute_tolerance;
        self
    }

    pub fn with_max_subdivisions(mut self, max_subdivisions: usize) -> Self {
        self.max_subdivisions = max_subdivisions;
        self
    }

    pub fn with_lower_singularity(mut self, exponent: f64) -> Self {
        self.lower_exponent = Some(exponent);
        self
    }

    pub fn with_upper_singularity(mut self, exponent: f64) -> Self {
        self.upper_exponent = Some(exponent);
        self
    }

    pub fn with_breakpoints(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints.extend(points);
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.relative_tolerance > 0.0) {
            return Err(Error::domain("relative_tolerance must be > 0"));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::domain("max_subdivisions must be >= 1"));
        }
        match self.interval {
            Interval::Finite { lower, upper } => {
                if !(lower.is_finite() && upper.is_finite() && lower <= upper) {
                    return Err(Error::domain(format!("bad interval [{lower}, {upper}]")));
                }
            }
            Interval::SemiInfinite { lower, scale } => {
                if !lower.is_finite() || !(scale > 0.0) {
                    return Err(Error::domain("semi-infinite interval needs finite lower, scale > 0"));
                }
            }
        }
        for p in [self.lower_exponent, self.upper_exponent].into_iter().flatten() {
            if !(p > -1.0) {
                return Err(Error::domain(format!("endpoint exponent {p} is not integrable")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

/// How a piece of the original range is mapped onto `w ∈ [0, 1]`.
#[derive(Clone, Copy, Debug)]
enum Map {
    Linear { a: f64, b: f64 },
    LowerPower { a: f64, b: f64, k: f64 },
    UpperPower { a: f64, b: f64, k: f64 },
    Tail { a: f64, scale: f64, k: f64 },
}

impl Map {
    /// Returns `(t, dt/dw)`.
    #[inline]
    fn eval(&self, w: f64) -> (f64, f64) {
        match *self {
            Map::Linear { a, b } => (a + (b - a) * w, b - a),
            Map::LowerPower { a, b, k } => {
                let wk = w.powf(k);
                (a + (b - a) * wk, (b - a) * k * wk / w)
            }
            Map::UpperPower { a, b, k } => {
                let wk = w.powf(k);
                (b - (b - a) * wk, (b - a) * k * wk / w)
            }
            Map::Tail { a, scale, k } => {
                let (v, dv) = if k == 1.0 {
                    (w, 1.0)
                } else {
                    let wk = w.powf(k);
                    (wk, k * wk / w)
                };
                let one_minus = 1.0 - v;
                (a + scale * v / one_minus, scale * dv / (one_minus * one_minus))
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Panel {
    piece: usize,
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F>(f: &F, map: &Map, lo: f64, hi: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let eval = |w: f64| -> Result<f64> {
        let (t, jac) = map.eval(w);
        if !t.is_finite() || jac == 0.0 || !jac.is_finite() {
            return Ok(0.0);
        }
        let v = f(t)? * jac;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::domain(format!("integrand is not finite at t = {t}")))
        }
    };

    let fc = eval(centre)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut resabs = kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(centre - dx)?;
        let f2 = eval(centre + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let result = kronrod * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut err = ((kronrod - gauss) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Ok((result, err))
}

fn pieces(spec: &QuadratureSpec) -> Vec<Map> {
    let (lower, upper) = match spec.interval {
        Interval::Finite { lower, upper } => (lower, Some(upper)),
        Interval::SemiInfinite { lower, .. } => (lower, None),
    };
    let mut cuts: Vec<f64> = spec
        .breakpoints
        .iter()
        .copied()
        .filter(|p| p.is_finite() && *p > lower && upper.map_or(true, |u| *p < u))
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut edges = vec![lower];
    edges.extend(cuts);
    let mut maps = Vec::new();
    let n_finite = if upper.is_some() { edges.len() } else { edges.len() - 1 };
    if let Some(u) = upper {
        edges.push(u);
    }
    let k_of = |p: f64| 1.0 / (1.0 + p);

    for i in 0..n_finite {
        let (a, b) = (edges[i], edges[i + 1]);
        if b <= a {
            continue;
        }
        let lo_hint = if i == 0 { spec.lower_exponent } else { None };
        let hi_hint = if i + 1 == n_finite && upper.is_some() { spec.upper_exponent } else { None };
        match (lo_hint, hi_hint) {
            (Some(pl), Some(pu)) => {
                let mid = 0.5 * (a + b);
                maps.push(Map::LowerPower { a, b: mid, k: k_of(pl) });
                maps.push(Map::UpperPower { a: mid, b, k: k_of(pu) });
            }
            (Some(pl), None) => maps.push(Map::LowerPower { a, b, k: k_of(pl) }),
            (None, Some(pu)) => maps.push(Map::UpperPower { a, b, k: k_of(pu) }),
            (None, None) => maps.push(Map::Linear { a, b }),
        }
    }
    if let Interval::SemiInfinite { scale, .. } = spec.interval {
        let a = *edges.last().unwrap();
        let hint = if edges.len() == 1 { spec.lower_exponent } else { None };
        maps.push(Map::Tail { a, scale, k: hint.map_or(1.0, k_of) });
    }
    maps
}

/// Integrates a fallible integrand.
pub fn try_integrate<F>(f: F, spec: &QuadratureSpec) -> Result<Quadrature>
where
    F: Fn(f64) -> Result<f64>,
{
    spec.validate()?;
    let maps = pieces(spec);
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new();
    for (piece, map) in maps.iter().enumerate() {
        let (value, error) = gauss_kronrod(&f, map, 0.0, 1.0)?;
        heap.push(Panel { piece, lo: 0.0, hi: 1.0, value, error });
    }
    let mut subdivisions = heap.len();

    loop {
        let (total, err) = heap
            .iter()
            .chain(frozen.iter())
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
        let target = spec.absolute_tolerance.max(spec.relative_tolerance * total.abs());
        if err <= target {
            return Ok(Quadrature { value: total, error: err, subdivisions });
        }
        let Some(worst) = heap.pop() else {
            return Err(Error::Convergence { estimate: total, error_bound: err, subdivisions });
        };
        if subdivisions >= spec.max_subdivisions {
            heap.push(worst);
            return Err(Error::Convergence { estimate: total, error_bound: err, subdivisions });
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) || worst.hi - worst.lo < 1e-14 {
            frozen.push(worst);
            continue;
        }
        let map = &maps[worst.piece];
        let (v1, e1) = gauss_kronrod(&f, map, worst.lo, mid)?;
        let (v2, e2) = gauss_kronrod(&f, map, mid, worst.hi)?;
        heap.push(Panel { piece: worst.piece, lo: worst.lo, hi: mid, value: v1, error: e1 });
        heap.push(Panel { piece: worst.piece, lo: mid, hi: worst.hi, value: v2, error: e2 });
        subdivisions += 1;
    }
}

/// Adaptive integral of `f` over `spec.interval`.
pub fn integrate<F>(f: F, spec: &QuadratureSpec) -> Result<Quadrature>
where
    F: Fn(f64) -> f64,
{
    try_integrate(|t| Ok(f(t)), spec)
}

/// `ln ∫ exp(log_f(u)) du` over `(lower, upper)` (`None` = unbounded) for a
/// unimodal `log_f` whose mode is `mode`.
///
/// The integrand is shifted by its peak value before integration, so the
/// result is usable when the integral itself is far outside f64 range.
pub fn log_integral_unimodal<F>(
    log_f: F,
    lower: Option<f64>,
    upper: Option<f64>,
    mode: f64,
    relative_tolerance: f64,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut mode = mode;
    if let Some(l) = lower {
        mode = mode.max(l);
    }
    if let Some(u) = upper {
        mode = mode.min(u);
    }
    let peak = log_f(mode);
    if !peak.is_finite() {
        return Err(Error::domain(format!("log-integrand not finite at its mode {mode}")));
    }
    let has_room = |dir: f64| match (dir > 0.0, lower, upper) {
        (true, _, Some(u)) => u > mode,
        (false, Some(l), _) => l < mode,
        _ => true,
    };

    let mut width = f64::INFINITY;
    for dir in [-1.0, 1.0] {
        if has_room(dir) {
            width = width.min(local_width(&log_f, mode, peak, dir));
        }
    }
    if !width.is_finite() || width <= 0.0 {
        width = 1.0;
    }

    let reach = |dir: f64, bound: Option<f64>| -> Result<f64> {
        let mut step = width;
        loop {
            let u = mode + dir * step;
            if let Some(b) = bound {
                if (dir > 0.0 && u >= b) || (dir < 0.0 && u <= b) {
                    return Ok(b);
                }
            }
            let v = log_f(u);
            if v.is_nan() || v == f64::INFINITY {
                return Err(Error::domain(format!("log-integrand invalid at {u}")));
            }
            if peak - v > LOG_CUTOFF {
                return Ok(u);
            }
            step *= 2.0;
            if step > 1e9 * width.max(1.0) {
                return Err(Error::domain("integrand does not decay"));
            }
        }
    };
    let lo = reach(-1.0, lower)?;
    let hi = reach(1.0, upper)?;
    if hi <= lo {
        return Ok(peak + (hi - lo).max(0.0).ln());
    }
    let breaks = [1.0, 4.0, 16.0]
        .iter()
        .flat_map(|m| [mode - m * width, mode + m * width])
        .chain(std::iter::once(mode));
    let spec = QuadratureSpec::finite(lo, hi)
        .with_tolerance(relative_tolerance)
        .with_breakpoints(breaks);
    let q = integrate(|u| (log_f(u) - peak).exp(), &spec)?;
    Ok(peak + q.value.ln())
}

/// Distance over which `log_f` drops by O(1) from the peak on one side.
fn local_width<F: Fn(f64) -> f64>(log_f: &F, mode: f64, peak: f64, dir: f64) -> f64 {
    let (mut h, mut short, mut long) = (1.0_f64, 0.0_f64, f64::INFINITY);
    for _ in 0..200 {
        let drop = peak - log_f(mode + dir * h);
        if drop.is_nan() || drop > 8.0 {
            long = h;
        } else if drop < 0.125 && h < 1e8 {
            short = h;
        } else {
            return h / (2.0 * drop.max(1e-3)).sqrt();
        }
        h = match (short > 0.0, long.is_finite()) {
            (true, true) => (short * long).sqrt(),
            (_, true) => h * 0.25,
            _ => h * 4.0,
        };
    }
    h
}

/// Root of a strictly decreasing function, bracketed outward from `guess`.
pub(crate) fn root_decreasing<G: Fn(f64) -> f64>(g: G, guess: f64) -> f64 {
    let mut step = 1.0;
    let (mut lo, mut hi) = (guess, guess);
    while g(lo) < 0.0 {
        lo -= step;
        step *= 2.0;
        if step > 1e12 {
            break;
        }
    }
    step = 1.0;
    while g(hi) > 0.0 {
        hi += step;
        step *= 2.0;
        if step > 1e12 {
            break;
        }
    }
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
