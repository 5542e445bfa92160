//! Globally adaptive Gauss–Kronrod (7/15) quadrature on finite intervals and
//! on `[0, ∞)`.
//!
//! The half line is split at caller-supplied breakpoints; the last piece
//! `[c, ∞)` is mapped onto `[0, 1)` by `v = c + s·t/(1−t)`. All pieces share
//! one priority queue, so refinement effort goes wherever the local error
//! estimate is largest. The error estimate of a panel is `|K15 − G7|`, which
//! bounds the Gauss error and is therefore pessimistic for the Kronrod value
//! that is actually returned.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the even-indexed Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Upper bound on the number of panels held at once.
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-7,
            abs_tol: 1e-14,
            max_intervals: 4_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// Sum of per-panel `|K15 − G7|` estimates.
    pub abs_error: f64,
    pub evaluations: usize,
    pub intervals: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
enum Map {
    Identity,
    /// `v = origin + scale · t / (1 − t)` for `t ∈ [0, 1)`.
    Tail { origin: f64, scale: f64 },
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    map: Map,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
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
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn eval_mapped<F: Fn(f64) -> f64>(f: &F, map: Map, t: f64) -> f64 {
    match map {
        Map::Identity => f(t),
        Map::Tail { origin, scale } => {
            let one_minus = 1.0 - t;
            let v = origin + scale * t / one_minus;
            if !v.is_finite() {
                return 0.0;
            }
            let y = f(v);
            if y == 0.0 {
                0.0
            } else {
                y * scale / (one_minus * one_minus)
            }
        }
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, map: Map, lo: f64, hi: f64) -> (f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = eval_mapped(f, map, center);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = eval_mapped(f, map, center - dx) + eval_mapped(f, map, center + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

fn run<F: Fn(f64) -> f64>(f: &F, seeds: Vec<(f64, f64, Map)>, opts: &QuadOptions) -> QuadResult {
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for (lo, hi, map) in seeds {
        let (value, error) = kronrod15(f, map, lo, hi);
        evaluations += 15;
        heap.push(Panel {
            lo,
            hi,
            map,
            value,
            error,
        });
    }

    let totals = |heap: &BinaryHeap<Panel>| {
        heap.iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error))
    };

    let mut converged = false;
    loop {
        let (value, error) = totals(&heap);
        if !value.is_finite() || !error.is_finite() {
            break;
        }
        if error <= opts.abs_tol.max(opts.rel_tol * value.abs()) {
            converged = true;
            break;
        }
        if heap.len() >= opts.max_intervals {
            break;
        }
        let worst = heap.pop().expect("non-empty panel set");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // panel cannot be split further in f64
            heap.push(worst);
            break;
        }
        for (lo, hi) in [(worst.lo, mid), (mid, worst.hi)] {
            let (value, error) = kronrod15(f, worst.map, lo, hi);
            evaluations += 15;
            heap.push(Panel {
                lo,
                hi,
                map: worst.map,
                value,
                error,
            });
        }
    }

    // Sum in a fixed order so the result does not depend on heap layout.
    let mut panels = heap.into_vec();
    panels.sort_by(|a, b| {
        a.map_key()
            .total_cmp(&b.map_key())
            .then(a.lo.total_cmp(&b.lo))
    });
    let (value, abs_error) = panels
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
    QuadResult {
        value,
        abs_error,
        evaluations,
        intervals: panels.len(),
        converged: converged && value.is_finite(),
    }
}

impl Panel {
    fn map_key(&self) -> f64 {
        match self.map {
            Map::Identity => 0.0,
            Map::Tail { origin, .. } => 1.0 + origin,
        }
    }
}

/// Integrates `f` over the finite interval `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> QuadResult {
    if a == b {
        return QuadResult {
            value: 0.0,
            abs_error: 0.0,
            evaluations: 0,
            intervals: 0,
            converged: true,
        };
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut r = run(&f, vec![(lo, hi, Map::Identity)], opts);
    r.value *= sign;
    r
}

/// Integrates `f` over `[0, ∞)`.
///
/// `breakpoints` are positive abscissae where the integrand changes scale
/// (they need not be sorted or distinct). The tail beyond the largest one is
/// mapped with that breakpoint as its length scale.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, breakpoints: &[f64], opts: &QuadOptions) -> QuadResult {
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|c| c.is_finite() && *c > 0.0)
        .collect();
    if cuts.is_empty() {
        cuts.push(1.0);
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut seeds = Vec::with_capacity(cuts.len() + 1);
    let mut lo = 0.0;
    for &c in &cuts {
        seeds.push((lo, c, Map::Identity));
        lo = c;
    }
    seeds.push((
        0.0,
        1.0,
        Map::Tail {
            origin: lo,
            scale: lo,
        },
    ));
    run(&f, seeds, opts)
}
