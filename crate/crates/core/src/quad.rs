//! Quadrature primitives: adaptive Gauss–Kronrod on finite panels,
//! tanh-sinh for endpoint singularities, exp-sinh for half-infinite tails,
//! and compensated summation.

// Tabulated constants carry more digits than an f64 holds.
#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

/// An integral value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    pub fn new(value: f64, error: f64) -> Self {
        Self { value, error }
    }
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, rhs: Estimate) -> Estimate {
        Estimate::new(self.value + rhs.value, self.error + rhs.error)
    }
}

/// Neumaier's compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = KahanSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

// Kronrod nodes on [0, 1]; odd indices are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_075,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// One application of the 21-point Kronrod rule with its embedded
/// 10-point Gauss rule. The error is the QUADPACK-style estimate.
pub fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Estimate {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = WGK[10] * fc;
    let mut resg = 0.0;
    let mut fv = [(0.0, 0.0); 10];
    for (j, &x) in XGK[..10].iter().enumerate() {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        resk += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
        fv[j] = (f1, f2);
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - reskh).abs();
    for (j, &(f1, f2)) in fv.iter().enumerate() {
        resasc += WGK[j] * ((f1 - reskh).abs() + (f2 - reskh).abs());
    }
    let value = resk * half;
    resasc *= half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let round = 50.0 * f64::EPSILON * (value.abs().max(resasc));
    Estimate::new(value, err.max(round))
}

struct Segment {
    a: f64,
    b: f64,
    est: Estimate,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.est.error == other.est.error
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
        self.est.error.total_cmp(&other.est.error)
    }
}

/// Globally adaptive Gauss–Kronrod integration on a finite interval.
///
/// Subdivides the segment with the largest error until the summed error is
/// below `max(abs_tol, rel_tol * |value|)` or `max_segments` is reached.
/// The returned estimate always carries the achieved error.
pub fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> Estimate {
    if a == b {
        return Estimate::default();
    }
    let first = gk21(f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, est: first });
    let mut total = first;
    let mut count = 1;
    while total.error > abs_tol.max(rel_tol * total.value.abs()) && count < max_segments {
        let seg = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a.min(seg.b) || mid >= seg.a.max(seg.b) {
            heap.push(seg);
            break;
        }
        let left = gk21(f, seg.a, mid);
        let right = gk21(f, mid, seg.b);
        total.value += left.value + right.value - seg.est.value;
        total.error += left.error + right.error - seg.est.error;
        heap.push(Segment { a: seg.a, b: mid, est: left });
        heap.push(Segment { a: mid, b: seg.b, est: right });
        count += 1;
    }
    // Re-sum to shed drift from the incremental updates.
    let mut v = KahanSum::new();
    let mut e = 0.0;
    for s in heap.iter() {
        v.add(s.est.value);
        e += s.est.error;
    }
    Estimate::new(v.value(), e)
}

/// Tanh-sinh quadrature on `[a, b]`, tolerant of integrable algebraic
/// singularities at either endpoint (the endpoints are never evaluated).
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Estimate {
    if a == b {
        return Estimate::default();
    }
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    // Contribution of the node pair at parameter t >= 0.
    let pair = |t: f64| -> f64 {
        let s = FRAC_PI_2 * t.sinh();
        let cs = s.cosh();
        let w = FRAC_PI_2 * t.cosh() / (cs * cs);
        if w == 0.0 {
            return 0.0;
        }
        if t == 0.0 {
            return w * f(mid);
        }
        // distance from the nearest endpoint, in units of `half`
        let d = 2.0 / ((2.0 * s).exp() + 1.0);
        let off = half * d;
        let mut acc = 0.0;
        let xl = a + off;
        let xr = b - off;
        if xl > a.min(b) && xl < a.max(b) {
            acc += f(xl);
        }
        if xr > a.min(b) && xr < a.max(b) {
            acc += f(xr);
        }
        w * acc
    };
    let t_max = 6.5;
    let mut h = 0.5;
    let mut sum = pair(0.0);
    let mut k = 1;
    while (k as f64) * h <= t_max {
        sum += pair(k as f64 * h);
        k += 1;
    }
    let mut prev = sum * h * half;
    let mut err = f64::INFINITY;
    for _level in 0..10 {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= t_max {
            sum += pair(k as f64 * h);
            k += 2;
        }
        let cur = sum * h * half;
        err = (cur - prev).abs();
        prev = cur;
        if err <= tol.max(4.0 * f64::EPSILON * cur.abs()) {
            break;
        }
    }
    Estimate::new(prev, err)
}

/// Exp-sinh quadrature for `∫_a^∞ f`, for integrands decaying at least
/// algebraically and without interior kinks.
pub fn exp_sinh<F: Fn(f64) -> f64>(f: &F, a: f64, tol: f64) -> Estimate {
    let node = |t: f64| -> f64 {
        let s = FRAC_PI_2 * t.sinh();
        let x = s.exp();
        let w = FRAC_PI_2 * t.cosh() * x;
        let y = a + x;
        if !y.is_finite() || y <= a {
            return 0.0;
        }
        let v = f(y);
        if v == 0.0 || !v.is_finite() {
            0.0
        } else {
            w * v
        }
    };
    let t_lo = -4.5;
    let t_hi = 4.5;
    let mut h = 0.5;
    let n = ((t_hi - t_lo) / h) as i64;
    let mut sum: f64 = (0..=n).map(|k| node(t_lo + k as f64 * h)).sum();
    let mut prev = sum * h;
    let mut err = f64::INFINITY;
    for _level in 0..10 {
        h *= 0.5;
        let n = ((t_hi - t_lo) / h) as i64;
        let mut k = 1;
        while k <= n {
            sum += node(t_lo + k as f64 * h);
            k += 2;
        }
        let cur = sum * h;
        err = (cur - prev).abs();
        prev = cur;
        if err <= tol.max(4.0 * f64::EPSILON * cur.abs()) {
            break;
        }
    }
    Estimate::new(prev, err)
}

/// Golden-section search for a local maximum of `f` on `[a, b]`.
/// Returns `(argmax, max)`.
pub fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, rel_tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= rel_tol * (a.abs() + b.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Bisection for a sign change of `f` on `[a, b]` (requires `f(a) * f(b) <= 0`).
pub fn bisect_root<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_weights_integrate_constants() {
        let s: f64 = WGK[10] + 2.0 * WGK[..10].iter().sum::<f64>();
        assert!((s - 2.0).abs() < 1e-15);
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn gk21_is_exact_for_high_degree_polynomials() {
        // Kronrod 21 integrates degree 31 exactly.
        for deg in [1, 5, 12, 19, 25, 31] {
            let est = gk21(&|x: f64| x.powi(deg), 0.0, 1.0);
            let exact = 1.0 / (deg as f64 + 1.0);
            assert!((est.value - exact).abs() < 1e-14, "degree {deg}");
        }
    }

    #[test]
    fn adaptive_handles_oscillation() {
        let est = adaptive(&|x: f64| (50.0 * x).cos(), 0.0, 3.0, 1e-13, 0.0, 1000);
        assert!((est.value - (150.0_f64).sin() / 50.0).abs() < 1e-12);
        assert!(est.error < 1e-12);
    }

    #[test]
    fn tanh_sinh_endpoint_singularity() {
        let est = tanh_sinh(&|x: f64| x.powf(-0.5), 0.0, 1.0, 1e-14);
        assert!((est.value - 2.0).abs() < 1e-12, "{:?}", est);
        let est = tanh_sinh(&|x: f64| (1.0 - x).ln(), 0.0, 1.0, 1e-14);
        assert!((est.value + 1.0).abs() < 1e-12, "{:?}", est);
    }

    #[test]
    fn exp_sinh_algebraic_and_exponential_tails() {
        let est = exp_sinh(&|x: f64| x.powf(-1.5), 1.0, 1e-14);
        assert!((est.value - 2.0).abs() < 1e-12, "{:?}", est);
        let est = exp_sinh(&|x: f64| (-x).exp(), 0.0, 1e-14);
        assert!((est.value - 1.0).abs() < 1e-12, "{:?}", est);
    }

    #[test]
    fn golden_section_finds_interior_max() {
        let (x, v) = golden_max(&|x: f64| -(x - 0.3) * (x - 0.3) + 2.0, 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-6);
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let s: KahanSum = [1e16, 1.0, -1e16, 1.0].into_iter().collect();
        assert_eq!(s.value(), 2.0);
    }
}
