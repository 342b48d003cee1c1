//! The normalized Bessel function `j_α(x) = Γ(α+1) (2/x)^α J_α(x)`.
//!
//! Evaluation picks one of three routes from the size of the largest
//! power-series term: a plain `f64` series, a double-double series, or the
//! Hankel amplitude-phase expansion for large arguments. The two series
//! routes share the stopping rule below; the asymptotic route is checked
//! against the double-double series on an overlap window in the tests.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::par;
use crate::quad::golden_max;
use crate::special::{gamma, ln_gamma, DoubleDouble};

/// Largest series term for which plain `f64` accumulation is used.
const F64_SERIES_MAX_TERM: f64 = 8.0;
/// Largest series term for which the double-double series is used.
const DD_SERIES_MAX_TERM: f64 = 1e15;

/// A Bessel order `α >= -1/2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha >= -0.5) || !alpha.is_finite() {
            return Err(Error::OrderOutOfRange(alpha));
        }
        Ok(Self(alpha))
    }

    pub fn alpha(self) -> f64 {
        self.0
    }

    /// The order `α + 1`, used by the derivative identity and the
    /// integration-by-parts kernel.
    pub fn next(self) -> Self {
        Self(self.0 + 1.0)
    }
}

/// Two-sided bounds on `j_α(x)` from truncated power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopePair {
    pub lower: f64,
    pub upper: f64,
    pub order_m: u32,
    pub valid: bool,
}

/// `j_α` for a fixed order, with the order-dependent constants precomputed.
#[derive(Debug, Clone, Copy)]
pub struct NormalizedBessel {
    alpha: f64,
    ln_gamma_a1: f64,
    mu: f64,
    cos_phase: f64,
    sin_phase: f64,
}

impl NormalizedBessel {
    pub fn new(order: BesselOrder) -> Self {
        let alpha = order.alpha();
        let phase = (0.5 * alpha + 0.25) * PI;
        Self {
            alpha,
            ln_gamma_a1: ln_gamma(alpha + 1.0),
            mu: 4.0 * alpha * alpha,
            cos_phase: phase.cos(),
            sin_phase: phase.sin(),
        }
    }

    pub fn order(&self) -> BesselOrder {
        BesselOrder(self.alpha)
    }

    /// Evaluates `j_α(x)` for `x >= 0`.
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.abs();
        if x == 0.0 {
            return 1.0;
        }
        let max_term = self.max_series_term(x);
        if max_term <= F64_SERIES_MAX_TERM {
            self.series_f64(x)
        } else if max_term <= DD_SERIES_MAX_TERM {
            self.series_dd(x)
        } else {
            match self.hankel(x) {
                Some(h) => h.value,
                // asymptotic expansion not sharp enough here; accept the
                // reduced accuracy of the extended series
                None => self.series_dd(x),
            }
        }
    }

    /// Magnitude of the largest term of the power series, capped once it
    /// passes the double-double threshold.
    fn max_series_term(&self, x: f64) -> f64 {
        let q = 0.25 * x * x;
        let mut t = 1.0_f64;
        let mut n = 0.0;
        loop {
            let r = q / ((n + 1.0) * (n + self.alpha + 1.0));
            if r <= 1.0 {
                return t;
            }
            t *= r;
            if t > DD_SERIES_MAX_TERM {
                return t;
            }
            n += 1.0;
        }
    }

    /// Index from which consecutive terms decrease in magnitude:
    /// `x <= 2 sqrt((n+1)(n+α+1))`.
    fn decreasing_from(&self, x: f64) -> f64 {
        let q = 0.25 * x * x;
        let mut n = 0.0;
        while (n + 1.0) * (n + self.alpha + 1.0) < q {
            n += 1.0;
        }
        n
    }

    fn series_f64(&self, x: f64) -> f64 {
        let q = 0.25 * x * x;
        let n_dec = self.decreasing_from(x);
        let mut sum = 1.0;
        let mut term = 1.0;
        let mut n = 0.0;
        loop {
            term *= -q / ((n + 1.0) * (n + self.alpha + 1.0));
            n += 1.0;
            sum += term;
            if n > n_dec && stop(term, sum) {
                return sum;
            }
        }
    }

    fn series_dd(&self, x: f64) -> f64 {
        let half = 0.5 * x;
        let q = DoubleDouble::prod(half, half);
        let n_dec = self.decreasing_from(x);
        let mut sum = DoubleDouble::ONE;
        let mut term = DoubleDouble::ONE;
        let mut n = 0.0;
        loop {
            let den = DoubleDouble::sum(self.alpha, n + 1.0).mul_f64(n + 1.0);
            term = -(term * q / den);
            n += 1.0;
            sum = sum + term;
            if n > n_dec && stop(term.hi, sum.hi) {
                return sum.to_f64();
            }
        }
    }

    /// Hankel's expansion `P(x)`, `Q(x)`, truncated at the smallest term.
    /// `None` when the smallest term is not below 1e-15.
    fn hankel_pq(&self, x: f64) -> Option<(f64, f64)> {
        let mut p = 1.0;
        let mut q = 0.0;
        let mut a = 1.0;
        let mut prev = f64::INFINITY;
        let mut k = 1.0;
        loop {
            let odd = 2.0 * k - 1.0;
            a *= (self.mu - odd * odd) / (8.0 * k * x);
            let mag = a.abs();
            if mag == 0.0 {
                return Some((p, q));
            }
            // terms may grow while (2k-1)^2 < μ; past that, growth means
            // the asymptotic series has started to diverge
            if mag > prev && odd * odd > self.mu {
                return if prev < 1e-15 { Some((p, q)) } else { None };
            }
            // signs: P = 1 - a2 + a4 - ..., Q = a1 - a3 + ...
            let ki = k as u64;
            let sign = if (ki / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
            if ki.is_multiple_of(2) {
                p += sign * a;
            } else {
                let sign_q = if ((ki - 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
                q += sign_q * a;
            }
            if mag < 1e-17 * p.abs().max(1e-300) {
                return Some((p, q));
            }
            prev = mag;
            k += 1.0;
            if k > 400.0 {
                return None;
            }
        }
    }

    fn hankel(&self, x: f64) -> Option<HankelForm> {
        let (p, q) = self.hankel_pq(x)?;
        let (sx, cx) = x.sin_cos();
        let cos_chi = cx * self.cos_phase + sx * self.sin_phase;
        let sin_chi = sx * self.cos_phase - cx * self.sin_phase;
        let log_pref = self.ln_gamma_a1 + self.alpha * (2.0 / x).ln();
        let amp = log_pref.exp() * (2.0 / (PI * x)).sqrt();
        Some(HankelForm { value: amp * (p * cos_chi - q * sin_chi), modulus: amp * p.hypot(q) })
    }

    /// Value through the asymptotic route only (for cross-validation).
    pub fn eval_asymptotic(&self, x: f64) -> Option<f64> {
        self.hankel(x).map(|h| h.value)
    }

    /// Value through the double-double series only (for cross-validation).
    pub fn eval_series(&self, x: f64) -> f64 {
        if x == 0.0 {
            1.0
        } else {
            self.series_dd(x.abs())
        }
    }

    /// Oscillation envelope of `x^{α+1/2} |j_α(x)|` from the asymptotic
    /// modulus; tends to `Γ(α+1) 2^α sqrt(2/π)`.
    pub fn weighted_envelope(&self, x: f64) -> Option<f64> {
        self.hankel(x).map(|h| h.modulus * x.powf(self.alpha + 0.5))
    }

    /// `lim_{x→∞}` of the weighted envelope.
    pub fn weighted_envelope_limit(&self) -> f64 {
        (self.ln_gamma_a1 + self.alpha * 2f64.ln()).exp() * (2.0 / PI).sqrt()
    }
}

struct HankelForm {
    value: f64,
    modulus: f64,
}

#[inline]
fn stop(next_term: f64, sum: f64) -> bool {
    next_term.abs() < 1e-16 * sum.abs() || next_term.abs() < 1e-18
}

/// `j_α(x)` for `x >= 0`.
pub fn eval_j(order: BesselOrder, x: f64) -> f64 {
    NormalizedBessel::new(order).eval(x)
}

/// Partial sums of the power series through `n = 2m+1` (lower) and
/// `n = 2m` (upper). They bracket `j_α(x)` whenever `x <= 2 sqrt(α+1)`.
pub fn envelope_bounds(order: BesselOrder, x: f64, m: u32) -> EnvelopePair {
    let alpha = order.alpha();
    let half = 0.5 * x;
    let q = DoubleDouble::prod(half, half);
    let mut sum = DoubleDouble::ONE;
    let mut term = DoubleDouble::ONE;
    let mut upper = 1.0;
    let last = 2 * m as u64 + 1;
    for n in 0..last {
        let nf = n as f64;
        let den = DoubleDouble::sum(alpha, nf + 1.0).mul_f64(nf + 1.0);
        term = -(term * q / den);
        sum = sum + term;
        if n + 1 == 2 * m as u64 {
            upper = sum.to_f64();
        }
    }
    if m == 0 {
        upper = 1.0;
    }
    EnvelopePair {
        lower: sum.to_f64(),
        upper,
        order_m: m,
        valid: x <= 2.0 * (alpha + 1.0).sqrt(),
    }
}

/// Signed residual of `d/dx (x^{2α+2} j_{α+1}(x)) = (2α+2) x^{2α+1} j_α(x)`
/// with the derivative taken as a central difference of step `h`.
pub fn derivative_identity_residual(order: BesselOrder, x: f64, h: f64) -> Result<f64> {
    if !(x > h && h > 0.0) {
        return Err(Error::InvalidArgument(format!("need x > h > 0, got x = {x}, h = {h}")));
    }
    let alpha = order.alpha();
    let up = NormalizedBessel::new(order.next());
    let g = |t: f64| t.powf(2.0 * alpha + 2.0) * up.eval(t);
    let central = (g(x + h) - g(x - h)) / (2.0 * h);
    let rhs = (2.0 * alpha + 2.0) * x.powf(2.0 * alpha + 1.0) * eval_j(order, x);
    Ok(central.abs() - rhs.abs())
}

/// Supremum of `x^{α+1/2} |j_α(x)|` over `[1, x_max]`, with the data needed
/// to bound the tail beyond `x_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SConstant {
    pub alpha: f64,
    pub x_max: f64,
    /// Supremum over `[1, x_max]`.
    pub finite_sup: f64,
    pub argmax: f64,
    /// Envelope at `x_max`.
    pub envelope_at_cut: f64,
    /// Limit of the envelope as `x → ∞`.
    pub envelope_limit: f64,
}

impl SConstant {
    /// Supremum over `[1, ∞)`: the envelope of `x^{α+1/2}|j_α|` decreases for
    /// `α > 1/2` and increases to its limit for `α < 1/2`.
    pub fn sup(&self) -> f64 {
        if self.alpha < 0.5 {
            self.finite_sup.max(self.envelope_limit)
        } else {
            self.finite_sup
        }
    }
}

/// Default cut-off used by [`compute_s`].
pub fn default_s_cutoff(order: BesselOrder) -> f64 {
    200.0 + 20.0 * order.alpha()
}

/// Computes `S_α` on `[1, x_max]` by a dense grid with golden-section
/// refinement at the grid maxima, and certifies the tail.
pub fn s_constant(order: BesselOrder, x_max: f64) -> Result<SConstant> {
    if !(x_max >= 1.0) {
        return Err(Error::InvalidArgument(format!("x_max must be >= 1, got {x_max}")));
    }
    let alpha = order.alpha();
    let bes = NormalizedBessel::new(order);
    let w = |x: f64| x.powf(alpha + 0.5) * bes.eval(x).abs();

    let step = 0.02;
    let n = ((x_max - 1.0) / step).ceil().max(1.0) as usize;
    let xs: Vec<f64> = (0..=n).map(|i| (1.0 + i as f64 * step).min(x_max)).collect();
    let vals = par::map(&xs, |&x| w(x));

    let best_grid = vals.iter().cloned().fold(0.0, f64::max);
    let mut best = (xs[0], vals[0]);
    if vals[n] > best.1 {
        best = (xs[n], vals[n]);
    }
    let candidates: Vec<usize> = (1..n)
        .filter(|&i| vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1])
        .filter(|&i| vals[i] >= best_grid * (1.0 - 1e-3))
        .collect();
    let refined = par::map(&candidates, |&i| golden_max(&w, xs[i - 1], xs[i + 1], 1e-13));
    for (x, v) in refined {
        if v > best.1 {
            best = (x, v);
        }
    }

    let envelope_limit = bes.weighted_envelope_limit();
    let envelope_at_cut = bes
        .weighted_envelope(x_max)
        .ok_or(Error::NotStabilized { x_max })?;
    let settled = (envelope_at_cut / envelope_limit - 1.0).abs() <= 1e-3;
    let tail_covered = if alpha > 0.5 {
        best.1 >= envelope_at_cut * (1.0 - 1e-12)
    } else {
        (envelope_limit - best.1) / envelope_limit <= 1e-5
    };
    if !(settled && tail_covered) {
        return Err(Error::NotStabilized { x_max });
    }
    Ok(SConstant {
        alpha,
        x_max,
        finite_sup: best.1,
        argmax: best.0,
        envelope_at_cut,
        envelope_limit,
    })
}

/// `S_α = sup_{1 <= x <= x_max} x^{α+1/2} |j_α(x)|`.
pub fn compute_s(order: BesselOrder, x_max: f64) -> Result<f64> {
    s_constant(order, x_max).map(|s| s.finite_sup)
}

/// `S_α / (α^{1/6} 2^α Γ(α+1))`, whose limit as `α → ∞` is about 0.6748.
pub fn s_growth_ratio(order: BesselOrder, s: f64) -> f64 {
    let a = order.alpha();
    s / (a.powf(1.0 / 6.0) * 2f64.powf(a) * gamma(a + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(a: f64) -> BesselOrder {
        BesselOrder::new(a).unwrap()
    }

    #[test]
    fn rejects_orders_below_minus_half() {
        assert_eq!(BesselOrder::new(-0.6), Err(Error::OrderOutOfRange(-0.6)));
        assert!(BesselOrder::new(f64::NAN).is_err());
        assert!(BesselOrder::new(-0.5).is_ok());
    }

    #[test]
    fn minus_half_is_cosine() {
        assert!((eval_j(ord(-0.5), PI) + 1.0).abs() < 1e-13);
    }

    #[test]
    fn value_at_zero_is_one() {
        assert_eq!(eval_j(ord(3.2), 0.0), 1.0);
    }

    #[test]
    fn first_root_of_order_zero() {
        // first zero of J_0, located by bisection on the series (below)
        let root = 2.404_825_557_695_773;
        assert!(eval_j(ord(0.0), root).abs() < 1e-10);
        let bes = NormalizedBessel::new(ord(0.0));
        let r = crate::quad::bisect_root(&|x| bes.eval_series(x), 2.0, 3.0);
        assert!((r - root).abs() < 1e-12);
    }

    #[test]
    fn half_order_is_sinc() {
        let b = NormalizedBessel::new(ord(0.5));
        for &x in &[0.1f64, 1.0, 7.5, 33.0, 61.0, 150.0, 4000.0] {
            let want = x.sin() / x;
            assert!((b.eval(x) - want).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn asymptotic_and_series_agree_on_overlap() {
        for &a in &[-0.5, 0.0, 0.7, 1.0, 2.5, 4.0, 6.0] {
            let b = NormalizedBessel::new(ord(a));
            let mut x = 40.0;
            while x <= 60.0 {
                let s = b.eval_series(x);
                if let Some(h) = b.eval_asymptotic(x) {
                    // series cancellation dominates this difference
                    let scale = x.exp() * 1e-31 + 1e-13;
                    assert!((s - h).abs() < scale, "α = {a}, x = {x}: {s} vs {h}");
                }
                x += 0.37;
            }
        }
    }

    #[test]
    fn envelope_examples() {
        let e = envelope_bounds(ord(0.0), 1.0, 0);
        assert_eq!((e.lower, e.upper, e.valid), (0.75, 1.0, true));
        let e = envelope_bounds(ord(2.0), 0.0, 3);
        assert_eq!((e.lower, e.upper), (1.0, 1.0));
        let e = envelope_bounds(ord(-0.5), 1.0, 1);
        assert!(e.valid && e.lower <= 1f64.cos() && 1f64.cos() <= e.upper);
        let e = envelope_bounds(ord(0.0), 3.0, 1);
        assert!(!e.valid);
    }

    #[test]
    fn derivative_identity_examples() {
        let r = derivative_identity_residual(ord(-0.5), 1.0, 1e-5).unwrap();
        assert!(r.abs() <= 1e-9, "{r}");
        let r = derivative_identity_residual(ord(0.7), 2.3, 1e-5).unwrap();
        assert!(r.abs() <= 1e-8, "{r}");
        let r = derivative_identity_residual(ord(1.0), 1e-3, 1e-6).unwrap();
        assert!(r.abs() <= 1e-8, "{r}");
        assert!(derivative_identity_residual(ord(1.0), 1e-3, 1e-2).is_err());
    }

    #[test]
    fn s_of_minus_half_is_one() {
        let s = compute_s(ord(-0.5), default_s_cutoff(ord(-0.5))).unwrap();
        assert!((s - 1.0).abs() < 1e-9);
    }

    #[test]
    fn s_of_zero_matches_frozen_maximization() {
        // last local maximum of sqrt(x)|J_0(x)| below 200, located by an
        // independent 40-digit maximization
        let s = compute_s(ord(0.0), 200.0).unwrap();
        assert!((s / 0.797_883_214_056_566 - 1.0).abs() < 1e-6, "{s}");
    }

    #[test]
    fn s_fails_when_cutoff_too_small() {
        assert!(matches!(compute_s(ord(0.0), 3.0), Err(Error::NotStabilized { .. })));
    }
}
