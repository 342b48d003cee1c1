//! General monotone (GM) membership checks, the dyadic good/bad block
//! machinery, the Abel–Olivier decay profile and the integration-by-parts
//! identity `∫ t^{ν-1} f = -(1/ν) ∫ t^ν df`.

use crate::error::{Error, Result};
use crate::par;
use crate::profile::{integrate_weighted_to_infinity, Decay, RadialProfile};
use crate::quad::{self, KahanSum};

/// Relative slack when comparing a fitted constant against its own data.
const FIT_SLACK: f64 = 1e-9;

/// One grid point of a GM check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckedPoint {
    pub x: f64,
    /// `∫_x^{2x} |df|`
    pub lhs: f64,
    /// `∫_{x/λ}^{λx} |f(t)|/t dt`
    pub rhs: f64,
    pub pass: bool,
}

/// Constants `(C, λ = 2^ν)` of the GM condition together with the points
/// at which it has been checked.
#[derive(Debug, Clone, PartialEq)]
pub struct GmCertificate {
    pub c: f64,
    pub nu: u32,
    pub lambda: f64,
    pub checked_points: Vec<CheckedPoint>,
}

impl GmCertificate {
    pub fn new(c: f64, nu: u32) -> Result<Self> {
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::InvalidArgument(format!("GM constant must be finite and nonnegative, got {c}")));
        }
        if nu == 0 || nu > 30 {
            return Err(Error::InvalidArgument(format!("ν must be a positive integer, got {nu}")));
        }
        Ok(Self { c, nu, lambda: 2f64.powi(nu as i32), checked_points: Vec::new() })
    }

    /// Certificate from the constant fitted on `grid` (plus a relative
    /// slack), raised above 1 when smaller since the definition asks for
    /// `C > 1`.
    pub fn fitted(p: &RadialProfile, nu: u32, grid: &[f64]) -> Result<Self> {
        let c = gm_fit_constant(p, nu, grid)?;
        let cert = Self::new((c * (1.0 + FIT_SLACK)).max(1.0 + FIT_SLACK), nu)?;
        gm_verify(p, cert, grid)
    }

    pub fn passed(&self) -> bool {
        self.checked_points.iter().all(|pt| pt.pass)
    }

    /// First grid point at which the condition fails.
    pub fn first_failure(&self) -> Option<&CheckedPoint> {
        self.checked_points.iter().find(|pt| !pt.pass)
    }
}

/// Geometric grid with `per_decade` points over `[lo, hi]`, merged with
/// the powers of two in that range.
pub fn geometric_grid(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
    let decades = (hi / lo).log10();
    let n = (decades * per_decade as f64).round() as usize;
    let mut grid: Vec<f64> = (0..=n).map(|i| lo * 10f64.powf(i as f64 / per_decade as f64)).collect();
    let mut k = lo.log2().ceil() as i32;
    while 2f64.powi(k) <= hi {
        grid.push(2f64.powi(k));
        k += 1;
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|a, b| (*a / *b - 1.0).abs() < 1e-12);
    grid
}

/// Default GM grid: 64 points per decade over `[1e-3, 1e6]` plus powers of
/// two, clipped to the support of `p`.
pub fn default_grid(p: &RadialProfile) -> Vec<f64> {
    let hi = p.support_end().map_or(1e6, |e| e.min(1e6));
    geometric_grid(1e-3, hi, 64)
}

fn gm_point(p: &RadialProfile, lambda: f64, x: f64) -> Result<(f64, f64)> {
    let lhs = p.variation(x, 2.0 * x)?;
    let rhs = p.window_integral(x / lambda, lambda * x)?;
    Ok((lhs, rhs))
}

/// Checks `∫_x^{2x}|df| <= C ∫_{x/λ}^{λx} |f(t)|/t dt` at every grid point.
pub fn gm_verify(p: &RadialProfile, mut cert: GmCertificate, x_grid: &[f64]) -> Result<GmCertificate> {
    if x_grid.is_empty() {
        return Err(Error::InvalidArgument("empty GM grid".into()));
    }
    let lambda = cert.lambda;
    let c = cert.c;
    let values = par::try_map(x_grid, |&x| gm_point(p, lambda, x))?;
    cert.checked_points = x_grid
        .iter()
        .zip(values)
        .map(|(&x, (lhs, rhs))| CheckedPoint { x, lhs, rhs, pass: lhs <= c * rhs })
        .collect();
    Ok(cert)
}

/// Smallest `C` for which the GM inequality holds on the grid. Points with
/// `lhs = rhs = 0` impose nothing.
pub fn gm_fit_constant(p: &RadialProfile, nu: u32, x_grid: &[f64]) -> Result<f64> {
    let lambda = 2f64.powi(nu as i32);
    let values = par::try_map(x_grid, |&x| gm_point(p, lambda, x))?;
    let mut c = 0.0_f64;
    for (&x, (lhs, rhs)) in x_grid.iter().zip(values) {
        if rhs == 0.0 {
            if lhs > 0.0 {
                return Err(Error::NotGmOnGrid { x, lhs });
            }
            continue;
        }
        c = c.max(lhs / rhs);
    }
    Ok(c)
}

/// Ratios `|f(t)| / ∫_{t/λ}^{λt} |f(s)|/s ds` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PointwiseReport {
    /// `None` marks a vacuous `0/0` point.
    pub ratios: Vec<(f64, Option<f64>)>,
    pub max_ratio: Option<f64>,
}

pub fn pointwise_bound_check(p: &RadialProfile, cert: &GmCertificate, t_grid: &[f64]) -> Result<PointwiseReport> {
    let lambda = cert.lambda;
    let ratios = par::try_map(t_grid, |&t| -> Result<(f64, Option<f64>)> {
        let num = p.value(t).abs();
        let den = p.window_integral(t / lambda, lambda * t)?;
        Ok((t, if den > 0.0 { Some(num / den) } else if num == 0.0 { None } else { Some(f64::INFINITY) }))
    })?;
    let max_ratio = ratios.iter().filter_map(|r| r.1).fold(None, |m: Option<f64>, r| Some(m.map_or(r, |m| m.max(r))));
    Ok(PointwiseReport { ratios, max_ratio })
}

/// Dyadic block statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DyadicStats {
    pub n: i32,
    /// `sup |f|` over `[2^n, 2^{n+1}]`.
    pub a_n: f64,
    /// `sup |f|` over `[2^{n-2ν}, 2^{n+2ν}]`.
    pub b_n: f64,
    pub good: bool,
    pub e_threshold: f64,
    pub e_measure: f64,
}

/// Samples per dyadic unit for suprema and level-set measures.
const DYADIC_SAMPLES: usize = 4096;

fn block_sup(p: &RadialProfile, lo_exp: i32, hi_exp: i32) -> f64 {
    p.sup_weighted(0.0, 2f64.powi(lo_exp), 2f64.powi(hi_exp), DYADIC_SAMPLES).0
}

fn stats(p: &RadialProfile, nu: u32, n: i32) -> DyadicStats {
    let v = nu as i32;
    let a_n = block_sup(p, n, n + 1);
    let b_n = block_sup(p, n - 2 * v, n + 2 * v).max(a_n);
    let good = n == 0 || b_n <= 2f64.powi(4 * v) * a_n * (1.0 + FIT_SLACK);
    DyadicStats { n, a_n, b_n, good, e_threshold: 0.0, e_measure: 0.0 }
}

/// `A_n`, `B_n` and the good flag for every `n` in the range.
pub fn dyadic_stats(p: &RadialProfile, nu: u32, n_range: std::ops::RangeInclusive<i32>) -> Vec<DyadicStats> {
    let ns: Vec<i32> = n_range.collect();
    par::map(&ns, |&n| stats(p, nu, n))
}

/// Midpoint cells of `[2^{n-ν}, 2^{n+ν}]`, `DYADIC_SAMPLES` per dyadic unit.
fn window_cells(n: i32, nu: u32) -> Vec<(f64, f64)> {
    let v = nu as i32;
    let mut cells = Vec::with_capacity(DYADIC_SAMPLES * 2 * nu as usize);
    for k in (n - v)..(n + v) {
        let lo = 2f64.powi(k);
        let h = lo / DYADIC_SAMPLES as f64;
        for i in 0..DYADIC_SAMPLES {
            cells.push((lo + (i as f64 + 0.5) * h, h));
        }
    }
    cells
}

/// Outcome of the level-set measure bound for a good block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnMeasureReport {
    pub stats: DyadicStats,
    /// `2^n / (8 C 2^{5ν})`
    pub lower_bound: f64,
    /// Two grid cells.
    pub tolerance: f64,
    pub satisfied: bool,
}

fn good_block(p: &RadialProfile, n: i32, c: f64, nu: u32) -> Result<DyadicStats> {
    if n <= 0 {
        return Err(Error::InvalidArgument(format!("block index must be positive, got {n}")));
    }
    if !(c > 0.0) {
        return Err(Error::InvalidArgument(format!("GM constant must be positive, got {c}")));
    }
    let s = stats(p, nu, n);
    if !s.good {
        return Err(Error::BadNumber { n });
    }
    if s.a_n == 0.0 {
        return Err(Error::Vacuous { n });
    }
    Ok(s)
}

/// Measure of `{x ∈ [2^{n-ν}, 2^{n+ν}] : |f(x)| > A_n / (8 C 2^{2ν})}` with the
/// lower bound `2^n / (8 C 2^{5ν})`.
pub fn en_measure(p: &RadialProfile, n: i32, c: f64, nu: u32) -> Result<EnMeasureReport> {
    let mut s = good_block(p, n, c, nu)?;
    let v = nu as i32;
    s.e_threshold = s.a_n / (8.0 * c * 2f64.powi(2 * v));
    let cells = window_cells(n, nu);
    let mut m = KahanSum::new();
    for &(x, h) in &cells {
        if p.value(x).abs() > s.e_threshold {
            m.add(h);
        }
    }
    s.e_measure = m.value();
    let lower_bound = 2f64.powi(n) / (8.0 * c * 2f64.powi(5 * v));
    let tolerance = 2.0 * 2f64.powi(n + v - 1) / DYADIC_SAMPLES as f64;
    Ok(EnMeasureReport { stats: s, lower_bound, tolerance, satisfied: s.e_measure >= lower_bound - tolerance })
}

/// An interval of constant sign capturing a large part of the level set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignIntervalWitness {
    pub ell: f64,
    pub em: f64,
    pub sign: i8,
    pub captured_measure: f64,
    /// `2^n / (256 C^3 2^{15ν})`
    pub lower_bound: f64,
}

/// Finds the constant-sign run of `f` on `[2^{n-ν}, 2^{n+ν}]` that captures
/// the largest measure of the level set, and checks it against the bound.
pub fn sign_interval_search(p: &RadialProfile, n: i32, c: f64, nu: u32) -> Result<SignIntervalWitness> {
    let s = good_block(p, n, c, nu)?;
    let v = nu as i32;
    let threshold = s.a_n / (8.0 * c * 2f64.powi(2 * v));
    let cells = window_cells(n, nu);
    let sign_of = |x: f64| if p.value(x) > 0.0 { 1i8 } else { -1i8 };

    let mut best: Option<SignIntervalWitness> = None;
    let mut start = 0;
    while start < cells.len() {
        let sign = sign_of(cells[start].0);
        let mut end = start;
        let mut captured = KahanSum::new();
        while end < cells.len() && sign_of(cells[end].0) == sign {
            let (x, h) = cells[end];
            if p.value(x).abs() > threshold {
                captured.add(h);
            }
            end += 1;
        }
        let (x0, h0) = cells[start];
        let (x1, h1) = cells[end - 1];
        let w = SignIntervalWitness {
            ell: x0 - 0.5 * h0,
            em: x1 + 0.5 * h1,
            sign,
            captured_measure: captured.value(),
            lower_bound: 0.0,
        };
        if best.is_none_or(|b| w.captured_measure > b.captured_measure) {
            best = Some(w);
        }
        start = end;
    }
    let mut w = best.ok_or(Error::WitnessNotFound { n })?;
    w.lower_bound = 2f64.powi(n) / (256.0 * c.powi(3) * 2f64.powi(15 * v));
    let tolerance = 2.0 * 2f64.powi(n + v - 1) / DYADIC_SAMPLES as f64;
    if w.captured_measure < w.lower_bound - tolerance {
        return Err(Error::WitnessNotFound { n });
    }
    Ok(w)
}

/// `sup_{t >= T} t |f(t)|` for each `T` of an increasing grid, from a
/// numerical sup over `[T, T_cut]` and the decay bound beyond `T_cut`.
pub fn abel_olivier_profile(p: &RadialProfile, t_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    if t_grid.is_empty() {
        return Ok(Vec::new());
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) || t_grid[0] <= 0.0 {
        return Err(Error::InvalidArgument("T grid must be positive and increasing".into()));
    }
    let decay = p.decay();
    if let Decay::Power { exponent, .. } = decay {
        if exponent < 1.0 {
            return Err(Error::Unbounded(format!(
                "t|f(t)| grows like t^{} for `{}`",
                1.0 - exponent,
                p.name()
            )));
        }
    }
    let last = *t_grid.last().unwrap();
    let t_cut = 4.0 * last.max(decay.from()).max(1.0);
    let tail = decay
        .weighted_sup_bound(1.0, t_cut)
        .ok_or_else(|| Error::Unbounded(format!("t|f(t)| is not bounded for `{}`", p.name())))?;
    let mut edges = t_grid.to_vec();
    edges.push(t_cut);
    let pieces: Vec<(f64, f64)> = edges.windows(2).map(|w| (w[0], w[1])).collect();
    let sups = par::map(&pieces, |&(a, b)| p.sup_weighted(1.0, a, b, 256).0);
    let mut out = vec![(0.0, 0.0); t_grid.len()];
    let mut running = tail;
    for i in (0..t_grid.len()).rev() {
        running = running.max(sups[i]);
        out[i] = (t_grid[i], running);
    }
    Ok(out)
}

/// Both sides of `∫₀^∞ t^{ν-1} f(t) dt = -(1/ν) ∫₀^∞ t^ν df(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IbpCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// Evaluates both sides of the integration-by-parts identity. The
/// hypotheses (`t^ν f → 0` at both ends, convergent integrals) are taken
/// from the profile's origin and decay hints; a violation is reported as
/// divergence.
pub fn ibp_identity_check(p: &RadialProfile, nu: f64, tol: f64) -> Result<IbpCheck> {
    if nu == 0.0 || !nu.is_finite() {
        return Err(Error::InvalidArgument(format!("exponent must be finite and nonzero, got {nu}")));
    }
    let q = p.origin().unwrap_or(0.0);
    if nu <= q {
        return Err(Error::Divergent(format!(
            "t^{nu} f(t) does not vanish at the origin (origin exponent {q})"
        )));
    }
    let decay = p.decay();
    if decay.exponent() <= nu {
        return Err(Error::Divergent(format!(
            "t^{nu} f(t) does not vanish at infinity (decay exponent {})",
            decay.exponent()
        )));
    }
    let lhs = integrate_weighted_to_infinity(p, nu - 1.0, 0.1 * tol)?;
    let stieltjes = match p.support_end() {
        Some(end) => p.stieltjes_weighted(nu, 0.0, end, 0.1 * tol),
        None => {
            let start = p.smooth_tail_start().ok_or_else(|| {
                Error::Divergent(format!("profile `{}` has no smooth tail", p.name()))
            })?;
            let head = p.stieltjes_weighted(nu, 0.0, start, 0.05 * tol);
            let g = |t: f64| t.powf(nu) * p.derivative(t);
            head + quad::exp_sinh(&g, start, 0.05 * tol)
        }
    };
    let rhs = -stieltjes.value / nu;
    let err = lhs.error + stieltjes.error / nu.abs();
    if err > tol {
        return Err(Error::ToleranceNotReached { tol, estimate: lhs.value, error: err });
    }
    Ok(IbpCheck { lhs: lhs.value, rhs, residual: (lhs.value - rhs).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Piecewise;

    fn profile(src: &str) -> RadialProfile {
        Piecewise::parse(src).unwrap().into_profile(src).unwrap()
    }

    #[test]
    fn power_tail_gm_point_closed_form() {
        let p = profile("0..1: const(1); 1..inf: pow(1,-2)");
        let (lhs, rhs) = gm_point(&p, 2.0, 10.0).unwrap();
        assert!((lhs / (0.75 / 100.0) - 1.0).abs() < 1e-10);
        assert!((rhs / (15.0 / 8.0 / 100.0) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn lambda_is_power_of_two() {
        assert_eq!(GmCertificate::new(2.0, 3).unwrap().lambda, 8.0);
        assert!(GmCertificate::new(2.0, 0).is_err());
        assert!(GmCertificate::new(f64::NAN, 1).is_err());
    }

    #[test]
    fn zero_function_fits_zero() {
        let p = profile("0..1: const(0); 1..inf: const(0)");
        let grid = geometric_grid(0.01, 100.0, 8);
        assert_eq!(gm_fit_constant(&p, 1, &grid).unwrap(), 0.0);
    }

    #[test]
    fn en_measure_covers_window_for_inverse_square() {
        let p = profile("0..inf: pow(1,-2)");
        let r = en_measure(&p, 3, 1.0, 1).unwrap();
        assert_eq!(r.stats.e_threshold, 2f64.powi(-6) / 32.0);
        assert!((r.stats.e_measure - 12.0).abs() < 1e-9);
        assert!(r.satisfied);
        assert_eq!(r.lower_bound, 1.0 / 32.0);
    }

    #[test]
    fn bad_block_rejected() {
        let p = profile("0..inf: pow(1,-3)");
        assert_eq!(en_measure(&p, 3, 1.0, 1), Err(Error::BadNumber { n: 3 }));
    }

    #[test]
    fn abel_olivier_power_tail() {
        let p = profile("0..1: const(1); 1..inf: pow(1,-1.5)");
        let prof = abel_olivier_profile(&p, &[1.0, 100.0, 1e4]).unwrap();
        assert!((prof[1].1 - 0.1).abs() < 1e-12);
        assert!((prof[0].1 - 1.0).abs() < 1e-12);
    }
}
