//! Partial and improper Hankel integrals
//! `∫₀^N t^{2α+1} f(t) j_α(ut) dt`, uniform-convergence diagnostics and the
//! explicit bound on the partial integrals in terms of `M_{2α+2}(f)`.

use std::f64::consts::PI;

use crate::bessel::{default_s_cutoff, s_constant, BesselOrder, NormalizedBessel};
use crate::error::{Error, Result};
use crate::gm::GmCertificate;
use crate::par;
use crate::profile::RadialProfile;
use crate::quad::{self, Estimate, KahanSum};

/// A partial integral `∫₀^N t^{2α+1} f(t) j_α(ut) dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialIntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub u: f64,
    pub n: f64,
    pub alpha: f64,
}

fn check_origin(p: &RadialProfile, order: BesselOrder) -> Result<()> {
    let q = p.origin().unwrap_or(0.0);
    let alpha = order.alpha();
    if q >= 2.0 * alpha + 2.0 {
        return Err(Error::NonIntegrableOrigin { q, alpha });
    }
    Ok(())
}

/// `∫_a^b t^{2α+1} f(t) j_α(ut) dt` for `0 <= a <= b < ∞`.
pub fn hankel_between(p: &RadialProfile, order: BesselOrder, u: f64, a: f64, b: f64, tol: f64) -> Result<Estimate> {
    if !(u >= 0.0 && u.is_finite()) {
        return Err(Error::InvalidArgument(format!("u must be finite and nonnegative, got {u}")));
    }
    if !(a >= 0.0 && b >= a && b.is_finite()) {
        return Err(Error::InvalidArgument(format!("need 0 <= a <= b < ∞, got ({a}, {b})")));
    }
    if b == a {
        return Ok(Estimate::default());
    }
    check_origin(p, order)?;
    let b = p.support_end().map_or(b, |e| b.min(e));
    if b <= a {
        return Ok(Estimate::default());
    }
    let alpha = order.alpha();
    let w = 2.0 * alpha + 1.0;
    let bes = NormalizedBessel::new(order);
    let g = |t: f64| {
        let f = p.value(t);
        if f == 0.0 {
            0.0
        } else {
            t.powf(w) * f * bes.eval(u * t)
        }
    };
    Ok(p.integrate_with(&g, a, b, tol, w, u))
}

/// `∫₀^N t^{2α+1} f(t) j_α(ut) dt` with absolute error at most `tol`.
pub fn partial_hankel(p: &RadialProfile, order: BesselOrder, u: f64, n: f64, tol: f64) -> Result<PartialIntegralResult> {
    Ok(partial_hankel_ladder(p, order, u, &[n], tol)?[0])
}

/// Partial integrals for several upper limits, accumulated over the sorted
/// limits so each piece of `[0, max N]` is integrated once. The tolerance
/// applies to the largest limit.
pub fn partial_hankel_ladder(
    p: &RadialProfile,
    order: BesselOrder,
    u: f64,
    ns: &[f64],
    tol: f64,
) -> Result<Vec<PartialIntegralResult>> {
    if ns.iter().any(|&n| !(n >= 0.0 && n.is_finite())) {
        return Err(Error::InvalidArgument("upper limits must be finite and nonnegative".into()));
    }
    let mut idx: Vec<usize> = (0..ns.len()).collect();
    idx.sort_by(|&i, &j| ns[i].total_cmp(&ns[j]));
    let top = ns.iter().cloned().fold(0.0, f64::max);
    let mut out = vec![
        PartialIntegralResult { value: 0.0, error_estimate: 0.0, u, n: 0.0, alpha: order.alpha() };
        ns.len()
    ];
    let mut sum = KahanSum::new();
    let mut err = 0.0;
    let mut prev = 0.0;
    for i in idx {
        let n = ns[i];
        if n > prev {
            let piece_tol = tol * (n - prev) / top;
            let e = hankel_between(p, order, u, prev, n, piece_tol)?;
            sum.add(e.value);
            err += e.error;
            prev = n;
        }
        out[i].value = sum.value();
        out[i].error_estimate = err;
        out[i].n = n;
    }
    if err > tol {
        return Err(Error::ToleranceNotReached { tol, estimate: sum.value(), error: err });
    }
    Ok(out)
}

/// Value of an improper integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitResult {
    pub value: f64,
    pub error_estimate: f64,
    /// First cut-off used by the extrapolation.
    pub cutoff: f64,
}

/// Number of pairwise-averaging passes per oscillation frequency.
const AVERAGING_DEPTH: usize = 12;

fn binomial_weights(d: usize) -> Vec<f64> {
    let mut w = vec![1.0];
    for _ in 0..d {
        let mut next = vec![0.5 * w[0]];
        for k in 1..w.len() {
            next.push(0.5 * (w[k - 1] + w[k]));
        }
        next.push(0.5 * w[w.len() - 1]);
        w = next;
    }
    w
}

/// `H_α f(u) = lim_{N→∞} ∫₀^N t^{2α+1} f(t) j_α(ut) dt`.
///
/// Oscillatory tails are summed from partial integrals at multiples of the
/// half-periods of every frequency present (`u`, the profile's own
/// frequency `ω`, and `u ± ω` when both are present), with iterated
/// pairwise averaging. The averaged values at three geometrically spaced
/// cut-offs must pass a Cauchy test; a sequence that keeps moving by a
/// comparable amount is reported as divergent.
pub fn hankel_limit(p: &RadialProfile, order: BesselOrder, u: f64, tol: f64) -> Result<LimitResult> {
    check_origin(p, order)?;
    let alpha = order.alpha();
    if let Some(end) = p.support_end() {
        let r = partial_hankel(p, order, u, end, tol)?;
        return Ok(LimitResult { value: r.value, error_estimate: r.error_estimate, cutoff: end });
    }
    let kernel_decay = if u > 0.0 { -(alpha + 0.5) } else { 0.0 };
    let amplitude = 2.0 * alpha + 1.0 - p.decay().exponent() + kernel_decay;

    let mut freqs = Vec::new();
    let mut resonant = false;
    match (u > 0.0, p.frequency()) {
        (true, Some(w)) => {
            freqs.push(u + w);
            if (u - w).abs() > 1e-9 * (u + w) {
                freqs.push((u - w).abs());
            } else {
                resonant = true;
            }
        }
        (true, None) => freqs.push(u),
        (false, Some(w)) => freqs.push(w),
        (false, None) => {}
    }
    if resonant && amplitude >= -1.0 {
        return Err(Error::Divergent(format!(
            "u = {u} resonates with the profile's oscillation; the non-oscillating part decays like t^{amplitude}"
        )));
    }
    if freqs.is_empty() {
        if amplitude >= -1.0 {
            return Err(Error::Divergent(format!("integrand decays like t^{amplitude}, not integrable")));
        }
        return monotone_limit(p, order, u, tol);
    }
    if amplitude >= 0.0 {
        return Err(Error::Divergent(format!("integrand amplitude does not decay (t^{amplitude})")));
    }

    let kmin = freqs.iter().cloned().fold(f64::INFINITY, f64::min);
    let tail_start = p.shape().last_breakpoint().unwrap_or(0.0).max(p.decay().from());
    let mut n0 = tail_start.max(1.0).max(8.0 * AVERAGING_DEPTH as f64 * PI / kmin);
    if u > 0.0 {
        n0 = n0.max(10.0 / u);
    }
    let weights = binomial_weights(AVERAGING_DEPTH);
    let steps: Vec<f64> = freqs.iter().map(|k| PI / k).collect();

    // offsets and weights of the product averaging stencil
    let mut stencil = vec![(0.0, 1.0)];
    for &h in &steps {
        let mut next = Vec::with_capacity(stencil.len() * weights.len());
        for &(off, wt) in &stencil {
            for (j, &wj) in weights.iter().enumerate() {
                next.push((off + j as f64 * h, wt * wj));
            }
        }
        stencil = next;
    }
    let bases = [n0, 2.0 * n0, 4.0 * n0];
    let points: Vec<f64> = bases.iter().flat_map(|&b| stencil.iter().map(move |&(o, _)| b + o)).collect();
    let quad_tol = 1e-2 * tol;
    let ladder = partial_hankel_ladder(p, order, u, &points, quad_tol)?;
    let quad_err = ladder.iter().map(|r| r.error_estimate).fold(0.0, f64::max);
    let averaged: Vec<f64> = (0..bases.len())
        .map(|b| {
            let mut s = KahanSum::new();
            for (k, &(_, wt)) in stencil.iter().enumerate() {
                s.add(wt * ladder[b * stencil.len() + k].value);
            }
            s.value()
        })
        .collect();
    let d1 = (averaged[1] - averaged[0]).abs();
    let d2 = (averaged[2] - averaged[1]).abs();
    let error = d2 + quad_err;
    if error <= tol {
        return Ok(LimitResult { value: averaged[2], error_estimate: error, cutoff: n0 });
    }
    if d2 > tol && d2 >= 0.5 * d1 {
        return Err(Error::Divergent(format!(
            "averaged partial integrals keep moving: |ΔI| = {d1:e}, {d2:e} at N = {n0}, {}, {}",
            2.0 * n0,
            4.0 * n0
        )));
    }
    Err(Error::ToleranceNotReached { tol, estimate: averaged[2], error })
}

/// Improper integral of a non-oscillating integrand: a smooth tail is
/// integrated by exp-sinh, otherwise dyadic blocks are summed until the
/// increments stall.
fn monotone_limit(p: &RadialProfile, order: BesselOrder, u: f64, tol: f64) -> Result<LimitResult> {
    let alpha = order.alpha();
    let w = 2.0 * alpha + 1.0;
    if let Some(start) = p.smooth_tail_start() {
        let head = hankel_between(p, order, u, 0.0, start, 0.5 * tol)?;
        let bes = NormalizedBessel::new(order);
        let g = |t: f64| t.powf(w) * p.value(t) * bes.eval(u * t);
        let tail = quad::exp_sinh(&g, start, 0.5 * tol);
        let e = head + tail;
        if e.error > tol {
            return Err(Error::ToleranceNotReached { tol, estimate: e.value, error: e.error });
        }
        return Ok(LimitResult { value: e.value, error_estimate: e.error, cutoff: start });
    }
    let start = p.decay().from().max(1.0);
    let mut sum = KahanSum::new();
    let head = hankel_between(p, order, u, 0.0, start, 0.1 * tol)?;
    sum.add(head.value);
    let mut err = head.error;
    let mut lo = start;
    let mut quiet = 0;
    for _ in 0..200 {
        let hi = 2.0 * lo;
        let e = hankel_between(p, order, u, lo, hi, 1e-3 * tol)?;
        sum.add(e.value);
        err += e.error;
        lo = hi;
        if e.value.abs() < 1e-3 * tol {
            quiet += 1;
            if quiet >= 4 {
                return Ok(LimitResult { value: sum.value(), error_estimate: err + 1e-3 * tol, cutoff: start });
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Divergent(format!("dyadic block contributions do not settle for `{}`", p.name())))
}

/// `max_{u ∈ grid} |∫_M^N t^{2α+1} f(t) j_α(ut) dt|`.
pub fn uniform_tail(p: &RadialProfile, order: BesselOrder, u_grid: &[f64], m: f64, n: f64, tol: f64) -> Result<f64> {
    if !(m >= 0.0 && n > m) {
        return Err(Error::InvalidArgument(format!("need 0 <= M < N, got M = {m}, N = {n}")));
    }
    let vals = par::try_map(u_grid, |&u| hankel_between(p, order, u, m, n, tol).map(|e| e.value.abs()))?;
    Ok(vals.into_iter().fold(0.0, f64::max))
}

/// Default frequency grid: `u = 0` and 25 points per decade over
/// `[1e-3, 1e3]`.
pub fn default_u_grid() -> Vec<f64> {
    let mut g = vec![0.0];
    for i in 0..=150 {
        g.push(1e-3 * 10f64.powf(i as f64 / 25.0));
    }
    g
}

/// Default cut-offs `N` for the partial-integral bound.
pub fn default_n_grid() -> Vec<f64> {
    vec![0.0, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 30.0, 100.0]
}

/// `M_{2α+2}(f) = sup_t t^{2α+2} |f(t)|`.
pub fn m_weight(p: &RadialProfile, order: BesselOrder) -> Result<f64> {
    let w = 2.0 * order.alpha() + 2.0;
    let q = p.origin().unwrap_or(0.0);
    if w < q {
        return Err(Error::Unbounded(format!("t^{w} |f(t)| blows up at the origin (origin exponent {q})")));
    }
    let decay = p.decay();
    let t_lo = 1e-8;
    let t_hi = 4.0 * decay.from().max(p.shape().last_breakpoint().unwrap_or(1.0)).max(1.0).max(1e6);
    let tail = decay
        .weighted_sup_bound(w, t_hi)
        .ok_or_else(|| Error::Unbounded(format!("t^{w} |f(t)| grows at infinity for `{}`", p.name())))?;
    let (sup, _) = p.sup_weighted(w, t_lo, t_hi, 256);
    Ok(sup.max(tail))
}

/// Cumulative `G(x) = ∫_{(0, x]} t^{2α+2}/(2α+2) df(t)` at sorted finite
/// points.
fn ibp_cumulative(p: &RadialProfile, order: BesselOrder, points: &[f64]) -> Vec<f64> {
    let e = 2.0 * order.alpha() + 2.0;
    let mut out = Vec::with_capacity(points.len());
    let mut sum = KahanSum::new();
    let mut prev = 0.0;
    for &x in points {
        if x > prev {
            sum.add(p.stieltjes_weighted(e, prev, x, 1e-13).value);
            prev = x;
        }
        out.push(sum.value() / e);
    }
    out
}

/// `G(∞)` when the Stieltjes integral converges, continuing from `G(x0)`.
fn ibp_at_infinity(p: &RadialProfile, order: BesselOrder, x0: f64, g0: f64) -> Result<f64> {
    let e = 2.0 * order.alpha() + 2.0;
    if let Some(end) = p.support_end() {
        if x0 >= end {
            return Ok(g0);
        }
        return Ok(g0 + p.stieltjes_weighted(e, x0, end, 1e-13).value / e);
    }
    if e >= p.decay().exponent() {
        return Err(Error::Divergent(format!("∫ t^{e} df(t) does not converge at infinity")));
    }
    if let Some(start) = p.smooth_tail_start() {
        let mut g = g0;
        let mut from = x0;
        if start > x0 {
            g += p.stieltjes_weighted(e, x0, start, 1e-13).value / e;
            from = start;
        }
        let d = |t: f64| t.powf(e) * p.derivative(t);
        return Ok(g + quad::exp_sinh(&d, from, 1e-14).value / e);
    }
    let mut sum = KahanSum::new();
    sum.add(g0);
    let mut lo = x0;
    for _ in 0..400 {
        let inc = p.stieltjes_weighted(e, lo, 2.0 * lo, 1e-13).value / e;
        sum.add(inc);
        lo *= 2.0;
        if inc.abs() <= 1e-16 * sum.value().abs() {
            return Ok(sum.value());
        }
    }
    Err(Error::Divergent("Stieltjes tail does not settle".into()))
}

/// `max |∫_a^b t^{2α+2}/(2α+2) df(t)|` over the given pairs (`b` may be
/// `∞`).
pub fn sup_ibp_integral(p: &RadialProfile, order: BesselOrder, probe_pairs: &[(f64, f64)]) -> Result<f64> {
    let mut pts: Vec<f64> = probe_pairs
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .filter(|x| x.is_finite())
        .collect();
    if probe_pairs.iter().any(|&(a, b)| !(a >= 0.0 && b > a)) {
        return Err(Error::InvalidArgument("probe pairs need 0 <= a < b".into()));
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let gs = ibp_cumulative(p, order, &pts);
    let at = |x: f64| -> Result<f64> {
        if x.is_finite() {
            let i = pts.partition_point(|&y| y < x);
            Ok(gs[i])
        } else {
            let (x0, g0) = pts.last().map_or((0.0, 0.0), |&x| (x, *gs.last().unwrap()));
            ibp_at_infinity(p, order, x0, g0)
        }
    };
    let mut best = 0.0_f64;
    for &(a, b) in probe_pairs {
        best = best.max((at(b)? - at(a)?).abs());
    }
    Ok(best)
}

/// Probe points for the Stieltjes sup: zero, four points per octave over
/// `[2^-30, 2^40]`, breakpoints and their left neighbours.
pub fn default_ibp_probes(p: &RadialProfile) -> Vec<f64> {
    let mut pts = vec![0.0];
    for k in -120..=160 {
        pts.push(2f64.powf(k as f64 / 4.0));
    }
    for b in p.breakpoints(0.0, 2f64.powi(40)) {
        pts.push(b);
        pts.push(b * (1.0 - 1e-14));
    }
    if let Some(end) = p.support_end() {
        pts.push(end);
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Sup over all probe pairs, including `b = ∞` when that integral
/// converges. When it does not, boundedness is judged by comparing the
/// probe sup up to `2^20` with the sup up to `2^40`.
pub fn sup_ibp_default(p: &RadialProfile, order: BesselOrder) -> Result<f64> {
    let pts = default_ibp_probes(p);
    let gs = ibp_cumulative(p, order, &pts);
    let spread = |limit: f64| {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (&x, &g) in pts.iter().zip(&gs) {
            if x <= limit {
                lo = lo.min(g);
                hi = hi.max(g);
            }
        }
        (lo, hi)
    };
    let (mut lo, mut hi) = spread(f64::INFINITY);
    match ibp_at_infinity(p, order, *pts.last().unwrap(), *gs.last().unwrap()) {
        Ok(g) => {
            lo = lo.min(g);
            hi = hi.max(g);
        }
        Err(_) => {
            let (l, h) = spread(2f64.powi(20));
            if (hi - lo) > (h - l) * (1.0 + 1e-6) + 1e-300 {
                return Err(Error::Unbounded(format!(
                    "∫_a^b t^{} df grows with b for `{}`",
                    2.0 * order.alpha() + 2.0,
                    p.name()
                )));
            }
        }
    }
    Ok(hi - lo)
}

/// Which Bessel constant multiplies the kernel term of the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SVariant {
    /// `S_α`
    Statement,
    /// `S_{α+1}`
    Proof,
}

impl SVariant {
    pub fn name(self) -> &'static str {
        match self {
            SVariant::Statement => "statement",
            SVariant::Proof => "proof",
        }
    }
}

/// One evaluation of the bound
/// `|∫₀^N t^{2α+1} f j_α(ut) dt| <= |∫₀^N t^{2α+1} f| + N^{2α+2}|f(N)|/(α+1)
///   + K·M_{2α+2}(f) + sup_{a<b} |∫_a^b t^{2α+2}/(2α+2) df|`
/// with `K = Cλ(2λ)^{2α+2}/(2α+2) · (λ⁴/(2(α+2)) + S/(α+3/2))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub alpha: f64,
    pub n: f64,
    /// `max_u |∫₀^N t^{2α+1} f j_α(ut) dt|`
    pub lhs: f64,
    pub argmax_u: f64,
    pub term_partial: f64,
    pub term_boundary: f64,
    pub term_constant: f64,
    pub term_sup_ibp: f64,
    pub s_used: f64,
    pub variant: SVariant,
    /// `K`, the multiplier of `M_{2α+2}(f)` in `term_constant`.
    pub constant_coefficient: f64,
    pub m_weight: f64,
    pub tolerance: f64,
}

impl BoundReport {
    pub fn rhs(&self) -> f64 {
        self.term_partial + self.term_boundary + self.term_constant + self.term_sup_ibp
    }

    pub fn passes(&self) -> bool {
        self.lhs <= self.rhs() + self.tolerance
    }

    /// True when some term is infinite, so the bound holds trivially.
    pub fn vacuous(&self) -> bool {
        self.rhs().is_infinite()
    }
}

/// The `N`-independent ingredients of the bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs {
    pub alpha: f64,
    pub c: f64,
    pub lambda: f64,
    /// `S_α`
    pub s_statement: f64,
    /// `S_{α+1}`
    pub s_proof: f64,
    /// `∞` when unbounded.
    pub m_weight: f64,
    /// `∞` when unbounded.
    pub sup_ibp: f64,
}

impl BoundInputs {
    pub fn new(p: &RadialProfile, order: BesselOrder, cert: &GmCertificate) -> Result<Self> {
        let infinite_if_unbounded = |r: Result<f64>| match r {
            Ok(v) => Ok(v),
            Err(Error::Unbounded(_)) | Err(Error::Divergent(_)) => Ok(f64::INFINITY),
            Err(e) => Err(e),
        };
        let m = infinite_if_unbounded(m_weight(p, order))?;
        let sup_ibp = infinite_if_unbounded(sup_ibp_default(p, order))?;
        let s_statement = s_constant(order, default_s_cutoff(order))?.sup();
        let next = order.next();
        let s_proof = s_constant(next, default_s_cutoff(next))?.sup();
        Ok(Self {
            alpha: order.alpha(),
            c: cert.c,
            lambda: cert.lambda,
            s_statement,
            s_proof,
            m_weight: m,
            sup_ibp,
        })
    }

    pub fn s(&self, variant: SVariant) -> f64 {
        match variant {
            SVariant::Statement => self.s_statement,
            SVariant::Proof => self.s_proof,
        }
    }

    /// Multiplier `K` of `M_{2α+2}(f)`.
    pub fn constant_coefficient(&self, variant: SVariant) -> f64 {
        let a = self.alpha;
        let l = self.lambda;
        let e = 2.0 * a + 2.0;
        self.c * l * (2.0 * l).powf(e) / e * (l.powi(4) / (2.0 * (a + 2.0)) + self.s(variant) / (a + 1.5))
    }
}

/// Both variants of the bound at one cut-off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPair {
    pub statement: BoundReport,
    pub proof: BoundReport,
}

fn assemble(
    p: &RadialProfile,
    inputs: &BoundInputs,
    n: f64,
    lhs: (f64, f64),
    term_partial: f64,
    tolerance: f64,
) -> BoundPair {
    let a = inputs.alpha;
    let term_boundary = if n == 0.0 {
        0.0
    } else {
        n.powf(2.0 * a + 2.0) * p.value(n).abs() / (a + 1.0)
    };
    let make = |variant: SVariant| {
        let k = inputs.constant_coefficient(variant);
        BoundReport {
            alpha: a,
            n,
            lhs: lhs.0,
            argmax_u: lhs.1,
            term_partial,
            term_boundary,
            term_constant: if inputs.m_weight == 0.0 { 0.0 } else { k * inputs.m_weight },
            term_sup_ibp: inputs.sup_ibp,
            s_used: inputs.s(variant),
            variant,
            constant_coefficient: k,
            m_weight: inputs.m_weight,
            tolerance,
        }
    };
    BoundPair { statement: make(SVariant::Statement), proof: make(SVariant::Proof) }
}

/// Evaluates the bound at every `N` of `n_grid`, with the left-hand side
/// maximized over `u_grid`. Cells `(u, N)` are computed concurrently.
pub fn cossup_bounds(
    p: &RadialProfile,
    order: BesselOrder,
    cert: &GmCertificate,
    n_grid: &[f64],
    u_grid: &[f64],
    tol: f64,
) -> Result<Vec<BoundPair>> {
    let inputs = BoundInputs::new(p, order, cert)?;
    let table = par::try_map(u_grid, |&u| partial_hankel_ladder(p, order, u, n_grid, tol))?;
    let zero = partial_hankel_ladder(p, order, 0.0, n_grid, tol)?;
    Ok(n_grid
        .iter()
        .enumerate()
        .map(|(j, &n)| {
            let mut best = (0.0_f64, u_grid.first().cloned().unwrap_or(0.0));
            for (row, &u) in table.iter().zip(u_grid) {
                let v = row[j].value.abs();
                if v > best.0 {
                    best = (v, u);
                }
            }
            assemble(p, &inputs, n, best, zero[j].value.abs(), 2.0 * tol)
        })
        .collect())
}

/// The bound at a single cut-off `N`.
pub fn cossup_bound(
    p: &RadialProfile,
    order: BesselOrder,
    n: f64,
    cert: &GmCertificate,
    u_grid: &[f64],
    tol: f64,
) -> Result<BoundPair> {
    Ok(cossup_bounds(p, order, cert, &[n], u_grid, tol)?[0])
}
