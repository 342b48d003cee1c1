//! Cosine series `Σ a_n cos nx`: partial sums, GMS checks, the discrete
//! decay profile `n|a_n|`, the Dirichlet kernel and uniform-convergence
//! diagnostics.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::par;
use crate::profile::{Decay, RadialProfile, StepSequence};
use crate::quad::KahanSum;

/// `|a_n| <= coefficient * n^{-exponent}` for `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequenceDecay {
    pub exponent: f64,
    pub coefficient: f64,
}

/// A real sequence `{a_n}_{n >= 0}` tending to zero.
#[derive(Clone)]
pub struct SequenceProfile {
    name: String,
    term: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
    decay: SequenceDecay,
    /// Last nonzero index of a finitely supported sequence.
    last: Option<u64>,
    closed_form_tag: Option<String>,
}

impl fmt::Debug for SequenceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SequenceProfile")
            .field("name", &self.name)
            .field("decay", &self.decay)
            .field("last", &self.last)
            .finish()
    }
}

impl SequenceProfile {
    pub fn new(
        name: impl Into<String>,
        term: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
        decay: SequenceDecay,
    ) -> Self {
        Self { name: name.into(), term, decay, last: None, closed_form_tag: None }
    }

    /// A finitely supported sequence; `a_n = 0` beyond the given values.
    pub fn finite(name: impl Into<String>, values: Vec<f64>) -> Self {
        let last = values.len().saturating_sub(1) as u64;
        let coefficient = values
            .iter()
            .enumerate()
            .map(|(n, a)| a.abs() * (n.max(1) as f64))
            .fold(0.0, f64::max);
        let values = Arc::new(values);
        Self {
            name: name.into(),
            term: Arc::new(move |n| values.get(n as usize).cloned().unwrap_or(0.0)),
            decay: SequenceDecay { exponent: 1.0, coefficient },
            last: Some(last),
            closed_form_tag: None,
        }
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.closed_form_tag = Some(tag.into());
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn decay(&self) -> SequenceDecay {
        self.decay
    }

    pub fn closed_form_tag(&self) -> Option<&str> {
        self.closed_form_tag.as_deref()
    }

    pub fn last_nonzero(&self) -> Option<u64> {
        self.last
    }

    #[inline]
    pub fn term(&self, n: u64) -> f64 {
        (self.term)(n)
    }

    /// The step function `f(x) = a_n` on `(n, n+1]`.
    pub fn step_profile(&self) -> RadialProfile {
        let decay = match self.last {
            Some(last) => Decay::Compact { end: last as f64 + 1.0 },
            None => Decay::Power {
                exponent: self.decay.exponent,
                // t <= n+1 <= 2n on (n, n+1]
                coefficient: self.decay.coefficient * 2f64.powf(self.decay.exponent),
                from: 1.0,
            },
        };
        RadialProfile::new(
            format!("step({})", self.name),
            Arc::new(StepSequence::new(self.term.clone())),
            decay,
            None,
        )
    }
}

/// `S_N(x) = Σ_{n=0}^{N} a_n cos(nx)` with compensated summation.
pub fn cosine_partial_sum(s: &SequenceProfile, n: u64, x: f64) -> f64 {
    cosine_range_sum(s, 0, n, x)
}

/// `Σ_{n=lo}^{hi} a_n cos(nx)`.
fn cosine_range_sum(s: &SequenceProfile, lo: u64, hi: u64, x: f64) -> f64 {
    let hi = s.last.map_or(hi, |l| hi.min(l));
    let mut acc = KahanSum::new();
    let mut k = lo;
    while k <= hi {
        let a = s.term(k);
        if a != 0.0 {
            acc.add(a * (k as f64 * x).cos());
        }
        k += 1;
    }
    acc.value()
}

/// `S_N(x)` for several `N` at once, accumulated along the sorted list.
pub fn cosine_partial_sums(s: &SequenceProfile, ns: &[u64], x: f64) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..ns.len()).collect();
    idx.sort_by_key(|&i| ns[i]);
    let mut out = vec![0.0; ns.len()];
    let mut acc = KahanSum::new();
    let mut next = 0u64;
    for i in idx {
        let n = ns[i];
        if n + 1 > next {
            acc.add(cosine_range_sum(s, next, n, x));
            next = n + 1;
        }
        out[i] = acc.value();
    }
    out
}

/// Least-squares fit `S_N ≈ intercept + slope · ln N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope.
    pub slope_stderr: f64,
}

/// Fits partial sums on a dyadic ladder `N = n_lo · 2^k <= n_hi` against
/// `ln N`.
pub fn log_growth_fit(s: &SequenceProfile, x: f64, n_lo: u64, n_hi: u64) -> Result<LogFit> {
    if n_lo == 0 || n_hi <= n_lo {
        return Err(Error::InvalidArgument(format!("need 0 < n_lo < n_hi, got {n_lo}, {n_hi}")));
    }
    let mut ns = Vec::new();
    let mut k = 0;
    loop {
        let n = (n_lo as f64 * 2f64.powf(k as f64 / 2.0)).round() as u64;
        if n > n_hi {
            break;
        }
        ns.push(n);
        k += 1;
    }
    if ns.len() < 3 {
        return Err(Error::InvalidArgument("ladder needs at least three rungs".into()));
    }
    let ys = cosine_partial_sums(s, &ns, x);
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let slope_stderr = (rss / (m - 2.0) / sxx).sqrt();
    Ok(LogFit { slope, intercept, slope_stderr })
}

/// One block of the GMS condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GmsPoint {
    pub n: u64,
    /// `Σ_{k=n}^{2n} |a_k - a_{k+1}|`
    pub lhs: f64,
    /// `Σ_{k=⌈n/λ⌉}^{⌊λn⌋} |a_k| / k`
    pub rhs: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GmsReport {
    pub c: f64,
    pub nu: u32,
    pub points: Vec<GmsPoint>,
}

impl GmsReport {
    pub fn passed(&self) -> bool {
        self.points.iter().all(|p| p.pass)
    }
}

fn gms_block(s: &SequenceProfile, lambda: u64, n: u64) -> (f64, f64) {
    let mut lhs = KahanSum::new();
    for k in n..=2 * n {
        lhs.add((s.term(k) - s.term(k + 1)).abs());
    }
    let mut rhs = KahanSum::new();
    for k in n.div_ceil(lambda).max(1)..=lambda * n {
        rhs.add(s.term(k).abs() / k as f64);
    }
    (lhs.value(), rhs.value())
}

fn check_n_grid(n_grid: &[u64], nu: u32) -> Result<()> {
    if n_grid.contains(&0) {
        return Err(Error::InvalidArgument("GMS blocks need n >= 1".into()));
    }
    if nu == 0 || nu > 30 {
        return Err(Error::InvalidArgument(format!("ν must be a positive integer, got {nu}")));
    }
    Ok(())
}

/// Checks the GMS condition with constants `(C, λ = 2^ν)` at every `n`.
pub fn gms_verify(s: &SequenceProfile, c: f64, nu: u32, n_grid: &[u64]) -> Result<GmsReport> {
    check_n_grid(n_grid, nu)?;
    let lambda = 1u64 << nu;
    let vals = par::map(n_grid, |&n| gms_block(s, lambda, n));
    let points = n_grid
        .iter()
        .zip(vals)
        .map(|(&n, (lhs, rhs))| GmsPoint { n, lhs, rhs, pass: lhs <= c * rhs })
        .collect();
    Ok(GmsReport { c, nu, points })
}

/// Smallest `C` making the GMS condition hold on the grid.
pub fn gms_fit_constant(s: &SequenceProfile, nu: u32, n_grid: &[u64]) -> Result<f64> {
    check_n_grid(n_grid, nu)?;
    let lambda = 1u64 << nu;
    let vals = par::map(n_grid, |&n| gms_block(s, lambda, n));
    let mut c = 0.0_f64;
    for (&n, (lhs, rhs)) in n_grid.iter().zip(vals) {
        if rhs == 0.0 {
            if lhs > 0.0 {
                return Err(Error::NotGmOnGrid { x: n as f64, lhs });
            }
            continue;
        }
        c = c.max(lhs / rhs);
    }
    Ok(c)
}

/// Geometric grid of distinct integers in `[1, n_max]`.
pub fn integer_grid(n_max: u64, per_decade: usize) -> Vec<u64> {
    let decades = (n_max as f64).log10();
    let count = (decades * per_decade as f64).ceil() as usize;
    let mut g: Vec<u64> = (0..=count)
        .map(|i| 10f64.powf(i as f64 / per_decade as f64).round() as u64)
        .filter(|&n| n >= 1 && n <= n_max)
        .collect();
    g.push(n_max);
    g.sort_unstable();
    g.dedup();
    g
}

/// `(m, max_{m <= n <= n_cut} n|a_n|)` for each `m`, with the decay bound
/// covering `n > n_cut`.
pub fn gms_abel_olivier(s: &SequenceProfile, m_grid: &[u64]) -> Result<Vec<(u64, f64)>> {
    if m_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("m grid must be increasing".into()));
    }
    let d = s.decay();
    if s.last.is_none() && d.exponent < 1.0 {
        return Err(Error::Unbounded(format!("n|a_n| grows like n^{} for `{}`", 1.0 - d.exponent, s.name())));
    }
    let Some(&top) = m_grid.last() else { return Ok(Vec::new()) };
    let n_cut = 4 * top.max(1);
    let tail = match s.last {
        Some(l) if l <= n_cut => 0.0,
        _ => d.coefficient * (n_cut as f64 + 1.0).powf(1.0 - d.exponent),
    };
    let mut out = vec![(0, 0.0); m_grid.len()];
    let mut running = tail;
    let mut hi = n_cut;
    for i in (0..m_grid.len()).rev() {
        let m = m_grid[i];
        let mut k = m;
        while k <= hi {
            running = running.max(k as f64 * s.term(k).abs());
            k += 1;
        }
        hi = m.saturating_sub(1);
        out[i] = (m, running);
    }
    Ok(out)
}

/// `D_N(x) = Σ_{n=-N}^{N} e^{inx} = sin((N+1/2)x) / sin(x/2)`.
pub fn dirichlet_kernel(n: u64, x: f64) -> f64 {
    let s = (0.5 * x).sin();
    if s.abs() > 1e-8 {
        ((n as f64 + 0.5) * x).sin() / s
    } else {
        dirichlet_kernel_direct(n, x)
    }
}

/// `1 + 2 Σ_{k=1}^{N} cos(kx)`.
pub fn dirichlet_kernel_direct(n: u64, x: f64) -> f64 {
    let mut acc = KahanSum::new();
    acc.add(1.0);
    for k in 1..=n {
        acc.add(2.0 * (k as f64 * x).cos());
    }
    acc.value()
}

/// `|Σ_{n=1}^N cos²n - (N/2 + (D_N(2) - 1)/4)|`.
pub fn cos_square_sum_identity(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let mut direct = KahanSum::new();
    for k in 1..=n {
        let c = (k as f64).cos();
        direct.add(c * c);
    }
    let closed = n as f64 / 2.0 + (dirichlet_kernel(n, 2.0) - 1.0) / 4.0;
    Ok((direct.value() - closed).abs())
}

/// `max_{x ∈ grid} |S_N(x) - S_M(x)|`.
pub fn uniform_tail_series(s: &SequenceProfile, x_grid: &[f64], m: u64, n: u64) -> Result<f64> {
    if n <= m {
        return Err(Error::InvalidArgument(format!("need M < N, got M = {m}, N = {n}")));
    }
    let vals = par::map(x_grid, |&x| cosine_range_sum(s, m + 1, n, x).abs());
    Ok(vals.into_iter().fold(0.0, f64::max))
}

/// `max_{x ∈ grid} |S_N(x)|`.
pub fn max_partial_sum(s: &SequenceProfile, x_grid: &[f64], n: u64) -> f64 {
    par::map(x_grid, |&x| cosine_partial_sum(s, n, x).abs())
        .into_iter()
        .fold(0.0, f64::max)
}

/// Points `c ± δ` with `δ` geometric over `[1e-6, 1]`, 8 per decade.
pub fn straddling_grid(c: f64) -> Vec<f64> {
    let mut g = vec![c];
    for i in 0..=48 {
        let d = 1e-6 * 10f64.powf(i as f64 / 8.0);
        g.push(c - d);
        g.push(c + d);
    }
    g.sort_by(f64::total_cmp);
    g
}
