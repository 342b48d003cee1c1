//! Real-valued radial profiles `f` on `(0, ∞)` with their variation measure
//! `|df|`: a derivative density on smooth pieces plus signed jump atoms at
//! declared breakpoints.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quad::{self, adaptive, bisect_root, golden_max, tanh_sinh, Estimate, KahanSum};

/// The analytic description behind a [`RadialProfile`].
pub trait Shape: Send + Sync + fmt::Debug {
    fn value(&self, t: f64) -> f64;

    /// Derivative on the smooth pieces.
    fn derivative(&self, t: f64) -> f64;

    /// Breakpoints in the half-open interval `(a, b]`, ascending.
    fn breakpoints(&self, a: f64, b: f64) -> Vec<f64>;

    /// Signed jump `f(t0+) - f(t0-)` at a breakpoint.
    fn jump(&self, t0: f64) -> f64;

    /// Largest breakpoint, or `None` when there are infinitely many.
    fn last_breakpoint(&self) -> Option<f64>;

    /// Angular frequency of an intrinsic oscillation of `f`.
    fn frequency(&self) -> Option<f64> {
        None
    }

    /// True when `f` is constant between consecutive breakpoints.
    fn piecewise_constant(&self) -> bool {
        false
    }
}

/// Certified behaviour of `|f(t)|` as `t → ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// `f(t) = 0` for `t > end`.
    Compact { end: f64 },
    /// `|f(t)| <= coefficient * t^(-exponent)` for `t >= from`.
    Power { exponent: f64, coefficient: f64, from: f64 },
    /// `|f(t)| <= coefficient * t^power * exp(-rate t)` for `t >= from`.
    Exponential { rate: f64, coefficient: f64, power: f64, from: f64 },
}

impl Decay {
    /// Start of the range where the bound holds.
    pub fn from(&self) -> f64 {
        match *self {
            Decay::Compact { end } => end,
            Decay::Power { from, .. } | Decay::Exponential { from, .. } => from,
        }
    }

    /// Algebraic decay exponent (`∞` for compact or exponential decay).
    pub fn exponent(&self) -> f64 {
        match *self {
            Decay::Power { exponent, .. } => exponent,
            _ => f64::INFINITY,
        }
    }

    /// Upper bound for `sup_{t >= t0} t^w |f(t)|`, valid for `t0 >= from()`.
    /// `None` when the weighted profile is unbounded.
    pub fn weighted_sup_bound(&self, w: f64, t0: f64) -> Option<f64> {
        match *self {
            Decay::Compact { end } => {
                if t0 >= end {
                    Some(0.0)
                } else {
                    None
                }
            }
            Decay::Power { exponent, coefficient, .. } => {
                if w > exponent {
                    None
                } else {
                    Some(coefficient * t0.powf(w - exponent))
                }
            }
            Decay::Exponential { rate, coefficient, power, .. } => {
                let k = power + w;
                let t_star = if k > 0.0 { k / rate } else { 0.0 };
                let t = t0.max(t_star);
                Some(coefficient * t.powf(k) * (-rate * t).exp())
            }
        }
    }

    fn weighted(self, w: f64) -> Decay {
        match self {
            Decay::Compact { .. } => self,
            Decay::Power { exponent, coefficient, from } => Decay::Power {
                exponent: exponent - w,
                coefficient,
                from,
            },
            Decay::Exponential { rate, coefficient, power, from } => Decay::Exponential {
                rate,
                coefficient,
                power: power + w,
                from,
            },
        }
    }
}

/// A real-valued profile on `(0, ∞)` vanishing at infinity.
#[derive(Clone)]
pub struct RadialProfile {
    name: String,
    shape: Arc<dyn Shape>,
    decay: Decay,
    origin: Option<f64>,
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProfile")
            .field("name", &self.name)
            .field("decay", &self.decay)
            .field("origin", &self.origin)
            .finish()
    }
}

/// Relative nudge used to evaluate one-sided limits at piece ends.
const NUDGE: f64 = 1e-14;

impl RadialProfile {
    /// `origin`: exponent `q` with `|f(t)| = O(t^-q)` as `t → 0`
    /// (`None` for bounded profiles).
    pub fn new(name: impl Into<String>, shape: Arc<dyn Shape>, decay: Decay, origin: Option<f64>) -> Self {
        Self { name: name.into(), shape, decay, origin }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn decay(&self) -> Decay {
        self.decay
    }

    pub fn origin(&self) -> Option<f64> {
        self.origin
    }

    pub fn shape(&self) -> &Arc<dyn Shape> {
        &self.shape
    }

    #[inline]
    pub fn value(&self, t: f64) -> f64 {
        self.shape.value(t)
    }

    #[inline]
    pub fn derivative(&self, t: f64) -> f64 {
        self.shape.derivative(t)
    }

    pub fn breakpoints(&self, a: f64, b: f64) -> Vec<f64> {
        self.shape.breakpoints(a, b)
    }

    pub fn jump(&self, t0: f64) -> f64 {
        self.shape.jump(t0)
    }

    pub fn frequency(&self) -> Option<f64> {
        self.shape.frequency()
    }

    /// End of the support for compactly supported profiles.
    pub fn support_end(&self) -> Option<f64> {
        match self.decay {
            Decay::Compact { end } => Some(end),
            _ => None,
        }
    }

    /// The profile `t ↦ t^w f(t)`.
    pub fn weighted(&self, w: f64) -> RadialProfile {
        RadialProfile {
            name: format!("t^{w} * {}", self.name),
            shape: Arc::new(Weighted { inner: self.shape.clone(), w }),
            decay: self.decay.weighted(w),
            origin: self.origin.map(|q| q - w).or(if w < 0.0 { Some(-w) } else { None }),
        }
    }

    /// Splits `[a, b]` at breakpoints into smooth segments.
    pub fn segments(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        let mut lo = a;
        for bp in self.breakpoints(a, b) {
            if bp < b && bp > lo {
                out.push((lo, bp));
                lo = bp;
            }
        }
        if b > lo {
            out.push((lo, b));
        }
        out
    }

    /// Smooth segments, further cut at powers of two when they span more
    /// than a factor two (keeps algebraic behaviour resolvable).
    pub fn dyadic_segments(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for (mut lo, hi) in self.segments(a, b) {
            if lo <= 0.0 && hi > 1.0 {
                out.push((lo, 1.0));
                lo = 1.0;
            }
            if lo <= 0.0 || !hi.is_finite() || hi / lo <= 2.0 {
                out.push((lo, hi));
                continue;
            }
            let mut x = lo;
            let mut k = lo.log2().floor() + 1.0;
            loop {
                let next = 2f64.powf(k);
                if next >= hi {
                    out.push((x, hi));
                    break;
                }
                if next > x {
                    out.push((x, next));
                    x = next;
                }
                k += 1.0;
            }
        }
        out
    }

    /// Number of samples needed to resolve sign changes on `[lo, hi]`.
    fn samples(&self, lo: f64, hi: f64, base: usize) -> usize {
        let osc = self
            .frequency()
            .map(|w| ((hi - lo) * w / PI * 6.0).ceil() as usize)
            .unwrap_or(0);
        base.max(osc).min(50_000_000)
    }

    /// Interior roots of `g` on `[lo, hi]`, located on a sampling grid of
    /// `n` cells and refined by bisection.
    fn roots<G: Fn(f64) -> f64>(g: &G, lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
        let mut roots = Vec::new();
        let step = (hi - lo) / n as f64;
        let mut x0 = lo;
        let mut g0 = g(x0);
        for i in 1..=n {
            let x1 = if i == n { hi } else { lo + i as f64 * step };
            let g1 = g(x1);
            if !g1.is_finite() {
                return Err(Error::NonIntegrable { a: lo, b: hi });
            }
            if g0 != 0.0 && g1 != 0.0 && (g0 < 0.0) != (g1 < 0.0) {
                roots.push(bisect_root(g, x0, x1));
            }
            x0 = x1;
            g0 = g1;
        }
        Ok(roots)
    }

    fn inner(lo: f64, hi: f64) -> (f64, f64) {
        let lo_in = if lo > 0.0 { lo + lo * NUDGE } else { lo };
        let hi_in = hi - hi.abs() * NUDGE;
        (lo_in, hi_in)
    }

    /// `∫_a^b |df|`: total variation of the smooth pieces plus the absolute
    /// jumps at breakpoints in `(a, b]`.
    pub fn variation(&self, a: f64, b: f64) -> Result<f64> {
        if !(a > 0.0 && b > a && b.is_finite()) {
            return Err(Error::InvalidArgument(format!("variation needs 0 < a < b < ∞, got ({a}, {b})")));
        }
        let mut total = KahanSum::new();
        if !self.shape.piecewise_constant() {
            for (lo, hi) in self.segments(a, b) {
                let (lo_in, hi_in) = Self::inner(lo, hi);
                if hi_in <= lo_in {
                    continue;
                }
                let n = self.samples(lo, hi, 32);
                let d = |t: f64| self.derivative(t);
                if !d(lo_in).is_finite() {
                    return Err(Error::NonIntegrable { a: lo, b: hi });
                }
                let mut prev = self.value(lo_in);
                for r in Self::roots(&d, lo_in, hi_in, n)? {
                    let v = self.value(r);
                    total.add((v - prev).abs());
                    prev = v;
                }
                total.add((self.value(hi_in) - prev).abs());
            }
        }
        for bp in self.breakpoints(a, b) {
            total.add(self.jump(bp).abs());
        }
        Ok(total.value())
    }

    /// `∫_a^b |f(t)| / t dt` for `0 < a < b < ∞`.
    pub fn window_integral(&self, a: f64, b: f64) -> Result<f64> {
        if !(a > 0.0 && b > a && b.is_finite()) {
            return Err(Error::InvalidArgument(format!("window integral needs 0 < a < b < ∞, got ({a}, {b})")));
        }
        let mut total = KahanSum::new();
        for (lo, hi) in self.dyadic_segments(a, b) {
            if self.shape.piecewise_constant() {
                let mid = 0.5 * (lo + hi);
                total.add(self.value(mid).abs() * (hi / lo).ln());
                continue;
            }
            let (lo_in, hi_in) = Self::inner(lo, hi);
            let f = |t: f64| self.value(t);
            let mut cuts = vec![lo];
            cuts.extend(Self::roots(&f, lo_in, hi_in, self.samples(lo, hi, 16))?);
            cuts.push(hi);
            let g = |t: f64| self.value(t).abs() / t;
            for w in cuts.windows(2) {
                let est = adaptive(&g, w[0], w[1], 1e-300, 1e-12, 200);
                total.add(est.value);
            }
        }
        Ok(total.value())
    }

    /// `sup_{a <= t <= b} t^w |f(t)|` and its location, from a grid of at
    /// least `points` samples per dyadic block with golden-section refinement
    /// at grid maxima. Both endpoint values and one-sided limits at
    /// breakpoints are included.
    pub fn sup_weighted(&self, w: f64, a: f64, b: f64, points: usize) -> (f64, f64) {
        let g = |t: f64| t.powf(w) * self.value(t).abs();
        let mut best = (a, g(a));
        let gb = g(b);
        if gb > best.1 {
            best = (b, gb);
        }
        for (lo, hi) in self.dyadic_segments(a, b) {
            let (lo_in, hi_in) = Self::inner(lo, hi);
            for t in [lo_in, hi_in] {
                let v = g(t);
                if v > best.1 {
                    best = (t, v);
                }
            }
            if self.shape.piecewise_constant() || hi_in <= lo_in {
                continue;
            }
            let n = self.samples(lo, hi, points);
            let step = (hi_in - lo_in) / n as f64;
            let xs: Vec<f64> = (0..=n).map(|i| lo_in + i as f64 * step).collect();
            let vs: Vec<f64> = xs.iter().map(|&t| g(t)).collect();
            let top = vs.iter().cloned().fold(0.0, f64::max);
            for i in 1..n {
                if vs[i] >= vs[i - 1] && vs[i] >= vs[i + 1] && vs[i] >= top * (1.0 - 1e-3) {
                    let (x, v) = golden_max(&g, xs[i - 1], xs[i + 1], 1e-14);
                    if v > best.1 {
                        best = (x, v);
                    }
                }
                if vs[i] > best.1 {
                    best = (xs[i], vs[i]);
                }
            }
        }
        (best.1, best.0)
    }

    /// `∫_a^b t^w f(t) dt` for `0 <= a < b < ∞`, with tanh-sinh on a first
    /// segment that touches a singular origin.
    pub fn integrate_weighted(&self, w: f64, a: f64, b: f64, tol: f64) -> Estimate {
        let g = |t: f64| t.powf(w) * self.value(t);
        self.integrate_with(&g, a, b, tol, w, 0.0)
    }

    /// `∫_a^b k(t) dt` where `k` is built from this profile and may share its
    /// breakpoints, oscillation and origin behaviour (`origin_weight` is the
    /// power of `t` multiplying `f` near zero). Panels are cut at
    /// breakpoints and to a quarter period of both the profile's oscillation
    /// and `kernel_frequency`.
    pub(crate) fn integrate_with<G: Fn(f64) -> f64>(
        &self,
        g: &G,
        a: f64,
        b: f64,
        tol: f64,
        origin_weight: f64,
        kernel_frequency: f64,
    ) -> Estimate {
        let mut total = Estimate::default();
        let mut sum = KahanSum::new();
        let mut panel = self.frequency().map(|w| PI / (2.0 * w)).unwrap_or(f64::INFINITY);
        if kernel_frequency > 0.0 {
            panel = panel.min(PI / (2.0 * kernel_frequency));
        }
        let singular = self.origin.map(|q| q > 0.0).unwrap_or(false) || origin_weight < 0.0;
        let span = b - a;
        for (lo, hi) in self.dyadic_segments(a, b) {
            let pieces = ((hi - lo) / panel).ceil().max(1.0) as usize;
            let h = (hi - lo) / pieces as f64;
            for i in 0..pieces {
                let p0 = lo + i as f64 * h;
                let p1 = if i + 1 == pieces { hi } else { p0 + h };
                let t = (tol * (p1 - p0) / span).max(1e-300);
                let est = if p0 == 0.0 && singular {
                    tanh_sinh(g, p0, p1, t)
                } else {
                    adaptive(g, p0, p1, t, 1e-14, 500)
                };
                sum.add(est.value);
                total.error += est.error;
            }
        }
        total.value = sum.value();
        total
    }

    /// Stieltjes integral `∫_{(a, b]} t^w df(t)` over a finite interval.
    pub fn stieltjes_weighted(&self, w: f64, a: f64, b: f64, tol: f64) -> Estimate {
        let mut est = Estimate::default();
        if b <= a {
            return est;
        }
        if !self.shape.piecewise_constant() {
            let g = |t: f64| {
                if t == 0.0 {
                    0.0
                } else {
                    t.powf(w) * self.derivative(t)
                }
            };
            est = self.integrate_with(&g, a, b, tol, w - 1.0, 0.0);
        }
        let mut atoms = KahanSum::new();
        atoms.add(est.value);
        for bp in self.breakpoints(a, b) {
            atoms.add(bp.powf(w) * self.jump(bp));
        }
        est.value = atoms.value();
        est
    }

    /// Start of the smooth tail used for half-infinite integrals, when the
    /// profile has finitely many breakpoints and no intrinsic oscillation.
    pub fn smooth_tail_start(&self) -> Option<f64> {
        if self.frequency().is_some() {
            return None;
        }
        let last = self.shape.last_breakpoint()?;
        Some(last.max(self.decay.from()).max(1.0))
    }
}

/// `t^w f(t)`.
#[derive(Debug)]
struct Weighted {
    inner: Arc<dyn Shape>,
    w: f64,
}

impl Shape for Weighted {
    fn value(&self, t: f64) -> f64 {
        t.powf(self.w) * self.inner.value(t)
    }
    fn derivative(&self, t: f64) -> f64 {
        self.w * t.powf(self.w - 1.0) * self.inner.value(t) + t.powf(self.w) * self.inner.derivative(t)
    }
    fn breakpoints(&self, a: f64, b: f64) -> Vec<f64> {
        self.inner.breakpoints(a, b)
    }
    fn jump(&self, t0: f64) -> f64 {
        t0.powf(self.w) * self.inner.jump(t0)
    }
    fn last_breakpoint(&self) -> Option<f64> {
        self.inner.last_breakpoint()
    }
    fn frequency(&self) -> Option<f64> {
        self.inner.frequency()
    }
}

/// Elementary closed forms allowed on a piece.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Expr {
    /// `c`
    Const(f64),
    /// `c t^p`
    Pow { c: f64, p: f64 },
    /// `c e^{-r t}`
    Exp { c: f64, r: f64 },
    /// `c t^p cos(ω t)`
    PowCos { c: f64, p: f64, omega: f64 },
}

impl Expr {
    pub fn value(&self, t: f64) -> f64 {
        match *self {
            Expr::Const(c) => c,
            Expr::Pow { c, p } => c * t.powf(p),
            Expr::Exp { c, r } => c * (-r * t).exp(),
            Expr::PowCos { c, p, omega } => c * t.powf(p) * (omega * t).cos(),
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        match *self {
            Expr::Const(_) => 0.0,
            Expr::Pow { c, p } => {
                if p == 0.0 {
                    0.0
                } else {
                    c * p * t.powf(p - 1.0)
                }
            }
            Expr::Exp { c, r } => -c * r * (-r * t).exp(),
            Expr::PowCos { c, p, omega } => {
                let (s, co) = (omega * t).sin_cos();
                c * t.powf(p - 1.0) * (p * co - omega * t * s)
            }
        }
    }

    fn frequency(&self) -> Option<f64> {
        match *self {
            Expr::PowCos { omega, .. } if omega != 0.0 => Some(omega.abs()),
            _ => None,
        }
    }

    fn parse(src: &str) -> Result<Expr> {
        let src = src.trim();
        let open = src.find('(').ok_or_else(|| Error::Parse(format!("expected `name(args)`, got `{src}`")))?;
        if !src.ends_with(')') {
            return Err(Error::Parse(format!("unterminated expression `{src}`")));
        }
        let name = src[..open].trim();
        let args: Vec<f64> = src[open + 1..src.len() - 1]
            .split(',')
            .map(parse_number)
            .collect::<Result<_>>()?;
        let want = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::Parse(format!("`{name}` takes {n} arguments, got {}", args.len())))
            }
        };
        match name {
            "const" => {
                want(1)?;
                Ok(Expr::Const(args[0]))
            }
            "pow" => {
                want(2)?;
                Ok(Expr::Pow { c: args[0], p: args[1] })
            }
            "exp" => {
                want(2)?;
                Ok(Expr::Exp { c: args[0], r: args[1] })
            }
            "powcos" => {
                want(3)?;
                Ok(Expr::PowCos { c: args[0], p: args[1], omega: args[2] })
            }
            other => Err(Error::Parse(format!("unknown expression `{other}`"))),
        }
    }
}

fn parse_number(s: &str) -> Result<f64> {
    let s = s.trim();
    match s {
        "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
        _ => s.parse::<f64>().map_err(|_| Error::Parse(format!("bad number `{s}`"))),
    }
}

/// A profile given by closed forms on consecutive pieces `(start, end]`
/// starting at zero; the last piece extends to infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct Piecewise {
    /// Interior breakpoints, ascending.
    ends: Vec<f64>,
    exprs: Vec<Expr>,
}

impl Piecewise {
    /// `pieces` are `(end, expr)` with the final end equal to `∞`.
    pub fn new(pieces: Vec<(f64, Expr)>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidArgument("piecewise profile needs at least one piece".into()));
        }
        let mut ends = Vec::new();
        let mut prev = 0.0;
        for (i, &(end, _)) in pieces.iter().enumerate() {
            let last = i + 1 == pieces.len();
            if last {
                if end != f64::INFINITY {
                    return Err(Error::InvalidArgument("last piece must extend to infinity".into()));
                }
            } else {
                if !(end > prev && end.is_finite()) {
                    return Err(Error::InvalidArgument(format!("piece ends must increase, got {end}")));
                }
                ends.push(end);
                prev = end;
            }
        }
        Ok(Self { ends, exprs: pieces.into_iter().map(|(_, e)| e).collect() })
    }

    #[inline]
    fn piece(&self, t: f64) -> usize {
        // t in (end_{i-1}, end_i] belongs to piece i
        self.ends.partition_point(|&e| e < t)
    }

    pub fn tail(&self) -> Expr {
        *self.exprs.last().unwrap()
    }

    pub fn head(&self) -> Expr {
        self.exprs[0]
    }

    /// Parses `start..end: expr; ...`, e.g.
    /// `0..1: exp(1,1); 1..inf: const(0)`.
    pub fn parse(src: &str) -> Result<Self> {
        let mut pieces = Vec::new();
        let mut expected_start = 0.0;
        for part in src.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (range, expr) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("piece `{part}` lacks `range: expr`")))?;
            let (start, end) = range
                .split_once("..")
                .ok_or_else(|| Error::Parse(format!("range `{range}` lacks `..`")))?;
            let start = parse_number(start)?;
            let end = parse_number(end)?;
            if start != expected_start {
                return Err(Error::Parse(format!("piece starts at {start}, expected {expected_start}")));
            }
            pieces.push((end, Expr::parse(expr)?));
            expected_start = end;
        }
        Self::new(pieces)
    }

    /// Builds a profile, deriving the decay and origin hints from the
    /// first and last pieces.
    pub fn into_profile(self, name: impl Into<String>) -> Result<RadialProfile> {
        let from = self.ends.last().cloned().unwrap_or(0.0);
        let decay = match self.tail() {
            Expr::Const(c) if c == 0.0 => Decay::Compact { end: from },
            Expr::Pow { c, p } | Expr::PowCos { c, p, .. } if p < 0.0 || c == 0.0 => Decay::Power {
                exponent: -p,
                coefficient: c.abs(),
                from: from.max(f64::MIN_POSITIVE),
            },
            Expr::Exp { c, r } if r > 0.0 => Decay::Exponential { rate: r, coefficient: c.abs(), power: 0.0, from },
            other => {
                return Err(Error::InvalidArgument(format!(
                    "last piece {other:?} does not vanish at infinity"
                )))
            }
        };
        let origin = match self.head() {
            Expr::Pow { p, .. } | Expr::PowCos { p, .. } if p < 0.0 => Some(-p),
            _ => None,
        };
        Ok(RadialProfile::new(name, Arc::new(self), decay, origin))
    }
}

impl Shape for Piecewise {
    fn value(&self, t: f64) -> f64 {
        self.exprs[self.piece(t)].value(t)
    }
    fn derivative(&self, t: f64) -> f64 {
        self.exprs[self.piece(t)].derivative(t)
    }
    fn breakpoints(&self, a: f64, b: f64) -> Vec<f64> {
        self.ends.iter().cloned().filter(|&e| e > a && e <= b).collect()
    }
    fn jump(&self, t0: f64) -> f64 {
        match self.ends.iter().position(|&e| e == t0) {
            Some(i) => self.exprs[i + 1].value(t0) - self.exprs[i].value(t0),
            None => 0.0,
        }
    }
    fn last_breakpoint(&self) -> Option<f64> {
        Some(self.ends.last().cloned().unwrap_or(0.0))
    }
    fn frequency(&self) -> Option<f64> {
        self.exprs.iter().filter_map(Expr::frequency).fold(None, |m, w| Some(m.map_or(w, |m: f64| m.max(w))))
    }
}

/// `f = 1` on `(0, 1)` and `f = (-1)^k ratio^{-k}` on `[2^k, 2^{k+1})`.
#[derive(Debug, Clone, Copy)]
pub struct AlternatingDyadic {
    pub ratio: f64,
}

impl AlternatingDyadic {
    fn block(t: f64) -> i32 {
        let mut k = t.log2().floor() as i32;
        // guard rounding at exact powers of two
        if 2f64.powi(k + 1) <= t {
            k += 1;
        } else if 2f64.powi(k) > t {
            k -= 1;
        }
        k
    }

    fn level(&self, k: i32) -> f64 {
        if k < 0 {
            1.0
        } else {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            s * self.ratio.powi(-k)
        }
    }
}

impl Shape for AlternatingDyadic {
    fn value(&self, t: f64) -> f64 {
        self.level(Self::block(t))
    }
    fn derivative(&self, _t: f64) -> f64 {
        0.0
    }
    fn breakpoints(&self, a: f64, b: f64) -> Vec<f64> {
        let mut out = Vec::new();
        let mut k = Self::block(a.max(1.0)).max(0);
        loop {
            let x = 2f64.powi(k);
            if x > b {
                break;
            }
            if x > a {
                out.push(x);
            }
            k += 1;
        }
        out
    }
    fn jump(&self, t0: f64) -> f64 {
        let k = Self::block(t0);
        if 2f64.powi(k) != t0 {
            return 0.0;
        }
        self.level(k) - self.level(k - 1)
    }
    fn last_breakpoint(&self) -> Option<f64> {
        None
    }
    fn piecewise_constant(&self) -> bool {
        true
    }
}

/// Step function `f(x) = a_n` on `(n, n+1]` built from a coefficient map.
#[derive(Clone)]
pub struct StepSequence {
    term: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
}

impl fmt::Debug for StepSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("StepSequence")
    }
}

impl StepSequence {
    pub fn new(term: Arc<dyn Fn(u64) -> f64 + Send + Sync>) -> Self {
        Self { term }
    }

    fn index(t: f64) -> u64 {
        (t.ceil() - 1.0).max(0.0) as u64
    }
}

impl Shape for StepSequence {
    fn value(&self, t: f64) -> f64 {
        (self.term)(Self::index(t))
    }
    fn derivative(&self, _t: f64) -> f64 {
        0.0
    }
    fn breakpoints(&self, a: f64, b: f64) -> Vec<f64> {
        let first = (a.floor() + 1.0).max(1.0) as u64;
        let last = b.floor() as u64;
        (first..=last).map(|k| k as f64).collect()
    }
    fn jump(&self, t0: f64) -> f64 {
        if t0.fract() != 0.0 || t0 < 1.0 {
            return 0.0;
        }
        let k = t0 as u64;
        (self.term)(k) - (self.term)(k - 1)
    }
    fn last_breakpoint(&self) -> Option<f64> {
        None
    }
    fn piecewise_constant(&self) -> bool {
        true
    }
}

/// Integrates `t^w f(t)` over `[0, ∞)` when the tail converges absolutely.
pub(crate) fn integrate_weighted_to_infinity(p: &RadialProfile, w: f64, tol: f64) -> Result<Estimate> {
    if let Some(end) = p.support_end() {
        return Ok(p.integrate_weighted(w, 0.0, end, tol));
    }
    if p.decay().exponent() <= w + 1.0 {
        return Err(Error::Divergent(format!(
            "t^{w} f(t) is not integrable at infinity (decay exponent {})",
            p.decay().exponent()
        )));
    }
    let start = p.smooth_tail_start().ok_or_else(|| {
        Error::InvalidArgument(format!("profile `{}` has no smooth tail for a half-infinite integral", p.name()))
    })?;
    let head = p.integrate_weighted(w, 0.0, start, 0.5 * tol);
    let g = |t: f64| t.powf(w) * p.value(t);
    let tail = quad::exp_sinh(&g, start, 0.5 * tol);
    Ok(head + tail)
}
