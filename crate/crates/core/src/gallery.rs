//! Catalog of profiles and sequences with known GM status and closed-form
//! transforms.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::profile::{AlternatingDyadic, Decay, Expr, Piecewise, RadialProfile};
use crate::series::{SequenceDecay, SequenceProfile};

/// What the catalog records about membership in GM (profiles) or GMS
/// (sequences).
#[derive(Debug, Clone, PartialEq)]
pub enum GmStatus {
    /// Member with the given `ν`; the constant is fitted on the default grid.
    Gm { nu: u32 },
    /// Not a member: the condition with `(c, 2^nu)` fails at `witness`.
    NotGm { reason: &'static str, witness: f64, c: f64, nu: u32 },
    Unknown,
}

impl GmStatus {
    pub fn is_gm(&self) -> bool {
        matches!(self, GmStatus::Gm { .. })
    }
}

#[derive(Debug, Clone)]
pub enum Item {
    Profile(RadialProfile),
    Sequence(SequenceProfile),
}

/// A closed-form Hankel transform of order `alpha`, valid for `u` between
/// `lo` and `hi` (`lo` included only when `lo_inclusive`).
#[derive(Debug, Clone, Copy)]
pub struct ClosedForm {
    pub alpha: f64,
    pub lo: f64,
    pub lo_inclusive: bool,
    pub hi: f64,
    pub eval: fn(f64) -> f64,
}

impl ClosedForm {
    pub fn contains(&self, u: f64) -> bool {
        (u > self.lo || (self.lo_inclusive && u == self.lo)) && u <= self.hi
    }
}

#[derive(Debug, Clone)]
pub struct GalleryEntry {
    pub name: String,
    pub item: Item,
    pub gm_status: GmStatus,
    pub closed_form: Option<ClosedForm>,
    pub notes: &'static str,
}

impl GalleryEntry {
    pub fn profile(&self) -> Option<&RadialProfile> {
        match &self.item {
            Item::Profile(p) => Some(p),
            Item::Sequence(_) => None,
        }
    }

    pub fn sequence(&self) -> Option<&SequenceProfile> {
        match &self.item {
            Item::Sequence(s) => Some(s),
            Item::Profile(_) => None,
        }
    }
}

/// Catalog names, in display order.
pub fn list() -> Vec<&'static str> {
    vec![
        "cos_over_sqrt",
        "fresnel_check",
        "trunc_exp",
        "power_tail(3/2)",
        "power_tail(2)",
        "power_tail(3)",
        "power_law(2)",
        "power_law(3)",
        "alternating_dyadic",
        "inv_square",
        "alt_harmonic",
        "cosn_over_n",
        "square_wave",
    ]
}

/// Names of the profile entries.
pub fn profile_names() -> Vec<&'static str> {
    list().into_iter().filter(|n| get(n).map(|e| e.profile().is_some()).unwrap_or(false)).collect()
}

/// Names of the sequence entries.
pub fn sequence_names() -> Vec<&'static str> {
    list().into_iter().filter(|n| get(n).map(|e| e.sequence().is_some()).unwrap_or(false)).collect()
}

fn cos_over_sqrt_transform(u: f64) -> f64 {
    PI.sqrt() / (2.0 * 2f64.sqrt()) * (1.0 / (u + 1.0).sqrt() + 1.0 / (u - 1.0).abs().sqrt())
}

fn trunc_exp_transform(u: f64) -> f64 {
    let e = (-1f64).exp();
    (1.0 - e * u.cos() + e * u * u.sin()) / (1.0 + u * u)
}

fn fresnel_value(_u: f64) -> f64 {
    (PI / 2.0).sqrt()
}

fn piecewise(name: &str, pieces: Vec<(f64, Expr)>) -> RadialProfile {
    Piecewise::new(pieces).and_then(|p| p.into_profile(name)).expect("catalog profile is well formed")
}

fn cos_over_sqrt(name: &str) -> RadialProfile {
    piecewise(name, vec![(f64::INFINITY, Expr::PowCos { c: 1.0, p: -0.5, omega: 1.0 })])
}

fn power_tail(p: f64, name: &str) -> RadialProfile {
    piecewise(name, vec![(1.0, Expr::Const(1.0)), (f64::INFINITY, Expr::Pow { c: 1.0, p: -p })])
}

fn power_law(p: f64, name: &str) -> RadialProfile {
    piecewise(name, vec![(f64::INFINITY, Expr::Pow { c: 1.0, p: -p })])
}

fn parse_exponent(src: &str) -> Option<f64> {
    match src.split_once('/') {
        Some((a, b)) => Some(a.trim().parse::<f64>().ok()? / b.trim().parse::<f64>().ok()?),
        None => src.trim().parse().ok(),
    }
}

fn parametrized<'a>(name: &'a str, family: &str) -> Option<&'a str> {
    name.strip_prefix(family)?.strip_prefix('(')?.strip_suffix(')')
}

/// Looks up a catalog entry. `power_tail(p)` and `power_law(p)` accept any
/// exponent `p > 1`, written as a decimal or a fraction.
pub fn get(name: &str) -> Result<GalleryEntry> {
    let unknown = || Error::UnknownEntry(name.to_string());
    if let Some(arg) = parametrized(name, "power_tail") {
        let p = parse_exponent(arg).filter(|&p| p > 1.0).ok_or_else(unknown)?;
        return Ok(GalleryEntry {
            name: name.to_string(),
            item: Item::Profile(power_tail(p, name)),
            gm_status: GmStatus::Gm { nu: 1 },
            closed_form: None,
            notes: "1 on (0,1], t^-p beyond; nonincreasing, hence GM. Dyadic blocks n >= 2ν are all good for p = 2 and all bad for p = 3.",
        });
    }
    if let Some(arg) = parametrized(name, "power_law") {
        let p = parse_exponent(arg).filter(|&p| p > 1.0).ok_or_else(unknown)?;
        return Ok(GalleryEntry {
            name: name.to_string(),
            item: Item::Profile(power_law(p, name)),
            gm_status: GmStatus::Gm { nu: 1 },
            closed_form: None,
            notes: "t^-p on (0,∞); every block is good for p = 2 (B_n = 2^{4ν} A_n) and every block n >= 1 is bad for p = 3.",
        });
    }
    let entry = match name {
        "cos_over_sqrt" => GalleryEntry {
            name: name.into(),
            item: Item::Profile(cos_over_sqrt(name)),
            gm_status: GmStatus::NotGm {
                reason: "variation over [x, 2x] grows like x^{1/2} while the window integral decays like x^{-1/2}",
                witness: 1e3,
                c: 10.0,
                nu: 1,
            },
            closed_form: Some(ClosedForm { alpha: -0.5, lo: 1.0, lo_inclusive: false, hi: f64::INFINITY, eval: cos_over_sqrt_transform }),
            notes: "t^{-1/2} cos t: ∫f converges but f is not GM. The cosine transform blows up as u → 1+ and diverges at u = 1. \
                    The closed form with |u - 1| also matches the convergent integral on 0 < u < 1.",
        },
        "fresnel_check" => GalleryEntry {
            name: name.into(),
            item: Item::Profile(cos_over_sqrt(name)),
            gm_status: GmStatus::NotGm {
                reason: "same profile as cos_over_sqrt",
                witness: 1e3,
                c: 10.0,
                nu: 1,
            },
            closed_form: Some(ClosedForm { alpha: -0.5, lo: 0.0, lo_inclusive: true, hi: 0.0, eval: fresnel_value }),
            notes: "∫₀^∞ t^{-1/2} cos t dt = √(π/2) (Fresnel integral).",
        },
        "trunc_exp" => GalleryEntry {
            name: name.into(),
            item: Item::Profile(piecewise(
                name,
                vec![(1.0, Expr::Exp { c: 1.0, r: 1.0 }), (f64::INFINITY, Expr::Const(0.0))],
            )),
            gm_status: GmStatus::Gm { nu: 1 },
            closed_form: Some(ClosedForm { alpha: -0.5, lo: 0.0, lo_inclusive: true, hi: f64::INFINITY, eval: trunc_exp_transform }),
            notes: "e^{-t} on (0,1], 0 beyond: monotone pieces and one jump atom -1/e at t = 1. \
                    Cosine transform (1 - e^{-1} cos u + e^{-1} u sin u)/(1 + u²).",
        },
        "alternating_dyadic" => GalleryEntry {
            name: name.into(),
            item: Item::Profile(RadialProfile::new(
                name,
                Arc::new(AlternatingDyadic { ratio: 4.0 }),
                Decay::Power { exponent: 2.0, coefficient: 4.0, from: 1.0 },
                None,
            )),
            gm_status: GmStatus::Gm { nu: 1 },
            closed_form: None,
            notes: "1 on (0,1), (-1)^k 4^{-k} on [2^k, 2^{k+1}): sign-changing GM; each dyadic window holds one jump \
                    of size 5·4^{-k} against a window integral of order 4^{-k}.",
        },
        "inv_square" => GalleryEntry {
            name: name.into(),
            item: Item::Sequence(SequenceProfile::new(
                name,
                Arc::new(|n| {
                    let k = n.max(1) as f64;
                    1.0 / (k * k)
                }),
                SequenceDecay { exponent: 2.0, coefficient: 1.0 },
            )),
            gm_status: GmStatus::Gm { nu: 1 },
            closed_form: None,
            notes: "a_0 = 1, a_n = 1/n²: monotone, GMS, absolutely summable.",
        },
        "alt_harmonic" => GalleryEntry {
            name: name.into(),
            item: Item::Sequence(SequenceProfile::new(
                name,
                Arc::new(|n| {
                    if n == 0 {
                        0.0
                    } else if n % 2 == 0 {
                        1.0 / n as f64
                    } else {
                        -1.0 / n as f64
                    }
                }),
                SequenceDecay { exponent: 1.0, coefficient: 1.0 },
            )),
            gm_status: GmStatus::NotGm {
                reason: "block variation stays near 2 ln 2 while the block sum decays like 1/n",
                witness: 1e3,
                c: 10.0,
                nu: 1,
            },
            closed_form: None,
            notes: "a_n = (-1)^n/n: Σa_n converges but n|a_n| = 1 does not decay.",
        },
        "cosn_over_n" => GalleryEntry {
            name: name.into(),
            item: Item::Sequence(
                SequenceProfile::new(
                    name,
                    Arc::new(|n| if n == 0 { 0.0 } else { (n as f64).cos() / n as f64 }),
                    SequenceDecay { exponent: 1.0, coefficient: 1.0 },
                )
                .with_tag("cos n / n"),
            ),
            gm_status: GmStatus::NotGm {
                reason: "consecutive differences are of order 1/n, so block variation does not decay",
                witness: 1e3,
                c: 10.0,
                nu: 1,
            },
            closed_form: None,
            notes: "a_n = cos n / n: Σa_n converges (Dirichlet test) but at x = 1 the series is Σ cos²n / n, \
                    which grows like (1/2) ln N.",
        },
        "square_wave" => GalleryEntry {
            name: name.into(),
            item: Item::Sequence(
                SequenceProfile::new(
                    name,
                    Arc::new(|n| {
                        if n == 0 {
                            0.5
                        } else if n % 2 == 0 {
                            0.0
                        } else {
                            let k = n.div_ceil(2);
                            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
                            2.0 / PI * s / n as f64
                        }
                    }),
                    SequenceDecay { exponent: 1.0, coefficient: 2.0 / PI },
                )
                .with_tag("indicator of [π/2, 3π/2]"),
            ),
            gm_status: GmStatus::NotGm {
                reason: "zero and nonzero terms alternate, so block variation is of order 1 against 1/n",
                witness: 1e3,
                c: 10.0,
                nu: 1,
            },
            closed_form: None,
            notes: "Fourier coefficients of the indicator of [π/2, 3π/2]: a_0 = 1/2, a_{2k-1} = (2/π)(-1)^k/(2k-1). \
                    Partial sums stay bounded but converge non-uniformly near the jumps at π/2 and 3π/2. \
                    The unnormalized series Σ(-1)^k cos((2k-1)x)/(2k-1) equals (π/2)(g - 1/2), not g.",
        },
        _ => return Err(unknown()),
    };
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_name_resolves() {
        for name in list() {
            let e = get(name).unwrap();
            assert_eq!(e.name, name);
        }
        assert!(matches!(get("nope"), Err(Error::UnknownEntry(_))));
        assert!(get("power_tail(1)").is_err());
        assert!(get("power_tail(5/2)").is_ok());
    }

    #[test]
    fn square_wave_coefficients_reproduce_indicator() {
        let s = get("square_wave").unwrap();
        let s = s.sequence().unwrap();
        let v = crate::series::cosine_partial_sum(s, 200_001, PI);
        assert!((v - 1.0).abs() < 1e-5);
        let v = crate::series::cosine_partial_sum(s, 200_001, 0.0);
        assert!(v.abs() < 1e-5);
    }
}
