//! The expansion-section identities: values and derivatives of
//! (arctan x / x)^p against their Milgram-weighted power series, plus the
//! exact coefficient identities linking t_n(1), t_n(2) to odd harmonic
//! numbers.
//!
//! Raw series are summed only where they converge (x^2 <= 1); the x = sqrt(3)
//! claims are verified through the generating function's value (Abel sense),
//! never by summing a divergent series.

use super::{direct_alt_sum, euler_alt_sum, TailBound};
use crate::error::Error;
use crate::numerics::{BigFloat, PrecisionContext, Rational};
use crate::special::harmonic::{milgram_floats, milgram_t, odd_harmonic, odd_harmonic_prefix};
use rug::ops::Pow;
use rug::{Complete, Integer};

/// The three evaluation points of the expansion section.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionPoint {
    One,
    Sqrt3,
    InvSqrt3,
}

impl ExpansionPoint {
    pub fn name(&self) -> &'static str {
        match self {
            ExpansionPoint::One => "x=1",
            ExpansionPoint::Sqrt3 => "x=sqrt3",
            ExpansionPoint::InvSqrt3 => "x=1/sqrt3",
        }
    }

    /// x^2, always rational.
    pub fn x_squared(&self) -> Rational {
        match self {
            ExpansionPoint::One => Rational::from(1),
            ExpansionPoint::Sqrt3 => Rational::from(3),
            ExpansionPoint::InvSqrt3 => Rational::from((1, 3)),
        }
    }

    pub fn to_float(&self, wp: u32) -> BigFloat {
        match self {
            ExpansionPoint::One => BigFloat::with_val(wp, 1u32),
            ExpansionPoint::Sqrt3 => BigFloat::with_val(wp, 3u32).sqrt(),
            ExpansionPoint::InvSqrt3 => BigFloat::with_val(wp, 3u32).recip().sqrt(),
        }
    }

    /// Whether the raw Milgram series converges at this point.
    pub fn series_converges(&self) -> bool {
        !matches!(self, ExpansionPoint::Sqrt3)
    }
}

/// (arctan x / x)^p from the elementary function.
pub fn arctan_ratio_value(p: u32, x: &BigFloat, ctx: &PrecisionContext) -> BigFloat {
    let wp = ctx.working_bits() + 16;
    let x = BigFloat::with_val(wp, x);
    let ratio = BigFloat::with_val(wp, x.clone().atan() / &x);
    ctx.round_out(ratio.pow(p))
}

/// d/dx (arctan x / x)^p from the elementary function.
pub fn arctan_ratio_derivative(p: u32, x: &BigFloat, ctx: &PrecisionContext) -> BigFloat {
    let wp = ctx.working_bits() + 16;
    let x = BigFloat::with_val(wp, x);
    let atan = x.clone().atan();
    let ratio = BigFloat::with_val(wp, &atan / &x);
    let x2 = x.clone().square();
    let inner = BigFloat::with_val(wp, &x * &(x2 + 1u32)).recip()
        - BigFloat::with_val(wp, &atan / &x.clone().square());
    ctx.round_out(ratio.pow(p - 1) * inner * p)
}

/// The Milgram-weighted series sum_{n} (-1)^n t_n(p-1) x^{2n} / (n + p/2)
/// summed where it converges: geometrically for x^2 = 1/3, Euler-transformed
/// at x = 1. Errs with `NonConvergence` at x = sqrt(3).
pub fn milgram_series_sum(
    p: u32,
    point: ExpansionPoint,
    ctx: &PrecisionContext,
    target_eps: &BigFloat,
) -> Result<(BigFloat, TailBound), Error> {
    assert!(p >= 1);
    if !point.series_converges() {
        return Err(Error::NonConvergence(
            "series diverges at x = sqrt(3); use the function value".into(),
        ));
    }
    let wp = ctx.working_bits() + 96;
    let eps = BigFloat::with_val(wp, target_eps) / 4u32;
    let mut t_tab = milgram_floats(p - 1, 64, wp);
    let mut t_at = move |i: usize| -> BigFloat {
        if t_tab.len() <= i {
            t_tab = milgram_floats(p - 1, i + 64, wp);
        }
        t_tab[i].clone()
    };
    let jcap = (16 * ctx.precision_bits as usize).max(2048);
    let (v, tail) = match point {
        ExpansionPoint::One => euler_alt_sum(wp, &eps, jcap, |n| {
            Ok(t_at(n) / (BigFloat::with_val(wp, 2 * n as u32 + p) / 2u32))
        })?,
        ExpansionPoint::InvSqrt3 => {
            // x^{2n} = 3^{-n}: geometric, plain alternating remainder
            direct_alt_sum(wp, &eps, 1 << 22, |n| {
                let den = BigFloat::with_val(wp, 2 * n as u32 + p) / 2u32
                    * BigFloat::with_val(wp, Integer::from(3).pow(n as u32));
                Ok(t_at(n) / den)
            })?
        }
        ExpansionPoint::Sqrt3 => unreachable!(),
    };
    Ok((
        ctx.round_out(v),
        TailBound {
            terms_used: tail.terms_used,
            bound: ctx.round_out(tail.bound),
            method: tail.method,
        },
    ))
}

/// Abel-sense value of the same series at any of the three points:
/// (2^p / p!) (arctan x / x)^p.
pub fn milgram_series_abel_value(p: u32, point: ExpansionPoint, ctx: &PrecisionContext) -> BigFloat {
    let wp = ctx.working_bits() + 16;
    let x = point.to_float(wp);
    let inner = PrecisionContext::with_guard(wp, 16);
    let v = arctan_ratio_value(p, &x, &inner);
    let scale = Rational::from((Integer::from(1) << p, Integer::factorial(p).complete()));
    ctx.round_out(BigFloat::with_val(wp, &v * &scale))
}

/// Abel-sense value of the term-differentiated series
/// sum (-1)^n n t_n(p-1) x^{2n} / (n + p/2) = x (d/dx)(arctan x/x)^p * 2^{p-1}/p!.
pub fn milgram_deriv_abel_value(p: u32, point: ExpansionPoint, ctx: &PrecisionContext) -> BigFloat {
    let wp = ctx.working_bits() + 16;
    let x = point.to_float(wp);
    let inner = PrecisionContext::with_guard(wp, 16);
    let d = arctan_ratio_derivative(p, &x, &inner);
    let scale = Rational::from((Integer::from(1) << (p - 1), Integer::factorial(p).complete()));
    ctx.round_out(BigFloat::with_val(wp, &d * &x) * &scale)
}

/// Exact coefficient identities of the expansion section:
/// t_n(1) = 2 h_{n+1} and t_{j-1}(2) = 2 sum_{i<=j} h_i/i, checked as exact
/// rational equalities for every index up to `n_max`.
pub fn hd_identity_check(n_max: u32) -> Vec<bool> {
    assert!(n_max >= 1);
    let mut results = Vec::with_capacity(2);
    let two = Rational::from(2);
    results.push((0..=n_max).all(|n| milgram_t(n, 1) == two.clone() * odd_harmonic(n + 1)));
    results.push((1..=n_max).all(|j| milgram_t(j - 1, 2) == two.clone() * odd_harmonic_prefix(j)));
    results
}

/// The h-side series of the first function identity,
/// sum_{n>=1} (-1)^{n+1} h_n x^{2n-2} / n, summed where convergent; equals
/// (arctan x / x)^2 in the Abel sense.
pub fn h_side_ratio_series(
    point: ExpansionPoint,
    ctx: &PrecisionContext,
    target_eps: &BigFloat,
) -> Result<(BigFloat, TailBound), Error> {
    if !point.series_converges() {
        return Err(Error::NonConvergence("divergent at x = sqrt(3)".into()));
    }
    let wp = ctx.working_bits() + 96;
    let eps = BigFloat::with_val(wp, target_eps) / 4u32;
    let jcap = (16 * ctx.precision_bits as usize).max(2048);
    let x2 = point.x_squared();
    let (v, tail) = match point {
        ExpansionPoint::One => euler_alt_sum(wp, &eps, jcap, |i| {
            Ok(BigFloat::with_val(wp, &odd_harmonic(i as u32 + 1)) / (i as u32 + 1))
        })?,
        ExpansionPoint::InvSqrt3 => direct_alt_sum(wp, &eps, 1 << 22, |i| {
            let w = Rational::from(x2.clone().pow(i as u32)) / (i as u32 + 1);
            Ok(BigFloat::with_val(wp, &(w * odd_harmonic(i as u32 + 1))))
        })?,
        ExpansionPoint::Sqrt3 => unreachable!(),
    };
    // x^{2n-2} = x2^{n-1}: the sum over i = n-1 already carries x2^i
    Ok((
        ctx.round_out(v),
        TailBound {
            terms_used: tail.terms_used,
            bound: ctx.round_out(tail.bound),
            method: tail.method,
        },
    ))
}

/// The h-side series of the second function identity,
/// sum_{j>=1} (-1)^{j+1} (sum_{i<=j} h_i/i) x^{2j-2} / (2j+1); equals
/// (arctan x/x)^3 / 3 in the Abel sense.
pub fn h_side_cubed_series(
    point: ExpansionPoint,
    ctx: &PrecisionContext,
    target_eps: &BigFloat,
) -> Result<(BigFloat, TailBound), Error> {
    if !point.series_converges() {
        return Err(Error::NonConvergence("divergent at x = sqrt(3)".into()));
    }
    let wp = ctx.working_bits() + 96;
    let eps = BigFloat::with_val(wp, target_eps) / 4u32;
    let jcap = (16 * ctx.precision_bits as usize).max(2048);
    let x2 = point.x_squared();
    let (v, tail) = match point {
        ExpansionPoint::One => euler_alt_sum(wp, &eps, jcap, |i| {
            Ok(BigFloat::with_val(wp, &odd_harmonic_prefix(i as u32 + 1)) / (2 * i as u32 + 3))
        })?,
        ExpansionPoint::InvSqrt3 => direct_alt_sum(wp, &eps, 1 << 22, |i| {
            let w = Rational::from(x2.clone().pow(i as u32)) / (2 * i as u32 + 3);
            Ok(BigFloat::with_val(wp, &(w * odd_harmonic_prefix(i as u32 + 1))))
        })?,
        ExpansionPoint::Sqrt3 => unreachable!(),
    };
    Ok((
        ctx.round_out(v),
        TailBound {
            terms_used: tail.terms_used,
            bound: ctx.round_out(tail.bound),
            method: tail.method,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{constant_bits, ConstantSymbol};

    fn eps(bits: i32) -> BigFloat {
        BigFloat::with_val(64, 2u32).pow(-bits)
    }

    #[test]
    fn value_sums_match_claims() {
        let ctx = PrecisionContext::default();
        let pi = constant_bits(&ConstantSymbol::Pi, 360).unwrap();
        // p=2 at x=1 -> pi^2/8
        let v = milgram_series_abel_value(2, ExpansionPoint::One, &ctx);
        let want = BigFloat::with_val(360, pi.clone().square() / 8u32);
        assert!(BigFloat::with_val(256, &v - &want).abs() < eps(240));
        // p=2 at sqrt3 -> 2 pi^2/27 (Abel sense)
        let v = milgram_series_abel_value(2, ExpansionPoint::Sqrt3, &ctx);
        let want = BigFloat::with_val(360, pi.clone().square() * 2u32 / 27u32);
        assert!(BigFloat::with_val(256, &v - &want).abs() < eps(240));
        // p=2 at 1/sqrt3 -> pi^2/6
        let v = milgram_series_abel_value(2, ExpansionPoint::InvSqrt3, &ctx);
        let want = BigFloat::with_val(360, pi.clone().square() / 6u32);
        assert!(BigFloat::with_val(256, &v - &want).abs() < eps(240));
    }

    #[test]
    fn raw_series_agree_with_function_values() {
        let ctx = PrecisionContext::default();
        for p in [2u32, 3, 4, 5, 6] {
            for point in [ExpansionPoint::One, ExpansionPoint::InvSqrt3] {
                let (sum, tail) = milgram_series_sum(p, point, &ctx, &eps(80)).unwrap();
                let abel = milgram_series_abel_value(p, point, &ctx);
                let diff = BigFloat::with_val(256, &sum - &abel).abs();
                assert!(
                    diff < eps(75),
                    "p={p} {}: diff {:.3e} (tail {:.3e})",
                    point.name(),
                    diff.to_f64(),
                    tail.bound.to_f64()
                );
            }
        }
    }

    #[test]
    fn derivative_claims() {
        let ctx = PrecisionContext::default();
        let pi = constant_bits(&ConstantSymbol::Pi, 360).unwrap();
        // p=2 at x=1: pi/4 - pi^2/8
        let v = milgram_deriv_abel_value(2, ExpansionPoint::One, &ctx);
        let want = BigFloat::with_val(360, &pi / 4u32)
            - BigFloat::with_val(360, pi.clone().square() / 8u32);
        assert!(BigFloat::with_val(256, &v - &want).abs() < eps(240));
    }

    #[test]
    fn exact_coefficient_identities_hold() {
        assert_eq!(hd_identity_check(200), vec![true, true]);
    }

    #[test]
    fn h_side_function_identities() {
        let ctx = PrecisionContext::default();
        // at x=1 the squared series equals (pi/4)^2
        let (v, _) = h_side_ratio_series(ExpansionPoint::One, &ctx, &eps(80)).unwrap();
        let x = ExpansionPoint::One.to_float(360);
        let want = arctan_ratio_value(2, &x, &ctx);
        assert!(BigFloat::with_val(256, &v - &want).abs() < eps(75));
        // cubed series at 1/sqrt3 equals (arctan/x)^3/3
        let (v, _) = h_side_cubed_series(ExpansionPoint::InvSqrt3, &ctx, &eps(80)).unwrap();
        let x = ExpansionPoint::InvSqrt3.to_float(360);
        let want = arctan_ratio_value(3, &x, &ctx) / 3u32;
        assert!(BigFloat::with_val(256, &v - &want).abs() < eps(75));
    }

    #[test]
    fn divergent_point_refused() {
        let ctx = PrecisionContext::default();
        assert!(matches!(
            milgram_series_sum(2, ExpansionPoint::Sqrt3, &ctx, &eps(64)),
            Err(Error::NonConvergence(_))
        ));
    }
}
