//! Series-side evaluators: the master expansion of the integral family, the
//! Euler-like sum families in odd harmonic numbers and Milgram constants, and
//! the power-series / derivative identities of the expansion section.
//!
//! Alternating sums are evaluated with the classical Euler transform
//! sum (-1)^k a_k = sum_j (-1)^j (D^j a)(0) / 2^{j+1}, whose transformed terms
//! decay geometrically for the smooth sequences arising here; this also sums
//! the Abel-convergent binomial-weighted tails that appear for r >= 2. Fast
//! geometric series are summed directly with the plain alternating remainder.

pub mod expansions;
pub mod families;
pub mod master;

pub use expansions::{
    arctan_ratio_derivative, arctan_ratio_value, hd_identity_check, milgram_deriv_abel_value,
    milgram_series_abel_value, milgram_series_sum, ExpansionPoint,
};
pub use families::{euler_sum, milgram_sum, milgram_sum_with, FamilyId, Side, SumFamily, TSideReading};
pub use master::series_i;

use crate::error::Error;
use crate::numerics::BigFloat;

/// How a truncation bound was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailMethod {
    /// plain alternating series: remainder bounded by the first omitted term
    AlternatingRemainder,
    /// Euler-transformed series with empirically geometric term decay
    GeometricMajorant,
    /// double sum: inner sums bounded, outer treated as alternating
    PairedAlternating,
}

/// Rigorous-under-hypotheses truncation error report for a summed series.
#[derive(Clone, Debug)]
pub struct TailBound {
    pub terms_used: usize,
    pub bound: BigFloat,
    pub method: TailMethod,
}

/// Decay ratio the Euler-transform certifier insists on over its window; the
/// asymptotic ratio for smooth sequences is 1/2.
const EULER_RATIO_NUM: u32 = 3;
const EULER_RATIO_DEN: u32 = 4;
const CERT_WINDOW: usize = 8;

/// sum_{i>=0} (-1)^i g(i) by the Euler transform, certified when the
/// transformed terms have decayed below `target_eps` while shrinking
/// monotonically at ratio <= 3/4 across a window. The tail is then bounded by
/// the geometric majorant term * (3/4)/(1 - 3/4) = 3 * term.
pub(crate) fn euler_alt_sum<G>(
    wp: u32,
    target_eps: &BigFloat,
    jcap: usize,
    mut g: G,
) -> Result<(BigFloat, TailBound), Error>
where
    G: FnMut(usize) -> Result<BigFloat, Error>,
{
    let mut raw: Vec<BigFloat> = Vec::new();
    let mut len = 64usize.min(jcap.max(8));
    loop {
        while raw.len() < len {
            raw.push(g(raw.len())?);
        }
        let mut table = raw.clone();
        let mut total = BigFloat::with_val(wp, 0u32);
        let mut scale = BigFloat::with_val(wp, 1u32) >> 1; // 1/2^{j+1}
        let mut sign = 1i32;
        let mut window: Vec<BigFloat> = Vec::new();
        for j in 0..table.len() {
            let term = BigFloat::with_val(wp, &table[0] * &scale);
            if sign > 0 {
                total += &term;
            } else {
                total -= &term;
            }
            let mag = term.abs();
            window.push(mag.clone());
            if window.len() > CERT_WINDOW {
                window.remove(0);
            }
            if window.len() == CERT_WINDOW && &mag < target_eps {
                let monotone = window.windows(2).all(|w| {
                    BigFloat::with_val(wp, &w[1] * EULER_RATIO_DEN)
                        <= BigFloat::with_val(wp, &w[0] * EULER_RATIO_NUM)
                });
                if monotone {
                    let bound = BigFloat::with_val(wp, &mag * 3u32);
                    return Ok((
                        total,
                        TailBound {
                            terms_used: j + 1,
                            bound,
                            method: TailMethod::GeometricMajorant,
                        },
                    ));
                }
            }
            sign = -sign;
            scale >>= 1;
            // forward difference in place
            for i in 0..table.len() - j - 1 {
                table[i] = BigFloat::with_val(wp, &table[i + 1] - &table[i]);
            }
        }
        if len >= jcap {
            return Err(Error::NonConvergence(format!(
                "Euler transform not certified within {jcap} terms"
            )));
        }
        len = (len * 2).min(jcap);
    }
}

/// Directly summed alternating series sum_{i>=0} (-1)^i g(i) for fast-decaying
/// terms; remainder bounded by the first omitted term once the terms have been
/// observed decreasing across a window.
pub(crate) fn direct_alt_sum<G>(
    wp: u32,
    target_eps: &BigFloat,
    cap: usize,
    mut g: G,
) -> Result<(BigFloat, TailBound), Error>
where
    G: FnMut(usize) -> Result<BigFloat, Error>,
{
    let mut total = BigFloat::with_val(wp, 0u32);
    let mut window: Vec<BigFloat> = Vec::new();
    for i in 0..cap {
        let term = g(i)?;
        if i % 2 == 0 {
            total += &term;
        } else {
            total -= &term;
        }
        let mag = term.abs();
        window.push(mag.clone());
        if window.len() > CERT_WINDOW {
            window.remove(0);
        }
        if window.len() == CERT_WINDOW
            && &mag < target_eps
            && window.windows(2).all(|w| w[1] <= w[0])
        {
            return Ok((
                total,
                TailBound {
                    terms_used: i + 1,
                    bound: mag,
                    method: TailMethod::AlternatingRemainder,
                },
            ));
        }
    }
    Err(Error::NonConvergence(format!(
        "alternating series did not reach target within {cap} terms"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    fn eps(bits: i32) -> BigFloat {
        BigFloat::with_val(64, 2u32).pow(-bits)
    }

    #[test]
    fn euler_transform_ln2() {
        // sum (-1)^i/(i+1) = ln 2
        let wp = 350;
        let (v, tail) = euler_alt_sum(wp, &eps(140), 4096, |i| {
            Ok(BigFloat::with_val(wp, i as u32 + 1).recip())
        })
        .unwrap();
        let ln2 = BigFloat::with_val(wp, rug::float::Constant::Log2);
        assert!(BigFloat::with_val(wp, &v - &ln2).abs() < eps(135));
        assert!(tail.bound < eps(138));
        assert!(tail.terms_used < 400);
    }

    #[test]
    fn euler_transform_abel_divergent() {
        // sum (-1)^k (k+1) = 1/4 in the Abel sense
        let wp = 256;
        let (v, _) = euler_alt_sum(wp, &eps(120), 4096, |i| {
            Ok(BigFloat::with_val(wp, i as u32 + 1))
        })
        .unwrap();
        let want = BigFloat::with_val(wp, 1u32) / 4u32;
        assert!(BigFloat::with_val(wp, &v - &want).abs() < eps(120));
    }

    #[test]
    fn euler_tail_bound_is_sound() {
        // doubling the requested accuracy moves the value by less than the
        // reported bound
        let wp = 350;
        let g = |i: usize| Ok(BigFloat::with_val(350u32, 2 * i as u32 + 1).recip());
        let (v1, t1) = euler_alt_sum(wp, &eps(90), 4096, g).unwrap();
        let (v2, _) = euler_alt_sum(wp, &eps(180), 4096, g).unwrap();
        assert!(BigFloat::with_val(wp, &v1 - &v2).abs() <= t1.bound);
    }

    #[test]
    fn direct_sum_geometric() {
        // sum (-1)^i 3^{-i} = 3/4
        let wp = 256;
        let (v, tail) = direct_alt_sum(wp, &eps(130), 1 << 20, |i| {
            Ok(BigFloat::with_val(wp, 3u32).pow(-(i as i32)))
        })
        .unwrap();
        let want = BigFloat::with_val(wp, 3u32) / 4u32;
        assert!(BigFloat::with_val(wp, &v - &want).abs() < eps(128));
        assert_eq!(tail.method, TailMethod::AlternatingRemainder);
    }
}
