//! The master double-series for I(a,p,q,r): the (arctan x / x)^p expansion in
//! Milgram constants against the binomial expansion of (1+x^2)^{-r},
//! integrated term by term:
//!
//! ```text
//! I = (-1)^q q! p! / 2^p * sum_k (-1)^k C(k+r-1,k)
//!          * sum_n (-1)^n t_n(p-1) / ((n+p/2)(a+2k+2n+1)^{q+1})
//! ```
//!
//! The inner n-sum converges absolutely-alternating; the outer k-sum is only
//! Abel-summable for r >= 2 (its terms grow like k^{r-2}), which the Euler
//! transform sums correctly. For r = 0 the k-sum collapses to its k = 0 term.

use super::{euler_alt_sum, TailBound, TailMethod};
use crate::error::Error;
use crate::numerics::{BigFloat, PrecisionContext, Rational};
use crate::quadrature::IntegralSpec;
use crate::special::harmonic::milgram_floats;
use rug::ops::Pow;
use rug::{Complete, Integer};

/// Number of Milgram weights kept on hand for the inner sums.
const T_BLOCK: usize = 64;

/// Evaluate I(a,p,q,r) from the master series with a certified tail bound.
/// Requires p >= 1 (the expansion needs a Milgram depth of p-1 >= 0).
pub fn series_i(
    spec: &IntegralSpec,
    ctx: &PrecisionContext,
    target_eps: &BigFloat,
) -> Result<(BigFloat, TailBound), Error> {
    if spec.p < 1 {
        return Err(Error::InvalidArgument(
            "master series needs p >= 1; p = 0 has no Milgram expansion".into(),
        ));
    }
    let (a, p, q, r) = (spec.a, spec.p, spec.q, spec.r);
    let wp = ctx.working_bits() + 96;
    let jcap = (16 * ctx.precision_bits as usize).max(2048);

    // (-1)^q q! p! / 2^p
    let mut prefactor = Rational::from((
        Integer::factorial(q).complete() * Integer::factorial(p).complete(),
        Integer::from(1) << p,
    ));
    if q % 2 == 1 {
        prefactor = -prefactor;
    }
    let pref = BigFloat::with_val(wp, &prefactor);

    let mut weights = milgram_floats(p - 1, T_BLOCK, wp);
    let mut inner = |k: u32, eps: &BigFloat| -> Result<(BigFloat, TailBound), Error> {
        euler_alt_sum(wp, eps, jcap, |n| {
            while weights.len() <= n {
                weights = milgram_floats(p - 1, weights.len() + T_BLOCK, wp);
            }
            let den_lin = BigFloat::with_val(wp, 2 * n as u32 + p) / 2u32; // n + p/2
            let den_pow = BigFloat::with_val(wp, a + 2 * k + 2 * n as u32 + 1).pow(q + 1);
            Ok(BigFloat::with_val(wp, &weights[n] / den_lin) / den_pow)
        })
    };

    let scaled_eps = |e: &BigFloat| -> BigFloat {
        let mut t = BigFloat::with_val(wp, e);
        t /= BigFloat::with_val(wp, &pref).abs().max(&BigFloat::with_val(wp, 1u32));
        t
    };

    if r == 0 {
        let eps_in = scaled_eps(target_eps) / 8u32;
        let (s, tail) = inner(0, &eps_in)?;
        let value = BigFloat::with_val(wp, &pref * &s);
        let bound = BigFloat::with_val(wp, &tail.bound * &pref.clone().abs());
        return Ok((
            ctx.round_out(value),
            TailBound {
                terms_used: tail.terms_used,
                bound: ctx.round_out(bound),
                method: tail.method,
            },
        ));
    }

    // inner sums feed a difference table whose weights sum to <= 1 overall,
    // so a flat per-term budget suffices
    let eps_outer = scaled_eps(target_eps) / 8u32;
    let eps_inner = BigFloat::with_val(wp, &eps_outer) / 64u32;
    let mut inner_terms = 0usize;
    let result = euler_alt_sum(wp, &eps_outer, jcap, |k| {
        // C(k+r-1, k)
        let c = Integer::from(k as u32 + r - 1).binomial(r - 1);
        let (s, t) = inner(k as u32, &eps_inner)?;
        inner_terms = inner_terms.max(t.terms_used);
        Ok(BigFloat::with_val(wp, &s * &Rational::from(c)))
    });
    let (s, tail) = result?;
    let value = BigFloat::with_val(wp, &pref * &s);
    let abs_pref = pref.clone().abs();
    let mut bound = BigFloat::with_val(wp, &tail.bound * &abs_pref);
    // accumulated inner-sum budgets
    bound += BigFloat::with_val(wp, &eps_inner * &abs_pref) * (tail.terms_used as u32 * 2);
    Ok((
        ctx.round_out(value),
        TailBound {
            terms_used: tail.terms_used * inner_terms.max(1),
            bound: ctx.round_out(bound),
            method: TailMethod::PairedAlternating,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::lemma::LemmaFamily;
    use crate::quadrature::integrate_i;

    fn eps(bits: i32) -> BigFloat {
        BigFloat::with_val(64, 2u32).pow(-bits)
    }

    #[test]
    fn r0_matches_lemma_closed_form() {
        let ctx = PrecisionContext::default();
        let spec = IntegralSpec::new(2, 2, 0, 0).unwrap();
        let (v, tail) = series_i(&spec, &ctx, &eps(100)).unwrap();
        let closed = LemmaFamily::Eq2.expr(0).evaluate(&ctx).unwrap();
        let diff = BigFloat::with_val(256, &v - &closed).abs();
        assert!(diff < eps(95), "diff {:.3e}", diff.to_f64());
        assert!(tail.bound < eps(95));
    }

    #[test]
    fn r2_paper_example() {
        // I(4,2,0,2) = (48 - 6 pi^2 + pi^3)/384
        let ctx = PrecisionContext::default();
        let spec = IntegralSpec::new(4, 2, 0, 2).unwrap();
        let (v, _) = series_i(&spec, &ctx, &eps(100)).unwrap();
        let pi = crate::special::constant_bits(&crate::special::ConstantSymbol::Pi, 300).unwrap();
        let want = (BigFloat::with_val(
            300,
            pi.clone().pow(3) - BigFloat::with_val(300, pi.square() * 6u32),
        ) + 48u32)
            / 384u32;
        assert!(BigFloat::with_val(256, &v - &want).abs() < eps(95));
    }

    #[test]
    fn q1_matches_quadrature() {
        let ctx = PrecisionContext::default();
        let spec = IntegralSpec::new(5, 3, 1, 0).unwrap();
        let (v, _) = series_i(&spec, &ctx, &eps(100)).unwrap();
        let quad = integrate_i(&spec, &ctx, &eps(110)).unwrap().value;
        assert!(BigFloat::with_val(256, &v - &quad).abs() < eps(95));
    }

    #[test]
    fn p0_rejected() {
        let ctx = PrecisionContext::default();
        let spec = IntegralSpec::new(2, 0, 0, 1).unwrap();
        assert!(series_i(&spec, &ctx, &eps(64)).is_err());
    }
}
