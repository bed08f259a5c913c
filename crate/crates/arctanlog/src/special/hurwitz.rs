//! Euler-Maclaurin evaluation of the Hurwitz zeta function at integer s >= 2
//! and of the digamma function, both at rational arguments. This single
//! kernel backs every polygamma value used by the closed forms.

use super::bernoulli::bernoulli;
use crate::error::Error;
use crate::numerics::{BigFloat, Rational};
use rug::ops::Pow;
use rug::{Complete, Integer};

fn is_nonpositive_integer(a: &Rational) -> bool {
    a.is_integer() && a.cmp0() != std::cmp::Ordering::Greater
}

/// zeta(s, a) = sum_{n>=0} 1/(n+a)^s for integer s >= 2 and rational a not a
/// nonpositive integer, accurate to ~2^{-bits} relative.
pub fn hurwitz_zeta(s: u32, a: &Rational, bits: u32) -> Result<BigFloat, Error> {
    assert!(s >= 2, "hurwitz_zeta requires s >= 2");
    if is_nonpositive_integer(a) {
        return Err(Error::Pole(format!("zeta({s}, {a})")));
    }
    let wp = bits + 48;
    let eps = BigFloat::with_val(32, 2u32).pow(-((bits + 16) as i32));

    // direct terms for any nonpositive part of the argument range
    let mut shift_terms = BigFloat::with_val(wp, 0u32);
    let mut a = a.clone();
    while a.cmp0() != std::cmp::Ordering::Greater || a < 1u32 {
        let term = BigFloat::with_val(wp, &a).pow(-(s as i32));
        shift_terms += term;
        a += 1u32;
    }

    let mut n_terms: u32 = (bits / 3).max(16);
    loop {
        let j_terms = n_terms;
        // S1 = sum_{i=0}^{N-1} (a+i)^{-s}
        let mut s1 = BigFloat::with_val(wp, 0u32);
        let mut arg = a.clone();
        for _ in 0..n_terms {
            s1 += BigFloat::with_val(wp, &arg).pow(-(s as i32));
            arg += 1u32;
        }
        let w = BigFloat::with_val(wp, &arg); // a + N
        let t1 = w.clone().pow(1 - s as i32) / (s - 1);
        let t2 = w.clone().pow(-(s as i32)) / 2u32;

        // Euler-Maclaurin correction terms
        let w2_inv = w.clone().pow(-2i32);
        let mut w_pow = w.clone().pow(1 - s as i32); // w^{1-s-2j+2}, starts at j=1 after one mul
        let mut poch = Integer::from(1); // s (s+1) ... (s+2j-2)
        let mut em = BigFloat::with_val(wp, 0u32);
        let mut tail_ok = false;
        for j in 1..=j_terms {
            w_pow *= &w2_inv; // w^{1-s-2j}... w^{-s-2j+1}
            if j == 1 {
                poch *= s;
            } else {
                poch *= (s + 2 * j - 3) * (s + 2 * j - 2);
            }
            let mut coeff = bernoulli(2 * j as usize) / Rational::from(Integer::factorial(2 * j).complete());
            coeff *= Rational::from(&poch);
            // term = B_{2j}/(2j)! * poch * w^{-s-2j+1}
            let term = BigFloat::with_val(wp, &coeff) * &w_pow;
            em += &term;
            // remainder is bounded by a small multiple of the next term
            let next_scale =
                BigFloat::with_val(64, term.clone().abs()) * ((s + 2 * j) * (s + 2 * j + 1));
            let bound = next_scale * BigFloat::with_val(64, w2_inv.clone()).abs() * 8u32;
            if bound < eps {
                tail_ok = true;
                break;
            }
        }
        if tail_ok {
            let mut out = BigFloat::with_val(wp, &s1 + &t1);
            out += &t2;
            out += &em;
            out += &shift_terms;
            out.set_prec(bits);
            return Ok(out);
        }
        n_terms *= 2;
        if n_terms > 64 * (bits + 64) {
            return Err(Error::NonConvergence(format!("hurwitz_zeta({s}, ...)")));
        }
    }
}

/// psi(z) for rational z that is not a nonpositive integer.
pub fn digamma(z: &Rational, bits: u32) -> Result<BigFloat, Error> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("psi({z})")));
    }
    let wp = bits + 48;
    let eps = BigFloat::with_val(32, 2u32).pow(-((bits + 16) as i32));

    let mut n_terms: u32 = (bits / 3).max(16);
    loop {
        // psi(z) = ln w - 1/(2w) - sum B_{2j}/(2j w^{2j}) - sum_{i<N} 1/(z+i)
        let mut recur = BigFloat::with_val(wp, 0u32);
        let mut arg = z.clone();
        for _ in 0..n_terms {
            recur += BigFloat::with_val(wp, &arg).recip();
            arg += 1u32;
        }
        let w = BigFloat::with_val(wp, &arg);
        let mut out = w.clone().ln();
        out -= BigFloat::with_val(wp, &w * 2u32).recip();
        let w2_inv = w.clone().pow(-2i32);
        let mut w_pow = BigFloat::with_val(wp, 1u32);
        let mut tail_ok = false;
        for j in 1..=n_terms {
            w_pow *= &w2_inv;
            let coeff = bernoulli(2 * j as usize) / Rational::from(2 * j);
            let term = BigFloat::with_val(wp, &coeff) * &w_pow;
            out -= &term;
            let bound = BigFloat::with_val(64, term.abs()) * BigFloat::with_val(64, &w2_inv)
                * ((2 * j + 1) * (2 * j + 2))
                * 4u32;
            if bound < eps {
                tail_ok = true;
                break;
            }
        }
        if tail_ok {
            out -= &recur;
            out.set_prec(bits);
            return Ok(out);
        }
        n_terms *= 2;
        if n_terms > 64 * (bits + 64) {
            return Err(Error::NonConvergence("digamma".into()));
        }
    }
}

/// psi^{(m)}(z) via the Hurwitz relation psi^{(m)}(z) = (-1)^{m+1} m! zeta(m+1, z).
pub fn polygamma(m: u32, z: &Rational, bits: u32) -> Result<BigFloat, Error> {
    if m == 0 {
        return digamma(z, bits);
    }
    let zeta = hurwitz_zeta(m + 1, z, bits + 8)?;
    let fact = Rational::from(Integer::factorial(m).complete());
    let sign = if m % 2 == 0 { -1i32 } else { 1i32 };
    let mut out = BigFloat::with_val(bits + 8, &zeta * &fact) * sign;
    out.set_prec(bits);
    Ok(out)
}
