//! The arctan-power engine: exact pi-polynomial evaluation of
//! int_0^1 x^(a-p) arctan^p(x) / (1+x^2)^r dx on its closed-form region.
//!
//! After partial fractions the problem reduces to E(p,i) = int arctan^p/(1+x^2)^i
//! and X(p,i) = int x arctan^p/(1+x^2)^i. In the theta = arctan x variable,
//! E(p,r) = int_0^{pi/4} theta^p cos^{2r-2} d theta; the p >= 2 reduction loses a
//! boundary term when specialized to p = 1, so the p in {0,1} columns use their
//! own Wallis-type recurrences with exact pi/4 boundary values.

use super::logpow::partial_fractions;
use crate::constexpr::build::*;
use crate::constexpr::ConstExpr;
use crate::error::Error;
use crate::numerics::{rat, Rational};
use once_cell::sync::Lazy;
use rug::{Complete, Integer};
use std::collections::HashMap;
use std::sync::Mutex;

/// C_m = int_0^{pi/4} cos^m(theta) d theta (even m only here); also the value
/// at pi/4 of the antiderivative G_m normalized by G_m(0) = 0.
/// C_m = 2^{-m/2}/m + (m-1)/m C_{m-2}, C_0 = pi/4.
fn wallis_c(m: u32) -> ConstExpr {
    assert!(m % 2 == 0);
    if m == 0 {
        return pi().scale(&rat(1, 4));
    }
    let boundary = Rational::from((Integer::from(1), Integer::from(m) << (m / 2)));
    rational(boundary).add(&wallis_c(m - 2).scale(&rat(m as i64 - 1, m as i64)))
}

/// K_m = int_0^{pi/4} G_m(theta) d theta with
/// K_m = (1 - 2^{-m/2})/m^2 + (m-1)/m K_{m-2}, K_0 = pi^2/32.
fn wallis_k(m: u32) -> ConstExpr {
    assert!(m % 2 == 0);
    if m == 0 {
        return pi_pow(2).scale(&rat(1, 32));
    }
    let boundary = Rational::from((
        Integer::from(Integer::from(1) << (m / 2)) - 1u32,
        Integer::from(Integer::from(m) * m) << (m / 2),
    ));
    rational(boundary).add(&wallis_k(m - 2).scale(&rat(m as i64 - 1, m as i64)))
}

/// J_m = int_0^{pi/4} theta cos^m(theta) d theta = (pi/4) C_m - K_m.
fn wallis_j(m: u32) -> ConstExpr {
    pi().scale(&rat(1, 4)).mul(&wallis_c(m)).sub(&wallis_k(m))
}

static E_CACHE: Lazy<Mutex<HashMap<(u32, u32), ConstExpr>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// E(p, r) = int_0^1 arctan^p(x) / (1+x^2)^r dx, exact in Q[pi], r >= 1.
pub fn arctan_over_power(p: u32, r: u32) -> ConstExpr {
    assert!(r >= 1);
    if let Some(e) = E_CACHE.lock().unwrap().get(&(p, r)) {
        return e.clone();
    }
    let out = if r == 1 {
        // int_0^{pi/4} theta^p d theta = pi^{p+1} / (4^{p+1} (p+1))
        let den = Integer::from(Integer::from(1) << (2 * (p + 1))) * Integer::from(p + 1);
        pi_pow(p + 1).scale(&Rational::from((Integer::from(1), den)))
    } else if p == 0 {
        wallis_c(2 * r - 2)
    } else if p == 1 {
        wallis_j(2 * r - 2)
    } else {
        // the p >= 2 reduction in theta:
        // E(p,r) = (2r-3)/(2r-2) E(p,r-1) - p(p-1)/(2r-2)^2 E(p-2,r)
        //        + [ (pi/4)^p + p pi^{p-1}/(4^{p-1} (2r-2)) ] / (2^r (r-1))
        let m = 2 * (r as i64 - 1);
        let first = arctan_over_power(p, r - 1).scale(&rat(m - 1, m));
        let second = arctan_over_power(p - 2, r).scale(&rat(p as i64 * (p as i64 - 1), m * m));
        let c = Rational::from((Integer::from(1), Integer::from(Integer::from(1) << r) * (r - 1)));
        let boundary = pi_pow(p)
            .scale(&Rational::from((Integer::from(1), Integer::from(1) << (2 * p))))
            .add(&pi_pow(p - 1).scale(&Rational::from((
                Integer::from(p),
                Integer::from(Integer::from(1) << (2 * (p - 1))) * Integer::from(m),
            ))))
            .scale(&c);
        first.sub(&second).add(&boundary)
    };
    E_CACHE.lock().unwrap().insert((p, r), out.clone());
    out
}

/// X(p, r) = int_0^1 x arctan^p(x) / (1+x^2)^r dx. For r = 1 only p <= 1 has
/// a closed form in this basis (p >= 2 brings in G, zeta(3), W(3), ...).
pub fn x_arctan_over_power(p: u32, r: u32) -> Result<ConstExpr, Error> {
    assert!(r >= 1);
    if r == 1 {
        return match p {
            0 => Ok(ln2().scale(&rat(1, 2))),
            1 => Ok(super::xarc_block().scale(&rat(1, 8))),
            _ => Err(Error::OutOfRegion(format!(
                "int x arctan^{p}/(1+x^2) is not a pi-polynomial"
            ))),
        };
    }
    // X(p,r) = p/(2(r-1)) E(p-1, r) - pi^p / (2^r (r-1) 4^p)
    let mut out = ConstExpr::zero();
    if p >= 1 {
        out = arctan_over_power(p - 1, r).scale(&rat(p as i64, 2 * (r as i64 - 1)));
    } else {
        // p = 0 reduces to the q = 0 moment 2^{-1-r}(2^r - 2)/(r-1)
        return super::logpow::a_column(0, r);
    }
    let den = Integer::from(Integer::from(1) << (r + 2 * p)) * Integer::from(r - 1);
    Ok(out.sub(&pi_pow(p).scale(&Rational::from((Integer::from(1), den)))))
}

/// Closed form of int_0^1 x^(a-p) arctan^p(x)/(1+x^2)^r dx.
///
/// Region: a >= p, a - p < 2r, and additionally a - p != 2r - 1 when p >= 2
/// (on that boundary the decomposition hits x arctan^p/(1+x^2), which leaves
/// the pi-polynomial basis). For p <= 1 the boundary case is supported and
/// the result then carries ln2 / G monomials.
pub fn arctan_power_integral(a: u32, p: u32, r: u32) -> Result<ConstExpr, Error> {
    if r < 1 {
        return Err(Error::OutOfRegion("engine needs r >= 1".into()));
    }
    if a < p {
        return Err(Error::InvalidArgument(format!(
            "requires a >= p, got a={a}, p={p}"
        )));
    }
    let xm = a - p;
    if xm >= 2 * r {
        return Err(Error::OutOfRegion(format!(
            "needs a - p < 2r, got a-p={xm}, r={r}"
        )));
    }
    if xm == 2 * r - 1 && p >= 2 {
        return Err(Error::OutOfRegion(format!(
            "boundary a - p = 2r - 1 with p = {p} >= 2 is not a pi-polynomial"
        )));
    }
    let pf = partial_fractions(xm, r);
    debug_assert!(pf.poly.is_empty(), "proper fraction expected");
    let mut out = ConstExpr::zero();
    for (i, c) in &pf.even {
        out = out.add(&arctan_over_power(p, *i).scale(c));
    }
    for (i, c) in &pf.odd {
        out = out.add(&x_arctan_over_power(p, *i)?.scale(c));
    }
    Ok(out)
}
