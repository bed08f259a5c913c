//! Partial fractions over powers of 1+x^2 and the log-power recurrence
//! engine for int_0^1 x^a ln^q(x) / (1+x^2)^r dx.
//!
//! The decomposition reduces any (a, q, r) to polynomial moments plus the two
//! one-parameter columns A(q, i) = int x ln^q/(1+x^2)^i and
//! B(q, i) = int ln^q/(1+x^2)^i, which satisfy two-term recurrences obtained
//! by integrating x^{2+e} ln^q/(1+x^2)^r by parts and eliminating the
//! cross term with x^2/(1+x^2)^r = (1+x^2)^{1-r} - (1+x^2)^{-r}.

use super::{base_integral, BaseIntegralId};
use crate::constexpr::ConstExpr;
use crate::error::Error;
use crate::numerics::{rat, Rational};
use once_cell::sync::Lazy;
use rug::{Complete, Integer};
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

/// x^a / (1+x^2)^r split into a polynomial part plus proper fractions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractionDecomposition {
    /// (exponent m, coefficient) pairs of the polynomial part
    pub poly: Vec<(u32, Rational)>,
    /// i -> coefficient of 1/(1+x^2)^i
    pub even: BTreeMap<u32, Rational>,
    /// i -> coefficient of x/(1+x^2)^i
    pub odd: BTreeMap<u32, Rational>,
}

/// Exact decomposition via the binomial expansion of x^2 = (1+x^2) - 1.
pub fn partial_fractions(a: u32, r: u32) -> PartialFractionDecomposition {
    assert!(r >= 1, "partial fractions need r >= 1");
    let big_a = a / 2;
    let odd_power = a % 2 == 1;
    let mut poly: BTreeMap<u32, Rational> = BTreeMap::new();
    let mut frac: BTreeMap<u32, Rational> = BTreeMap::new();
    for i in 0..=big_a {
        let mut c = Rational::from(Integer::from(big_a).binomial(i));
        if (big_a - i) % 2 == 1 {
            c = -c;
        }
        if i >= r {
            // polynomial (1+x^2)^{i-r}
            let d = i - r;
            for j in 0..=d {
                let term = Rational::from(Integer::from(d).binomial(j)) * &c;
                let m = 2 * j + u32::from(odd_power);
                let entry = poly.entry(m).or_insert_with(Rational::new);
                *entry += term;
            }
        } else {
            let entry = frac.entry(r - i).or_insert_with(Rational::new);
            *entry += c;
        }
    }
    poly.retain(|_, c| c.cmp0() != std::cmp::Ordering::Equal);
    frac.retain(|_, c| c.cmp0() != std::cmp::Ordering::Equal);
    let (even, odd) = if odd_power {
        (BTreeMap::new(), frac)
    } else {
        (frac, BTreeMap::new())
    };
    PartialFractionDecomposition {
        poly: poly.into_iter().collect(),
        even,
        odd,
    }
}

static AB_CACHE: Lazy<Mutex<HashMap<(bool, u32, u32), ConstExpr>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// A(q, r) = int_0^1 x ln^q(x) / (1+x^2)^r dx, exact.
pub fn a_column(q: u32, r: u32) -> Result<ConstExpr, Error> {
    assert!(r >= 1);
    if let Some(e) = AB_CACHE.lock().unwrap().get(&(false, q, r)) {
        return Ok(e.clone());
    }
    let out = if r == 1 {
        base_integral(BaseIntegralId::Aq1(q))?
    } else if q == 0 {
        // 2^{-1-r} (2^r - 2) / (r - 1)
        let num = Integer::from(Integer::from(1) << r) - 2u32;
        ConstExpr::from_rational(Rational::from((
            num,
            Integer::from(Integer::from(1) << (r + 1)) * Integer::from(r - 1),
        )))
    } else {
        // A(q,r) = (r-2)/(r-1) A(q,r-1) - q/(2(r-1)) A(q-1,r-1)
        let first = a_column(q, r - 1)?.scale(&rat(r as i64 - 2, r as i64 - 1));
        let second = a_column(q - 1, r - 1)?.scale(&rat(q as i64, 2 * (r as i64 - 1)));
        first.sub(&second)
    };
    AB_CACHE
        .lock()
        .unwrap()
        .insert((false, q, r), out.clone());
    Ok(out)
}

/// B(q, r) = int_0^1 ln^q(x) / (1+x^2)^r dx, exact.
pub fn b_column(q: u32, r: u32) -> Result<ConstExpr, Error> {
    assert!(r >= 1);
    if let Some(e) = AB_CACHE.lock().unwrap().get(&(true, q, r)) {
        return Ok(e.clone());
    }
    let out = if r == 1 {
        base_integral(BaseIntegralId::Bq1(q))?
    } else if q == 0 {
        // 1/(2^r (r-1)) + (2r-3)/(2(r-1)) B(0, r-1)
        let seed = ConstExpr::from_rational(Rational::from((
            Integer::from(1),
            Integer::from(Integer::from(1) << r) * Integer::from(r - 1),
        )));
        seed.add(&b_column(0, r - 1)?.scale(&rat(2 * r as i64 - 3, 2 * (r as i64 - 1))))
    } else {
        // B(q,r) = (2r-3)/(2(r-1)) B(q,r-1) - q/(2(r-1)) B(q-1,r-1)
        let first = b_column(q, r - 1)?.scale(&rat(2 * r as i64 - 3, 2 * (r as i64 - 1)));
        let second = b_column(q - 1, r - 1)?.scale(&rat(q as i64, 2 * (r as i64 - 1)));
        first.sub(&second)
    };
    AB_CACHE.lock().unwrap().insert((true, q, r), out.clone());
    Ok(out)
}

/// int_0^1 x^a ln^q(x) / (1+x^2)^r dx, exact, for r >= 1.
pub fn logpow_integral(a: u32, q: u32, r: u32) -> Result<ConstExpr, Error> {
    if r < 1 {
        return Err(Error::InvalidArgument(
            "log-power engine needs r >= 1; use the moment formula for r = 0".into(),
        ));
    }
    let pf = partial_fractions(a, r);
    let mut out = ConstExpr::zero();
    for (m, c) in &pf.poly {
        out = out.add(&base_integral(BaseIntegralId::XmLnq(*m, q))?.scale(c));
    }
    for (i, c) in &pf.odd {
        out = out.add(&a_column(q, *i)?.scale(c));
    }
    for (i, c) in &pf.even {
        out = out.add(&b_column(q, *i)?.scale(c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constexpr::build::*;
    use crate::numerics::{BigFloat, PrecisionContext};
    use crate::quadrature::{integrate_i, IntegralSpec};
    use crate::special::ConstantSymbol;
    use rug::ops::Pow;

    /// Recombine a decomposition over the common denominator (1+x^2)^r and
    /// compare against x^a as exact polynomials.
    fn recombines_to_xa(a: u32, r: u32) -> bool {
        let pf = partial_fractions(a, r);
        // numerator polynomial accumulated in coefficient form
        let mut num: Vec<Rational> = vec![Rational::new(); (a + 2 * r + 2) as usize];
        let mut add_poly = |base: &[Rational], shift: usize, scale: &Rational| {
            for (idx, c) in base.iter().enumerate() {
                let t = Rational::from(c * scale);
                num[idx + shift] += t;
            }
        };
        // (1+x^2)^k as coefficient vector
        let one_plus = |k: u32| -> Vec<Rational> {
            let mut v = vec![Rational::new(); (2 * k + 1) as usize];
            for j in 0..=k {
                v[(2 * j) as usize] = Rational::from(Integer::from(k).binomial(j));
            }
            v
        };
        let full = one_plus(r);
        for (m, c) in &pf.poly {
            add_poly(&full, *m as usize, c);
        }
        for (i, c) in &pf.even {
            add_poly(&one_plus(r - i), 0, c);
        }
        for (i, c) in &pf.odd {
            add_poly(&one_plus(r - i), 1, c);
        }
        num.iter().enumerate().all(|(idx, c)| {
            if idx == a as usize {
                *c == 1u32
            } else {
                c.cmp0() == std::cmp::Ordering::Equal
            }
        })
    }

    #[test]
    fn decomposition_examples() {
        // x^2/(1+x^2) = 1 - 1/(1+x^2)
        let pf = partial_fractions(2, 1);
        assert_eq!(pf.poly, vec![(0, Rational::from(1))]);
        assert_eq!(pf.even.get(&1), Some(&Rational::from(-1)));
        assert!(pf.odd.is_empty());

        // x^5/(1+x^2)^2 = x - 2x/(1+x^2) + x/(1+x^2)^2
        let pf = partial_fractions(5, 2);
        assert_eq!(pf.poly, vec![(1, Rational::from(1))]);
        assert_eq!(pf.odd.get(&1), Some(&Rational::from(-2)));
        assert_eq!(pf.odd.get(&2), Some(&Rational::from(1)));

        // x^0/(1+x^2)^3 stays put
        let pf = partial_fractions(0, 3);
        assert!(pf.poly.is_empty() && pf.odd.is_empty());
        assert_eq!(pf.even.get(&3), Some(&Rational::from(1)));
    }

    #[test]
    fn recombination_is_polynomial_identity() {
        for a in 0..=10u32 {
            for r in 1..=5u32 {
                assert!(recombines_to_xa(a, r), "a={a} r={r}");
            }
        }
    }

    #[test]
    fn paper_base_values() {
        // (a=1,q=1,r=1) -> -zeta(2)/8 (= -pi^2/48)
        assert_eq!(
            logpow_integral(1, 1, 1).unwrap(),
            zeta(2).scale(&rat(-1, 8))
        );
        // (a=0,q=2,r=1) -> pi^3/16
        assert_eq!(
            logpow_integral(0, 2, 1).unwrap(),
            pi_pow(3).scale(&rat(1, 16))
        );
    }

    fn eps(bits: i32) -> BigFloat {
        BigFloat::with_val(64, 2u32).pow(-bits)
    }

    #[test]
    fn engine_matches_quadrature_spot_checks() {
        let ctx = PrecisionContext::default();
        for (a, q, r) in [(3u32, 2u32, 2u32), (4, 3, 3), (8, 4, 4), (6, 0, 2), (0, 4, 4)] {
            let closed = logpow_integral(a, q, r)
                .unwrap()
                .evaluate(&ctx)
                .unwrap();
            let spec = IntegralSpec::new(a, 0, q, r).unwrap();
            let quad = integrate_i(&spec, &ctx, &eps(110)).unwrap().value;
            let diff = BigFloat::with_val(256, &closed - &quad).abs();
            assert!(diff < eps(95), "({a},{q},{r}): diff {:.3e}", diff.to_f64());
        }
    }

    #[test]
    fn structure_claims() {
        // odd a: only {1, ln2, zeta(2..q+1)}
        let e = logpow_integral(3, 2, 2).unwrap();
        for s in e.symbols() {
            assert!(
                matches!(s, ConstantSymbol::Ln2 | ConstantSymbol::Zeta(_)),
                "unexpected {s} in odd-a output"
            );
        }
        // even a: only {1, G, odd pi powers, psi(odd, 1/4 or 3/4)}
        let e = logpow_integral(4, 3, 3).unwrap();
        for (m, _) in e.terms() {
            for (s, exp) in m.factors() {
                match s {
                    ConstantSymbol::Catalan => {}
                    ConstantSymbol::Pi => assert!(exp % 2 == 1, "even pi power"),
                    ConstantSymbol::Psi(ord, z) => {
                        assert!(ord % 2 == 1);
                        assert!(*z == rat(1, 4) || *z == rat(3, 4));
                    }
                    other => panic!("unexpected {other} in even-a output"),
                }
            }
        }
    }
}
