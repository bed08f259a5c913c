//! Named constants and special-function values: pi, ln 2, Catalan's constant,
//! zeta and Dirichlet beta values, polylogarithms at 1/2, the trilogarithm
//! imaginary part W(3), and polygamma values at rational arguments.
//!
//! Everything analytic funnels through the Euler-Maclaurin Hurwitz kernel;
//! the handful of constants with cheap independent definitions (pi, W(3),
//! beta) also have second routes used by the self-consistency checks.

pub mod bernoulli;
pub mod harmonic;
pub mod hurwitz;

pub use harmonic::{harmonic, harmonic_frac, milgram_t, odd_harmonic, odd_harmonic_prefix};
pub use hurwitz::{digamma, hurwitz_zeta, polygamma};

use crate::error::Error;
use crate::numerics::{BigFloat, PrecisionContext, Rational};
use once_cell::sync::Lazy;
use rug::ops::Pow;
use rug::Integer;
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

/// A named constant or special-function value that can appear in a
/// closed-form expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstantSymbol {
    Pi,
    Ln2,
    Sqrt3,
    EulerGamma,
    Catalan,
    /// zeta(s), s >= 2
    Zeta(u32),
    /// Dirichlet beta(s), s >= 2
    Beta(u32),
    /// Li_n(1/2)
    LiHalf(u32),
    /// Im Li_3((1+i)/2)
    W3,
    /// psi^{(m)}(z) at rational z
    Psi(u32, Rational),
    /// Hurwitz zeta(s, a), s >= 2
    Hurwitz(u32, Rational),
}

impl ConstantSymbol {
    pub fn validate(&self) -> Result<(), Error> {
        match self {
            ConstantSymbol::Zeta(s) | ConstantSymbol::Beta(s) => {
                if *s < 2 {
                    return Err(Error::InvalidArgument(format!("{self} needs s >= 2")));
                }
            }
            ConstantSymbol::LiHalf(n) => {
                if *n < 2 {
                    return Err(Error::InvalidArgument("Li_n(1/2) needs n >= 2".into()));
                }
            }
            ConstantSymbol::Psi(_, z) => {
                if z.is_integer() && z.cmp0() != std::cmp::Ordering::Greater {
                    return Err(Error::Pole(format!("{self}")));
                }
            }
            ConstantSymbol::Hurwitz(s, a) => {
                if *s < 2 {
                    return Err(Error::InvalidArgument("hurwitz zeta needs s >= 2".into()));
                }
                if a.is_integer() && a.cmp0() != std::cmp::Ordering::Greater {
                    return Err(Error::Pole(format!("{self}")));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

impl fmt::Display for ConstantSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstantSymbol::Pi => write!(f, "pi"),
            ConstantSymbol::Ln2 => write!(f, "ln2"),
            ConstantSymbol::Sqrt3 => write!(f, "sqrt3"),
            ConstantSymbol::EulerGamma => write!(f, "gamma"),
            ConstantSymbol::Catalan => write!(f, "G"),
            ConstantSymbol::Zeta(s) => write!(f, "zeta({s})"),
            ConstantSymbol::Beta(s) => write!(f, "beta({s})"),
            ConstantSymbol::LiHalf(n) => write!(f, "Li{n}(1/2)"),
            ConstantSymbol::W3 => write!(f, "W3"),
            ConstantSymbol::Psi(m, z) => write!(f, "psi{m}({z})"),
            ConstantSymbol::Hurwitz(s, a) => write!(f, "zeta({s},{a})"),
        }
    }
}

static CONSTANT_CACHE: Lazy<Mutex<HashMap<(ConstantSymbol, u32), BigFloat>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Evaluate a constant at `bits` precision (accurate to a few ulp), memoized
/// per (symbol, precision). Cache insertion is idempotent, so concurrent
/// callers observe identical values.
pub fn constant_bits(sym: &ConstantSymbol, bits: u32) -> Result<BigFloat, Error> {
    sym.validate()?;
    if let Some(v) = CONSTANT_CACHE.lock().unwrap().get(&(sym.clone(), bits)) {
        return Ok(v.clone());
    }
    let wp = bits + 32;
    let raw = match sym {
        ConstantSymbol::Pi => pi_machin(wp),
        ConstantSymbol::Ln2 => BigFloat::with_val(wp, rug::float::Constant::Log2),
        ConstantSymbol::Sqrt3 => BigFloat::with_val(wp, 3u32).sqrt(),
        ConstantSymbol::EulerGamma => BigFloat::with_val(wp, rug::float::Constant::Euler),
        ConstantSymbol::Catalan => beta_hurwitz(2, wp)?,
        ConstantSymbol::Zeta(s) => hurwitz_zeta(*s, &Rational::from(1), wp)?,
        ConstantSymbol::Beta(s) => beta_hurwitz(*s, wp)?,
        ConstantSymbol::LiHalf(n) => li_half(*n, wp),
        ConstantSymbol::W3 => w3_quarter_series(wp),
        ConstantSymbol::Psi(m, z) => polygamma(*m, z, wp)?,
        ConstantSymbol::Hurwitz(s, a) => hurwitz_zeta(*s, a, wp)?,
    };
    let mut out = raw;
    out.set_prec(bits);
    let mut cache = CONSTANT_CACHE.lock().unwrap();
    let entry = cache.entry((sym.clone(), bits)).or_insert(out);
    Ok(entry.clone())
}

/// Evaluate a constant at the context's output precision.
pub fn constant(sym: &ConstantSymbol, ctx: &PrecisionContext) -> Result<BigFloat, Error> {
    constant_bits(sym, ctx.precision_bits)
}

/// Machin's formula: pi = 16 atan(1/5) - 4 atan(1/239), with the arctangent
/// series summed in exact descending powers. Canonical in-crate pi route.
pub fn pi_machin(bits: u32) -> BigFloat {
    let wp = bits + 32;
    let atan_inv = |m: u32| -> BigFloat {
        let mut sum = BigFloat::with_val(wp, 0u32);
        let m2 = Integer::from(m * m);
        let mut power = Integer::from(m); // m^{2k+1}
        let mut k = 0u32;
        loop {
            let term = BigFloat::with_val(wp, Rational::from((1u32, 1u32)) / Rational::from(&power * Integer::from(2 * k + 1)));
            if k % 2 == 0 {
                sum += &term;
            } else {
                sum -= &term;
            }
            if term.get_exp().map_or(true, |e| e < -((wp + 8) as i32)) {
                break;
            }
            power *= &m2;
            k += 1;
        }
        sum
    };
    let mut pi = atan_inv(5) * 16u32;
    pi -= atan_inv(239) * 4u32;
    pi.set_prec(bits);
    pi
}

/// Gauss-Legendre AGM iteration for pi; the independent cross-check route.
pub fn pi_agm(bits: u32) -> BigFloat {
    let wp = bits + 32;
    let mut a = BigFloat::with_val(wp, 1u32);
    let mut b = BigFloat::with_val(wp, 2u32).recip().sqrt();
    let mut t = BigFloat::with_val(wp, Rational::from((1u32, 4u32)));
    let mut p = BigFloat::with_val(wp, 1u32);
    for _ in 0..(64 - (wp as u64).leading_zeros() + 4) {
        let an = BigFloat::with_val(wp, &a + &b) / 2u32;
        let bn = BigFloat::with_val(wp, &a * &b).sqrt();
        let d = BigFloat::with_val(wp, &a - &an);
        t -= BigFloat::with_val(wp, d.square() * &p);
        p *= 2u32;
        a = an;
        b = bn;
    }
    let mut pi = BigFloat::with_val(wp, &a + &b).square() / (t * 4u32);
    pi.set_prec(bits);
    pi
}

/// beta(s) = 4^{-s} (zeta(s, 1/4) - zeta(s, 3/4)); the canonical route.
fn beta_hurwitz(s: u32, bits: u32) -> Result<BigFloat, Error> {
    let wp = bits + 16;
    let a = hurwitz_zeta(s, &Rational::from((1u32, 4u32)), wp)?;
    let b = hurwitz_zeta(s, &Rational::from((3u32, 4u32)), wp)?;
    let mut out = BigFloat::with_val(wp, &a - &b);
    out >>= 2 * s as i32;
    out.set_prec(bits);
    Ok(out)
}

/// beta(s) summed directly from its alternating Dirichlet series with the
/// Euler transform; independent of the Hurwitz kernel, used for
/// self-consistency checks.
pub fn beta_series(s: u32, bits: u32) -> BigFloat {
    let wp = bits + 96;
    let jmax = (2 * bits + 128) as usize;
    let mut a: Vec<BigFloat> = (0..jmax)
        .map(|k| BigFloat::with_val(wp, Integer::from(2 * k as u32 + 1).pow(s)).recip())
        .collect();
    let mut total = BigFloat::with_val(wp, 0u32);
    let mut scale = BigFloat::with_val(wp, Rational::from((1u32, 2u32)));
    let mut sign = 1i32;
    for _ in 0..jmax - 1 {
        let term = BigFloat::with_val(wp, &a[0] * &scale);
        if sign > 0 {
            total += &term;
        } else {
            total -= &term;
        }
        if term.get_exp().map_or(true, |e| e < -((bits + 24) as i32)) {
            break;
        }
        sign = -sign;
        scale /= 2u32;
        for i in 0..a.len() - 1 {
            a[i] = BigFloat::with_val(wp, &a[i + 1] - &a[i]);
        }
        a.pop();
    }
    total.set_prec(bits);
    total
}

/// Li_n(1/2) by its geometric power series.
fn li_half(n: u32, bits: u32) -> BigFloat {
    let wp = bits + 16;
    let mut sum = BigFloat::with_val(wp, 0u32);
    let mut k = 1u32;
    loop {
        let den = Integer::from(k).pow(n) * (Integer::from(1) << k);
        let term = BigFloat::with_val(wp, Rational::from((Integer::from(1), den)));
        sum += &term;
        if term.get_exp().map_or(true, |e| e < -((wp + 8) as i32)) {
            break;
        }
        k += 1;
    }
    sum.set_prec(bits);
    sum
}

/// W(3) from the explicit alternating quarter-power series; canonical route.
pub fn w3_quarter_series(bits: u32) -> BigFloat {
    let wp = bits + 16;
    let mut sum = BigFloat::with_val(wp, 0u32);
    let mut n = 1u64;
    loop {
        let base = Integer::from(4u64 * n);
        let mut term_r = Rational::from((2u32, 1u32)) / Rational::from(Integer::from(&base - 3u32).pow(3));
        term_r += Rational::from((2u32, 1u32)) / Rational::from(Integer::from(&base - 2u32).pow(3));
        term_r += Rational::from((1u32, 1u32)) / Rational::from(Integer::from(&base - 1u32).pow(3));
        term_r /= Rational::from(Integer::from(1) << (2 * n as u32));
        let term = BigFloat::with_val(wp, &term_r);
        if n % 2 == 1 {
            sum += &term;
        } else {
            sum -= &term;
        }
        if term.get_exp().map_or(true, |e| e < -((wp + 8) as i32)) {
            break;
        }
        n += 1;
    }
    sum.set_prec(bits);
    sum
}

/// W(3) as Im Li_3((1+i)/2) by the complex trilogarithm power series; the
/// independent cross-check route.
pub fn w3_trilog_series(bits: u32) -> BigFloat {
    let wp = bits + 32;
    // z = (1+i)/2, track z^k as an exact rational pair scaled by 2^{-k}
    let mut re = BigFloat::with_val(wp, Rational::from((1u32, 2u32)));
    let mut im = BigFloat::with_val(wp, Rational::from((1u32, 2u32)));
    let half = BigFloat::with_val(wp, Rational::from((1u32, 2u32)));
    let mut sum = BigFloat::with_val(wp, 0u32);
    let mut k = 1u64;
    loop {
        let term = BigFloat::with_val(wp, &im / Integer::from(k).pow(3));
        sum += &term;
        if k as u32 > 2 * wp + 64 {
            break;
        }
        // z^{k+1} = z^k * (1+i)/2
        let new_re = BigFloat::with_val(wp, &re - &im) * &half;
        let new_im = BigFloat::with_val(wp, &re + &im) * &half;
        re = new_re;
        im = new_im;
        k += 1;
    }
    sum.set_prec(bits);
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;
    use rug::Complete;

    fn tol(bits: i32) -> BigFloat {
        BigFloat::with_val(64, 2u32).pow(-bits)
    }

    #[test]
    fn pi_routes_agree_with_each_other_and_mpfr() {
        let a = pi_machin(320);
        let b = pi_agm(320);
        let c = BigFloat::with_val(320, rug::float::Constant::Pi);
        assert!(BigFloat::with_val(320, &a - &b).abs() < tol(316));
        assert!(BigFloat::with_val(320, &a - &c).abs() < tol(316));
    }

    #[test]
    fn catalan_matches_mpfr_builtin() {
        let ours = constant_bits(&ConstantSymbol::Catalan, 256).unwrap();
        let mpfr = BigFloat::with_val(256, rug::float::Constant::Catalan);
        assert!(BigFloat::with_val(256, &ours - &mpfr).abs() < tol(250));
    }

    #[test]
    fn zeta_values_match_mpfr() {
        for s in [2u32, 3, 4, 5, 7] {
            let ours = constant_bits(&ConstantSymbol::Zeta(s), 256).unwrap();
            let mpfr = BigFloat::with_val(256, s).zeta();
            assert!(
                BigFloat::with_val(256, &ours - &mpfr).abs() < tol(248),
                "zeta({s})"
            );
        }
    }

    #[test]
    fn zeta2_equals_pi_squared_over_six() {
        let z2 = constant_bits(&ConstantSymbol::Zeta(2), 256).unwrap();
        let pi = constant_bits(&ConstantSymbol::Pi, 256).unwrap();
        let want = BigFloat::with_val(256, pi.square() / 6u32);
        assert!(BigFloat::with_val(256, &z2 - &want).abs() < tol(248));
    }

    #[test]
    fn beta_routes_agree() {
        for s in [2u32, 3, 4, 6] {
            let hur = constant_bits(&ConstantSymbol::Beta(s), 256).unwrap();
            let ser = beta_series(s, 256);
            assert!(
                BigFloat::with_val(256, &hur - &ser).abs() < tol(245),
                "beta({s})"
            );
        }
    }

    #[test]
    fn w3_routes_agree() {
        let a = w3_quarter_series(300);
        let b = w3_trilog_series(300);
        assert!(BigFloat::with_val(300, &a - &b).abs() < tol(290));
    }

    #[test]
    fn psi_beta_identity() {
        // psi^{(2q-1)}(1/4) - psi^{(2q-1)}(3/4) = 2^{4q} (2q-1)! beta(2q)
        for q in 1u32..=3 {
            let m = 2 * q - 1;
            let lhs = BigFloat::with_val(
                300,
                constant_bits(&ConstantSymbol::Psi(m, rat(1, 4)), 300).unwrap()
                    - constant_bits(&ConstantSymbol::Psi(m, rat(3, 4)), 300).unwrap(),
            );
            let beta = constant_bits(&ConstantSymbol::Beta(2 * q), 300).unwrap();
            let fact = Rational::from(Integer::factorial(m).complete());
            let rhs = BigFloat::with_val(300, &beta * &fact) << (4 * q as i32);
            assert!(
                BigFloat::with_val(300, lhs - rhs).abs() < tol(280),
                "q={q}"
            );
        }
    }

    #[test]
    fn li4_half_sane() {
        let v = constant_bits(&ConstantSymbol::LiHalf(4), 256).unwrap();
        // Li_4(1/2) = 0.5174790616738993...
        let lo = BigFloat::with_val(64, 0.51747906167);
        let hi = BigFloat::with_val(64, 0.51747906168);
        assert!(v > lo && v < hi);
    }

    #[test]
    fn cache_is_value_transparent() {
        let sym = ConstantSymbol::Psi(1, rat(5, 4));
        let first = constant_bits(&sym, 192).unwrap();
        let second = constant_bits(&sym, 192).unwrap();
        assert!(first.eq(&second) && first.prec() == second.prec());
    }

    #[test]
    fn pole_rejected() {
        assert!(matches!(
            constant_bits(&ConstantSymbol::Psi(2, rat(-2, 1)), 128),
            Err(Error::Pole(_))
        ));
    }
}
