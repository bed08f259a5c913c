//! Integer and odd harmonic numbers, their prefix sums, and the nested
//! Milgram constants t_k(n), all as exact rationals with memoized tables.
//! Per-precision float snapshots of the Milgram tables feed the series
//! evaluators.

use crate::error::Error;
use crate::numerics::{BigFloat, PrecisionContext, Rational};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

#[derive(Default)]
struct Tables {
    /// H_n
    harmonic: Vec<Rational>,
    /// h_n = sum 1/(2k-1)
    odd: Vec<Rational>,
    /// sum_{i<=j} h_i / i
    prefix_hi: Vec<Rational>,
    /// level -> [t_0(level), t_1(level), ...]
    milgram: HashMap<u32, Vec<Rational>>,
}

static TABLES: Lazy<Mutex<Tables>> = Lazy::new(|| {
    Mutex::new(Tables {
        harmonic: vec![Rational::new()],
        odd: vec![Rational::new()],
        prefix_hi: vec![Rational::new()],
        milgram: HashMap::new(),
    })
});

/// H_n, exact.
pub fn harmonic(n: u32) -> Rational {
    let mut t = TABLES.lock().unwrap();
    while t.harmonic.len() <= n as usize {
        let m = t.harmonic.len() as u32;
        let next = t.harmonic.last().unwrap() + Rational::from((1u32, m));
        t.harmonic.push(next.into());
    }
    t.harmonic[n as usize].clone()
}

/// h_n = sum_{k<=n} 1/(2k-1), exact.
pub fn odd_harmonic(n: u32) -> Rational {
    let mut t = TABLES.lock().unwrap();
    while t.odd.len() <= n as usize {
        let m = t.odd.len() as u32;
        let next = t.odd.last().unwrap() + Rational::from((1u32, 2 * m - 1));
        t.odd.push(next.into());
    }
    t.odd[n as usize].clone()
}

/// sum_{i=1}^{j} h_i / i, exact (inner prefix of the arctan-cubed expansion).
pub fn odd_harmonic_prefix(j: u32) -> Rational {
    let mut len = TABLES.lock().unwrap().prefix_hi.len();
    while len <= j as usize {
        let m = len as u32;
        let h = odd_harmonic(m); // takes the lock itself
        let mut t = TABLES.lock().unwrap();
        if t.prefix_hi.len() == m as usize {
            let next = t.prefix_hi.last().unwrap() + h / Rational::from(m);
            t.prefix_hi.push(next);
        }
        len = t.prefix_hi.len();
    }
    TABLES.lock().unwrap().prefix_hi[j as usize].clone()
}

fn milgram_level(t: &mut Tables, level: u32, upto: usize) {
    if level == 0 {
        return;
    }
    if level > 1 {
        milgram_level(t, level - 1, upto);
    }
    let have = t.milgram.get(&level).map_or(0, |v| v.len());
    if have > upto {
        return;
    }
    let prev = if level > 1 {
        t.milgram.get(&(level - 1)).cloned()
    } else {
        None
    };
    let entry = t.milgram.entry(level).or_default();
    for k in have..=upto {
        let weight_inv = Rational::from((2u32, 2 * k as u32 + level)); // 1/(k + level/2)
        let inner = match &prev {
            Some(p) => p[k].clone(),
            None => Rational::from(1),
        };
        let term = inner * weight_inv;
        let value = if k == 0 {
            term
        } else {
            Rational::from(&entry[k - 1] + &term)
        };
        entry.push(value);
    }
}

/// Milgram constant t_k(n), exact. t_k(0) = 1 by the empty-nesting
/// convention, which makes the depth-0 expansion reproduce the arctan
/// Taylor series.
pub fn milgram_t(k: u32, n: u32) -> Rational {
    if n == 0 {
        return Rational::from(1);
    }
    let mut t = TABLES.lock().unwrap();
    milgram_level(&mut t, n, k as usize);
    t.milgram[&n][k as usize].clone()
}

type FloatTableKey = (u32, u32); // (level, precision bits)
static MILGRAM_FLOATS: Lazy<Mutex<HashMap<FloatTableKey, Vec<BigFloat>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// t_0..t_{count-1} at the given level, rounded once to `bits`.
pub fn milgram_floats(level: u32, count: usize, bits: u32) -> Vec<BigFloat> {
    let mut cache = MILGRAM_FLOATS.lock().unwrap();
    let entry = cache.entry((level, bits)).or_default();
    while entry.len() < count {
        let k = entry.len() as u32;
        let r = if level == 0 {
            Rational::from(1)
        } else {
            milgram_t(k, level)
        };
        entry.push(BigFloat::with_val(bits, &r));
    }
    entry[..count].to_vec()
}

/// Fractional harmonic number H_x = psi(x+1) + gamma, the analytic
/// continuation used throughout the closed forms. Agrees with `harmonic`
/// at nonnegative integers.
pub fn harmonic_frac(x: &Rational, ctx: &PrecisionContext) -> Result<BigFloat, Error> {
    let z = Rational::from(x + 1u32);
    if z.is_integer() && z.cmp0() != std::cmp::Ordering::Greater {
        return Err(Error::Pole(format!("H_{x}")));
    }
    let bits = ctx.working_bits() + 16;
    let psi = super::hurwitz::digamma(&z, bits)?;
    let gamma = BigFloat::with_val(bits, rug::float::Constant::Euler);
    Ok(ctx.round_out(psi + gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;
    use rug::ops::Pow;

    #[test]
    fn harmonic_small_values() {
        assert_eq!(harmonic(0), 0);
        assert_eq!(harmonic(4), rat(25, 12));
        assert_eq!(harmonic(10), rat(7381, 2520));
    }

    #[test]
    fn odd_harmonic_small_values() {
        assert_eq!(odd_harmonic(0), 0);
        assert_eq!(odd_harmonic(2), rat(4, 3));
        // h_n = H_{2n} - H_n / 2, exactly
        for n in 0..40u32 {
            let want = harmonic(2 * n) - harmonic(n) / rat(2, 1);
            assert_eq!(odd_harmonic(n), want, "n={n}");
        }
    }

    #[test]
    fn milgram_base_values() {
        assert_eq!(milgram_t(0, 1), 2);
        assert_eq!(milgram_t(1, 1), rat(8, 3));
        assert_eq!(milgram_t(0, 4), rat(2, 3));
        assert_eq!(milgram_t(5, 0), 1);
    }

    #[test]
    fn milgram_level_one_is_twice_odd_harmonic() {
        for n in 0..60u32 {
            assert_eq!(milgram_t(n, 1), rat(2, 1) * odd_harmonic(n + 1));
        }
    }

    #[test]
    fn milgram_level_two_matches_prefix_sums() {
        for j in 1..60u32 {
            assert_eq!(milgram_t(j - 1, 2), rat(2, 1) * odd_harmonic_prefix(j));
        }
    }

    #[test]
    fn milgram_monotone_in_k() {
        for n in 1..5u32 {
            for k in 1..12u32 {
                assert!(milgram_t(k, n) > milgram_t(k - 1, n));
            }
        }
    }

    #[test]
    fn harmonic_frac_known_values() {
        let ctx = PrecisionContext::default();
        let tol = BigFloat::with_val(64, 2u32).pow(-240i32);

        let h0 = harmonic_frac(&rat(0, 1), &ctx).unwrap();
        assert!(h0.clone().abs() < tol);

        // H_{1/2} = 2 - 2 ln 2
        let h_half = harmonic_frac(&rat(1, 2), &ctx).unwrap();
        let ln2 = BigFloat::with_val(300, rug::float::Constant::Log2);
        let want = BigFloat::with_val(300, 2u32 - (ln2.clone() * 2u32));
        assert!(BigFloat::with_val(256, &h_half - &want).abs() < tol);

        // H_{-1/2} = -2 ln 2
        let h_neg = harmonic_frac(&rat(-1, 2), &ctx).unwrap();
        let want = BigFloat::with_val(300, ln2 * -2i32);
        assert!(BigFloat::with_val(256, &h_neg - &want).abs() < tol);

        // integer consistency
        let h7 = harmonic_frac(&rat(7, 1), &ctx).unwrap();
        let exact = BigFloat::with_val(256, &harmonic(7));
        assert!(BigFloat::with_val(256, &h7 - &exact).abs() < tol);

        assert!(matches!(
            harmonic_frac(&rat(-1, 1), &ctx),
            Err(Error::Pole(_))
        ));
    }
}
