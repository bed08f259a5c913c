//! Exact rational arithmetic and the arbitrary-precision floating-point
//! contract shared by every other module.
//!
//! `Rational` is GMP's exact rational type (always reduced, positive
//! denominator). `BigFloat` is an MPFR float; its precision tag travels with
//! the value, and all basic operations round to nearest, so identical inputs
//! under the same context produce bit-identical results.

use crate::error::Error;

pub type Rational = rug::Rational;
pub type BigFloat = rug::Float;

/// Working precision policy for one evaluation run.
///
/// `precision_bits` is the mantissa size of values handed back to callers;
/// `guard_bits` is extra internal headroom. The comparison tolerance
/// `2^(guard_bits - precision_bits)` is the coarsest distinction the context
/// promises to resolve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    pub precision_bits: u32,
    pub guard_bits: u32,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::new(256)
    }
}

impl PrecisionContext {
    pub fn new(precision_bits: u32) -> Self {
        Self::with_guard(precision_bits, 32)
    }

    pub fn with_guard(precision_bits: u32, guard_bits: u32) -> Self {
        assert!(precision_bits >= 64, "precision must be at least 64 bits");
        assert!(
            guard_bits < precision_bits / 2,
            "guard bits must stay below half the precision"
        );
        Self {
            precision_bits,
            guard_bits,
        }
    }

    /// Precision used for intermediate computations.
    pub fn working_bits(&self) -> u32 {
        self.precision_bits + self.guard_bits
    }

    /// `2^(guard_bits - precision_bits)`, the context's comparison tolerance.
    pub fn comparison_tolerance(&self) -> BigFloat {
        BigFloat::with_val(self.precision_bits, 1u32)
            << (self.guard_bits as i32 - self.precision_bits as i32)
    }

    /// A float at output precision.
    pub fn float<T>(&self, value: T) -> BigFloat
    where
        BigFloat: rug::Assign<T>,
    {
        BigFloat::with_val(self.precision_bits, value)
    }

    /// A float at working precision.
    pub fn working<T>(&self, value: T) -> BigFloat
    where
        BigFloat: rug::Assign<T>,
    {
        BigFloat::with_val(self.working_bits(), value)
    }

    /// Round a working-precision value down to output precision.
    pub fn round_out(&self, mut x: BigFloat) -> BigFloat {
        x.set_prec(self.precision_bits);
        x
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact rational arithmetic; division by zero is the only failure mode.
pub fn rational_arith(lhs: &Rational, rhs: &Rational, op: ArithOp) -> Result<Rational, Error> {
    Ok(match op {
        ArithOp::Add => Rational::from(lhs + rhs),
        ArithOp::Sub => Rational::from(lhs - rhs),
        ArithOp::Mul => Rational::from(lhs * rhs),
        ArithOp::Div => {
            if rhs.cmp0() == std::cmp::Ordering::Equal {
                return Err(Error::DivisionByZero);
            }
            Rational::from(lhs / rhs)
        }
    })
}

/// Correctly rounded conversion at the context's output precision.
pub fn to_bigfloat(x: &Rational, ctx: &PrecisionContext) -> BigFloat {
    BigFloat::with_val(ctx.precision_bits, x)
}

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}

/// Deterministic pairwise sum over a slice, reduced as a fixed binary tree
/// keyed by index so that the result is independent of evaluation order.
pub fn pairwise_sum(prec: u32, terms: &[BigFloat]) -> BigFloat {
    match terms.len() {
        0 => BigFloat::with_val(prec, 0u32),
        1 => {
            let mut t = terms[0].clone();
            t.set_prec(prec);
            t
        }
        n => {
            let (a, b) = terms.split_at(n / 2);
            let left = pairwise_sum(prec, a);
            let right = pairwise_sum(prec, b);
            BigFloat::with_val(prec, &left + &right)
        }
    }
}

/// Render a float as a decimal string with the given number of significant
/// digits, in the `d.ddd...e±x` form used by reports.
pub fn decimal_string(x: &BigFloat, digits: usize) -> String {
    if x.is_nan() {
        return "nan".to_owned();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf" } else { "inf" }.to_owned();
    }
    if x.is_zero() {
        return "0".to_owned();
    }
    let (sign, mantissa, exp) = x.to_sign_string_exp(10, Some(digits));
    let exp = exp.unwrap_or(1);
    let sign = if sign { "-" } else { "" };
    let (head, tail) = mantissa.split_at(1);
    format!("{sign}{head}.{tail}e{}", exp - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    #[test]
    fn rational_ops_are_exact_and_reduced() {
        let half = rat(1, 2);
        let third = rat(1, 3);
        assert_eq!(
            rational_arith(&half, &third, ArithOp::Add).unwrap(),
            rat(5, 6)
        );
        assert_eq!(Rational::from((2, 4)), rat(1, 2));
        let seventh = rat(1, 7);
        let seven = rat(7, 1);
        assert_eq!(
            rational_arith(&seventh, &seven, ArithOp::Mul).unwrap(),
            rat(1, 1)
        );
        assert!(matches!(
            rational_arith(&half, &Rational::new(), ArithOp::Div),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn to_bigfloat_dyadic_is_exact() {
        let ctx = PrecisionContext::default();
        assert_eq!(to_bigfloat(&rat(1, 2), &ctx), 0.5);
        assert!(to_bigfloat(&Rational::new(), &ctx).is_zero());
    }

    #[test]
    fn to_bigfloat_rounding_bound() {
        let ctx = PrecisionContext::default();
        let third = to_bigfloat(&rat(1, 3), &ctx);
        let err = (BigFloat::with_val(320, &third * 3u32) - 1u32).abs();
        assert!(err < BigFloat::with_val(64, 2u32).pow(-255i32) * 3u32);
    }

    #[test]
    fn comparison_tolerance_matches_definition() {
        let ctx = PrecisionContext::with_guard(128, 16);
        let tol = ctx.comparison_tolerance();
        assert_eq!(tol, BigFloat::with_val(64, 2u32).pow(-112i32));
    }

    #[test]
    fn pairwise_sum_matches_sequential_for_exact_inputs() {
        let terms: Vec<BigFloat> = (1..=31u32)
            .map(|i| BigFloat::with_val(128, i))
            .collect();
        let total = pairwise_sum(128, &terms);
        assert_eq!(total, 496u32);
    }

    #[test]
    fn decimal_string_shapes() {
        let ctx = PrecisionContext::default();
        assert_eq!(decimal_string(&ctx.float(0u32), 10), "0");
        let x = ctx.float(rat(1, 4));
        assert_eq!(decimal_string(&x, 5), "2.5000e-1");
        let y = ctx.float(-1536i64);
        assert_eq!(decimal_string(&y, 4), "-1.536e3");
    }
}
