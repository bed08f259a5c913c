//! Exact rational-coefficient linear combinations of monomials in named
//! constants - the output form of every closed-form evaluator.
//!
//! No simplification across known identities is performed (zeta(2) is never
//! rewritten as pi^2/6); equality of expressions is structural, and equality
//! of values is checked numerically downstream.

use crate::error::Error;
use crate::numerics::{BigFloat, PrecisionContext, Rational};
use crate::special::{constant_bits, ConstantSymbol};
use rug::ops::Pow;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// A product of symbol powers in canonical (sorted, merged) form; the empty
/// product is the unit monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    factors: Vec<(ConstantSymbol, u32)>,
}

impl Monomial {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn symbol(sym: ConstantSymbol) -> Self {
        Self {
            factors: vec![(sym, 1)],
        }
    }

    pub fn power(sym: ConstantSymbol, exp: u32) -> Self {
        if exp == 0 {
            return Self::unit();
        }
        Self {
            factors: vec![(sym, exp)],
        }
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(ConstantSymbol, u32)] {
        &self.factors
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    /// Merge two monomials, adding exponents of shared symbols.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<ConstantSymbol, u32> = BTreeMap::new();
        for (s, e) in self.factors.iter().chain(other.factors.iter()) {
            *map.entry(s.clone()).or_insert(0) += e;
        }
        Monomial {
            factors: map.into_iter().collect(),
        }
    }
}

/// Exact linear combination of monomials; only nonzero coefficients are kept.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConstExpr {
    terms: BTreeMap<Monomial, Rational>,
}

impl ConstExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut e = Self::default();
        e.add_term(Monomial::unit(), r);
        e
    }

    pub fn from_symbol(sym: ConstantSymbol) -> Self {
        let mut e = Self::default();
        e.add_term(Monomial::symbol(sym), Rational::from(1));
        e
    }

    pub fn term(coeff: Rational, monomial: Monomial) -> Self {
        let mut e = Self::default();
        e.add_term(monomial, coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.cmp0() == std::cmp::Ordering::Equal {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::new);
        *entry += c;
        if entry.cmp0() == std::cmp::Ordering::Equal {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &ConstExpr) -> ConstExpr {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ConstExpr) -> ConstExpr {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), Rational::from(-c));
        }
        out
    }

    pub fn mul(&self, other: &ConstExpr) -> ConstExpr {
        let mut out = ConstExpr::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), Rational::from(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> ConstExpr {
        let mut out = ConstExpr::default();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), Rational::from(c * factor));
        }
        out
    }

    pub fn neg(&self) -> ConstExpr {
        self.scale(&Rational::from(-1))
    }

    /// All symbols mentioned anywhere in the expression.
    pub fn symbols(&self) -> Vec<ConstantSymbol> {
        let mut syms: Vec<ConstantSymbol> = self
            .terms
            .keys()
            .flat_map(|m| m.factors.iter().map(|(s, _)| s.clone()))
            .collect();
        syms.sort();
        syms.dedup();
        syms
    }

    /// Numeric value: sum of coeff * prod constant^exp, evaluated at working
    /// precision and rounded once to the context's output precision.
    pub fn evaluate(&self, ctx: &PrecisionContext) -> Result<BigFloat, Error> {
        let wp = ctx.working_bits() + 16;
        let mut total = BigFloat::with_val(wp, 0u32);
        for (m, c) in &self.terms {
            let mut term = BigFloat::with_val(wp, c);
            for (sym, exp) in &m.factors {
                let base = constant_bits(sym, wp)?;
                term *= base.pow(exp);
            }
            total += term;
        }
        Ok(ctx.round_out(total))
    }

    /// Deterministic plain-text rendering in canonical monomial order.
    pub fn format_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_owned();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.cmp0() == std::cmp::Ordering::Less;
            let mag = Rational::from(c.clone().abs());
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_is_one = mag == 1u32;
            if m.is_unit() {
                let _ = write!(out, "{mag}");
            } else {
                if !coeff_is_one {
                    let _ = write!(out, "{mag}*");
                }
                let factors: Vec<String> = m
                    .factors
                    .iter()
                    .map(|(s, e)| {
                        if *e == 1 {
                            format!("{s}")
                        } else {
                            format!("{s}^{e}")
                        }
                    })
                    .collect();
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// LaTeX rendering, mainly for human-readable reports.
    pub fn format_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_owned();
        }
        let sym_tex = |s: &ConstantSymbol| -> String {
            match s {
                ConstantSymbol::Pi => r"\pi".into(),
                ConstantSymbol::Ln2 => r"\ln 2".into(),
                ConstantSymbol::Sqrt3 => r"\sqrt{3}".into(),
                ConstantSymbol::EulerGamma => r"\gamma".into(),
                ConstantSymbol::Catalan => "G".into(),
                ConstantSymbol::Zeta(s) => format!(r"\zeta({s})"),
                ConstantSymbol::Beta(s) => format!(r"\beta({s})"),
                ConstantSymbol::LiHalf(n) => format!(r"\mathrm{{Li}}_{{{n}}}(1/2)"),
                ConstantSymbol::W3 => "W(3)".into(),
                ConstantSymbol::Psi(m, z) => format!(r"\psi^{{({m})}}({z})"),
                ConstantSymbol::Hurwitz(s, a) => format!(r"\zeta({s},{a})"),
            }
        };
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.cmp0() == std::cmp::Ordering::Less;
            let mag = Rational::from(c.clone().abs());
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let coeff = if mag.is_integer() {
                format!("{mag}")
            } else {
                format!(r"\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
            };
            if m.is_unit() {
                out.push_str(&coeff);
            } else {
                if mag != 1u32 {
                    out.push_str(&coeff);
                    out.push(' ');
                }
                for (s, e) in &m.factors {
                    if *e == 1 {
                        let _ = write!(out, "{}", sym_tex(s));
                    } else {
                        let _ = write!(out, "{}^{{{e}}}", sym_tex(s));
                    }
                }
            }
        }
        out
    }

    /// JSON rendering with stable field order:
    /// `{"terms":[{"coeff":"p/q","monomial":[["PI",3],["LN2",1]]}]}`.
    pub fn format_json(&self) -> String {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let monomial: Vec<serde_json::Value> = m
                .factors
                .iter()
                .map(|(s, e)| serde_json::json!([symbol_tag(s), e]))
                .collect();
            let mut obj = serde_json::Map::new();
            obj.insert("coeff".into(), serde_json::Value::String(c.to_string()));
            obj.insert("monomial".into(), serde_json::Value::Array(monomial));
            terms.push(serde_json::Value::Object(obj));
        }
        serde_json::json!({ "terms": terms }).to_string()
    }

    /// Parse the JSON rendering back; `format_json` then `parse_json` is the
    /// identity on canonical expressions.
    pub fn parse_json(text: &str) -> Result<ConstExpr, Error> {
        let bad = |m: &str| Error::InvalidArgument(format!("bad ConstExpr JSON: {m}"));
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| bad("missing terms array"))?;
        let mut out = ConstExpr::default();
        for t in terms {
            let coeff_s = t
                .get("coeff")
                .and_then(|c| c.as_str())
                .ok_or_else(|| bad("missing coeff"))?;
            let coeff: Rational = coeff_s
                .parse()
                .map_err(|_| bad(&format!("bad coefficient {coeff_s}")))?;
            let mono = t
                .get("monomial")
                .and_then(|m| m.as_array())
                .ok_or_else(|| bad("missing monomial"))?;
            let mut m = Monomial::unit();
            for pair in mono {
                let arr = pair.as_array().ok_or_else(|| bad("bad factor"))?;
                let tag = arr
                    .first()
                    .and_then(|s| s.as_str())
                    .ok_or_else(|| bad("bad factor symbol"))?;
                let exp = arr
                    .get(1)
                    .and_then(|e| e.as_u64())
                    .ok_or_else(|| bad("bad factor exponent"))? as u32;
                m = m.mul(&Monomial::power(parse_symbol_tag(tag)?, exp));
            }
            out.add_term(m, coeff);
        }
        Ok(out)
    }
}

fn symbol_tag(s: &ConstantSymbol) -> String {
    match s {
        ConstantSymbol::Pi => "PI".into(),
        ConstantSymbol::Ln2 => "LN2".into(),
        ConstantSymbol::Sqrt3 => "SQRT3".into(),
        ConstantSymbol::EulerGamma => "GAMMA_EULER".into(),
        ConstantSymbol::Catalan => "CATALAN_G".into(),
        ConstantSymbol::Zeta(s) => format!("ZETA({s})"),
        ConstantSymbol::Beta(s) => format!("BETA({s})"),
        ConstantSymbol::LiHalf(n) => format!("LI_HALF({n})"),
        ConstantSymbol::W3 => "W3".into(),
        ConstantSymbol::Psi(m, z) => format!("PSI({m},{z})"),
        ConstantSymbol::Hurwitz(s, a) => format!("HURWITZ({s},{a})"),
    }
}

fn parse_symbol_tag(tag: &str) -> Result<ConstantSymbol, Error> {
    let bad = || Error::InvalidArgument(format!("unknown symbol tag {tag}"));
    Ok(match tag {
        "PI" => ConstantSymbol::Pi,
        "LN2" => ConstantSymbol::Ln2,
        "SQRT3" => ConstantSymbol::Sqrt3,
        "GAMMA_EULER" => ConstantSymbol::EulerGamma,
        "CATALAN_G" => ConstantSymbol::Catalan,
        "W3" => ConstantSymbol::W3,
        _ => {
            let (name, rest) = tag.split_once('(').ok_or_else(bad)?;
            let args = rest.strip_suffix(')').ok_or_else(bad)?;
            match name {
                "ZETA" => ConstantSymbol::Zeta(args.parse().map_err(|_| bad())?),
                "BETA" => ConstantSymbol::Beta(args.parse().map_err(|_| bad())?),
                "LI_HALF" => ConstantSymbol::LiHalf(args.parse().map_err(|_| bad())?),
                "PSI" => {
                    let (m, z) = args.split_once(',').ok_or_else(bad)?;
                    ConstantSymbol::Psi(
                        m.parse().map_err(|_| bad())?,
                        z.parse().map_err(|_| bad())?,
                    )
                }
                "HURWITZ" => {
                    let (s, a) = args.split_once(',').ok_or_else(bad)?;
                    ConstantSymbol::Hurwitz(
                        s.parse().map_err(|_| bad())?,
                        a.parse().map_err(|_| bad())?,
                    )
                }
                _ => return Err(bad()),
            }
        }
    })
}

impl std::ops::Add for ConstExpr {
    type Output = ConstExpr;
    fn add(self, rhs: ConstExpr) -> ConstExpr {
        ConstExpr::add(&self, &rhs)
    }
}

impl std::ops::Sub for ConstExpr {
    type Output = ConstExpr;
    fn sub(self, rhs: ConstExpr) -> ConstExpr {
        ConstExpr::sub(&self, &rhs)
    }
}

impl std::ops::Mul for ConstExpr {
    type Output = ConstExpr;
    fn mul(self, rhs: ConstExpr) -> ConstExpr {
        ConstExpr::mul(&self, &rhs)
    }
}

/// Shorthand constructors used heavily by the closed-form evaluators.
pub mod build {
    use super::*;
    use crate::numerics::rat;

    pub fn zero() -> ConstExpr {
        ConstExpr::zero()
    }

    pub fn num(n: i64, d: i64) -> ConstExpr {
        ConstExpr::from_rational(rat(n, d))
    }

    pub fn rational(r: Rational) -> ConstExpr {
        ConstExpr::from_rational(r)
    }

    pub fn sym(s: ConstantSymbol) -> ConstExpr {
        ConstExpr::from_symbol(s)
    }

    pub fn sym_pow(s: ConstantSymbol, e: u32) -> ConstExpr {
        ConstExpr::term(Rational::from(1), Monomial::power(s, e))
    }

    pub fn pi() -> ConstExpr {
        sym(ConstantSymbol::Pi)
    }

    pub fn pi_pow(e: u32) -> ConstExpr {
        sym_pow(ConstantSymbol::Pi, e)
    }

    pub fn ln2() -> ConstExpr {
        sym(ConstantSymbol::Ln2)
    }

    pub fn catalan() -> ConstExpr {
        sym(ConstantSymbol::Catalan)
    }

    pub fn zeta(s: u32) -> ConstExpr {
        sym(ConstantSymbol::Zeta(s))
    }

    pub fn beta(s: u32) -> ConstExpr {
        sym(ConstantSymbol::Beta(s))
    }

    pub fn psi(m: u32, z: Rational) -> ConstExpr {
        sym(ConstantSymbol::Psi(m, z))
    }
}

#[cfg(test)]
mod tests {
    use super::build::*;
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn arithmetic_canonicalizes() {
        let quarter_pi = pi().scale(&rat(1, 4));
        let half_pi = quarter_pi.add(&quarter_pi);
        assert_eq!(half_pi, pi().scale(&rat(1, 2)));

        let cubed = pi().mul(&pi_pow(2));
        assert_eq!(cubed, pi_pow(3));

        assert!(pi().scale(&Rational::new()).is_zero());
        assert_eq!(pi().sub(&pi()), ConstExpr::zero());
    }

    #[test]
    fn format_text_examples() {
        assert_eq!(pi().scale(&rat(1, 2)).format_text(), "1/2*pi");
        assert_eq!(ConstExpr::zero().format_text(), "0");
        let gp = catalan().mul(&pi()).scale(&rat(-1, 4));
        assert_eq!(gp.format_text(), "-1/4*pi*G");
    }

    #[test]
    fn json_round_trip_is_identity() {
        let e = pi_pow(3)
            .scale(&rat(5, 96))
            .add(&ln2().mul(&pi_pow(2)).scale(&rat(-7, 3)))
            .add(&num(11, 17))
            .add(&psi(1, rat(1, 4)).scale(&rat(2, 9)))
            .add(&sym(ConstantSymbol::Hurwitz(4, rat(3, 4))));
        let text = e.format_json();
        let back = ConstExpr::parse_json(&text).unwrap();
        assert_eq!(e, back);
    }

    #[test]
    fn evaluate_simple_values() {
        let ctx = PrecisionContext::default();
        let v = pi().scale(&rat(1, 2)).evaluate(&ctx).unwrap();
        let pi_v = crate::special::constant_bits(&ConstantSymbol::Pi, 256).unwrap();
        let want = BigFloat::with_val(256, &pi_v / 2u32);
        assert!(BigFloat::with_val(256, &v - &want).abs() < ctx.comparison_tolerance());
        assert!(ConstExpr::zero().evaluate(&ctx).unwrap().is_zero());
    }
}
