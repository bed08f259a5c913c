//! Independent numerical oracle: arbitrary-precision tanh-sinh
//! (double-exponential) quadrature of the integrand family
//! x^(a-p) ln^q(x) arctan^p(x) / (1+x^2)^r on (0,1).
//!
//! Abscissas, weights, and the per-node transcendentals (ln x, arctan x)
//! depend only on the precision, so they are cached once per level and shared
//! by every integral. Node evaluation may run in parallel; terms are reduced
//! by a fixed pairwise tree keyed by node index, so the execution mode never
//! changes output bits.

use crate::error::Error;
use crate::exec::{map_indexed, ExecMode};
use crate::numerics::{pairwise_sum, BigFloat, PrecisionContext};
use once_cell::sync::Lazy;
use rug::ops::Pow;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Parameters (a, p, q, r) of the paper's master integral, with the standing
/// assumption a >= p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntegralSpec {
    pub a: u32,
    pub p: u32,
    pub q: u32,
    pub r: u32,
}

impl IntegralSpec {
    pub fn new(a: u32, p: u32, q: u32, r: u32) -> Result<Self, Error> {
        if a < p {
            return Err(Error::InvalidArgument(format!(
                "integral requires a >= p, got a={a}, p={p}"
            )));
        }
        Ok(Self { a, p, q, r })
    }
}

impl std::fmt::Display for IntegralSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "I({},{},{},{})", self.a, self.p, self.q, self.r)
    }
}

#[derive(Clone, Debug)]
pub struct QuadratureResult {
    pub value: BigFloat,
    pub estimated_error: BigFloat,
    pub levels_used: u32,
    pub nodes_evaluated: usize,
}

/// Maximum number of level doublings before giving up.
pub const MAX_LEVELS: u32 = 12;

/// One precomputed tanh-sinh node on (0,1).
struct Node {
    /// abscissa, exactly representable at working precision, in (0,1)
    x: BigFloat,
    /// dx/dt at the node (the trapezoid step h is applied separately)
    weight: BigFloat,
    /// ln x, computed in log space so tiny abscissas keep full accuracy
    ln_x: BigFloat,
    atan_x: BigFloat,
    /// 1/(1+x^2)
    inv_one_plus_x2: BigFloat,
}

struct NodeTable {
    /// levels[l] holds the nodes new at level l (odd multiples of h_l), for
    /// t > 0 and t < 0 interleaved; level 0 holds t = 0 plus all integers.
    levels: Vec<Arc<Vec<Node>>>,
    t_max: f64,
}

static NODE_TABLES: Lazy<Mutex<HashMap<u32, Arc<Mutex<NodeTable>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn node_for_t(wp: u32, t_num: i64, t_den_log2: u32) -> Node {
    // t = t_num / 2^t_den_log2
    let t = BigFloat::with_val(wp, t_num) >> t_den_log2 as i32;
    let pi = BigFloat::with_val(wp, rug::float::Constant::Pi);
    let u = pi.clone() * t.clone().sinh() / 2u32;
    // x = 1/(1+e^{-2u}), 1-x = 1/(1+e^{2u}); evaluate the stable side
    let two_u = BigFloat::with_val(wp, &u * 2u32);
    let (x, ln_x) = if u.is_sign_negative() {
        let e = two_u.clone().exp(); // e^{2u} <= 1
        let one_plus = BigFloat::with_val(wp, &e + 1u32);
        let x = BigFloat::with_val(wp, &e / &one_plus);
        // ln x = 2u - ln(1+e^{2u})
        let ln_x = BigFloat::with_val(wp, &two_u - &one_plus.ln());
        (x, ln_x)
    } else {
        let e = BigFloat::with_val(wp, -&two_u).exp(); // e^{-2u} <= 1
        let one_plus = BigFloat::with_val(wp, &e + 1u32);
        let x = one_plus.clone().recip();
        let ln_x = -one_plus.ln();
        (x, ln_x)
    };
    // dx/dt = pi cosh(t) x (1-x)
    let one_minus_x = BigFloat::with_val(wp, 1u32 - &x);
    let weight = pi * t.cosh() * &x * one_minus_x;
    let atan_x = x.clone().atan();
    let x2 = x.clone().square();
    let inv_one_plus_x2 = BigFloat::with_val(wp, &x2 + 1u32).recip();
    Node {
        x,
        weight,
        ln_x,
        atan_x,
        inv_one_plus_x2,
    }
}

fn table_for(wp: u32) -> Arc<Mutex<NodeTable>> {
    let mut map = NODE_TABLES.lock().unwrap();
    map.entry(wp)
        .or_insert_with(|| {
            // decay of the weight is exp(-pi/2 e^{|t|}); pick t_max so the
            // weight alone underflows the working precision with margin
            let t_max = (((wp as f64 + 96.0) * std::f64::consts::LN_2 * 2.0
                / std::f64::consts::PI)
                .ln())
            .max(3.0)
                + 0.25;
            Arc::new(Mutex::new(NodeTable {
                levels: Vec::new(),
                t_max,
            }))
        })
        .clone()
}

fn level_nodes(wp: u32, level: u32) -> Arc<Vec<Node>> {
    let table = table_for(wp);
    let mut table = table.lock().unwrap();
    while table.levels.len() <= level as usize {
        let l = table.levels.len() as u32;
        let t_max = table.t_max;
        let mut nodes = Vec::new();
        if l == 0 {
            // h = 1: t = 0, +-1, +-2, ...
            let imax = t_max.ceil() as i64;
            nodes.push(node_for_t(wp, 0, 0));
            for i in 1..=imax {
                nodes.push(node_for_t(wp, i, 0));
                nodes.push(node_for_t(wp, -i, 0));
            }
        } else {
            // new points at odd multiples of h_l = 2^-l
            let imax = (t_max * (1u64 << l) as f64).ceil() as i64;
            let mut i = 1i64;
            while i <= imax {
                nodes.push(node_for_t(wp, i, l));
                nodes.push(node_for_t(wp, -i, l));
                i += 2;
            }
        }
        table.levels.push(Arc::new(nodes));
    }
    table.levels[level as usize].clone()
}

fn integrand_at(node: &Node, spec: &IntegralSpec, wp: u32) -> BigFloat {
    let mut v = node.weight.clone();
    let xm = spec.a - spec.p;
    if xm > 0 {
        v *= BigFloat::with_val(wp, (&node.x).pow(xm));
    }
    if spec.q > 0 {
        v *= BigFloat::with_val(wp, (&node.ln_x).pow(spec.q));
    }
    if spec.p > 0 {
        v *= BigFloat::with_val(wp, (&node.atan_x).pow(spec.p));
    }
    if spec.r > 0 {
        v *= BigFloat::with_val(wp, (&node.inv_one_plus_x2).pow(spec.r));
    }
    v
}

/// tanh-sinh quadrature of I(a,p,q,r) to the requested absolute accuracy.
pub fn integrate_i(
    spec: &IntegralSpec,
    ctx: &PrecisionContext,
    target_eps: &BigFloat,
) -> Result<QuadratureResult, Error> {
    integrate_i_with(spec, ctx, target_eps, ExecMode::default())
}

/// Same as [`integrate_i`], with an explicit execution strategy. The result
/// is bit-identical across strategies.
pub fn integrate_i_with(
    spec: &IntegralSpec,
    ctx: &PrecisionContext,
    target_eps: &BigFloat,
    mode: ExecMode,
) -> Result<QuadratureResult, Error> {
    let wp = ctx.working_bits() + 32;
    let eval = |level: u32| -> BigFloat {
        let nodes = level_nodes(wp, level);
        let terms = map_indexed(mode, nodes.len(), |i| integrand_at(&nodes[i], spec, wp));
        pairwise_sum(wp, &terms)
    };
    run_levels(ctx, target_eps, wp, eval)
}

/// tanh-sinh quadrature of the Wallis-side oracle
/// integral_0^{pi/4} theta^p cos^m(theta) d theta, p in {0, 1}.
pub fn integrate_theta(
    p: u32,
    m: u32,
    ctx: &PrecisionContext,
    target_eps: &BigFloat,
) -> Result<QuadratureResult, Error> {
    if p > 1 {
        return Err(Error::InvalidArgument(
            "theta oracle only supports p in {0,1}".into(),
        ));
    }
    let wp = ctx.working_bits() + 32;
    // map (0,1) -> (0, pi/4) through the cached nodes: theta = (pi/4) x
    let quarter_pi = BigFloat::with_val(wp, rug::float::Constant::Pi) / 4u32;
    let eval = |level: u32| -> BigFloat {
        let nodes = level_nodes(wp, level);
        let terms = map_indexed(ExecMode::default(), nodes.len(), |i| {
            let node = &nodes[i];
            let theta = BigFloat::with_val(wp, &node.x * &quarter_pi);
            let mut v = BigFloat::with_val(wp, &node.weight * &quarter_pi);
            if p == 1 {
                v *= &theta;
            }
            if m > 0 {
                v *= theta.cos().pow(m);
            }
            v
        });
        pairwise_sum(wp, &terms)
    };
    run_levels(ctx, target_eps, wp, eval)
}

fn run_levels(
    ctx: &PrecisionContext,
    target_eps: &BigFloat,
    wp: u32,
    eval: impl Fn(u32) -> BigFloat,
) -> Result<QuadratureResult, Error> {
    let mut partial = eval(0);
    let mut nodes_evaluated = level_count(wp, 0);
    let mut prev_estimate: Option<BigFloat> = None;
    let mut last_diff = BigFloat::with_val(wp, 1u32);
    for level in 1..=MAX_LEVELS {
        let new = eval(level);
        nodes_evaluated += level_count(wp, level);
        partial += &new;
        // S_level = h_level * partial with h_level = 2^-level
        let estimate = BigFloat::with_val(wp, &partial) >> level as i32;
        if let Some(prev) = &prev_estimate {
            last_diff = BigFloat::with_val(wp, &estimate - prev).abs();
            if &last_diff <= target_eps {
                // one confirmation level
                let confirm_level = level + 1;
                if confirm_level > MAX_LEVELS {
                    break;
                }
                let new2 = eval(confirm_level);
                nodes_evaluated += level_count(wp, confirm_level);
                partial += &new2;
                let confirmed = BigFloat::with_val(wp, &partial) >> confirm_level as i32;
                let diff2 = BigFloat::with_val(wp, &confirmed - &estimate).abs();
                if &diff2 <= target_eps {
                    return Ok(QuadratureResult {
                        value: ctx.round_out(confirmed),
                        estimated_error: ctx.round_out(diff2.max(&err_floor(ctx))),
                        levels_used: confirm_level,
                        nodes_evaluated,
                    });
                }
                last_diff = diff2;
            }
        }
        prev_estimate = Some(estimate);
    }
    Err(Error::NonConvergence(format!(
        "quadrature stalled at {MAX_LEVELS} levels, last step {:.3e}",
        last_diff.to_f64()
    )))
}

fn err_floor(ctx: &PrecisionContext) -> BigFloat {
    BigFloat::with_val(ctx.precision_bits, 2u32).pow(-(ctx.working_bits() as i32))
}

fn level_count(wp: u32, level: u32) -> usize {
    let table = table_for(wp);
    let table = table.lock().unwrap();
    table.levels[level as usize].len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{constant_bits, ConstantSymbol};

    fn eps(bits: i32) -> BigFloat {
        BigFloat::with_val(64, 2u32).pow(-bits)
    }

    fn check(spec: IntegralSpec, want: BigFloat, tol_bits: i32) {
        let ctx = PrecisionContext::default();
        let r = integrate_i(&spec, &ctx, &eps(110)).unwrap();
        let diff = BigFloat::with_val(256, &r.value - &want).abs();
        assert!(
            diff < eps(tol_bits),
            "{spec}: diff {:.3e}, levels {}",
            diff.to_f64(),
            r.levels_used
        );
    }

    #[test]
    fn arctan_free_base_case() {
        // I(0,0,0,1) = pi/4
        let pi = constant_bits(&ConstantSymbol::Pi, 300).unwrap();
        check(
            IntegralSpec::new(0, 0, 0, 1).unwrap(),
            BigFloat::with_val(256, pi / 4u32),
            105,
        );
    }

    #[test]
    fn log_singularity_handled() {
        // I(0,0,1,1) = -G
        let g = constant_bits(&ConstantSymbol::Catalan, 300).unwrap();
        check(
            IntegralSpec::new(0, 0, 1, 1).unwrap(),
            BigFloat::with_val(256, -g),
            105,
        );
    }

    #[test]
    fn log_squared_value() {
        // I(1,0,2,1) = (3/16) zeta(3)
        let z3 = constant_bits(&ConstantSymbol::Zeta(3), 300).unwrap();
        check(
            IntegralSpec::new(1, 0, 2, 1).unwrap(),
            BigFloat::with_val(256, z3 * 3u32 / 16u32),
            105,
        );
    }

    #[test]
    fn theta_oracle_values() {
        let ctx = PrecisionContext::default();
        let pi = constant_bits(&ConstantSymbol::Pi, 300).unwrap();
        // p=0, m=0: length of the interval
        let v = integrate_theta(0, 0, &ctx, &eps(110)).unwrap().value;
        let want = BigFloat::with_val(300, &pi / 4u32);
        assert!(BigFloat::with_val(256, &v - &want).abs() < eps(105));
        // p=1, m=0: pi^2/32
        let v = integrate_theta(1, 0, &ctx, &eps(110)).unwrap().value;
        let want = BigFloat::with_val(300, pi.clone().square() / 32u32);
        assert!(BigFloat::with_val(256, &v - &want).abs() < eps(105));
        // p=1, m=2: (-8 + 4 pi + pi^2)/64
        let v = integrate_theta(1, 2, &ctx, &eps(110)).unwrap().value;
        let four_pi = BigFloat::with_val(300, &pi * 4u32);
        let want = (BigFloat::with_val(300, pi.clone().square() + four_pi) - 8u32) / 64u32;
        assert!(BigFloat::with_val(256, &v - &want).abs() < eps(105));
    }

    #[test]
    fn parallel_and_sequential_bit_identical() {
        let ctx = PrecisionContext::default();
        let spec = IntegralSpec::new(4, 2, 1, 1).unwrap();
        let seq = integrate_i_with(&spec, &ctx, &eps(100), ExecMode::Sequential).unwrap();
        let default = integrate_i(&spec, &ctx, &eps(100)).unwrap();
        assert!(seq.value.eq(&default.value));
    }

    #[test]
    fn self_consistency_on_refinement() {
        let ctx = PrecisionContext::default();
        let spec = IntegralSpec::new(3, 2, 1, 0).unwrap();
        let coarse = integrate_i(&spec, &ctx, &eps(80)).unwrap();
        let fine_ctx = PrecisionContext::new(512);
        let fine = integrate_i(&spec, &fine_ctx, &eps(160)).unwrap();
        let diff = BigFloat::with_val(256, &coarse.value - &fine.value).abs();
        assert!(diff <= coarse.estimated_error || diff < eps(100));
    }
}
