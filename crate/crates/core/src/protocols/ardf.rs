//! Two-way alternating-relay decode-and-forward over the interfering-relay
//! diamond.
//!
//! Each direction runs the one-way alternating-path protocol over its own
//! pair of states (1, 2 for `A -> B`; 5, 6 for `B -> A`), using the relay–relay
//! link to forward between the relays. Power splits `alpha` and `beta` per
//! state trade the terminal's own rate against coherent relaying; they are
//! searched on a uniform grid.
//!
//! The `A -> B` constraints involve only `(alpha_1, beta_1, alpha_2, beta_2)`
//! and the `B -> A` constraints only `(alpha_3, beta_3, alpha_4, beta_4)`, and
//! both blocks are homogeneous in their own time shares. The best point on
//! any ray therefore combines the best parameters of each direction, so the
//! search runs two independent 4-dimensional grids once per channel and the
//! ray LP is solved only for the winners.

use crate::channel::{cap, ChannelConfig, Variant};
use crate::linprog::{self, LpBuilder, Var};
use crate::protocols::{RatePair, StateSchedule, SupportPoint};
use crate::{ray, Error, Result};

/// Power-split parameters; every entry lies in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArdfParams {
    pub alpha: [f64; 4],
    pub beta: [f64; 4],
}

impl ArdfParams {
    pub fn new(alpha: [f64; 4], beta: [f64; 4]) -> Result<Self> {
        if alpha.iter().chain(&beta).all(|v| (0.0..=1.0).contains(v)) {
            Ok(Self { alpha, beta })
        } else {
            Err(Error::InvalidArgument("AR-DF parameters must lie in [0, 1]"))
        }
    }

    pub fn ones() -> Self {
        Self { alpha: [1.0; 4], beta: [1.0; 4] }
    }
}

/// Caps for one direction: `(own_1, own_2, relay_1, relay_2, sum_1, sum_2)`
/// as coefficients of the two state fractions `(first, second)`.
struct DirectionCaps {
    // r1 <= first * own1
    own1: f64,
    // r2 <= second * own2
    own2: f64,
    // r1 <= first * relay1_first + second * relay1_second
    relay1: (f64, f64),
    // r2 <= second * relay2_second + first * relay2_first
    relay2: (f64, f64),
    // r1 + r2 <= first * sum_first;  r1 + r2 <= second * sum_second
    sum: (f64, f64),
}

/// `(alpha_i, beta_i, alpha_j, beta_j)`; `gamma_src_first` is the source's
/// link used in the first state, `gamma_dst_first` the destination's link
/// heard in the first state, and likewise for the second state.
fn direction_caps(
    [alpha_i, beta_i, alpha_j, beta_j]: [f64; 4],
    gamma_src_first: f64,
    gamma_src_second: f64,
    gamma_dst_first: f64,
    gamma_dst_second: f64,
    gamma_12: f64,
) -> DirectionCaps {
    let coherent = |g: f64, alpha: f64, beta: f64| {
        cap(g + (1.0 - beta) * gamma_12 + 2.0 * libm::sqrt((1.0 - alpha) * (1.0 - beta) * g * gamma_12))
    };
    DirectionCaps {
        own1: cap(alpha_i * gamma_src_first),
        own2: cap(alpha_j * gamma_src_second),
        relay1: (
            cap(beta_i * gamma_dst_first / (1.0 + (1.0 - beta_i) * gamma_dst_first)),
            cap((1.0 - beta_j) * gamma_dst_second),
        ),
        relay2: (
            cap((1.0 - beta_i) * gamma_dst_first),
            cap(beta_j * gamma_dst_second / (1.0 + (1.0 - beta_j) * gamma_dst_second)),
        ),
        sum: (coherent(gamma_src_first, alpha_i, beta_i), coherent(gamma_src_second, alpha_j, beta_j)),
    }
}

/// `A -> B` caps over states `(2, 1)` and `B -> A` caps over `(5, 6)`.
fn caps(channel: &ChannelConfig, p: &ArdfParams) -> (DirectionCaps, DirectionCaps) {
    let (a1, a2, b1, b2) = (channel.gamma_a1(), channel.gamma_a2(), channel.gamma_b1(), channel.gamma_b2());
    let g = channel.gamma_12().unwrap_or(0.0);
    let fwd = direction_caps([p.alpha[0], p.beta[0], p.alpha[1], p.beta[1]], a2, a1, b1, b2, g);
    let rev = direction_caps([p.alpha[2], p.beta[2], p.alpha[3], p.beta[3]], b2, b1, a1, a2, g);
    (fwd, rev)
}

fn add_direction(lp: &mut LpBuilder, c: &DirectionCaps, first: Var, second: Var, total: Var) {
    let [r1, r2] = lp.vars();
    lp.leq(&[(r1, 1.0), (first, -c.own1)], 0.0);
    lp.leq(&[(r2, 1.0), (second, -c.own2)], 0.0);
    lp.leq(&[(r1, 1.0), (first, -c.relay1.0), (second, -c.relay1.1)], 0.0);
    lp.leq(&[(r2, 1.0), (second, -c.relay2.1), (first, -c.relay2.0)], 0.0);
    lp.leq(&[(r1, 1.0), (r2, 1.0), (first, -c.sum.0)], 0.0);
    lp.leq(&[(r1, 1.0), (r2, 1.0), (second, -c.sum.1)], 0.0);
    lp.eq(&[(total, 1.0), (r1, -1.0), (r2, -1.0)], 0.0);
}

/// Best rate of one direction with its two time shares summing to one.
fn one_way_rate(c: &DirectionCaps) -> Result<f64> {
    let mut lp = LpBuilder::new();
    let [first, second, total] = lp.vars();
    add_direction(&mut lp, c, first, second, total);
    lp.eq(&[(first, 1.0), (second, 1.0)], 1.0);
    lp.maximize(&[(total, 1.0)]);
    let sol = linprog::solve(&lp.build())?;
    if !sol.is_optimal() {
        return Err(Error::Unsolved { what: "AR-DF one-way", status: sol.status.as_str() });
    }
    Ok(sol.objective_value)
}

/// AR-DF support point on ray `k` for fixed power splits.
pub fn ardf_support_with_params(channel: &ChannelConfig, k: f64, params: &ArdfParams) -> Result<SupportPoint> {
    channel.require("ardf_support", Variant::InterferingRelays)?;
    ray::check_ratio(k)?;
    let (fwd, rev) = caps(channel, params);
    let mut lp = LpBuilder::new();
    let [mu1, mu2, mu5, mu6, rate_a, rate_b] = lp.vars();
    add_direction(&mut lp, &fwd, mu2, mu1, rate_a);
    add_direction(&mut lp, &rev, mu5, mu6, rate_b);
    lp.eq(&[(mu1, 1.0), (mu2, 1.0), (mu5, 1.0), (mu6, 1.0)], 1.0);
    ray::constrain(&mut lp, rate_a, rate_b, k);
    let sol = linprog::solve(&lp.build())?;
    if !sol.is_optimal() {
        return Err(Error::Unsolved { what: "AR-DF", status: sol.status.as_str() });
    }
    let x = &sol.assignment;
    Ok(SupportPoint {
        k,
        rates: RatePair::new(x[rate_a.0], x[rate_b.0]),
        schedule: StateSchedule::from_pairs([(1, x[mu1.0]), (2, x[mu2.0]), (5, x[mu5.0]), (6, x[mu6.0])]),
    })
}

/// Per-direction caps at `mu` (states 1, 2, 5, 6 in that order): the largest
/// `R_a` and `R_b` the constraint block admits for fixed time shares.
pub fn rate_caps(channel: &ChannelConfig, params: &ArdfParams, mu: [f64; 4]) -> (f64, f64) {
    let (fwd, rev) = caps(channel, params);
    let eval = |c: &DirectionCaps, first: f64, second: f64| {
        let r1 = (first * c.own1).min(first * c.relay1.0 + second * c.relay1.1);
        let r2 = (second * c.own2).min(second * c.relay2.1 + first * c.relay2.0);
        (r1 + r2).min(first * c.sum.0).min(second * c.sum.1)
    };
    let [mu1, mu2, mu5, mu6] = mu;
    (eval(&fwd, mu2, mu1), eval(&rev, mu5, mu6))
}

/// Result of the parameter grid search for one channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ArdfSearch {
    channel: ChannelConfig,
    pub params: ArdfParams,
    /// One-way rates `(A -> B, B -> A)` at the chosen parameters.
    pub one_way: (f64, f64),
    pub grid_resolution: usize,
}

impl ArdfSearch {
    /// Searches `grid_resolution` points per parameter over `[0, 1]`.
    pub fn new(channel: &ChannelConfig, grid_resolution: usize) -> Result<Self> {
        channel.require("ardf_support", Variant::InterferingRelays)?;
        if grid_resolution < 2 {
            return Err(Error::InvalidArgument("AR-DF grid resolution must be at least 2"));
        }
        let step = 1.0 / (grid_resolution - 1) as f64;
        let level = |i: usize| (i as f64 * step).min(1.0);
        let mut best_a = (f64::NEG_INFINITY, [1.0; 4]);
        let mut best_b = (f64::NEG_INFINITY, [1.0; 4]);
        let n = grid_resolution;
        for idx in 0..n.pow(4) {
            let q = [level(idx % n), level(idx / n % n), level(idx / n / n % n), level(idx / n / n / n)];
            let params = ArdfParams { alpha: [q[0], q[2], q[0], q[2]], beta: [q[1], q[3], q[1], q[3]] };
            let (fwd, rev) = caps(channel, &params);
            let ra = one_way_rate(&fwd)?;
            if ra > best_a.0 + 1e-12 {
                best_a = (ra, q);
            }
            let rb = one_way_rate(&rev)?;
            if rb > best_b.0 + 1e-12 {
                best_b = (rb, q);
            }
        }
        let (qa, qb) = (best_a.1, best_b.1);
        let params = ArdfParams { alpha: [qa[0], qa[2], qb[0], qb[2]], beta: [qa[1], qa[3], qb[1], qb[3]] };
        Ok(Self { channel: *channel, params, one_way: (best_a.0, best_b.0), grid_resolution })
    }

    pub fn support(&self, k: f64) -> Result<SupportPoint> {
        ardf_support_with_params(&self.channel, k, &self.params)
    }
}

/// Best AR-DF support point on ray `k` over the parameter grid.
pub fn ardf_support(channel: &ChannelConfig, k: f64, grid_resolution: usize) -> Result<(SupportPoint, ArdfParams)> {
    let search = ArdfSearch::new(channel, grid_resolution)?;
    Ok((search.support(k)?, search.params))
}
