//! Compute-and-forward protocols.
//!
//! In the compute phases (state 9 for `R1`, state 10 for `R2`) both terminals
//! transmit and the relay decodes a lattice sum of the two messages. The sum
//! is forwarded either by both relays at once over a compound MAC (state 13,
//! CF-CMAC) or by one relay at a time over a broadcast (states 11 and 12,
//! CF-BC). Flow conservation ties what a relay learns from one terminal to
//! what it delivers to the other.

use alloc::collections::BTreeMap;

use crate::channel::{cap, ChannelConfig, Node};
use crate::linprog::{self, LpBuilder, Var};
use crate::protocols::{positive_part, relay_snrs, share, RatePair, StateSchedule, SupportPoint};
use crate::{ray, Error, Result};

/// Per-unit-time compute-phase limits `(F_a, F_b)` at `relay`, scaled by the
/// channel's convention.
pub fn cf_compute_phase_bounds(channel: &ChannelConfig, relay: Node) -> Result<(f64, f64)> {
    if !matches!(relay, Node::R1 | Node::R2) {
        return Err(Error::InvalidArgument("compute phase is defined for relays R1 and R2"));
    }
    let (ga, gb) = relay_snrs(channel, relay);
    let scale = channel.convention().compute_scale();
    let rate = |own: f64, other: f64| positive_part(scale * libm::log2(share(own, other) + own));
    Ok((rate(ga, gb), rate(gb, ga)))
}

/// Information flows `F^s_{t,r}` keyed by `(state, transmitter, receiver)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FlowAllocation {
    pub flows: BTreeMap<(u8, Node, Node), f64>,
    pub rates: RatePair,
}

impl FlowAllocation {
    pub fn get(&self, state: u8, from: Node, to: Node) -> f64 {
        self.flows.get(&(state, from, to)).copied().unwrap_or(0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CfSupport {
    pub point: SupportPoint,
    pub flows: FlowAllocation,
}

#[derive(Clone, Copy)]
enum Forward {
    CompoundMac,
    Broadcast,
}

fn cf_support(channel: &ChannelConfig, k: f64, forward: Forward) -> Result<CfSupport> {
    ray::check_ratio(k)?;
    let (ca1, cb1) = cf_compute_phase_bounds(channel, Node::R1)?;
    let (ca2, cb2) = cf_compute_phase_bounds(channel, Node::R2)?;
    let (a1, a2, b1, b2) = (channel.gamma_a1(), channel.gamma_a2(), channel.gamma_b1(), channel.gamma_b2());

    let mut lp = LpBuilder::new();
    let [mu9, mu10] = lp.vars();
    // Compute-phase flows into the relays.
    let [a_r1, b_r1, a_r2, b_r2] = lp.vars();
    // Forward-phase flows out of the relays.
    let [r1_a, r1_b, r2_a, r2_b] = lp.vars();
    let [rate_a, rate_b] = lp.vars();

    lp.leq(&[(a_r1, 1.0), (mu9, -ca1)], 0.0);
    lp.leq(&[(b_r1, 1.0), (mu9, -cb1)], 0.0);
    lp.leq(&[(a_r2, 1.0), (mu10, -ca2)], 0.0);
    lp.leq(&[(b_r2, 1.0), (mu10, -cb2)], 0.0);

    let forward_states: (u8, u8);
    let forward_mu: alloc::vec::Vec<Var> = match forward {
        Forward::CompoundMac => {
            let mu13 = lp.var();
            lp.leq(&[(r1_a, 1.0), (mu13, -cap(a1))], 0.0);
            lp.leq(&[(r1_b, 1.0), (mu13, -cap(b1))], 0.0);
            lp.leq(&[(r2_a, 1.0), (mu13, -cap(a2))], 0.0);
            lp.leq(&[(r2_b, 1.0), (mu13, -cap(b2))], 0.0);
            lp.leq(&[(r1_a, 1.0), (r2_a, 1.0), (mu13, -cap(a1 + a2))], 0.0);
            lp.leq(&[(r1_b, 1.0), (r2_b, 1.0), (mu13, -cap(b1 + b2))], 0.0);
            forward_states = (13, 13);
            alloc::vec![mu13]
        }
        Forward::Broadcast => {
            let [mu11, mu12] = lp.vars();
            lp.leq(&[(r1_a, 1.0), (mu11, -cap(a1))], 0.0);
            lp.leq(&[(r1_b, 1.0), (mu11, -cap(b1))], 0.0);
            lp.leq(&[(r2_a, 1.0), (mu12, -cap(a2))], 0.0);
            lp.leq(&[(r2_b, 1.0), (mu12, -cap(b2))], 0.0);
            forward_states = (11, 12);
            alloc::vec![mu11, mu12]
        }
    };

    // What a relay learns from one terminal it delivers to the other.
    lp.eq(&[(a_r1, 1.0), (r1_b, -1.0)], 0.0);
    lp.eq(&[(b_r1, 1.0), (r1_a, -1.0)], 0.0);
    lp.eq(&[(a_r2, 1.0), (r2_b, -1.0)], 0.0);
    lp.eq(&[(b_r2, 1.0), (r2_a, -1.0)], 0.0);
    lp.eq(&[(rate_a, 1.0), (a_r1, -1.0), (a_r2, -1.0)], 0.0);
    lp.eq(&[(rate_b, 1.0), (b_r1, -1.0), (b_r2, -1.0)], 0.0);

    let mut simplex = alloc::vec![(mu9, 1.0), (mu10, 1.0)];
    simplex.extend(forward_mu.iter().map(|v| (*v, 1.0)));
    lp.eq(&simplex, 1.0);
    ray::constrain(&mut lp, rate_a, rate_b, k);

    let sol = linprog::solve(&lp.build())?;
    if !sol.is_optimal() {
        return Err(Error::Unsolved { what: "compute-and-forward", status: sol.status.as_str() });
    }
    let x = |v: Var| sol.assignment[v.0];

    let mut schedule = StateSchedule::from_pairs([(9, x(mu9)), (10, x(mu10))]);
    let (s_r1, s_r2) = forward_states;
    match forward {
        Forward::CompoundMac => schedule.add(13, x(forward_mu[0])),
        Forward::Broadcast => {
            schedule.add(11, x(forward_mu[0]));
            schedule.add(12, x(forward_mu[1]));
        }
    }
    let rates = RatePair::new(x(rate_a), x(rate_b));
    let flows = BTreeMap::from([
        ((9, Node::A, Node::R1), x(a_r1)),
        ((9, Node::B, Node::R1), x(b_r1)),
        ((10, Node::A, Node::R2), x(a_r2)),
        ((10, Node::B, Node::R2), x(b_r2)),
        ((s_r1, Node::R1, Node::A), x(r1_a)),
        ((s_r1, Node::R1, Node::B), x(r1_b)),
        ((s_r2, Node::R2, Node::A), x(r2_a)),
        ((s_r2, Node::R2, Node::B), x(r2_b)),
    ]);
    Ok(CfSupport { point: SupportPoint { k, rates, schedule }, flows: FlowAllocation { flows, rates } })
}

/// CF-CMAC support point on ray `k` (states 9, 10, 13).
pub fn cf_cmac_support(channel: &ChannelConfig, k: f64) -> Result<CfSupport> {
    cf_support(channel, k, Forward::CompoundMac)
}

/// CF-BC support point on ray `k` (states 9–12).
pub fn cf_bc_support(channel: &ChannelConfig, k: f64) -> Result<CfSupport> {
    cf_support(channel, k, Forward::Broadcast)
}
