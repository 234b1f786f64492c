//! Two-relay cooperative MAC/broadcast (CoMABC) over the direct-link diamond.
//!
//! Each relay runs a three-state protocol of its own: a compute-phase MAC
//! (state 9 or 10), a broadcast (state 11 or 12), and a cooperative state in
//! which the terminal with the better relay link and the relay jointly
//! transmit to the other terminal over the direct link. The cooperative
//! state is chosen per relay by comparing its two terminal SNRs.

use crate::channel::{cap, ChannelConfig, Node, Variant};
use crate::linprog::{self, LpBuilder, Var};
use crate::protocols::{positive_part, relay_snrs, share, RatePair, StateSchedule, SupportPoint};
use crate::{ray, Error, Result};

/// `[C(gamma_x - gamma_y / (gamma_x + gamma_y))]^+`, the compute rate of the
/// terminal with SNR `gamma_x`.
pub fn compute_rate(gamma_x: f64, gamma_y: f64) -> f64 {
    positive_part(libm::log2(1.0 + gamma_x - share(gamma_y, gamma_x)))
}

/// Cooperative state used with `relay`: the `A`-side state when
/// `gamma_a >= gamma_b`, the `B`-side state otherwise.
pub fn cooperative_state(channel: &ChannelConfig, relay: Node) -> u8 {
    let (ga, gb) = relay_snrs(channel, relay);
    match (relay, ga >= gb) {
        (Node::R1, true) => 2,
        (Node::R1, false) => 6,
        (Node::R2, true) => 1,
        (Node::R2, false) => 5,
        _ => unreachable!("relay must be R1 or R2"),
    }
}

/// CoMABC support point on ray `k`.
pub fn comabc_support(channel: &ChannelConfig, k: f64) -> Result<SupportPoint> {
    channel.require("comabc_support", Variant::DirectLink)?;
    ray::check_ratio(k)?;
    let ab = channel.gamma_ab().unwrap_or(0.0);

    let mut lp = LpBuilder::new();
    let [rate_a, rate_b] = lp.vars();
    let mut schedule_vars: alloc::vec::Vec<(u8, Var)> = alloc::vec::Vec::new();
    let mut sub_a = alloc::vec![(rate_a, 1.0)];
    let mut sub_b = alloc::vec![(rate_b, 1.0)];

    for (relay, mac_state, bc_state) in [(Node::R1, 9u8, 11u8), (Node::R2, 10, 12)] {
        let (ga, gb) = relay_snrs(channel, relay);
        let ra_star = compute_rate(ga, gb);
        let rb_star = compute_rate(gb, ga);
        let coop_state = cooperative_state(channel, relay);
        let [mu_mac, mu_bc, mu_coop, ra_i, rb_i] = lp.vars();
        schedule_vars.extend([(mac_state, mu_mac), (bc_state, mu_bc), (coop_state, mu_coop)]);
        sub_a.push((ra_i, -1.0));
        sub_b.push((rb_i, -1.0));

        // The helped direction gets the direct-link terms; `helped` is the
        // flow from the terminal with the better link to this relay.
        let (helped, other, own_star, other_star, g_helped_dst, g_other_dst) = if ga >= gb {
            (ra_i, rb_i, ra_star, rb_star, gb, ga)
        } else {
            (rb_i, ra_i, rb_star, ra_star, ga, gb)
        };
        lp.leq(&[(helped, 1.0), (mu_mac, -own_star), (mu_coop, -cap(ab))], 0.0);
        lp.leq(&[(helped, 1.0), (mu_bc, -cap(g_helped_dst)), (mu_coop, -cap(g_helped_dst + ab))], 0.0);
        lp.leq(&[(other, 1.0), (mu_mac, -other_star)], 0.0);
        lp.leq(&[(other, 1.0), (mu_bc, -cap(g_other_dst))], 0.0);
    }
    lp.eq(&sub_a, 0.0);
    lp.eq(&sub_b, 0.0);
    let simplex: alloc::vec::Vec<(Var, f64)> = schedule_vars.iter().map(|(_, v)| (*v, 1.0)).collect();
    lp.eq(&simplex, 1.0);
    ray::constrain(&mut lp, rate_a, rate_b, k);

    let sol = linprog::solve(&lp.build())?;
    if !sol.is_optimal() {
        return Err(Error::Unsolved { what: "CoMABC", status: sol.status.as_str() });
    }
    let x = &sol.assignment;
    Ok(SupportPoint {
        k,
        rates: RatePair::new(x[rate_a.0], x[rate_b.0]),
        schedule: StateSchedule::from_pairs(schedule_vars.iter().map(|(s, v)| (*s, x[v.0]))),
    })
}
