//! Half-duplex cut-set outer bounds.
//!
//! For the plain diamond the bound is generated from per-state cut values
//! ([`state_cut_capacity`]) over the six non-dominated states. The direct-link
//! and interfering-relay variants use fixed inequality blocks over ten states
//! each; their coefficients are tabulated in [`outer_rows`].

use alloc::vec::Vec;

use crate::channel::{cap, coherent_cap, ChannelConfig, HalfDuplexState, Node, NodeSet, Variant};
use crate::linprog::{self, LinearProgram, LpBuilder, Var};
use crate::protocols::{RatePair, StateSchedule, SupportPoint};
use crate::{ray, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    AToB,
    BToA,
}

impl Direction {
    pub fn source(self) -> Node {
        match self {
            Direction::AToB => Node::A,
            Direction::BToA => Node::B,
        }
    }

    pub fn destination(self) -> Node {
        match self {
            Direction::AToB => Node::B,
            Direction::BToA => Node::A,
        }
    }
}

/// A source-side node set separating the two terminals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CutId {
    direction: Direction,
    members: NodeSet,
}

impl CutId {
    /// The eight cuts, `A -> B` first: `{A}, {A,R1}, {A,R2}, {A,R1,R2}`, then
    /// the same with `B`.
    pub const ALL: [CutId; 8] = {
        const A: u8 = 0b0001;
        const B: u8 = 0b0010;
        const R1: u8 = 0b0100;
        const R2: u8 = 0b1000;
        const fn c(direction: Direction, bits: u8) -> CutId {
            CutId { direction, members: NodeSet::from_bits(bits) }
        }
        [
            c(Direction::AToB, A),
            c(Direction::AToB, A | R1),
            c(Direction::AToB, A | R2),
            c(Direction::AToB, A | R1 | R2),
            c(Direction::BToA, B),
            c(Direction::BToA, B | R1),
            c(Direction::BToA, B | R2),
            c(Direction::BToA, B | R1 | R2),
        ]
    };

    /// Builds a cut, checking that it holds the source and not the destination.
    pub fn new(direction: Direction, members: NodeSet) -> Result<Self> {
        if members.contains(direction.source()) && !members.contains(direction.destination()) {
            Ok(Self { direction, members })
        } else {
            Err(Error::InvalidArgument("cut must contain the source and exclude the destination"))
        }
    }

    pub fn direction(self) -> Direction {
        self.direction
    }

    pub fn members(self) -> NodeSet {
        self.members
    }
}

/// Per-unit-time cut value of `state` across `cut` on the plain diamond.
///
/// Links from a transmitter inside the cut to a receiver outside it are
/// grouped into connected components: a broadcast from one transmitter
/// contributes `C(sum gamma)`, coherent transmitters into one receiver
/// contribute `C((sum sqrt(gamma))^2)` and separate components add.
pub fn state_cut_capacity(state: HalfDuplexState, cut: CutId, channel: &ChannelConfig) -> Result<f64> {
    channel.require("state_cut_capacity", Variant::Plain)?;
    Ok(crossing_value(state, cut, channel))
}

fn crossing_value(state: HalfDuplexState, cut: CutId, channel: &ChannelConfig) -> f64 {
    let mut links: Vec<(Node, Node, f64)> = Vec::new();
    for tx in state.transmitters().iter().filter(|n| cut.members.contains(*n)) {
        for rx in state.receivers().iter().filter(|n| !cut.members.contains(*n)) {
            if let Some(g) = channel.link(tx, rx) {
                links.push((tx, rx, g));
            }
        }
    }

    let mut total = 0.0;
    let mut used = alloc::vec![false; links.len()];
    for start in 0..links.len() {
        if used[start] {
            continue;
        }
        // Flood the component containing `start`.
        let mut component = NodeSet::of(&[links[start].0, links[start].1]);
        let mut grew = true;
        while grew {
            grew = false;
            for (i, (t, r, _)) in links.iter().enumerate() {
                if !used[i] && (component.contains(*t) || component.contains(*r)) {
                    used[i] = true;
                    component = component.iter().chain([*t, *r]).collect();
                    grew = true;
                }
            }
        }
        let members: Vec<&(Node, Node, f64)> =
            links.iter().filter(|(t, _, _)| component.contains(*t)).collect();
        let txs: NodeSet = members.iter().map(|l| l.0).collect();
        let rxs: NodeSet = members.iter().map(|l| l.1).collect();
        let gammas: Vec<f64> = members.iter().map(|l| l.2).collect();
        total += if txs.len() == 1 {
            cap(gammas.iter().sum())
        } else {
            // Several transmitters share a component only through a common
            // receiver on the plain diamond (no A-B or R1-R2 link).
            debug_assert_eq!(rxs.len(), 1, "multi-receiver MIMO crossing in state {state:?}");
            coherent_cap(&gammas)
        };
    }
    total
}

/// All eight cut values of `state` in [`CutId::ALL`] order.
pub fn cut_vector(state: HalfDuplexState, channel: &ChannelConfig) -> Result<[f64; 8]> {
    channel.require("cut_vector", Variant::Plain)?;
    Ok(CutId::ALL.map(|cut| crossing_value(state, cut, channel)))
}

/// For each state `1..=14`, a state among `{13, 14}` whose every cut value is
/// at least as large, or `None`.
pub fn dominance_report(channel: &ChannelConfig) -> Result<Vec<(u8, Option<u8>)>> {
    channel.require("dominance_report", Variant::Plain)?;
    let tol = 1e-12;
    let dominators = [13u8, 14];
    let vectors: Vec<[f64; 8]> =
        crate::channel::STATES.iter().map(|s| CutId::ALL.map(|c| crossing_value(*s, c, channel))).collect();
    Ok((1u8..=14)
        .map(|i| {
            let vi = &vectors[i as usize - 1];
            let dom = dominators.into_iter().filter(|j| *j != i).find(|j| {
                let vj = &vectors[*j as usize - 1];
                vj.iter().zip(vi).all(|(a, b)| *a >= *b - tol)
            });
            (i, dom)
        })
        .collect())
}

/// Default state set of the outer bound for each variant.
pub fn outer_states(variant: Variant) -> &'static [u8] {
    match variant {
        Variant::Plain => &[1, 2, 5, 6, 13, 14],
        Variant::DirectLink => &[1, 2, 3, 4, 5, 6, 7, 8, 13, 14],
        Variant::InterferingRelays => &[1, 2, 5, 6, 9, 10, 11, 12, 13, 14],
    }
}

/// One rate inequality `R <= sum_s coeff_s * mu_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct CutRow {
    pub direction: Direction,
    pub terms: Vec<(u8, f64)>,
}

impl CutRow {
    pub fn coeff(&self, state: u8) -> f64 {
        self.terms.iter().filter(|(s, _)| *s == state).map(|(_, c)| c).sum()
    }
}

fn row(direction: Direction, terms: &[(u8, f64)]) -> CutRow {
    CutRow { direction, terms: terms.to_vec() }
}

/// The eight outer-bound inequalities of `channel`'s variant, over
/// [`outer_states`].
pub fn outer_rows(channel: &ChannelConfig) -> Vec<CutRow> {
    match channel.variant() {
        Variant::Plain => plain_rows(channel, outer_states(Variant::Plain)),
        Variant::DirectLink => direct_link_rows(channel),
        Variant::InterferingRelays => interfering_rows(channel),
    }
}

/// Plain-diamond inequalities generated from cut values over `states`.
pub fn plain_rows(channel: &ChannelConfig, states: &[u8]) -> Vec<CutRow> {
    CutId::ALL
        .iter()
        .map(|cut| CutRow {
            direction: cut.direction,
            terms: states
                .iter()
                .map(|&s| (s, crossing_value(HalfDuplexState::of(s), *cut, channel)))
                .collect(),
        })
        .collect()
}

fn direct_link_rows(ch: &ChannelConfig) -> Vec<CutRow> {
    use Direction::*;
    let (a1, a2, b1, b2) = (ch.gamma_a1(), ch.gamma_a2(), ch.gamma_b1(), ch.gamma_b2());
    let ab = ch.gamma_ab().unwrap_or(0.0);
    let c = cap;
    let coh = coherent_cap;
    alloc::vec![
        row(AToB, &[(14, c(a1 + a2)), (4, c(ab)), (2, c(a2 + ab)), (1, c(a1 + ab)), (3, c(a1 + a2 + ab))]),
        row(
            AToB,
            &[
                (14, c(a2)),
                (13, c(b1)),
                (4, coh(&[b1, ab])),
                (2, c(b1) + c(a2 + ab)),
                (1, c(ab)),
                (3, c(a2 + ab)),
            ],
        ),
        row(
            AToB,
            &[
                (14, c(a1)),
                (13, c(b2)),
                (4, coh(&[b2, ab])),
                (2, c(ab)),
                (1, c(b2) + c(a1 + ab)),
                (3, c(a1 + ab)),
            ],
        ),
        row(
            AToB,
            &[
                (13, coh(&[b1, b2])),
                (4, coh(&[b1, b2, ab])),
                (2, coh(&[b1, ab])),
                (1, coh(&[b2, ab])),
                (3, c(ab)),
            ],
        ),
        row(BToA, &[(14, c(b1 + b2)), (8, c(ab)), (6, c(b2 + ab)), (5, c(b1 + ab)), (7, c(b1 + b2 + ab))]),
        row(
            BToA,
            &[
                (14, c(b2)),
                (13, c(a1)),
                (8, coh(&[a1, ab])),
                (6, c(a1) + c(b2 + ab)),
                (5, c(ab)),
                (7, c(b2 + ab)),
            ],
        ),
        row(
            BToA,
            &[
                (14, c(b1)),
                (13, c(a2)),
                (8, coh(&[a2, ab])),
                (6, c(ab)),
                (5, c(a2) + c(b1 + ab)),
                (7, c(b1 + ab)),
            ],
        ),
        row(
            BToA,
            &[
                (13, coh(&[a1, a2])),
                (8, coh(&[a1, a2, ab])),
                (6, coh(&[a1, ab])),
                (5, coh(&[a2, ab])),
                (7, c(ab)),
            ],
        ),
    ]
}

fn interfering_rows(ch: &ChannelConfig) -> Vec<CutRow> {
    use Direction::*;
    let (a1, a2, b1, b2) = (ch.gamma_a1(), ch.gamma_a2(), ch.gamma_b1(), ch.gamma_b2());
    let g = ch.gamma_12().unwrap_or(0.0);
    let c = cap;
    let coh = coherent_cap;
    alloc::vec![
        row(AToB, &[(14, c(a1 + a2)), (10, c(a2)), (2, c(a2)), (9, c(a1)), (1, c(a1))]),
        row(
            AToB,
            &[
                (14, c(a2)),
                (13, c(b1)),
                (10, coh(&[a2, g])),
                (2, c(a2) + c(b1 + g)),
                (11, c(b1 + g)),
                (6, c(g)),
            ],
        ),
        row(
            AToB,
            &[
                (14, c(a1)),
                (13, c(b2)),
                (9, coh(&[a1, g])),
                (1, c(a1) + c(b2 + g)),
                (12, c(b2 + g)),
                (5, c(g)),
            ],
        ),
        row(AToB, &[(13, coh(&[b1, b2])), (2, c(b1)), (1, c(b2)), (11, c(b1)), (12, c(b2))]),
        row(BToA, &[(14, c(b1 + b2)), (10, c(b2)), (9, c(b1)), (5, c(b1)), (6, c(b2))]),
        // The printed block has an unbalanced parenthesis after mu_2; each
        // state carries a single capacity term here.
        row(
            BToA,
            &[
                (14, c(b2)),
                (13, c(a1)),
                (10, coh(&[b2, g])),
                (2, c(g)),
                (11, c(a1 + g)),
                (6, c(b2) + c(a1 + g)),
            ],
        ),
        row(
            BToA,
            &[
                (14, c(b1)),
                (13, c(a2)),
                (9, coh(&[b1, g])),
                (1, c(g)),
                (5, c(b1) + c(a2 + g)),
                (12, c(a2 + g)),
            ],
        ),
        row(BToA, &[(13, coh(&[a1, a2])), (11, c(a1)), (5, c(a2)), (12, c(a2)), (6, c(a1))]),
    ]
}

/// The outer-bound LP on ray `k` with its variable layout.
#[derive(Debug, Clone)]
pub struct OuterBoundLp {
    pub channel: ChannelConfig,
    pub states: Vec<u8>,
    pub mu: Vec<Var>,
    pub rate_a: Var,
    pub rate_b: Var,
    pub k: f64,
    pub lp: LinearProgram,
}

impl OuterBoundLp {
    pub fn solve(&self) -> Result<SupportPoint> {
        let sol = linprog::solve(&self.lp)?;
        if !sol.is_optimal() {
            return Err(Error::Unsolved { what: "outer bound", status: sol.status.as_str() });
        }
        let x = &sol.assignment;
        Ok(SupportPoint {
            k: self.k,
            rates: RatePair::new(x[self.rate_a.0], x[self.rate_b.0]),
            schedule: StateSchedule::from_pairs(self.states.iter().zip(&self.mu).map(|(s, v)| (*s, x[v.0]))),
        })
    }
}

/// Builds the LP for an explicit list of inequality rows.
pub fn lp_from_rows(channel: &ChannelConfig, states: &[u8], rows: &[CutRow], k: f64) -> Result<OuterBoundLp> {
    ray::check_ratio(k)?;
    let mut b = LpBuilder::new();
    let mu: Vec<Var> = states.iter().map(|_| b.var()).collect();
    let [rate_a, rate_b] = b.vars();
    for r in rows {
        let rate = match r.direction {
            Direction::AToB => rate_a,
            Direction::BToA => rate_b,
        };
        let mut terms = alloc::vec![(rate, 1.0)];
        for (s, coeff) in &r.terms {
            let idx = states
                .iter()
                .position(|x| x == s)
                .ok_or(Error::InvalidArgument("cut row references a state outside the LP"))?;
            terms.push((mu[idx], -coeff));
        }
        b.leq(&terms, 0.0);
    }
    let simplex: Vec<(Var, f64)> = mu.iter().map(|v| (*v, 1.0)).collect();
    b.eq(&simplex, 1.0);
    ray::constrain(&mut b, rate_a, rate_b, k);
    Ok(OuterBoundLp { channel: *channel, states: states.to_vec(), mu, rate_a, rate_b, k, lp: b.build() })
}

/// Outer-bound LP for any variant on ray `k`.
pub fn build_outer_lp(channel: &ChannelConfig, k: f64) -> Result<OuterBoundLp> {
    let states = outer_states(channel.variant());
    lp_from_rows(channel, states, &outer_rows(channel), k)
}

/// Plain-diamond outer-bound LP over a caller-chosen state set.
pub fn build_plain_lp_with_states(channel: &ChannelConfig, states: &[u8], k: f64) -> Result<OuterBoundLp> {
    channel.require("build_plain_lp_with_states", Variant::Plain)?;
    if states.is_empty() || states.iter().any(|s| HalfDuplexState::get(*s).is_none()) {
        return Err(Error::InvalidArgument("state ids must be a non-empty subset of 1..=14"));
    }
    lp_from_rows(channel, states, &plain_rows(channel, states), k)
}

/// Outer-bound support point on ray `k`.
pub fn outer_support(channel: &ChannelConfig, k: f64) -> Result<SupportPoint> {
    build_outer_lp(channel, k)?.solve()
}
