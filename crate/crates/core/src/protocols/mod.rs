//! Achievable rate regions of the relaying protocols.
//!
//! Every generator answers the same question: for a ray ratio `k`, what is
//! the largest achievable rate pair with `R_b = k * R_a`, and which state
//! schedule achieves it.

pub mod ardf;
pub mod cf;
pub mod comabc;
pub mod mdf;

use alloc::collections::BTreeMap;
use core::fmt;
use core::str::FromStr;

use crate::channel::{ChannelConfig, Node, Variant};
use crate::{Error, Result};

pub use ardf::{ardf_support, ardf_support_with_params, ArdfParams, ArdfSearch};
pub use cf::{cf_bc_support, cf_cmac_support, cf_compute_phase_bounds, CfSupport, FlowAllocation};
pub use comabc::comabc_support;
pub use mdf::{mdf_one_way, mdf_two_way_region, mdf_two_way_support, MdfOptions};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RatePair {
    pub ra: f64,
    pub rb: f64,
}

impl RatePair {
    pub fn new(ra: f64, rb: f64) -> Self {
        Self { ra, rb }
    }

    /// `R_a + R_b`; along a fixed ray this orders points by distance from
    /// the origin.
    pub fn sum(&self) -> f64 {
        self.ra + self.rb
    }

    pub fn swapped(&self) -> Self {
        Self { ra: self.rb, rb: self.ra }
    }
}

/// Time-share fractions per half-duplex state id.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StateSchedule(BTreeMap<u8, f64>);

impl StateSchedule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u8, f64)>) -> Self {
        let mut s = Self::new();
        for (id, mu) in pairs {
            s.add(id, mu);
        }
        s
    }

    pub fn add(&mut self, state: u8, mu: f64) {
        *self.0.entry(state).or_insert(0.0) += mu;
    }

    pub fn get(&self, state: u8) -> f64 {
        self.0.get(&state).copied().unwrap_or(0.0)
    }

    pub fn contains(&self, state: u8) -> bool {
        self.0.contains_key(&state)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u8, f64)> + '_ {
        self.0.iter().map(|(k, v)| (*k, *v))
    }

    pub fn total(&self) -> f64 {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self * w + other * (1 - w)`, over the union of both state sets.
    pub fn mix(&self, w: f64, other: &StateSchedule) -> Self {
        let mut out = Self::new();
        for (id, mu) in self.iter() {
            out.add(id, w * mu);
        }
        for (id, mu) in other.iter() {
            out.add(id, (1.0 - w) * mu);
        }
        out
    }

    /// Relabels states under the `A <-> B` exchange.
    pub fn mirrored(&self) -> Self {
        Self::from_pairs(self.iter().map(|(id, mu)| (crate::HalfDuplexState::of(id).mirrored().id(), mu)))
    }

    /// Checks the simplex invariant: all fractions `>= -tol` and the total
    /// within `tol` of one.
    pub fn is_distribution(&self, tol: f64) -> bool {
        self.0.values().all(|m| *m >= -tol) && (self.total() - 1.0).abs() <= tol
    }
}

/// A boundary point of a region on ray `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportPoint {
    pub k: f64,
    pub rates: RatePair,
    pub schedule: StateSchedule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Protocol {
    Mdf,
    CfCmac,
    CfBc,
    Comabc,
    ArDf,
}

impl Protocol {
    pub const ALL: [Protocol; 5] =
        [Protocol::Mdf, Protocol::CfCmac, Protocol::CfBc, Protocol::Comabc, Protocol::ArDf];

    pub fn name(self) -> &'static str {
        match self {
            Protocol::Mdf => "mdf",
            Protocol::CfCmac => "cf-cmac",
            Protocol::CfBc => "cf-bc",
            Protocol::Comabc => "comabc",
            Protocol::ArDf => "ar-df",
        }
    }

    /// Whether the protocol is defined on channels of `variant`.
    pub fn supports(self, variant: Variant) -> bool {
        match self {
            Protocol::Mdf | Protocol::CfCmac | Protocol::CfBc => true,
            Protocol::Comabc => variant == Variant::DirectLink,
            Protocol::ArDf => variant == Variant::InterferingRelays,
        }
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Protocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Protocol::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or(Error::InvalidArgument("unknown protocol"))
    }
}

/// `[x]^+`, also mapping NaN (from a logarithm of a non-positive argument)
/// to zero.
pub(crate) fn positive_part(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// `gamma_x / (gamma_x + gamma_y)` with `0 / 0 := 0`.
pub(crate) fn share(gamma_x: f64, gamma_y: f64) -> f64 {
    let total = gamma_x + gamma_y;
    if total > 0.0 {
        gamma_x / total
    } else {
        0.0
    }
}

/// The terminal-relay SNR pair `(gamma_a, gamma_b)` of relay `relay`.
pub(crate) fn relay_snrs(channel: &ChannelConfig, relay: Node) -> (f64, f64) {
    (channel.terminal_relay(Node::A, relay), channel.terminal_relay(Node::B, relay))
}
