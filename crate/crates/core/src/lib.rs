//! Capacity outer bounds and protocol rate regions for the Gaussian two-way
//! diamond relay channel.
//!
//! Two terminals `A` and `B` exchange messages through two half-duplex relays
//! `R1` and `R2`. Three network variants are covered: the plain diamond, the
//! diamond with a direct `A`–`B` link, and the diamond with a link between the
//! relays. For each variant this crate builds the half-duplex cut-set outer
//! bound as a linear program over state time-shares, and computes the
//! achievable regions of the relaying protocols:
//!
//! - two-way multihop decode-and-forward ([`protocols::mdf`]),
//! - compute-and-forward with a compound-MAC forward phase ([`protocols::cf`]),
//! - compute-and-forward with time-shared broadcasts ([`protocols::cf`]),
//! - two-relay cooperative MAC/broadcast over a direct link ([`protocols::comabc`]),
//! - two-way alternating-relay decode-and-forward ([`protocols::ardf`]).
//!
//! Regions are traced by rays through the origin: at ratio `k` the support
//! point is the largest rate pair with `R_b = k * R_a`. `k = 0` is the
//! one-way `A -> B` axis and `k = +inf` the one-way `B -> A` axis.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled. File formats, the CLI and parallel sweeps live in `diamond-cli`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod channel;
pub mod cutset;
mod error;
pub mod linprog;
pub mod protocols;
mod ray;
pub mod regions;

pub use channel::{
    capacity, snr_from_db, ChannelConfig, Convention, HalfDuplexState, Node, NodeSet, Preset,
    Variant,
};
pub use error::{Error, Result};
pub use linprog::{LinearProgram, LpError, LpSolution, LpStatus};
pub use protocols::{Protocol, RatePair, StateSchedule, SupportPoint};
pub use regions::{RateRegion, RegionKind, Sample};
