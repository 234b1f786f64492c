//! Network variants, link SNRs and the point-to-point capacity function.
//!
//! SNRs are stored on a linear scale. Decibels only appear at the I/O
//! boundary through [`snr_from_db`] and the caption presets.

mod state;

pub use state::{HalfDuplexState, Node, NodeSet, STATES};

use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// `log2(1 + gamma)`, the capacity of a complex AWGN link in bits per use.
pub fn capacity(gamma: f64) -> Result<f64> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::Domain { what: "SNR", value: gamma });
    }
    Ok(cap(gamma))
}

/// Unchecked `log2(1 + gamma)` for already validated SNR expressions.
#[inline]
pub(crate) fn cap(gamma: f64) -> f64 {
    libm::log2(1.0 + gamma)
}

/// `C((sqrt(x) + sqrt(y) + ...)^2)`: coherent combining of several transmitters
/// at one receiver.
pub(crate) fn coherent_cap(gammas: &[f64]) -> f64 {
    let amplitude: f64 = gammas.iter().map(|g| libm::sqrt(*g)).sum();
    cap(amplitude * amplitude)
}

/// `10^(value_db / 10)`.
pub fn snr_from_db(value_db: f64) -> Result<f64> {
    if !value_db.is_finite() {
        return Err(Error::Domain { what: "SNR in dB", value: value_db });
    }
    Ok(libm::pow(10.0, value_db / 10.0))
}

/// Inverse of [`snr_from_db`]; zero maps to `-inf`.
pub fn snr_to_db(gamma: f64) -> f64 {
    10.0 * libm::log10(gamma)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// No `A`–`B` link and no `R1`–`R2` link.
    Plain,
    /// Adds the direct `A`–`B` link with SNR `gamma_ab`.
    DirectLink,
    /// Adds the `R1`–`R2` link with SNR `gamma_12`.
    InterferingRelays,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::DirectLink => "direct_link",
            Variant::InterferingRelays => "interfering_relays",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Variant::Plain),
            "direct_link" => Ok(Variant::DirectLink),
            "interfering_relays" => Ok(Variant::InterferingRelays),
            _ => Err(Error::InvalidChannel("unknown variant")),
        }
    }
}

/// Signalling convention for the compute-phase (lattice) rates.
///
/// `AsPrinted` keeps the factor one half of the real-valued lattice rate;
/// `Complex` drops it so that every rate uses `log2(1 + gamma)` scaling.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    AsPrinted,
    #[default]
    Complex,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::AsPrinted => "as_printed",
            Convention::Complex => "complex",
        }
    }

    /// Multiplier in front of the compute-phase logarithm.
    pub fn compute_scale(self) -> f64 {
        match self {
            Convention::AsPrinted => 0.5,
            Convention::Complex => 1.0,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as_printed" | "as-printed" => Ok(Convention::AsPrinted),
            "complex" => Ok(Convention::Complex),
            _ => Err(Error::InvalidChannel("unknown convention")),
        }
    }
}

/// Linear link SNRs of one network variant.
///
/// Fields are private so that the variant/optional-link pairing always holds;
/// build values through [`ChannelConfig::plain`], [`ChannelConfig::direct_link`]
/// or [`ChannelConfig::interfering_relays`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    variant: Variant,
    gamma_a1: f64,
    gamma_a2: f64,
    gamma_b1: f64,
    gamma_b2: f64,
    gamma_ab: Option<f64>,
    gamma_12: Option<f64>,
    convention: Convention,
}

fn check_snr(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain { what, value })
    }
}

impl ChannelConfig {
    pub fn plain(gamma_a1: f64, gamma_a2: f64, gamma_b1: f64, gamma_b2: f64) -> Result<Self> {
        Ok(Self {
            variant: Variant::Plain,
            gamma_a1: check_snr("gamma_a1", gamma_a1)?,
            gamma_a2: check_snr("gamma_a2", gamma_a2)?,
            gamma_b1: check_snr("gamma_b1", gamma_b1)?,
            gamma_b2: check_snr("gamma_b2", gamma_b2)?,
            gamma_ab: None,
            gamma_12: None,
            convention: Convention::default(),
        })
    }

    pub fn direct_link(
        gamma_a1: f64,
        gamma_a2: f64,
        gamma_b1: f64,
        gamma_b2: f64,
        gamma_ab: f64,
    ) -> Result<Self> {
        let mut c = Self::plain(gamma_a1, gamma_a2, gamma_b1, gamma_b2)?;
        c.variant = Variant::DirectLink;
        c.gamma_ab = Some(check_snr("gamma_ab", gamma_ab)?);
        Ok(c)
    }

    pub fn interfering_relays(
        gamma_a1: f64,
        gamma_a2: f64,
        gamma_b1: f64,
        gamma_b2: f64,
        gamma_12: f64,
    ) -> Result<Self> {
        let mut c = Self::plain(gamma_a1, gamma_a2, gamma_b1, gamma_b2)?;
        c.variant = Variant::InterferingRelays;
        c.gamma_12 = Some(check_snr("gamma_12", gamma_12)?);
        Ok(c)
    }

    /// Builds a config from optional extra links, enforcing that `gamma_ab`
    /// is present exactly for the direct-link variant and `gamma_12` exactly
    /// for the interfering-relays variant.
    pub fn new(
        variant: Variant,
        [gamma_a1, gamma_a2, gamma_b1, gamma_b2]: [f64; 4],
        gamma_ab: Option<f64>,
        gamma_12: Option<f64>,
    ) -> Result<Self> {
        match (variant, gamma_ab, gamma_12) {
            (Variant::Plain, None, None) => Self::plain(gamma_a1, gamma_a2, gamma_b1, gamma_b2),
            (Variant::DirectLink, Some(ab), None) => {
                Self::direct_link(gamma_a1, gamma_a2, gamma_b1, gamma_b2, ab)
            }
            (Variant::InterferingRelays, None, Some(g12)) => {
                Self::interfering_relays(gamma_a1, gamma_a2, gamma_b1, gamma_b2, g12)
            }
            (Variant::DirectLink, None, _) => Err(Error::InvalidChannel("direct_link requires gamma_ab")),
            (Variant::InterferingRelays, _, None) => {
                Err(Error::InvalidChannel("interfering_relays requires gamma_12"))
            }
            (_, Some(_), _) => Err(Error::InvalidChannel("gamma_ab is only valid for direct_link")),
            (_, _, Some(_)) => {
                Err(Error::InvalidChannel("gamma_12 is only valid for interfering_relays"))
            }
        }
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn gamma_a1(&self) -> f64 {
        self.gamma_a1
    }

    pub fn gamma_a2(&self) -> f64 {
        self.gamma_a2
    }

    pub fn gamma_b1(&self) -> f64 {
        self.gamma_b1
    }

    pub fn gamma_b2(&self) -> f64 {
        self.gamma_b2
    }

    pub fn gamma_ab(&self) -> Option<f64> {
        self.gamma_ab
    }

    pub fn gamma_12(&self) -> Option<f64> {
        self.gamma_12
    }

    /// SNR from terminal (`A` or `B`) to relay `1` or `2`.
    pub fn terminal_relay(&self, terminal: Node, relay: Node) -> f64 {
        match (terminal, relay) {
            (Node::A, Node::R1) => self.gamma_a1,
            (Node::A, Node::R2) => self.gamma_a2,
            (Node::B, Node::R1) => self.gamma_b1,
            (Node::B, Node::R2) => self.gamma_b2,
            _ => panic!("terminal_relay({terminal:?}, {relay:?}) is not a terminal-relay pair"),
        }
    }

    /// SNR of the (reciprocal) link between two nodes, or `None` when the
    /// variant has no such link.
    pub fn link(&self, x: Node, y: Node) -> Option<f64> {
        use Node::*;
        match (x, y) {
            (A, R1) | (R1, A) => Some(self.gamma_a1),
            (A, R2) | (R2, A) => Some(self.gamma_a2),
            (B, R1) | (R1, B) => Some(self.gamma_b1),
            (B, R2) | (R2, B) => Some(self.gamma_b2),
            (A, B) | (B, A) => self.gamma_ab,
            (R1, R2) | (R2, R1) => self.gamma_12,
            _ => None,
        }
    }

    /// The same network with the roles of `A` and `B` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            gamma_a1: self.gamma_b1,
            gamma_a2: self.gamma_b2,
            gamma_b1: self.gamma_a1,
            gamma_b2: self.gamma_a2,
            ..*self
        }
    }

    /// Drops the optional link and returns the plain diamond with the same
    /// relay links. Protocols that never use the extra link run on this.
    pub fn as_plain(&self) -> Self {
        Self { variant: Variant::Plain, gamma_ab: None, gamma_12: None, ..*self }
    }

    pub(crate) fn require(&self, op: &'static str, variant: Variant) -> Result<()> {
        if self.variant == variant {
            Ok(())
        } else {
            Err(Error::UnsupportedVariant { op, variant: self.variant })
        }
    }
}

/// The five channels used in the numerical comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    I,
    II,
    III,
    DirectFig6,
    InterferingFig7,
}

impl Preset {
    pub const ALL: [Preset; 5] =
        [Preset::I, Preset::II, Preset::III, Preset::DirectFig6, Preset::InterferingFig7];

    pub fn name(self) -> &'static str {
        match self {
            Preset::I => "I",
            Preset::II => "II",
            Preset::III => "III",
            Preset::DirectFig6 => "direct_fig6",
            Preset::InterferingFig7 => "interfering_fig7",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| Error::UnknownPreset(name.to_string()))
    }

    /// `(a1, a2, b1, b2)` link SNRs in dB, and the optional extra link in dB.
    pub fn snr_db(self) -> ([f64; 4], Option<f64>) {
        match self {
            Preset::I => ([15.0, 10.0, 10.0, 15.0], None),
            Preset::II => ([10.0, 14.0, 12.0, 16.0], None),
            Preset::III => ([30.0, 3.0, 20.0, 4.0], None),
            Preset::DirectFig6 => ([15.0, 10.0, 10.0, 15.0], Some(8.0)),
            Preset::InterferingFig7 => ([20.0, 10.0, 10.0, 20.0], Some(20.0)),
        }
    }

    pub fn channel(self) -> ChannelConfig {
        let ([a1, a2, b1, b2], extra) = self.snr_db();
        let lin = |db: f64| libm::pow(10.0, db / 10.0);
        let (a1, a2, b1, b2) = (lin(a1), lin(a2), lin(b1), lin(b2));
        let built = match self {
            Preset::I | Preset::II | Preset::III => ChannelConfig::plain(a1, a2, b1, b2),
            Preset::DirectFig6 => ChannelConfig::direct_link(a1, a2, b1, b2, lin(extra.unwrap())),
            Preset::InterferingFig7 => {
                ChannelConfig::interfering_relays(a1, a2, b1, b2, lin(extra.unwrap()))
            }
        };
        built.expect("preset SNRs are finite")
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::from_name(s)
    }
}

/// Looks up a preset by name and returns its channel.
pub fn channel_from_caption(preset: &str) -> Result<ChannelConfig> {
    Preset::from_name(preset).map(Preset::channel)
}
