//! Channel-config JSON:
//!
//! ```json
//! {"variant": "direct_link",
//!  "snr_db": {"a1": 15, "a2": 10, "b1": 10, "b2": 15, "ab": 8},
//!  "convention": "complex"}
//! ```
//!
//! `ab` is required for `direct_link` and `"12"` for `interfering_relays`;
//! either key is rejected on any other variant. Unknown keys are rejected.

use std::path::Path;

use diamond_core::channel::snr_to_db;
use diamond_core::{snr_from_db, ChannelConfig, Convention, Preset, Variant};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SnrDb {
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ab: Option<f64>,
    #[serde(rename = "12", default, skip_serializing_if = "Option::is_none")]
    pub r12: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelFile {
    pub variant: String,
    pub snr_db: SnrDb,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
}

impl ChannelFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        serde_json::from_str(&text).map_err(|source| CliError::Config { path: path.into(), source })
    }

    pub fn from_preset(preset: Preset) -> Self {
        let ([a1, a2, b1, b2], extra) = preset.snr_db();
        let variant = preset.channel().variant();
        let (ab, r12) = match variant {
            Variant::DirectLink => (extra, None),
            Variant::InterferingRelays => (None, extra),
            Variant::Plain => (None, None),
        };
        ChannelFile {
            variant: variant.as_str().into(),
            snr_db: SnrDb { a1, a2, b1, b2, ab, r12 },
            convention: None,
        }
    }

    /// Describes `channel` in dB; the inverse of [`ChannelFile::to_channel`]
    /// up to rounding in the dB conversion.
    pub fn from_channel(channel: &ChannelConfig) -> Self {
        ChannelFile {
            variant: channel.variant().as_str().into(),
            snr_db: SnrDb {
                a1: snr_to_db(channel.gamma_a1()),
                a2: snr_to_db(channel.gamma_a2()),
                b1: snr_to_db(channel.gamma_b1()),
                b2: snr_to_db(channel.gamma_b2()),
                ab: channel.gamma_ab().map(snr_to_db),
                r12: channel.gamma_12().map(snr_to_db),
            },
            convention: Some(channel.convention().as_str().into()),
        }
    }

    pub fn to_channel(&self) -> Result<ChannelConfig> {
        let variant: Variant = self.variant.parse()?;
        let s = &self.snr_db;
        let lin = |db: f64| snr_from_db(db).map_err(CliError::from);
        let links = [lin(s.a1)?, lin(s.a2)?, lin(s.b1)?, lin(s.b2)?];
        let channel = ChannelConfig::new(variant, links, s.ab.map(lin).transpose()?, s.r12.map(lin).transpose()?)?;
        Ok(match &self.convention {
            Some(c) => channel.with_convention(c.parse::<Convention>()?),
            None => channel,
        })
    }
}
