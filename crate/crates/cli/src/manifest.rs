use std::path::{Path, PathBuf};

use diamond_core::ChannelConfig;
use serde::{Deserialize, Serialize};

use crate::config::ChannelFile;
use crate::format::K;

/// Linear link SNRs at full precision; the dB values in `channel` are for
/// reading.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearSnr {
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ab: Option<f64>,
    #[serde(rename = "12", default, skip_serializing_if = "Option::is_none")]
    pub r12: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolutions {
    pub mdf_theta_points: usize,
    pub ardf_grid: usize,
}

/// Everything needed to reproduce one output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    /// Subcommand name.
    pub command: String,
    /// Arguments after the program name, verbatim.
    pub argv: Vec<String>,
    pub channel: ChannelFile,
    pub snr_linear: LinearSnr,
    pub convention: String,
    /// The swept ratios including both axis endpoints.
    pub k_grid: Vec<K>,
    pub resolutions: Resolutions,
    pub wall_time_s: f64,
}

impl RunManifest {
    pub fn new(
        command: &str,
        argv: Vec<String>,
        channel: &ChannelConfig,
        k_grid: &[f64],
        resolutions: Resolutions,
        wall_time_s: f64,
    ) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            argv,
            channel: ChannelFile::from_channel(channel),
            snr_linear: LinearSnr {
                a1: channel.gamma_a1(),
                a2: channel.gamma_a2(),
                b1: channel.gamma_b1(),
                b2: channel.gamma_b2(),
                ab: channel.gamma_ab(),
                r12: channel.gamma_12(),
            },
            convention: channel.convention().as_str().into(),
            k_grid: k_grid.iter().map(|k| K(*k)).collect(),
            resolutions,
            wall_time_s,
        }
    }

    #[cfg(test)]
    pub fn for_tests() -> Self {
        let ch = diamond_core::Preset::I.channel();
        Self::new("region", vec!["region".into()], &ch, &[0.0, 1.0, f64::INFINITY], Resolutions {
            mdf_theta_points: 101,
            ardf_grid: 11,
        }, 0.0)
    }
}

/// `<out>.manifest.json`, written next to CSV outputs.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}
