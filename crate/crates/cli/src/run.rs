use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use diamond_core::protocols::MdfOptions;
use diamond_core::regions::{contains, hull_of, with_endpoints, Generator, GeneratorOptions};
use diamond_core::{ChannelConfig, Convention, Error as CoreError, Preset, Protocol, RateRegion, RegionKind};
use rayon::prelude::*;

use crate::config::ChannelFile;
use crate::error::{CliError, Result};
use crate::format::{fmt12, ContainmentRecord, RegionRecord};
use crate::kgrid::parse_k_grid;
use crate::manifest::{sidecar_path, Resolutions, RunManifest};
use crate::{Command, Format, SweepArgs};

/// Runs one parsed subcommand. `argv` is recorded in the manifest.
pub fn execute(command: Command, argv: Vec<String>) -> Result<()> {
    match command {
        Command::Presets { format, out } => presets(Format::resolve(format, out.as_deref()), out.as_deref()),
        Command::Outer(sweep) => {
            let job = Job::prepare("outer", &sweep, argv)?;
            let region = job.sweep(RegionKind::Outer)?;
            job.write_region(&region, &sweep)
        }
        Command::Region { sweep, protocol } => {
            let job = Job::prepare("region", &sweep, argv)?;
            let kind = job.protocol_kind(&protocol)?;
            let region = job.sweep(kind)?;
            job.write_region(&region, &sweep)
        }
        Command::Compare { sweep, protocol, against, tolerance } => {
            if !(tolerance.is_finite() && tolerance >= 0.0) {
                return Err(CliError::usage(format!("--tolerance must be finite and non-negative, got {tolerance}")));
            }
            let job = Job::prepare("compare", &sweep, argv)?;
            let inner_kind = job.protocol_kind(&protocol)?;
            let outer_kind = if against == "outer" { RegionKind::Outer } else { job.protocol_kind(&against)? };
            let inner = job.sweep(inner_kind)?;
            let outer = job.sweep(outer_kind)?;
            let report = ContainmentRecord::from_report(&contains(&outer, &inner, tolerance)?);
            let manifest = job.manifest();
            emit(&sweep, |w, fmt| match fmt {
                Format::Csv => report.write_csv(w),
                Format::Json => report.write_json(&manifest, w),
            })?;
            write_sidecar(&sweep, &manifest)?;
            let failing = report.failing();
            if failing > 0 {
                return Err(CliError::NotContained {
                    inner: report.inner,
                    outer: report.outer,
                    failing,
                    total: report.entries.len(),
                });
            }
            log::info!("{} inside {} at all {} rays", report.inner, report.outer, report.entries.len());
            Ok(())
        }
        Command::Hull { sweep, protocol } => {
            let job = Job::prepare("hull", &sweep, argv)?;
            let kinds = if protocol.is_empty() {
                Protocol::ALL
                    .into_iter()
                    .filter(|p| p.supports(job.channel.variant()))
                    .map(RegionKind::Protocol)
                    .collect()
            } else {
                protocol.iter().map(|p| job.protocol_kind(p)).collect::<Result<Vec<_>>>()?
            };
            let regions = kinds.into_iter().map(|k| job.sweep(k)).collect::<Result<Vec<_>>>()?;
            let hull = hull_of(&regions)?;
            job.write_region(&hull, &sweep)
        }
    }
}

struct Job {
    command: &'static str,
    argv: Vec<String>,
    channel: ChannelConfig,
    k_grid: Vec<f64>,
    options: GeneratorOptions,
    started: Instant,
}

impl Job {
    fn prepare(command: &'static str, args: &SweepArgs, argv: Vec<String>) -> Result<Self> {
        let started = Instant::now();
        let mut channel = match (&args.channel, &args.preset) {
            (Some(path), None) => ChannelFile::load(path)?.to_channel()?,
            (None, Some(name)) => {
                Preset::from_str(name).map_err(|e| CliError::usage(e.to_string()))?.channel()
            }
            _ => return Err(CliError::usage("give exactly one of --channel and --preset")),
        };
        if let Some(c) = &args.convention {
            let c = Convention::from_str(c).map_err(|_| CliError::usage(format!("unknown convention `{c}`")))?;
            channel = channel.with_convention(c);
        }
        if args.ardf_grid < 2 {
            return Err(CliError::usage("--ardf-grid must be at least 2"));
        }
        let k_grid = parse_k_grid(&args.k_grid)?;
        let options = GeneratorOptions { mdf: MdfOptions::default(), ardf_grid: args.ardf_grid };
        log::info!("{command}: {} channel, {} convention", channel.variant(), channel.convention());
        Ok(Job { command, argv, channel, k_grid, options, started })
    }

    fn protocol_kind(&self, name: &str) -> Result<RegionKind> {
        let p = Protocol::from_str(name).map_err(|_| {
            let known: Vec<_> = Protocol::ALL.iter().map(|p| p.name()).collect();
            CliError::usage(format!("unknown protocol `{name}` (expected one of {})", known.join(", ")))
        })?;
        if !p.supports(self.channel.variant()) {
            return Err(CoreError::UnsupportedVariant { op: p.name(), variant: self.channel.variant() }.into());
        }
        Ok(RegionKind::Protocol(p))
    }

    /// Evaluates every ray in parallel; samples and the reported error
    /// (the one at the smallest failing `k`) do not depend on scheduling.
    fn sweep(&self, kind: RegionKind) -> Result<RateRegion> {
        let started = Instant::now();
        let generator = Generator::new(kind, &self.channel, self.options)?;
        let ks = with_endpoints(&self.k_grid)?;
        let points: Vec<_> = ks.par_iter().map(|k| generator.support(*k)).collect();
        let samples = points.into_iter().collect::<std::result::Result<Vec<_>, _>>()?;
        log::info!("{kind}: {} rays in {:.2?}", samples.len(), started.elapsed());
        Ok(RateRegion::new(kind.label(), self.channel, samples)?)
    }

    fn manifest(&self) -> RunManifest {
        let full = with_endpoints(&self.k_grid).expect("grid validated in prepare");
        let resolutions =
            Resolutions { mdf_theta_points: self.options.mdf.theta_points, ardf_grid: self.options.ardf_grid };
        RunManifest::new(
            self.command,
            self.argv.clone(),
            &self.channel,
            &full,
            resolutions,
            self.started.elapsed().as_secs_f64(),
        )
    }

    fn write_region(&self, region: &RateRegion, args: &SweepArgs) -> Result<()> {
        let record = RegionRecord::from_region(region);
        let manifest = self.manifest();
        emit(args, |w, fmt| match fmt {
            Format::Csv => record.write_csv(w),
            Format::Json => record.write_json(&manifest, w),
        })?;
        write_sidecar(args, &manifest)
    }
}

fn open(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|source| CliError::Io { path: path.into(), source })
}

fn emit(args: &SweepArgs, body: impl FnOnce(&mut dyn Write, Format) -> Result<()>) -> Result<()> {
    let fmt = Format::resolve(args.format, args.out.as_deref());
    match &args.out {
        Some(path) => {
            body(&mut open(path)?, fmt)?;
            log::info!("wrote {}", path.display());
            Ok(())
        }
        None => body(&mut std::io::stdout().lock(), fmt),
    }
}

/// CSV files get their manifest in a sidecar; JSON embeds it.
fn write_sidecar(args: &SweepArgs, manifest: &RunManifest) -> Result<()> {
    let Some(out) = &args.out else { return Ok(()) };
    if Format::resolve(args.format, Some(out)) == Format::Json {
        return Ok(());
    }
    let path = sidecar_path(out);
    let mut w = open(&path)?;
    serde_json::to_writer_pretty(&mut w, manifest)?;
    writeln!(w).and_then(|_| w.flush()).map_err(|source| CliError::Io { path, source })
}

fn presets(format: Format, out: Option<&Path>) -> Result<()> {
    let mut w: Box<dyn Write> = match out {
        Some(path) => Box::new(open(path)?),
        None => Box::new(std::io::stdout().lock()),
    };
    match format {
        Format::Json => {
            let list: serde_json::Map<String, serde_json::Value> = Preset::ALL
                .into_iter()
                .map(|p| Ok((p.name().to_string(), serde_json::to_value(ChannelFile::from_preset(p))?)))
                .collect::<Result<_>>()?;
            serde_json::to_writer_pretty(&mut w, &list)?;
            writeln!(w)?;
        }
        Format::Csv => {
            let mut c = csv::Writer::from_writer(&mut w);
            c.write_record(["name", "variant", "a1_db", "a2_db", "b1_db", "b2_db", "ab_db", "12_db"])?;
            for p in Preset::ALL {
                let f = ChannelFile::from_preset(p);
                let s = &f.snr_db;
                let opt = |v: Option<f64>| v.map(fmt12).unwrap_or_default();
                c.write_record([
                    p.name().to_string(),
                    f.variant.clone(),
                    fmt12(s.a1),
                    fmt12(s.a2),
                    fmt12(s.b1),
                    fmt12(s.b2),
                    opt(s.ab),
                    opt(s.r12),
                ])?;
            }
            c.flush().map_err(|e| CliError::Csv(e.into()))?;
        }
    }
    Ok(w.flush()?)
}
