//! Region boundaries as ray samples: sweeps, time-sharing hulls, containment
//! checks and the brute-force simplex grid oracle.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::channel::{ChannelConfig, Convention, Variant};
use crate::cutset;
use crate::protocols::{
    ardf::ArdfSearch, cf_bc_support, cf_cmac_support, comabc_support, mdf::MdfTwoWay, mdf_two_way_region,
    MdfOptions, Protocol, RatePair, StateSchedule, SupportPoint,
};
use crate::{ray, Error, Result};

pub type Sample = SupportPoint;

/// What a region describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionKind {
    Outer,
    Protocol(Protocol),
    Hull,
}

impl RegionKind {
    pub fn label(self) -> &'static str {
        match self {
            RegionKind::Outer => "outer",
            RegionKind::Protocol(p) => p.name(),
            RegionKind::Hull => "hull",
        }
    }
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Boundary samples of one region, sorted by ray ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRegion {
    pub label: String,
    pub channel: ChannelConfig,
    pub samples: Vec<Sample>,
}

impl RateRegion {
    /// Sorts `samples` by `k` and checks the region invariants.
    pub fn new(label: impl Into<String>, channel: ChannelConfig, mut samples: Vec<Sample>) -> Result<Self> {
        samples.sort_by(|a, b| a.k.total_cmp(&b.k));
        if samples.iter().any(|s| !(s.rates.ra >= 0.0 && s.rates.rb >= 0.0)) {
            return Err(Error::InvalidArgument("region rates must be non-negative"));
        }
        Ok(Self { label: label.into(), channel, samples })
    }

    pub fn convention(&self) -> Convention {
        self.channel.convention()
    }

    pub fn ratios(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.k)
    }

    /// Sample on ray `k`, matched with a relative tolerance of `1e-12`.
    pub fn at(&self, k: f64) -> Option<&Sample> {
        self.samples.iter().find(|s| same_ratio(s.k, k))
    }

    /// Axis points `(k = 0, k = inf)` when present.
    pub fn axis_points(&self) -> (Option<&Sample>, Option<&Sample>) {
        (self.at(0.0), self.at(f64::INFINITY))
    }
}

fn same_ratio(a: f64, b: f64) -> bool {
    a == b || (a.is_finite() && b.is_finite() && (a - b).abs() <= 1e-12 * a.abs().max(b.abs()))
}

/// 25 log-spaced ratios `10^((i - 12) / 12)`, `i = 0..25`, spanning
/// `[0.1, 10]` with `k = 1` exactly in the middle.
pub fn default_k_grid() -> Vec<f64> {
    log_grid(0.1, 10.0, 25)
}

/// `count` log-spaced points from `start` to `stop` (both > 0).
pub fn log_grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return alloc::vec![start];
    }
    let (l0, l1) = (libm::log10(start), libm::log10(stop));
    (0..count)
        .map(|i| {
            let e = l0 + (l1 - l0) * i as f64 / (count - 1) as f64;
            if e == 0.0 {
                1.0
            } else {
                libm::pow(10.0, e)
            }
        })
        .collect()
}

/// Interior ratios plus both axis endpoints, in sweep order.
pub fn with_endpoints(k_grid: &[f64]) -> Result<Vec<f64>> {
    if k_grid.is_empty() {
        return Err(Error::InvalidArgument("k grid must not be empty"));
    }
    if k_grid.iter().any(|k| !(k.is_finite() && *k >= 0.0)) {
        return Err(Error::InvalidArgument("k grid entries must be finite and >= 0"));
    }
    if k_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("k grid must be strictly increasing"));
    }
    let mut full = Vec::with_capacity(k_grid.len() + 2);
    full.push(0.0);
    full.extend(k_grid.iter().copied().filter(|k| *k > 0.0));
    full.push(f64::INFINITY);
    Ok(full)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorOptions {
    pub mdf: MdfOptions,
    pub ardf_grid: usize,
}

impl Default for GeneratorOptions {
    fn default() -> Self {
        Self { mdf: MdfOptions::default(), ardf_grid: 11 }
    }
}

/// A support function prepared for one channel. Per-channel work (MDF axis
/// points, the AR-DF parameter search) happens once in [`Generator::new`].
#[derive(Debug, Clone)]
pub enum Generator {
    Outer(ChannelConfig),
    Mdf(MdfTwoWay),
    CfCmac(ChannelConfig),
    CfBc(ChannelConfig),
    Comabc(ChannelConfig),
    ArDf(ArdfSearch),
}

impl Generator {
    pub fn new(kind: RegionKind, channel: &ChannelConfig, opts: GeneratorOptions) -> Result<Self> {
        Ok(match kind {
            RegionKind::Outer => Generator::Outer(*channel),
            RegionKind::Protocol(Protocol::Mdf) => Generator::Mdf(mdf_two_way_region(channel, opts.mdf)?),
            RegionKind::Protocol(Protocol::CfCmac) => Generator::CfCmac(*channel),
            RegionKind::Protocol(Protocol::CfBc) => Generator::CfBc(*channel),
            RegionKind::Protocol(Protocol::Comabc) => {
                channel.require("comabc_support", Variant::DirectLink)?;
                Generator::Comabc(*channel)
            }
            RegionKind::Protocol(Protocol::ArDf) => Generator::ArDf(ArdfSearch::new(channel, opts.ardf_grid)?),
            RegionKind::Hull => return Err(Error::InvalidArgument("hulls are built with hull_of")),
        })
    }

    pub fn kind(&self) -> RegionKind {
        match self {
            Generator::Outer(_) => RegionKind::Outer,
            Generator::Mdf(_) => RegionKind::Protocol(Protocol::Mdf),
            Generator::CfCmac(_) => RegionKind::Protocol(Protocol::CfCmac),
            Generator::CfBc(_) => RegionKind::Protocol(Protocol::CfBc),
            Generator::Comabc(_) => RegionKind::Protocol(Protocol::Comabc),
            Generator::ArDf(_) => RegionKind::Protocol(Protocol::ArDf),
        }
    }

    pub fn support(&self, k: f64) -> Result<SupportPoint> {
        let point = match self {
            Generator::Outer(ch) => cutset::outer_support(ch, k),
            Generator::Mdf(m) => m.support(k),
            Generator::CfCmac(ch) => cf_cmac_support(ch, k).map(|s| s.point),
            Generator::CfBc(ch) => cf_bc_support(ch, k).map(|s| s.point),
            Generator::Comabc(ch) => comabc_support(ch, k),
            Generator::ArDf(s) => s.support(k),
        };
        point.map_err(|e| e.at_ratio(k))
    }
}

/// Evaluates `generator` at every interior ratio of `k_grid` plus both axis
/// endpoints.
pub fn sweep(generator: &Generator, channel: &ChannelConfig, k_grid: &[f64]) -> Result<RateRegion> {
    let samples = with_endpoints(k_grid)?
        .into_iter()
        .map(|k| generator.support(k))
        .collect::<Result<Vec<_>>>()?;
    RateRegion::new(generator.kind().label(), *channel, samples)
}

/// Convenience wrapper: prepare a generator for `kind` and sweep it.
pub fn sweep_kind(kind: RegionKind, channel: &ChannelConfig, k_grid: &[f64], opts: GeneratorOptions) -> Result<RateRegion> {
    sweep(&Generator::new(kind, channel, opts)?, channel, k_grid)
}

struct HullVertex {
    p: RatePair,
    schedule: StateSchedule,
}

fn cross(ax: f64, ay: f64, bx: f64, by: f64) -> f64 {
    ax * by - ay * bx
}

/// Convex hull (counter-clockwise, collinear points dropped) of the
/// downward closure of all sample points.
fn hull_vertices(regions: &[RateRegion]) -> Vec<HullVertex> {
    let mut pts: Vec<HullVertex> =
        alloc::vec![HullVertex { p: RatePair::new(0.0, 0.0), schedule: StateSchedule::new() }];
    for r in regions {
        for s in &r.samples {
            let p = s.rates;
            pts.push(HullVertex { p, schedule: s.schedule.clone() });
            pts.push(HullVertex { p: RatePair::new(p.ra, 0.0), schedule: s.schedule.clone() });
            pts.push(HullVertex { p: RatePair::new(0.0, p.rb), schedule: s.schedule.clone() });
        }
    }
    pts.sort_by(|a, b| a.p.ra.total_cmp(&b.p.ra).then(a.p.rb.total_cmp(&b.p.rb)));
    pts.dedup_by(|a, b| a.p == b.p);
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: &RatePair, a: &RatePair, b: &RatePair| cross(a.ra - o.ra, a.rb - o.rb, b.ra - o.ra, b.rb - o.rb);
    let mut lower: Vec<usize> = Vec::new();
    for i in 0..pts.len() {
        while lower.len() >= 2 && turn(&pts[lower[lower.len() - 2]].p, &pts[lower[lower.len() - 1]].p, &pts[i].p) <= 0.0 {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for i in (0..pts.len()).rev() {
        while upper.len() >= 2 && turn(&pts[upper[upper.len() - 2]].p, &pts[upper[upper.len() - 1]].p, &pts[i].p) <= 0.0 {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    let order: Vec<usize> = lower.into_iter().chain(upper).collect();
    let mut taken: Vec<Option<HullVertex>> = pts.into_iter().map(Some).collect();
    order.into_iter().filter_map(|i| taken[i].take()).collect()
}

/// Exit point of ray `k` from the polygon `verts` (which contains the origin).
fn ray_exit(verts: &[HullVertex], k: f64) -> SupportPoint {
    let (dx, dy) = ray::direction(k);
    let mut best: Option<(f64, StateSchedule)> = None;
    let mut consider = |t: f64, sched: StateSchedule| {
        if t >= 0.0 && best.as_ref().map_or(true, |(bt, _)| t > *bt) {
            best = Some((t, sched));
        }
    };
    let n = verts.len();
    for i in 0..n {
        let (p, q) = (&verts[i], &verts[(i + 1) % n]);
        let (ex, ey) = (q.p.ra - p.p.ra, q.p.rb - p.p.rb);
        let denom = cross(dx, dy, ex, ey);
        let scale = 1.0 + p.p.sum() + q.p.sum();
        if denom.abs() <= 1e-14 * scale {
            // Parallel edge: only matters when it lies on the ray itself.
            for v in [p, q] {
                if cross(v.p.ra, v.p.rb, dx, dy).abs() <= 1e-12 * scale {
                    consider((v.p.ra * dx + v.p.rb * dy) / (dx * dx + dy * dy), v.schedule.clone());
                }
            }
            continue;
        }
        let s = cross(p.p.ra, p.p.rb, dx, dy) / denom;
        let t = cross(p.p.ra, p.p.rb, ex, ey) / denom;
        if (-1e-12..=1.0 + 1e-12).contains(&s) {
            let s = s.clamp(0.0, 1.0);
            let sched = if q.schedule.is_empty() {
                p.schedule.clone()
            } else if p.schedule.is_empty() {
                q.schedule.clone()
            } else {
                p.schedule.mix(1.0 - s, &q.schedule)
            };
            consider(t, sched);
        }
    }
    let (t, schedule) = best.unwrap_or((0.0, StateSchedule::new()));
    let rates = if k.is_infinite() { RatePair::new(0.0, t * dy) } else { RatePair::new(t * dx, t * dx * k) };
    SupportPoint { k, rates, schedule }
}

/// Time-sharing hull of `regions`, sampled on the union of their ratios.
///
/// Hull samples carry the time-shared schedule of the two hull vertices they
/// interpolate.
pub fn hull_of(regions: &[RateRegion]) -> Result<RateRegion> {
    let first = regions.first().ok_or(Error::InvalidArgument("hull of an empty list"))?;
    if regions.iter().any(|r| r.channel != first.channel) {
        return Err(Error::MismatchedRegions);
    }
    let mut ks: Vec<f64> = regions.iter().flat_map(|r| r.ratios()).collect();
    ks.sort_by(f64::total_cmp);
    ks.dedup_by(|a, b| same_ratio(*a, *b));
    let verts = hull_vertices(regions);
    let samples = ks.into_iter().map(|k| ray_exit(&verts, k)).collect();
    RateRegion::new(RegionKind::Hull.label(), first.channel, samples)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContainmentEntry {
    pub k: f64,
    pub inner: RatePair,
    pub outer: RatePair,
    /// `outer.sum() - inner.sum()`; negative means the inner point sticks out.
    pub margin: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContainmentReport {
    pub outer_label: String,
    pub inner_label: String,
    pub tolerance: f64,
    pub entries: Vec<ContainmentEntry>,
}

impl ContainmentReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn worst_margin(&self) -> f64 {
        self.entries.iter().map(|e| e.margin).fold(f64::INFINITY, f64::min)
    }
}

/// Checks `inner` against `outer` on every ray both regions sampled.
pub fn contains(outer: &RateRegion, inner: &RateRegion, tolerance: f64) -> Result<ContainmentReport> {
    if outer.channel != inner.channel {
        return Err(Error::MismatchedRegions);
    }
    let entries: Vec<ContainmentEntry> = inner
        .samples
        .iter()
        .filter_map(|s| outer.at(s.k).map(|o| (s, o)))
        .map(|(s, o)| {
            let margin = o.rates.sum() - s.rates.sum();
            ContainmentEntry { k: s.k, inner: s.rates, outer: o.rates, margin, pass: margin >= -tolerance }
        })
        .collect();
    if entries.is_empty() {
        return Err(Error::InvalidArgument("regions share no ray ratios"));
    }
    Ok(ContainmentReport { outer_label: outer.label.to_string(), inner_label: inner.label.to_string(), tolerance, entries })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub rates: RatePair,
    /// Time shares in the order of the state list given to the oracle.
    pub mu: Vec<f64>,
}

/// Brute-force support value on ray `k`: enumerates every time-share vector
/// over `states` with denominator `resolution` and keeps the best ray point
/// of the box `[0, cap_a] x [0, cap_b]` returned by `caps(mu)`.
///
/// This lower-bounds the LP optimum whenever `caps` is the exact
/// fixed-schedule optimum of the LP's constraint block.
pub fn grid_oracle<F>(mut caps: F, states: &[u8], resolution: usize, k: f64) -> Result<OracleResult>
where
    F: FnMut(&[f64]) -> (f64, f64),
{
    ray::check_ratio(k)?;
    if states.is_empty() {
        return Err(Error::InvalidArgument("grid oracle needs at least one state"));
    }
    if resolution < 10 {
        return Err(Error::InvalidArgument("grid oracle resolution must be at least 10"));
    }
    let n = states.len();
    let mut counts = alloc::vec![0usize; n];
    counts[n - 1] = resolution;
    let mut mu = alloc::vec![0.0; n];
    let mut best = OracleResult { rates: RatePair::default(), mu: mu.clone() };
    let mut best_value = f64::NEG_INFINITY;
    loop {
        for (m, c) in mu.iter_mut().zip(&counts) {
            *m = *c as f64 / resolution as f64;
        }
        let (ca, cb) = caps(&mu);
        let p = ray::box_point(ca.max(0.0), cb.max(0.0), k);
        if p.sum() > best_value {
            best_value = p.sum();
            best = OracleResult { rates: p, mu: mu.clone() };
        }
        // Next composition of `resolution` into `n` parts (colex order):
        // move one unit from the last part into the first nonzero position
        // before it, as in an odometer.
        if !next_composition(&mut counts) {
            break;
        }
    }
    Ok(best)
}

/// Advances `counts` to the next weak composition with the same sum;
/// returns `false` after the last one.
fn next_composition(counts: &mut [usize]) -> bool {
    let n = counts.len();
    if n == 1 {
        return false;
    }
    // Find the rightmost position (excluding the first) holding units.
    let Some(j) = (1..n).rev().find(|&j| counts[j] > 0) else { return false };
    let moved = counts[j];
    counts[j] = 0;
    counts[j - 1] += 1;
    counts[n - 1] += moved - 1;
    true
}
