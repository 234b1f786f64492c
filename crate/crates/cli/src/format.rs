//! Region and containment files.
//!
//! Region CSV columns are `protocol,convention,k,R_a,R_b` followed by one
//! `mu_<state>` column for every state that appears in any sample's
//! schedule; a cell is empty when that sample does not use the state.
//! Numbers carry 12 significant digits and `k = +inf` is written `inf`.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};

use diamond_core::regions::ContainmentReport;
use diamond_core::{Convention, RateRegion};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CliError, Result};
use crate::manifest::RunManifest;

const FIXED_COLUMNS: [&str; 5] = ["protocol", "convention", "k", "R_a", "R_b"];

/// Rounds to 12 significant digits. `-0.0` becomes `0.0`.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let v: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

pub fn fmt12(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".into()
    } else {
        round12(x).to_string()
    }
}

fn parse_num(cell: &str, what: &str, line: usize) -> Result<f64> {
    cell.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| !v.is_nan())
        .ok_or_else(|| CliError::Schema(format!("line {line}: `{cell}` is not a valid {what}")))
}

/// A ratio that serializes as a JSON number, or as `"inf"` on the `R_b` axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct K(pub f64);

impl Serialize for K {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0)
        } else {
            s.serialize_str("inf")
        }
    }
}

impl<'de> Deserialize<'de> for K {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(K(v)),
            Raw::Text(t) if t == "inf" => Ok(K(f64::INFINITY)),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad ratio `{t}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionRow {
    pub k: K,
    #[serde(rename = "R_a")]
    pub ra: f64,
    #[serde(rename = "R_b")]
    pub rb: f64,
    pub mu: BTreeMap<u8, f64>,
}

/// The on-disk view of a [`RateRegion`]: label, convention and rounded
/// samples, without the channel (which lives in the manifest).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionRecord {
    pub protocol: String,
    pub convention: String,
    pub samples: Vec<RegionRow>,
}

#[derive(Serialize, Deserialize)]
struct RegionDocument {
    manifest: RunManifest,
    protocol: String,
    convention: String,
    samples: Vec<RegionRow>,
}

impl RegionRecord {
    pub fn from_region(region: &RateRegion) -> Self {
        let samples = region
            .samples
            .iter()
            .map(|s| RegionRow {
                k: K(round12(s.k)),
                ra: round12(s.rates.ra),
                rb: round12(s.rates.rb),
                mu: s.schedule.iter().map(|(id, mu)| (id, round12(mu))).collect(),
            })
            .collect();
        RegionRecord { protocol: region.label.clone(), convention: region.convention().as_str().into(), samples }
    }

    fn states(&self) -> BTreeSet<u8> {
        self.samples.iter().flat_map(|s| s.mu.keys().copied()).collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let states: Vec<u8> = self.states().into_iter().collect();
        let mut w = csv::Writer::from_writer(out);
        let header: Vec<String> =
            FIXED_COLUMNS.iter().map(|c| c.to_string()).chain(states.iter().map(|s| format!("mu_{s}"))).collect();
        w.write_record(&header)?;
        for s in &self.samples {
            let mut row = vec![self.protocol.clone(), self.convention.clone(), fmt12(s.k.0), fmt12(s.ra), fmt12(s.rb)];
            row.extend(states.iter().map(|id| s.mu.get(id).map(|v| fmt12(*v)).unwrap_or_default()));
            w.write_record(&row)?;
        }
        w.flush().map_err(|e| CliError::Csv(e.into()))
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let header = r.headers()?.clone();
        for (i, want) in FIXED_COLUMNS.iter().enumerate() {
            if header.get(i) != Some(*want) {
                return Err(CliError::Schema(format!("column {} should be `{want}`", i + 1)));
            }
        }
        let states = header
            .iter()
            .skip(FIXED_COLUMNS.len())
            .map(|col| {
                col.strip_prefix("mu_")
                    .and_then(|id| id.parse::<u8>().ok())
                    .filter(|id| (1..=14).contains(id))
                    .ok_or_else(|| CliError::Schema(format!("unexpected column `{col}`")))
            })
            .collect::<Result<Vec<u8>>>()?;
        let mut record: Option<RegionRecord> = None;
        for (i, row) in r.records().enumerate() {
            let row = row?;
            let line = i + 2;
            let (protocol, convention) = (&row[0], &row[1]);
            convention
                .parse::<Convention>()
                .map_err(|_| CliError::Schema(format!("line {line}: unknown convention `{convention}`")))?;
            let rec = record.get_or_insert_with(|| RegionRecord {
                protocol: protocol.into(),
                convention: convention.into(),
                samples: Vec::new(),
            });
            if rec.protocol != protocol || rec.convention != convention {
                return Err(CliError::Schema(format!("line {line}: mixed protocol or convention")));
            }
            let mut mu = BTreeMap::new();
            for (id, cell) in states.iter().zip(row.iter().skip(FIXED_COLUMNS.len())) {
                if !cell.is_empty() {
                    mu.insert(*id, parse_num(cell, &format!("mu_{id}"), line)?);
                }
            }
            rec.samples.push(RegionRow {
                k: K(parse_num(&row[2], "k", line)?),
                ra: parse_num(&row[3], "R_a", line)?,
                rb: parse_num(&row[4], "R_b", line)?,
                mu,
            });
        }
        record.ok_or_else(|| CliError::Schema("no samples".into()))
    }

    pub fn write_json<W: Write>(&self, manifest: &RunManifest, out: W) -> Result<()> {
        let doc = RegionDocument {
            manifest: manifest.clone(),
            protocol: self.protocol.clone(),
            convention: self.convention.clone(),
            samples: self.samples.clone(),
        };
        write_json_value(&doc, out)
    }

    pub fn read_json<R: Read>(input: R) -> Result<(RunManifest, Self)> {
        let doc: RegionDocument = serde_json::from_reader(input)?;
        Ok((doc.manifest, RegionRecord { protocol: doc.protocol, convention: doc.convention, samples: doc.samples }))
    }
}

fn write_json_value<T: Serialize, W: Write>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(out.flush()?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainmentRow {
    pub k: K,
    pub inner_r_a: f64,
    pub inner_r_b: f64,
    pub outer_r_a: f64,
    pub outer_r_b: f64,
    pub margin: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainmentRecord {
    pub outer: String,
    pub inner: String,
    pub tolerance: f64,
    pub passed: bool,
    pub worst_margin: f64,
    pub entries: Vec<ContainmentRow>,
}

#[derive(Serialize)]
struct ContainmentDocument<'a> {
    manifest: &'a RunManifest,
    #[serde(flatten)]
    report: &'a ContainmentRecord,
}

impl ContainmentRecord {
    pub fn from_report(report: &ContainmentReport) -> Self {
        ContainmentRecord {
            outer: report.outer_label.clone(),
            inner: report.inner_label.clone(),
            tolerance: report.tolerance,
            passed: report.passed(),
            worst_margin: round12(report.worst_margin()),
            entries: report
                .entries
                .iter()
                .map(|e| ContainmentRow {
                    k: K(round12(e.k)),
                    inner_r_a: round12(e.inner.ra),
                    inner_r_b: round12(e.inner.rb),
                    outer_r_a: round12(e.outer.ra),
                    outer_r_b: round12(e.outer.rb),
                    margin: round12(e.margin),
                    pass: e.pass,
                })
                .collect(),
        }
    }

    pub fn failing(&self) -> usize {
        self.entries.iter().filter(|e| !e.pass).count()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["outer", "inner", "k", "inner_R_a", "inner_R_b", "outer_R_a", "outer_R_b", "margin", "pass"])?;
        for e in &self.entries {
            w.write_record([
                self.outer.clone(),
                self.inner.clone(),
                fmt12(e.k.0),
                fmt12(e.inner_r_a),
                fmt12(e.inner_r_b),
                fmt12(e.outer_r_a),
                fmt12(e.outer_r_b),
                fmt12(e.margin),
                e.pass.to_string(),
            ])?;
        }
        w.flush().map_err(|e| CliError::Csv(e.into()))
    }

    pub fn write_json<W: Write>(&self, manifest: &RunManifest, out: W) -> Result<()> {
        write_json_value(&ContainmentDocument { manifest, report: self }, out)
    }
}
