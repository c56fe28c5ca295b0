//! Directional wave climate tables: eight principal directions per ocean area.
//!
//! CSV input has the header `area,dN,dNE,dE,dSE,dS,dSW,dW,dNW` on its first
//! line and one area per line after it. JSON input is an array of
//! `{"area": ..., "directions": [8 numbers], "region": optional}`.
//! Probabilities are kept exactly as read; tables are typically incomplete.

use std::collections::HashSet;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::indicators::{analyze, Distribution, IndicatorReport};

/// Direction labels in table order.
pub const DIRECTIONS: [&str; 8] = ["N", "NE", "E", "SE", "S", "SW", "W", "NW"];

/// Compass bearing of each entry of [`DIRECTIONS`], in degrees.
pub const BEARINGS: [f64; 8] = [0.0, 45.0, 90.0, 135.0, 180.0, 225.0, 270.0, 315.0];

pub const CSV_HEADER: &str = "area,dN,dNE,dE,dSE,dS,dSW,dW,dNW";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(format!("unknown table format {other:?}")),
        }
    }
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("malformed header: expected `{CSV_HEADER}`, found `{found}`")]
    MalformedHeader { found: String },
    #[error("row {row}: expected 9 fields, found {found}")]
    BadFieldCount { row: usize, found: usize },
    #[error("row {row}: field {field} is not a number: {value:?}")]
    NonNumericProbability {
        row: usize,
        field: String,
        value: String,
    },
    #[error("row {row}: {source}")]
    ValidationFailure {
        row: usize,
        #[source]
        source: Error,
    },
    #[error("row {row}: duplicate area id {area:?}")]
    DuplicateAreaId { row: usize, area: String },
    #[error("cannot read table: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl TableError {
    pub fn kind(&self) -> &'static str {
        match self {
            TableError::MalformedHeader { .. } => "MalformedHeader",
            TableError::BadFieldCount { .. } => "BadFieldCount",
            TableError::NonNumericProbability { .. } => "NonNumericProbability",
            TableError::ValidationFailure { .. } => "ValidationFailure",
            TableError::DuplicateAreaId { .. } => "DuplicateAreaId",
            TableError::Io(_) => "Io",
            TableError::Csv(_) => "Csv",
            TableError::Json(_) => "Json",
        }
    }
}

/// One ocean area's directional distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct AreaRecord {
    pub area_id: String,
    pub directions: Distribution,
    /// Free-text location; not validated.
    pub region: Option<String>,
}

impl AreaRecord {
    pub fn new(
        area_id: impl Into<String>,
        probs: [f64; 8],
        region: Option<String>,
    ) -> Result<Self, Error> {
        let labels = DIRECTIONS.iter().map(|s| s.to_string()).collect();
        Ok(AreaRecord {
            area_id: area_id.into(),
            directions: Distribution::new(probs.to_vec(), Some(labels))?,
            region,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaIndicatorReport {
    pub area_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region: Option<String>,
    pub report: IndicatorReport,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonArea {
    area: String,
    directions: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    region: Option<String>,
}

fn record_from_fields(
    row: usize,
    area: String,
    probs: Vec<f64>,
    region: Option<String>,
) -> Result<AreaRecord, TableError> {
    let probs: [f64; 8] = probs
        .try_into()
        .map_err(|v: Vec<f64>| TableError::BadFieldCount {
            row,
            found: v.len() + 1,
        })?;
    AreaRecord::new(area, probs, region)
        .map_err(|source| TableError::ValidationFailure { row, source })
}

/// Reads an area table. Rows are numbered from 1 by position among the
/// data rows (CSV header excluded, JSON array index + 1).
pub fn parse_area_table<R: Read>(
    input: R,
    format: TableFormat,
) -> Result<Vec<AreaRecord>, TableError> {
    let records = match format {
        TableFormat::Csv => parse_csv(input)?,
        TableFormat::Json => {
            let rows: Vec<JsonArea> = serde_json::from_reader(input)?;
            rows.into_iter()
                .enumerate()
                .map(|(i, r)| record_from_fields(i + 1, r.area, r.directions, r.region))
                .collect::<Result<_, _>>()?
        }
    };
    let mut seen = HashSet::new();
    for (i, r) in records.iter().enumerate() {
        if !seen.insert(r.area_id.as_str()) {
            return Err(TableError::DuplicateAreaId {
                row: i + 1,
                area: r.area_id.clone(),
            });
        }
    }
    Ok(records)
}

fn parse_csv<R: Read>(input: R) -> Result<Vec<AreaRecord>, TableError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(input);
    let mut rows = reader.records();
    match rows.next() {
        Some(header) => {
            let header = header?;
            let found = header.iter().collect::<Vec<_>>().join(",");
            if found.trim_start_matches('\u{feff}') != CSV_HEADER {
                return Err(TableError::MalformedHeader { found });
            }
        }
        None => {
            return Err(TableError::MalformedHeader {
                found: String::new(),
            })
        }
    }
    let mut out = Vec::new();
    for (i, rec) in rows.enumerate() {
        let row = i + 1;
        let rec = rec?;
        if rec.len() != 9 {
            return Err(TableError::BadFieldCount {
                row,
                found: rec.len(),
            });
        }
        let probs = rec
            .iter()
            .skip(1)
            .zip(DIRECTIONS)
            .map(|(value, dir)| {
                value
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| TableError::NonNumericProbability {
                        row,
                        field: format!("d{dir}"),
                        value: value.to_string(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(record_from_fields(
            row,
            rec[0].trim().to_string(),
            probs,
            None,
        )?);
    }
    Ok(out)
}

/// Writes records in the same format `parse_area_table` reads. Numbers use
/// the shortest representation that parses back to the same bits.
pub fn write_area_table<W: Write>(
    records: &[AreaRecord],
    mut out: W,
    format: TableFormat,
) -> Result<(), TableError> {
    match format {
        TableFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in records {
                write!(out, "{}", r.area_id)?;
                for p in r.directions.probs() {
                    write!(out, ",{p}")?;
                }
                writeln!(out)?;
            }
        }
        TableFormat::Json => {
            let rows: Vec<JsonArea> = records
                .iter()
                .map(|r| JsonArea {
                    area: r.area_id.clone(),
                    directions: r.directions.probs().to_vec(),
                    region: r.region.clone(),
                })
                .collect();
            serde_json::to_writer_pretty(&mut out, &rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn area_report(record: &AreaRecord) -> Result<AreaIndicatorReport, Error> {
    Ok(AreaIndicatorReport {
        area_id: record.area_id.clone(),
        region: record.region.clone(),
        report: analyze(&record.directions)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankKey {
    D,
    F,
    CvRel,
    HRel,
}

impl RankKey {
    pub fn value(self, report: &IndicatorReport) -> f64 {
        match self {
            RankKey::D => report.equiv_number_d,
            RankKey::F => report.avg_number_f,
            RankKey::CvRel => report.cv_rel,
            RankKey::HRel => report.entropy_rel,
        }
    }
}

impl FromStr for RankKey {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "d" => Ok(RankKey::D),
            "f" => Ok(RankKey::F),
            "cv_rel" => Ok(RankKey::CvRel),
            "h_rel" => Ok(RankKey::HRel),
            other => Err(format!("unknown rank key {other:?}")),
        }
    }
}

/// Reports sorted by `key`, largest first; equal keys by ascending area id.
pub fn rank_areas(records: &[AreaRecord], key: RankKey) -> Result<Vec<AreaIndicatorReport>, Error> {
    if records.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut reports = records
        .iter()
        .map(area_report)
        .collect::<Result<Vec<_>, _>>()?;
    sort_by_key(&mut reports, key);
    Ok(reports)
}

pub fn sort_by_key(reports: &mut [AreaIndicatorReport], key: RankKey) {
    reports.sort_by(|a, b| {
        key.value(&b.report)
            .total_cmp(&key.value(&a.report))
            .then_with(|| a.area_id.cmp(&b.area_id))
    });
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RoseSpoke {
    pub bearing_deg: f64,
    pub direction: &'static str,
    pub probability: f64,
}

/// Eight spokes N→NW with the probabilities exactly as stored.
pub fn rose_data(record: &AreaRecord) -> Vec<RoseSpoke> {
    BEARINGS
        .iter()
        .zip(DIRECTIONS)
        .zip(record.directions.probs())
        .map(|((&bearing_deg, direction), &probability)| RoseSpoke {
            bearing_deg,
            direction,
            probability,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChartRow {
    pub area_id: String,
    pub p_total: f64,
    pub cv_rel: f64,
    pub h_rel: f64,
    pub d: f64,
    pub f: f64,
    pub g: f64,
}

impl From<&AreaIndicatorReport> for ChartRow {
    fn from(a: &AreaIndicatorReport) -> Self {
        ChartRow {
            area_id: a.area_id.clone(),
            p_total: a.report.p_total,
            cv_rel: a.report.cv_rel,
            h_rel: a.report.entropy_rel,
            d: a.report.equiv_number_d,
            f: a.report.avg_number_f,
            g: a.report.equiv_number_g,
        }
    }
}

/// Per-area plotting table, sorted by area id.
pub fn chart_data(records: &[AreaRecord]) -> Result<Vec<ChartRow>, Error> {
    if records.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut rows = records
        .iter()
        .map(|r| area_report(r).map(|a| ChartRow::from(&a)))
        .collect::<Result<Vec<_>, _>>()?;
    rows.sort_by(|a, b| a.area_id.cmp(&b.area_id));
    Ok(rows)
}
