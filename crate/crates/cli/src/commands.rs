use std::fmt;
use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::Path;

use equinum::distributions::{from_counts, sweep_binomial, uniform};
use equinum::oracle::{self, OracleResult};
use equinum::waveclimate::{
    self, parse_area_table, rose_data, sort_by_key, AreaIndicatorReport, AreaRecord, ChartRow,
    RankKey, TableFormat,
};
use equinum::{Distribution, Error, IndicatorReport};

use crate::output::{sig12, sink, Meta};
use crate::{
    AnalyzeArgs, Check, GwsArgs, InputFormat, OracleArgs, OutputFormat, Rank, RoseArgs, SweepArgs,
    EXIT_CHECK_FAILED, EXIT_DATA, EXIT_USAGE,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Data(format!("{}: {e}", e.kind()))
    }
}

impl From<waveclimate::TableError> for CliError {
    fn from(e: waveclimate::TableError) -> Self {
        match &e {
            waveclimate::TableError::ValidationFailure { source, .. } => {
                CliError::Data(format!("{} ({}): {e}", e.kind(), source.kind()))
            }
            _ => CliError::Data(format!("{}: {e}", e.kind())),
        }
    }
}

fn write_err(path: Option<&Path>, e: io::Error) -> CliError {
    match path {
        Some(p) => CliError::Data(format!("cannot write output {}: {e}", p.display())),
        None => CliError::Data(format!("cannot write output: {e}")),
    }
}

/// Writes `body` to `path` or stdout.
fn emit(
    path: Option<&Path>,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), CliError> {
    let mut out = sink(path).map_err(|e| write_err(path, e))?;
    body(&mut *out)
        .and_then(|_| out.flush())
        .map_err(|e| write_err(path, e))
}

fn write_json<P: serde::Serialize>(out: &mut dyn Write, meta: &Meta, payload: P) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, &meta.wrap(payload))?;
    writeln!(out)
}

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("cannot open input {}: {e}", path.display())))
}

#[derive(serde::Deserialize)]
struct ProbsFile {
    probs: Vec<f64>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

/// Parses a probability file: JSON array, JSON object, or delimited numbers.
/// Lines starting with `#` are ignored in the delimited form.
fn parse_probs_file(text: &str) -> Result<(Vec<f64>, Option<Vec<String>>), CliError> {
    let trimmed = text.trim_start();
    let bad_json = |e: serde_json::Error| CliError::Data(format!("invalid JSON input: {e}"));
    if trimmed.starts_with('[') {
        return Ok((serde_json::from_str(trimmed).map_err(bad_json)?, None));
    }
    if trimmed.starts_with('{') {
        let f: ProbsFile = serde_json::from_str(trimmed).map_err(bad_json)?;
        return Ok((f.probs, f.labels));
    }
    let mut probs = Vec::new();
    for line in text.lines().filter(|l| !l.trim_start().starts_with('#')) {
        for tok in line
            .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let v = tok.parse::<f64>().map_err(|_| {
                CliError::Data(format!("NonNumericProbability: {tok:?} is not a number"))
            })?;
            probs.push(v);
        }
    }
    Ok((probs, None))
}

const REPORT_FIELDS: [&str; 13] = [
    "n_outcomes",
    "p_total",
    "p_mean",
    "variance",
    "ref_variance",
    "cv",
    "cv_rel",
    "entropy_bits",
    "entropy_rel",
    "avg_number_f",
    "equiv_number_d",
    "equiv_number_g",
    "duality_residual",
];

fn report_values(r: &IndicatorReport) -> [String; 13] {
    [
        r.n_outcomes.to_string(),
        sig12(r.p_total),
        sig12(r.p_mean),
        sig12(r.variance),
        sig12(r.ref_variance),
        sig12(r.cv),
        sig12(r.cv_rel),
        sig12(r.entropy_bits),
        sig12(r.entropy_rel),
        sig12(r.avg_number_f),
        sig12(r.equiv_number_d),
        sig12(r.equiv_number_g),
        sig12(r.duality_residual),
    ]
}

fn input_distribution(args: &AnalyzeArgs) -> Result<Distribution, CliError> {
    let sources = [
        !args.probs.is_empty(),
        !args.counts.is_empty(),
        args.input.is_some(),
    ];
    if sources.iter().filter(|&&s| s).count() != 1 {
        return Err(CliError::Usage(
            "exactly one of --probs, --counts or --input is required".into(),
        ));
    }
    if !args.counts.is_empty() {
        return Ok(from_counts(&args.counts)?);
    }
    let (probs, labels) = match &args.input {
        Some(path) => parse_probs_file(&read_input(path)?)?,
        None => (args.probs.clone(), None),
    };
    Ok(Distribution::new(probs, labels)?)
}

pub fn analyze(args: &AnalyzeArgs, timestamp: bool) -> Result<u8, CliError> {
    let dist = input_distribution(args)?;
    let report = equinum::analyze(&dist)?;
    let meta = Meta::new("analyze", timestamp);
    emit(args.output.as_deref(), |out| match args.format {
        OutputFormat::Json => write_json(out, &meta, report),
        OutputFormat::Csv => {
            writeln!(out, "{}", meta.csv_comment())?;
            writeln!(out, "{}", REPORT_FIELDS.join(","))?;
            writeln!(out, "{}", report_values(&report).join(","))
        }
    })?;
    Ok(0)
}

pub fn binomial_sweep(args: &SweepArgs, timestamp: bool) -> Result<u8, CliError> {
    let points = sweep_binomial::<f64>(&args.n, args.p_steps as usize).map_err(|e| match e {
        Error::ParameterOutOfRange { .. } | Error::ZeroSize => CliError::Usage(e.to_string()),
        other => other.into(),
    })?;
    let meta = Meta::new("binomial-sweep", timestamp);
    emit(args.output.as_deref(), |out| {
        writeln!(out, "{}", meta.csv_comment())?;
        writeln!(out, "n,p,cv,cv_rel,entropy_bits,f,d,g")?;
        for s in &points {
            let r = &s.report;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                s.n,
                sig12(s.p),
                sig12(r.cv),
                sig12(r.cv_rel),
                sig12(r.entropy_bits),
                sig12(r.avg_number_f),
                sig12(r.equiv_number_d),
                sig12(r.equiv_number_g)
            )?;
        }
        Ok(())
    })?;
    Ok(0)
}

fn table_format(path: &Path, explicit: Option<InputFormat>) -> TableFormat {
    match explicit {
        Some(InputFormat::Csv) => TableFormat::Csv,
        Some(InputFormat::Json) => TableFormat::Json,
        None => match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => TableFormat::Json,
            _ => TableFormat::Csv,
        },
    }
}

fn load_areas(path: &Path, format: Option<InputFormat>) -> Result<Vec<AreaRecord>, CliError> {
    let file = File::open(path)
        .map_err(|e| CliError::Data(format!("cannot open input {}: {e}", path.display())))?;
    Ok(parse_area_table(
        BufReader::new(file),
        table_format(path, format),
    )?)
}

fn rank_key(r: Rank) -> RankKey {
    match r {
        Rank::D => RankKey::D,
        Rank::F => RankKey::F,
        Rank::CvRel => RankKey::CvRel,
        Rank::HRel => RankKey::HRel,
    }
}

pub fn gws(args: &GwsArgs, timestamp: bool) -> Result<u8, CliError> {
    let records = load_areas(&args.input, args.format)?;
    if records.is_empty() {
        return Err(Error::EmptyInput.into());
    }
    let mut reports = records
        .iter()
        .map(waveclimate::area_report)
        .collect::<Result<Vec<AreaIndicatorReport>, _>>()?;
    match args.rank {
        Some(key) => sort_by_key(&mut reports, rank_key(key)),
        None => reports.sort_by(|a, b| a.area_id.cmp(&b.area_id)),
    }
    let meta = Meta::new("gws", timestamp);

    if args.report.is_some() || args.chart.is_none() {
        emit(args.report.as_deref(), |out| {
            write_json(out, &meta, &reports)
        })?;
    }
    if let Some(path) = &args.chart {
        emit(Some(path), |out| {
            writeln!(out, "{}", meta.csv_comment())?;
            writeln!(out, "area_id,p_total,cv_rel,h_rel,d,f,g")?;
            for row in reports.iter().map(ChartRow::from) {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    row.area_id,
                    sig12(row.p_total),
                    sig12(row.cv_rel),
                    sig12(row.h_rel),
                    sig12(row.d),
                    sig12(row.f),
                    sig12(row.g)
                )?;
            }
            Ok(())
        })?;
    }
    Ok(0)
}

pub fn rose(args: &RoseArgs, timestamp: bool) -> Result<u8, CliError> {
    let records = load_areas(&args.input, args.format)?;
    let record = records
        .iter()
        .find(|r| r.area_id == args.area)
        .ok_or_else(|| {
            CliError::Data(format!(
                "UnknownArea: area {:?} not in {}",
                args.area,
                args.input.display()
            ))
        })?;
    let meta = Meta::new("rose", timestamp);
    emit(args.output.as_deref(), |out| {
        writeln!(out, "{}", meta.csv_comment())?;
        writeln!(out, "bearing_deg,direction,probability")?;
        for s in rose_data(record) {
            writeln!(
                out,
                "{},{},{}",
                sig12(s.bearing_deg),
                s.direction,
                sig12(s.probability)
            )?;
        }
        Ok(())
    })?;
    Ok(0)
}

fn usage_on_param(e: Error) -> CliError {
    match e {
        Error::ParameterOutOfRange { .. } => CliError::Usage(format!("{}: {e}", e.kind())),
        other => other.into(),
    }
}

pub fn oracle(args: &OracleArgs, timestamp: bool) -> Result<u8, CliError> {
    let target = || -> Result<Distribution, CliError> {
        if args.probs.is_empty() {
            uniform(args.n).map_err(|e| CliError::Usage(format!("{}: {e}", e.kind())))
        } else {
            Ok(Distribution::new(args.probs.clone(), None)?)
        }
    };
    let mut results: Vec<OracleResult> = Vec::with_capacity(args.checks.len());
    for check in &args.checks {
        let r = match check {
            Check::MaxVariance => {
                oracle::mc_max_variance(args.n, args.p_total, args.trials, args.seed)
                    .map_err(usage_on_param)?
            }
            Check::Bounds => oracle::verify_sum_squares_bounds(&target()?)?,
            Check::Cross => oracle::cross_check_report(&target()?)?,
        };
        results.push(r);
    }
    let meta = Meta::new("oracle", timestamp);
    emit(None, |out| {
        for r in &results {
            serde_json::to_writer(&mut *out, &meta.wrap(r))?;
            writeln!(out)?;
        }
        Ok(())
    })?;
    Ok(if results.iter().all(|r| r.passed) {
        0
    } else {
        EXIT_CHECK_FAILED
    })
}
