//! Output envelope and number formatting shared by every command.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Metadata wrapper around every JSON payload.
#[derive(Debug, Serialize)]
pub struct Envelope<'a, P> {
    pub tool_version: &'static str,
    pub command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<String>,
    pub payload: P,
}

#[derive(Debug, Clone)]
pub struct Meta {
    pub command: &'static str,
    pub generated_at: Option<String>,
}

impl Meta {
    pub fn new(command: &'static str, timestamp: bool) -> Self {
        let generated_at = timestamp
            .then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
        Meta {
            command,
            generated_at,
        }
    }

    pub fn wrap<P: Serialize>(&self, payload: P) -> Envelope<'_, P> {
        Envelope {
            tool_version: TOOL_VERSION,
            command: self.command,
            generated_at: self.generated_at.clone(),
            payload,
        }
    }

    /// `#` comment line opening every CSV output.
    pub fn csv_comment(&self) -> String {
        let mut line = format!("# tool_version={} command={}", TOOL_VERSION, self.command);
        if let Some(ts) = &self.generated_at {
            line.push_str(&format!(" generated_at={ts}"));
        }
        line
    }
}

/// Opens `path`, or stdout when it is `None`.
pub fn sink(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Formats like C's `%.12g`: twelve significant digits, trailing zeros
/// dropped, exponent notation outside `1e-5 ..< 1e12`.
pub fn sig12(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if !(-5..DIGITS).contains(&exp) {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let fixed = format!("{:.*}", (DIGITS - 1 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(0.5), "0.5");
        assert_eq!(sig12(2.0), "2");
        assert_eq!(sig12(0.6081), "0.6081");
        assert_eq!(sig12(135.0), "135");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(8.0 / 3.0), "2.66666666667");
        assert_eq!(sig12(-7f64.sqrt()), "-2.64575131106");
        assert_eq!(sig12(0.99999999999999), "1");
        assert_eq!(sig12(1.5e-7), "1.5e-7");
        assert_eq!(sig12(0.00012345), "0.00012345");
        assert_eq!(sig12(1e15), "1e15");
        assert_eq!(sig12(999999999999.5), "1e12");
    }

    #[test]
    fn comment_header_without_timestamp() {
        let m = Meta::new("rose", false);
        assert_eq!(
            m.csv_comment(),
            format!("# tool_version={TOOL_VERSION} command=rose")
        );
        assert!(Meta::new("rose", true)
            .csv_comment()
            .contains("generated_at="));
    }
}
