//! CSV formatting and run metadata shared by every harness output.

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Format with 6 significant digits, in the style of C's `%g`.
pub fn fmt_g6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // `{:.5e}` rounds correctly to 6 significant digits; reuse its exponent.
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!(
            "{}e{sign}{:02}",
            trim_zeros(mantissa.to_string()),
            exp.abs()
        )
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        if t == "-0" {
            "0".to_string()
        } else {
            t.to_string()
        }
    } else {
        s
    }
}

/// Stable identifier derived from the run's full configuration; no timestamps.
pub fn run_id<T: Serialize>(config: &T) -> String {
    let canonical = serde_json::to_vec(config).expect("config is serializable");
    let digest = Sha256::digest(&canonical);
    hex::encode(&digest[..8])
}

/// Sidecar document written next to every CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunMetadata {
    pub command: String,
    pub run_id: String,
    pub log_base: f64,
    pub columns: Vec<String>,
    pub rows: usize,
    /// Command-specific details (coupling, skipped counts, seeds).
    pub details: serde_json::Value,
}

impl RunMetadata {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("metadata is serializable")
    }
}

pub(crate) fn csv_writer<W: std::io::Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

pub(crate) fn csv_error(e: csv::Error) -> crate::Error {
    crate::Error::Validation(format!("csv output failed: {e}"))
}
