//! Versioned JSON reports.

use std::path::Path;
use std::time::Instant;

use bitangent_core::{GWClass, ProjLine};
use bitangent_numeric::rat::format_rat;
use bitangent_numeric::{Precision, RInterval};
use serde::Serialize;
use serde_json::Value;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct PrecisionStats {
    pub start_bits: u32,
    pub cap_bits: u32,
}

impl From<Precision> for PrecisionStats {
    fn from(p: Precision) -> Self {
        PrecisionStats {
            start_bits: p.start_bits,
            cap_bits: p.cap_bits,
        }
    }
}

/// Envelope shared by every command. Everything except `wall_time_ms` is
/// reproducible for fixed inputs and seed.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub inputs: Value,
    pub seed: u64,
    pub precision: PrecisionStats,
    pub passed: bool,
    pub output: Value,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Write to `out`, or to stdout when `out` is `None`. Files are written
    /// to a temporary sibling first and renamed into place.
    pub fn emit(&self, out: Option<&Path>) -> Result<(), CliError> {
        write_atomically(out, &self.to_json())
    }
}

pub fn write_atomically(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    let Some(path) = out else {
        print!("{text}");
        return Ok(());
    };
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    std::fs::write(&tmp, text).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

/// Times a command and assembles its report.
pub struct ReportBuilder {
    command: String,
    inputs: Value,
    seed: u64,
    precision: Precision,
    start: Instant,
}

impl ReportBuilder {
    pub fn new(command: &str, inputs: Value, seed: u64, precision: Precision) -> Self {
        ReportBuilder {
            command: command.to_string(),
            inputs,
            seed,
            precision,
            start: Instant::now(),
        }
    }

    pub fn finish(self, passed: bool, output: impl Serialize) -> RunReport {
        RunReport {
            schema: SCHEMA_VERSION,
            command: self.command,
            inputs: self.inputs,
            seed: self.seed,
            precision: self.precision.into(),
            passed,
            output: serde_json::to_value(output).expect("output serializes"),
            wall_time_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GWJson {
    pub plus: usize,
    pub minus: usize,
    pub rank: usize,
    pub signature: i64,
    pub class: String,
}

impl From<GWClass> for GWJson {
    fn from(c: GWClass) -> Self {
        GWJson {
            plus: c.n_plus,
            minus: c.n_minus,
            rank: c.rank(),
            signature: c.signature(),
            class: c.to_string(),
        }
    }
}

pub fn line_json(l: &ProjLine) -> [String; 3] {
    l.coords().clone().map(|c| format_rat(&c))
}

/// Outward-rounded `[lo, hi]` in double precision.
pub fn interval_json(x: &RInterval) -> [f64; 2] {
    let lo = x.lo().to_f64();
    let hi = x.hi().to_f64();
    let lo = if bitangent_numeric::Dyadic::from_f64(lo).is_some_and(|d| d.sub(x.lo()).signum() > 0)
    {
        lo.next_down()
    } else {
        lo
    };
    let hi = if bitangent_numeric::Dyadic::from_f64(hi).is_some_and(|d| d.sub(x.hi()).signum() < 0)
    {
        hi.next_up()
    } else {
        hi
    };
    [lo, hi]
}

pub fn qtype_label(sign: i8) -> &'static str {
    if sign > 0 {
        "<1>"
    } else {
        "<-1>"
    }
}
