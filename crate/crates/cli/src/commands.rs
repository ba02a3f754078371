//! The `bitangents`, `signed-count`, `all-counts` and `band` commands.

use bitangent_core::arrangement::{all_signed_counts_of, count_band};
use bitangent_core::qtype::qtype_signs;
use bitangent_core::{
    compute_bitangents_with, gw_report_of, signed_count_of, BitangentSet, CoreError, ProjLine,
    Reality,
};
use bitangent_numeric::rat::format_rat;
use bitangent_numeric::{Precision, Rat};
use serde::Serialize;
use serde_json::json;

use crate::corpus::QuarticRecord;
use crate::report::{interval_json, line_json, qtype_label, GWJson, ReportBuilder, RunReport};
use crate::CliError;

/// Bits of the line enclosures reported for real bitangents.
pub const ENCLOSURE_BITS: u32 = 64;

/// Shared options of the quartic commands.
#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub precision: Precision,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            precision: Precision::from_env(),
        }
    }
}

/// Solve for the bitangents, turning a singular input into an input error.
pub fn solve(rec: &QuarticRecord, opts: RunOptions) -> Result<BitangentSet, CliError> {
    compute_bitangents_with(&rec.quartic, opts.seed, opts.precision).map_err(|e| match e {
        CoreError::NotSmooth => CliError::Input(format!("{}: quartic is not smooth", rec.name)),
        other => CliError::Compute(other),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BitangentJson {
    pub index: usize,
    pub reality: &'static str,
    pub multiplicity: usize,
    pub hyperflex: bool,
    /// Approximate line, scaled so its largest entry is 1 (real part for
    /// complex representatives).
    pub line: [f64; 3],
    /// Imaginary part of the line for complex representatives.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line_imag: Option<[f64; 3]>,
    /// Certified enclosure of the line for real bitangents.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enclosure: Option<[[f64; 2]; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qtype: Option<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BitangentsOutput {
    pub quartic: String,
    pub line_at_infinity: [String; 3],
    pub total: usize,
    pub real: usize,
    pub real_split: usize,
    pub real_non_split: usize,
    pub complex_pairs: usize,
    pub hyperflexes: usize,
    pub solver_attempts: usize,
    pub signed_count: Option<i64>,
    pub gw_report: Option<GWJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_error: Option<String>,
    pub bitangents: Vec<BitangentJson>,
}

pub fn bitangents_output(set: &BitangentSet, m: &ProjLine) -> Result<BitangentsOutput, CliError> {
    let (signs, type_error) = match qtype_signs(set, m) {
        Ok(s) => (Some(s), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let mut bitangents = Vec::new();
    for (i, bt) in set.bitangents().iter().enumerate() {
        let approx = bt.line_approx();
        let enclosure = if bt.is_real() {
            let l = bt.line_interval(ENCLOSURE_BITS)?;
            Some([0, 1, 2].map(|k| interval_json(&l[k])))
        } else {
            None
        };
        bitangents.push(BitangentJson {
            index: i,
            reality: bt.reality().label(),
            multiplicity: bt.multiplicity(),
            hyperflex: bt.hyperflex(),
            line: approx.map(|c| c.re),
            line_imag: (!bt.is_real()).then(|| approx.map(|c| c.im)),
            enclosure,
            qtype: signs.as_ref().and_then(|s| s[i]).map(qtype_label),
        });
    }
    let (signed_count, gw_report) = if type_error.is_none() {
        (
            Some(signed_count_of(set, m)?),
            Some(gw_report_of(set, m)?.into()),
        )
    } else {
        (None, None)
    };
    Ok(BitangentsOutput {
        quartic: set.quartic().to_string(),
        line_at_infinity: line_json(m),
        total: set.total_multiplicity(),
        real: set.real_count(),
        real_split: set.count(Reality::RealSplit),
        real_non_split: set.count(Reality::RealNonSplit),
        complex_pairs: set.count(Reality::ComplexPair),
        hyperflexes: set.hyperflex_count(),
        solver_attempts: set.attempts(),
        signed_count,
        gw_report,
        type_error,
        bitangents,
    })
}

pub fn cmd_bitangents(
    rec: &QuarticRecord,
    m: &ProjLine,
    opts: RunOptions,
) -> Result<RunReport, CliError> {
    let report = ReportBuilder::new(
        "bitangents",
        json!({ "quartic": rec.to_string(), "line": line_json(m) }),
        opts.seed,
        opts.precision,
    );
    let set = solve(rec, opts)?;
    let out = bitangents_output(&set, m)?;
    Ok(report.finish(out.total == 28, out))
}

#[derive(Clone, Debug, Serialize)]
pub struct SignedCountOutput {
    pub line: [String; 3],
    pub signed_count: i64,
    pub gw_report: GWJson,
    pub real_types: Vec<(usize, &'static str)>,
}

pub fn cmd_signed_count(
    rec: &QuarticRecord,
    m: &ProjLine,
    opts: RunOptions,
) -> Result<RunReport, CliError> {
    let report = ReportBuilder::new(
        "signed-count",
        json!({ "quartic": rec.to_string(), "line": line_json(m) }),
        opts.seed,
        opts.precision,
    );
    let set = solve(rec, opts)?;
    let signs = qtype_signs(&set, m)?;
    let out = SignedCountOutput {
        line: line_json(m),
        signed_count: signed_count_of(&set, m)?,
        gw_report: gw_report_of(&set, m)?.into(),
        real_types: signs
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.map(|s| (i, qtype_label(s))))
            .collect(),
    };
    Ok(report.finish(true, out))
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    pub count: i64,
    pub line: [String; 3],
    pub direction: [String; 2],
    pub offset: String,
    /// Direct recount of the signed count at the witness line.
    pub confirmed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AllCountsOutput {
    pub counts: Vec<i64>,
    pub base_line: [String; 3],
    pub base_count: i64,
    pub grates: usize,
    pub directions: usize,
    pub regions_sampled: usize,
    pub ties: usize,
    pub witnesses: Vec<WitnessJson>,
}

pub fn cmd_all_counts(rec: &QuarticRecord, opts: RunOptions) -> Result<RunReport, CliError> {
    let report = ReportBuilder::new(
        "all-counts",
        json!({ "quartic": rec.to_string() }),
        opts.seed,
        opts.precision,
    );
    let set = solve(rec, opts)?;
    let sc = all_signed_counts_of(&set)?;
    let mut witnesses = Vec::new();
    for (c, w) in &sc.witnesses {
        witnesses.push(WitnessJson {
            count: *c,
            line: line_json(&w.line),
            direction: [format_rat(&w.direction.p), format_rat(&w.direction.q)],
            offset: format_rat(&w.offset),
            confirmed: signed_count_of(&set, &w.line)? == *c,
        });
    }
    let passed = witnesses.iter().all(|w| w.confirmed);
    let out = AllCountsOutput {
        counts: sc.counts(),
        base_line: line_json(&sc.base_line),
        base_count: sc.base_count,
        grates: sc.grate_count,
        directions: sc.directions,
        regions_sampled: sc.regions_sampled,
        ties: sc.ties,
        witnesses,
    };
    Ok(report.finish(passed, out))
}

#[derive(Clone, Debug, Serialize)]
pub struct BandIntervalJson {
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub witness_offset: String,
    pub line: [String; 3],
    pub count: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BandOutput {
    pub slope: String,
    pub counts: Vec<i64>,
    pub breakpoints: Vec<f64>,
    pub ties: usize,
    pub intervals: Vec<BandIntervalJson>,
}

/// The pencil of lines at infinity `V(y - slope x - c)` of slope `slope`.
pub fn cmd_band(rec: &QuarticRecord, slope: &Rat, opts: RunOptions) -> Result<RunReport, CliError> {
    let report = ReportBuilder::new(
        "band",
        json!({ "quartic": rec.to_string(), "slope": format_rat(slope) }),
        opts.seed,
        opts.precision,
    );
    let set = solve(rec, opts)?;
    let band = count_band(&set, slope)?;
    let mut counts: Vec<i64> = band.intervals.iter().map(|i| i.count).collect();
    counts.sort_unstable();
    counts.dedup();
    let out = BandOutput {
        slope: format_rat(&band.slope),
        counts,
        breakpoints: band.breakpoints.iter().map(|b| b.mid_f64()).collect(),
        ties: band.ties,
        intervals: band
            .intervals
            .iter()
            .map(|i| BandIntervalJson {
                lower: i.lower,
                upper: i.upper,
                witness_offset: format_rat(&i.witness),
                line: line_json(&i.line),
                count: i.count,
            })
            .collect(),
    };
    Ok(report.finish(true, out))
}
