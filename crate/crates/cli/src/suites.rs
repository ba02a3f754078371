//! Verification suites run by `bitangents verify`.

use std::str::FromStr;

use bitangent_core::arrangement::{conjecture_scan, outside_expected_range};
use bitangent_core::cubic::{verify_theorem_main, PointedCubic};
use bitangent_core::qtype::qtype_sign;
use bitangent_core::sampling::{random_compact_quartic, random_quartic, Topology};
use bitangent_core::{
    gw_report_of, real_flex_count, real_points_on_line, signed_count_of, GWClass, ProjLine,
    Quartic, Reality,
};
use bitangent_numeric::rat::format_rat;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::commands::{solve, RunOptions};
use crate::corpus::{builtin, QuarticRecord};
use crate::report::{ReportBuilder, RunReport};
use crate::CliError;

pub const NOT_A_PROOF: &str =
    "NOTE: a randomized search for counterexamples, not a proof; passing only means none was found";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Signed count 4 for quartics with no real points at infinity.
    Cap,
    /// Signature 3 of the other 27 bitangents relative to a rational one.
    Main,
    /// Real flexes plus twice the real non-split bitangents is 8, with a
    /// hyperflex counted as two flexes.
    Klein,
    /// The exact tangency identity of pointed cubic surfaces.
    Sametype,
    /// Attainable signed counts lie in `{0, 2, 4, 6, 8}`.
    Conjecture,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Cap => "cap",
            Suite::Main => "main",
            Suite::Klein => "klein",
            Suite::Sametype => "sametype",
            Suite::Conjecture => "conjecture",
        }
    }

    /// Number of generated cases when `--n` is not given.
    pub fn default_n(self) -> usize {
        match self {
            Suite::Cap => 20,
            Suite::Main => 10,
            Suite::Klein => 6,
            Suite::Sametype => 100,
            Suite::Conjecture => 12,
        }
    }

    fn accepts_corpus(self) -> bool {
        matches!(self, Suite::Cap | Suite::Klein | Suite::Conjecture)
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "cap" => Suite::Cap,
            "main" => Suite::Main,
            "klein" => Suite::Klein,
            "sametype" => Suite::Sametype,
            "conjecture" => Suite::Conjecture,
            _ => return Err(format!("unknown suite {s:?}")),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

impl CaseResult {
    fn new(name: impl Into<String>, passed: bool, detail: Value) -> Self {
        CaseResult {
            name: name.into(),
            passed,
            detail,
        }
    }

    fn error(name: impl Into<String>, e: impl ToString) -> Self {
        CaseResult::new(name, false, json!({ "error": e.to_string() }))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutput {
    pub suite: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub banner: Option<&'static str>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub summary: Value,
    pub cases: Vec<CaseResult>,
}

impl SuiteOutput {
    fn new(suite: Suite, cases: Vec<CaseResult>, skipped: usize, summary: Value) -> Self {
        let passed = cases.iter().filter(|c| c.passed).count();
        SuiteOutput {
            suite: suite.name(),
            banner: (suite == Suite::Conjecture).then_some(NOT_A_PROOF),
            passed,
            failed: cases.len() - passed,
            skipped,
            summary,
            cases,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// `n` seeded quartics with compact real locus in the chart `z = 1`.
pub fn compact_corpus(n: usize, seed: u64) -> Vec<QuarticRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| QuarticRecord::new(format!("compact-{i}"), random_compact_quartic(&mut rng), ""))
        .collect()
}

/// `n` seeded quartics cycling through the six real topological types.
pub fn topology_corpus(n: usize, seed: u64) -> Vec<QuarticRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let t = Topology::ALL[i % Topology::ALL.len()];
            QuarticRecord::new(
                format!("{}-{i}", t.name()),
                random_quartic(t, &mut rng),
                format!("{} real bitangents expected", t.real_bitangents()),
            )
        })
        .collect()
}

/// `n` seeded pointed cubics whose branch quartic is smooth and whose
/// bitangent `V(y1)` is not a hyperflex.
pub fn branch_cubics(n: usize, seed: u64) -> Vec<(PointedCubic, Quartic)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let v = PointedCubic::random(&mut rng, 3);
        let Ok(f) = v.branch_quartic() else { continue };
        let hyperflex = v
            .bridge_tangency()
            .map(|t| t.is_hyperflex())
            .unwrap_or(true);
        if !hyperflex && f.is_smooth() {
            out.push((v, f));
        }
    }
    out
}

pub fn run_cap(corpus: &[QuarticRecord], opts: RunOptions) -> SuiteOutput {
    let inf = ProjLine::z_axis_at_infinity();
    let mut cases = Vec::new();
    let mut skipped = 0;
    for rec in corpus {
        match real_points_on_line(&rec.quartic, &inf) {
            Ok(0) => {}
            Ok(_) => {
                skipped += 1;
                continue;
            }
            Err(e) => {
                cases.push(CaseResult::error(&rec.name, e));
                continue;
            }
        }
        let result = solve(rec, opts)
            .and_then(|set| Ok((signed_count_of(&set, &inf)?, gw_report_of(&set, &inf)?)));
        cases.push(match result {
            Ok((s, gw)) => CaseResult::new(
                &rec.name,
                s == 4 && gw == GWClass::new(16, 12),
                json!({ "signed_count": s, "gw_report": gw.to_string() }),
            ),
            Err(e) => CaseResult::error(&rec.name, e),
        });
    }
    SuiteOutput::new(Suite::Cap, cases, skipped, Value::Null)
}

fn main_case(
    name: String,
    f: &Quartic,
    l: &ProjLine,
    kw: Option<GWClass>,
    opts: RunOptions,
) -> CaseResult {
    let rec = QuarticRecord::new(name.clone(), f.clone(), "");
    let result = solve(&rec, opts).and_then(|set| {
        let check = verify_theorem_main(&set, l)?;
        let bt = &set.bitangents()[check.bitangent];
        let type_at = if bt.is_real() {
            let y3 = ProjLine::from_i64s([0, 0, 1])?;
            Some(GWClass::from_sign(qtype_sign(bt, &y3)?))
        } else {
            None
        };
        Ok((check, bt.reality(), type_at))
    });
    match result {
        Ok((check, reality, type_at)) => {
            let kw_agrees = match (kw, type_at) {
                (Some(kw), Some(t)) => Some(kw == t),
                _ => None,
            };
            CaseResult::new(
                name,
                check.passed && kw_agrees != Some(false),
                json!({
                    "line_at_infinity": l.to_string(),
                    "class": check.class.to_string(),
                    "rank": check.class.rank(),
                    "signature": check.class.signature(),
                    "bitangent_reality": reality.label(),
                    "cubic_type_agrees": kw_agrees,
                }),
            )
        }
        Err(e) => CaseResult::error(name, e),
    }
}

/// Fermat with each of its real bitangents as the line at infinity, then
/// `n` branch quartics of pointed cubics with `V(y1)` at infinity.
pub fn run_main(n: usize, opts: RunOptions) -> SuiteOutput {
    let fermat = Quartic::fermat();
    let mut cases = Vec::new();
    for (s2, s3) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let l = ProjLine::from_i64s([1, s2, s3]).expect("nonzero");
        cases.push(main_case(format!("fermat {l}"), &fermat, &l, None, opts));
    }
    let y1 = ProjLine::from_i64s([1, 0, 0]).expect("nonzero");
    for (i, (v, f)) in branch_cubics(n, opts.seed).into_iter().enumerate() {
        let kw = v.kw_type().class();
        cases.push(main_case(format!("branch-{i}"), &f, &y1, kw, opts));
    }
    SuiteOutput::new(Suite::Main, cases, 0, Value::Null)
}

pub fn run_klein(corpus: &[QuarticRecord], opts: RunOptions) -> SuiteOutput {
    let cases = corpus
        .iter()
        .map(|rec| {
            let result = solve(rec, opts).and_then(|set| {
                Ok((
                    real_flex_count(&rec.quartic)?,
                    set.hyperflex_count(),
                    set.count(Reality::RealNonSplit),
                ))
            });
            match result {
                Ok((flexes, hyperflexes, non_split)) => CaseResult::new(
                    &rec.name,
                    flexes + hyperflexes + 2 * non_split == 8,
                    json!({
                        "real_flexes": flexes,
                        "real_hyperflexes": hyperflexes,
                        "real_non_split": non_split,
                    }),
                ),
                Err(e) => CaseResult::error(&rec.name, e),
            }
        })
        .collect();
    SuiteOutput::new(Suite::Klein, cases, 0, Value::Null)
}

pub fn run_sametype(n: usize, seed: u64) -> SuiteOutput {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = (0..n)
        .map(|i| {
            let v = PointedCubic::random(&mut rng, 6);
            match v.verify_sametype_identity() {
                Ok(id) => CaseResult::new(
                    format!("cubic-{i}"),
                    id.holds,
                    json!({ "lhs": format_rat(&id.lhs), "rhs": format_rat(&id.rhs), "m": format_rat(&id.m) }),
                ),
                Err(e) => CaseResult::error(format!("cubic-{i}"), e),
            }
        })
        .collect();
    SuiteOutput::new(Suite::Sametype, cases, 0, Value::Null)
}

/// Every computation error is reported as a failed case, as is every count
/// outside `{0, 2, 4, 6, 8}`.
pub fn run_conjecture(corpus: &[QuarticRecord], seed: u64) -> SuiteOutput {
    let quartics: Vec<Quartic> = corpus.iter().map(|r| r.quartic.clone()).collect();
    let scan = conjecture_scan(&quartics, 1, seed);
    let cases = scan
        .entries
        .iter()
        .map(|e| {
            let name = &corpus[e.corpus_index].name;
            match &e.result {
                Ok(r) => {
                    let counts = r.counts();
                    let bad: Vec<Value> = r
                        .witnesses
                        .iter()
                        .filter(|(c, _)| outside_expected_range(**c))
                        .map(|(c, w)| json!({ "count": c, "line": w.line.to_string() }))
                        .collect();
                    CaseResult::new(
                        name,
                        bad.is_empty(),
                        json!({
                            "real_bitangents": e.real_bitangents,
                            "counts": counts,
                            "counterexamples": bad,
                        }),
                    )
                }
                Err(err) => CaseResult::error(name, err),
            }
        })
        .collect();
    let histogram: Vec<Value> = scan
        .count_sets()
        .into_iter()
        .map(|(set, n)| json!({ "counts": set, "quartics": n }))
        .collect();
    let summary = json!({
        "counterexamples": scan.counterexamples.len(),
        "errors": scan.failures(),
        "count_sets": histogram,
    });
    SuiteOutput::new(Suite::Conjecture, cases, 0, summary)
}

/// Run `suite` on the given corpus, or on generated cases when `corpus` is
/// `None`.
pub fn cmd_verify(
    suite: Suite,
    corpus: Option<Vec<QuarticRecord>>,
    n: Option<usize>,
    opts: RunOptions,
) -> Result<RunReport, CliError> {
    if corpus.is_some() && !suite.accepts_corpus() {
        return Err(CliError::Input(format!(
            "the {} suite generates its own cases and takes no corpus",
            suite.name()
        )));
    }
    let n = n.unwrap_or(suite.default_n());
    let report = ReportBuilder::new(
        "verify",
        json!({
            "suite": suite.name(),
            "n": n,
            "corpus": corpus.as_ref().map(|c| c.iter().map(|r| r.name.clone()).collect::<Vec<_>>()),
        }),
        opts.seed,
        opts.precision,
    );
    let out = match suite {
        Suite::Cap => run_cap(
            &corpus.unwrap_or_else(|| compact_corpus(n, opts.seed)),
            opts,
        ),
        Suite::Main => run_main(n, opts),
        Suite::Klein => {
            let corpus = corpus.unwrap_or_else(|| {
                let mut c: Vec<QuarticRecord> = ["trott", "fermat"]
                    .iter()
                    .filter_map(|b| builtin(b))
                    .collect();
                c.extend(topology_corpus(n, opts.seed));
                c
            });
            run_klein(&corpus, opts)
        }
        Suite::Sametype => run_sametype(n, opts.seed),
        Suite::Conjecture => run_conjecture(
            &corpus.unwrap_or_else(|| topology_corpus(n, opts.seed)),
            opts.seed,
        ),
    };
    Ok(report.finish(out.all_passed(), out))
}
