//! Flat-file quartic corpora.
//!
//! One record per line:
//!
//! ```text
//! name | i,j,k:num/den i,j,k:num/den ... | note
//! ```
//!
//! Terms are `x^i y^j z^k` with `i + j + k = 4`, written in graded
//! lexicographic order; missing monomials are zero. The note field is
//! optional. Blank lines and lines starting with `#` are ignored.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use bitangent_core::geometry::MONOMIALS;
use bitangent_core::Quartic;
use bitangent_numeric::rat::{format_rat, parse_rat};
use bitangent_numeric::Rat;
use num_traits::Zero;

use crate::CliError;

/// Built-in quartics addressable by name instead of a file path.
pub const BUILTINS: [&str; 3] = ["trott", "fermat", "hyperflex"];

/// A named quartic with a free-form note.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticRecord {
    pub name: String,
    pub quartic: Quartic,
    pub note: String,
}

impl QuarticRecord {
    pub fn new(name: impl Into<String>, quartic: Quartic, note: impl Into<String>) -> Self {
        QuarticRecord {
            name: name.into(),
            quartic,
            note: note.into(),
        }
    }
}

impl fmt::Display for QuarticRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |", self.name)?;
        for (e, c) in MONOMIALS.iter().zip(self.quartic.coeffs()) {
            if !c.is_zero() {
                write!(f, " {},{},{}:{}", e[0], e[1], e[2], format_rat(c))?;
            }
        }
        if !self.note.is_empty() {
            write!(f, " | {}", self.note)?;
        }
        Ok(())
    }
}

pub fn builtin(name: &str) -> Option<QuarticRecord> {
    let (quartic, note) = match name {
        "trott" => (Quartic::trott(), "Trott curve, 28 real bitangents"),
        "fermat" => (Quartic::fermat(), "Fermat quartic, no real points"),
        "hyperflex" => (Quartic::hyperflex_example(), "V(x) is a hyperflex line"),
        _ => return None,
    };
    Some(QuarticRecord::new(name, quartic, note))
}

fn parse_term(term: &str) -> Option<([u32; 3], Rat)> {
    let (exps, coeff) = term.split_once(':')?;
    let mut it = exps.split(',').map(|s| s.trim().parse::<u32>());
    let e = [it.next()?.ok()?, it.next()?.ok()?, it.next()?.ok()?];
    if it.next().is_some() {
        return None;
    }
    Some((e, parse_rat(coeff)?))
}

/// Parse one record. `line_no` is only used in error messages.
pub fn parse_record(line: &str, line_no: usize) -> Result<QuarticRecord, CliError> {
    let err = |msg: String| CliError::Input(format!("line {line_no}: {msg}"));
    let mut fields = line.splitn(3, '|');
    let name = fields.next().unwrap_or("").trim();
    let terms = fields
        .next()
        .ok_or_else(|| err("expected `name | terms [| note]`".into()))?;
    let note = fields.next().unwrap_or("").trim();
    if name.is_empty() || name.contains(char::is_whitespace) {
        return Err(err(format!("invalid name {name:?}")));
    }
    let mut coeffs: [Rat; 15] = std::array::from_fn(|_| Rat::zero());
    let mut seen = [false; 15];
    for term in terms.split_whitespace() {
        let (e, c) = parse_term(term).ok_or_else(|| err(format!("malformed term {term:?}")))?;
        let k = MONOMIALS
            .iter()
            .position(|m| *m == e)
            .ok_or_else(|| err(format!("{term:?} is not a degree 4 monomial")))?;
        if std::mem::replace(&mut seen[k], true) {
            return Err(err(format!(
                "monomial {},{},{} given twice",
                e[0], e[1], e[2]
            )));
        }
        coeffs[k] = c;
    }
    let quartic = Quartic::new(coeffs).map_err(|e| err(e.to_string()))?;
    Ok(QuarticRecord::new(name, quartic, note))
}

pub fn parse_corpus(text: &str) -> Result<Vec<QuarticRecord>, CliError> {
    let mut out = Vec::new();
    let mut names = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let rec = parse_record(line, i + 1)?;
        if !names.insert(rec.name.clone()) {
            return Err(CliError::Input(format!(
                "line {}: duplicate name {:?}",
                i + 1,
                rec.name
            )));
        }
        out.push(rec);
    }
    Ok(out)
}

pub fn write_corpus(records: &[QuarticRecord]) -> String {
    records.iter().map(|r| format!("{r}\n")).collect()
}

pub fn read_corpus(path: &Path) -> Result<Vec<QuarticRecord>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_corpus(&text).map_err(|e| match e {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Resolve a quartic argument: a built-in name or a corpus file, optionally
/// selecting a record by name (default: the first record).
pub fn load_quartic(source: &str, name: Option<&str>) -> Result<QuarticRecord, CliError> {
    if let Some(rec) = builtin(source) {
        return Ok(rec);
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(CliError::Input(format!(
            "{source}: no such file and not one of {}",
            BUILTINS.join(", ")
        )));
    }
    let records = read_corpus(path)?;
    match name {
        Some(n) => records
            .into_iter()
            .find(|r| r.name == n)
            .ok_or_else(|| CliError::Input(format!("{source}: no record named {n:?}"))),
        None => records
            .into_iter()
            .next()
            .ok_or_else(|| CliError::Input(format!("{source}: empty corpus"))),
    }
}
