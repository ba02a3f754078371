//! Command-line front end: corpus files, JSON reports, verification suites
//! and SVG plots.

pub mod commands;
pub mod corpus;
pub mod plot;
pub mod report;
pub mod suites;

use bitangent_core::{CoreError, ProjLine};
use bitangent_numeric::rat::parse_rat;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Compute(#[from] CoreError),
}

impl CliError {
    /// Process exit code: 2 for bad input, 1 for failed computations.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

/// Parse three rational coordinates of a line.
pub fn parse_line(coords: &[String]) -> Result<ProjLine, CliError> {
    let parsed: Vec<_> = coords
        .iter()
        .map(|c| parse_rat(c).ok_or_else(|| CliError::Input(format!("invalid coordinate {c:?}"))))
        .collect::<Result<_, _>>()?;
    let coords: [_; 3] = parsed
        .try_into()
        .map_err(|_| CliError::Input("a line needs exactly three coordinates".into()))?;
    ProjLine::new(coords).map_err(|e| CliError::Input(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Input("x".into()).exit_code(), 2);
        assert_eq!(CliError::Io("x".into()).exit_code(), 2);
        assert_eq!(CliError::Compute(CoreError::Undecidable(64)).exit_code(), 1);
    }

    #[test]
    fn lines_parse_from_decimals_and_fractions() {
        let args = ["-1.25", "1", "1233/1000"].map(String::from);
        let l = parse_line(&args).unwrap();
        assert_eq!(l.to_string(), "[1, -4/5, -1233/1250]");
        assert!(parse_line(&["0", "0", "0"].map(String::from)).is_err());
        assert!(parse_line(&["1", "2"].map(String::from)).is_err());
        assert!(parse_line(&["1", "x", "2"].map(String::from)).is_err());
    }
}
