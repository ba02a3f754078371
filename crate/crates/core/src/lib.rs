//! Bitangents of smooth plane quartics over the rationals, their types
//! relative to a line at infinity, signed counts and their enumeration, and
//! the pointed cubic surface dictionary.

pub mod arrangement;
pub mod cubic;
pub mod error;
pub mod geometry;
pub mod qtype;
pub mod sampling;
pub mod solver;

pub use arrangement::{
    all_signed_counts, all_signed_counts_of, conjecture_scan, count_band, grates, transform_count,
    CountBand, DualGrateArrangement, Grate, ScanReport, SignedCounts,
};
pub use error::{CoreError, Result};
pub use geometry::{
    is_smooth, real_flex_count, real_points_on_line, restrict_to_line, BinaryQuartic, LineChart,
    ProjLine, ProjectiveMap, Quartic,
};
pub use qtype::{
    gw_report, gw_report_of, local_index, local_index_of, qtype, signed_count, signed_count_of,
    standard_chart, GWClass, LocalIndex, StandardChartData,
};
pub use solver::{
    compute_bitangents, compute_bitangents_with, square_conditions, Bitangent, BitangentSet,
    DualChart, Reality, TangencyPoints,
};
