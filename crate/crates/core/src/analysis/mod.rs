//! Minimizer oracle, rate fitting, the rate catalog and method comparison.

mod compare;
mod oracle;
mod rate;

pub use compare::{compare, write_rows_csv, ComparisonRow, RowStatus, COMPARISON_CSV_HEADER};
pub use oracle::{anchor, find_minimizer, ORACLE_TOL};
pub use rate::{estimate_rate, estimate_trace_rate, theoretical_rate, RateEstimate, Regime};
