//! Command-line front end: curve-spec parsing, the `verify`, `pairs`,
//! `twist` and `selftest` commands, and their reports.

pub mod commands;
pub mod curvespec;
pub mod expr;
pub mod report;
pub mod selftest;

pub use commands::{cmd_pairs, cmd_twist, cmd_verify, prepare, Budgets, CliError, Mode, TwistOptions};
pub use curvespec::{parse_curve_spec, CurveSpec, ParseError};
pub use report::{PairsReport, TwistDocument, TwistRecord, VerifyReport};
