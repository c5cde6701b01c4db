//! Fixture loading, report emission and the command runner behind `hoc`.

pub mod fixture;
pub mod report;
pub mod run;

pub use fixture::{load_fixture, parse_fixture, FixtureFile, FixtureKind, FixturePayload};
pub use report::{Format, Record, Report, Table};
pub use run::{error_exit_code, run, Command, RunConfig};
