//! Fixture files and the `mcdef` command runner.

pub mod fixture;
pub mod run;

pub use fixture::{parse_fixture, serialize_fixture, Fixture, FixtureError, Kind};
pub use run::{run, Command, Flags, Format, RunError, RunReport};
