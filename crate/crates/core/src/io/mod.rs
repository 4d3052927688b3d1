//! Persistence, export and golden-data verification.

pub mod bfile;
pub mod cache;
pub mod fixtures;
pub mod verify;

pub use bfile::{export_bfile, export_sequence_bfile, BfileLayout};
pub use cache::{cache_to_string, load_cache, parse_cache, save_cache};
pub use fixtures::{Bound, FixtureCell, FixtureSource, ReferenceFixture};
pub use verify::{verify, CellCheck, Method, Outcome, VerifyInputs, VerifyReport};
