//! CSV ingestion, text and JSON reports, and the `dea-facets` command line
//! on top of `dea-facets-core`.

pub mod app;
pub mod error;
pub mod report;
pub mod table;

pub use app::run;
pub use error::InputError;
pub use table::{parse_dataset, parse_decimal, write_dataset};
