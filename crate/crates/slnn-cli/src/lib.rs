//! File formats and helpers behind the `slnn` command-line tool: JSON problem
//! documents, JSON reports, and the seeded gradient-check harness.

pub mod gradcheck;
pub mod problem_file;
pub mod report_json;
