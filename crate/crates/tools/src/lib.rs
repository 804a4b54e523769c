//! Parser, formatters, random generators, property suites and the `surreal`
//! command line front end for `surreal-core`.
pub mod bench;
pub mod textio;
