//! Configuration loading and the `validate`, `tables`, `triangle` and `fill`
//! commands behind the `kerphi` binary.

pub mod commands;
pub mod config;

pub use commands::{
    cmd_fill, cmd_tables, cmd_triangle, cmd_validate, lattice, parse_word, random_element, LoopSource, Outcome,
    TriangleArgs,
};
pub use config::{DehnConfig, FactorConfig, FactorsConfig, InstanceConfig, SCHEMA_VERSION};
