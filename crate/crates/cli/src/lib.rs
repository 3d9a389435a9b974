//! Driver for the `semistar` command: JSON job configs in, deterministic
//! JSON reports out.
//!
//! Exit status is 0 when every check passed, 1 when a mathematical check
//! failed (the report then carries a witness and a reproducing config) and 2
//! for configuration errors.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod suites;

pub use config::JobConfig;
pub use error::ConfigError;
pub use report::Report;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Validates `cfg` and dispatches it.
pub fn run(cfg: &JobConfig) -> Result<Report, ConfigError> {
    cfg.check_caps()?;
    let dom = cfg.domain()?;
    commands::run_command(cfg, &dom)
}

/// Parses and runs JSON config text.
pub fn run_json(text: &str) -> Result<Report, ConfigError> {
    run(&JobConfig::from_json(text)?)
}
