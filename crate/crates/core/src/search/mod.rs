//! Completion search for twelve-word twin-pair-free codes and the explicit
//! construction of a disjoint equivalent pair.

pub mod checkpoint;
pub mod config;
pub mod engine;
pub mod theorem52;

pub use checkpoint::{run_with_checkpoint, Checkpoint};
pub use config::{
    cases_for_dim, initial_configs, initial_configs_with_stats, ConfigStats, InitialConfig,
};
pub use engine::{
    accepts, all_configs, complete, recheck, run_all, run_configs, summarize, CaseSummary,
    Completion, SearchOptions, SearchOutcome,
};
pub use theorem52::{theorem52_codes, verify_theorem52, verify_theorem52_with, Theorem52Report};
