//! Episode execution, batching and the experiment sweeps.

mod batch;
mod csv;
mod episode;
mod sweeps;

pub use batch::{run_batch, run_episodes, run_indexed};
pub use csv::CsvTable;
pub use episode::{run_episode, EpisodeResult, TraceRecord};
pub use sweeps::{
    alpha_grid, composition_csv, default_strategies, endogenous_csv, run_endogenous, strength_csv,
    sweep_composition, sweep_strength, ternary_grid, Composition, CompositionRow, EndogenousRow,
    StrengthRow,
};
