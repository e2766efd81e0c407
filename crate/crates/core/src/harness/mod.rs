//! Desk-scale experiments: utility surfaces, capacity reports, Monte Carlo
//! batches and entropy trajectories, all with CSV plus JSON metadata output.

mod capacity;
mod montecarlo;
mod output;
mod sweep;
mod tables;
mod trajectories;

pub use capacity::{
    capacity_report, capacity_report_with, CapacityReport, DEFAULT_CAPACITY_TOL, DEFAULT_MAX_ITER,
};
pub use montecarlo::{
    monte_carlo_runs, run_trial, MonteCarloConfig, MonteCarloStats, TrialSummary, CAPACITY_SLACK,
    MONTE_CARLO_COLUMNS,
};
pub use output::{fmt_g6, run_id, RunMetadata};
pub use sweep::{
    sweep_utility_surface, AGrid, GridRange, Marginal, SweepResult, SweepRow, SweepSpec,
    SweepStatus, SWEEP_COLUMNS,
};
pub use tables::{
    capacity_csv, equilibrium_csv, transcript_csv, utility_csv, CAPACITY_COLUMNS,
    EQUILIBRIUM_COLUMNS, TRANSCRIPT_COLUMNS, UTILITY_COLUMNS,
};
pub use trajectories::{
    entropy_trajectories, ActionProfile, TrajectorySeries, TrajectoryTable, TRAJECTORY_COLUMNS,
};
