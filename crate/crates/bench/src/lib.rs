//! Shared inputs for the criterion benchmarks.

use rstc_core::harness::{AGrid, GridRange, Marginal, SweepSpec};

/// The 81-point surface with `nu = 0.5` fixed.
pub fn standard_sweep() -> SweepSpec {
    SweepSpec {
        fixed: Marginal::Nu,
        fixed_value: 0.5,
        varying: GridRange::new(0.1, 0.9, 0.1),
        a_grid: AGrid::Fraction(GridRange::new(0.1, 0.9, 0.1)),
        coupling: None,
    }
}
