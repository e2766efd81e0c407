//! Utility surfaces over (varying marginal, a) with the other marginal fixed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{validation, Result};
use crate::game_model::{joint_from_params, utility_pair, Coupling, TwoPartyGameParams};
use crate::info_theory::mutual_information;
use crate::units::LogBase;

use super::output::{csv_error, csv_writer, fmt_g6, run_id, RunMetadata};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Marginal {
    Mu,
    Nu,
}

/// Inclusive arithmetic range `start, start + step, ..., <= end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRange {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl GridRange {
    pub fn new(start: f64, end: f64, step: f64) -> Self {
        GridRange { start, end, step }
    }

    fn validate(&self, what: &str, lo: f64, hi: f64, open: bool) -> Result<()> {
        if !self.step.is_finite() || self.step <= 0.0 {
            return Err(validation(format!(
                "{what} step must be positive, got {}",
                self.step
            )));
        }
        if self.end < self.start {
            return Err(validation(format!(
                "{what} range end {} is below start {}",
                self.end, self.start
            )));
        }
        let inside = |x: f64| {
            if open {
                x > lo && x < hi
            } else {
                x >= lo && x <= hi
            }
        };
        if !inside(self.start) || !inside(self.end) {
            let interval = if open { "(0, 1)" } else { "[0, 1]" };
            return Err(validation(format!(
                "{what} range [{}, {}] must lie in {interval}",
                self.start, self.end
            )));
        }
        Ok(())
    }

    /// Grid points computed as `start + k * step` to avoid accumulated drift.
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.end - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|k| self.start + k as f64 * self.step)
            .collect()
    }
}

/// How the joint mass `a` is gridded for each (mu, nu).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum AGrid {
    /// Absolute values of `a`; points outside the Fréchet interval are skipped and counted.
    Absolute(GridRange),
    /// Relative positions in `[0, 1]` inside the Fréchet interval; always feasible.
    Fraction(GridRange),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub fixed: Marginal,
    pub fixed_value: f64,
    pub varying: GridRange,
    pub a_grid: AGrid,
    /// When set, `a` follows the coupling and `a_grid` is ignored.
    pub coupling: Option<Coupling>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.fixed_value > 0.0 && self.fixed_value < 1.0) {
            return Err(validation(format!(
                "fixed marginal {} must lie in (0, 1)",
                self.fixed_value
            )));
        }
        self.varying.validate("varying marginal", 0.0, 1.0, true)?;
        if self.coupling.is_none() {
            match self.a_grid {
                AGrid::Absolute(r) => r.validate("a", 0.0, 1.0, false)?,
                AGrid::Fraction(r) => r.validate("a fraction", 0.0, 1.0, false)?,
            }
        }
        Ok(())
    }

    fn a_count(&self) -> usize {
        match (self.coupling, self.a_grid) {
            (Some(_), _) => 1,
            (None, AGrid::Absolute(r) | AGrid::Fraction(r)) => r.points().len(),
        }
    }

    pub fn grid_size(&self) -> usize {
        self.varying.points().len() * self.a_count()
    }

    fn marginals(&self, v: f64) -> (f64, f64) {
        match self.fixed {
            Marginal::Nu => (v, self.fixed_value),
            Marginal::Mu => (self.fixed_value, v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub mu: f64,
    pub nu: f64,
    pub a: f64,
    pub u1: f64,
    pub u2: f64,
    pub standard_mi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepStatus {
    Ok,
    /// No grid point was feasible.
    EmptyFeasibleGrid,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
    pub skipped_count: usize,
    pub status: SweepStatus,
    pub run_id: String,
}

pub const SWEEP_COLUMNS: [&str; 6] = ["mu", "nu", "a", "u1", "u2", "standard_mi"];

/// Evaluate both utilities and the standard mutual information on every
/// feasible grid point. Rows are ordered by (varying index, a index).
pub fn sweep_utility_surface(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let varying = spec.varying.points();
    let per_point: Vec<(Vec<SweepRow>, usize)> = varying
        .par_iter()
        .map(|&v| sweep_column(spec, v))
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(spec.grid_size());
    let mut skipped_count = 0;
    for (col, skipped) in per_point {
        rows.extend(col);
        skipped_count += skipped;
    }
    let status = if rows.is_empty() {
        SweepStatus::EmptyFeasibleGrid
    } else {
        SweepStatus::Ok
    };
    Ok(SweepResult {
        spec: *spec,
        rows,
        skipped_count,
        status,
        run_id: run_id(&("sweep", spec)),
    })
}

fn sweep_column(spec: &SweepSpec, v: f64) -> Result<(Vec<SweepRow>, usize)> {
    let (mu, nu) = spec.marginals(v);
    let (lo, hi) = TwoPartyGameParams::frechet_bounds(mu, nu);
    let candidates: Vec<f64> = match (spec.coupling, spec.a_grid) {
        (Some(c), _) => vec![c.joint_mass(mu, nu)],
        (None, AGrid::Absolute(r)) => r.points(),
        (None, AGrid::Fraction(r)) => r.points().iter().map(|f| lo + f * (hi - lo)).collect(),
    };
    let mut rows = Vec::with_capacity(candidates.len());
    let mut skipped = 0;
    for a in candidates {
        let params = TwoPartyGameParams::new(mu, nu, a);
        if !params.is_feasible() {
            skipped += 1;
            continue;
        }
        let (u1, u2) = utility_pair(&params)?;
        let standard_mi = mutual_information(&joint_from_params(&params)?);
        rows.push(SweepRow {
            mu,
            nu,
            a,
            u1,
            u2,
            standard_mi,
        });
    }
    Ok((rows, skipped))
}

impl SweepResult {
    /// Write the CSV body; information columns are converted to `base`.
    pub fn write_csv<W: std::io::Write>(&self, out: W, base: LogBase) -> crate::Result<()> {
        let mut w = csv_writer(out);
        w.write_record(SWEEP_COLUMNS).map_err(csv_error)?;
        for r in &self.rows {
            w.write_record([
                fmt_g6(r.mu),
                fmt_g6(r.nu),
                fmt_g6(r.a),
                fmt_g6(base.from_bits(r.u1)),
                fmt_g6(base.from_bits(r.u2)),
                fmt_g6(base.from_bits(r.standard_mi)),
            ])
            .map_err(csv_error)?;
        }
        w.flush()
            .map_err(|e| validation(format!("csv output failed: {e}")))?;
        Ok(())
    }

    pub fn to_csv_string(&self, base: LogBase) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf, base).expect("in-memory csv");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    pub fn metadata(&self, base: LogBase) -> RunMetadata {
        RunMetadata {
            command: "sweep".into(),
            run_id: self.run_id.clone(),
            log_base: base.value(),
            columns: SWEEP_COLUMNS.iter().map(|s| s.to_string()).collect(),
            rows: self.rows.len(),
            details: serde_json::json!({
                "spec": self.spec,
                "coupling": self.spec.coupling.map(Coupling::name),
                "skipped_count": self.skipped_count,
                "grid_size": self.spec.grid_size(),
                "status": self.status,
            }),
        }
    }

    /// Maximum of `u1` over `a` for each distinct varying-marginal value, in grid order.
    pub fn max_over_a(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::new();
        for r in &self.rows {
            let v = match self.spec.fixed {
                Marginal::Nu => r.mu,
                Marginal::Mu => r.nu,
            };
            let u = match self.spec.fixed {
                Marginal::Nu => r.u1,
                Marginal::Mu => r.u2,
            };
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 = last.1.max(u),
                _ => out.push((v, u)),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nu_half(a_grid: AGrid) -> SweepSpec {
        SweepSpec {
            fixed: Marginal::Nu,
            fixed_value: 0.5,
            varying: GridRange::new(0.1, 0.9, 0.1),
            a_grid,
            coupling: None,
        }
    }

    #[test]
    fn fraction_grid_has_81_rows() {
        let r = sweep_utility_surface(&nu_half(AGrid::Fraction(GridRange::new(0.1, 0.9, 0.1))))
            .unwrap();
        assert_eq!(r.rows.len(), 81);
        assert_eq!(r.skipped_count, 0);
        assert_eq!(r.status, SweepStatus::Ok);
    }

    #[test]
    fn absolute_grid_counts_skips() {
        let spec = nu_half(AGrid::Absolute(GridRange::new(0.0, 1.0, 0.05)));
        let r = sweep_utility_surface(&spec).unwrap();
        assert_eq!(r.rows.len() + r.skipped_count, spec.grid_size());
        assert!(r.skipped_count > 0);
        for row in &r.rows {
            assert!(TwoPartyGameParams::new(row.mu, row.nu, row.a).is_feasible());
        }
    }

    #[test]
    fn independence_coupling_gives_zero_utility() {
        let mut spec = nu_half(AGrid::Fraction(GridRange::new(0.0, 1.0, 0.5)));
        spec.coupling = Some(Coupling::Independent);
        let r = sweep_utility_surface(&spec).unwrap();
        assert_eq!(r.rows.len(), 9);
        assert!(r
            .rows
            .iter()
            .all(|row| row.u1 < 1e-12 && row.standard_mi < 1e-12));
    }

    #[test]
    fn empty_grid_status() {
        // a in [0.95, 1.0] is infeasible when nu = 0.5
        let r = sweep_utility_surface(&nu_half(AGrid::Absolute(GridRange::new(0.95, 1.0, 0.05))))
            .unwrap();
        assert!(r.rows.is_empty());
        assert_eq!(r.status, SweepStatus::EmptyFeasibleGrid);
        assert_eq!(r.skipped_count, 18);
    }

    #[test]
    fn invalid_specs() {
        let mut spec = nu_half(AGrid::Fraction(GridRange::new(0.1, 0.9, 0.1)));
        spec.varying = GridRange::new(0.0, 0.9, 0.1);
        assert!(sweep_utility_surface(&spec).is_err());
        spec.varying = GridRange::new(0.1, 0.9, 0.0);
        assert!(sweep_utility_surface(&spec).is_err());
        spec.varying = GridRange::new(0.1, 0.9, 0.1);
        spec.fixed_value = 1.0;
        assert!(sweep_utility_surface(&spec).is_err());
    }

    #[test]
    fn csv_is_deterministic_with_header() {
        let spec = nu_half(AGrid::Fraction(GridRange::new(0.1, 0.9, 0.4)));
        let a = sweep_utility_surface(&spec)
            .unwrap()
            .to_csv_string(LogBase::BITS);
        let b = sweep_utility_surface(&spec)
            .unwrap()
            .to_csv_string(LogBase::BITS);
        assert_eq!(a, b);
        assert!(a.starts_with("mu,nu,a,u1,u2,standard_mi\n"));
        assert_eq!(a.lines().count(), 1 + 27);
    }

    #[test]
    fn range_points_are_exact_multiples() {
        let p = GridRange::new(0.1, 0.9, 0.1).points();
        assert_eq!(p.len(), 9);
        assert_eq!(p[2], 0.1 + 2.0 * 0.1);
        assert_eq!(GridRange::new(0.55, 0.95, 0.05).points().len(), 9);
    }
}
