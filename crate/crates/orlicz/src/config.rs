//! Declared tolerances, grid defaults and the runtime configuration.
//!
//! Every threshold used by a probe, a norm bracket or a verification
//! assert lives here as a named constant, so nothing numerical is hidden
//! inside an implementation.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Convexity slack for second divided differences.
pub const EPS_CONV: f64 = 1e-9;
/// Slack for the Young inequality: `gap >= -EPS_YOUNG * (1 + s*t)`.
pub const EPS_YOUNG: f64 = 1e-9;
/// Target bracket width for norm bisections: `1e-10 * (1 + value)`.
pub const BISECT_WIDTH: f64 = 1e-10;
/// Maximal bisection iterations for norms and inverses.
pub const BISECT_MAX_ITER: usize = 200;
/// Step-merge tolerance: singular values closer than `1e-12 * (1 + value)` merge.
pub const STEP_MERGE_TOL: f64 = 1e-12;
/// Eigenvalues of `xᵀx` in `[-EIG_CLAMP, 0)` are clamped to 0; the gram
/// path also zeroes eigenvalues within `EIG_CLAMP * ||gram||` of zero,
/// since forming the gram leaves noise of that order.
pub const EIG_CLAMP: f64 = 1e-12;
/// Zero-clamp of the direct symmetric eigen path, relative to the block
/// Frobenius norm. Sits 4x above the Jacobi termination target (5e-15)
/// and far below the canonical step tail threshold for desk-scale norms,
/// so genuinely tiny spectra survive where the step rule keeps them.
pub const SYM_EIG_REL_CLAMP: f64 = 2e-14;
/// Central-carrier support threshold on block Frobenius norms.
pub const CARRIER_TOL: f64 = 1e-12;
/// A growth-probe ratio trail that rises monotonically by more than this
/// factor across the grid is reported as divergent (condition fails).
pub const DIVERGENCE_FACTOR: f64 = 1e3;
/// "Limit is infinite" heuristic: the last three sampled ratios each
/// exceed 10x their predecessor.
pub const TREND_FACTOR: f64 = 10.0;
/// Numeric-conjugate grid density (points per decade of the v-grid).
pub const CONJ_POINTS_PER_DECADE: usize = 512;
/// Numeric-conjugate grid floor and cap: `[1e-6, min(b_phi, 1e6)]`.
pub const CONJ_V_MIN: f64 = 1e-6;
pub const CONJ_V_MAX: f64 = 1e6;
/// Strictness margin when checking the strict inequalities of the
/// product-criteria bullets.
pub const STRICT_MARGIN: f64 = 1e-12;
/// Falsification rays for the three-function inequality sweep this
/// sigma range, log-spaced.
pub const RAY_SIGMA_MIN: f64 = 1e-12;
pub const RAY_SIGMA_MAX: f64 = 1e12;
pub const RAY_POINTS: usize = 601;

/// Geometric probe grid: log-spaced points on `[min, max]`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct ProbeGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl ProbeGrid {
    pub fn new(min: f64, max: f64, points: usize) -> Self {
        ProbeGrid { min, max, points }
    }

    /// Points of the grid, clipped from below at `floor` when `floor > min`.
    pub fn points_from(&self, floor: f64) -> Vec<f64> {
        let lo = self.min.max(floor);
        if lo >= self.max {
            return Vec::new();
        }
        crate::numeric::log_grid(lo, self.max, self.points)
    }

    pub fn describe(&self) -> String {
        format!(
            "{} log-spaced points on [{:.3e}, {:.3e}]",
            self.points, self.min, self.max
        )
    }
}

impl Default for ProbeGrid {
    fn default() -> Self {
        ProbeGrid {
            min: 1e-3,
            max: 1e3,
            points: 121,
        }
    }
}

/// Output format of the command-line front end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

/// Runtime configuration: grid bounds and densities, tolerances, seed and
/// output format. Defaults are embedded; a JSON config file and command
/// line flags may override them.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct RunConfig {
    pub grid_min: f64,
    pub grid_max: f64,
    pub points_per_decade: usize,
    pub eps_conv: f64,
    pub eps_young: f64,
    pub bisect_width: f64,
    pub seed: u64,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            grid_min: 1e-3,
            grid_max: 1e3,
            points_per_decade: 20,
            eps_conv: EPS_CONV,
            eps_young: EPS_YOUNG,
            bisect_width: BISECT_WIDTH,
            seed: 0,
            format: OutputFormat::Json,
        }
    }
}

/// Configuration validation failure.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid config: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    /// Checks the structural invariants: positive ordered bounds and a
    /// density of at least 8 points per decade.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.grid_min > 0.0 && self.grid_min < self.grid_max) {
            return Err(ConfigError(format!(
                "grid bounds must satisfy 0 < min < max, got [{}, {}]",
                self.grid_min, self.grid_max
            )));
        }
        if self.points_per_decade < 8 {
            return Err(ConfigError(format!(
                "points_per_decade must be >= 8, got {}",
                self.points_per_decade
            )));
        }
        for (name, v) in [
            ("eps_conv", self.eps_conv),
            ("eps_young", self.eps_young),
            ("bisect_width", self.bisect_width),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ConfigError(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// The probe grid implied by the configured bounds and density.
    pub fn probe_grid(&self) -> ProbeGrid {
        let decades = (self.grid_max / self.grid_min).log10();
        let points = ((decades * self.points_per_decade as f64).round() as usize + 1).max(2);
        ProbeGrid::new(self.grid_min, self.grid_max, points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn sparse_grid_rejected() {
        let cfg = RunConfig {
            points_per_decade: 4,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn unordered_bounds_rejected() {
        let cfg = RunConfig {
            grid_min: 10.0,
            grid_max: 1.0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn default_probe_grid_density() {
        let g = RunConfig::default().probe_grid();
        assert_eq!(g.points, 121);
        assert_eq!(g.min, 1e-3);
    }
}
