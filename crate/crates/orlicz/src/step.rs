//! Right-continuous decreasing step functions on `[0, inf)` and the
//! generalized singular value `mu`.
//!
//! `mu(x)` collects the singular values of every block, each carrying its
//! block weight as multiplicity length, merged in descending order. Values
//! within `1e-12 * (1 + value)` of each other merge into one step and
//! values at most `1e-12` merge into the implicit zero tail, which makes
//! step functions canonical and lets equality tests compare them
//! step-by-step.

use crate::algebra::AlgebraElement;
use crate::config::STEP_MERGE_TOL;
use crate::function::OrliczFunction;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum StepError {
    NegativeTime(f64),
}

impl fmt::Display for StepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepError::NegativeTime(t) => write!(f, "time parameter must be nonnegative, got {t}"),
        }
    }
}

impl std::error::Error for StepError {}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub length: f64,
    pub value: f64,
}

/// Canonical decreasing step function with an implicit zero tail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepFunction {
    steps: Vec<Step>,
}

impl StepFunction {
    /// Builds the canonical form from `(length, value)` pairs: sorted by
    /// value descending, near-equal values merged, near-zero values
    /// dropped into the tail.
    pub fn from_weighted_values<I: IntoIterator<Item = (f64, f64)>>(pairs: I) -> Self {
        let mut items: Vec<(f64, f64)> = pairs
            .into_iter()
            .filter(|&(len, v)| len > 0.0 && v > STEP_MERGE_TOL)
            .collect();
        items.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
        let mut steps: Vec<Step> = Vec::new();
        let mut run_rep = f64::NAN;
        for (len, v) in items {
            if let Some(last) = steps.last_mut() {
                if (run_rep - v).abs() <= STEP_MERGE_TOL * (1.0 + run_rep.abs()) || run_rep == v {
                    last.length += len;
                    continue;
                }
            }
            steps.push(Step {
                length: len,
                value: v,
            });
            run_rep = v;
        }
        StepFunction { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// `tau` of the support projection of the source element.
    pub fn total_length(&self) -> f64 {
        self.steps.iter().map(|s| s.length).sum()
    }

    /// Right-continuous evaluation; zero beyond the support length.
    pub fn value_at(&self, t: f64) -> Result<f64, StepError> {
        if t < 0.0 || t.is_nan() {
            return Err(StepError::NegativeTime(t));
        }
        let mut cum = 0.0;
        for s in &self.steps {
            if t < cum + s.length {
                return Ok(s.value);
            }
            cum += s.length;
        }
        Ok(0.0)
    }

    /// Step boundaries `0, l1, l1+l2, ...` including the total length.
    pub fn boundaries(&self) -> Vec<f64> {
        let mut out = vec![0.0];
        let mut cum = 0.0;
        for s in &self.steps {
            cum += s.length;
            out.push(cum);
        }
        out
    }

    /// Midpoints of each step interval.
    pub fn midpoints(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.steps.len());
        let mut cum = 0.0;
        for s in &self.steps {
            out.push(cum + 0.5 * s.length);
            cum += s.length;
        }
        out
    }

    /// `integral of phi(mu_t) dt = sum over steps of length * phi(value)`,
    /// on the extended half-line.
    pub fn integral_of(&self, phi: &OrliczFunction) -> f64 {
        let mut total = 0.0;
        for s in &self.steps {
            let v = phi.eval(s.value);
            if v.is_infinite() {
                return f64::INFINITY;
            }
            total += s.length * v;
        }
        total
    }

    /// Plain integral `int mu_t dt`.
    pub fn integral(&self) -> f64 {
        self.steps.iter().map(|s| s.length * s.value).sum()
    }

    /// `phi` composed with the step values, re-canonicalized (a
    /// nondecreasing `phi` preserves the descending order; ties and zeros
    /// re-merge).
    pub fn map_values(&self, phi: &OrliczFunction) -> StepFunction {
        StepFunction::from_weighted_values(self.steps.iter().map(|s| (s.length, phi.eval(s.value))))
    }

    /// Step-by-step equality at the canonical merge tolerance.
    pub fn approx_eq(&self, other: &StepFunction) -> bool {
        if self.steps.len() != other.steps.len() {
            return false;
        }
        self.steps.iter().zip(&other.steps).all(|(a, b)| {
            (a.length - b.length).abs() <= STEP_MERGE_TOL * (1.0 + a.length.abs())
                && ((a.value - b.value).abs() <= STEP_MERGE_TOL * (1.0 + a.value.abs())
                    || a.value == b.value)
        })
    }

    /// Pointwise domination `self <= other` sampled at all step
    /// boundaries' midpoints of both functions.
    pub fn dominated_by(&self, other: &StepFunction, tol: f64) -> bool {
        let mut ts: Vec<f64> = self.midpoints();
        ts.extend(other.midpoints());
        ts.push(0.0);
        ts.into_iter().all(|t| {
            let a = self.value_at(t).unwrap();
            let b = other.value_at(t).unwrap();
            a <= b + tol * (1.0 + b.abs())
        })
    }
}

/// Generalized singular value function of an element.
pub fn mu(x: &AlgebraElement) -> StepFunction {
    StepFunction::from_weighted_values(x.singular_values())
}

/// `mu_t(x)`: value of the step containing `t`, zero beyond the support.
pub fn mu_at(x: &AlgebraElement, t: f64) -> Result<f64, StepError> {
    mu(x).value_at(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{jacobi_eigen, AlgebraElement, BlockAlgebra, BlockSpec, Mat};

    /// Definition oracle: `inf{s >= 0 : tau(1 - e_s(|x|)) <= t}` scanned
    /// over an s-grid built from the spectrum of `|x|`.
    fn mu_oracle(x: &AlgebraElement, t: f64) -> f64 {
        let mut spectrum: Vec<(f64, f64)> = Vec::new(); // (weight, eigenvalue of |x|)
        let absx = x.abs();
        for (i, block) in x.algebra().blocks().iter().enumerate() {
            let (eigs, _) = jacobi_eigen(absx.block(i)).unwrap();
            for l in eigs {
                spectrum.push((block.weight, l.max(0.0)));
            }
        }
        let tail_mass = |s: f64| -> f64 {
            spectrum
                .iter()
                .filter(|&&(_, l)| l > s)
                .map(|&(w, _)| w)
                .sum()
        };
        let smax = spectrum.iter().map(|&(_, l)| l).fold(0.0, f64::max);
        let n = 200_000;
        for i in 0..=n {
            let s = smax * i as f64 / n as f64;
            if tail_mass(s) <= t {
                return s;
            }
        }
        smax
    }

    fn one_block(entries: &[f64]) -> AlgebraElement {
        let alg = BlockAlgebra::new(vec![BlockSpec {
            dim: entries.len(),
            weight: 1.0,
        }])
        .unwrap();
        AlgebraElement::new(alg, vec![Mat::diag(entries)]).unwrap()
    }

    #[test]
    fn mu_of_diagonal_sorts_moduli() {
        let x = one_block(&[1.0, -2.0, 3.0]);
        let m = mu(&x);
        let steps = m.steps();
        assert_eq!(steps.len(), 3);
        assert!((steps[0].value - 3.0).abs() < 1e-12 && (steps[0].length - 1.0).abs() < 1e-12);
        assert!((steps[1].value - 2.0).abs() < 1e-12);
        assert!((steps[2].value - 1.0).abs() < 1e-12);
        // definition oracle at step midpoints and boundaries
        for t in [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 2.999, 3.0, 4.0] {
            let direct = m.value_at(t).unwrap();
            let oracle = mu_oracle(&x, t);
            assert!(
                (direct - oracle).abs() <= 2e-4 * (1.0 + oracle),
                "t={t}: {direct} vs {oracle}"
            );
        }
    }

    #[test]
    fn mu_of_projection_is_single_step() {
        let alg = BlockAlgebra::new(vec![BlockSpec {
            dim: 2,
            weight: 0.75,
        }])
        .unwrap();
        let e = AlgebraElement::new(alg, vec![Mat::diag(&[1.0, 1.0])]).unwrap();
        let m = mu(&e);
        assert_eq!(m.steps().len(), 1);
        assert!((m.steps()[0].length - 1.5).abs() < 1e-12);
        assert!((m.steps()[0].value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mu_is_right_continuous_with_zero_tail() {
        let x = one_block(&[2.0, 1.0]);
        let m = mu(&x);
        assert_eq!(m.value_at(0.0).unwrap(), 2.0);
        assert_eq!(m.value_at(1.0).unwrap(), 1.0); // boundary takes the next step
        assert_eq!(m.value_at(2.0).unwrap(), 0.0);
        assert_eq!(m.value_at(100.0).unwrap(), 0.0);
        assert!(m.value_at(-0.5).is_err());
    }

    #[test]
    fn mu_invariant_under_orthogonal_rotation() {
        // SVD invariance: mu(u x) = mu(x) for block-orthogonal u
        let alg = BlockAlgebra::new(vec![
            BlockSpec {
                dim: 3,
                weight: 0.5,
            },
            BlockSpec {
                dim: 2,
                weight: 2.0,
            },
        ])
        .unwrap();
        for seed in 0..10 {
            let x = AlgebraElement::random(&alg, seed);
            // orthogonal element from the eigenbasis of a random symmetric one
            let s = AlgebraElement::random_positive(&alg, seed + 77);
            let mats: Vec<Mat> = (0..alg.blocks().len())
                .map(|i| jacobi_eigen(s.block(i)).unwrap().1)
                .collect();
            let u = AlgebraElement::new(alg.clone(), mats).unwrap();
            let ux = u.multiply(&x).unwrap();
            assert!(mu(&ux).approx_eq(&mu(&x)), "seed {seed}");
        }
    }

    #[test]
    fn mu_matches_adjoint_and_abs() {
        let alg = BlockAlgebra::new(vec![BlockSpec {
            dim: 4,
            weight: 0.3,
        }])
        .unwrap();
        for seed in 0..10 {
            let x = AlgebraElement::random(&alg, seed);
            assert!(mu(&x).approx_eq(&mu(&x.adjoint())));
            assert!(mu(&x).approx_eq(&mu(&x.abs())));
        }
    }

    #[test]
    fn merge_collapses_equal_values() {
        let f =
            StepFunction::from_weighted_values(vec![(1.0, 2.0), (0.5, 2.0 + 1e-14), (2.0, 1.0)]);
        assert_eq!(f.steps().len(), 2);
        assert!((f.steps()[0].length - 1.5).abs() < 1e-12);
        assert!((f.total_length() - 3.5).abs() < 1e-12);
    }

    #[test]
    fn near_zero_values_fall_into_the_tail() {
        let f = StepFunction::from_weighted_values(vec![(1.0, 1.0), (1.0, 1e-13)]);
        assert_eq!(f.steps().len(), 1);
        assert_eq!(f.total_length(), 1.0);
    }

    #[test]
    fn map_values_recanonicalizes() {
        let phi = OrliczFunction::power(2.0).unwrap();
        let f = StepFunction::from_weighted_values(vec![(1.0, 3.0), (1.0, 2.0)]);
        let g = f.map_values(&phi);
        assert!((g.steps()[0].value - 9.0).abs() < 1e-12);
        assert!((g.steps()[1].value - 4.0).abs() < 1e-12);
        assert!((g.integral() - 13.0).abs() < 1e-12);
    }
}
