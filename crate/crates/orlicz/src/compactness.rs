//! Finite-scale identities behind the compactness argument: norm
//! constancy of Rademacher images, partial-isometry lower bounds, the
//! projection-norm sandwich, and the central-carrier structure report.
//!
//! Nothing here claims operator compactness; the module verifies exactly
//! the computable identities the argument rests on and reports block
//! structure.

use crate::algebra::{
    carrier_projection, central_carrier, jacobi_eigen, partial_isometry_chain, rademacher_family,
    AlgebraElement, AlgebraError, BlockAlgebra, Mat,
};
use crate::function::OrliczFunction;
use crate::norms::luxemburg_norm;
use crate::numeric::bisect_monotone;
use crate::step::mu;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum CompactnessError {
    SpectrumBelow { lambda: f64, top: f64 },
    NoHostBlock { wanted_dim: usize },
    NotProjection(String),
    TraceTooSmall(f64),
    Algebra(AlgebraError),
}

impl fmt::Display for CompactnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompactnessError::SpectrumBelow { lambda, top } => {
                write!(
                    f,
                    "spectral projection at level {lambda} is empty (top eigenvalue {top})"
                )
            }
            CompactnessError::NoHostBlock { wanted_dim } => {
                write!(f, "no block of dimension >= {wanted_dim} carries spectrum")
            }
            CompactnessError::NotProjection(msg) => write!(f, "not a projection: {msg}"),
            CompactnessError::TraceTooSmall(t) => {
                write!(
                    f,
                    "projection trace {t} is below 1; the sandwich needs n >= 1"
                )
            }
            CompactnessError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CompactnessError {}

impl From<AlgebraError> for CompactnessError {
    fn from(e: AlgebraError) -> Self {
        CompactnessError::Algebra(e)
    }
}

/// Norm constancy of `g r_n` over a Rademacher family.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RademacherImageReport {
    pub family_size: usize,
    pub base_norm: f64,
    pub image_norms: Vec<f64>,
    pub mu_equal: bool,
    pub norms_equal: bool,
    pub holds: bool,
}

/// On a commutative `2^k`-atom algebra with unit total weight, builds the
/// Rademacher family and asserts `mu(g r_n) = mu(g)` step-function-exactly
/// and `||g r_n||_phi2 = ||g||_phi2` within `1e-10` for every `n`.
pub fn rademacher_image_check(
    g: &AlgebraElement,
    phi2: &OrliczFunction,
) -> Result<RademacherImageReport, CompactnessError> {
    let atoms = g.algebra().blocks().len();
    let k = atoms.trailing_zeros() as usize;
    if 1usize << k != atoms {
        return Err(CompactnessError::Algebra(AlgebraError::BadAtoms(format!(
            "atom count {atoms} is not a power of two"
        ))));
    }
    let family = rademacher_family(g.algebra(), k)?;
    let base_mu = mu(g);
    let base_norm = luxemburg_norm(phi2, g).value;
    let mut image_norms = Vec::with_capacity(family.len());
    let mut mu_equal = true;
    let mut norms_equal = true;
    for r in &family {
        let gr = g.multiply(r)?;
        if !mu(&gr).approx_eq(&base_mu) {
            mu_equal = false;
        }
        let n = luxemburg_norm(phi2, &gr).value;
        if (n - base_norm).abs() > 1e-10 * (1.0 + base_norm) {
            norms_equal = false;
        }
        image_norms.push(n);
    }
    Ok(RademacherImageReport {
        family_size: family.len(),
        base_norm,
        image_norms,
        mu_equal,
        norms_equal,
        holds: mu_equal && norms_equal,
    })
}

/// The partial-isometry lower-bound chain on one spectral projection.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IsometryImageReport {
    pub lambda: f64,
    /// Eigenvalue of `g` on the selected rank-1 projection.
    pub eigenvalue: f64,
    pub chain_length: usize,
    pub e1_norm: f64,
    pub image_norms: Vec<f64>,
    /// `mu(g v_n) = mu(g e_1)` step-function-exactly for every `n`.
    pub mu_equal: bool,
    /// `mu_t(g v_n) = mu_t(g e_1 g^T)^(1/2)` stepwise for every `n`.
    pub squared_chain_equal: bool,
    /// `||g v_n||_phi >= lambda ||e_1||_phi - 1e-10` for every `n`.
    pub lower_bound_holds: bool,
    pub holds: bool,
}

/// Selects a rank-1 eigenprojection `e_1` under the spectral projection
/// `chi_{[lambda, inf)}(g)` in a block of dimension >= 3 (largest
/// eigenvalue, ties to the lowest block index), transports it along a
/// matrix-unit chain and verifies the singular-value identities and the
/// norm lower bound.
pub fn isometry_image_check(
    g: &AlgebraElement,
    lambda: f64,
    phi: &OrliczFunction,
) -> Result<IsometryImageReport, CompactnessError> {
    let mut best: Option<(usize, f64, Vec<f64>)> = None; // (block, eigenvalue, eigenvector)
    let mut any_host = false;
    for (i, block) in g.algebra().blocks().iter().enumerate() {
        if block.dim < 3 {
            continue;
        }
        any_host = true;
        let (eigs, q) = jacobi_eigen(g.block(i))?;
        let top = eigs[0];
        let replace = match &best {
            Some((_, t, _)) => top > *t,
            None => true,
        };
        if replace {
            let u: Vec<f64> = (0..block.dim).map(|r| q.get(r, 0)).collect();
            best = Some((i, top, u));
        }
    }
    if !any_host {
        return Err(CompactnessError::NoHostBlock { wanted_dim: 3 });
    }
    let (host, eigenvalue, u) = best.unwrap();
    if eigenvalue < lambda {
        return Err(CompactnessError::SpectrumBelow {
            lambda,
            top: eigenvalue,
        });
    }
    // e1 = u u^T in the host block
    let dim = g.algebra().blocks()[host].dim;
    let mut mats: Vec<Mat> = g
        .algebra()
        .blocks()
        .iter()
        .map(|b| Mat::zeros(b.dim))
        .collect();
    let mut m = Mat::zeros(dim);
    for r in 0..dim {
        for c in 0..dim {
            m.set(r, c, u[r] * u[c]);
        }
    }
    mats[host] = m;
    let e1 = AlgebraElement::new(g.algebra().clone(), mats).expect("host block shape");
    let chain = partial_isometry_chain(&e1, dim)?;

    let ge1 = g.multiply(&e1)?;
    let base_mu = mu(&ge1);
    let e1_norm = luxemburg_norm(phi, &e1).value;
    let mut image_norms = Vec::with_capacity(chain.len());
    let mut mu_equal = true;
    let mut squared_chain_equal = true;
    let mut lower_bound_holds = true;
    for v in &chain {
        let gv = g.multiply(v)?;
        let gv_mu = mu(&gv);
        if !gv_mu.approx_eq(&base_mu) {
            mu_equal = false;
        }
        // mu_t(g v) = mu_t(g e1 g^T)^(1/2)
        let outer = g.multiply(&e1)?.multiply(&g.adjoint())?;
        let outer_mu = mu(&outer);
        if outer_mu.steps().len() != gv_mu.steps().len()
            || !outer_mu.steps().iter().zip(gv_mu.steps()).all(|(a, b)| {
                (a.length - b.length).abs() <= 1e-10 * (1.0 + a.length)
                    && (a.value.sqrt() - b.value).abs() <= 1e-10 * (1.0 + b.value)
            })
        {
            squared_chain_equal = false;
        }
        let n = luxemburg_norm(phi, &gv).value;
        if n < lambda * e1_norm - 1e-10 {
            lower_bound_holds = false;
        }
        image_norms.push(n);
    }
    Ok(IsometryImageReport {
        lambda,
        eigenvalue,
        chain_length: chain.len(),
        e1_norm,
        image_norms,
        mu_equal,
        squared_chain_equal,
        lower_bound_holds,
        holds: mu_equal && squared_chain_equal && lower_bound_holds,
    })
}

/// The two infima sandwiching the Luxemburg norm of a projection with
/// `n <= tau(e) < n + 1`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SandwichReport {
    pub trace: f64,
    pub n: usize,
    /// `inf{alpha : phi(1/alpha) <= 1/n}`.
    pub lower: f64,
    /// `inf{alpha : phi(1/alpha) <= 1/(n+1)}`.
    pub upper: f64,
    pub norm: f64,
    pub holds: bool,
}

/// `inf{alpha > 0 : phi(1/alpha) <= y}` by monotone bisection.
fn inf_alpha(phi: &OrliczFunction, y: f64) -> f64 {
    let ok = |alpha: f64| phi.eval(1.0 / alpha) <= y;
    let mut hi = 1.0;
    let mut guard = 0;
    while !ok(hi) {
        hi *= 2.0;
        guard += 1;
        assert!(guard < 1100, "no feasible alpha");
    }
    let mut lo = hi;
    while ok(lo) && lo > 1e-300 {
        lo *= 0.5;
    }
    if ok(lo) {
        return lo;
    }
    let b = bisect_monotone(lo, hi, ok, |m| 1e-13 * (1.0 + m), 200);
    b.hi
}

/// Brackets `||e||_phi1` between the trace-count infima of the functional
/// calculus on central projections.
pub fn projection_norm_sandwich(
    phi1: &OrliczFunction,
    e: &AlgebraElement,
) -> Result<SandwichReport, CompactnessError> {
    // projection check: e = e^T = e^2
    let sq = e.multiply(&e.adjoint())?;
    let defect = sq.sub(e)?.frobenius();
    if defect > 1e-10 * (1.0 + e.frobenius()) {
        return Err(CompactnessError::NotProjection(format!(
            "idempotence defect {defect:.3e}"
        )));
    }
    let trace = e.trace();
    if trace < 1.0 {
        return Err(CompactnessError::TraceTooSmall(trace));
    }
    let n = trace.floor() as usize;
    let lower = inf_alpha(phi1, 1.0 / n as f64);
    let upper = inf_alpha(phi1, 1.0 / (n as f64 + 1.0));
    let norm = luxemburg_norm(phi1, e).value;
    let tol = 1e-9;
    let holds = lower - tol * (1.0 + lower) <= norm && norm <= upper + tol * (1.0 + upper);
    Ok(SandwichReport {
        trace,
        n,
        lower,
        upper,
        norm,
        holds,
    })
}

/// Central-carrier structure of a multiplier at desk scale.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StructureReport {
    pub carrier_mask: Vec<bool>,
    pub block_dims: Vec<usize>,
    /// Every block is a full matrix algebra, so always true here.
    pub finite_type_i: bool,
    /// Minimum of `||g c_b||_phi` over carrier blocks; zero for `g = 0`.
    pub norm_floor: f64,
    pub block_norms: Vec<f64>,
    /// `||g c - g||` for the carrier projection `c`.
    pub reconstruction_error: f64,
    pub holds: bool,
}

/// Reads off the carrier mask, the per-block norms and the `g c = g`
/// reconstruction check.
pub fn structure_report(g: &AlgebraElement, phi: &OrliczFunction) -> StructureReport {
    let mask = central_carrier(g);
    let algebra: &BlockAlgebra = g.algebra();
    let block_dims: Vec<usize> = algebra.blocks().iter().map(|b| b.dim).collect();
    let mut block_norms = Vec::with_capacity(mask.len());
    let mut norm_floor = f64::INFINITY;
    for (i, &on) in mask.iter().enumerate() {
        let single: Vec<bool> = (0..mask.len()).map(|j| j == i).collect();
        let gc = g
            .multiply(&carrier_projection(algebra, &single))
            .expect("same algebra");
        let n = luxemburg_norm(phi, &gc).value;
        block_norms.push(n);
        if on {
            norm_floor = norm_floor.min(n);
        }
    }
    if !norm_floor.is_finite() {
        norm_floor = 0.0;
    }
    let c = carrier_projection(algebra, &mask);
    let gc = g.multiply(&c).expect("same algebra");
    let reconstruction_error = gc.sub(g).expect("same algebra").frobenius();
    let holds = reconstruction_error <= 1e-12;
    StructureReport {
        carrier_mask: mask,
        block_dims,
        finite_type_i: true,
        norm_floor,
        block_norms,
        reconstruction_error,
        holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraElement, BlockAlgebra, BlockSpec, Mat};

    #[test]
    fn rademacher_images_of_zero() {
        let alg = BlockAlgebra::dyadic_atoms(2);
        let g = AlgebraElement::zero(&alg);
        let rep = rademacher_image_check(&g, &OrliczFunction::power(2.0).unwrap()).unwrap();
        assert!(rep.holds);
        assert!(rep.image_norms.iter().all(|&n| n == 0.0));
    }

    #[test]
    fn rademacher_images_share_one_norm() {
        let alg = BlockAlgebra::dyadic_atoms(2);
        let g = AlgebraElement::from_atoms(&alg, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let phi2 = OrliczFunction::t_log1p();
        let rep = rademacher_image_check(&g, &phi2).unwrap();
        assert!(rep.holds, "{rep:?}");
        for n in &rep.image_norms {
            assert!((n - rep.base_norm).abs() <= 1e-10 * (1.0 + rep.base_norm));
        }
    }

    #[test]
    fn rademacher_identity_norm_is_projection_norm() {
        let alg = BlockAlgebra::dyadic_atoms(3);
        let g = AlgebraElement::identity(&alg);
        let phi2 = OrliczFunction::power(2.0).unwrap();
        let rep = rademacher_image_check(&g, &phi2).unwrap();
        let expected = 1.0 / phi2.formal_inverse(1.0); // tau(e0) = 1
        assert!(rep.holds);
        assert!((rep.base_norm - expected).abs() < 1e-10);
    }

    #[test]
    fn isometry_check_scalar_multiple_of_identity() {
        let alg = BlockAlgebra::new(vec![BlockSpec {
            dim: 3,
            weight: 1.0,
        }])
        .unwrap();
        let lambda = 1.3;
        let g = AlgebraElement::identity(&alg).scale(lambda);
        let rep = isometry_image_check(&g, lambda, &OrliczFunction::power(2.0).unwrap()).unwrap();
        assert!(rep.holds, "{rep:?}");
        assert!((rep.eigenvalue - lambda).abs() < 1e-12);
        for n in &rep.image_norms {
            assert!((n - lambda * rep.e1_norm).abs() <= 1e-9 * (1.0 + n));
        }
    }

    #[test]
    fn isometry_check_explicit_spectrum() {
        let alg = BlockAlgebra::new(vec![BlockSpec {
            dim: 3,
            weight: 1.0,
        }])
        .unwrap();
        let g = AlgebraElement::new(alg, vec![Mat::diag(&[3.0, 1.0, 0.5])]).unwrap();
        let phi = OrliczFunction::power(2.0).unwrap();
        let rep = isometry_image_check(&g, 2.0, &phi).unwrap();
        assert!(rep.holds, "{rep:?}");
        assert!((rep.eigenvalue - 3.0).abs() < 1e-12);
        // bound 2 ||e1||_phi holds with eigenvalue 3
        for n in &rep.image_norms {
            assert!(*n >= 2.0 * rep.e1_norm - 1e-10);
        }
    }

    #[test]
    fn isometry_check_random_positive() {
        let alg = BlockAlgebra::new(vec![BlockSpec {
            dim: 5,
            weight: 0.5,
        }])
        .unwrap();
        let phi = OrliczFunction::power(1.5).unwrap();
        for seed in 0..30 {
            let g = AlgebraElement::random_positive(&alg, seed);
            let top = g
                .singular_values()
                .iter()
                .map(|&(_, s)| s)
                .fold(0.0, f64::max);
            let rep = isometry_image_check(&g, 0.5 * top, &phi).unwrap();
            assert!(rep.holds, "seed {seed}: {rep:?}");
        }
    }

    #[test]
    fn isometry_check_rejects_lambda_above_spectrum() {
        let alg = BlockAlgebra::new(vec![BlockSpec {
            dim: 3,
            weight: 1.0,
        }])
        .unwrap();
        let g = AlgebraElement::identity(&alg);
        assert!(matches!(
            isometry_image_check(&g, 5.0, &OrliczFunction::power(2.0).unwrap()),
            Err(CompactnessError::SpectrumBelow { .. })
        ));
    }

    #[test]
    fn sandwich_exact_trace_collapses() {
        // tau(e) = n exactly: all three quantities equal n^(1/p)
        let phi = OrliczFunction::power(2.0).unwrap();
        let alg = BlockAlgebra::new(vec![BlockSpec {
            dim: 4,
            weight: 1.0,
        }])
        .unwrap();
        let e = AlgebraElement::new(alg, vec![Mat::diag(&[1.0, 1.0, 1.0, 1.0])]).unwrap();
        let rep = projection_norm_sandwich(&phi, &e).unwrap();
        assert!(rep.holds);
        assert!((rep.norm - 2.0).abs() < 1e-10);
        assert!((rep.lower - 2.0).abs() < 1e-9);
    }

    #[test]
    fn sandwich_fractional_trace() {
        // tau(e) = 2.5, phi = t^2: sqrt(2) <= sqrt(2.5) <= sqrt(3)
        let phi = OrliczFunction::power(2.0).unwrap();
        let alg = BlockAlgebra::new(vec![
            BlockSpec {
                dim: 2,
                weight: 1.0,
            },
            BlockSpec {
                dim: 1,
                weight: 0.5,
            },
        ])
        .unwrap();
        let e = AlgebraElement::identity(&alg);
        let rep = projection_norm_sandwich(&phi, &e).unwrap();
        assert!(rep.holds, "{rep:?}");
        assert!((rep.norm - 2.5f64.sqrt()).abs() < 1e-10);
        assert!((rep.lower - 2f64.sqrt()).abs() < 1e-9);
        assert!((rep.upper - 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn sandwich_unit_trace_unit_modular() {
        // any phi with phi(1) = 1 gives ||e|| = 1 at tau(e) = 1
        for phi in [
            OrliczFunction::power(3.0).unwrap(),
            OrliczFunction::power(1.0).unwrap(),
        ] {
            let alg = BlockAlgebra::new(vec![BlockSpec {
                dim: 1,
                weight: 1.0,
            }])
            .unwrap();
            let e = AlgebraElement::identity(&alg);
            let rep = projection_norm_sandwich(&phi, &e).unwrap();
            assert!(rep.holds);
            assert!((rep.norm - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn sandwich_rejects_small_trace() {
        let phi = OrliczFunction::power(2.0).unwrap();
        let alg = BlockAlgebra::new(vec![BlockSpec {
            dim: 1,
            weight: 0.5,
        }])
        .unwrap();
        let e = AlgebraElement::identity(&alg);
        assert!(matches!(
            projection_norm_sandwich(&phi, &e),
            Err(CompactnessError::TraceTooSmall(_))
        ));
    }

    #[test]
    fn structure_report_reads_blocks() {
        let alg = BlockAlgebra::new(vec![
            BlockSpec {
                dim: 2,
                weight: 1.0,
            },
            BlockSpec {
                dim: 3,
                weight: 1.0,
            },
            BlockSpec {
                dim: 1,
                weight: 1.0,
            },
        ])
        .unwrap();
        let mut g = AlgebraElement::zero(&alg);
        g.blocks_mut()[0].set(0, 0, 2.0);
        g.blocks_mut()[2].set(0, 0, 0.5);
        let rep = structure_report(&g, &OrliczFunction::power(2.0).unwrap());
        assert_eq!(rep.carrier_mask, vec![true, false, true]);
        assert!(rep.holds);
        assert!((rep.norm_floor - 0.5).abs() < 1e-10);
        assert!(rep.norm_floor > 0.0);
    }

    #[test]
    fn structure_report_zero_element() {
        let alg = BlockAlgebra::new(vec![BlockSpec {
            dim: 2,
            weight: 1.0,
        }])
        .unwrap();
        let rep = structure_report(
            &AlgebraElement::zero(&alg),
            &OrliczFunction::power(2.0).unwrap(),
        );
        assert!(rep.carrier_mask.iter().all(|&m| !m));
        assert_eq!(rep.norm_floor, 0.0);
        assert!(rep.holds);
    }

    #[test]
    fn structure_report_random_reconstruction() {
        let alg = BlockAlgebra::new(vec![
            BlockSpec {
                dim: 2,
                weight: 0.5,
            },
            BlockSpec {
                dim: 2,
                weight: 2.0,
            },
        ])
        .unwrap();
        let phi = OrliczFunction::t_log1p();
        for seed in 0..20 {
            let g = AlgebraElement::random(&alg, seed);
            let rep = structure_report(&g, &phi);
            assert!(rep.reconstruction_error <= 1e-12);
            assert!(rep.norm_floor > 0.0, "random g is nonzero");
        }
    }
}
