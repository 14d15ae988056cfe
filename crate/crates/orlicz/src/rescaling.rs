//! Multiplier rescaling maps and the equivalent-measure map on atomic
//! measure pairs, each with the norm bound its proof chain certifies.
//!
//! The equivalent-measure bounds deserve a note on constants. With the
//! maximal `a` satisfying `phi(a s t) <= phi(s) phi(t)` on the probe grid,
//! the Luxemburg argument certifies `||phi^{-1}(d) f||_2 <= (1/a) ||f||_1`
//! (take `lambda = s/a` in the modular inequality), and dually the minimal
//! Nabla' scaling `b` certifies `||phi^{-1}(d) f||_2 >= (1/b) ||f||_1`.
//! For `c t^p` the ratio is exactly `c^{-1/p} = 1/a = 1/b`, so both
//! bounds are tight, and unscaled powers give an exact isometry.

use crate::algebra::{AlgebraElement, AlgebraError, BlockAlgebra, BlockSpec};
use crate::config::ProbeGrid;
use crate::function::OrliczFunction;
use crate::norms::{luxemburg_norm, NormResult};
use crate::probe::{probe_delta2, probe_delta_prime, probe_delta_prime_a_form, probe_nabla_prime};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum RescalingError {
    /// A growth-condition or axiom precondition fails; the map is not
    /// covered by its proof chain.
    NotApplicable(String),
    Input(String),
    Algebra(AlgebraError),
}

impl fmt::Display for RescalingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RescalingError::NotApplicable(msg) => write!(f, "not applicable: {msg}"),
            RescalingError::Input(msg) => write!(f, "invalid input: {msg}"),
            RescalingError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RescalingError {}

impl From<AlgebraError> for RescalingError {
    fn from(e: AlgebraError) -> Self {
        RescalingError::Algebra(e)
    }
}

/// Outcome of the composition-contraction lemma check
/// `||phi(|a|)||_psi <= ||a||_zeta` under `||a||_zeta < 1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LemmaLmReport {
    pub zeta_norm: f64,
    /// False when `||a||_zeta >= 1`; no assertion is made then.
    pub precondition_ok: bool,
    pub image_psi_norm: Option<f64>,
    pub holds: Option<bool>,
}

/// Checks `||phi(|a|)||_psi <= ||a||_{psi o phi} + 1e-8` for elements in
/// the open unit ball of the composed function.
pub fn lemma_lm_check(
    psi: &OrliczFunction,
    phi: &OrliczFunction,
    a: &AlgebraElement,
) -> Result<LemmaLmReport, RescalingError> {
    let (zeta, verdict) = OrliczFunction::compose(psi, phi);
    if !verdict.valid {
        return Err(RescalingError::NotApplicable(
            "psi o phi fails the Orlicz axioms".into(),
        ));
    }
    let zeta_norm = luxemburg_norm(&zeta, a).value;
    if !(zeta_norm < 1.0) {
        return Ok(LemmaLmReport {
            zeta_norm,
            precondition_ok: false,
            image_psi_norm: None,
            holds: None,
        });
    }
    let image = a.abs().apply_function(phi)?;
    let image_norm = luxemburg_norm(psi, &image).value;
    Ok(LemmaLmReport {
        zeta_norm,
        precondition_ok: true,
        image_psi_norm: Some(image_norm),
        holds: Some(image_norm <= zeta_norm + 1e-8),
    })
}

/// Certificate of the Delta2 rescaling chain behind `rescale_up`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RescaleUpReport {
    /// `alpha` with `||alpha g||_zeta < 1`.
    pub alpha: f64,
    /// Minimal `n` with `alpha >= 2^-n`.
    pub doublings: u32,
    /// Delta2 constant of `phi2` on the probe grid.
    pub k_delta2: f64,
    /// Domination constant `K^n` with `phi2(g) <= K^n phi2(alpha g)`.
    pub domination: f64,
    pub alpha_g_zeta_norm: f64,
    pub image_psi_star_norm: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Maps a positive `g` to `phi2(g)` and certifies
/// `||phi2(g)||_{psi*} <= K^n ||alpha g||_{psi o ... }` through the
/// contraction lemma and the Delta2 chain. Requires `zeta = psi* o phi2`
/// to be an Orlicz function and `phi2` to pass the Delta2 probe.
pub fn rescale_up(
    psi: &OrliczFunction,
    phi2: &OrliczFunction,
    g: &AlgebraElement,
    grid: &ProbeGrid,
) -> Result<(AlgebraElement, RescaleUpReport), RescalingError> {
    let psi_star = psi.conjugate();
    let (zeta, verdict) = OrliczFunction::compose(&psi_star, phi2);
    if !verdict.valid {
        return Err(RescalingError::NotApplicable(
            "psi* o phi2 fails the Orlicz axioms".into(),
        ));
    }
    let d2 = probe_delta2(phi2, grid.min, grid.max, grid.points);
    if !d2.holds {
        return Err(RescalingError::NotApplicable(
            "phi2 fails the Delta2 probe".into(),
        ));
    }
    let k = d2.constant;
    let image = g.apply_function(phi2)?;
    let g_zeta = luxemburg_norm(&zeta, g).value;
    if g_zeta == 0.0 {
        let report = RescaleUpReport {
            alpha: 1.0,
            doublings: 0,
            k_delta2: k,
            domination: 1.0,
            alpha_g_zeta_norm: 0.0,
            image_psi_star_norm: 0.0,
            bound: 0.0,
            holds: true,
        };
        return Ok((image, report));
    }
    let alpha = if g_zeta < 0.5 {
        1.0
    } else {
        1.0 / (2.0 * g_zeta)
    };
    let doublings = (1.0 / alpha).log2().ceil().max(0.0) as u32;
    let domination = k.powi(doublings as i32);
    let alpha_g_zeta_norm = luxemburg_norm(&zeta, &g.scale(alpha)).value;
    let image_norm = luxemburg_norm(&psi_star, &image).value;
    let bound = domination * alpha_g_zeta_norm;
    let holds = image_norm.is_finite() && image_norm <= bound + 1e-8;
    let report = RescaleUpReport {
        alpha,
        doublings,
        k_delta2: k,
        domination,
        alpha_g_zeta_norm,
        image_psi_star_norm: image_norm,
        bound,
        holds,
    };
    Ok((image, report))
}

/// Spectral check trail of `rescale_down`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RescaleDownReport {
    pub sampled_s: Vec<f64>,
    /// Worst slack of `phi2(s phi2^{-1}(lambda)) <= s lambda` over the
    /// spectrum and the sampled `s`.
    pub max_excess: f64,
    pub holds: bool,
}

/// Maps a positive `f` to `phi2^{-1}(f)` spectrally, provided `phi2`
/// passes the Delta' probe globally (so the formal inverse is a proper
/// inverse), and verifies the convexity inequality
/// `phi2(s phi2^{-1}(lambda)) <= s lambda` for sampled `s` in `(0, 1)`.
pub fn rescale_down(
    phi2: &OrliczFunction,
    f: &AlgebraElement,
    grid: &ProbeGrid,
) -> Result<(AlgebraElement, RescaleDownReport), RescalingError> {
    let dp = probe_delta_prime(phi2, 0.0, grid);
    if !dp.holds {
        return Err(RescalingError::NotApplicable(
            "phi2 fails the Delta' probe globally".into(),
        ));
    }
    let image = f.map_spectrum(|l| phi2.formal_inverse(l))?;
    let sampled_s = vec![0.1, 0.3, 0.5, 0.7, 0.9];
    let mut max_excess = 0.0_f64;
    for (_, lambda) in f.singular_values() {
        let inv = phi2.formal_inverse(lambda);
        for &s in &sampled_s {
            let lhs = phi2.eval(s * inv);
            let rhs = s * lambda;
            if lhs > rhs {
                max_excess = max_excess.max(if rhs > 0.0 { lhs / rhs - 1.0 } else { lhs });
            }
        }
    }
    let holds = max_excess <= 1e-9;
    Ok((
        image,
        RescaleDownReport {
            sampled_s,
            max_excess,
            holds,
        },
    ))
}

/// Two equivalent sigma-finite measures on finitely many atoms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomicMeasurePair {
    pub nu1: Vec<f64>,
    pub nu2: Vec<f64>,
}

impl AtomicMeasurePair {
    pub fn new(nu1: Vec<f64>, nu2: Vec<f64>) -> Result<Self, RescalingError> {
        if nu1.len() != nu2.len() || nu1.is_empty() {
            return Err(RescalingError::Input(format!(
                "measures need the same positive atom count, got {} and {}",
                nu1.len(),
                nu2.len()
            )));
        }
        for (i, (&a, &b)) in nu1.iter().zip(&nu2).enumerate() {
            if !(a > 0.0 && a.is_finite() && b > 0.0 && b.is_finite()) {
                return Err(RescalingError::Input(format!(
                    "atom {i}: weights must be strictly positive and finite (mutual absolute continuity), got ({a}, {b})"
                )));
            }
        }
        Ok(AtomicMeasurePair { nu1, nu2 })
    }

    pub fn atoms(&self) -> usize {
        self.nu1.len()
    }

    /// Componentwise Radon-Nikodym derivative `d nu1 / d nu2`.
    pub fn radon_nikodym(&self) -> Vec<f64> {
        self.nu1.iter().zip(&self.nu2).map(|(a, b)| a / b).collect()
    }
}

/// One side of the continuity report of the measure map.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MapBound {
    /// The probe constant the bound is derived from (a or b).
    pub probe_constant: f64,
    /// Effective norm factor: `1/a` for the upper bound, `1/b` for the
    /// lower bound.
    pub factor: f64,
    pub holds: bool,
}

/// Image vector and norm-ratio report of the equivalent-measure map.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureMapReport {
    pub image: Vec<f64>,
    pub norm_f_nu1: f64,
    pub norm_image_nu2: f64,
    /// `norm_image_nu2 / norm_f_nu1` when the source norm is nonzero.
    pub ratio: Option<f64>,
    pub upper: Option<MapBound>,
    pub lower: Option<MapBound>,
}

fn vector_norm(
    phi: &OrliczFunction,
    weights: &[f64],
    values: &[f64],
) -> Result<NormResult, RescalingError> {
    let blocks = weights
        .iter()
        .map(|&w| BlockSpec { dim: 1, weight: w })
        .collect();
    let algebra = BlockAlgebra::new(blocks)?;
    let element = AlgebraElement::from_atoms(&algebra, values)?;
    Ok(luxemburg_norm(phi, &element))
}

/// `f -> phi^{-1}(d nu1 / d nu2) f` from `L^phi(nu1)` to `L^phi(nu2)`,
/// with the continuity bound unlocked by the Delta' probe and the lower
/// bound unlocked by the Nabla' probe. When neither probe holds the map
/// is still computed and no bound is asserted.
pub fn equivalent_measure_map(
    phi: &OrliczFunction,
    pair: &AtomicMeasurePair,
    f: &[f64],
    grid: &ProbeGrid,
) -> Result<MeasureMapReport, RescalingError> {
    if f.len() != pair.atoms() {
        return Err(RescalingError::Input(format!(
            "vector has {} entries for {} atoms",
            f.len(),
            pair.atoms()
        )));
    }
    let d = pair.radon_nikodym();
    let image: Vec<f64> = d
        .iter()
        .zip(f)
        .map(|(&di, &fi)| phi.formal_inverse(di) * fi)
        .collect();
    let norm_f = vector_norm(phi, &pair.nu1, f)?.value;
    let norm_image = vector_norm(phi, &pair.nu2, &image)?.value;
    let ratio = if norm_f > 0.0 {
        Some(norm_image / norm_f)
    } else {
        None
    };

    let dp = probe_delta_prime(phi, 0.0, grid);
    let upper = if dp.holds {
        let a_form = probe_delta_prime_a_form(phi, 0.0, grid);
        if a_form.holds && a_form.constant > 0.0 {
            let factor = 1.0 / a_form.constant;
            Some(MapBound {
                probe_constant: a_form.constant,
                factor,
                holds: norm_image <= factor * norm_f * (1.0 + 1e-8),
            })
        } else {
            None
        }
    } else {
        None
    };
    let np = probe_nabla_prime(phi, 0.0, grid);
    let lower = if np.holds && np.constant > 0.0 {
        let factor = 1.0 / np.constant;
        Some(MapBound {
            probe_constant: np.constant,
            factor,
            holds: factor * norm_f <= norm_image * (1.0 + 1e-8),
        })
    } else {
        None
    };
    Ok(MeasureMapReport {
        image,
        norm_f_nu1: norm_f,
        norm_image_nu2: norm_image,
        ratio,
        upper,
        lower,
    })
}
