//! The generalized three-function Young inequality
//! `u v w <= M [phi2*(alpha u) + phi1(beta v) + zeta(gamma w)]`,
//! constant search, the classical product criteria, and the multiplier
//! bound it certifies on concrete elements.
//!
//! The hypothesis is a for-all statement over `[0, inf)^3`; a cube of
//! sample triples cannot falsify witnesses with rescaled extreme
//! constants, so the check adds constant-aware ray scans: in rescaled
//! coordinates `(alpha u, beta v, gamma w)` it walks the main diagonal and
//! the diagonals with one coordinate pinned at the flat-region top of its
//! term, over sigma in `[1e-12, 1e12]`. A "holds" verdict means no sampled
//! point violates the inequality; failures carry the violating triple.

use crate::algebra::{AlgebraElement, AlgebraError};
use crate::config::{ProbeGrid, RAY_POINTS, RAY_SIGMA_MAX, RAY_SIGMA_MIN};
use crate::function::OrliczFunction;
use crate::norms::{luxemburg_norm, orlicz_norm};
use crate::numeric::log_grid;
use crate::probe::{probe_delta_prime, probe_delta_prime_a_form};
use crate::step::{mu, mu_at};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum MultiplierError {
    InvalidWitness(String),
    /// `verify_bound` was handed a witness whose check did not pass.
    UnvalidatedWitness,
    PreconditionViolated(String),
    Algebra(AlgebraError),
}

impl fmt::Display for MultiplierError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultiplierError::InvalidWitness(msg) => write!(f, "invalid constant witness: {msg}"),
            MultiplierError::UnvalidatedWitness => {
                write!(f, "witness has not passed check_constants")
            }
            MultiplierError::PreconditionViolated(msg) => write!(f, "precondition violated: {msg}"),
            MultiplierError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for MultiplierError {}

impl From<AlgebraError> for MultiplierError {
    fn from(e: AlgebraError) -> Self {
        MultiplierError::Algebra(e)
    }
}

/// The positive constants `(M, alpha, beta, gamma)` of the generalized
/// Young inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantWitness {
    pub m: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl ConstantWitness {
    pub fn new(m: f64, alpha: f64, beta: f64, gamma: f64) -> Result<Self, MultiplierError> {
        for (name, v) in [("M", m), ("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(MultiplierError::InvalidWitness(format!(
                    "{name} must be strictly positive and finite, got {v}"
                )));
            }
        }
        Ok(ConstantWitness {
            m,
            alpha,
            beta,
            gamma,
        })
    }

    /// `M (3/alpha + 3/beta + 3/gamma)`, the trace bound the proof chain
    /// derives for Luxemburg-normalized factors.
    pub fn derived_bound(&self) -> f64 {
        self.m * (3.0 / self.alpha + 3.0 / self.beta + 3.0 / self.gamma)
    }
}

/// Outcome of checking one witness against the sampled inequality.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MultiplierReport {
    pub holds: bool,
    pub witness: ConstantWitness,
    /// Violating triple `(u, v, w)` when the check fails.
    pub violation: Option<(f64, f64, f64)>,
    /// Relative excess `lhs/rhs - 1` at the violation.
    pub violation_excess: Option<f64>,
    pub derived_bound: f64,
    pub checked_products: usize,
    /// Smallest observed `rhs/lhs` over sampled triples with `lhs > 0`.
    pub tightest_ratio: f64,
    pub grid: String,
}

/// The default triple grid: 40 log-spaced points per axis on `[1e-3, 1e3]`.
pub fn default_triple_grid() -> ProbeGrid {
    ProbeGrid::new(1e-3, 1e3, 40)
}

struct TripleChecker<'a> {
    conj2: OrliczFunction,
    phi1: &'a OrliczFunction,
    zeta: &'a OrliczFunction,
}

impl<'a> TripleChecker<'a> {
    fn new(zeta: &'a OrliczFunction, phi1: &'a OrliczFunction, phi2: &OrliczFunction) -> Self {
        TripleChecker {
            conj2: phi2.conjugate(),
            phi1,
            zeta,
        }
    }

    /// Right side `M [phi2*(alpha u) + phi1(beta v) + zeta(gamma w)]`.
    fn rhs(&self, w: &ConstantWitness, u: f64, v: f64, ww: f64) -> f64 {
        let a = self.conj2.eval(w.alpha * u);
        if a.is_infinite() {
            return f64::INFINITY;
        }
        let b = self.phi1.eval(w.beta * v);
        if b.is_infinite() {
            return f64::INFINITY;
        }
        let c = self.zeta.eval(w.gamma * ww);
        if c.is_infinite() {
            return f64::INFINITY;
        }
        w.m * (a + b + c)
    }

    /// Flat-region pin values for each rescaled coordinate.
    fn pins(f: &OrliczFunction) -> Vec<f64> {
        let mut pins = vec![1.0];
        let a = f.a_phi();
        if a > 0.0 && a.is_finite() {
            pins.push(a);
            pins.push(0.9 * a);
        }
        pins
    }

    /// All scan triples in unrescaled coordinates: the sample cube plus
    /// the constant-aware falsification rays.
    fn scan_points(&self, w: &ConstantWitness, grid: &ProbeGrid) -> Vec<(f64, f64, f64)> {
        let axis = grid.points_from(0.0);
        let mut pts = Vec::with_capacity(axis.len().pow(3) + 8 * RAY_POINTS);
        // rays first: failures tend to live at extreme scales
        let sigmas = log_grid(RAY_SIGMA_MIN, RAY_SIGMA_MAX, RAY_POINTS);
        for &s in &sigmas {
            pts.push((s / w.alpha, s / w.beta, s / w.gamma));
        }
        for pin in Self::pins(&self.conj2) {
            for &s in &sigmas {
                pts.push((pin / w.alpha, s / w.beta, s / w.gamma));
            }
        }
        for pin in Self::pins(self.phi1) {
            for &s in &sigmas {
                pts.push((s / w.alpha, pin / w.beta, s / w.gamma));
            }
        }
        for pin in Self::pins(self.zeta) {
            for &s in &sigmas {
                pts.push((s / w.alpha, s / w.beta, pin / w.gamma));
            }
        }
        for &u in &axis {
            for &v in &axis {
                for &ww in &axis {
                    pts.push((u, v, ww));
                }
            }
        }
        pts
    }

    fn check(
        &self,
        w: &ConstantWitness,
        grid: &ProbeGrid,
        stop_at_violation: bool,
    ) -> MultiplierReport {
        let mut tightest = f64::INFINITY;
        let mut violation = None;
        let mut excess = None;
        let mut checked = 0usize;
        for (u, v, ww) in self.scan_points(w, grid) {
            checked += 1;
            let lhs = u * v * ww;
            let rhs = self.rhs(w, u, v, ww);
            if rhs.is_infinite() {
                continue;
            }
            if lhs > 0.0 {
                let ratio = rhs / lhs;
                if ratio < tightest {
                    tightest = ratio;
                }
            }
            if lhs > rhs * (1.0 + 1e-9) {
                violation = Some((u, v, ww));
                excess = Some(if rhs > 0.0 {
                    lhs / rhs - 1.0
                } else {
                    f64::INFINITY
                });
                if stop_at_violation {
                    break;
                }
            }
        }
        MultiplierReport {
            holds: violation.is_none(),
            witness: *w,
            violation,
            violation_excess: excess,
            derived_bound: w.derived_bound(),
            checked_products: checked,
            tightest_ratio: tightest,
            grid: format!(
                "{} cube + rescaled rays over [{RAY_SIGMA_MIN:.0e}, {RAY_SIGMA_MAX:.0e}]",
                grid.describe()
            ),
        }
    }
}

/// Verifies `u v w <= M [phi2*(alpha u) + phi1(beta v) + zeta(gamma w)]` at
/// every triple of the sample cube and along the falsification rays.
pub fn check_constants(
    zeta: &OrliczFunction,
    phi1: &OrliczFunction,
    phi2: &OrliczFunction,
    witness: &ConstantWitness,
    grid: &ProbeGrid,
) -> MultiplierReport {
    TripleChecker::new(zeta, phi1, phi2).check(witness, grid, false)
}

/// Result of the deterministic constant search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchOutcome {
    /// First witness (in the fixed enumeration order) that passes.
    pub found: Option<MultiplierReport>,
    pub candidates_evaluated: usize,
    /// Most nearly passing candidate when nothing passes: smallest
    /// observed relative excess at its rejecting point.
    pub best_failing: Option<(ConstantWitness, f64)>,
}

/// Deterministic coordinate search over log-spaced
/// `(M, alpha, beta, gamma)` in `[2^-8, 2^8]^4`, accepting the first
/// witness that passes `check_constants`. Candidates are enumerated by
/// increasing exponent radius, then lexicographically; recently seen
/// violating triples are retried first so failing candidates die cheaply.
pub fn search_constants(
    zeta: &OrliczFunction,
    phi1: &OrliczFunction,
    phi2: &OrliczFunction,
    budget: usize,
) -> SearchOutcome {
    let checker = TripleChecker::new(zeta, phi1, phi2);
    let exponents: Vec<i32> = (-8..=8).collect();
    let mut candidates: Vec<[i32; 4]> = Vec::with_capacity(17usize.pow(4));
    for &em in &exponents {
        for &ea in &exponents {
            for &eb in &exponents {
                for &eg in &exponents {
                    candidates.push([em, ea, eb, eg]);
                }
            }
        }
    }
    candidates.sort_by_key(|c| {
        let radius = c.iter().map(|e| e.abs()).max().unwrap();
        (radius, c[0], c[1], c[2], c[3])
    });

    let grid = default_triple_grid();
    let mut cached_violations: Vec<(f64, f64, f64)> = Vec::new();
    let mut best_failing: Option<(ConstantWitness, f64)> = None;
    let mut evaluated = 0usize;

    for exps in candidates {
        if evaluated >= budget {
            break;
        }
        evaluated += 1;
        let w = ConstantWitness {
            m: 2f64.powi(exps[0]),
            alpha: 2f64.powi(exps[1]),
            beta: 2f64.powi(exps[2]),
            gamma: 2f64.powi(exps[3]),
        };
        // retry cached violating triples before a full scan
        let mut rejected = None;
        for &(u, v, ww) in &cached_violations {
            let lhs = u * v * ww;
            let rhs = checker.rhs(&w, u, v, ww);
            if rhs.is_finite() && lhs > rhs * (1.0 + 1e-9) {
                rejected = Some((
                    (u, v, ww),
                    if rhs > 0.0 {
                        lhs / rhs - 1.0
                    } else {
                        f64::INFINITY
                    },
                ));
                break;
            }
        }
        if rejected.is_none() {
            let report = checker.check(&w, &grid, true);
            if report.holds {
                // re-run without early exit so the report carries the
                // tightest ratio over the full scan
                let full = checker.check(&w, &grid, false);
                if full.holds {
                    return SearchOutcome {
                        found: Some(full),
                        candidates_evaluated: evaluated,
                        best_failing,
                    };
                }
                rejected = full
                    .violation
                    .map(|p| (p, full.violation_excess.unwrap_or(f64::INFINITY)));
            } else {
                rejected = report
                    .violation
                    .map(|p| (p, report.violation_excess.unwrap_or(f64::INFINITY)));
            }
        }
        if let Some((point, excess)) = rejected {
            if cached_violations.len() >= 16 {
                cached_violations.remove(0);
            }
            if !cached_violations.contains(&point) {
                cached_violations.push(point);
            }
            match &best_failing {
                Some((_, e)) if *e <= excess => {}
                _ => best_failing = Some((w, excess)),
            }
        }
    }
    SearchOutcome {
        found: None,
        candidates_evaluated: evaluated,
        best_failing,
    }
}

/// Outcome of the composition-based product criteria.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum ConditionResult {
    Applicable {
        zeta: OrliczFunction,
        phi1: OrliczFunction,
        witness: ConstantWitness,
        validation: MultiplierReport,
    },
    NotApplicable {
        reason: String,
    },
}

impl ConditionResult {
    pub fn is_applicable(&self) -> bool {
        matches!(self, ConditionResult::Applicable { .. })
    }
}

/// Condition (a): `zeta = phi2 o psi*` is again an Orlicz function and
/// `phi1 = phi2 o psi`. The proof chain
/// `u v w <= phi2*(u) + (1/2)[phi1(2v) + zeta(2w)]` reads off the witness
/// `(M, alpha, beta, gamma) = (1, 1, 2, 2)`, then `check_constants`
/// validates it.
pub fn condition_a(
    psi: &OrliczFunction,
    phi2: &OrliczFunction,
    grid: &ProbeGrid,
) -> ConditionResult {
    let psi_star = psi.conjugate();
    let (zeta, verdict) = OrliczFunction::compose(phi2, &psi_star);
    if !verdict.valid {
        return ConditionResult::NotApplicable {
            reason: format!(
                "phi2 o psi* fails the Orlicz axioms: {:?}",
                verdict.violations.first()
            ),
        };
    }
    let (phi1, _) = OrliczFunction::compose(phi2, psi);
    let witness = ConstantWitness {
        m: 1.0,
        alpha: 1.0,
        beta: 2.0,
        gamma: 2.0,
    };
    let validation = check_constants(&zeta, &phi1, phi2, &witness, grid);
    ConditionResult::Applicable {
        zeta,
        phi1,
        witness,
        validation,
    }
}

/// Condition (b): `phi2` satisfies Delta' globally with a-form constant
/// `a`, `zeta = psi* o phi2` is again an Orlicz function and
/// `phi1 = psi o phi2`. The rescaled argument `phi1((1/a) v)` of the proof
/// chain folds into the witness as `beta = 1/a`.
pub fn condition_b(
    psi: &OrliczFunction,
    phi2: &OrliczFunction,
    grid: &ProbeGrid,
) -> ConditionResult {
    let dp = probe_delta_prime(phi2, 0.0, grid);
    if !dp.holds {
        return ConditionResult::NotApplicable {
            reason: "phi2 fails the Delta' probe globally".into(),
        };
    }
    let a_form = probe_delta_prime_a_form(phi2, 0.0, grid);
    if !a_form.holds || !(a_form.constant > 0.0) {
        return ConditionResult::NotApplicable {
            reason: "no positive a-form constant on the grid".into(),
        };
    }
    let psi_star = psi.conjugate();
    let (zeta, verdict) = OrliczFunction::compose(&psi_star, phi2);
    if !verdict.valid {
        return ConditionResult::NotApplicable {
            reason: format!(
                "psi* o phi2 fails the Orlicz axioms: {:?}",
                verdict.violations.first()
            ),
        };
    }
    let (phi1, _) = OrliczFunction::compose(psi, phi2);
    let witness = ConstantWitness {
        m: 1.0,
        alpha: 1.0,
        beta: 1.0 / a_form.constant,
        gamma: 1.0,
    };
    let validation = check_constants(&zeta, &phi1, phi2, &witness, grid);
    ConditionResult::Applicable {
        zeta,
        phi1,
        witness,
        validation,
    }
}

/// Outcome of the classical product-criteria bullet checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProductCriterionReport {
    pub variant: u8,
    pub passed: bool,
    /// True when the grid beyond `u0` was empty (vacuous pass).
    pub vacuous: bool,
    pub n_functions_ok: bool,
    pub delta_prime_ok: Option<bool>,
    /// First failing point and the two sides compared there.
    pub witness: Option<(f64, f64, f64)>,
}

/// Checks the selected bullet's two strict inequalities on a log grid of
/// `u >= u0`, with a `1e-12` strictness margin.
///
/// Variant 1: `phi2(zeta(u)) < phi1(alpha u)` and
/// `phi2(zeta*(u)) < zeta(beta u)`. Variant 2 (requires `phi2` to satisfy
/// Delta' globally): `zeta(alpha phi2(u)) < phi1(u)` and
/// `zeta*(beta phi2(u)) < zeta(u)`.
#[allow(clippy::too_many_arguments)]
pub fn krasnoselskii_check(
    zeta: &OrliczFunction,
    phi1: &OrliczFunction,
    phi2: &OrliczFunction,
    variant: u8,
    alpha: f64,
    beta: f64,
    u0: f64,
    grid: &ProbeGrid,
) -> Result<ProductCriterionReport, MultiplierError> {
    if variant != 1 && variant != 2 {
        return Err(MultiplierError::PreconditionViolated(format!(
            "variant must be 1 or 2, got {variant}"
        )));
    }
    let n_functions_ok = [zeta, phi1, phi2]
        .iter()
        .all(|f| f.n_function_limits().n_function);
    let delta_prime_ok = if variant == 2 {
        Some(probe_delta_prime(phi2, 0.0, grid).holds)
    } else {
        None
    };

    let points = grid.points_from(u0);
    if points.is_empty() {
        return Ok(ProductCriterionReport {
            variant,
            passed: true,
            vacuous: true,
            n_functions_ok,
            delta_prime_ok,
            witness: None,
        });
    }
    let margin = |rhs: f64| crate::config::STRICT_MARGIN * (1.0 + rhs.abs());
    let zeta_star = zeta.conjugate();
    let mut witness = None;
    for &u in &points {
        let pairs: [(f64, f64); 2] = match variant {
            1 => {
                let l1 = {
                    let z = zeta.eval(u);
                    if z.is_infinite() {
                        f64::INFINITY
                    } else {
                        phi2.eval(z)
                    }
                };
                let r1 = phi1.eval(alpha * u);
                let l2 = {
                    let zs = zeta_star.eval(u);
                    if zs.is_infinite() {
                        f64::INFINITY
                    } else {
                        phi2.eval(zs)
                    }
                };
                let r2 = zeta.eval(beta * u);
                [(l1, r1), (l2, r2)]
            }
            _ => {
                let p2 = phi2.eval(u);
                let l1 = if p2.is_infinite() {
                    f64::INFINITY
                } else {
                    zeta.eval(alpha * p2)
                };
                let r1 = phi1.eval(u);
                let l2 = if p2.is_infinite() {
                    f64::INFINITY
                } else {
                    zeta_star.eval(beta * p2)
                };
                let r2 = zeta.eval(u);
                [(l1, r1), (l2, r2)]
            }
        };
        for (lhs, rhs) in pairs {
            if rhs.is_infinite() {
                continue;
            }
            if !(lhs <= rhs + margin(rhs)) {
                witness = Some((u, lhs, rhs));
                break;
            }
        }
        if witness.is_some() {
            break;
        }
    }
    let passed = witness.is_none() && n_functions_ok && delta_prime_ok.unwrap_or(true);
    Ok(ProductCriterionReport {
        variant,
        passed,
        vacuous: false,
        n_functions_ok,
        delta_prime_ok,
        witness,
    })
}

/// Outcome of `verify_bound` on one normalized triple.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BoundReport {
    pub trace_product: f64,
    pub fg_orlicz_norm: f64,
    pub bound: f64,
    pub slack: f64,
    pub holds: bool,
}

/// For Luxemburg-normalized `f, g, h` (`||f||_zeta <= 1`,
/// `||g||_phi1 <= 1`, `||h||_{phi2*} <= 1`) and a validated witness,
/// asserts `tau(|f g h|) <= M(3/alpha + 3/beta + 3/gamma) + 1e-8` and the
/// Koethe-dual consequence `||f g||^0_{phi2} <=` the same bound.
pub fn verify_bound(
    zeta: &OrliczFunction,
    phi1: &OrliczFunction,
    phi2: &OrliczFunction,
    report: &MultiplierReport,
    f: &AlgebraElement,
    g: &AlgebraElement,
    h: &AlgebraElement,
) -> Result<BoundReport, MultiplierError> {
    if !report.holds {
        return Err(MultiplierError::UnvalidatedWitness);
    }
    let conj2 = phi2.conjugate();
    for (name, phi, x) in [("f", zeta, f), ("g", phi1, g), ("h", &conj2, h)] {
        let n = luxemburg_norm(phi, x).value;
        if n > 1.0 + 1e-9 {
            return Err(MultiplierError::PreconditionViolated(format!(
                "||{name}|| = {n} exceeds the unit ball"
            )));
        }
    }
    let fg = f.multiply(g)?;
    let fgh = fg.multiply(h)?;
    let trace_product = mu(&fgh).integral();
    let fg_orlicz_norm = orlicz_norm(phi2, &fg).value;
    let bound = report.derived_bound;
    let holds = trace_product <= bound + 1e-8 && fg_orlicz_norm <= bound + 1e-8;
    Ok(BoundReport {
        trace_product,
        fg_orlicz_norm,
        bound,
        slack: bound - trace_product,
        holds,
    })
}

/// `mu_{t+s}(x y) <= mu_t(x) mu_s(y) + 1e-10`.
pub fn submajorization_check(
    x: &AlgebraElement,
    y: &AlgebraElement,
    t: f64,
    s: f64,
) -> Result<bool, MultiplierError> {
    if t < 0.0 || s < 0.0 {
        return Err(MultiplierError::PreconditionViolated(format!(
            "t, s must be nonnegative, got ({t}, {s})"
        )));
    }
    let xy = x.multiply(y)?;
    let lhs = mu_at(&xy, t + s).expect("nonnegative time");
    let rhs = mu_at(x, t).expect("nonnegative time") * mu_at(y, s).expect("nonnegative time");
    Ok(lhs <= rhs + 1e-10)
}
