//! Growth-condition probes on sampling grids, and the power-law sandwich
//! fit they unlock.
//!
//! A "holds" verdict always means: the inequality holds at every probe
//! point with the reported constant. The probes additionally watch for
//! ratio trails that end in a monotone climb and span more than
//! [`crate::config::DIVERGENCE_FACTOR`] over their
//! minimum; such trails report as failures with the worst point as
//! witness, since no finite constant is credible there. Probe points whose
//! ratios degenerate (zero denominators, floating-point overflow inside
//! the domain) are skipped and counted.

use crate::config::{ProbeGrid, DIVERGENCE_FACTOR};
use crate::function::OrliczFunction;
use crate::numeric::ext_mul;
use serde::{Deserialize, Serialize};

/// Which growth condition a report speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthCondition {
    Delta2,
    DeltaPrime,
    NablaPrime,
    DeltaPrimeAForm,
}

/// Probe point where the inequality is tight, or where it is violated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessPoint {
    Point { u: f64 },
    Pair { s: f64, t: f64 },
}

/// Verdict, estimated constant and witness point of a growth probe.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrowthReport {
    pub condition: GrowthCondition,
    pub holds: bool,
    pub u0: f64,
    /// K, C, b or a, depending on the condition.
    pub constant: f64,
    pub witness: Option<WitnessPoint>,
    pub grid: String,
    /// Probe points skipped because the ratio was not informative.
    pub skipped: usize,
    /// Ratio observed at the witness when the verdict is a failure.
    pub witness_ratio: Option<f64>,
}

fn monotone_blowup(ratios: &[(f64, f64)]) -> Option<(f64, f64)> {
    if ratios.len() < 3 {
        return None;
    }
    let low = ratios
        .iter()
        .map(|r| r.1)
        .fold(f64::INFINITY, f64::min)
        .max(1e-300);
    let (last_x, last_r) = *ratios.last().unwrap();
    let tail_nondecreasing = ratios
        .windows(2)
        .rev()
        .take(8)
        .all(|w| w[1].1 >= w[0].1 - 1e-12 * (1.0 + w[0].1.abs()));
    if tail_nondecreasing && last_r / low > DIVERGENCE_FACTOR {
        Some((last_x, last_r))
    } else {
        None
    }
}

/// Probes `phi(2u) <= K phi(u)` on a log grid of `[u_min, u_max]`.
pub fn probe_delta2(phi: &OrliczFunction, u_min: f64, u_max: f64, n: usize) -> GrowthReport {
    assert!(
        u_min > 0.0 && u_min < u_max,
        "probe_delta2 wants 0 < u_min < u_max"
    );
    let grid_desc = format!("{n} log-spaced points on [{u_min:.3e}, {u_max:.3e}]");
    let mut skipped = 0usize;
    let mut ratios: Vec<(f64, f64)> = Vec::new();
    let b = phi.b_phi();
    let mut violation: Option<(f64, f64)> = None;
    for u in crate::numeric::log_grid(u_min, u_max, n.max(2)) {
        let den = phi.eval(u);
        let num = phi.eval(2.0 * u);
        if den == 0.0 || den.is_infinite() {
            skipped += 1;
            continue;
        }
        if num.is_infinite() {
            if 2.0 * u > b {
                // genuinely beyond the finiteness threshold: no K works
                violation = Some((u, f64::INFINITY));
                break;
            }
            skipped += 1; // overflow inside the domain
            continue;
        }
        ratios.push((u, num / den));
    }
    if violation.is_none() {
        violation = monotone_blowup(&ratios);
    }
    let constant = ratios.iter().map(|r| r.1).fold(0.0_f64, f64::max);
    match violation {
        Some((u, r)) => GrowthReport {
            condition: GrowthCondition::Delta2,
            holds: false,
            u0: u_min,
            constant,
            witness: Some(WitnessPoint::Point { u }),
            grid: grid_desc,
            skipped,
            witness_ratio: Some(r),
        },
        None => {
            let witness = ratios
                .iter()
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .map(|&(u, _)| WitnessPoint::Point { u });
            GrowthReport {
                condition: GrowthCondition::Delta2,
                holds: true,
                u0: u_min,
                constant,
                witness,
                grid: grid_desc,
                skipped,
                witness_ratio: None,
            }
        }
    }
}

/// Probes `phi(s t) <= C phi(s) phi(t)` for `s, t >= max(u0, grid floor)`.
pub fn probe_delta_prime(phi: &OrliczFunction, u0: f64, grid: &ProbeGrid) -> GrowthReport {
    let points = grid.points_from(u0);
    let grid_desc = format!("pairs from {} (floor {u0:.3e})", grid.describe());
    let b = phi.b_phi();
    let mut skipped = 0usize;
    let mut c_max = 0.0_f64;
    let mut c_arg = None;
    let mut diagonal: Vec<(f64, f64)> = Vec::new();
    let mut violation: Option<(f64, f64, f64)> = None;

    'outer: for &s in &points {
        for &t in &points {
            let num = phi.eval(s * t);
            let den = ext_mul(phi.eval(s), phi.eval(t));
            if den == 0.0 {
                if num == 0.0 {
                    skipped += 1;
                    continue;
                }
                // phi(st) > 0 with zero product: no finite C exists
                violation = Some((s, t, f64::INFINITY));
                break 'outer;
            }
            if den.is_infinite() {
                skipped += 1;
                continue;
            }
            if num.is_infinite() {
                if s * t > b {
                    violation = Some((s, t, f64::INFINITY));
                    break 'outer;
                }
                skipped += 1;
                continue;
            }
            let r = num / den;
            if r > c_max {
                c_max = r;
                c_arg = Some((s, t));
            }
            if s == t {
                diagonal.push((s, r));
            }
        }
    }
    if violation.is_none() {
        if let Some((s, r)) = monotone_blowup(&diagonal) {
            violation = Some((s, s, r));
        }
    }
    match violation {
        Some((s, t, r)) => GrowthReport {
            condition: GrowthCondition::DeltaPrime,
            holds: false,
            u0,
            constant: c_max,
            witness: Some(WitnessPoint::Pair { s, t }),
            grid: grid_desc,
            skipped,
            witness_ratio: Some(r),
        },
        None => GrowthReport {
            condition: GrowthCondition::DeltaPrime,
            holds: true,
            u0,
            constant: c_max,
            witness: c_arg.map(|(s, t)| WitnessPoint::Pair { s, t }),
            grid: grid_desc,
            skipped,
            witness_ratio: None,
        },
    }
}

/// The equivalent form of the Delta' condition: the largest `a > 0` with
/// `phi(a s t) <= phi(s) phi(t)` at every probe pair.
pub fn probe_delta_prime_a_form(phi: &OrliczFunction, u0: f64, grid: &ProbeGrid) -> GrowthReport {
    let points = grid.points_from(u0);
    let grid_desc = format!("pairs from {} (floor {u0:.3e})", grid.describe());
    let a_phi = phi.a_phi();
    let mut skipped = 0usize;
    let mut a_max = f64::INFINITY;
    let mut a_arg = None;
    for &s in &points {
        for &t in &points {
            let prod = ext_mul(phi.eval(s), phi.eval(t));
            let cand = if prod == 0.0 {
                // need phi(a s t) = 0, i.e. a s t <= a_phi
                a_phi / (s * t)
            } else if prod.is_infinite() {
                skipped += 1;
                continue;
            } else {
                phi.formal_inverse(prod) / (s * t)
            };
            if cand < a_max {
                a_max = cand;
                a_arg = Some((s, t));
            }
        }
    }
    if !a_max.is_finite() {
        // every pair was uninformative
        return GrowthReport {
            condition: GrowthCondition::DeltaPrimeAForm,
            holds: true,
            u0,
            constant: 1.0,
            witness: None,
            grid: grid_desc,
            skipped,
            witness_ratio: None,
        };
    }
    GrowthReport {
        condition: GrowthCondition::DeltaPrimeAForm,
        holds: a_max > 0.0,
        u0,
        constant: a_max,
        witness: a_arg.map(|(s, t)| WitnessPoint::Pair { s, t }),
        grid: grid_desc,
        skipped,
        witness_ratio: None,
    }
}

/// Probes `phi(b s t) >= phi(s) phi(t)`: the smallest argument scaling `b`
/// making the lower inequality hold at every probe pair.
///
/// A finite grid can always be satisfied by some finite `b` (the function
/// diverges at infinity), so the verdict is "holds with this constant";
/// pairs whose product overflows or vanishes carry no information and are
/// skipped.
pub fn probe_nabla_prime(phi: &OrliczFunction, u0: f64, grid: &ProbeGrid) -> GrowthReport {
    let points = grid.points_from(u0);
    let grid_desc = format!("pairs from {} (floor {u0:.3e})", grid.describe());
    let mut skipped = 0usize;
    let mut b_min = 0.0_f64;
    let mut b_arg = None;

    for &s in &points {
        for &t in &points {
            let prod = ext_mul(phi.eval(s), phi.eval(t));
            if prod == 0.0 || prod.is_infinite() {
                skipped += 1;
                continue;
            }
            // smallest x with phi(x) >= prod, then scale by 1/(s t)
            let x = phi.formal_inverse(prod);
            if x.is_infinite() {
                skipped += 1;
                continue;
            }
            let cand = x / (s * t);
            if cand > b_min {
                b_min = cand;
                b_arg = Some((s, t));
            }
        }
    }
    // a fully skipped grid is vacuous: nothing constrains b
    GrowthReport {
        condition: GrowthCondition::NablaPrime,
        holds: true,
        u0,
        constant: b_min,
        witness: b_arg.map(|(s, t)| WitnessPoint::Pair { s, t }),
        grid: grid_desc,
        skipped,
        witness_ratio: None,
    }
}

/// Verdict of a power-sandwich fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum PowerFitVerdict {
    Fitted,
    NotApplicable { reason: String },
    SandwichFailed { at: f64 },
}

/// `p` and the extremal scale factors of `(a1 x)^p <= phi(x) <= (a2 x)^p`
/// beyond `x0`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PowerFit {
    pub p: f64,
    pub a1: f64,
    pub a2: f64,
    pub points: usize,
    #[serde(flatten)]
    pub verdict: PowerFitVerdict,
}

fn not_applicable(reason: String) -> PowerFit {
    PowerFit {
        p: f64::NAN,
        a1: f64::NAN,
        a2: f64::NAN,
        points: 0,
        verdict: PowerFitVerdict::NotApplicable { reason },
    }
}

/// Fits `phi ~ (a x)^p` on the grid beyond `x0`, provided the Delta' and
/// Nabla' probes both hold there. `p` is the median of the log-log chord
/// slopes; `a1`, `a2` are the extremal values of `phi(x)^(1/p) / x`.
pub fn power_fit(phi: &OrliczFunction, x0: f64, grid: &ProbeGrid) -> PowerFit {
    let dp = probe_delta_prime(phi, x0, grid);
    if !dp.holds {
        return not_applicable("Delta' probe fails beyond x0".into());
    }
    let np = probe_nabla_prime(phi, x0, grid);
    if !np.holds {
        return not_applicable("Nabla' probe fails beyond x0".into());
    }
    let xs: Vec<f64> = grid
        .points_from(x0)
        .into_iter()
        .filter(|&x| {
            let v = phi.eval(x);
            v > 0.0 && v.is_finite()
        })
        .collect();
    if xs.len() < 3 {
        return not_applicable("fewer than 3 usable grid points beyond x0".into());
    }
    let mut slopes: Vec<f64> = xs
        .windows(2)
        .map(|w| (phi.eval(w[1]).ln() - phi.eval(w[0]).ln()) / (w[1].ln() - w[0].ln()))
        .collect();
    slopes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let p = if slopes.len() % 2 == 1 {
        slopes[slopes.len() / 2]
    } else {
        0.5 * (slopes[slopes.len() / 2 - 1] + slopes[slopes.len() / 2])
    };
    if !(p >= 1.0 - 1e-6) {
        return not_applicable(format!("fitted exponent p = {p} < 1"));
    }
    let mut a1 = f64::INFINITY;
    let mut a2 = 0.0_f64;
    for &x in &xs {
        let a = phi.eval(x).powf(1.0 / p) / x;
        a1 = a1.min(a);
        a2 = a2.max(a);
    }
    for &x in &xs {
        let v = phi.eval(x);
        let lo = (a1 * x).powf(p);
        let hi = (a2 * x).powf(p);
        if lo > v * (1.0 + 1e-9) || v > hi * (1.0 + 1e-9) {
            return PowerFit {
                p,
                a1,
                a2,
                points: xs.len(),
                verdict: PowerFitVerdict::SandwichFailed { at: x },
            };
        }
    }
    PowerFit {
        p,
        a1,
        a2,
        points: xs.len(),
        verdict: PowerFitVerdict::Fitted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::OrliczFunction;

    fn default_grid() -> ProbeGrid {
        ProbeGrid::default()
    }

    #[test]
    fn delta2_power_constant() {
        // (2u)^3 / u^3 = 8 at every point
        let phi = OrliczFunction::power(3.0).unwrap();
        let rep = probe_delta2(&phi, 1e-3, 1e3, 121);
        assert!(rep.holds);
        assert!((rep.constant - 8.0).abs() < 1e-9);
    }

    #[test]
    fn delta2_linear() {
        let phi = OrliczFunction::power(1.0).unwrap();
        let rep = probe_delta2(&phi, 1e-3, 1e3, 121);
        assert!(rep.holds);
        assert!((rep.constant - 2.0).abs() < 1e-12);
    }

    #[test]
    fn delta2_exponential_diverges() {
        // (e^{2u}-1)/(e^u-1) = e^u + 1 grows without bound
        let phi = OrliczFunction::exp_minus_one();
        let rep = probe_delta2(&phi, 1e-3, 1e3, 121);
        assert!(!rep.holds);
        assert!(rep.witness_ratio.unwrap() > 1e6);
    }

    #[test]
    fn delta_prime_square_is_exact() {
        let phi = OrliczFunction::power(2.0).unwrap();
        let rep = probe_delta_prime(&phi, 0.0, &default_grid());
        assert!(rep.holds);
        assert!((rep.constant - 1.0).abs() < 1e-9);
        let nb = probe_nabla_prime(&phi, 0.0, &default_grid());
        assert!(nb.holds);
        assert!((nb.constant - 1.0).abs() < 1e-9);
    }

    #[test]
    fn delta_prime_scaled_power() {
        // 3(st)^2 <= C * 9 s^2 t^2 forces C >= 1/3, attained everywhere
        let phi = OrliczFunction::power_scaled(3.0, 2.0).unwrap();
        let rep = probe_delta_prime(&phi, 0.0, &default_grid());
        assert!(rep.holds);
        assert!((rep.constant - 1.0 / 3.0).abs() < 1e-9);
        // nabla': 3 (b s t)^2 >= 9 (s t)^2 forces b = sqrt(3)
        let nb = probe_nabla_prime(&phi, 0.0, &default_grid());
        assert!(nb.holds);
        assert!((nb.constant - 3f64.sqrt()).abs() < 1e-9);
        // a-form: phi(a s t) <= phi(s) phi(t) maximal at a = sqrt(3)
        let af = probe_delta_prime_a_form(&phi, 0.0, &default_grid());
        assert!(af.holds);
        assert!((af.constant - 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn delta_prime_exponential_fails_on_diagonal() {
        let phi = OrliczFunction::exp_minus_one();
        let rep = probe_delta_prime(&phi, 0.0, &default_grid());
        assert!(!rep.holds);
        match rep.witness {
            Some(WitnessPoint::Pair { s, t }) => assert!(s == t && s > 1.0),
            other => panic!("expected diagonal pair witness, got {other:?}"),
        }
    }

    #[test]
    fn a_form_agrees_with_c_form_reciprocal() {
        // the equivalence paragraph: a = 1/C works whenever C > 1
        let grid = default_grid();
        let phi = OrliczFunction::power_scaled(0.5, 2.0).unwrap(); // C = 2
        let c_rep = probe_delta_prime(&phi, 0.0, &grid);
        assert!(c_rep.holds && c_rep.constant > 1.0);
        let a = 1.0 / c_rep.constant;
        for s in grid.points_from(0.0) {
            for t in grid.points_from(0.0) {
                let lhs = phi.eval(a * s * t);
                let rhs = phi.eval(s) * phi.eval(t);
                assert!(lhs <= rhs * (1.0 + 1e-9), "a-form broke at ({s},{t})");
            }
        }
        let af = probe_delta_prime_a_form(&phi, 0.0, &grid);
        assert!(af.holds && af.constant >= a - 1e-12);
    }

    #[test]
    fn power_fit_recovers_exact_powers() {
        let phi = OrliczFunction::power(2.5).unwrap();
        let fit = power_fit(&phi, 1e-2, &default_grid());
        assert_eq!(fit.verdict, PowerFitVerdict::Fitted);
        assert!((fit.p - 2.5).abs() < 0.025);
        assert!((fit.a1 - 1.0).abs() < 1e-6 && (fit.a2 - 1.0).abs() < 1e-6);

        // 3x^2 = (sqrt(3) x)^2
        let phi = OrliczFunction::power_scaled(3.0, 2.0).unwrap();
        let fit = power_fit(&phi, 1e-2, &default_grid());
        assert_eq!(fit.verdict, PowerFitVerdict::Fitted);
        assert!((fit.p - 2.0).abs() < 0.02);
        assert!((fit.a1 - 3f64.sqrt()).abs() < 0.02 * 3f64.sqrt());
        assert!((fit.a2 - 3f64.sqrt()).abs() < 0.02 * 3f64.sqrt());
    }

    #[test]
    fn power_fit_not_applicable_for_exponential() {
        let phi = OrliczFunction::exp_minus_one();
        let fit = power_fit(&phi, 1e-2, &default_grid());
        assert!(matches!(fit.verdict, PowerFitVerdict::NotApplicable { .. }));
    }
}
