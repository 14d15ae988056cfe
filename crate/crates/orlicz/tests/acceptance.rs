//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Run with `cargo test -p orlicz --test acceptance -- --nocapture` to see
//! the per-criterion lines.

use orlicz::algebra::{AlgebraElement, BlockAlgebra, BlockSpec};
use orlicz::compactness::{
    isometry_image_check, projection_norm_sandwich, rademacher_image_check, structure_report,
};
use orlicz::config::ProbeGrid;
use orlicz::function::OrliczFunction;
use orlicz::multipliers::{
    check_constants, default_triple_grid, search_constants, submajorization_check, verify_bound,
    ConstantWitness,
};
use orlicz::norms::{holder_check, luxemburg_norm, orlicz_norm};
use orlicz::numeric::log_grid;
use orlicz::probe::{
    power_fit, probe_delta2, probe_delta_prime, probe_nabla_prime, PowerFitVerdict,
};
use orlicz::rescaling::{equivalent_measure_map, AtomicMeasurePair};
use orlicz::step::mu;
use orlicz::verify::{builtin_functions, projection_of_trace, sample_piecewise};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_817;

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

fn power_family() -> Vec<(String, OrliczFunction)> {
    let mut fns: Vec<(String, OrliczFunction)> = [1.0, 1.5, 2.0, 3.0, 4.0]
        .into_iter()
        .map(|p| (format!("power_{p}"), OrliczFunction::power(p).unwrap()))
        .collect();
    fns.push((
        "power_scaled_3_2".into(),
        OrliczFunction::power_scaled(3.0, 2.0).unwrap(),
    ));
    fns
}

fn normalized(phi: &OrliczFunction, x: AlgebraElement) -> AlgebraElement {
    let n = luxemburg_norm(phi, &x).value;
    if n == 0.0 {
        x
    } else {
        x.scale(1.0 / n)
    }
}

#[test]
fn criterion_01_young_inequality() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (name, phi) in builtin_functions() {
        for _ in 0..10_000 {
            let s = log_uniform(&mut rng, 1e-3, 1e3);
            let t = log_uniform(&mut rng, 1e-3, 1e3);
            let gap = phi.young_gap(s, t);
            assert!(
                gap >= -1e-9 * (1.0 + s * t),
                "{name}: young gap {gap:.3e} at ({s:.6e}, {t:.6e})"
            );
        }
    }
    // equality at subgradient-matched pairs for the power family
    for (name, phi) in power_family() {
        let (c, p) = phi.as_power().unwrap();
        for s in log_grid(1e-2, 1e2, 20) {
            let t = if p == 1.0 { c } else { c * p * s.powf(p - 1.0) };
            let gap = phi.young_gap(s, t);
            assert!(
                gap.abs() <= 1e-6 * (1.0 + s * t),
                "{name}: subgradient pair gap {gap:.3e} at s = {s:.3e}"
            );
        }
    }
    println!("criterion 01 young-inequality: PASS");
}

#[test]
fn criterion_02_biconjugation() {
    for (name, phi) in power_family() {
        let phi_ss = phi.conjugate().conjugate();
        let mut sup = 0.0_f64;
        for t in log_grid(1e-3, 1e3, 61) {
            let a = phi.evaluate(t).unwrap();
            let b = phi_ss.evaluate(t).unwrap();
            sup = sup.max((a - b).abs() / (1.0 + a.abs()));
        }
        assert!(
            sup <= 1e-6,
            "{name}: sup relative biconjugation error {sup:.3e}"
        );
    }
    let pw = sample_piecewise();
    let pw_ss = pw.conjugate().conjugate();
    let mut sup = 0.0_f64;
    for t in log_grid(1e-3, 1e3, 61) {
        let a = pw.evaluate(t).unwrap();
        let b = pw_ss.evaluate(t).unwrap();
        sup = sup.max((a - b).abs() / (1.0 + a.abs()));
    }
    assert!(
        sup <= 1e-3,
        "piecewise: sup relative biconjugation error {sup:.3e}"
    );
    println!("criterion 02 biconjugation: PASS");
}

#[test]
fn criterion_03_spectral_rearrangement_identity() {
    let alg = BlockAlgebra::new(vec![
        BlockSpec {
            dim: 3,
            weight: 0.5,
        },
        BlockSpec {
            dim: 2,
            weight: 1.25,
        },
    ])
    .unwrap();
    let phis = [
        OrliczFunction::power(2.0).unwrap(),
        OrliczFunction::power_scaled(3.0, 2.0).unwrap(),
        OrliczFunction::exp_minus_one(),
        OrliczFunction::t_log1p(),
    ];
    for i in 0..100 {
        let x = AlgebraElement::random_positive(&alg, SEED + i);
        let m = mu(&x);
        for phi in &phis {
            let image = x.apply_function(phi).unwrap();
            assert!(
                m.map_values(phi).approx_eq(&mu(&image)),
                "step equality failed at case {i}"
            );
            let trace = image.trace();
            let integral = m.integral_of(phi);
            assert!(
                (trace - integral).abs() <= 1e-10 * (1.0 + integral.abs()),
                "trace identity off by {:.3e} at case {i}",
                trace - integral
            );
        }
    }
    println!("criterion 03 spectral-rearrangement-identity: PASS");
}

#[test]
fn criterion_04_kothe_holder() {
    let alg = BlockAlgebra::new(vec![
        BlockSpec {
            dim: 3,
            weight: 0.5,
        },
        BlockSpec {
            dim: 2,
            weight: 1.25,
        },
    ])
    .unwrap();
    let phis = [
        OrliczFunction::power(2.0).unwrap(),
        OrliczFunction::power(1.5).unwrap(),
        OrliczFunction::t_log1p(),
    ];
    for (k, phi) in phis.iter().enumerate() {
        for i in 0..100 {
            let f = AlgebraElement::random(&alg, SEED + i + 1000 * k as u64);
            let g = AlgebraElement::random(&alg, SEED + 50_000 + i + 1000 * k as u64);
            let rep = holder_check(&f, &g, phi).unwrap();
            assert!(rep.holds, "pair {i}, phi {k}: {rep:?}");
            // the two norms stay within the [1, 2] equivalence band
            for x in [&f, &g] {
                let lux = luxemburg_norm(phi, x).value;
                let orl = orlicz_norm(phi, x).value;
                assert!(
                    lux <= orl * (1.0 + 1e-9) && orl <= 2.0 * lux * (1.0 + 1e-9),
                    "pair {i}, phi {k}: lux {lux}, orlicz {orl}"
                );
            }
        }
    }
    println!("criterion 04 kothe-holder: PASS");
}

#[test]
fn criterion_05_existence_end_to_end() {
    let zeta = OrliczFunction::power(4.0).unwrap();
    let phi1 = OrliczFunction::power(4.0).unwrap();
    let phi2 = OrliczFunction::power(2.0).unwrap();
    let witness = ConstantWitness::new(2.0, 1.0, 1.0, 1.0).unwrap();
    let report = check_constants(&zeta, &phi1, &phi2, &witness, &default_triple_grid());
    assert!(
        report.holds,
        "witness (2,1,1,1) must pass: {:?}",
        report.violation
    );
    assert!((report.derived_bound - 18.0).abs() < 1e-12);

    let alg = BlockAlgebra::new(vec![BlockSpec {
        dim: 3,
        weight: 1.0,
    }])
    .unwrap();
    let conj2 = phi2.conjugate();
    for i in 0..100 {
        let f = normalized(&zeta, AlgebraElement::random(&alg, SEED + i));
        let g = normalized(&phi1, AlgebraElement::random(&alg, SEED + 10_000 + i));
        let h = normalized(&conj2, AlgebraElement::random(&alg, SEED + 20_000 + i));
        let bound = verify_bound(&zeta, &phi1, &phi2, &report, &f, &g, &h).unwrap();
        assert!(
            bound.trace_product <= 18.0 + 1e-8,
            "case {i}: tau(|fgh|) = {}",
            bound.trace_product
        );
        assert!(
            bound.fg_orlicz_norm <= 18.0 + 1e-8,
            "case {i}: ||fg||^0 = {}",
            bound.fg_orlicz_norm
        );
    }

    // negative control: the homogeneity mismatch shows on the diagonal
    let sq = OrliczFunction::power(2.0).unwrap();
    let control = check_constants(&sq, &sq, &sq, &witness, &default_triple_grid());
    assert!(!control.holds);
    let (u, v, w) = control.violation.unwrap();
    assert!(
        u == v && v == w,
        "diagonal scan violation expected, got ({u}, {v}, {w})"
    );
    println!("criterion 05 existence-end-to-end: PASS");
}

#[test]
fn criterion_06_hoelder_exponent_recovery() {
    for (p, q, r) in [(4.0, 4.0, 2.0), (2.0, 2.0, 1.0), (6.0, 3.0, 2.0)] {
        let out = search_constants(
            &OrliczFunction::power(p).unwrap(),
            &OrliczFunction::power(q).unwrap(),
            &OrliczFunction::power(r).unwrap(),
            100_000,
        );
        assert!(out.found.is_some(), "({p},{q},{r}): search must succeed");
        assert!(out.candidates_evaluated <= 100_000);
    }
    for (p, q, r) in [(2.0, 2.0, 2.0), (3.0, 3.0, 1.0)] {
        let out = search_constants(
            &OrliczFunction::power(p).unwrap(),
            &OrliczFunction::power(q).unwrap(),
            &OrliczFunction::power(r).unwrap(),
            100_000,
        );
        assert!(out.found.is_none(), "({p},{q},{r}): search must fail");
        assert!(out.candidates_evaluated <= 100_000);
    }
    println!("criterion 06 hoelder-exponent-recovery: PASS");
}

#[test]
fn criterion_07_growth_probes() {
    let grid = ProbeGrid::default();
    for p in [1.0, 1.5, 2.0, 3.0, 4.0] {
        let phi = OrliczFunction::power(p).unwrap();
        let d2 = probe_delta2(&phi, 1e-3, 1e3, 121);
        assert!(d2.holds, "power {p}: Delta2 must hold");
        assert!(
            (d2.constant - 2f64.powf(p)).abs() <= 1e-6,
            "power {p}: K = {} vs 2^p = {}",
            d2.constant,
            2f64.powf(p)
        );
        let dp = probe_delta_prime(&phi, 0.0, &grid);
        assert!(
            dp.holds && (dp.constant - 1.0).abs() <= 1e-6,
            "power {p}: C = {}",
            dp.constant
        );
        let np = probe_nabla_prime(&phi, 0.0, &grid);
        assert!(
            np.holds && (np.constant - 1.0).abs() <= 1e-6,
            "power {p}: b = {}",
            np.constant
        );
    }
    let exp = OrliczFunction::exp_minus_one();
    let d2 = probe_delta2(&exp, 1e-3, 1e3, 121);
    assert!(!d2.holds, "exp_minus_one must fail Delta2");
    assert!(
        d2.witness_ratio.unwrap() > 1e6,
        "witness ratio {} must exceed 1e6",
        d2.witness_ratio.unwrap()
    );
    println!("criterion 07 growth-probes: PASS");
}

#[test]
fn criterion_08_power_equivalence() {
    let grid = ProbeGrid::default();
    for c in [0.5, 1.0, 3.0] {
        for p in [1.0, 2.0, 2.5] {
            let phi = OrliczFunction::power_scaled(c, p).unwrap();
            let fit = power_fit(&phi, 1e-2, &grid);
            assert_eq!(
                fit.verdict,
                PowerFitVerdict::Fitted,
                "c={c}, p={p}: {fit:?}"
            );
            assert!(
                (fit.p - p).abs() <= 0.01 * p,
                "c={c}, p={p}: fitted p = {}",
                fit.p
            );
            let a = c.powf(1.0 / p);
            assert!(
                (fit.a1 - a).abs() <= 0.02 * a,
                "c={c}, p={p}: a1 = {}",
                fit.a1
            );
            assert!(
                (fit.a2 - a).abs() <= 0.02 * a,
                "c={c}, p={p}: a2 = {}",
                fit.a2
            );
        }
    }
    println!("criterion 08 power-equivalence: PASS");
}

#[test]
fn criterion_09_equivalent_measure_isometry() {
    let grid = ProbeGrid::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let ps = [1.0, 1.5, 2.0, 3.0, 4.0];
    for i in 0..100 {
        let p = ps[i % ps.len()];
        let phi = OrliczFunction::power(p).unwrap();
        let atoms = rng.gen_range(2..8);
        let nu1: Vec<f64> = (0..atoms).map(|_| rng.gen_range(0.25..4.0)).collect();
        let nu2: Vec<f64> = (0..atoms).map(|_| rng.gen_range(0.25..4.0)).collect();
        let f: Vec<f64> = (0..atoms).map(|_| rng.gen_range(-4.0..4.0)).collect();
        let pair = AtomicMeasurePair::new(nu1, nu2).unwrap();
        let rep = equivalent_measure_map(&phi, &pair, &f, &grid).unwrap();
        let ratio = rep.ratio.expect("nonzero vector");
        assert!(
            (ratio - 1.0).abs() <= 1e-9,
            "case {i} (p = {p}): ratio {ratio}"
        );
    }
    // Delta'/Nabla' bounds honored wherever the probes pass
    for (name, phi) in builtin_functions() {
        for j in 0..10 {
            let atoms = rng.gen_range(2..6);
            let nu1: Vec<f64> = (0..atoms).map(|_| rng.gen_range(0.25..4.0)).collect();
            let nu2: Vec<f64> = (0..atoms).map(|_| rng.gen_range(0.25..4.0)).collect();
            let f: Vec<f64> = (0..atoms).map(|_| rng.gen_range(-4.0..4.0)).collect();
            let pair = AtomicMeasurePair::new(nu1, nu2).unwrap();
            let rep = equivalent_measure_map(&phi, &pair, &f, &grid).unwrap();
            if let Some(upper) = rep.upper {
                assert!(upper.holds, "{name} case {j}: upper bound broken: {rep:?}");
            }
            if let Some(lower) = rep.lower {
                assert!(lower.holds, "{name} case {j}: lower bound broken: {rep:?}");
            }
        }
    }
    println!("criterion 09 equivalent-measure-isometry: PASS");
}

#[test]
fn criterion_10_compactness_identities() {
    // Case 1: Rademacher images on 2^4 atoms
    let alg = BlockAlgebra::dyadic_atoms(4);
    let phi2 = OrliczFunction::power(2.0).unwrap();
    for i in 0..10 {
        let g = AlgebraElement::random(&alg, SEED + i);
        let rep = rademacher_image_check(&g, &phi2).unwrap();
        assert!(rep.holds, "rademacher case {i}: {rep:?}");
    }

    // Case 2: partial-isometry chains on a dim-5 block, 100 seeds
    let block = BlockAlgebra::new(vec![BlockSpec {
        dim: 5,
        weight: 1.0,
    }])
    .unwrap();
    let phi = OrliczFunction::power(1.5).unwrap();
    for i in 0..100 {
        let g = AlgebraElement::random_positive(&block, SEED + 200 + i);
        let top = g
            .singular_values()
            .iter()
            .map(|&(_, s)| s)
            .fold(0.0, f64::max);
        let rep = isometry_image_check(&g, 0.5 * top, &phi).unwrap();
        assert!(rep.holds, "isometry case {i}: {rep:?}");
    }

    // Case 3: projection-norm sandwich over traces and functions
    let phis = [
        OrliczFunction::power(2.0).unwrap(),
        OrliczFunction::exp_minus_one(),
        OrliczFunction::t_log1p(),
    ];
    for tau in [1.0, 1.5, 2.0, 2.5, 7.0] {
        let e = projection_of_trace(tau);
        for phi in &phis {
            let rep = projection_norm_sandwich(phi, &e).unwrap();
            assert!(rep.holds, "sandwich at tau = {tau}: {rep:?}");
        }
    }

    // structure report reconstruction on 50 random elements
    let mixed = BlockAlgebra::new(vec![
        BlockSpec {
            dim: 2,
            weight: 1.0,
        },
        BlockSpec {
            dim: 3,
            weight: 0.5,
        },
        BlockSpec {
            dim: 1,
            weight: 2.0,
        },
    ])
    .unwrap();
    for i in 0..50 {
        let g = AlgebraElement::random(&mixed, SEED + 500 + i);
        let rep = structure_report(&g, &phi2);
        assert!(
            rep.reconstruction_error <= 1e-12,
            "case {i}: ||gc - g|| = {:.3e}",
            rep.reconstruction_error
        );
    }
    println!("criterion 10 compactness-identities: PASS");
}

#[test]
fn criterion_11_submajorization() {
    let alg = BlockAlgebra::new(vec![
        BlockSpec {
            dim: 3,
            weight: 0.5,
        },
        BlockSpec {
            dim: 2,
            weight: 1.25,
        },
    ])
    .unwrap();
    for i in 0..100 {
        let x = AlgebraElement::random(&alg, SEED + i);
        let y = AlgebraElement::random(&alg, SEED + 30_000 + i);
        for &t in &mu(&x).boundaries() {
            for &s in &mu(&y).boundaries() {
                assert!(
                    submajorization_check(&x, &y, t, s).unwrap(),
                    "case {i}: mu_(t+s)(xy) > mu_t(x) mu_s(y) at ({t}, {s})"
                );
            }
        }
    }
    println!("criterion 11 submajorization: PASS");
}
