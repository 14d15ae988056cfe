//! Property tests over randomized inputs: the structural invariants that
//! hand-picked cases tend to miss.

use orlicz::algebra::{AlgebraElement, BlockAlgebra, BlockSpec, Mat};
use orlicz::function::OrliczFunction;
use orlicz::norms::luxemburg_norm;
use orlicz::step::{mu, StepFunction};
use proptest::prelude::*;

fn builtin(index: usize) -> OrliczFunction {
    match index % 5 {
        0 => OrliczFunction::power(1.0).unwrap(),
        1 => OrliczFunction::power(2.0).unwrap(),
        2 => OrliczFunction::power_scaled(3.0, 2.0).unwrap(),
        3 => OrliczFunction::exp_minus_one(),
        _ => OrliczFunction::t_log1p(),
    }
}

fn diag_element(values: &[f64]) -> AlgebraElement {
    let alg = BlockAlgebra::new(vec![BlockSpec {
        dim: values.len(),
        weight: 0.7,
    }])
    .unwrap();
    AlgebraElement::new(alg, vec![Mat::diag(values)]).unwrap()
}

proptest! {
    /// The Hausdorff-Young gap never goes meaningfully negative.
    #[test]
    fn young_gap_nonnegative(
        which in 0usize..5,
        s in 1e-3f64..1e3,
        t in 1e-3f64..1e3,
    ) {
        let phi = builtin(which);
        let gap = phi.young_gap(s, t);
        prop_assert!(gap >= -1e-9 * (1.0 + s * t), "gap = {gap}");
    }

    /// The formal inverse inverts strictly increasing built-ins.
    #[test]
    fn inverse_roundtrip(which in 0usize..5, t in 1e-6f64..1e6) {
        let phi = builtin(which);
        let back = phi.evaluate(phi.formal_inverse(t)).unwrap();
        prop_assert!((back - t).abs() <= 1e-8 * (1.0 + t));
    }

    /// mu ignores adjoints and absolute values.
    #[test]
    fn mu_invariance(entries in prop::collection::vec(-5.0f64..5.0, 2..6)) {
        let x = diag_element(&entries);
        prop_assert!(mu(&x).approx_eq(&mu(&x.adjoint())));
        prop_assert!(mu(&x).approx_eq(&mu(&x.abs())));
    }

    /// Luxemburg norm is absolutely homogeneous and subadditive on
    /// commuting diagonals.
    #[test]
    fn luxemburg_axioms(
        which in 0usize..5,
        a in prop::collection::vec(-3.0f64..3.0, 3),
        b in prop::collection::vec(-3.0f64..3.0, 3),
        c in 0.1f64..10.0,
    ) {
        let phi = builtin(which);
        let x = diag_element(&a);
        let y = diag_element(&b);
        let nx = luxemburg_norm(&phi, &x).value;
        let ny = luxemburg_norm(&phi, &y).value;
        let nxy = luxemburg_norm(&phi, &x.add(&y).unwrap()).value;
        prop_assert!(nxy <= nx + ny + 1e-9 * (1.0 + nx + ny));
        let scaled = luxemburg_norm(&phi, &x.scale(c)).value;
        prop_assert!((scaled - c * nx).abs() <= 1e-9 * (1.0 + scaled));
    }

    /// Step functions canonicalize: strictly decreasing positive values,
    /// positive lengths, right-continuous evaluation.
    #[test]
    fn step_function_canonical(
        pairs in prop::collection::vec((0.01f64..5.0, 0.0f64..10.0), 0..12),
        t in 0.0f64..60.0,
    ) {
        let f = StepFunction::from_weighted_values(pairs.clone());
        for w in f.steps().windows(2) {
            prop_assert!(w[0].value > w[1].value);
        }
        for s in f.steps() {
            prop_assert!(s.length > 0.0 && s.value > 0.0);
        }
        let direct = f.value_at(t).unwrap();
        // right continuity: the value just right of t matches value_at(t)
        let eps = 1e-12 * (1.0 + t);
        prop_assert_eq!(direct, f.value_at(t + eps).unwrap());
    }

    /// Scalar products of singular values dominate the product's
    /// rearrangement at summed times.
    #[test]
    fn submajorization_random(
        a in prop::collection::vec(-2.0f64..2.0, 4),
        b in prop::collection::vec(-2.0f64..2.0, 4),
        t in 0.0f64..3.0,
        s in 0.0f64..3.0,
    ) {
        let x = diag_element(&a);
        let y = diag_element(&b);
        prop_assert!(orlicz::multipliers::submajorization_check(&x, &y, t, s).unwrap());
    }
}
