//! The three-function Young inequality: checking a pinned witness,
//! searching for constants, and verifying the derived trace bound on
//! normalized elements.

use orlicz::algebra::{AlgebraElement, BlockAlgebra, BlockSpec};
use orlicz::function::OrliczFunction;
use orlicz::multipliers::{
    check_constants, default_triple_grid, search_constants, verify_bound, ConstantWitness,
};
use orlicz::norms::luxemburg_norm;

fn main() {
    let zeta = OrliczFunction::power(4.0).unwrap();
    let phi1 = OrliczFunction::power(4.0).unwrap();
    let phi2 = OrliczFunction::power(2.0).unwrap();
    let witness = ConstantWitness::new(2.0, 1.0, 1.0, 1.0).unwrap();
    let grid = default_triple_grid();

    let report = check_constants(&zeta, &phi1, &phi2, &witness, &grid);
    println!("(t^4, t^4, t^2) with (M, a, b, g) = (2, 1, 1, 1):");
    println!(
        "  holds = {}, tightest rhs/lhs = {:.4}, bound = {}",
        report.holds, report.tightest_ratio, report.derived_bound
    );

    let found = search_constants(&zeta, &phi1, &phi2, 100_000);
    println!(
        "  search: {:?} after {} candidates",
        found.found.as_ref().map(|r| r.witness),
        found.candidates_evaluated
    );

    // normalized factors obey tau(|fgh|) <= M(3/a + 3/b + 3/g)
    let alg = BlockAlgebra::new(vec![BlockSpec {
        dim: 3,
        weight: 1.0,
    }])
    .unwrap();
    let conj2 = phi2.conjugate();
    let norm1 = |phi: &OrliczFunction, x: AlgebraElement| {
        let n = luxemburg_norm(phi, &x).value;
        x.scale(1.0 / n)
    };
    let f = norm1(&zeta, AlgebraElement::random(&alg, 1));
    let g = norm1(&phi1, AlgebraElement::random(&alg, 2));
    let h = norm1(&conj2, AlgebraElement::random(&alg, 3));
    let bound = verify_bound(&zeta, &phi1, &phi2, &report, &f, &g, &h).unwrap();
    println!(
        "  on one normalized triple: tau(|fgh|) = {:.6} <= {} (slack {:.3})",
        bound.trace_product, bound.bound, bound.slack
    );

    // the negative control: equal exponents cannot work
    let sq = OrliczFunction::power(2.0).unwrap();
    let control = check_constants(&sq, &sq, &sq, &witness, &grid);
    println!("\n(t^2, t^2, t^2) with the same witness:");
    println!(
        "  holds = {}, violation at {:?}",
        control.holds, control.violation
    );
    let exhausted = search_constants(&sq, &sq, &sq, 100_000);
    println!(
        "  search exhausts {} candidates without a witness (best failing: {:?})",
        exhausted.candidates_evaluated, exhausted.best_failing
    );
}
