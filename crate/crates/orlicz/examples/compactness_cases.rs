//! Finite-scale identities from the compactness argument: Rademacher-image
//! norm constancy, partial-isometry lower bounds, the projection-norm
//! sandwich, and the structure report.

use orlicz::algebra::{AlgebraElement, BlockAlgebra, BlockSpec};
use orlicz::compactness::{
    isometry_image_check, projection_norm_sandwich, rademacher_image_check, structure_report,
};
use orlicz::function::OrliczFunction;
use orlicz::verify::projection_of_trace;

fn main() {
    let phi = OrliczFunction::power(2.0).unwrap();

    // Case 1: sign patterns cannot change any norm
    let atoms = BlockAlgebra::dyadic_atoms(4);
    let g = AlgebraElement::random(&atoms, 11);
    let rep = rademacher_image_check(&g, &phi).unwrap();
    println!(
        "case 1 (2^4 atoms): base norm {:.6}, all {} images equal: {}",
        rep.base_norm, rep.family_size, rep.holds
    );

    // Case 2: transporting a spectral projection along matrix units
    let block = BlockAlgebra::new(vec![BlockSpec {
        dim: 5,
        weight: 1.0,
    }])
    .unwrap();
    let g = AlgebraElement::random_positive(&block, 23);
    let top = g
        .singular_values()
        .iter()
        .map(|&(_, s)| s)
        .fold(0.0, f64::max);
    let rep = isometry_image_check(&g, 0.5 * top, &phi).unwrap();
    println!(
        "case 2 (dim 5): eigenvalue {:.4} >= lambda {:.4}, ||g v_n|| >= lambda ||e1|| for all {}: {}",
        rep.eigenvalue, rep.lambda, rep.chain_length, rep.holds
    );

    // Case 3: the trace-count sandwich on central projections
    for tau in [1.0, 2.5, 7.0] {
        let e = projection_of_trace(tau);
        let rep = projection_norm_sandwich(&phi, &e).unwrap();
        println!(
            "case 3 (tau = {tau}): {:.6} <= ||e|| = {:.6} <= {:.6} ({})",
            rep.lower, rep.norm, rep.upper, rep.holds
        );
    }

    // the carrier mask and per-block norm floor
    let mixed = BlockAlgebra::new(vec![
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
    let mut g = AlgebraElement::zero(&mixed);
    g.blocks_mut()[0].set(0, 1, 2.0);
    g.blocks_mut()[2].set(0, 0, -0.5);
    let rep = structure_report(&g, &phi);
    println!(
        "structure: carrier {:?}, norm floor {:.6}, ||gc - g|| = {:.3e}",
        rep.carrier_mask, rep.norm_floor, rep.reconstruction_error
    );
}
