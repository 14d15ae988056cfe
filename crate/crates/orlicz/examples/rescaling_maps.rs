//! Rescaling a multiplier through the functional calculus, and the
//! equivalent-measure map with its norm bounds.

use orlicz::algebra::{AlgebraElement, BlockAlgebra, BlockSpec, Mat};
use orlicz::config::ProbeGrid;
use orlicz::function::OrliczFunction;
use orlicz::rescaling::{equivalent_measure_map, rescale_down, rescale_up, AtomicMeasurePair};

fn main() {
    let grid = ProbeGrid::default();
    let psi = OrliczFunction::power(2.0).unwrap();
    let phi2 = OrliczFunction::power(2.0).unwrap();
    let alg = BlockAlgebra::new(vec![BlockSpec {
        dim: 2,
        weight: 1.0,
    }])
    .unwrap();
    let g = AlgebraElement::new(alg, vec![Mat::diag(&[1.0, 2.0])]).unwrap();

    let (image, cert) = rescale_up(&psi, &phi2, &g, &grid).unwrap();
    println!("rescale up g = diag(1, 2) through phi2 = t^2:");
    println!(
        "  image spectrum: {:?}",
        image
            .singular_values()
            .iter()
            .map(|&(_, s)| s)
            .collect::<Vec<_>>()
    );
    println!(
        "  certificate: alpha = {:.4}, N = {}, K = {}, K^N = {}",
        cert.alpha, cert.doublings, cert.k_delta2, cert.domination
    );
    println!(
        "  ||phi2(g)||_psi* = {:.6} <= {:.6}",
        cert.image_psi_star_norm, cert.bound
    );

    let (back, rep) = rescale_down(&phi2, &image, &grid).unwrap();
    println!(
        "\nrescale down recovers the spectrum: {:?} (checks pass: {})",
        back.singular_values()
            .iter()
            .map(|&(_, s)| s)
            .collect::<Vec<_>>(),
        rep.holds
    );

    // the measure map is an exact isometry for powers
    let pair = AtomicMeasurePair::new(vec![4.0, 1.0], vec![1.0, 1.0]).unwrap();
    let report = equivalent_measure_map(&phi2, &pair, &[1.0, 1.0], &grid).unwrap();
    println!("\nmeasure map for phi = t^2, nu1 = (4,1), nu2 = (1,1), f = (1,1):");
    println!("  image = {:?}", report.image);
    println!(
        "  ||f||_nu1 = {:.6}, ||image||_nu2 = {:.6}, ratio = {:?}",
        report.norm_f_nu1, report.norm_image_nu2, report.ratio
    );
    println!("  upper bound {:?}", report.upper);
    println!("  lower bound {:?}", report.lower);

    // scaled powers shift the ratio to exactly c^(-1/p)
    let scaled = OrliczFunction::power_scaled(3.0, 2.0).unwrap();
    let report = equivalent_measure_map(&scaled, &pair, &[1.0, 1.0], &grid).unwrap();
    println!(
        "\nsame map for phi = 3 t^2: ratio = {:?} (c^(-1/p) = {:.6})",
        report.ratio,
        3f64.powf(-0.5)
    );
}
