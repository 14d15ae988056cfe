//! Generalized singular values on a weighted block algebra: the step
//! function mu, its CSV export, and the spectral rearrangement identity.

use orlicz::algebra::{AlgebraElement, BlockAlgebra, BlockSpec, Mat};
use orlicz::function::OrliczFunction;
use orlicz::io::rearrangement_csv;
use orlicz::step::{mu, mu_at};

fn main() {
    let alg = BlockAlgebra::new(vec![
        BlockSpec {
            dim: 3,
            weight: 1.0,
        },
        BlockSpec {
            dim: 2,
            weight: 0.5,
        },
    ])
    .unwrap();
    let x = AlgebraElement::new(
        alg.clone(),
        vec![Mat::diag(&[1.0, -2.0, 3.0]), Mat::diag(&[2.5, 0.5])],
    )
    .unwrap();
    println!("tau(identity) = {}", alg.total_trace());
    println!("tau(|x|) = {}", mu(&x).integral());

    println!("\nmu(x) as t_start,t_end,value rows:");
    print!("{}", rearrangement_csv(&mu(&x)));

    println!("\nright-continuous evaluation:");
    for t in [0.0, 0.9, 1.0, 2.0, 3.9, 4.0] {
        println!("  mu_{t}(x) = {}", mu_at(&x, t).unwrap());
    }

    // the rearrangement identity: phi(mu_t(x)) = mu_t(phi(|x|)) and
    // tau(phi(|x|)) = integral of phi(mu)
    let phi = OrliczFunction::t_log1p();
    let y = x.abs().apply_function(&phi).unwrap();
    println!("\nphi = t ln(1+t):");
    println!("  tau(phi(|x|))            = {}", y.trace());
    println!("  integral of phi over mu  = {}", mu(&x).integral_of(&phi));
    println!(
        "  steps agree: {}",
        mu(&x).map_values(&phi).approx_eq(&mu(&y))
    );
}
