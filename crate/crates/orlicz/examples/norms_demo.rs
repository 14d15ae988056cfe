//! Luxemburg and Orlicz norms side by side, the projection-norm formula,
//! and the Koethe/Hoelder pairing bound.

use orlicz::algebra::{AlgebraElement, BlockAlgebra, BlockSpec, Mat};
use orlicz::function::OrliczFunction;
use orlicz::norms::{holder_check, luxemburg_norm, modular, orlicz_norm};

fn diag(entries: &[f64], weight: f64) -> AlgebraElement {
    let alg = BlockAlgebra::new(vec![BlockSpec {
        dim: entries.len(),
        weight,
    }])
    .unwrap();
    AlgebraElement::new(alg, vec![Mat::diag(entries)]).unwrap()
}

fn main() {
    let square = OrliczFunction::power(2.0).unwrap();
    let x = diag(&[3.0, 4.0], 1.0);
    println!("x = diag(3, 4), phi = t^2:");
    println!("  modular tau(phi(|x|)) = {}", modular(&square, &x));
    let lux = luxemburg_norm(&square, &x);
    println!(
        "  luxemburg = {} ({:?}, {} iterations)",
        lux.value, lux.method, lux.iterations
    );
    let orl = orlicz_norm(&square, &x);
    println!("  orlicz    = {} ({:?})", orl.value, orl.method);

    // projection norm 1/phi^{-1}(1/tau(e)) for any phi
    let exp = OrliczFunction::exp_minus_one();
    let e = diag(&[1.0, 1.0, 1.0], 1.0);
    let expected = 1.0 / exp.formal_inverse(1.0 / 3.0);
    println!("\nprojection with tau(e) = 3, phi = e^t - 1:");
    println!("  ||e|| = {}", luxemburg_norm(&exp, &e).value);
    println!("  1/phi^-1(1/3) = {expected}");

    // the equivalence band and the pairing bound
    let y = diag(&[1.0, 0.0], 1.0);
    let lux_y = luxemburg_norm(&square, &y).value;
    let orl_y = orlicz_norm(&square, &y).value;
    println!(
        "\ny = diag(1, 0): luxemburg = {lux_y}, orlicz = {orl_y} (band [{lux_y}, {}])",
        2.0 * lux_y
    );

    let f = diag(&[1.2, -0.4], 1.0);
    let g = diag(&[0.7, 2.0], 1.0);
    let rep = holder_check(&f, &g, &square).unwrap();
    println!("\nHoelder on a random-ish pair:");
    println!(
        "  tau(|fg|) = {:.6} <= {:.6} = ||f||^0_conj * ||g||  ({})",
        rep.pairing, rep.bound, rep.holds
    );
}
