//! Conjugation and the Young inequality: closed forms for the power
//! family, the numeric supremum for everything else, and the biconjugation
//! round trip.

use orlicz::function::OrliczFunction;
use orlicz::numeric::log_grid;

fn main() {
    let square = OrliczFunction::power(2.0).unwrap();
    let conj = square.conjugate();
    println!("phi(t) = t^2, phi*(u) = u^2/4:");
    for u in [0.5, 1.0, 2.0, 3.0] {
        println!("  phi*({u}) = {}", conj.evaluate(u).unwrap());
    }

    let exp = OrliczFunction::exp_minus_one();
    let exp_conj = exp.conjugate();
    println!("\nphi(t) = e^t - 1, numeric conjugate vs u ln u - u + 1:");
    for u in [1.0, 2.0, 10.0, 55.0] {
        let got = exp_conj.evaluate(u).unwrap();
        let closed = if u <= 1.0 { 0.0 } else { u * u.ln() - u + 1.0 };
        println!("  phi*({u}) = {got:.9} (closed form {closed:.9})");
    }

    println!("\nYoung gaps phi(s) + phi*(t) - s t for phi = t^2:");
    for (s, t) in [(2.0, 1.0), (1.0, 2.0), (0.3, 4.0)] {
        println!("  gap({s}, {t}) = {:.6}", square.young_gap(s, t));
    }

    let linear = OrliczFunction::power(1.0).unwrap();
    let cutoff = linear.conjugate();
    println!("\nphi(t) = t conjugates to the unit cutoff:");
    println!("  phi*(0.99) = {}", cutoff.evaluate(0.99).unwrap());
    println!("  phi*(1.01) = {}", cutoff.evaluate(1.01).unwrap());

    let mut worst = 0.0_f64;
    let biconj = square.conjugate().conjugate();
    for t in log_grid(1e-3, 1e3, 41) {
        let a = square.evaluate(t).unwrap();
        let b = biconj.evaluate(t).unwrap();
        worst = worst.max((a - b).abs() / (1.0 + a));
    }
    println!("\nworst relative biconjugation error for t^2: {worst:.3e}");
}
