//! Growth-condition probes: Delta2, Delta' (both forms), Nabla', and the
//! power-sandwich fit they unlock.

use orlicz::config::ProbeGrid;
use orlicz::function::OrliczFunction;
use orlicz::probe::{
    power_fit, probe_delta2, probe_delta_prime, probe_delta_prime_a_form, probe_nabla_prime,
};

fn main() {
    let grid = ProbeGrid::default();
    let functions = [
        ("t^2", OrliczFunction::power(2.0).unwrap()),
        ("t^3", OrliczFunction::power(3.0).unwrap()),
        ("3 t^2", OrliczFunction::power_scaled(3.0, 2.0).unwrap()),
        ("e^t - 1", OrliczFunction::exp_minus_one()),
        ("t ln(1+t)", OrliczFunction::t_log1p()),
    ];
    println!(
        "{:>10} | {:^16} | {:^16} | {:^16} | {:^14}",
        "phi", "Delta2 (K)", "Delta' (C)", "a-form (a)", "Nabla' (b)"
    );
    for (name, phi) in &functions {
        let d2 = probe_delta2(phi, grid.min, grid.max, grid.points);
        let dp = probe_delta_prime(phi, 0.0, &grid);
        let af = probe_delta_prime_a_form(phi, 0.0, &grid);
        let np = probe_nabla_prime(phi, 0.0, &grid);
        let cell = |holds: bool, c: f64| {
            if holds {
                format!("holds, {c:.4}")
            } else {
                "fails".to_string()
            }
        };
        println!(
            "{name:>10} | {:^16} | {:^16} | {:^16} | {:^14}",
            cell(d2.holds, d2.constant),
            cell(dp.holds, dp.constant),
            cell(af.holds, af.constant),
            cell(np.holds, np.constant),
        );
    }

    println!("\npower sandwich (a1 x)^p <= phi(x) <= (a2 x)^p beyond x0 = 0.01:");
    for (name, phi) in &functions {
        let fit = power_fit(phi, 1e-2, &grid);
        println!("  {name:>10}: {fit:?}");
    }
}
