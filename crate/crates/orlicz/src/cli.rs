//! Command-line front end: wires file-based function and element specs to
//! the library operations and runs the one-shot verification suite.
//!
//! Exit codes: 0 on success or all-pass, 1 on a violated assertion (the
//! first failing case is printed), 2 on usage, parse or validation
//! errors. All output is deterministic given the inputs, flags and seed.

use crate::algebra::{AlgebraElement, BlockAlgebra, BlockSpec};
use crate::compactness::{
    isometry_image_check, projection_norm_sandwich, rademacher_image_check, structure_report,
};
use crate::config::{ProbeGrid, RunConfig};
use crate::io::{
    ext_real_to_json, ext_real_to_string, load_element, load_function, load_vector,
    rearrangement_csv, IoError,
};
use crate::multipliers::{
    check_constants, default_triple_grid, search_constants, verify_bound, ConstantWitness,
};
use crate::norms::{luxemburg_norm, orlicz_norm, NormResult};
use crate::probe::{
    power_fit, probe_delta2, probe_delta_prime, probe_delta_prime_a_form, probe_nabla_prime,
};
use crate::rescaling::{
    equivalent_measure_map, rescale_down, rescale_up, AtomicMeasurePair, RescalingError,
};
use crate::step::mu;
use crate::verify;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "orlicz",
    version,
    about = "Orlicz-function calculus and multiplier checks on weighted-block tracial algebras",
    disable_help_flag = false
)]
struct Cli {
    /// JSON config file overriding the embedded defaults
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print the effective configuration as JSON and exit
    #[arg(long, global = true)]
    show_config: bool,
    /// Seed for randomized constructions
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orlicz-function operations: conjugate, inverse, probes, limits, power fit
    #[command(name = "fn")]
    Function {
        #[command(subcommand)]
        op: FnOp,
    },
    /// Export the decreasing rearrangement of an element as CSV
    Rearrange {
        #[arg(long)]
        element: PathBuf,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Luxemburg or Orlicz norm of an element
    Norm {
        #[arg(long, value_enum)]
        which: WhichNorm,
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        element: PathBuf,
    },
    /// Three-function Young inequality: check, search, verify on elements
    Mult {
        #[command(subcommand)]
        op: MultOp,
    },
    /// Rescaling maps between Orlicz spaces
    Rescale {
        #[command(subcommand)]
        op: RescaleOp,
    },
    /// Equivalent-measure map on atomic measure pairs
    MeasureMap {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        nu1: PathBuf,
        #[arg(long)]
        nu2: PathBuf,
        #[arg(long)]
        f: PathBuf,
    },
    /// Compactness-argument diagnostics
    Compact {
        #[command(subcommand)]
        op: CompactOp,
    },
    /// Run every module invariant and aggregate pass/fail counts
    VerifySuite,
}

#[derive(Subcommand, Debug)]
enum FnOp {
    /// Evaluate the complementary function, or print its spec
    Conjugate {
        #[arg(long)]
        spec: PathBuf,
        /// Evaluation point; omit to print the conjugate spec
        #[arg(long)]
        at: Option<f64>,
    },
    /// Evaluate the formal inverse sup{s : phi(s) <= t}
    Inverse {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        at: f64,
    },
    /// Growth-condition probes on a log grid
    Probe {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum)]
        condition: Condition,
        #[arg(long, default_value_t = 0.0)]
        u0: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Trend estimates of phi(t)/t at zero and infinity
    Limits {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Power-sandwich fit beyond x0 (requires Delta' and Nabla')
    Powerfit {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 1e-2)]
        x0: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long)]
    min: Option<f64>,
    #[arg(long)]
    max: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
}

impl GridArgs {
    fn resolve(&self, cfg: &RunConfig) -> ProbeGrid {
        let base = cfg.probe_grid();
        ProbeGrid::new(
            self.min.unwrap_or(base.min),
            self.max.unwrap_or(base.max),
            self.points.unwrap_or(base.points),
        )
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Condition {
    Delta2,
    DeltaPrime,
    NablaPrime,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum WhichNorm {
    Luxemburg,
    Orlicz,
}

#[derive(Subcommand, Debug)]
enum MultOp {
    /// Check a constant witness against the sampled inequality
    Check {
        #[arg(long)]
        zeta: PathBuf,
        #[arg(long)]
        phi1: PathBuf,
        #[arg(long)]
        phi2: PathBuf,
        /// Comma-separated M,alpha,beta,gamma
        #[arg(long, conflicts_with = "search")]
        constants: Option<String>,
        /// Search for a witness instead of checking one
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// Deterministic witness search over log-spaced constants
    Search {
        #[arg(long)]
        zeta: PathBuf,
        #[arg(long)]
        phi1: PathBuf,
        #[arg(long)]
        phi2: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// Verify the derived trace bound on normalized elements
    Verify {
        #[arg(long)]
        zeta: PathBuf,
        #[arg(long)]
        phi1: PathBuf,
        #[arg(long)]
        phi2: PathBuf,
        #[arg(long)]
        constants: String,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum RescaleOp {
    /// phi2 applied spectrally, with the Delta2 chain certificate
    Up {
        #[arg(long)]
        psi: PathBuf,
        #[arg(long)]
        phi2: PathBuf,
        #[arg(long)]
        element: PathBuf,
    },
    /// The formal inverse applied spectrally (needs Delta' globally)
    Down {
        #[arg(long)]
        phi2: PathBuf,
        #[arg(long)]
        element: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum CompactOp {
    /// Central-carrier structure report of a multiplier
    Diag {
        #[arg(long)]
        g: PathBuf,
        #[arg(long = "fn")]
        function: PathBuf,
    },
    /// Rademacher-image norm constancy on a dyadic atom algebra
    Case1 {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
    /// Partial-isometry lower bounds on a matrix block
    Case2 {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long, default_value_t = 5)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        seeds: u64,
    },
    /// Projection-norm sandwich over a set of traces
    Case3 {
        #[arg(long = "fn")]
        function: PathBuf,
        /// Comma-separated projection traces
        #[arg(long, default_value = "1,1.5,2,2.5,7")]
        traces: String,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: String) -> Self {
        Failure { code: 2, message }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

impl From<crate::algebra::AlgebraError> for Failure {
    fn from(e: crate::algebra::AlgebraError) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

/// Entry point used by the binary and by tests. Parses `argv`, writes the
/// primary output to `out` and diagnostics to `err`, and returns the exit
/// code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are successful output
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = write!(err, "{e}");
            return 2;
        }
    };
    let mut cfg = match load_config(&cli) {
        Ok(cfg) => cfg,
        Err(f) => {
            let _ = writeln!(err, "{}", f.message);
            return f.code;
        }
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if cli.show_config {
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&cfg).expect("config serializes")
        );
        return 0;
    }
    let command = match cli.command {
        Some(c) => c,
        None => {
            let _ = writeln!(err, "a subcommand is required; try --help");
            return 2;
        }
    };
    match dispatch(command, &cfg, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "{}", f.message);
            f.code
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| {
                Failure::usage(format!(
                    "{}:{}:{}: {e}",
                    path.display(),
                    e.line(),
                    e.column()
                ))
            })?
        }
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    cfg.validate().map_err(|e| Failure::usage(e.to_string()))?;
    Ok(cfg)
}

fn emit_json<T: serde::Serialize>(out: &mut dyn Write, value: &T) {
    let _ = writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("report serializes")
    );
}

fn parse_constants(text: &str) -> Result<ConstantWitness, Failure> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::usage(format!("cannot parse constants '{text}': {e}")))?;
    if parts.len() != 4 {
        return Err(Failure::usage(format!(
            "constants need exactly M,alpha,beta,gamma; got {} values",
            parts.len()
        )));
    }
    ConstantWitness::new(parts[0], parts[1], parts[2], parts[3])
        .map_err(|e| Failure::usage(e.to_string()))
}

fn dispatch(command: Command, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Function { op } => run_fn(op, cfg, out),
        Command::Rearrange {
            element,
            out: target,
        } => {
            let x = load_element(&element)?;
            let csv = rearrangement_csv(&mu(&x));
            match target {
                Some(path) => std::fs::write(&path, csv)
                    .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?,
                None => {
                    let _ = write!(out, "{csv}");
                }
            }
            Ok(0)
        }
        Command::Norm {
            which,
            function,
            element,
        } => {
            let phi = load_function(&function)?;
            let x = load_element(&element)?;
            let result: NormResult = match which {
                WhichNorm::Luxemburg => luxemburg_norm(&phi, &x),
                WhichNorm::Orlicz => orlicz_norm(&phi, &x),
            };
            emit_json(out, &result);
            Ok(0)
        }
        Command::Mult { op } => run_mult(op, out),
        Command::Rescale { op } => run_rescale(op, cfg, out),
        Command::MeasureMap {
            function,
            nu1,
            nu2,
            f,
        } => {
            let phi = load_function(&function)?;
            let pair = AtomicMeasurePair::new(load_vector(&nu1)?, load_vector(&nu2)?)
                .map_err(|e| Failure::usage(e.to_string()))?;
            let fv = load_vector(&f)?;
            let report = equivalent_measure_map(&phi, &pair, &fv, &cfg.probe_grid())
                .map_err(|e| Failure::usage(e.to_string()))?;
            emit_json(out, &report);
            let broken = report.upper.map(|b| !b.holds).unwrap_or(false)
                || report.lower.map(|b| !b.holds).unwrap_or(false);
            Ok(if broken { 1 } else { 0 })
        }
        Command::Compact { op } => run_compact(op, cfg, out),
        Command::VerifySuite => {
            let results = verify::run_all(cfg.seed);
            let mut passed = 0;
            for r in &results {
                let _ = writeln!(
                    out,
                    "{} {}::{} ({} cases){}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.module,
                    r.name,
                    r.cases,
                    if r.passed {
                        String::new()
                    } else {
                        format!(" -- {}", r.detail)
                    }
                );
                if r.passed {
                    passed += 1;
                }
            }
            let _ = writeln!(out, "{passed}/{} checks passed", results.len());
            Ok(if passed == results.len() { 0 } else { 1 })
        }
    }
}

fn run_fn(op: FnOp, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    match op {
        FnOp::Conjugate { spec, at } => {
            let phi = load_function(&spec)?;
            let conj = phi.conjugate();
            match at {
                Some(t) => {
                    if t < 0.0 {
                        return Err(Failure::usage(format!("--at must be nonnegative, got {t}")));
                    }
                    let v = conj
                        .evaluate(t)
                        .map_err(|e| Failure::usage(e.to_string()))?;
                    let _ = writeln!(out, "{}", ext_real_to_string(v));
                }
                None => emit_json(out, conj.spec()),
            }
            Ok(0)
        }
        FnOp::Inverse { spec, at } => {
            let phi = load_function(&spec)?;
            if at < 0.0 {
                return Err(Failure::usage(format!(
                    "--at must be nonnegative, got {at}"
                )));
            }
            let _ = writeln!(out, "{}", ext_real_to_string(phi.formal_inverse(at)));
            Ok(0)
        }
        FnOp::Probe {
            spec,
            condition,
            u0,
            grid,
        } => {
            let phi = load_function(&spec)?;
            let g = grid.resolve(cfg);
            match condition {
                Condition::Delta2 => {
                    let rep = probe_delta2(&phi, g.min, g.max, g.points);
                    emit_json(out, &rep);
                }
                Condition::DeltaPrime => {
                    let c_form = probe_delta_prime(&phi, u0, &g);
                    let a_form = probe_delta_prime_a_form(&phi, u0, &g);
                    emit_json(
                        out,
                        &serde_json::json!({ "c_form": c_form, "a_form": a_form }),
                    );
                }
                Condition::NablaPrime => {
                    let rep = probe_nabla_prime(&phi, u0, &g);
                    emit_json(out, &rep);
                }
            }
            Ok(0)
        }
        FnOp::Limits { spec } => {
            let phi = load_function(&spec)?;
            let rep = phi.n_function_limits();
            emit_json(
                out,
                &serde_json::json!({
                    "at_zero": { "kind": rep.at_zero.kind, "estimate": ext_real_to_json(rep.at_zero.estimate) },
                    "at_infinity": { "kind": rep.at_infinity.kind, "estimate": ext_real_to_json(rep.at_infinity.estimate) },
                    "n_function": rep.n_function,
                }),
            );
            Ok(0)
        }
        FnOp::Powerfit { spec, x0, grid } => {
            let phi = load_function(&spec)?;
            let fit = power_fit(&phi, x0, &grid.resolve(cfg));
            emit_json(out, &fit);
            Ok(0)
        }
    }
}

fn run_mult(op: MultOp, out: &mut dyn Write) -> Result<i32, Failure> {
    match op {
        MultOp::Check {
            zeta,
            phi1,
            phi2,
            constants,
            search,
            budget,
        } => {
            let zeta = load_function(&zeta)?;
            let phi1 = load_function(&phi1)?;
            let phi2 = load_function(&phi2)?;
            if search {
                let outcome = search_constants(&zeta, &phi1, &phi2, budget);
                emit_json(out, &outcome);
                return Ok(0);
            }
            let text = constants
                .ok_or_else(|| Failure::usage("give --constants M,a,b,g or --search".into()))?;
            let witness = parse_constants(&text)?;
            let report = check_constants(&zeta, &phi1, &phi2, &witness, &default_triple_grid());
            emit_json(out, &report);
            Ok(if report.holds { 0 } else { 1 })
        }
        MultOp::Search {
            zeta,
            phi1,
            phi2,
            budget,
        } => {
            let zeta = load_function(&zeta)?;
            let phi1 = load_function(&phi1)?;
            let phi2 = load_function(&phi2)?;
            let outcome = search_constants(&zeta, &phi1, &phi2, budget);
            emit_json(out, &outcome);
            Ok(0)
        }
        MultOp::Verify {
            zeta,
            phi1,
            phi2,
            constants,
            f,
            g,
            h,
        } => {
            let zeta = load_function(&zeta)?;
            let phi1 = load_function(&phi1)?;
            let phi2 = load_function(&phi2)?;
            let witness = parse_constants(&constants)?;
            let check = check_constants(&zeta, &phi1, &phi2, &witness, &default_triple_grid());
            if !check.holds {
                emit_json(out, &check);
                return Ok(1);
            }
            let f = load_element(&f)?;
            let g = load_element(&g)?;
            let h = load_element(&h)?;
            let report = verify_bound(&zeta, &phi1, &phi2, &check, &f, &g, &h)
                .map_err(|e| Failure::usage(e.to_string()))?;
            emit_json(out, &report);
            Ok(if report.holds { 0 } else { 1 })
        }
    }
}

fn run_rescale(op: RescaleOp, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let grid = cfg.probe_grid();
    match op {
        RescaleOp::Up { psi, phi2, element } => {
            let psi = load_function(&psi)?;
            let phi2 = load_function(&phi2)?;
            let g = load_element(&element)?;
            match rescale_up(&psi, &phi2, &g, &grid) {
                Ok((image, report)) => {
                    emit_json(
                        out,
                        &serde_json::json!({
                            "image": crate::io::element_to_file(&image),
                            "certificate": report,
                        }),
                    );
                    Ok(if report.holds { 0 } else { 1 })
                }
                Err(RescalingError::NotApplicable(reason)) => {
                    emit_json(out, &serde_json::json!({ "not_applicable": reason }));
                    Ok(0)
                }
                Err(e) => Err(Failure::usage(e.to_string())),
            }
        }
        RescaleOp::Down { phi2, element } => {
            let phi2 = load_function(&phi2)?;
            let f = load_element(&element)?;
            match rescale_down(&phi2, &f, &grid) {
                Ok((image, report)) => {
                    emit_json(
                        out,
                        &serde_json::json!({
                            "image": crate::io::element_to_file(&image),
                            "report": report,
                        }),
                    );
                    Ok(if report.holds { 0 } else { 1 })
                }
                Err(RescalingError::NotApplicable(reason)) => {
                    emit_json(out, &serde_json::json!({ "not_applicable": reason }));
                    Ok(0)
                }
                Err(e) => Err(Failure::usage(e.to_string())),
            }
        }
    }
}

fn run_compact(op: CompactOp, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    match op {
        CompactOp::Diag { g, function } => {
            let g = load_element(&g)?;
            let phi = load_function(&function)?;
            let report = structure_report(&g, &phi);
            emit_json(out, &report);
            Ok(if report.holds { 0 } else { 1 })
        }
        CompactOp::Case1 { function, k } => {
            let phi = load_function(&function)?;
            let alg = BlockAlgebra::dyadic_atoms(k);
            let g = AlgebraElement::random(&alg, cfg.seed);
            let report =
                rademacher_image_check(&g, &phi).map_err(|e| Failure::usage(e.to_string()))?;
            emit_json(out, &report);
            Ok(if report.holds { 0 } else { 1 })
        }
        CompactOp::Case2 {
            function,
            dim,
            seeds,
        } => {
            let phi = load_function(&function)?;
            let alg = BlockAlgebra::new(vec![BlockSpec { dim, weight: 1.0 }])
                .map_err(|e| Failure::usage(e.to_string()))?;
            let mut all = true;
            let mut reports = Vec::new();
            for i in 0..seeds {
                let g = AlgebraElement::random_positive(&alg, cfg.seed.wrapping_add(i));
                let top = g
                    .singular_values()
                    .iter()
                    .map(|&(_, s)| s)
                    .fold(0.0, f64::max);
                let report = isometry_image_check(&g, 0.5 * top, &phi)
                    .map_err(|e| Failure::usage(e.to_string()))?;
                all &= report.holds;
                reports.push(report);
            }
            emit_json(
                out,
                &serde_json::json!({ "seeds": seeds, "all_hold": all, "first": reports.first() }),
            );
            Ok(if all { 0 } else { 1 })
        }
        CompactOp::Case3 { function, traces } => {
            let phi = load_function(&function)?;
            let taus: Vec<f64> = traces
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| Failure::usage(format!("cannot parse traces '{traces}': {e}")))?;
            let mut all = true;
            let mut reports = Vec::new();
            for tau in taus {
                let e = verify::projection_of_trace(tau);
                let report = projection_norm_sandwich(&phi, &e)
                    .map_err(|e| Failure::usage(e.to_string()))?;
                all &= report.holds;
                reports.push(report);
            }
            emit_json(out, &reports);
            Ok(if all { 0 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().map(|s| s.to_string()), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn write_file(dir: &std::path::Path, name: &str, content: &str) -> String {
        let path = dir.join(name);
        std::fs::write(&path, content).unwrap();
        path.display().to_string()
    }

    fn tempdir() -> std::path::PathBuf {
        let dir = std::env::temp_dir().join(format!("orlicz-cli-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }

    #[test]
    fn conjugate_of_square_at_three() {
        let dir = tempdir();
        let spec = write_file(&dir, "p2.json", r#"{"kind":"power","p":2}"#);
        let (code, out, _) =
            run_capture(&["orlicz", "fn", "conjugate", "--spec", &spec, "--at", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "2.25");
    }

    #[test]
    fn missing_subcommand_is_usage_error() {
        let (code, _, err) = run_capture(&["orlicz"]);
        assert_eq!(code, 2);
        assert!(err.contains("subcommand"));
    }

    #[test]
    fn malformed_json_exits_2_with_position() {
        let dir = tempdir();
        let spec = write_file(&dir, "broken.json", "{\"kind\":\"power\",\n \"p\": }");
        let (code, _, err) =
            run_capture(&["orlicz", "fn", "inverse", "--spec", &spec, "--at", "1"]);
        assert_eq!(code, 2);
        assert!(
            err.contains(":2:"),
            "diagnostic should carry the line: {err}"
        );
    }

    #[test]
    fn show_config_prints_defaults() {
        let (code, out, _) = run_capture(&["orlicz", "--show-config"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"grid_min\""));
    }
}
