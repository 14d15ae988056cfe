//! Orlicz functions as expression trees: construction, evaluation on the
//! extended half-line, convex conjugation, formal inversion, composition
//! and axiom checks.
//!
//! A function is described by a [`FunctionSpec`] tree (the JSON-facing
//! schema) and compiled at construction into an evaluator. The thresholds
//! `a_phi = inf{u > 0 : phi(u) > 0}` and `b_phi = sup{u > 0 : phi(u) < inf}`
//! are computed once during compilation and cached.
//!
//! Conjugation uses closed forms for the power family (`t^p` and `c*t^p`)
//! and otherwise a declared numeric supremum: 512 log-spaced sample points
//! per decade on `[1e-6, min(b_phi, 1e6)]` with golden-section refinement
//! around the grid argmax. Sample values of the inner function are cached
//! on first use; evaluation semantics do not depend on the cache.

use crate::config::{CONJ_POINTS_PER_DECADE, CONJ_V_MAX, CONJ_V_MIN, EPS_CONV};
use crate::numeric::{bisect_monotone, golden_max, log_grid};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Errors from constructing or evaluating function specs.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionError {
    /// Evaluation requested at a negative argument.
    NegativeArgument(f64),
    /// A scalar parameter is outside its admissible range.
    InvalidParameter(String),
    /// The knot list of a piecewise function is malformed.
    InvalidKnots(String),
}

impl fmt::Display for FunctionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionError::NegativeArgument(t) => {
                write!(f, "function argument must be nonnegative, got {t}")
            }
            FunctionError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            FunctionError::InvalidKnots(msg) => write!(f, "invalid knots: {msg}"),
        }
    }
}

impl std::error::Error for FunctionError {}

/// JSON-facing description of a function tree.
///
/// Serialized with a `"kind"` tag, e.g. `{"kind":"power","p":2}` or
/// `{"kind":"compose","outer":S,"inner":S}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionSpec {
    Power {
        p: f64,
    },
    PowerScaled {
        c: f64,
        p: f64,
    },
    ExpMinusOne,
    TLog1p,
    PiecewiseLinear {
        knots: Vec<[f64; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        final_slope: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        finite_cutoff: Option<f64>,
    },
    Compose {
        outer: Box<FunctionSpec>,
        inner: Box<FunctionSpec>,
    },
    Conjugate {
        of: Box<FunctionSpec>,
    },
    Hscale {
        a: f64,
        of: Box<FunctionSpec>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tail {
    Slope(f64),
    Cutoff(f64),
}

/// Compiled evaluator node.
#[derive(Debug)]
enum Node {
    Power { p: f64 },
    PowerScaled { c: f64, p: f64 },
    ExpMinusOne,
    TLog1p,
    Piecewise { knots: Vec<(f64, f64)>, tail: Tail },
    Compose { outer: Arc<Node>, inner: Arc<Node> },
    Conj(ConjNode),
    Hscale { a: f64, of: Arc<Node> },
}

/// Numeric conjugate: supremum of `u*v - phi(v)` over a fixed v-grid with
/// golden-section refinement around the argmax.
#[derive(Debug)]
struct ConjNode {
    inner: Arc<Node>,
    v_lo: f64,
    v_hi: f64,
    n_points: usize,
    /// Slope of the inner function at infinity; the conjugate is `+inf`
    /// strictly above it.
    b_star: f64,
    table: OnceLock<Vec<(f64, f64)>>,
}

impl Node {
    fn eval(&self, t: f64) -> f64 {
        match self {
            Node::Power { p } => t.powf(*p),
            Node::PowerScaled { c, p } => c * t.powf(*p),
            Node::ExpMinusOne => t.exp_m1(),
            Node::TLog1p => t * t.ln_1p(),
            Node::Piecewise { knots, tail } => eval_piecewise(knots, *tail, t),
            Node::Compose { outer, inner } => {
                let x = inner.eval(t);
                if x.is_infinite() {
                    f64::INFINITY
                } else {
                    outer.eval(x)
                }
            }
            Node::Conj(c) => c.eval(t),
            Node::Hscale { a, of } => of.eval(a * t),
        }
    }
}

fn eval_piecewise(knots: &[(f64, f64)], tail: Tail, t: f64) -> f64 {
    let (t_last, y_last) = *knots.last().expect("nonempty knots");
    if t <= knots[0].0 {
        return knots[0].1;
    }
    if t <= t_last {
        // first knot with knot.0 >= t
        let i = knots.partition_point(|k| k.0 < t);
        let (t0, y0) = knots[i - 1];
        let (t1, y1) = knots[i];
        return y0 + (y1 - y0) * (t - t0) / (t1 - t0);
    }
    let ext_slope = match tail {
        Tail::Slope(s) => s,
        Tail::Cutoff(b) => {
            if t > b {
                return f64::INFINITY;
            }
            last_segment_slope(knots)
        }
    };
    y_last + ext_slope * (t - t_last)
}

fn last_segment_slope(knots: &[(f64, f64)]) -> f64 {
    if knots.len() < 2 {
        return 0.0;
    }
    let (t0, y0) = knots[knots.len() - 2];
    let (t1, y1) = knots[knots.len() - 1];
    (y1 - y0) / (t1 - t0)
}

impl ConjNode {
    fn table(&self) -> &[(f64, f64)] {
        self.table.get_or_init(|| {
            log_grid(self.v_lo, self.v_hi, self.n_points)
                .into_iter()
                .map(|v| (v, self.inner.eval(v)))
                .collect()
        })
    }

    fn eval(&self, u: f64) -> f64 {
        if u == 0.0 {
            return 0.0;
        }
        if u > self.b_star {
            return f64::INFINITY;
        }
        let table = self.table();
        // sup over v > 0 of u*v - phi(v); the v -> 0 limit pins the floor 0
        let mut best = 0.0_f64;
        let mut best_i: Option<usize> = None;
        for (i, &(v, fv)) in table.iter().enumerate() {
            if fv.is_finite() {
                let h = u * v - fv;
                if h > best {
                    best = h;
                    best_i = Some(i);
                }
            }
        }
        if let Some(i) = best_i {
            let lo = if i == 0 {
                table[0].0 * 0.1
            } else {
                table[i - 1].0
            };
            let hi = if i + 1 < table.len() {
                table[i + 1].0
            } else {
                table[i].0
            };
            if hi > lo {
                let objective = |v: f64| {
                    let fv = self.inner.eval(v);
                    if fv.is_finite() {
                        u * v - fv
                    } else {
                        f64::NEG_INFINITY
                    }
                };
                let (_, refined) = golden_max(lo, hi, objective, 1e-13, 90);
                if refined > best {
                    best = refined;
                }
            }
        }
        best
    }
}

/// Monotone limit of `node(v)/v` as `v -> inf`, sampled geometrically.
/// Returns `+inf` once values overflow or the ratio keeps growing without
/// stabilizing (superlinear growth).
fn slope_at_infinity(node: &Node) -> f64 {
    let mut prev: Option<f64> = None;
    let mut increasing = false;
    for k in 0..=300u32 {
        let v = 2f64.powi(k as i32);
        let fv = node.eval(v);
        if fv.is_infinite() {
            return f64::INFINITY;
        }
        let r = fv / v;
        if let Some(p) = prev {
            if k >= 8 && (r - p).abs() <= 1e-9 * (1.0 + r.abs()) {
                return r;
            }
            increasing = r > p;
        }
        prev = Some(r);
    }
    let last = prev.unwrap_or(0.0);
    if increasing || last >= 1e12 {
        f64::INFINITY
    } else {
        last
    }
}

/// Monotone limit of `node(v)/v` as `v -> 0+`; tiny limits snap to zero.
fn slope_at_zero(node: &Node) -> f64 {
    let mut last = 0.0;
    for k in 0..=80u32 {
        let v = 2f64.powi(-(k as i32));
        let fv = node.eval(v);
        if !fv.is_finite() {
            continue;
        }
        last = fv / v;
    }
    if last < 1e-12 {
        0.0
    } else {
        last
    }
}

/// `sup{s : node(s) <= t}` with doubling and bisection, capped at `b_node`.
fn node_inverse(node: &Node, b_node: f64, t: f64) -> f64 {
    if t < 0.0 {
        return 0.0;
    }
    if b_node.is_finite() && node.eval(b_node) <= t {
        return b_node;
    }
    // find hi with node(hi) > t
    let mut hi = 1.0;
    let mut guard = 0;
    while node.eval(hi) <= t {
        hi *= 2.0;
        guard += 1;
        if guard > 1100 {
            return f64::INFINITY;
        }
        if b_node.is_finite() && hi >= b_node {
            hi = b_node;
            break;
        }
    }
    let b = bisect_monotone(0.0, hi, |s| node.eval(s) > t, |m| 1e-15 * (1.0 + m), 200);
    b.lo
}

/// A convex function `[0, inf) -> [0, inf]` given by an expression tree,
/// with its positivity threshold `a_phi` and finiteness threshold `b_phi`
/// computed at construction.
#[derive(Debug)]
pub struct OrliczFunction {
    spec: FunctionSpec,
    node: Arc<Node>,
    a_phi: f64,
    b_phi: f64,
    conj: OnceLock<Box<OrliczFunction>>,
}

impl Clone for OrliczFunction {
    fn clone(&self) -> Self {
        OrliczFunction {
            spec: self.spec.clone(),
            node: Arc::clone(&self.node),
            a_phi: self.a_phi,
            b_phi: self.b_phi,
            conj: OnceLock::new(),
        }
    }
}

impl fmt::Display for OrliczFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            serde_json::to_string(&self.spec).map_err(|_| fmt::Error)?
        )
    }
}

/// Compiled child: evaluator plus cached thresholds.
struct Compiled {
    node: Arc<Node>,
    a: f64,
    b: f64,
}

fn check_finite(name: &str, v: f64) -> Result<(), FunctionError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(FunctionError::InvalidParameter(format!(
            "{name} must be finite, got {v}"
        )))
    }
}

fn compile(spec: &FunctionSpec) -> Result<Compiled, FunctionError> {
    match spec {
        FunctionSpec::Power { p } => {
            check_finite("p", *p)?;
            if *p < 1.0 {
                return Err(FunctionError::InvalidParameter(format!(
                    "power exponent p must be >= 1, got {p}"
                )));
            }
            Ok(Compiled {
                node: Arc::new(Node::Power { p: *p }),
                a: 0.0,
                b: f64::INFINITY,
            })
        }
        FunctionSpec::PowerScaled { c, p } => {
            check_finite("c", *c)?;
            check_finite("p", *p)?;
            if *p < 1.0 || *c <= 0.0 {
                return Err(FunctionError::InvalidParameter(format!(
                    "power_scaled needs c > 0 and p >= 1, got c={c}, p={p}"
                )));
            }
            Ok(Compiled {
                node: Arc::new(Node::PowerScaled { c: *c, p: *p }),
                a: 0.0,
                b: f64::INFINITY,
            })
        }
        FunctionSpec::ExpMinusOne => Ok(Compiled {
            node: Arc::new(Node::ExpMinusOne),
            a: 0.0,
            b: f64::INFINITY,
        }),
        FunctionSpec::TLog1p => Ok(Compiled {
            node: Arc::new(Node::TLog1p),
            a: 0.0,
            b: f64::INFINITY,
        }),
        FunctionSpec::PiecewiseLinear {
            knots,
            final_slope,
            finite_cutoff,
        } => compile_piecewise(knots, *final_slope, *finite_cutoff),
        FunctionSpec::Compose { outer, inner } => {
            let o = compile(outer)?;
            let i = compile(inner)?;
            // phi = outer o inner is positive once inner exceeds a_outer and
            // finite while inner stays within b_outer
            let a = node_inverse(&i.node, i.b, o.a).min(i.b);
            let b = if o.b.is_infinite() {
                i.b
            } else {
                node_inverse(&i.node, i.b, o.b).min(i.b)
            };
            Ok(Compiled {
                node: Arc::new(Node::Compose {
                    outer: o.node,
                    inner: i.node,
                }),
                a,
                b,
            })
        }
        FunctionSpec::Conjugate { of } => {
            let inner = compile(of)?;
            Ok(compile_conjugate(inner))
        }
        FunctionSpec::Hscale { a, of } => {
            check_finite("a", *a)?;
            if *a <= 0.0 {
                return Err(FunctionError::InvalidParameter(format!(
                    "hscale factor a must be > 0, got {a}"
                )));
            }
            let c = compile(of)?;
            // hscale over the power family folds into a scaled power
            let node = match &*c.node {
                Node::Power { p } => Arc::new(Node::PowerScaled {
                    c: a.powf(*p),
                    p: *p,
                }),
                Node::PowerScaled { c: c0, p } => Arc::new(Node::PowerScaled {
                    c: c0 * a.powf(*p),
                    p: *p,
                }),
                _ => Arc::new(Node::Hscale { a: *a, of: c.node }),
            };
            Ok(Compiled {
                node,
                a: c.a / a,
                b: c.b / a,
            })
        }
    }
}

fn compile_piecewise(
    knots: &[[f64; 2]],
    final_slope: Option<f64>,
    finite_cutoff: Option<f64>,
) -> Result<Compiled, FunctionError> {
    if knots.is_empty() {
        return Err(FunctionError::InvalidKnots("knot list is empty".into()));
    }
    let pts: Vec<(f64, f64)> = knots.iter().map(|k| (k[0], k[1])).collect();
    for (t, y) in &pts {
        if !t.is_finite() || !y.is_finite() {
            return Err(FunctionError::InvalidKnots(format!(
                "non-finite knot ({t}, {y})"
            )));
        }
    }
    if pts[0].0 != 0.0 {
        return Err(FunctionError::InvalidKnots(format!(
            "first knot must sit at t = 0, got t = {}",
            pts[0].0
        )));
    }
    for w in pts.windows(2) {
        if w[1].0 <= w[0].0 {
            return Err(FunctionError::InvalidKnots(format!(
                "knot abscissae must increase strictly: {} then {}",
                w[0].0, w[1].0
            )));
        }
    }
    let tail = match (final_slope, finite_cutoff) {
        (Some(s), None) => {
            check_finite("final_slope", s)?;
            Tail::Slope(s)
        }
        (None, Some(b)) => {
            check_finite("finite_cutoff", b)?;
            let t_last = pts.last().unwrap().0;
            if b < t_last {
                return Err(FunctionError::InvalidKnots(format!(
                    "finite_cutoff {b} lies before the last knot {t_last}"
                )));
            }
            Tail::Cutoff(b)
        }
        (Some(_), Some(_)) => {
            return Err(FunctionError::InvalidKnots(
                "give final_slope or finite_cutoff, not both".into(),
            ))
        }
        (None, None) => {
            return Err(FunctionError::InvalidKnots(
                "piecewise_linear needs final_slope or finite_cutoff".into(),
            ))
        }
    };
    let b_phi = match tail {
        Tail::Slope(_) => f64::INFINITY,
        Tail::Cutoff(b) => b,
    };
    // positivity threshold: end of the initial flat-at-zero stretch
    let mut a_phi = 0.0;
    if pts[0].1 == 0.0 {
        let mut last_zero = 0.0;
        let mut all_zero = true;
        for w in pts.windows(2) {
            if w[0].1 == 0.0 && w[1].1 == 0.0 {
                last_zero = w[1].0;
            } else {
                all_zero = false;
                break;
            }
        }
        if pts.len() == 1 {
            last_zero = pts[0].0;
        }
        a_phi = if all_zero {
            match tail {
                Tail::Slope(s) if s > 0.0 => pts.last().unwrap().0,
                Tail::Slope(_) => f64::INFINITY, // identically zero, degenerate
                Tail::Cutoff(b) => {
                    if last_segment_slope(&pts) > 0.0 {
                        pts.last().unwrap().0
                    } else {
                        b
                    }
                }
            }
        } else {
            last_zero
        };
    }
    Ok(Compiled {
        node: Arc::new(Node::Piecewise { knots: pts, tail }),
        a: a_phi,
        b: b_phi,
    })
}

/// Conjugate of the unit-slope cutoff family: `phi = c*t` has conjugate 0
/// on `[0, c]` and `+inf` beyond.
fn cutoff_at(c: f64) -> Compiled {
    Compiled {
        node: Arc::new(Node::Piecewise {
            knots: vec![(0.0, 0.0), (c, 0.0)],
            tail: Tail::Cutoff(c),
        }),
        a: c,
        b: c,
    }
}

fn compile_conjugate(inner: Compiled) -> Compiled {
    match &*inner.node {
        Node::Power { p } if *p == 1.0 => cutoff_at(1.0),
        Node::Power { p } => {
            let q = p / (p - 1.0);
            let c = (p - 1.0) * p.powf(-q);
            Compiled {
                node: Arc::new(Node::PowerScaled { c, p: q }),
                a: 0.0,
                b: f64::INFINITY,
            }
        }
        Node::PowerScaled { c, p } if *p == 1.0 => cutoff_at(*c),
        Node::PowerScaled { c, p } => {
            let q = p / (p - 1.0);
            let c_star = (p - 1.0) * c.powf(-1.0 / (p - 1.0)) * p.powf(-q);
            Compiled {
                node: Arc::new(Node::PowerScaled { c: c_star, p: q }),
                a: 0.0,
                b: f64::INFINITY,
            }
        }
        _ => {
            let v_hi = inner.b.min(CONJ_V_MAX);
            let v_lo = CONJ_V_MIN.min(v_hi / 1e3);
            let decades = (v_hi / v_lo).log10();
            let n_points = ((decades * CONJ_POINTS_PER_DECADE as f64).ceil() as usize + 1).max(2);
            let b_star = slope_at_infinity(&inner.node);
            let a_star = slope_at_zero(&inner.node);
            let node = Node::Conj(ConjNode {
                inner: inner.node,
                v_lo,
                v_hi,
                n_points,
                b_star,
                table: OnceLock::new(),
            });
            Compiled {
                node: Arc::new(node),
                a: a_star,
                b: b_star,
            }
        }
    }
}

impl OrliczFunction {
    /// Compiles a spec tree, computing and caching `a_phi` and `b_phi`.
    pub fn new(spec: FunctionSpec) -> Result<Self, FunctionError> {
        let compiled = compile(&spec)?;
        Ok(OrliczFunction {
            spec,
            node: compiled.node,
            a_phi: compiled.a,
            b_phi: compiled.b,
            conj: OnceLock::new(),
        })
    }

    pub fn power(p: f64) -> Result<Self, FunctionError> {
        Self::new(FunctionSpec::Power { p })
    }

    pub fn power_scaled(c: f64, p: f64) -> Result<Self, FunctionError> {
        Self::new(FunctionSpec::PowerScaled { c, p })
    }

    pub fn exp_minus_one() -> Self {
        Self::new(FunctionSpec::ExpMinusOne).expect("constant spec")
    }

    pub fn t_log1p() -> Self {
        Self::new(FunctionSpec::TLog1p).expect("constant spec")
    }

    pub fn spec(&self) -> &FunctionSpec {
        &self.spec
    }

    /// `inf{u > 0 : phi(u) > 0}`.
    pub fn a_phi(&self) -> f64 {
        self.a_phi
    }

    /// `sup{u > 0 : phi(u) < inf}`.
    pub fn b_phi(&self) -> f64 {
        self.b_phi
    }

    /// Evaluates `phi(t)` on the extended half-line. `t < 0` is a domain error.
    pub fn evaluate(&self, t: f64) -> Result<f64, FunctionError> {
        if t < 0.0 || t.is_nan() {
            return Err(FunctionError::NegativeArgument(t));
        }
        Ok(self.node.eval(t))
    }

    /// Evaluation for callers that already guarantee `t >= 0`.
    pub(crate) fn eval(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        self.node.eval(t)
    }

    /// When the compiled evaluator is a (possibly scaled) power `c * t^p`,
    /// returns `(c, p)`; closed-form norm and inverse paths key off this.
    pub fn as_power(&self) -> Option<(f64, f64)> {
        match &*self.node {
            Node::Power { p } => Some((1.0, *p)),
            Node::PowerScaled { c, p } => Some((*c, *p)),
            _ => None,
        }
    }

    /// The complementary function `phi*(u) = sup_{v>0} (u v - phi(v))`.
    ///
    /// Power-family specs conjugate in closed form; everything else gets
    /// the declared numeric supremum node.
    pub fn conjugate(&self) -> Self {
        let spec = FunctionSpec::Conjugate {
            of: Box::new(self.spec.clone()),
        };
        let inner = Compiled {
            node: Arc::clone(&self.node),
            a: self.a_phi,
            b: self.b_phi,
        };
        let compiled = compile_conjugate(inner);
        OrliczFunction {
            spec,
            node: compiled.node,
            a_phi: compiled.a,
            b_phi: compiled.b,
            conj: OnceLock::new(),
        }
    }

    /// Cached handle on the conjugate, for hot paths such as `young_gap`.
    pub fn conjugate_ref(&self) -> &OrliczFunction {
        self.conj.get_or_init(|| Box::new(self.conjugate()))
    }

    /// `sup{s : phi(s) <= t}` for `t >= 0` (and 0 for `t < 0`, the
    /// supremum over the empty set).
    pub fn formal_inverse(&self, t: f64) -> f64 {
        if t < 0.0 || t.is_nan() {
            return 0.0;
        }
        if let Some((c, p)) = self.as_power() {
            return (t / c).powf(1.0 / p);
        }
        node_inverse(&self.node, self.b_phi, t)
    }

    /// Hausdorff-Young gap `phi(s) + phi*(t) - s*t`; nonnegative up to the
    /// declared conjugation error.
    pub fn young_gap(&self, s: f64, t: f64) -> f64 {
        assert!(
            s >= 0.0 && t >= 0.0,
            "young_gap wants nonnegative arguments"
        );
        let phi_s = self.eval(s);
        let conj_t = self.conjugate_ref().eval(t);
        phi_s + conj_t - s * t
    }

    /// Composition `outer o inner` together with its axiom-check verdict;
    /// a composition of Orlicz functions need not be one.
    pub fn compose(
        outer: &OrliczFunction,
        inner: &OrliczFunction,
    ) -> (OrliczFunction, ValidityReport) {
        let spec = FunctionSpec::Compose {
            outer: Box::new(outer.spec.clone()),
            inner: Box::new(inner.spec.clone()),
        };
        let f = OrliczFunction::new(spec).expect("composition of two compiled specs");
        let report = f.is_orlicz();
        (f, report)
    }

    /// Checks the Orlicz-function axioms on a sampling grid: vanishing at
    /// zero, monotonicity, convexity of second divided differences,
    /// left-continuity at a finite `b_phi`, and non-degeneracy.
    pub fn is_orlicz(&self) -> ValidityReport {
        let grid = self.check_grid();
        let mut violations = Vec::new();

        let at_zero = self.eval(0.0);
        if at_zero != 0.0 {
            violations.push(Violation {
                kind: ViolationKind::NonzeroAtZero,
                at: 0.0,
                detail: format!("phi(0) = {at_zero}"),
            });
        }

        let values: Vec<f64> = grid.iter().map(|&t| self.eval(t)).collect();

        // monotone nondecreasing, treating +inf as a terminal plateau
        let mut seen_inf = false;
        for i in 1..grid.len() {
            if values[i - 1].is_infinite() {
                seen_inf = true;
            }
            if seen_inf && values[i].is_finite() {
                violations.push(Violation {
                    kind: ViolationKind::NotMonotone,
                    at: grid[i],
                    detail: "finite value after an infinite one".into(),
                });
                break;
            }
            if values[i].is_finite()
                && values[i - 1].is_finite()
                && values[i] < values[i - 1] - 1e-12 * (1.0 + values[i - 1].abs())
            {
                violations.push(Violation {
                    kind: ViolationKind::NotMonotone,
                    at: grid[i],
                    detail: format!(
                        "phi({:.6e}) = {:.6e} < phi({:.6e}) = {:.6e}",
                        grid[i],
                        values[i],
                        grid[i - 1],
                        values[i - 1]
                    ),
                });
                break;
            }
        }

        // convexity: adjacent chord slopes must not decrease
        let mut prev_slope: Option<(f64, f64)> = None; // (slope, right endpoint)
        for i in 1..grid.len() {
            if !(values[i].is_finite() && values[i - 1].is_finite()) {
                prev_slope = None;
                continue;
            }
            let slope = (values[i] - values[i - 1]) / (grid[i] - grid[i - 1]);
            if let Some((s_prev, _)) = prev_slope {
                if slope < s_prev - EPS_CONV * (1.0 + s_prev.abs()) {
                    violations.push(Violation {
                        kind: ViolationKind::NotConvex,
                        at: grid[i - 1],
                        detail: format!("chord slope drops from {s_prev:.6e} to {slope:.6e}"),
                    });
                    break;
                }
            }
            prev_slope = Some((slope, grid[i]));
        }

        if self.b_phi.is_finite() && self.b_phi > 0.0 {
            let at_b = self.eval(self.b_phi);
            let near_b = self.eval(self.b_phi * (1.0 - 1e-9));
            if at_b.is_finite() {
                if (at_b - near_b).abs() > 1e-6 * (1.0 + at_b.abs()) {
                    violations.push(Violation {
                        kind: ViolationKind::NotLeftContinuous,
                        at: self.b_phi,
                        detail: format!("phi(b-) = {near_b:.6e} vs phi(b) = {at_b:.6e}"),
                    });
                }
            } else if near_b.is_finite() {
                violations.push(Violation {
                    kind: ViolationKind::NotLeftContinuous,
                    at: self.b_phi,
                    detail: "phi jumps to infinity exactly at b_phi".into(),
                });
            }
        }

        // beyond a finite b_phi the function is infinite, hence positive
        let somewhere_positive = values.iter().any(|v| *v > 0.0) || self.b_phi.is_finite();
        let somewhere_finite = grid
            .iter()
            .zip(&values)
            .any(|(&t, &v)| t > 0.0 && v.is_finite());
        if !somewhere_positive {
            violations.push(Violation {
                kind: ViolationKind::Degenerate,
                at: 0.0,
                detail: "identically zero on the sampled grid".into(),
            });
        }
        if !somewhere_finite {
            violations.push(Violation {
                kind: ViolationKind::Degenerate,
                at: 0.0,
                detail: "infinite everywhere on the sampled grid".into(),
            });
        }

        ValidityReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    fn check_grid(&self) -> Vec<f64> {
        let hi = if self.b_phi.is_finite() {
            self.b_phi
        } else {
            1e6
        };
        let lo = 1e-6_f64.min(hi / 1e3);
        let mut grid = vec![0.0];
        grid.extend(log_grid(lo, hi, 257));
        if self.b_phi.is_finite() {
            for k in 1..=9 {
                let t = self.b_phi * (1.0 - 10f64.powi(-k));
                if t > 0.0 {
                    grid.push(t);
                }
            }
            grid.push(self.b_phi);
        }
        grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
        grid.dedup();
        grid
    }

    /// Estimates `phi(t)/t` at both ends of the half-line along geometric
    /// samples and reports whether the function is an N-function.
    pub fn n_function_limits(&self) -> NFunctionReport {
        let at_infinity = classify_limit((0..=64).map(|k| {
            let t = 2f64.powi(k);
            (t, self.eval(t) / t)
        }));
        let at_zero = classify_limit((0..=64).map(|k| {
            let t = 2f64.powi(-k);
            (t, self.eval(t) / t)
        }));
        let n_function = at_zero.kind == LimitKind::Zero
            && at_infinity.kind == LimitKind::Infinite
            && self.b_phi.is_infinite();
        NFunctionReport {
            at_zero,
            at_infinity,
            n_function,
        }
    }

    /// Near-N-function checks: `phi(t)/t^q` diverges at infinity and
    /// vanishes at zero, for `0 < q < 1`. The zero-side check is vacuous
    /// when `a_phi > 0`.
    pub fn lemma_nfn_check(&self, q: f64, samples: usize) -> Result<NfnReport, FunctionError> {
        if !(q > 0.0 && q < 1.0) {
            return Err(FunctionError::InvalidParameter(format!(
                "q must lie in (0,1), got {q}"
            )));
        }
        let samples = samples.max(16);
        let max_k = samples.min(1000) as i32;

        let mut inf_ratios = Vec::new();
        for k in 0..=max_k {
            let t = 2f64.powi(k);
            let tq = t.powf(q);
            let f = self.eval(t);
            inf_ratios.push(if f.is_infinite() {
                f64::INFINITY
            } else {
                f / tq
            });
        }
        let tail = 8.min(inf_ratios.len() - 1);
        let eventually_increasing = inf_ratios
            .windows(2)
            .rev()
            .take(tail)
            .all(|w| w[1] > w[0] || w[1].is_infinite());
        let final_inf = *inf_ratios.last().unwrap();
        let grows_at_infinity = eventually_increasing && final_inf >= 1e6;

        let (vanishes_at_zero, zero_final_ratio, zero_vacuous) = if self.a_phi > 0.0 {
            (None, None, true)
        } else {
            let mut zero_ratios = Vec::new();
            for k in 0..=max_k {
                let t = 2f64.powi(-k);
                zero_ratios.push(self.eval(t) / t.powf(q));
            }
            let final_zero = *zero_ratios.last().unwrap();
            let decreasing_tail = zero_ratios
                .windows(2)
                .rev()
                .take(tail)
                .all(|w| w[1] <= w[0]);
            (
                Some(final_zero <= 1e-6 && decreasing_tail),
                Some(final_zero),
                false,
            )
        };

        let passed = grows_at_infinity && vanishes_at_zero.unwrap_or(true);
        Ok(NfnReport {
            q,
            grows_at_infinity,
            infinity_final_ratio: final_inf,
            vanishes_at_zero,
            zero_final_ratio,
            zero_vacuous,
            passed,
        })
    }
}

fn classify_limit<I: Iterator<Item = (f64, f64)>>(samples: I) -> LimitEstimate {
    let ratios: Vec<f64> = samples.map(|(_, r)| r).filter(|r| !r.is_nan()).collect();
    if ratios.iter().any(|r| r.is_infinite()) {
        return LimitEstimate {
            kind: LimitKind::Infinite,
            estimate: f64::INFINITY,
        };
    }
    let last = *ratios.last().unwrap_or(&0.0);
    let first = ratios[0];
    let nondecreasing = ratios
        .windows(2)
        .all(|w| w[1] >= w[0] - 1e-12 * (1.0 + w[0].abs()));
    let nonincreasing_tail = ratios
        .windows(2)
        .rev()
        .take(8)
        .all(|w| w[1] <= w[0] + 1e-12 * (1.0 + w[0].abs()));
    if last >= 1e8 || (nondecreasing && last >= 10.0 * first.max(1e-300)) {
        LimitEstimate {
            kind: LimitKind::Infinite,
            estimate: last,
        }
    } else if last <= 1e-8 && nonincreasing_tail {
        LimitEstimate {
            kind: LimitKind::Zero,
            estimate: last,
        }
    } else {
        LimitEstimate {
            kind: LimitKind::Finite,
            estimate: last,
        }
    }
}

/// Trend classification of a one-sided limit of `phi(t)/t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitKind {
    Zero,
    Finite,
    Infinite,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LimitEstimate {
    pub kind: LimitKind,
    /// Last sampled ratio (infinite when the samples overflowed).
    pub estimate: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NFunctionReport {
    pub at_zero: LimitEstimate,
    pub at_infinity: LimitEstimate,
    pub n_function: bool,
}

/// Outcome of the almost-N-function divergence checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NfnReport {
    pub q: f64,
    pub grows_at_infinity: bool,
    pub infinity_final_ratio: f64,
    /// None when the zero-side claim is vacuous (`a_phi > 0`).
    pub vanishes_at_zero: Option<bool>,
    pub zero_final_ratio: Option<f64>,
    pub zero_vacuous: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    NonzeroAtZero,
    NotMonotone,
    NotConvex,
    NotLeftContinuous,
    Degenerate,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub at: f64,
    pub detail: String,
}

/// Verdict of the numeric axiom checks, with the first violating points.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidityReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}
