//! Finite weighted-block tracial algebras: a direct sum of real matrix
//! blocks, each carrying a positive trace weight.
//!
//! The trace is `tau(x) = sum_b weight_b * Tr(x_b)`, every element is
//! trivially tau-measurable, and the functional calculus runs through a
//! cyclic Jacobi eigensolver on symmetric blocks. Entries are real: all
//! inequalities exercised here are invariant under the real/complex
//! distinction.

use crate::config::{CARRIER_TOL, EIG_CLAMP, SYM_EIG_REL_CLAMP};
use crate::function::OrliczFunction;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum AlgebraError {
    BadBlocks(String),
    ShapeMismatch(String),
    AlgebraMismatch,
    NotSymmetric { max_asymmetry: f64 },
    NotPositive { min_eigenvalue: f64 },
    BeyondDomain { eigenvalue: f64, b_phi: f64 },
    BadAtoms(String),
    InsufficientDimension { dim: usize, wanted: usize },
    NotProjection(String),
    SpectrumBelow { lambda: f64 },
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::BadBlocks(msg) => write!(f, "invalid block layout: {msg}"),
            AlgebraError::ShapeMismatch(msg) => write!(f, "matrix shape mismatch: {msg}"),
            AlgebraError::AlgebraMismatch => write!(f, "elements live on different algebras"),
            AlgebraError::NotSymmetric { max_asymmetry } => {
                write!(
                    f,
                    "matrix is not symmetric (max asymmetry {max_asymmetry:.3e})"
                )
            }
            AlgebraError::NotPositive { min_eigenvalue } => {
                write!(
                    f,
                    "element is not positive (eigenvalue {min_eigenvalue:.3e})"
                )
            }
            AlgebraError::BeyondDomain { eigenvalue, b_phi } => {
                write!(f, "eigenvalue {eigenvalue:.6e} leaves the finiteness domain (b_phi = {b_phi:.6e})")
            }
            AlgebraError::BadAtoms(msg) => write!(f, "invalid atom layout: {msg}"),
            AlgebraError::InsufficientDimension { dim, wanted } => {
                write!(
                    f,
                    "block dimension {dim} cannot host a chain of length {wanted}"
                )
            }
            AlgebraError::NotProjection(msg) => write!(f, "not a rank-1 projection: {msg}"),
            AlgebraError::SpectrumBelow { lambda } => {
                write!(f, "spectral projection at level {lambda} is empty")
            }
        }
    }
}

impl std::error::Error for AlgebraError {}

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    n: usize,
    a: Vec<f64>,
}

impl Mat {
    pub fn zeros(n: usize) -> Self {
        Mat {
            n,
            a: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, AlgebraError> {
        let n = rows.len();
        let mut m = Mat::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "row {i} has {} entries in a {n}x{n} matrix",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn diag(entries: &[f64]) -> Self {
        let mut m = Mat::zeros(entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut m = Mat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    m.a[i * n + j] += aik * other.get(k, j);
                }
            }
        }
        m
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.n, other.n);
        let mut m = self.clone();
        for (x, y) in m.a.iter_mut().zip(&other.a) {
            *x += y;
        }
        m
    }

    pub fn scale(&self, c: f64) -> Mat {
        let mut m = self.clone();
        for x in m.a.iter_mut() {
            *x *= c;
        }
        m
    }

    pub fn frobenius(&self) -> f64 {
        self.a.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    fn off_diagonal_frobenius(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    let v = self.get(i, j);
                    s += v * v;
                }
            }
        }
        s.sqrt()
    }
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues sorted descending and the orthogonal matrix whose
/// columns are the matching eigenvectors, so `A = Q diag(L) Q^T`. Sweeps
/// stop once the off-diagonal Frobenius mass drops below `1e-13 * ||A||_F`
/// (well under the contracted `1e-12 * ||A||`).
pub fn jacobi_eigen(sym: &Mat) -> Result<(Vec<f64>, Mat), AlgebraError> {
    let scale = sym.frobenius().max(1.0);
    let asym = sym.max_asymmetry();
    if asym > 1e-12 * scale {
        return Err(AlgebraError::NotSymmetric {
            max_asymmetry: asym,
        });
    }
    let n = sym.dim();
    let mut a = sym.clone();
    // symmetrize exactly so rotations preserve symmetry
    for i in 0..n {
        for j in (i + 1)..n {
            let m = 0.5 * (a.get(i, j) + a.get(j, i));
            a.set(i, j, m);
            a.set(j, i, m);
        }
    }
    let mut v = Mat::identity(n);
    let fro = a.frobenius();
    let target = 5e-15 * fro;
    for _sweep in 0..100 {
        if a.off_diagonal_frobenius() <= target {
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;
                a.set(p, p, a.get(p, p) - h);
                a.set(q, q, a.get(q, q) + h);
                a.set(p, q, 0.0);
                a.set(q, p, 0.0);
                for i in 0..n {
                    if i != p && i != q {
                        let g = a.get(i, p);
                        let hh = a.get(i, q);
                        let new_p = g - s * (hh + tau * g);
                        let new_q = hh + s * (g - tau * hh);
                        a.set(i, p, new_p);
                        a.set(p, i, new_p);
                        a.set(i, q, new_q);
                        a.set(q, i, new_q);
                    }
                }
                for i in 0..n {
                    let g = v.get(i, p);
                    let hh = v.get(i, q);
                    v.set(i, p, g - s * (hh + tau * g));
                    v.set(i, q, hh + s * (g - tau * hh));
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(j, j).partial_cmp(&a.get(i, i)).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i)).collect();
    let mut basis = Mat::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for i in 0..n {
            basis.set(i, col, v.get(i, src));
        }
    }
    Ok((eigenvalues, basis))
}

/// Block layout of the algebra: dimension and trace weight per summand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockSpec {
    pub dim: usize,
    pub weight: f64,
}

/// Finite direct sum of real matrix blocks with positive trace weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockAlgebra {
    blocks: Vec<BlockSpec>,
}

impl BlockAlgebra {
    pub fn new(blocks: Vec<BlockSpec>) -> Result<Self, AlgebraError> {
        if blocks.is_empty() {
            return Err(AlgebraError::BadBlocks(
                "at least one block required".into(),
            ));
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.dim == 0 {
                return Err(AlgebraError::BadBlocks(format!(
                    "block {i} has dimension 0"
                )));
            }
            if !(b.weight > 0.0 && b.weight.is_finite()) {
                return Err(AlgebraError::BadBlocks(format!(
                    "block {i} has non-positive weight {}",
                    b.weight
                )));
            }
        }
        Ok(BlockAlgebra { blocks })
    }

    /// Commutative algebra of `2^k` atoms of equal weight `2^(-k)`.
    pub fn dyadic_atoms(k: usize) -> Self {
        let count = 1usize << k;
        let weight = 1.0 / count as f64;
        BlockAlgebra {
            blocks: vec![BlockSpec { dim: 1, weight }; count],
        }
    }

    pub fn blocks(&self) -> &[BlockSpec] {
        &self.blocks
    }

    pub fn is_commutative(&self) -> bool {
        self.blocks.iter().all(|b| b.dim == 1)
    }

    /// `tau(identity)`.
    pub fn total_trace(&self) -> f64 {
        self.blocks.iter().map(|b| b.dim as f64 * b.weight).sum()
    }
}

/// An element of the block algebra: one real matrix per block.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    algebra: BlockAlgebra,
    mats: Vec<Mat>,
}

impl AlgebraElement {
    pub fn new(algebra: BlockAlgebra, mats: Vec<Mat>) -> Result<Self, AlgebraError> {
        if mats.len() != algebra.blocks().len() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{} matrices for {} blocks",
                mats.len(),
                algebra.blocks().len()
            )));
        }
        for (i, (m, b)) in mats.iter().zip(algebra.blocks()).enumerate() {
            if m.dim() != b.dim {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "block {i}: matrix is {}x{} but the block has dimension {}",
                    m.dim(),
                    m.dim(),
                    b.dim
                )));
            }
        }
        Ok(AlgebraElement { algebra, mats })
    }

    pub fn zero(algebra: &BlockAlgebra) -> Self {
        let mats = algebra.blocks().iter().map(|b| Mat::zeros(b.dim)).collect();
        AlgebraElement {
            algebra: algebra.clone(),
            mats,
        }
    }

    pub fn identity(algebra: &BlockAlgebra) -> Self {
        let mats = algebra
            .blocks()
            .iter()
            .map(|b| Mat::identity(b.dim))
            .collect();
        AlgebraElement {
            algebra: algebra.clone(),
            mats,
        }
    }

    /// Diagonal element of a commutative algebra (all blocks 1x1).
    pub fn from_atoms(algebra: &BlockAlgebra, values: &[f64]) -> Result<Self, AlgebraError> {
        if !algebra.is_commutative() || values.len() != algebra.blocks().len() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{} atom values for {} one-dimensional blocks",
                values.len(),
                algebra.blocks().len()
            )));
        }
        let mats = values.iter().map(|&v| Mat::diag(&[v])).collect();
        Ok(AlgebraElement {
            algebra: algebra.clone(),
            mats,
        })
    }

    /// Uniform `[-1, 1]` entries from an explicit seed.
    pub fn random(algebra: &BlockAlgebra, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mats = algebra
            .blocks()
            .iter()
            .map(|b| {
                let mut m = Mat::zeros(b.dim);
                for i in 0..b.dim {
                    for j in 0..b.dim {
                        m.set(i, j, rng.gen_range(-1.0..1.0));
                    }
                }
                m
            })
            .collect();
        AlgebraElement {
            algebra: algebra.clone(),
            mats,
        }
    }

    /// Random positive element `a^T a` from an explicit seed.
    pub fn random_positive(algebra: &BlockAlgebra, seed: u64) -> Self {
        let a = Self::random(algebra, seed);
        let at = a.adjoint();
        at.multiply(&a).expect("same algebra")
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    pub fn block(&self, i: usize) -> &Mat {
        &self.mats[i]
    }

    pub fn blocks_mut(&mut self) -> &mut [Mat] {
        &mut self.mats
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        self.algebra == other.algebra
    }

    /// `tau(x) = sum_b weight_b * Tr(x_b)`.
    pub fn trace(&self) -> f64 {
        self.algebra
            .blocks()
            .iter()
            .zip(&self.mats)
            .map(|(b, m)| b.weight * m.trace())
            .sum()
    }

    pub fn adjoint(&self) -> Self {
        AlgebraElement {
            algebra: self.algebra.clone(),
            mats: self.mats.iter().map(Mat::transpose).collect(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, AlgebraError> {
        if !self.same_algebra(other) {
            return Err(AlgebraError::AlgebraMismatch);
        }
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.matmul(b))
            .collect();
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            mats,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if !self.same_algebra(other) {
            return Err(AlgebraError::AlgebraMismatch);
        }
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            mats,
        })
    }

    pub fn scale(&self, c: f64) -> Self {
        AlgebraElement {
            algebra: self.algebra.clone(),
            mats: self.mats.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.scale(-1.0))
    }

    pub fn max_block_frobenius(&self) -> f64 {
        self.mats.iter().map(Mat::frobenius).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.mats
            .iter()
            .map(|m| m.frobenius().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// `|x| = (x^T x)^(1/2)`, with eigenvalues of `x^T x` within
    /// `1e-12 * ||x^T x||` of zero clamped to zero. The clamp is relative
    /// to the gram scale: solver noise there is of order `eps * ||gram||`
    /// and square-roots into spurious singular values otherwise.
    pub fn abs(&self) -> Self {
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let gram = m.transpose().matmul(m);
                let clamp = EIG_CLAMP * gram.frobenius().max(1e-300);
                let (eigs, q) = jacobi_eigen(&gram).expect("gram matrix is symmetric");
                let roots: Vec<f64> = eigs
                    .iter()
                    .map(|&l| {
                        let l = if l.abs() <= clamp { 0.0 } else { l };
                        l.max(0.0).sqrt()
                    })
                    .collect();
                reassemble(&q, &roots)
            })
            .collect();
        AlgebraElement {
            algebra: self.algebra.clone(),
            mats,
        }
    }

    /// Per-block singular values, each tagged with its block weight
    /// (the trace of a rank-1 projection in that block).
    ///
    /// Symmetric blocks are diagonalized directly (their singular values
    /// are the eigenvalue moduli); forming the gram matrix there would
    /// cost absolute accuracy on small singular values that the
    /// step-merge tolerance needs.
    pub fn singular_values(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for (b, m) in self.algebra.blocks().iter().zip(&self.mats) {
            let scale = m.frobenius().max(1e-300);
            if m.max_asymmetry() <= 1e-13 * scale {
                let (eigs, _) = jacobi_eigen(m).expect("symmetric by the gate above");
                for l in eigs {
                    let a = l.abs();
                    out.push((b.weight, if a <= SYM_EIG_REL_CLAMP * scale { 0.0 } else { a }));
                }
                continue;
            }
            let gram = m.transpose().matmul(m);
            let clamp = EIG_CLAMP * gram.frobenius().max(1e-300);
            let (eigs, _) = jacobi_eigen(&gram).expect("gram matrix is symmetric");
            for l in eigs {
                let l = if l.abs() <= clamp { 0.0 } else { l };
                out.push((b.weight, l.max(0.0).sqrt()));
            }
        }
        out
    }

    /// Eigenvalues (descending) and eigenbasis of each block of a
    /// symmetric element.
    pub fn eigen_blocks(&self) -> Result<Vec<(Vec<f64>, Mat)>, AlgebraError> {
        self.mats.iter().map(jacobi_eigen).collect()
    }

    /// Generic spectral calculus on a positive element: applies `f` to the
    /// eigenvalues in the eigenbasis of each block. `f` must return finite
    /// values on the spectrum.
    pub fn map_spectrum<F: Fn(f64) -> f64>(&self, f: F) -> Result<Self, AlgebraError> {
        let mut mats = Vec::with_capacity(self.mats.len());
        for m in &self.mats {
            let scale = m.frobenius().max(1.0);
            let asym = m.max_asymmetry();
            if asym > 1e-10 * scale {
                return Err(AlgebraError::NotSymmetric {
                    max_asymmetry: asym,
                });
            }
            let (eigs, q) = jacobi_eigen(m)?;
            let mut mapped = Vec::with_capacity(eigs.len());
            for &l in &eigs {
                let l = if l < 0.0 && l >= -1e-10 * scale {
                    0.0
                } else {
                    l
                };
                if l < 0.0 {
                    return Err(AlgebraError::NotPositive { min_eigenvalue: l });
                }
                let v = f(l);
                if !v.is_finite() {
                    return Err(AlgebraError::BeyondDomain {
                        eigenvalue: l,
                        b_phi: f64::NAN,
                    });
                }
                mapped.push(v);
            }
            mats.push(reassemble(&q, &mapped));
        }
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            mats,
        })
    }

    /// Spectral functional calculus: applies `phi` to the eigenvalues of a
    /// positive element in its eigenbasis. Errors when the element is not
    /// positive or an eigenvalue leaves `[0, b_phi]`.
    pub fn apply_function(&self, phi: &OrliczFunction) -> Result<Self, AlgebraError> {
        let b_phi = phi.b_phi();
        let mut mats = Vec::with_capacity(self.mats.len());
        for m in &self.mats {
            let scale = m.frobenius().max(1.0);
            let asym = m.max_asymmetry();
            if asym > 1e-10 * scale {
                return Err(AlgebraError::NotSymmetric {
                    max_asymmetry: asym,
                });
            }
            let (eigs, q) = jacobi_eigen(m)?;
            let mut mapped = Vec::with_capacity(eigs.len());
            for &l in &eigs {
                let l = if l < 0.0 && l >= -1e-10 * scale {
                    0.0
                } else {
                    l
                };
                if l < 0.0 {
                    return Err(AlgebraError::NotPositive { min_eigenvalue: l });
                }
                if l > b_phi {
                    return Err(AlgebraError::BeyondDomain {
                        eigenvalue: l,
                        b_phi,
                    });
                }
                let v = phi.eval(l);
                if !v.is_finite() {
                    return Err(AlgebraError::BeyondDomain {
                        eigenvalue: l,
                        b_phi,
                    });
                }
                mapped.push(v);
            }
            mats.push(reassemble(&q, &mapped));
        }
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            mats,
        })
    }
}

/// `Q diag(vals) Q^T`.
fn reassemble(q: &Mat, vals: &[f64]) -> Mat {
    let n = q.dim();
    let mut m = Mat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for (k, &v) in vals.iter().enumerate() {
                s += q.get(i, k) * v * q.get(j, k);
            }
            m.set(i, j, s);
        }
    }
    m
}

/// Blockwise support mask: true where the block carries Frobenius mass
/// above the carrier tolerance.
pub fn central_carrier(x: &AlgebraElement) -> Vec<bool> {
    x.algebra()
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, _)| x.block(i).frobenius() > CARRIER_TOL)
        .collect()
}

/// The central projection matching a carrier mask.
pub fn carrier_projection(algebra: &BlockAlgebra, mask: &[bool]) -> AlgebraElement {
    let mats = algebra
        .blocks()
        .iter()
        .zip(mask)
        .map(|(b, &on)| {
            if on {
                Mat::identity(b.dim)
            } else {
                Mat::zeros(b.dim)
            }
        })
        .collect();
    AlgebraElement {
        algebra: algebra.clone(),
        mats,
    }
}

/// Walsh family of `k` diagonal sign patterns on a commutative algebra of
/// `2^k` equal-weight atoms with unit total weight: pairwise
/// trace-orthogonal self-adjoint unitaries.
pub fn rademacher_family(
    algebra: &BlockAlgebra,
    k: usize,
) -> Result<Vec<AlgebraElement>, AlgebraError> {
    let atoms = algebra.blocks().len();
    if !algebra.is_commutative() {
        return Err(AlgebraError::BadAtoms(
            "algebra must be commutative (all blocks 1x1)".into(),
        ));
    }
    if atoms != (1usize << k) {
        return Err(AlgebraError::BadAtoms(format!(
            "expected 2^{k} = {} atoms, found {atoms}",
            1usize << k
        )));
    }
    let w0 = algebra.blocks()[0].weight;
    for b in algebra.blocks() {
        if (b.weight - w0).abs() > 1e-12 * w0 {
            return Err(AlgebraError::BadAtoms("atom weights must be equal".into()));
        }
    }
    let total = algebra.total_trace();
    if (total - 1.0).abs() > 1e-12 {
        return Err(AlgebraError::BadAtoms(format!(
            "atom weights must sum to 1, got {total}"
        )));
    }
    let mut family = Vec::with_capacity(k);
    for r in 1..=k {
        let values: Vec<f64> = (0..atoms)
            .map(|j| if (j >> (k - r)) & 1 == 0 { 1.0 } else { -1.0 })
            .collect();
        family.push(AlgebraElement::from_atoms(algebra, &values)?);
    }
    Ok(family)
}

/// Locates the single block carrying a rank-1 projection and returns
/// `(block index, unit vector)`.
fn rank_one_projection_data(e1: &AlgebraElement) -> Result<(usize, Vec<f64>), AlgebraError> {
    let mut host: Option<(usize, Vec<f64>)> = None;
    for (i, m) in e1.mats.iter().enumerate() {
        if m.frobenius() <= CARRIER_TOL {
            continue;
        }
        if host.is_some() {
            return Err(AlgebraError::NotProjection(
                "supported on more than one block".into(),
            ));
        }
        // check e^2 = e = e^T
        let sq = m.matmul(m);
        let mut err = 0.0_f64;
        for r in 0..m.dim() {
            for c in 0..m.dim() {
                err = err.max((sq.get(r, c) - m.get(r, c)).abs());
                err = err.max((m.get(r, c) - m.get(c, r)).abs());
            }
        }
        if err > 1e-10 {
            return Err(AlgebraError::NotProjection(format!(
                "idempotence defect {err:.3e}"
            )));
        }
        let (eigs, q) = jacobi_eigen(m)?;
        if (eigs[0] - 1.0).abs() > 1e-10 || (eigs.len() > 1 && eigs[1].abs() > 1e-10) {
            return Err(AlgebraError::NotProjection(format!(
                "rank is not 1: spectrum {eigs:?}"
            )));
        }
        let u: Vec<f64> = (0..m.dim()).map(|r| q.get(r, 0)).collect();
        host = Some((i, u));
    }
    host.ok_or_else(|| AlgebraError::NotProjection("zero element".into()))
}

/// Matrix-unit chain `v_j = u u_j^T` transporting orthogonal rank-1
/// projections `e_j = u_j u_j^T` onto `e_1 = u u^T`, so that
/// `v_j v_j^T = e_1`, `v_j^T v_j = e_j` and `tau(v_m^T v_n) =
/// delta_mn tau(e_1)`. The first chain member is `e_1` itself.
pub fn partial_isometry_chain(
    e1: &AlgebraElement,
    n: usize,
) -> Result<Vec<AlgebraElement>, AlgebraError> {
    let (host, u) = rank_one_projection_data(e1)?;
    let dim = e1.algebra().blocks()[host].dim;
    if dim < n {
        return Err(AlgebraError::InsufficientDimension { dim, wanted: n });
    }
    // orthonormal completion of u: eigenbasis of e1's block, whose first
    // column is u (eigenvalue 1) and the rest span its complement
    let (_, q) = jacobi_eigen(&e1.mats[host])?;
    let mut chain = Vec::with_capacity(n);
    for j in 0..n {
        let mut m = Mat::zeros(dim);
        for (r, &ur) in u.iter().enumerate() {
            for c in 0..dim {
                m.set(r, c, ur * q.get(c, j));
            }
        }
        let mut mats: Vec<Mat> = e1
            .algebra()
            .blocks()
            .iter()
            .map(|b| Mat::zeros(b.dim))
            .collect();
        mats[host] = m;
        chain.push(AlgebraElement {
            algebra: e1.algebra().clone(),
            mats,
        });
    }
    Ok(chain)
}
