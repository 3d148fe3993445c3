//! Schur-type expressions as functors on free modules: quotient
//! presentations, the permutation action on tensor powers, induced maps and
//! descent of endomorphisms of `F^{(x)d}` to maps between quotients.

mod descent;
mod multilinear;
mod perm;
mod presentation;

use alloc::vec::Vec;
use core::fmt;

pub use descent::{descend, descend_lift, descend_lift_within, Descent, DescentStatus, DescentWitness};
pub use multilinear::{canonical_key, multilinear_descent, relation_generators, MultilinearFailure};
pub use perm::{Permutation, PermutationSum};
pub use presentation::{decode, encode, tuple_count, QuotientPresentation};

use crate::expr::{enumerate_basis, ExprError, SchurExpr};
use crate::linalg::{ExactMatrix, LinalgError};
use crate::ring::{Ring, RingElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorError {
    /// The operation is defined per summand.
    DirectSum,
    ZeroRank,
    NotSquare {
        rows: usize,
        cols: usize,
    },
    DegreeMismatch {
        source: usize,
        target: usize,
        lift: usize,
    },
    Expr(ExprError),
    Linalg(LinalgError),
}

impl fmt::Display for FunctorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorError::DirectSum => write!(f, "expected a single Schur type, found a direct sum"),
            FunctorError::ZeroRank => write!(f, "rank must be positive"),
            FunctorError::NotSquare { rows, cols } => write!(f, "expected a square matrix, found {}x{}", rows, cols),
            FunctorError::DegreeMismatch { source, target, lift } => write!(
                f,
                "degree mismatch: source has degree {}, target {}, lift acts on degree {}",
                source, target, lift
            ),
            FunctorError::Expr(e) => write!(f, "{}", e),
            FunctorError::Linalg(e) => write!(f, "{}", e),
        }
    }
}

impl From<LinalgError> for FunctorError {
    fn from(e: LinalgError) -> Self {
        FunctorError::Linalg(e)
    }
}

/// The `n^d x n^d` 0/1 matrix of `sigma` acting on `F^{(x)d}`.
pub fn permutation_endomorphism(sigma: &Permutation, n: usize, ring: &Ring) -> ExactMatrix {
    let d = sigma.degree();
    let total = tuple_count(n, d);
    let mut m = ExactMatrix::zeros(ring, total, total);
    for t in 0..total {
        let moved = sigma.permute(&decode(t, n, d));
        m.set(encode(&moved, n), t, ring.one());
    }
    m
}

/// Matrix of a group-ring element acting on `F^{(x)d}`.
pub fn permutation_sum_matrix(sum: &PermutationSum, n: usize, ring: &Ring) -> ExactMatrix {
    let d = sum.degree();
    let total = tuple_count(n, d);
    let mut m = ExactMatrix::zeros(ring, total, total);
    for t in 0..total {
        let digits = decode(t, n, d);
        for (p, c) in sum.terms() {
            let row = encode(&p.permute(&digits), n);
            let v = m.get(row, t) + &ring.from_int(*c);
            m.set(row, t, v);
        }
    }
    m
}

/// The `d`-fold Kronecker power of `f`.
pub fn tensor_power_map(f: &ExactMatrix, d: usize) -> Result<ExactMatrix, FunctorError> {
    if !f.is_square() {
        return Err(FunctorError::NotSquare { rows: f.rows(), cols: f.cols() });
    }
    let mut acc = ExactMatrix::identity(f.ring(), 1);
    for _ in 0..d {
        acc = acc.kronecker(f)?;
    }
    Ok(acc)
}

fn check_square(f: &ExactMatrix) -> Result<usize, FunctorError> {
    if !f.is_square() {
        return Err(FunctorError::NotSquare { rows: f.rows(), cols: f.cols() });
    }
    if f.rows() == 0 {
        return Err(FunctorError::ZeroRank);
    }
    Ok(f.rows())
}

/// The induced map `S(f) = Q * f^{(x)d} * Sec`, labelled on both sides.
/// Direct sums give block-diagonal matrices.
pub fn induced_map(expr: &SchurExpr, f: &ExactMatrix) -> Result<ExactMatrix, FunctorError> {
    let n = check_square(f)?;
    let mut blocks = Vec::new();
    for s in expr.summands() {
        let p = QuotientPresentation::new(s, n)?;
        blocks.push(induced_with(&p, f));
    }
    let m = if blocks.len() == 1 { blocks.pop().unwrap() } else { ExactMatrix::block_diagonal(f.ring(), &blocks)? };
    let labels = enumerate_basis(expr, n as u32);
    Ok(m.with_labels(Some(labels.clone()), Some(labels))?)
}

/// `Q * f^{(x)d} * Sec` for one presentation, without forming the Kronecker power.
///
/// Column `l` is the image of the representative `e_{j_1} (x) ... (x) e_{j_d}`,
/// i.e. the sum over all tuples `i` of `prod_p f[i_p, j_p] * Q(e_i)`.
pub fn induced_with(p: &QuotientPresentation, f: &ExactMatrix) -> ExactMatrix {
    let ring = f.ring();
    let m = p.rank();
    let mut out = ExactMatrix::zeros(ring, m, m);
    for l in 0..m {
        let rep = p.representative(l);
        let mut column = alloc::vec![ring.zero(); m];
        accumulate(p, f, rep, 0, 0, ring.one(), &mut column);
        for (k, v) in column.into_iter().enumerate() {
            out.set(k, l, v);
        }
    }
    out
}

fn accumulate(
    p: &QuotientPresentation,
    f: &ExactMatrix,
    rep: &[u32],
    pos: usize,
    index: usize,
    coeff: RingElement,
    column: &mut [RingElement],
) {
    let n = p.n();
    if pos == rep.len() {
        if let Some((s, l)) = p.project(index) {
            column[l] = if s > 0 { &column[l] + &coeff } else { &column[l] - &coeff };
        }
        return;
    }
    let j = rep[pos] as usize;
    for i in 0..n {
        let a = f.get(i, j);
        if a.is_zero() {
            continue;
        }
        accumulate(p, f, rep, pos + 1, index * n + i, &coeff * a, column);
    }
}

/// `Q * f^{(x)d} * Sec` with all three matrices formed explicitly.
pub fn induced_map_by_definition(expr: &SchurExpr, f: &ExactMatrix) -> Result<ExactMatrix, FunctorError> {
    let n = check_square(f)?;
    let ring = f.ring();
    let mut blocks = Vec::new();
    for s in expr.summands() {
        let p = QuotientPresentation::new(s, n)?;
        let big = tensor_power_map(f, p.degree())?;
        blocks.push(p.projection_matrix(ring).matmul(&big)?.matmul(&p.section_matrix(ring))?.without_labels());
    }
    Ok(if blocks.len() == 1 { blocks.pop().unwrap() } else { ExactMatrix::block_diagonal(ring, &blocks)? })
}

/// The induced map built bottom-up: each `Sym`/`Wedge` node applies its own
/// one-level functor to the matrix of its child, tensor nodes take
/// Kronecker products.
pub fn induced_map_recursive(expr: &SchurExpr, f: &ExactMatrix) -> Result<ExactMatrix, FunctorError> {
    check_square(f)?;
    match expr {
        SchurExpr::Base => Ok(f.clone().without_labels()),
        SchurExpr::Sym(r, c) | SchurExpr::Wedge(r, c) => {
            let g = induced_map_recursive(c, f)?;
            if g.rows() == 0 {
                return Ok(g);
            }
            let one_level = match expr {
                SchurExpr::Sym(..) => SchurExpr::sym(*r, SchurExpr::Base),
                _ => SchurExpr::wedge(*r, SchurExpr::Base),
            };
            let p = QuotientPresentation::new(&one_level, g.rows())?;
            Ok(induced_with(&p, &g))
        }
        SchurExpr::Tensor(fs) => {
            let mut acc = ExactMatrix::identity(f.ring(), 1);
            for x in fs {
                acc = acc.kronecker(&induced_map_recursive(x, f)?)?;
            }
            Ok(acc)
        }
        SchurExpr::DirectSum(ss) => {
            let blocks = ss.iter().map(|s| induced_map_recursive(s, f)).collect::<Result<Vec<_>, _>>()?;
            Ok(ExactMatrix::block_diagonal(f.ring(), &blocks)?)
        }
    }
}
