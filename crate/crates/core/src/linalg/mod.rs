//! Dense exact matrices over a [`Ring`].
//!
//! Determinants use fraction-free Bareiss elimination for every ring;
//! kernels, ranks and inverses go through the rationals for rings that
//! embed there; elementary divisors are computed over the integers.

mod det;
mod rational;
mod smith;

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::expr::BasisLabel;
use crate::ring::{Ring, RingElement, RingError};

pub use rational::RationalReduction;
pub use smith::smith_divisors;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinalgError {
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    RingMismatch,
    NotSquare {
        rows: usize,
        cols: usize,
    },
    LabelLength {
        expected: usize,
        found: usize,
    },
    /// The operation needs a ring that embeds in the rationals.
    UnsupportedRing,
    /// The operation needs integer entries.
    NotIntegral,
    Singular,
    Ring(RingError),
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {}x{} vs {}x{}", left.0, left.1, right.0, right.1)
            }
            LinalgError::RingMismatch => write!(f, "matrices live over different rings"),
            LinalgError::NotSquare { rows, cols } => write!(f, "matrix is not square ({}x{})", rows, cols),
            LinalgError::LabelLength { expected, found } => {
                write!(f, "expected {} basis labels, found {}", expected, found)
            }
            LinalgError::UnsupportedRing => write!(f, "operation needs a ring embedded in Q"),
            LinalgError::NotIntegral => write!(f, "operation needs integer entries"),
            LinalgError::Singular => write!(f, "matrix is not invertible"),
            LinalgError::Ring(e) => write!(f, "{}", e),
        }
    }
}

impl From<RingError> for LinalgError {
    fn from(e: RingError) -> Self {
        LinalgError::Ring(e)
    }
}

/// Row-major matrix with optional basis labels on its domain (columns) and
/// codomain (rows).
///
/// Equality compares ring, shape and entries; labels are ignored.
#[derive(Clone, Debug)]
pub struct ExactMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<RingElement>,
    domain_labels: Option<Vec<BasisLabel>>,
    codomain_labels: Option<Vec<BasisLabel>>,
}

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}
impl Eq for ExactMatrix {}

impl ExactMatrix {
    pub fn new(ring: &Ring, rows: usize, cols: usize, entries: Vec<RingElement>) -> Result<ExactMatrix, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch { left: (rows, cols), right: (entries.len(), 1) });
        }
        if entries.iter().any(|e| e.ring() != ring) {
            return Err(LinalgError::RingMismatch);
        }
        Ok(ExactMatrix { ring: ring.clone(), rows, cols, entries, domain_labels: None, codomain_labels: None })
    }

    pub fn from_fn(
        ring: &Ring,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> RingElement,
    ) -> ExactMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert!(e.ring() == ring, "entry ({}, {}) lives in another ring", i, j);
                entries.push(e);
            }
        }
        ExactMatrix { ring: ring.clone(), rows, cols, entries, domain_labels: None, codomain_labels: None }
    }

    pub fn from_ints<R: AsRef<[i64]>>(ring: &Ring, rows: &[R]) -> ExactMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.as_ref().len());
        assert!(rows.iter().all(|x| x.as_ref().len() == c), "ragged rows");
        ExactMatrix::from_fn(ring, r, c, |i, j| ring.from_int(rows[i].as_ref()[j]))
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> ExactMatrix {
        let z = ring.zero();
        ExactMatrix::from_fn(ring, rows, cols, |_, _| z.clone())
    }

    pub fn identity(ring: &Ring, n: usize) -> ExactMatrix {
        ExactMatrix::scalar(ring, n, &ring.one())
    }

    pub fn scalar(ring: &Ring, n: usize, c: &RingElement) -> ExactMatrix {
        let z = ring.zero();
        ExactMatrix::from_fn(ring, n, n, |i, j| if i == j { c.clone() } else { z.clone() })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: RingElement) {
        assert!(value.ring() == &self.ring, "entry lives in another ring");
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[RingElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<RingElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn domain_labels(&self) -> Option<&[BasisLabel]> {
        self.domain_labels.as_deref()
    }

    pub fn codomain_labels(&self) -> Option<&[BasisLabel]> {
        self.codomain_labels.as_deref()
    }

    pub fn with_labels(
        mut self,
        domain: Option<Vec<BasisLabel>>,
        codomain: Option<Vec<BasisLabel>>,
    ) -> Result<ExactMatrix, LinalgError> {
        if let Some(d) = &domain {
            if d.len() != self.cols {
                return Err(LinalgError::LabelLength { expected: self.cols, found: d.len() });
            }
        }
        if let Some(c) = &codomain {
            if c.len() != self.rows {
                return Err(LinalgError::LabelLength { expected: self.rows, found: c.len() });
            }
        }
        self.domain_labels = domain;
        self.codomain_labels = codomain;
        Ok(self)
    }

    pub fn without_labels(mut self) -> ExactMatrix {
        self.domain_labels = None;
        self.codomain_labels = None;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Product `self * other`; codomain labels come from `self`, domain labels from `other`.
    pub fn matmul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.ring != other.ring {
            return Err(LinalgError::RingMismatch);
        }
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { left: self.shape(), right: other.shape() });
        }
        let zero = self.ring.zero();
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            let row = self.row(i);
            for j in 0..other.cols {
                let mut acc = zero.clone();
                for (k, a) in row.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(ExactMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: other.cols,
            entries,
            domain_labels: other.domain_labels.clone(),
            codomain_labels: self.codomain_labels.clone(),
        })
    }

    fn zip_with(
        &self,
        other: &ExactMatrix,
        f: impl Fn(&RingElement, &RingElement) -> RingElement,
    ) -> Result<ExactMatrix, LinalgError> {
        if self.ring != other.ring {
            return Err(LinalgError::RingMismatch);
        }
        if self.shape() != other.shape() {
            return Err(LinalgError::DimensionMismatch { left: self.shape(), right: other.shape() });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(ExactMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
            domain_labels: self.domain_labels.clone(),
            codomain_labels: self.codomain_labels.clone(),
        })
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &RingElement) -> ExactMatrix {
        let mut out = self.clone();
        out.entries = self.entries.iter().map(|e| c * e).collect();
        out
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product, indexed `(i1, i2) -> i1 * rows(b) + i2`.
    pub fn kronecker(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.ring != other.ring {
            return Err(LinalgError::RingMismatch);
        }
        let (r2, c2) = other.shape();
        Ok(ExactMatrix::from_fn(&self.ring, self.rows * r2, self.cols * c2, |i, j| {
            self.get(i / r2, j / c2) * other.get(i % r2, j % c2)
        }))
    }

    /// Block-diagonal matrix from square or rectangular blocks.
    pub fn block_diagonal(ring: &Ring, blocks: &[ExactMatrix]) -> Result<ExactMatrix, LinalgError> {
        if blocks.iter().any(|b| b.ring() != ring) {
            return Err(LinalgError::RingMismatch);
        }
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = ExactMatrix::zeros(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.entries[(r0 + i) * cols + c0 + j] = b.get(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    /// Assembles a matrix from a grid of blocks (rows of blocks must agree in height, columns in width).
    pub fn from_blocks(ring: &Ring, grid: &[Vec<ExactMatrix>]) -> Result<ExactMatrix, LinalgError> {
        let heights: Vec<usize> = grid.iter().map(|row| row.first().map_or(0, |b| b.rows)).collect();
        let widths: Vec<usize> = grid.first().map_or(Vec::new(), |row| row.iter().map(|b| b.cols).collect());
        for (bi, row) in grid.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(LinalgError::DimensionMismatch {
                    left: (grid.len(), widths.len()),
                    right: (bi, row.len()),
                });
            }
            for (bj, b) in row.iter().enumerate() {
                if b.ring() != ring {
                    return Err(LinalgError::RingMismatch);
                }
                if b.shape() != (heights[bi], widths[bj]) {
                    return Err(LinalgError::DimensionMismatch { left: (heights[bi], widths[bj]), right: b.shape() });
                }
            }
        }
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut out = ExactMatrix::zeros(ring, rows, cols);
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out.entries[(r0 + i) * cols + c0 + j] = b.get(i, j).clone();
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    /// Re-embeds every entry in another ring that embeds in the rationals.
    pub fn change_ring(&self, ring: &Ring) -> Result<ExactMatrix, LinalgError> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let q = e.to_rational().ok_or(LinalgError::UnsupportedRing)?;
            entries.push(ring.from_rational(&q)?);
        }
        Ok(ExactMatrix {
            ring: ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
            domain_labels: self.domain_labels.clone(),
            codomain_labels: self.codomain_labels.clone(),
        })
    }

    /// Entries as integers, when they all are.
    pub fn to_integer_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|e| e.to_integer()).collect()).collect()
    }

    /// Returns `c` when the matrix equals `c * I` exactly; `None` for
    /// non-square or empty matrices and for anything else.
    pub fn scalar_multiple_of_identity(&self) -> Option<RingElement> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                let ok = if i == j { *e == c } else { e.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Elementary divisors of an integer matrix.
    pub fn smith_elementary_divisors(&self) -> Result<Vec<BigInt>, LinalgError> {
        let rows = self.to_integer_rows().ok_or(LinalgError::NotIntegral)?;
        Ok(smith_divisors(rows, self.cols))
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", e)?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
