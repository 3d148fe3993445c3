use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{ExactMatrix, LinalgError};

/// Reduced row echelon form of a matrix over `Q`.
#[derive(Clone, Debug)]
pub struct RationalReduction {
    pub rref: Vec<Vec<BigRational>>,
    /// Pivot column of each nonzero row, increasing.
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl RationalReduction {
    pub fn new(mut a: Vec<Vec<BigRational>>, cols: usize) -> RationalReduction {
        let rows = a.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for x in a[r].iter_mut().skip(c) {
                *x = &*x * &inv;
            }
            for i in 0..rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..cols {
                        if !a[r][j].is_zero() {
                            let d = &f * &a[r][j];
                            a[i][j] -= d;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        RationalReduction { rref: a, pivots, cols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the right kernel, each vector scaled to a primitive integer vector.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let mut out = Vec::new();
        let mut is_pivot = alloc::vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = alloc::vec![BigRational::zero(); self.cols];
            v[f] = BigRational::one();
            for (row, &p) in self.pivots.iter().enumerate() {
                v[p] = -self.rref[row][f].clone();
            }
            out.push(primitive(&v));
        }
        out
    }
}

/// Clears denominators and divides out the content.
pub(crate) fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

impl ExactMatrix {
    /// Entries as rationals; fails for polynomial rings.
    pub fn to_rational_rows(&self) -> Result<Vec<Vec<BigRational>>, LinalgError> {
        (0..self.rows())
            .map(|i| self.row(i).iter().map(|e| e.to_rational().ok_or(LinalgError::UnsupportedRing)).collect())
            .collect()
    }

    pub fn rational_reduction(&self) -> Result<RationalReduction, LinalgError> {
        Ok(RationalReduction::new(self.to_rational_rows()?, self.cols()))
    }

    /// Rank over the fraction field `Q`.
    pub fn rank(&self) -> Result<usize, LinalgError> {
        Ok(self.rational_reduction()?.rank())
    }

    /// Basis of the kernel over `Q`, as primitive integer vectors.
    pub fn rational_kernel_basis(&self) -> Result<Vec<Vec<BigInt>>, LinalgError> {
        Ok(self.rational_reduction()?.kernel_basis())
    }

    /// Whether every column of `other` lies in the `Q`-span of the columns of `self`.
    pub fn column_span_contains(&self, other: &ExactMatrix) -> Result<bool, LinalgError> {
        if self.rows() != other.rows() {
            return Err(LinalgError::DimensionMismatch { left: self.shape(), right: other.shape() });
        }
        let a = self.to_rational_rows()?;
        let b = other.to_rational_rows()?;
        let joined: Vec<Vec<BigRational>> = a
            .into_iter()
            .zip(b)
            .map(|(mut x, y)| {
                x.extend(y);
                x
            })
            .collect();
        let r0 = self.rank()?;
        Ok(RationalReduction::new(joined, self.cols() + other.cols()).rank() == r0)
    }

    /// Inverse computed over `Q` by Gauss-Jordan elimination and mapped
    /// back into the matrix's ring. Fails with [`LinalgError::Singular`] if
    /// the matrix is singular over `Q`, and with a ring error if the inverse
    /// has entries outside the ring.
    pub fn inverse(&self) -> Result<ExactMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows(), cols: self.cols() });
        }
        let n = self.rows();
        let mut aug = self.to_rational_rows()?;
        for (i, row) in aug.iter_mut().enumerate() {
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
        }
        let red = RationalReduction::new(aug, 2 * n);
        // invertible iff the left half reduces to the identity
        if red.pivots.len() < n || red.pivots[..n].iter().enumerate().any(|(i, &p)| i != p) {
            return Err(LinalgError::Singular);
        }
        let ring = self.ring();
        let mut entries = Vec::with_capacity(n * n);
        for row in &red.rref {
            for q in &row[n..] {
                entries.push(ring.from_rational(q)?);
            }
        }
        let out = ExactMatrix::new(ring, n, n, entries)?;
        out.with_labels(self.codomain_labels().map(|l| l.to_vec()), self.domain_labels().map(|l| l.to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn kernel_of_all_ones_row() {
        let z = Ring::integers();
        let m = ExactMatrix::from_ints(&z, &[[1, 1]]);
        let k = m.rational_kernel_basis().unwrap();
        assert_eq!(k, vec![vec![BigInt::from(-1), BigInt::from(1)]]);
        assert_eq!(m.rank().unwrap(), 1);
    }

    #[test]
    fn kernel_vectors_are_primitive_and_annihilated() {
        let z = Ring::integers();
        let m = ExactMatrix::from_ints(&z, &[[2, 4, 6, 1], [1, 2, 3, 0]]);
        let k = m.rational_kernel_basis().unwrap();
        assert_eq!(k.len(), 4 - m.rank().unwrap());
        for v in &k {
            assert!(v.iter().any(|x| !x.is_zero()));
            let col = ExactMatrix::from_fn(&z, v.len(), 1, |i, _| z.from_bigint(v[i].clone()));
            assert!(m.matmul(&col).unwrap().is_zero());
        }
    }

    #[test]
    fn inverse_respects_ring() {
        let z = Ring::integers();
        let a = ExactMatrix::from_ints(&z, &[[2, 1], [7, 4]]);
        assert_eq!(a.inverse().unwrap(), ExactMatrix::from_ints(&z, &[[4, -1], [-7, 2]]));
        let b = ExactMatrix::from_ints(&z, &[[3, 0], [0, 1]]);
        assert!(matches!(b.inverse(), Err(LinalgError::Ring(_))));
        let b3 = b.change_ring(&Ring::parse_spec("Z[1/3]").unwrap()).unwrap();
        assert_eq!(b3.inverse().unwrap().get(0, 0).to_string(), "1/3");
        assert_eq!(ExactMatrix::from_ints(&z, &[[1, 2], [2, 4]]).inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn span_containment() {
        let z = Ring::integers();
        let a = ExactMatrix::from_ints(&z, &[[1], [1], [0]]);
        let b = ExactMatrix::from_ints(&z, &[[3], [3], [0]]);
        let c = ExactMatrix::from_ints(&z, &[[1], [0], [0]]);
        assert!(a.column_span_contains(&b).unwrap());
        assert!(!a.column_span_contains(&c).unwrap());
    }
}
