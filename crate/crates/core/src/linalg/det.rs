use alloc::vec::Vec;

use super::{ExactMatrix, LinalgError};
use crate::ring::RingElement;

impl ExactMatrix {
    /// Determinant by fraction-free (Bareiss) elimination with row swaps.
    ///
    /// Every intermediate division is exact in any integral domain, so this
    /// works unchanged for polynomial rings. The empty matrix has determinant 1.
    pub fn determinant(&self) -> Result<RingElement, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows(), cols: self.cols() });
        }
        let n = self.rows();
        let ring = self.ring();
        if n == 0 {
            return Ok(ring.one());
        }
        let mut a: Vec<Vec<RingElement>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = ring.one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(ring.zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.exact_div(&prev)?;
                }
                a[i][k] = ring.zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Ring, RingSpec};

    #[test]
    fn small_integer_determinants() {
        let z = Ring::integers();
        assert_eq!(ExactMatrix::from_ints(&z, &[[2, 1], [7, 4]]).determinant().unwrap(), z.one());
        assert_eq!(ExactMatrix::from_ints(&z, &[[0, 1], [1, 0]]).determinant().unwrap(), z.from_int(-1));
        assert_eq!(ExactMatrix::from_ints(&z, &[[1, 2], [2, 4]]).determinant().unwrap(), z.zero());
        let a = ExactMatrix::from_ints(&z, &[[0, 2, 1], [3, 0, 5], [1, 1, 0]]);
        // 0*(0-5) - 2*(0-5) + 1*(3-0) = 13
        assert_eq!(a.determinant().unwrap(), z.from_int(13));
        assert_eq!(ExactMatrix::zeros(&z, 0, 0).determinant().unwrap(), z.one());
        assert!(ExactMatrix::zeros(&z, 2, 3).determinant().is_err());
    }

    #[test]
    fn generic_two_by_two() {
        let r = Ring::new(RingSpec::generic_matrix(2));
        let m = ExactMatrix::from_fn(&r, 2, 2, |i, j| r.var(&crate::ring::generic_name(2, i + 1, j + 1)).unwrap());
        assert_eq!(m.determinant().unwrap(), r.parse("x11*x22 - x12*x21").unwrap());
    }

    #[test]
    fn needs_pivoting_over_polynomials() {
        let r = Ring::new(RingSpec::polynomials(&["a", "b"]).unwrap());
        let p = |s: &str| r.parse(s).unwrap();
        let m = ExactMatrix::from_fn(&r, 3, 3, |i, j| p([["0", "a", "1"], ["b", "0", "0"], ["1", "1", "a"]][i][j]));
        // expand along the second row: -b * (a*a - 1)
        assert_eq!(m.determinant().unwrap(), p("b - a^2*b"));
    }
}
