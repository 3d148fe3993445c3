//! Quotient presentations `F^{(x)d} -> S(F)` with canonical sections.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::FunctorError;
use crate::expr::basis::{cartesian, increasing_sequences};
use crate::expr::{enumerate_basis, BasisLabel, SchurExpr};
use crate::linalg::ExactMatrix;
use crate::ring::Ring;

/// Sends a tuple of base indices to a signed basis index of one AST node.
enum Router {
    Base,
    Power { r: usize, child_degree: usize, wedge: bool, child: Box<Router>, index: BTreeMap<Vec<usize>, usize> },
    Tensor { degrees: Vec<usize>, sizes: Vec<usize>, children: Vec<Router> },
}

impl Router {
    /// Router plus the representative tuple of each basis element.
    fn build(expr: &SchurExpr, n: usize) -> (Router, Vec<Vec<u32>>) {
        match expr {
            SchurExpr::Base => (Router::Base, (0..n as u32).map(|i| alloc::vec![i]).collect()),
            SchurExpr::Sym(r, c) | SchurExpr::Wedge(r, c) => {
                let wedge = matches!(expr, SchurExpr::Wedge(..));
                let (child, child_reps) = Router::build(c, n);
                let seqs = increasing_sequences(child_reps.len(), *r as usize, wedge);
                let reps =
                    seqs.iter().map(|s| s.iter().flat_map(|&i| child_reps[i].iter().copied()).collect()).collect();
                let index = seqs.into_iter().enumerate().map(|(k, s)| (s, k)).collect();
                let child_degree = c.degree().expect("direct sum below the top level") as usize;
                (Router::Power { r: *r as usize, child_degree, wedge, child: Box::new(child), index }, reps)
            }
            SchurExpr::Tensor(fs) => {
                let built: Vec<(Router, Vec<Vec<u32>>)> = fs.iter().map(|f| Router::build(f, n)).collect();
                let sizes: Vec<usize> = built.iter().map(|b| b.1.len()).collect();
                let reps = cartesian(&sizes)
                    .into_iter()
                    .map(|idx| idx.iter().zip(&built).flat_map(|(&i, b)| b.1[i].iter().copied()).collect())
                    .collect();
                let degrees = fs.iter().map(|f| f.degree().expect("direct sum below the top level") as usize).collect();
                (Router::Tensor { degrees, sizes, children: built.into_iter().map(|b| b.0).collect() }, reps)
            }
            SchurExpr::DirectSum(_) => unreachable!("checked by the caller"),
        }
    }

    fn route(&self, tuple: &[u32]) -> Option<(i8, usize)> {
        match self {
            Router::Base => Some((1, tuple[0] as usize)),
            Router::Power { r, child_degree, wedge, child, index } => {
                let mut sign = 1i8;
                let mut idx = Vec::with_capacity(*r);
                for block in tuple.chunks(*child_degree) {
                    let (s, i) = child.route(block)?;
                    sign *= s;
                    idx.push(i);
                }
                if *wedge {
                    // insertion sort, counting transpositions
                    for a in 1..idx.len() {
                        let mut b = a;
                        while b > 0 && idx[b - 1] >= idx[b] {
                            if idx[b - 1] == idx[b] {
                                return None;
                            }
                            idx.swap(b - 1, b);
                            sign = -sign;
                            b -= 1;
                        }
                    }
                } else {
                    idx.sort_unstable();
                }
                Some((sign, index[&idx]))
            }
            Router::Tensor { degrees, sizes, children } => {
                let mut sign = 1i8;
                let mut pos = 0;
                let mut acc = 0;
                for ((child, &d), &size) in children.iter().zip(degrees).zip(sizes) {
                    let (s, i) = child.route(&tuple[pos..pos + d])?;
                    sign *= s;
                    acc = acc * size + i;
                    pos += d;
                }
                Some((sign, acc))
            }
        }
    }
}

/// The epimorphism `Q: F^{(x)d} -> S(F)` for `F` free of rank `n`, stored
/// sparsely, with the canonical section `Sec` (`Q * Sec = I`).
///
/// Basis tuples of `F^{(x)d}` are indexed by `sum_p i_p n^(d-1-p)` with
/// 0-based digits, matching Kronecker products.
pub struct QuotientPresentation {
    expr: SchurExpr,
    n: usize,
    degree: usize,
    labels: Vec<BasisLabel>,
    projection: Vec<Option<(i8, u32)>>,
    section: Vec<Vec<u32>>,
}

impl QuotientPresentation {
    pub fn new(expr: &SchurExpr, n: usize) -> Result<QuotientPresentation, FunctorError> {
        if expr.is_direct_sum() {
            return Err(FunctorError::DirectSum);
        }
        expr.validate().map_err(FunctorError::Expr)?;
        if n == 0 {
            return Err(FunctorError::ZeroRank);
        }
        let degree = expr.degree().expect("not a direct sum") as usize;
        let (router, section) = Router::build(expr, n);
        let total = tuple_count(n, degree);
        let mut projection = Vec::with_capacity(total);
        let mut tuple = alloc::vec![0u32; degree];
        for t in 0..total {
            decode_into(t, n, &mut tuple);
            projection.push(router.route(&tuple).map(|(s, i)| (s, i as u32)));
        }
        let labels = enumerate_basis(expr, n as u32);
        debug_assert_eq!(labels.len(), section.len());
        Ok(QuotientPresentation { expr: expr.clone(), n, degree, labels, projection, section })
    }

    pub fn expr(&self) -> &SchurExpr {
        &self.expr
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Rank of `S(F)`.
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// Number of basis tuples of `F^{(x)d}`.
    pub fn tuple_count(&self) -> usize {
        self.projection.len()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    /// Image of basis tuple `t`: a signed label index, or `None` when it maps to zero.
    pub fn project(&self, t: usize) -> Option<(i8, usize)> {
        self.projection[t].map(|(s, i)| (s, i as usize))
    }

    /// Canonical representative tuple (0-based digits) of label `l`.
    pub fn representative(&self, l: usize) -> &[u32] {
        &self.section[l]
    }

    pub fn representative_index(&self, l: usize) -> usize {
        encode(&self.section[l], self.n)
    }

    /// `Q` as a `rank x n^d` matrix over `ring`.
    pub fn projection_matrix(&self, ring: &Ring) -> ExactMatrix {
        let mut q = ExactMatrix::zeros(ring, self.rank(), self.tuple_count());
        for (t, p) in self.projection.iter().enumerate() {
            if let Some((s, l)) = p {
                q.set(*l as usize, t, ring.from_int(*s as i64));
            }
        }
        q.with_labels(None, Some(self.labels.clone())).expect("label count")
    }

    /// `Sec` as a `n^d x rank` matrix over `ring`.
    pub fn section_matrix(&self, ring: &Ring) -> ExactMatrix {
        let mut s = ExactMatrix::zeros(ring, self.tuple_count(), self.rank());
        for l in 0..self.rank() {
            s.set(self.representative_index(l), l, ring.one());
        }
        s.with_labels(Some(self.labels.clone()), None).expect("label count")
    }
}

/// `n^d`, panicking on overflow.
pub fn tuple_count(n: usize, d: usize) -> usize {
    n.checked_pow(d as u32).expect("tensor power too large")
}

/// Index of a tuple of 0-based digits.
pub fn encode(tuple: &[u32], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * n + i as usize)
}

/// Digits of tuple index `t`, written into `out`.
pub fn decode_into(mut t: usize, n: usize, out: &mut [u32]) {
    for slot in out.iter_mut().rev() {
        *slot = (t % n) as u32;
        t /= n;
    }
}

pub fn decode(t: usize, n: usize, d: usize) -> Vec<u32> {
    let mut out = alloc::vec![0; d];
    decode_into(t, n, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_schur_expr;

    fn pres(text: &str, n: usize) -> QuotientPresentation {
        QuotientPresentation::new(&parse_schur_expr(text).unwrap(), n).unwrap()
    }

    #[test]
    fn symmetric_square() {
        let p = pres("S^2(M)", 2);
        // tuples 00, 01, 10, 11
        assert_eq!(p.project(1), Some((1, 1)));
        assert_eq!(p.project(2), Some((1, 1)));
        assert_eq!(p.representative(1), &[0, 1]);
    }

    #[test]
    fn exterior_square() {
        let p = pres("W^2(M)", 2);
        assert_eq!(p.project(0), None);
        assert_eq!(p.project(1), Some((1, 0)));
        assert_eq!(p.project(2), Some((-1, 0)));
    }

    #[test]
    fn projection_times_section_is_identity() {
        let z = Ring::integers();
        for (text, n) in [("S^2(S^2(M))", 2), ("S^2(W^2(M))", 3), ("W^2(M) (x) S^2(M)", 2), ("W^2(S^2(M))", 2)] {
            let p = pres(text, n);
            let prod = p.projection_matrix(&z).matmul(&p.section_matrix(&z)).unwrap();
            assert_eq!(prod, ExactMatrix::identity(&z, p.rank()), "{}", text);
        }
    }

    #[test]
    fn nested_wedge_signs() {
        // W^2(W^2(M)) with n = 3: swapping the two inner wedges flips the sign,
        // and so does swapping inside either of them.
        let p = pres("W^2(W^2(M))", 3);
        let t = encode(&[0, 1, 0, 2], 3);
        let swapped = encode(&[0, 2, 0, 1], 3);
        let inner = encode(&[1, 0, 0, 2], 3);
        let (s, l) = p.project(t).unwrap();
        assert_eq!(p.project(swapped), Some((-s, l)));
        assert_eq!(p.project(inner), Some((-s, l)));
        assert_eq!(p.project(encode(&[0, 1, 1, 0], 3)), None);
    }

    #[test]
    fn direct_sum_is_rejected() {
        assert!(matches!(
            QuotientPresentation::new(&parse_schur_expr("M (+) M").unwrap(), 2),
            Err(FunctorError::DirectSum)
        ));
    }

    #[test]
    fn tuple_codec() {
        assert_eq!(encode(&[1, 0, 2], 3), 11);
        assert_eq!(decode(11, 3, 3), alloc::vec![1, 0, 2]);
    }
}
