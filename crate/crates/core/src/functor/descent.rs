//! Descent of endomorphisms of `F^{(x)d}` to maps between quotients.
//!
//! `Phi` descends from `Q_src` to `Q_dst` iff `Q_dst * Phi * (I - Sec_src * Q_src) = 0`.
//! Column `t` of `I - Sec_src * Q_src` is `e_t - s_t * e_rep(t)`, where
//! `Q_src(e_t) = s_t * e_label(t)`, so the check compares the image of every
//! basis tuple with the signed image of its representative. The induced map
//! is then `Q_dst * Phi * Sec_src`.

use alloc::vec::Vec;

use super::{decode, FunctorError, PermutationSum, QuotientPresentation};
use crate::expr::BasisLabel;
use crate::linalg::ExactMatrix;
use crate::ring::{Ring, RingElement};

/// A kernel vector of the source projection whose image is not in the
/// kernel of the target projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentWitness {
    /// Sparse vector of `F^{(x)d}`: tuples of 0-based digits with coefficients.
    pub kernel_vector: Vec<(Vec<u32>, i64)>,
    /// Nonzero image in the target quotient.
    pub image: Vec<(BasisLabel, RingElement)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescentStatus {
    Descends,
    Fails(DescentWitness),
    /// The full check would exceed the work budget (basis tuples times lift terms).
    Unchecked {
        work: u128,
        budget: u128,
    },
}

#[derive(Clone, Debug)]
pub struct Descent {
    pub status: DescentStatus,
    /// `Q_dst * Phi * Sec_src`; `None` when descent fails.
    pub induced: Option<ExactMatrix>,
    /// Shape of the residual `Q_dst * Phi * (I - Sec_src * Q_src)` that was checked.
    pub residual_shape: (usize, usize),
}

impl Descent {
    pub fn descends(&self) -> bool {
        self.status == DescentStatus::Descends
    }

    pub fn witness(&self) -> Option<&DescentWitness> {
        match &self.status {
            DescentStatus::Fails(w) => Some(w),
            _ => None,
        }
    }
}

trait Coeff: Clone + PartialEq {
    fn negate(&self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn into_ring(self, ring: &Ring) -> RingElement;
}

impl Coeff for i64 {
    fn negate(&self) -> Self {
        -self
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn into_ring(self, ring: &Ring) -> RingElement {
        ring.from_int(self)
    }
}

impl Coeff for RingElement {
    fn negate(&self) -> Self {
        -self
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn is_zero(&self) -> bool {
        RingElement::is_zero(self)
    }
    fn into_ring(self, _ring: &Ring) -> RingElement {
        self
    }
}

type Sparse<T> = Vec<(usize, T)>;

fn signed<T: Coeff>(v: &Sparse<T>, s: i8) -> Sparse<T> {
    if s > 0 {
        v.clone()
    } else {
        v.iter().map(|(i, c)| (*i, c.negate())).collect()
    }
}

fn difference<T: Coeff>(a: &Sparse<T>, b: &Sparse<T>) -> Sparse<T> {
    let mut out: Vec<(usize, T)> = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x.0 == y.0 => {
                i += 1;
                j += 1;
                (x.0, x.1.minus(&y.1))
            }
            (Some(x), Some(y)) if x.0 < y.0 => {
                i += 1;
                x.clone()
            }
            (Some(x), None) => {
                i += 1;
                x.clone()
            }
            (_, Some(y)) => {
                j += 1;
                (y.0, y.1.negate())
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

fn run<T: Coeff>(
    src: &QuotientPresentation,
    dst: &QuotientPresentation,
    ring: &Ring,
    check: Result<(), (u128, u128)>,
    mut image: impl FnMut(usize) -> Sparse<T>,
) -> Descent {
    let rep_images: Vec<Sparse<T>> = (0..src.rank()).map(|l| image(src.representative_index(l))).collect();
    let mut induced = ExactMatrix::zeros(ring, dst.rank(), src.rank());
    for (l, col) in rep_images.iter().enumerate() {
        for (k, c) in col {
            induced.set(*k, l, c.clone().into_ring(ring));
        }
    }
    let induced =
        induced.with_labels(Some(src.labels().to_vec()), Some(dst.labels().to_vec())).expect("label counts match");
    let residual_shape = (dst.rank(), src.tuple_count());
    if let Err((work, budget)) = check {
        return Descent { status: DescentStatus::Unchecked { work, budget }, induced: Some(induced), residual_shape };
    }
    let empty: Sparse<T> = Vec::new();
    for t in 0..src.tuple_count() {
        let projected = src.project(t);
        let rep = projected.map(|(_, l)| src.representative_index(l));
        if rep == Some(t) {
            continue;
        }
        let expected = match projected {
            Some((s, l)) => signed(&rep_images[l], s),
            None => empty.clone(),
        };
        let got = image(t);
        if got != expected {
            let d = src.degree();
            let mut kernel_vector = alloc::vec![(decode(t, src.n(), d), 1)];
            if let (Some((s, _)), Some(r)) = (projected, rep) {
                kernel_vector.push((decode(r, src.n(), d), -(s as i64)));
            }
            let image = difference(&got, &expected)
                .into_iter()
                .map(|(k, c)| (dst.labels()[k].clone(), c.into_ring(ring)))
                .collect();
            return Descent {
                status: DescentStatus::Fails(DescentWitness { kernel_vector, image }),
                induced: None,
                residual_shape,
            };
        }
    }
    Descent { status: DescentStatus::Descends, induced: Some(induced), residual_shape }
}

fn check_degrees(src: &QuotientPresentation, dst: &QuotientPresentation, lift: usize) -> Result<(), FunctorError> {
    if src.degree() != dst.degree() || src.degree() != lift || src.n() != dst.n() {
        return Err(FunctorError::DegreeMismatch { source: src.degree(), target: dst.degree(), lift });
    }
    Ok(())
}

/// Descends an explicit `n^d x n^d` matrix.
pub fn descend(
    phi: &ExactMatrix,
    src: &QuotientPresentation,
    dst: &QuotientPresentation,
) -> Result<Descent, FunctorError> {
    let total = src.tuple_count();
    if phi.shape() != (total, total) || dst.tuple_count() != total {
        return Err(FunctorError::DegreeMismatch { source: src.degree(), target: dst.degree(), lift: phi.rows() });
    }
    check_degrees(src, dst, src.degree())?;
    let ring = phi.ring().clone();
    let image = |t: usize| -> Sparse<RingElement> {
        let mut acc: Vec<RingElement> = alloc::vec![ring.zero(); dst.rank()];
        for r in 0..total {
            let c = phi.get(r, t);
            if c.is_zero() {
                continue;
            }
            if let Some((s, l)) = dst.project(r) {
                acc[l] = if s > 0 { &acc[l] + c } else { &acc[l] - c };
            }
        }
        acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    };
    Ok(run(src, dst, phi.ring(), Ok(()), image))
}

/// Descends a permutation-sum lift without forming its matrix.
pub fn descend_lift(
    lift: &PermutationSum,
    src: &QuotientPresentation,
    dst: &QuotientPresentation,
    ring: &Ring,
) -> Result<Descent, FunctorError> {
    descend_lift_within(lift, src, dst, ring, u128::MAX)
}

/// As [`descend_lift`], but skips the kernel check (reporting
/// [`DescentStatus::Unchecked`]) when `n^d` times the number of lift terms
/// exceeds `budget`.
pub fn descend_lift_within(
    lift: &PermutationSum,
    src: &QuotientPresentation,
    dst: &QuotientPresentation,
    ring: &Ring,
    budget: u128,
) -> Result<Descent, FunctorError> {
    check_degrees(src, dst, lift.degree())?;
    let n = src.n();
    let d = src.degree();
    let work = src.tuple_count() as u128 * lift.len() as u128;
    let check = if work > budget { Err((work, budget)) } else { Ok(()) };
    let mut digits = alloc::vec![0u32; d];
    let mut moved = alloc::vec![0u32; d];
    let image = |t: usize| -> Sparse<i64> {
        super::presentation::decode_into(t, n, &mut digits);
        let mut acc: Vec<(usize, i64)> = Vec::new();
        for (p, c) in lift.terms() {
            for (q, &x) in digits.iter().enumerate() {
                moved[p.image(q)] = x;
            }
            if let Some((s, l)) = dst.project(super::encode(&moved, n)) {
                acc.push((l, c * s as i64));
            }
        }
        acc.sort_unstable_by_key(|x| x.0);
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(acc.len());
        for (l, c) in acc {
            match out.last_mut() {
                Some(last) if last.0 == l => last.1 += c,
                _ => out.push((l, c)),
            }
        }
        out.retain(|x| x.1 != 0);
        out
    };
    Ok(run(src, dst, ring, check, image))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_schur_expr;
    use crate::functor::{permutation_endomorphism, Permutation};

    fn pres(text: &str, n: usize) -> QuotientPresentation {
        QuotientPresentation::new(&parse_schur_expr(text).unwrap(), n).unwrap()
    }

    #[test]
    fn identity_descends_to_the_collapse() {
        let z = Ring::integers();
        let d = descend_lift(&PermutationSum::identity(4), &pres("S^2(S^2(M))", 2), &pres("S^4(M)", 2), &z).unwrap();
        assert!(d.descends());
        let q = d.induced.unwrap();
        assert_eq!(q.shape(), (5, 6));
        assert!(q.entries().iter().all(|e| e.is_zero() || e.is_one()));
    }

    #[test]
    fn swap_on_exterior_square_is_minus_one() {
        let z = Ring::integers();
        let swap = Permutation::from_cycles(2, &[&[1, 2]]).unwrap();
        let w = pres("W^2(M)", 2);
        let phi = permutation_endomorphism(&swap, 2, &z);
        let d = descend(&phi, &w, &w).unwrap();
        assert_eq!(d.induced.unwrap(), ExactMatrix::from_ints(&z, &[[-1]]));
        let t = pres("M (x) M", 2);
        let d = descend(&phi, &t, &t).unwrap();
        assert!(d.descends());
        assert_eq!(d.induced.unwrap(), phi);
    }

    #[test]
    fn swap_does_not_descend_to_tensor_from_symmetric() {
        // S^2 -> M (x) M via the identity is not well defined
        let z = Ring::integers();
        let d = descend_lift(&PermutationSum::identity(2), &pres("S^2(M)", 2), &pres("M (x) M", 2), &z).unwrap();
        let w = d.witness().expect("no witness");
        assert_eq!(w.kernel_vector, alloc::vec![(alloc::vec![1, 0], 1), (alloc::vec![0, 1], -1)]);
        assert!(!w.image.is_empty());
        assert!(d.induced.is_none());
    }

    #[test]
    fn budget_skips_the_check() {
        let z = Ring::integers();
        let s = pres("S^2(M)", 2);
        let d = descend_lift_within(&PermutationSum::identity(2), &s, &s, &z, 1).unwrap();
        assert_eq!(d.status, DescentStatus::Unchecked { work: 4, budget: 1 });
        assert!(d.induced.is_some());
    }

    #[test]
    fn degree_mismatch() {
        let z = Ring::integers();
        assert!(descend_lift(&PermutationSum::identity(2), &pres("S^2(M)", 2), &pres("S^3(M)", 2), &z).is_err());
    }
}
