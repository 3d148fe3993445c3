//! Top exterior power of an extension `0 -> F' -> F -> F'' -> 0`.
//!
//! For `F = Z^(m+n)` with a basis `a_1..a_{m+n}` (the columns of a unimodular
//! matrix), `F'` is spanned by `a_1..a_m` and `F''` is the quotient with basis
//! the classes of `a_{m+1}..a_{m+n}`. A section sends the `i`-th basis vector
//! of `F''` to `a_{m+i}` plus an arbitrary element of `F'`. The coefficient of
//! `(a_1 ^ ... ^ a_m) ^ (s_1 ^ ... ^ s_n)` on `e_1 ^ ... ^ e_{m+n}` is computed
//! by multiplying Pluecker coordinates, i.e. in `W^m F (x) W^n F -> W^{m+n} F`.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Evidence, Status, Verdict, VerifyError};
use crate::expr::basis::increasing_sequences;
use crate::linalg::ExactMatrix;
use crate::ring::Ring;

/// Pluecker coordinates of the columns `vectors` (each of length `len`).
fn pluecker(vectors: &[Vec<BigInt>], len: usize) -> Vec<(Vec<usize>, BigInt)> {
    let z = Ring::integers();
    let k = vectors.len();
    increasing_sequences(len, k, true)
        .into_iter()
        .map(|rows| {
            let minor = ExactMatrix::from_fn(&z, k, k, |i, j| z.from_bigint(vectors[j][rows[i]].clone()));
            let d = minor.determinant().expect("square").to_integer().expect("integer");
            (rows, d)
        })
        .collect()
}

/// Coefficient of `(u_1 ^ ... ^ u_m) ^ (v_1 ^ ... ^ v_n)` on the top basis vector.
pub fn wedge_product_top(us: &[Vec<BigInt>], vs: &[Vec<BigInt>]) -> BigInt {
    let len = us.first().or(vs.first()).map_or(0, |v| v.len());
    assert_eq!(us.len() + vs.len(), len, "need m + n vectors of length m + n");
    let pv: alloc::collections::BTreeMap<Vec<usize>, BigInt> = pluecker(vs, len).into_iter().collect();
    let m = us.len();
    let mut total = BigInt::zero();
    for (rows, p) in pluecker(us, len) {
        if p.is_zero() {
            continue;
        }
        let rest: Vec<usize> = (0..len).filter(|r| !rows.contains(r)).collect();
        // moving rows I in front of their complement costs sum(I) - m(m-1)/2 transpositions
        let shift: usize = rows.iter().sum::<usize>() - m * m.saturating_sub(1) / 2;
        let term = &p * &pv[&rest];
        if shift.is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn column(a: &ExactMatrix, j: usize) -> Vec<BigInt> {
    (0..a.rows()).map(|i| a.get(i, j).to_integer().expect("integer matrix")).collect()
}

/// The coefficient `u` for the basis given by the columns of `a`, the first
/// `m` of them spanning `F'`, and the section shifted by the `m x n` integer
/// matrix `shift` (`s_i = a_{m+i} + sum_j shift[j][i] a_j`).
pub fn wedge_coefficient(a: &ExactMatrix, m: usize, shift: &[Vec<i64>]) -> BigInt {
    let size = a.rows();
    let n = size - m;
    let us: Vec<Vec<BigInt>> = (0..m).map(|j| column(a, j)).collect();
    let vs: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut v = column(a, m + i);
            for (j, u) in us.iter().enumerate() {
                let c = BigInt::from(shift[j][i]);
                for (x, y) in v.iter_mut().zip(u) {
                    *x += &c * y;
                }
            }
            v
        })
        .collect();
    wedge_product_top(&us, &vs)
}

/// A random unimodular integer matrix: a seeded product of elementary row
/// operations (additions of small multiples, swaps and sign changes).
pub fn random_unimodular(size: usize, rng: &mut ChaCha8Rng) -> ExactMatrix {
    let z = Ring::integers();
    let mut rows: Vec<Vec<i64>> = (0..size).map(|i| (0..size).map(|j| (i == j) as i64).collect()).collect();
    if size < 2 {
        if size == 1 && rng.gen_bool(0.5) {
            rows[0][0] = -1;
        }
        return ExactMatrix::from_ints(&z, &rows);
    }
    for _ in 0..3 * size * size {
        let i = rng.gen_range(0..size);
        let mut j = rng.gen_range(0..size - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..6) {
            0 => rows.swap(i, j),
            1 => rows[i].iter_mut().for_each(|x| *x = -*x),
            _ => {
                let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
                let src = rows[j].clone();
                for (x, y) in rows[i].iter_mut().zip(src) {
                    *x += c * y;
                }
            }
        }
    }
    ExactMatrix::from_ints(&z, &rows)
}

/// For random unimodular bases, checks that `u` is a unit, equals the
/// determinant of the basis, and does not depend on the section.
pub fn check_wedge_factorization(m: usize, n: usize, trials: usize, seed: u64) -> Result<Verdict, VerifyError> {
    if m == 0 || n == 0 {
        return Err(VerifyError::InvalidParameter("m and n must be positive".into()));
    }
    let mut v = Verdict::new("lemma51").param("m", m).param("n", n).param("trials", trials).param("seed", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coefficients = Vec::with_capacity(trials);
    for trial in 0..trials {
        let a = random_unimodular(m + n, &mut rng);
        let det = a.determinant()?.to_integer().expect("integer");
        let zero_shift = alloc::vec![alloc::vec![0i64; n]; m];
        let u = wedge_coefficient(&a, m, &zero_shift);
        let mut failure = None;
        if !u.abs().is_one() {
            failure = Some("coefficient is not a unit");
        } else if u != det {
            failure = Some("coefficient differs from the determinant");
        }
        for _ in 0..3 {
            let shift: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect()).collect();
            if failure.is_none() && wedge_coefficient(&a, m, &shift) != u {
                failure = Some("coefficient depends on the section");
            }
        }
        if let Some(reason) = failure {
            v.fail(
                Status::Refuted,
                Evidence::map([
                    ("trial", Evidence::from(trial)),
                    ("reason", Evidence::from(reason)),
                    ("basis", Evidence::matrix(&a)),
                ]),
            );
            break;
        }
        coefficients.push(Evidence::from(u.to_string()));
    }
    v.record("coefficients", Evidence::List(coefficients));
    Ok(v)
}
