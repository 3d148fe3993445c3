use alloc::string::ToString;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Evidence, Status, Verdict, VerifyError};
use crate::expr::SchurExpr;
use crate::functor::induced_map;
use crate::linalg::ExactMatrix;
use crate::ring::{generic_name, Ring, RingSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetMode {
    /// Polynomial identity over the generic matrix.
    Symbolic,
    /// `trials` random integer matrices with entries in `[-entry_bound, entry_bound]`.
    Random { trials: usize, entry_bound: i64, seed: u64 },
}

/// Limits for symbolic determinant checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymbolicBudget {
    pub max_dimension: usize,
    pub max_variables: usize,
}

impl Default for SymbolicBudget {
    fn default() -> Self {
        SymbolicBudget { max_dimension: 20, max_variables: 9 }
    }
}

/// The exponent `sum_i m_i d_i / n` with the per-summand `(m_i, d_i)`.
pub fn det_exponent(expr: &SchurExpr, n: u64) -> Result<(u128, Vec<(u128, u32)>), VerifyError> {
    let mut total = 0u128;
    let mut parts = Vec::new();
    for s in expr.summands() {
        let m = s.rank(n);
        let d = s.degree().ok_or(VerifyError::InvalidParameter("nested direct sum".to_string()))?;
        let md = m * d as u128;
        if !md.is_multiple_of(n as u128) {
            return Err(VerifyError::NotDivisible { m, d, n });
        }
        total += md / n as u128;
        parts.push((m, d));
    }
    Ok((total, parts))
}

/// Checks `det S(f) = det(f)^(sum m_i d_i / n)` for `f` of size `n`.
pub fn check_det_identity(
    expr: &SchurExpr,
    n: usize,
    mode: DetMode,
    budget: SymbolicBudget,
) -> Result<Verdict, VerifyError> {
    if n == 0 {
        return Err(VerifyError::InvalidParameter("n must be positive".to_string()));
    }
    expr.validate().map_err(|e| VerifyError::InvalidParameter(e.to_string()))?;
    let (exponent, parts) = det_exponent(expr, n as u64)?;
    let mut v = Verdict::new("det").param("expr", expr).param("n", n);
    v.record("exponent", exponent);
    v.record(
        "summands",
        Evidence::List(
            parts
                .iter()
                .map(|(m, d)| Evidence::map([("rank", Evidence::from(*m)), ("degree", Evidence::from(*d))]))
                .collect(),
        ),
    );
    let exp = u64::try_from(exponent).map_err(|_| VerifyError::InvalidParameter("exponent too large".to_string()))?;
    let dimension = expr.rank(n as u64) as usize;
    v.record("dimension", dimension);
    match mode {
        DetMode::Symbolic => {
            v = v.param("mode", "symbolic");
            let variables = n * n;
            if dimension > budget.max_dimension || variables > budget.max_variables {
                return Err(VerifyError::OverBudget { dimension, variables, budget });
            }
            let ring = Ring::new(RingSpec::generic_matrix(n));
            let x = ExactMatrix::from_fn(&ring, n, n, |i, j| {
                ring.var(&generic_name(n, i + 1, j + 1)).expect("generic indeterminate")
            });
            let lhs = induced_map(expr, &x)?.determinant()?;
            let rhs = x.determinant()?.pow(exp);
            v.record("terms", lhs.as_polynomial().map_or(0, |p| p.terms().len()));
            if lhs != rhs {
                v.fail(
                    Status::Refuted,
                    Evidence::map([("det_induced", Evidence::from(&lhs)), ("det_power", Evidence::from(&rhs))]),
                );
            }
        }
        DetMode::Random { trials, entry_bound, seed } => {
            v = v.param("mode", "random").param("trials", trials).param("entry_bound", entry_bound).param("seed", seed);
            let ring = Ring::integers();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut checked = 0usize;
            for trial in 0..trials {
                let f = random_matrix(&ring, n, entry_bound, &mut rng);
                let lhs = induced_map(expr, &f)?.determinant()?;
                let rhs = f.determinant()?.pow(exp);
                checked += 1;
                if lhs != rhs {
                    v.fail(
                        Status::Refuted,
                        Evidence::map([
                            ("trial", Evidence::from(trial)),
                            ("matrix", Evidence::matrix(&f)),
                            ("det_induced", Evidence::from(&lhs)),
                            ("det_power", Evidence::from(&rhs)),
                        ]),
                    );
                    break;
                }
            }
            v.record("trials_checked", checked);
        }
    }
    Ok(v)
}

/// Integer matrix with entries uniform in `[-bound, bound]`.
pub(crate) fn random_matrix(ring: &Ring, n: usize, bound: i64, rng: &mut ChaCha8Rng) -> ExactMatrix {
    ExactMatrix::from_fn(ring, n, n, |_, _| ring.from_int(rng.gen_range(-bound..=bound)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_schur_expr;

    #[test]
    fn exponents() {
        let e = |t: &str, n| det_exponent(&parse_schur_expr(t).unwrap(), n).unwrap().0;
        assert_eq!(e("S^3(M)", 2), 6);
        assert_eq!(e("M (x) M", 2), 4);
        assert_eq!(e("W^2(M)", 3), 2);
        assert_eq!(e("S^2(S^2(M))", 2), 12);
        assert_eq!(e("W^2(M) (+) S^2(M)", 3), 2 + 4);
    }

    #[test]
    fn symbolic_and_random_agree() {
        let expr = parse_schur_expr("S^2(W^2(M))").unwrap();
        let s = check_det_identity(&expr, 3, DetMode::Symbolic, SymbolicBudget::default()).unwrap();
        assert!(s.is_verified());
        let r = check_det_identity(
            &expr,
            3,
            DetMode::Random { trials: 5, entry_bound: 9, seed: 1 },
            SymbolicBudget::default(),
        )
        .unwrap();
        assert!(r.is_verified());
        assert_eq!(s.get("exponent"), r.get("exponent"));
    }

    #[test]
    fn budget_is_enforced() {
        let expr = parse_schur_expr("S^3(M)").unwrap();
        let tight = SymbolicBudget { max_dimension: 3, max_variables: 9 };
        assert!(matches!(check_det_identity(&expr, 2, DetMode::Symbolic, tight), Err(VerifyError::OverBudget { .. })));
    }
}
