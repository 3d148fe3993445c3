use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{scalar_check, Evidence, Status, Verdict, VerifyError};
use crate::expr::SchurExpr;
use crate::functor::{multilinear_descent, DescentStatus};
use crate::maps::{
    descend_named, include_i, phi_sym_to_wedge_lift, phi_wedge_to_sym_lift, q_projection, retract_j, varphi_section,
    MapError, NamedMap,
};
use crate::ring::Ring;

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * i)
}

/// `(k + n - 1)! / 2`.
pub fn expected_phi_scalar(n: u32, k: u32) -> BigInt {
    factorial(k + n - 1) / 2
}

/// `(2n - 1)(2n - 2)...(n + 1) / (n - 1)!`.
pub fn expected_q_varphi_scalar(n: u32) -> BigInt {
    let falling = (n + 1..=2 * n - 1).fold(BigInt::from(1), |acc, i| acc * i);
    falling / factorial(n - 1)
}

/// Turns a descent failure into a failed sub-verdict.
fn map_or_fail(
    v: &mut Verdict,
    name: &str,
    built: Result<NamedMap, MapError>,
) -> Result<Option<NamedMap>, VerifyError> {
    match built {
        Ok(m) => Ok(Some(m)),
        Err(MapError::DescentFailed { name: map, witness }) => {
            let kernel = witness
                .kernel_vector
                .iter()
                .map(|(t, c)| {
                    Evidence::map([
                        ("tuple", Evidence::list(t.iter().map(|x| x + 1))),
                        ("coefficient", Evidence::from(*c)),
                    ])
                })
                .collect();
            let image =
                witness.image.iter().map(|(l, c)| Evidence::map([(l.to_string(), Evidence::from(c))])).collect();
            v.fail(
                Status::DescentFailed,
                Evidence::map([
                    ("check", Evidence::from(name)),
                    ("map", Evidence::from(map)),
                    ("kernel_vector", Evidence::List(kernel)),
                    ("image", Evidence::List(image)),
                ]),
            );
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

/// `phi_{n,k} * phi_{k,n} = (k+n-1)!/2 * id` for each `(n, k, rank)`.
pub fn verify_phi_scalars(cases: &[(u32, u32, usize)], ring: &Ring) -> Result<Verdict, VerifyError> {
    let mut v = Verdict::new("t42_scalars").param("ring", ring);
    for &(n, k, rank) in cases {
        let name = alloc::format!("n={},k={},rank={}", n, k, rank);
        let expected = ring.from_bigint(expected_phi_scalar(n, k));
        let up = map_or_fail(&mut v, &name, crate::maps::phi_sym_to_wedge(n, k, rank, ring))?;
        let down = map_or_fail(&mut v, &name, crate::maps::phi_wedge_to_sym(k, n, rank, ring))?;
        if let (Some(up), Some(down)) = (up, down) {
            let mut sub = scalar_check(&name, &up.matrix.matmul(&down.matrix)?, &expected);
            sub.record("expected", &expected);
            v.absorb(&name, sub, true);
        }
    }
    Ok(v)
}

/// `q * varphi` is the expected scalar and, for `n >= 3`, `q * i = 0` and `j` descends.
pub fn verify_theorem_4_3(cases: &[(u32, usize)], ring: &Ring) -> Result<Verdict, VerifyError> {
    let mut v = Verdict::new("t43").param("ring", ring);
    for &(n, rank) in cases {
        if n < 2 {
            return Err(VerifyError::InvalidParameter("n must be at least 2".to_string()));
        }
        let name = alloc::format!("n={},rank={}", n, rank);
        let mut sub = Verdict::new(&name);
        let q = map_or_fail(&mut sub, "q", q_projection(n, rank, ring))?;
        let varphi = map_or_fail(&mut sub, "varphi", varphi_section(n, rank, ring))?;
        if let (Some(q), Some(varphi)) = (&q, &varphi) {
            let expected = ring.from_bigint(expected_q_varphi_scalar(n));
            sub.absorb("q_varphi", scalar_check("q_varphi", &q.matrix.matmul(&varphi.matrix)?, &expected), true);
        }
        if n >= 3 {
            let i = map_or_fail(&mut sub, "i", include_i(n, rank, ring))?;
            if let (Some(q), Some(i)) = (&q, &i) {
                let mut z = Verdict::new("q_i");
                let c = q.matrix.matmul(&i.matrix)?;
                z.record("shape", Evidence::list([c.rows(), c.cols()]));
                if !c.is_zero() {
                    z.fail(Status::Refuted, Evidence::matrix(&c));
                }
                sub.absorb("q_i", z, true);
            }
            if let Some(j) = map_or_fail(&mut sub, "j", retract_j(n, rank, ring))? {
                sub.record("j_shape", Evidence::list([j.matrix.rows(), j.matrix.cols()]));
            }
        }
        v.absorb(&name, sub, true);
    }
    Ok(v)
}

/// One row of the composition-scalar table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureRow {
    pub n: u32,
    pub k: u32,
    pub rank: usize,
    /// `None` when the composite is not a scalar matrix.
    pub scalar: Option<BigInt>,
    pub expected: BigInt,
    /// `descends`, `descends_multilinear` (over the work budget, certified by
    /// the rank-free check), `unchecked` or `fails`.
    pub descent: &'static str,
}

impl ConjectureRow {
    pub fn matches(&self) -> bool {
        self.scalar.as_ref() == Some(&self.expected)
    }

    pub fn to_evidence(&self) -> Evidence {
        Evidence::map([
            ("n", Evidence::from(self.n)),
            ("k", Evidence::from(self.k)),
            ("rank", Evidence::from(self.rank)),
            ("scalar", self.scalar.as_ref().map_or(Evidence::Bool(false), |s| Evidence::from(s.to_string()))),
            ("expected", Evidence::from(self.expected.to_string())),
            ("matches", Evidence::from(self.matches())),
            ("descent", Evidence::from(self.descent)),
        ])
    }
}

fn descent_label(status: &DescentStatus) -> &'static str {
    match status {
        DescentStatus::Descends => "descends",
        DescentStatus::Unchecked { .. } => "unchecked",
        DescentStatus::Fails(_) => "fails",
    }
}

/// Composition scalar of `phi_{n,k} * phi_{k,n}` at rank `n`; kernel checks
/// are skipped beyond `budget` units of work.
pub fn conjecture_row(n: u32, k: u32, budget: u128) -> Result<ConjectureRow, VerifyError> {
    let z = Ring::integers();
    let rank = n as usize;
    let base = SchurExpr::Base;
    let swn = SchurExpr::sym(k, SchurExpr::wedge(n, base.clone()));
    let ssk = SchurExpr::sym(n, SchurExpr::sym(k, base));
    let expected = expected_phi_scalar(n, k);
    let (down_lift, up_lift) = (phi_wedge_to_sym_lift(k, n), phi_sym_to_wedge_lift(n, k));
    let certified =
        multilinear_descent(&down_lift, &swn, &ssk).is_ok() && multilinear_descent(&up_lift, &ssk, &swn).is_ok();
    let down = descend_named("phi_wedge_to_sym", swn.clone(), ssk.clone(), down_lift, rank, &z, budget);
    let up = descend_named("phi_sym_to_wedge", ssk, swn, up_lift, rank, &z, budget);
    let (down, up) = match (down, up) {
        (Ok(d), Ok(u)) => (d, u),
        (Err(MapError::DescentFailed { .. }), _) | (_, Err(MapError::DescentFailed { .. })) => {
            return Ok(ConjectureRow { n, k, rank, scalar: None, expected, descent: "fails" });
        }
        (Err(e), _) | (_, Err(e)) => return Err(e.into()),
    };
    let labels = [descent_label(&down.descent.status), descent_label(&up.descent.status)];
    let descent = match (labels.contains(&"unchecked"), certified) {
        (false, _) => "descends",
        (true, true) => "descends_multilinear",
        (true, false) => "unchecked",
    };
    let scalar = up.matrix.matmul(&down.matrix)?.scalar_multiple_of_identity().and_then(|c| c.to_integer());
    Ok(ConjectureRow { n, k, rank, scalar, expected, descent })
}

/// The table of composition scalars for `1 <= n <= max_n`, even `2 <= k <= max_k`.
/// Exploratory: the verdict is always `verified`; mismatches are data.
pub fn explore_phi_conjecture(max_n: u32, max_k: u32, budget: u128) -> Result<Verdict, VerifyError> {
    let mut v = Verdict::new("conjecture").param("max_n", max_n).param("max_k", max_k);
    let mut rows = Vec::new();
    for n in 1..=max_n {
        for k in (2..=max_k).step_by(2) {
            rows.push(conjecture_row(n, k, budget)?.to_evidence());
        }
    }
    v.record("table", Evidence::List(rows));
    Ok(v)
}

/// `rank W^4 + rank S^2(S^2) = rank S^2(W^2) + rank S^4` for `n = 1..n_max`.
pub fn check_rank_identity(n_max: u64) -> Verdict {
    let b = SchurExpr::Base;
    let w4 = SchurExpr::wedge(4, b.clone());
    let s2s2 = SchurExpr::sym(2, SchurExpr::sym(2, b.clone()));
    let s2w2 = SchurExpr::sym(2, SchurExpr::wedge(2, b.clone()));
    let s4 = SchurExpr::sym(4, b);
    let mut v = Verdict::new("rank_identity").param("n_max", n_max);
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let lhs = w4.rank(n) + s2s2.rank(n);
        let rhs = s2w2.rank(n) + s4.rank(n);
        rows.push(Evidence::map([
            ("n", Evidence::from(n)),
            ("lhs", Evidence::from(lhs)),
            ("rhs", Evidence::from(rhs)),
        ]));
        if lhs != rhs {
            v.fail(Status::Refuted, Evidence::map([("n", Evidence::from(n))]));
        }
    }
    v.record("table", Evidence::List(rows));
    v
}
