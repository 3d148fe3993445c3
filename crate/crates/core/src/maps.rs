//! The canonical maps between symmetric and exterior constructions, each
//! obtained by descending a permutation-sum lift on `F^{(x)d}`.
//!
//! Positions in the lifts are 0-based; a term's permutation sends the
//! factor in position `p` to position `s(p)` (see [`crate::functor`]).

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::expr::SchurExpr;
use crate::functor::{
    descend_lift_within, Descent, DescentWitness, FunctorError, Permutation, PermutationSum, QuotientPresentation,
};
use crate::linalg::ExactMatrix;
use crate::ring::{Ring, RingElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapError {
    /// The symmetric-to-exterior map needs an even inner power.
    OddPower {
        k: u32,
    },
    InvalidParameter(String),
    DescentFailed {
        name: String,
        witness: DescentWitness,
    },
    Functor(FunctorError),
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::OddPower { k } => write!(f, "k = {} is odd; the map is only asserted for even k", k),
            MapError::InvalidParameter(m) => write!(f, "{}", m),
            MapError::DescentFailed { name, .. } => write!(f, "the lift of {} does not descend", name),
            MapError::Functor(e) => write!(f, "{}", e),
        }
    }
}

impl From<FunctorError> for MapError {
    fn from(e: FunctorError) -> Self {
        MapError::Functor(e)
    }
}

/// A map `S_src(F) -> S_dst(F)` together with the lift it descends from.
#[derive(Clone, Debug)]
pub struct NamedMap {
    pub name: String,
    pub source: SchurExpr,
    pub target: SchurExpr,
    pub rank: usize,
    pub lift: PermutationSum,
    pub matrix: ExactMatrix,
    pub descent: Descent,
}

fn base() -> SchurExpr {
    SchurExpr::Base
}

fn sym(r: u32, e: SchurExpr) -> SchurExpr {
    SchurExpr::sym(r, e)
}

fn wedge(r: u32, e: SchurExpr) -> SchurExpr {
    SchurExpr::wedge(r, e)
}

fn cycle(d: usize, c: &[usize]) -> Permutation {
    Permutation::from_cycles(d, &[c]).expect("valid cycle")
}

fn from_targets(targets: Vec<usize>) -> Permutation {
    Permutation::from_images(targets).expect("lift terms are bijections")
}

/// Odometer over `count` independent permutations of degree `k`.
fn permutation_tuples(k: usize, count: usize) -> Vec<Vec<Permutation>> {
    let all = Permutation::all(k);
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..count {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Permutation>| {
                all.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// Lift of `S^n(S^k F) -> S^k(W^n F)`: `(x)_i (x)_j a_ij` goes to the sum over
/// `s_2..s_n` in `S_k` of `(x)_i (a_1i (x) a_2s_2(i) (x) ... (x) a_ns_n(i))`.
pub fn phi_sym_to_wedge_lift(n: u32, k: u32) -> PermutationSum {
    let (n, k) = (n as usize, k as usize);
    let d = n * k;
    let terms = permutation_tuples(k, n - 1).into_iter().map(|sigmas| {
        let mut images = alloc::vec![0; d];
        for i in 0..k {
            for j in 0..n {
                let col = if j == 0 { i } else { sigmas[j - 1].image(i) };
                images[j * k + col] = i * n + j;
            }
        }
        (from_targets(images), 1)
    });
    PermutationSum::from_terms(d, terms)
}

/// Lift of `S^k(W^n F) -> S^n(S^k F)`: the signed sum over `t_2..t_k` in `S_n`
/// sending `(x)_j (x)_i a_ji` to `(x)_i (a_1i (x) a_2t_2(i) (x) ... (x) a_kt_k(i))`,
/// with sign `sgn(t_2) ... sgn(t_k)`.
pub fn phi_wedge_to_sym_lift(k: u32, n: u32) -> PermutationSum {
    let (n, k) = (n as usize, k as usize);
    let d = n * k;
    let terms = permutation_tuples(n, k - 1).into_iter().map(|taus| {
        let mut images = alloc::vec![0; d];
        let mut sign = 1;
        for t in &taus {
            sign *= t.sign();
        }
        for i in 0..n {
            for j in 0..k {
                let col = if j == 0 { i } else { taus[j - 1].image(i) };
                images[j * n + col] = i * k + j;
            }
        }
        (from_targets(images), sign)
    });
    PermutationSum::from_terms(d, terms)
}

/// Lift of `S^{2n} F -> S^2(S^n F)`: the sum over subsets `N` of positions
/// with `0` in `N` and `|N| = n`, putting `N` first and its complement second.
pub fn varphi_lift(n: u32) -> PermutationSum {
    let n = n as usize;
    let d = 2 * n;
    let subsets = crate::expr::basis::increasing_sequences(d - 1, n - 1, true);
    let terms = subsets.into_iter().map(|rest| {
        let mut chosen = alloc::vec![false; d];
        chosen[0] = true;
        for r in rest {
            chosen[r + 1] = true;
        }
        let mut images = alloc::vec![0; d];
        let (mut a, mut b) = (0, n);
        for p in 0..d {
            if chosen[p] {
                images[p] = a;
                a += 1;
            } else {
                images[p] = b;
                b += 1;
            }
        }
        (from_targets(images), 1)
    });
    PermutationSum::from_terms(d, terms)
}

/// The four-term lift `S^2(S^2 F) (x) S^2(S^{n-2} F) -> S^2(S^n F)`:
/// `((t1 t2)(t3 t4)) (x) (a . b)` goes to
/// `(t1 t3 a)(t2 t4 b) + (t1 t4 a)(t2 t3 b) + (t2 t4 a)(t1 t3 b) + (t2 t3 a)(t1 t4 b)`.
pub fn f_tilde_lift(n: u32) -> PermutationSum {
    let n = n as usize;
    let m = n - 2;
    let d = 2 * n;
    let pairs = [([0, 2], [1, 3]), ([0, 3], [1, 2]), ([1, 3], [0, 2]), ([1, 2], [0, 3])];
    let terms = pairs.iter().map(|(first, second)| {
        let mut images = alloc::vec![0; d];
        images[first[0]] = 0;
        images[first[1]] = 1;
        images[second[0]] = n;
        images[second[1]] = n + 1;
        for x in 0..m {
            images[4 + x] = 2 + x;
            images[4 + m + x] = n + 2 + x;
        }
        (from_targets(images), 1)
    });
    PermutationSum::from_terms(d, terms)
}

/// The lift `S^2(S^n F) -> S^2(S^2 F) (x) S^2(S^{n-2} F)`: `(a_1..a_n).(b_1..b_n)`
/// goes to the sum over `i < j`, `k < l` of
/// `((a_i b_k)(a_j b_l) + (a_i b_l)(a_j b_k)) (x) (a without i, j).(b without k, l)`.
pub fn g_tilde_lift(n: u32) -> PermutationSum {
    let n = n as usize;
    let m = n - 2;
    let d = 2 * n;
    let pairs = crate::expr::basis::increasing_sequences(n, 2, true);
    let mut terms = Vec::new();
    for ij in &pairs {
        for kl in &pairs {
            for (k, l) in [(kl[0], kl[1]), (kl[1], kl[0])] {
                let mut images = alloc::vec![0; d];
                images[ij[0]] = 0;
                images[n + k] = 1;
                images[ij[1]] = 2;
                images[n + l] = 3;
                let rest_a = (0..n).filter(|x| !ij.contains(x));
                for (slot, x) in rest_a.enumerate() {
                    images[x] = 4 + slot;
                }
                let rest_b = (0..n).filter(|x| !kl.contains(x));
                for (slot, x) in rest_b.enumerate() {
                    images[n + x] = 4 + m + slot;
                }
                terms.push((from_targets(images), 1));
            }
        }
    }
    PermutationSum::from_terms(d, terms)
}

/// `s_(23) + s_(234)` on `F^{(x)4}`.
pub fn tau_lift() -> PermutationSum {
    PermutationSum::from_terms(4, [(cycle(4, &[2, 3]), 1), (cycle(4, &[2, 3, 4]), 1)])
}

/// `s_(23) - s_(234)` on `F^{(x)4}`.
pub fn inclusion_lift() -> PermutationSum {
    PermutationSum::from_terms(4, [(cycle(4, &[2, 3]), 1), (cycle(4, &[2, 3, 4]), -1)])
}

/// `id - s_(23) + s_(234)` on `F^{(x)4}`.
pub fn f1_lift() -> PermutationSum {
    PermutationSum::from_terms(4, [(Permutation::identity(4), 1), (cycle(4, &[2, 3]), -1), (cycle(4, &[2, 3, 4]), 1)])
}

/// `id + s_(23) + s_(234)` on `F^{(x)4}`.
pub fn g3_lift() -> PermutationSum {
    PermutationSum::from_terms(4, [(Permutation::identity(4), 1), (cycle(4, &[2, 3]), 1), (cycle(4, &[2, 3, 4]), 1)])
}

/// Descends `lift` from `source` to `target` at the given rank; the kernel
/// check is skipped when its work exceeds `budget`.
pub fn descend_named(
    name: &str,
    source: SchurExpr,
    target: SchurExpr,
    lift: PermutationSum,
    rank: usize,
    ring: &Ring,
    budget: u128,
) -> Result<NamedMap, MapError> {
    if rank == 0 {
        return Err(MapError::InvalidParameter("rank must be positive".to_string()));
    }
    let src = QuotientPresentation::new(&source, rank)?;
    let dst = QuotientPresentation::new(&target, rank)?;
    let descent = descend_lift_within(&lift, &src, &dst, ring, budget)?;
    match (&descent.induced, descent.witness()) {
        (Some(m), _) => Ok(NamedMap { name: name.to_string(), source, target, rank, lift, matrix: m.clone(), descent }),
        (None, Some(w)) => Err(MapError::DescentFailed { name: name.to_string(), witness: w.clone() }),
        (None, None) => unreachable!("a failed descent carries a witness"),
    }
}

fn build(
    name: &str,
    source: SchurExpr,
    target: SchurExpr,
    lift: PermutationSum,
    rank: usize,
    ring: &Ring,
) -> Result<NamedMap, MapError> {
    descend_named(name, source, target, lift, rank, ring, u128::MAX)
}

fn at_least(what: &str, value: u32, min: u32) -> Result<(), MapError> {
    if value < min {
        return Err(MapError::InvalidParameter(alloc::format!("{} must be at least {}", what, min)));
    }
    Ok(())
}

/// `phi_{n,k}: S^n(S^k F) -> S^k(W^n F)` for even `k`.
pub fn phi_sym_to_wedge(n: u32, k: u32, rank: usize, ring: &Ring) -> Result<NamedMap, MapError> {
    if k % 2 == 1 {
        return Err(MapError::OddPower { k });
    }
    phi_sym_to_wedge_any_parity(n, k, rank, ring)
}

/// `phi_{n,k}` without the evenness precondition; odd `k` usually ends in
/// [`MapError::DescentFailed`] with a witness.
pub fn phi_sym_to_wedge_any_parity(n: u32, k: u32, rank: usize, ring: &Ring) -> Result<NamedMap, MapError> {
    at_least("n", n, 1)?;
    at_least("k", k, 1)?;
    let name = alloc::format!("phi_{{{},{}}}", n, k);
    build(&name, sym(n, sym(k, base())), sym(k, wedge(n, base())), phi_sym_to_wedge_lift(n, k), rank, ring)
}

/// `phi_{k,n}: S^k(W^n F) -> S^n(S^k F)`.
pub fn phi_wedge_to_sym(k: u32, n: u32, rank: usize, ring: &Ring) -> Result<NamedMap, MapError> {
    at_least("n", n, 1)?;
    at_least("k", k, 1)?;
    let name = alloc::format!("phi_{{{},{}}}", k, n);
    build(&name, sym(k, wedge(n, base())), sym(n, sym(k, base())), phi_wedge_to_sym_lift(k, n), rank, ring)
}

/// The scalar `c` with `phi_{n,k} * phi_{k,n} = c * id` on `S^k(W^n F)`, if any.
pub fn composition_scalar_phi(n: u32, k: u32, rank: usize, ring: &Ring) -> Result<Option<RingElement>, MapError> {
    let down = phi_wedge_to_sym(k, n, rank, ring)?;
    let up = phi_sym_to_wedge(n, k, rank, ring)?;
    let c = up.matrix.matmul(&down.matrix).map_err(FunctorError::from)?;
    Ok(c.scalar_multiple_of_identity())
}

/// `q: S^2(S^n F) -> S^{2n} F`, induced by the identity.
pub fn q_projection(n: u32, rank: usize, ring: &Ring) -> Result<NamedMap, MapError> {
    at_least("n", n, 1)?;
    build("q", sym(2, sym(n, base())), sym(2 * n, base()), PermutationSum::identity(2 * n as usize), rank, ring)
}

/// `varphi: S^{2n} F -> S^2(S^n F)` from the subset-sum lift.
pub fn varphi_section(n: u32, rank: usize, ring: &Ring) -> Result<NamedMap, MapError> {
    at_least("n", n, 1)?;
    build("varphi", sym(2 * n, base()), sym(2, sym(n, base())), varphi_lift(n), rank, ring)
}

fn mixed_source(n: u32) -> SchurExpr {
    SchurExpr::tensor(alloc::vec![sym(2, wedge(2, base())), sym(2, sym(n - 2, base()))])
}

/// `i = f * (phi_{2,2} (x) id): S^2(W^2 F) (x) S^2(S^{n-2} F) -> S^2(S^n F)`.
pub fn include_i(n: u32, rank: usize, ring: &Ring) -> Result<NamedMap, MapError> {
    at_least("n", n, 3)?;
    let d = 2 * n as usize;
    let first = phi_wedge_to_sym_lift(2, 2).tensor(&PermutationSum::identity(d - 4));
    let lift = f_tilde_lift(n).compose(&first);
    build("i", mixed_source(n), sym(2, sym(n, base())), lift, rank, ring)
}

/// `j = (phi_{2,2} (x) id) * g: S^2(S^n F) -> S^2(W^2 F) (x) S^2(S^{n-2} F)`.
pub fn retract_j(n: u32, rank: usize, ring: &Ring) -> Result<NamedMap, MapError> {
    at_least("n", n, 3)?;
    let d = 2 * n as usize;
    let last = phi_sym_to_wedge_lift(2, 2).tensor(&PermutationSum::identity(d - 4));
    let lift = last.compose(&g_tilde_lift(n));
    build("j", sym(2, sym(n, base())), mixed_source(n), lift, rank, ring)
}

fn s2s2() -> SchurExpr {
    sym(2, sym(2, base()))
}

fn s2w2() -> SchurExpr {
    sym(2, wedge(2, base()))
}

/// `tau: S^2(S^2 F) -> S^2(W^2 F)`.
pub fn tau_retraction(rank: usize, ring: &Ring) -> Result<NamedMap, MapError> {
    build("tau", s2s2(), s2w2(), tau_lift(), rank, ring)
}

/// The inclusion `S^2(W^2 F) -> S^2(S^2 F)` of the three-term sequence.
pub fn inclusion(rank: usize, ring: &Ring) -> Result<NamedMap, MapError> {
    build("incl", s2w2(), s2s2(), inclusion_lift(), rank, ring)
}

/// `alpha_1, alpha_2, alpha_3` then `beta_1, beta_2, beta_3`, the maps of
/// `W^4 F -> S^2(W^2 F) -> S^2(S^2 F) -> S^4 F` and of the reverse chain.
pub fn alpha_beta_chains(rank: usize, ring: &Ring) -> Result<Vec<NamedMap>, MapError> {
    ["alpha1", "alpha2", "alpha3", "beta1", "beta2", "beta3"].iter().map(|name| chain_map(name, rank, ring)).collect()
}

/// One map of the chains by name (`alpha1` ... `beta3`).
pub fn chain_map(name: &str, rank: usize, ring: &Ring) -> Result<NamedMap, MapError> {
    let w4 = || wedge(4, base());
    let s4 = || sym(4, base());
    let id = || PermutationSum::identity(4);
    match name {
        "alpha1" => build(name, w4(), s2w2(), f1_lift(), rank, ring),
        "alpha2" => build(name, s2w2(), s2s2(), inclusion_lift(), rank, ring),
        "alpha3" => build(name, s2s2(), s4(), id(), rank, ring),
        "beta1" => build(name, s2w2(), w4(), id(), rank, ring),
        "beta2" => build(name, s2s2(), s2w2(), tau_lift(), rank, ring),
        "beta3" => build(name, s4(), s2s2(), g3_lift(), rank, ring),
        other => Err(MapError::InvalidParameter(alloc::format!("unknown chain map '{}'", other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::integers()
    }

    #[test]
    fn tau_after_inclusion_is_three() {
        for rank in 2..=3 {
            let t = tau_retraction(rank, &z()).unwrap();
            let i = inclusion(rank, &z()).unwrap();
            let c = t.matrix.matmul(&i.matrix).unwrap().scalar_multiple_of_identity();
            assert_eq!(c, Some(z().from_int(3)), "rank {}", rank);
        }
    }

    #[test]
    fn composition_scalars() {
        assert_eq!(composition_scalar_phi(2, 2, 2, &z()).unwrap(), Some(z().from_int(3)));
        assert_eq!(composition_scalar_phi(3, 2, 3, &z()).unwrap(), Some(z().from_int(12)));
    }

    #[test]
    fn q_after_varphi() {
        let q = q_projection(2, 2, &z()).unwrap();
        let v = varphi_section(2, 2, &z()).unwrap();
        assert_eq!(q.matrix.matmul(&v.matrix).unwrap().scalar_multiple_of_identity(), Some(z().from_int(3)));
        assert_eq!(varphi_lift(3).len(), 10);
    }

    #[test]
    fn q_kills_i() {
        let q = q_projection(3, 2, &z()).unwrap();
        let i = include_i(3, 2, &z()).unwrap();
        assert!(q.matrix.matmul(&i.matrix).unwrap().is_zero());
        assert!(!i.matrix.is_zero());
    }

    #[test]
    fn chains_compose_to_zero() {
        let maps = alpha_beta_chains(3, &z()).unwrap();
        assert!(maps[1].matrix.matmul(&maps[0].matrix).unwrap().is_zero());
        assert!(maps[2].matrix.matmul(&maps[1].matrix).unwrap().is_zero());
        assert!(maps[4].matrix.matmul(&maps[5].matrix).unwrap().is_zero());
        assert!(maps[3].matrix.matmul(&maps[4].matrix).unwrap().is_zero());
        let a3b3 = maps[2].matrix.matmul(&maps[5].matrix).unwrap();
        assert_eq!(a3b3.scalar_multiple_of_identity(), Some(z().from_int(3)));
    }

    #[test]
    fn odd_power_is_rejected_unless_forced() {
        assert_eq!(phi_sym_to_wedge(2, 3, 2, &z()).unwrap_err(), MapError::OddPower { k: 3 });
    }
}
