//! Independent oracles for the integration tests. Nothing here calls the
//! library's presentations, sections or lift machinery.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use schur_core::functor::{Permutation, PermutationSum};
use schur_core::{enumerate_basis, BasisLabel, ExactMatrix, Ring, RingElement, SchurExpr};

/// Sign and sorted key of the image of the basis tuple `t` in `S(F)`, or
/// `None` if it vanishes. Wedge signs come from counting inversions.
pub fn canon(expr: &SchurExpr, t: &[u32]) -> Option<(i64, Vec<u32>)> {
    match expr {
        SchurExpr::Base => Some((1, t.to_vec())),
        SchurExpr::Sym(r, c) | SchurExpr::Wedge(r, c) => {
            let w = t.len() / *r as usize;
            let mut sign = 1;
            let mut parts = Vec::new();
            for chunk in t.chunks(w) {
                let (s, k) = canon(c, chunk)?;
                sign *= s;
                parts.push(k);
            }
            if matches!(expr, SchurExpr::Wedge(..)) {
                for a in 0..parts.len() {
                    for b in a + 1..parts.len() {
                        if parts[a] == parts[b] {
                            return None;
                        }
                        if parts[a] > parts[b] {
                            sign = -sign;
                        }
                    }
                }
            }
            parts.sort();
            Some((sign, parts.concat()))
        }
        SchurExpr::Tensor(fs) => {
            let mut sign = 1;
            let mut key = Vec::new();
            let mut pos = 0;
            for f in fs {
                let d = f.degree().unwrap() as usize;
                let (s, k) = canon(f, &t[pos..pos + d])?;
                sign *= s;
                key.extend(k);
                pos += d;
            }
            Some((sign, key))
        }
        SchurExpr::DirectSum(_) => panic!("oracle works summand by summand"),
    }
}

/// 0-based leaves of a label, left to right.
pub fn leaves(l: &BasisLabel) -> Vec<u32> {
    match l {
        BasisLabel::Leaf(i) => vec![i - 1],
        BasisLabel::Sym(xs) | BasisLabel::Wedge(xs) | BasisLabel::Tensor(xs) => xs.iter().flat_map(leaves).collect(),
        BasisLabel::Summand(_, x) => leaves(x),
    }
}

fn all_tuples(n: u32, d: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out.into_iter().flat_map(|p| (0..n).map(move |i| [p.clone(), vec![i]].concat())).collect();
    }
    out
}

fn index_of(expr: &SchurExpr, n: u32) -> BTreeMap<Vec<u32>, usize> {
    enumerate_basis(expr, n).iter().enumerate().map(|(i, l)| (leaves(l), i)).collect()
}

/// `S(f)` by expanding `f^{(x)d}` on each basis element and collapsing
/// every resulting tuple.
pub fn induced_oracle(expr: &SchurExpr, f: &ExactMatrix) -> ExactMatrix {
    let ring = f.ring().clone();
    let blocks: Vec<ExactMatrix> = expr.summands().iter().map(|s| induced_single(s, f)).collect();
    ExactMatrix::block_diagonal(&ring, &blocks).unwrap()
}

fn induced_single(expr: &SchurExpr, f: &ExactMatrix) -> ExactMatrix {
    let n = f.rows() as u32;
    let ring = f.ring().clone();
    let d = expr.degree().unwrap() as usize;
    let rows = index_of(expr, n);
    let basis = enumerate_basis(expr, n);
    let tuples = all_tuples(n, d);
    let mut m = ExactMatrix::zeros(&ring, rows.len(), basis.len());
    for (col, l) in basis.iter().enumerate() {
        let t = leaves(l);
        for u in &tuples {
            let Some((s, key)) = canon(expr, u) else { continue };
            let mut c = ring.from_int(s);
            for p in 0..d {
                c = &c * f.get(u[p] as usize, t[p] as usize);
            }
            if c.is_zero() {
                continue;
            }
            let r = rows[&key];
            let v = m.get(r, col) + &c;
            m.set(r, col, v);
        }
    }
    m
}

/// Matrix of the map induced by a permutation-sum lift, computed on the
/// leaf tuple of each source label. Factor `p` moves to position `sigma(p)`.
pub fn lift_oracle(lift: &PermutationSum, src: &SchurExpr, dst: &SchurExpr, n: u32, ring: &Ring) -> ExactMatrix {
    let basis = enumerate_basis(src, n);
    let rows = index_of(dst, n);
    let mut m = ExactMatrix::zeros(ring, rows.len(), basis.len());
    for (col, l) in basis.iter().enumerate() {
        let t = leaves(l);
        for (sigma, c) in lift.terms() {
            let mut u = vec![0; t.len()];
            for (p, &x) in t.iter().enumerate() {
                u[sigma.images()[p]] = x;
            }
            if let Some((s, key)) = canon(dst, &u) {
                let r = rows[&key];
                let v = m.get(r, col) + &ring.from_int(s * c);
                m.set(r, col, v);
            }
        }
    }
    m
}

/// Sparse vectors of `S(F)` keyed by canonical tuples.
pub type Sparse = BTreeMap<Vec<u32>, i64>;

pub fn add_term(v: &mut Sparse, expr: &SchurExpr, t: &[u32], c: i64) {
    if let Some((s, k)) = canon(expr, t) {
        *v.entry(k).or_insert(0) += s * c;
    }
}

/// `j(a_1...a_n . b_1...b_n)` by the double sum over `i < j`, `k < l`:
/// `g` pairs two `a`s with two `b`s in both ways, then
/// `(x (x) y).(z (x) w) -> (x ^ z).(y ^ w) + (x ^ w).(y ^ z)`.
pub fn j_oracle(a: &[u32], b: &[u32], target: &SchurExpr) -> Sparse {
    let n = a.len();
    let mut out = Sparse::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                for l in k + 1..n {
                    let rest_a: Vec<u32> = (0..n).filter(|&x| x != i && x != j).map(|x| a[x]).collect();
                    let rest_b: Vec<u32> = (0..n).filter(|&x| x != k && x != l).map(|x| b[x]).collect();
                    let tail = [rest_a, rest_b].concat();
                    for (p, q) in [(b[k], b[l]), (b[l], b[k])] {
                        // (a_i (x) p).(a_j (x) q) in S^2(S^2 F)
                        let (x, y, z, w) = (a[i], p, a[j], q);
                        for head in [[x, z, y, w], [x, w, y, z]] {
                            add_term(&mut out, target, &[&head[..], &tail[..]].concat(), 1);
                        }
                    }
                }
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &ExactMatrix) -> RingElement {
    let ring = m.ring().clone();
    let n = m.rows();
    if n == 0 {
        return ring.one();
    }
    let mut acc = ring.zero();
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let minor =
            ExactMatrix::from_fn(&ring, n - 1, n - 1, |r, c| m.get(r + 1, if c < j { c } else { c + 1 }).clone());
        let term = m.get(0, j) * &cofactor_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

pub fn naive_matmul(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let ring = a.ring().clone();
    ExactMatrix::from_fn(&ring, a.rows(), b.cols(), |i, j| {
        (0..a.cols()).fold(ring.zero(), |acc, k| &acc + &(a.get(i, k) * b.get(k, j)))
    })
}

pub fn random_matrix(ring: &Ring, rows: usize, cols: usize, bound: i64, rng: &mut ChaCha8Rng) -> ExactMatrix {
    ExactMatrix::from_fn(ring, rows, cols, |_, _| ring.from_int(rng.gen_range(-bound..=bound)))
}

/// Product of random elementary matrices: determinant 1.
pub fn random_unimodular(ring: &Ring, n: usize, steps: usize, rng: &mut ChaCha8Rng) -> ExactMatrix {
    let mut m = ExactMatrix::identity(ring, n);
    if n < 2 {
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = ring.from_int(rng.gen_range(-2..=2));
        for col in 0..n {
            let v = m.get(i, col) + &(&c * m.get(j, col));
            m.set(i, col, v);
        }
    }
    m
}

/// Every named map at small ranks.
pub fn small_named_maps(ring: &Ring) -> Vec<schur_core::maps::NamedMap> {
    use schur_core::maps::*;
    let mut out = Vec::new();
    for rank in [2, 3] {
        out.push(phi_sym_to_wedge(2, 2, rank, ring).unwrap());
        out.push(phi_wedge_to_sym(2, 2, rank, ring).unwrap());
        out.push(q_projection(2, rank, ring).unwrap());
        out.push(varphi_section(2, rank, ring).unwrap());
        out.push(include_i(3, rank, ring).unwrap());
        out.push(retract_j(3, rank, ring).unwrap());
        out.push(tau_retraction(rank, ring).unwrap());
        out.push(inclusion(rank, ring).unwrap());
        out.extend(alpha_beta_chains(rank, ring).unwrap());
    }
    out.push(phi_sym_to_wedge(3, 2, 3, ring).unwrap());
    out.push(phi_wedge_to_sym(2, 3, 3, ring).unwrap());
    out.push(phi_sym_to_wedge(2, 4, 2, ring).unwrap());
    out.push(phi_wedge_to_sym(4, 2, 2, ring).unwrap());
    out.push(q_projection(3, 2, ring).unwrap());
    out.push(varphi_section(3, 2, ring).unwrap());
    out
}

/// A random Schur-type expression of degree at most `max_degree`.
pub fn random_expr(rng: &mut ChaCha8Rng, max_degree: u32) -> SchurExpr {
    let d = rng.gen_range(1..=max_degree);
    build_expr(rng, d)
}

fn build_expr(rng: &mut ChaCha8Rng, d: u32) -> SchurExpr {
    if d == 1 {
        return match rng.gen_range(0..4) {
            0 => SchurExpr::sym(1, SchurExpr::Base),
            1 => SchurExpr::wedge(1, SchurExpr::Base),
            _ => SchurExpr::Base,
        };
    }
    let divisors: Vec<u32> = (2..=d).filter(|r| d.is_multiple_of(*r)).collect();
    match rng.gen_range(0..3) {
        0 => {
            let a = rng.gen_range(1..d);
            SchurExpr::Tensor(vec![build_expr(rng, a), build_expr(rng, d - a)])
        }
        choice => {
            let r = divisors[rng.gen_range(0..divisors.len())];
            let child = build_expr(rng, d / r);
            if choice == 1 {
                SchurExpr::sym(r, child)
            } else {
                SchurExpr::wedge(r, child)
            }
        }
    }
}

pub fn random_permutation(rng: &mut ChaCha8Rng, d: usize) -> Permutation {
    let all = Permutation::all(d);
    all[rng.gen_range(0..all.len())].clone()
}
