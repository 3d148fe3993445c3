//! Rank-free descent check.
//!
//! Over a torsion-free target, the kernel of `F^{(x)d} -> S(F)` is spanned by
//! `e - chi(p) p(e)` where `p` runs over swaps of adjacent child blocks of a
//! `Sym` (`chi = 1`) or `Wedge` (`chi = -1`) node (repeated wedge factors are
//! covered because `2x = 0` forces `x = 0`). A lift is a natural
//! transformation, so `Q_dst * Phi * (p - chi(p))` vanishes for every rank
//! iff it vanishes on `e_1 (x) ... (x) e_d` at rank `d`. Target basis
//! elements are keyed by canonical tuples, so nothing of size `d^d` is built.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Permutation, PermutationSum};
use crate::expr::SchurExpr;

/// Signed canonical representative of the image of `tuple`, or `None` if it is zero.
pub fn canonical_key(expr: &SchurExpr, tuple: &[u32]) -> Option<(i8, Vec<u32>)> {
    match expr {
        SchurExpr::Base => Some((1, tuple.to_vec())),
        SchurExpr::Sym(_, c) | SchurExpr::Wedge(_, c) => {
            let dc = c.degree()? as usize;
            let mut sign = 1i8;
            let mut keys = Vec::new();
            for block in tuple.chunks(dc) {
                let (s, k) = canonical_key(c, block)?;
                sign *= s;
                keys.push(k);
            }
            if matches!(expr, SchurExpr::Wedge(..)) {
                for a in 1..keys.len() {
                    let mut b = a;
                    while b > 0 && keys[b - 1] >= keys[b] {
                        if keys[b - 1] == keys[b] {
                            return None;
                        }
                        keys.swap(b - 1, b);
                        sign = -sign;
                        b -= 1;
                    }
                }
            } else {
                keys.sort();
            }
            Some((sign, keys.concat()))
        }
        SchurExpr::Tensor(fs) => {
            let mut sign = 1i8;
            let mut key = Vec::with_capacity(tuple.len());
            let mut pos = 0;
            for f in fs {
                let d = f.degree()? as usize;
                let (s, k) = canonical_key(f, &tuple[pos..pos + d])?;
                sign *= s;
                key.extend(k);
                pos += d;
            }
            Some((sign, key))
        }
        SchurExpr::DirectSum(_) => None,
    }
}

/// Adjacent block swaps generating the relations of `expr`, with their characters.
pub fn relation_generators(expr: &SchurExpr) -> Vec<(Permutation, i64)> {
    let d = expr.degree().unwrap_or(0) as usize;
    let mut out = Vec::new();
    collect(expr, 0, d, &mut out);
    out
}

fn collect(expr: &SchurExpr, offset: usize, total: usize, out: &mut Vec<(Permutation, i64)>) {
    match expr {
        SchurExpr::Base | SchurExpr::DirectSum(_) => {}
        SchurExpr::Sym(r, c) | SchurExpr::Wedge(r, c) => {
            let dc = c.degree().unwrap_or(0) as usize;
            let chi = if matches!(expr, SchurExpr::Wedge(..)) { -1 } else { 1 };
            for b in 0..*r as usize {
                if b + 1 < *r as usize {
                    let mut images: Vec<usize> = (0..total).collect();
                    for x in 0..dc {
                        images[offset + b * dc + x] = offset + (b + 1) * dc + x;
                        images[offset + (b + 1) * dc + x] = offset + b * dc + x;
                    }
                    out.push((Permutation::from_images(images).expect("block swap"), chi));
                }
                collect(c, offset + b * dc, total, out);
            }
        }
        SchurExpr::Tensor(fs) => {
            let mut pos = offset;
            for f in fs {
                collect(f, pos, total, out);
                pos += f.degree().unwrap_or(0) as usize;
            }
        }
    }
}

/// A relation of the source that the lift does not respect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearFailure {
    pub generator: Permutation,
    pub character: i64,
    /// Nonzero image of `(p - chi) e_1 (x) ... (x) e_d`, keyed by canonical tuples.
    pub residual: Vec<(Vec<u32>, i64)>,
}

/// `Ok(())` iff `lift` descends from `src` to `dst` at every rank.
pub fn multilinear_descent(lift: &PermutationSum, src: &SchurExpr, dst: &SchurExpr) -> Result<(), MultilinearFailure> {
    let d = lift.degree();
    let t0: Vec<u32> = (0..d as u32).collect();
    for (g, chi) in relation_generators(src) {
        let moved = g.permute(&t0);
        let mut acc: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        for (p, c) in lift.terms() {
            if let Some((s, k)) = canonical_key(dst, &p.permute(&moved)) {
                *acc.entry(k).or_insert(0) += c * s as i64;
            }
            if let Some((s, k)) = canonical_key(dst, &p.permute(&t0)) {
                *acc.entry(k).or_insert(0) -= chi * c * s as i64;
            }
        }
        let residual: Vec<(Vec<u32>, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        if !residual.is_empty() {
            return Err(MultilinearFailure { generator: g, character: chi, residual });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_schur_expr;

    #[test]
    fn generators_of_nested_symmetric_square() {
        // inner swaps in both copies plus the outer block swap
        let g = relation_generators(&parse_schur_expr("S^2(S^2(M))").unwrap());
        assert_eq!(g.len(), 3);
        assert!(g.iter().all(|(_, chi)| *chi == 1));
        assert_eq!(relation_generators(&parse_schur_expr("W^3(M)").unwrap()).len(), 2);
    }

    #[test]
    fn canonical_keys() {
        let e = parse_schur_expr("W^2(M)").unwrap();
        assert_eq!(canonical_key(&e, &[1, 0]), Some((-1, alloc::vec![0, 1])));
        assert_eq!(canonical_key(&e, &[1, 1]), None);
    }

    #[test]
    fn identity_descends_only_towards_coarser_quotients() {
        let s2 = parse_schur_expr("S^2(M)").unwrap();
        let t2 = parse_schur_expr("M (x) M").unwrap();
        let id = PermutationSum::identity(2);
        assert!(multilinear_descent(&id, &t2, &s2).is_ok());
        assert!(multilinear_descent(&id, &s2, &t2).is_err());
    }
}
