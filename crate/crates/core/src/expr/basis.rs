use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::SchurExpr;

/// Canonical basis element of `S(F)`, shaped like the expression.
///
/// Leaves are 1-based indices into the basis of `F`. Children of a `Sym`
/// node are weakly increasing, children of a `Wedge` node strictly
/// increasing. The derived order is the recursive lexicographic order used
/// everywhere to index matrices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisLabel {
    Leaf(u32),
    Sym(Vec<BasisLabel>),
    Wedge(Vec<BasisLabel>),
    Tensor(Vec<BasisLabel>),
    /// Label inside the `k`-th (1-based) summand of a direct sum.
    Summand(u32, Box<BasisLabel>),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, tag: &str, xs: &[BasisLabel]) -> fmt::Result {
            write!(f, "{}[", tag)?;
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x)?;
            }
            write!(f, "]")
        }
        match self {
            BasisLabel::Leaf(i) => write!(f, "{}", i),
            BasisLabel::Sym(xs) => list(f, "S", xs),
            BasisLabel::Wedge(xs) => list(f, "W", xs),
            BasisLabel::Tensor(xs) => list(f, "T", xs),
            BasisLabel::Summand(k, l) => write!(f, "{}:{}", k, l),
        }
    }
}

/// All weakly (`strict = false`) or strictly increasing sequences of
/// length `r` over `0..m`, in lexicographic order.
pub(crate) fn increasing_sequences(m: usize, r: usize, strict: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(m: usize, r: usize, strict: bool, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(m, r, strict, if strict { i + 1 } else { i }, cur, out);
            cur.pop();
        }
    }
    rec(m, r, strict, 0, &mut cur, &mut out);
    out
}

/// Cartesian product in lexicographic order (first coordinate slowest).
pub(crate) fn cartesian(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        let mut next = Vec::with_capacity(out.len() * s);
        for prefix in &out {
            for i in 0..s {
                let mut v = prefix.clone();
                v.push(i);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// The canonical basis of `S(F)` for `F` free of rank `n`, sorted.
///
/// Direct sums concatenate the bases of their summands.
pub fn enumerate_basis(expr: &SchurExpr, n: u32) -> Vec<BasisLabel> {
    match expr {
        SchurExpr::Base => (1..=n).map(BasisLabel::Leaf).collect(),
        SchurExpr::Sym(r, c) | SchurExpr::Wedge(r, c) => {
            let child = enumerate_basis(c, n);
            let strict = matches!(expr, SchurExpr::Wedge(..));
            increasing_sequences(child.len(), *r as usize, strict)
                .into_iter()
                .map(|seq| {
                    let xs = seq.into_iter().map(|i| child[i].clone()).collect();
                    if strict {
                        BasisLabel::Wedge(xs)
                    } else {
                        BasisLabel::Sym(xs)
                    }
                })
                .collect()
        }
        SchurExpr::Tensor(fs) => {
            let bases: Vec<Vec<BasisLabel>> = fs.iter().map(|f| enumerate_basis(f, n)).collect();
            let sizes: Vec<usize> = bases.iter().map(|b| b.len()).collect();
            cartesian(&sizes)
                .into_iter()
                .map(|idx| BasisLabel::Tensor(idx.iter().zip(&bases).map(|(&i, b)| b[i].clone()).collect()))
                .collect()
        }
        SchurExpr::DirectSum(ss) => ss
            .iter()
            .enumerate()
            .flat_map(|(k, s)| {
                enumerate_basis(s, n).into_iter().map(move |l| BasisLabel::Summand(k as u32 + 1, Box::new(l)))
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn leaves(xs: &[u32]) -> Vec<BasisLabel> {
        xs.iter().map(|&i| BasisLabel::Leaf(i)).collect()
    }

    #[test]
    fn symmetric_square_rank_two() {
        let b = enumerate_basis(&SchurExpr::sym(2, SchurExpr::Base), 2);
        assert_eq!(
            b,
            vec![BasisLabel::Sym(leaves(&[1, 1])), BasisLabel::Sym(leaves(&[1, 2])), BasisLabel::Sym(leaves(&[2, 2]))]
        );
    }

    #[test]
    fn exterior_square_rank_three() {
        let b = enumerate_basis(&SchurExpr::wedge(2, SchurExpr::Base), 3);
        let shown: Vec<_> = b.iter().map(|l| l.to_string()).collect();
        assert_eq!(shown, ["W[1,2]", "W[1,3]", "W[2,3]"]);
    }

    #[test]
    fn plethysm_enumeration_matches_hand_count() {
        // multisets of size 2 over {(11),(12),(22)}: 3 + 2 + 1 = 6
        let b = enumerate_basis(&SchurExpr::sym(2, SchurExpr::sym(2, SchurExpr::Base)), 2);
        let shown: Vec<_> = b.iter().map(|l| l.to_string()).collect();
        assert_eq!(
            shown,
            [
                "S[S[1,1],S[1,1]]",
                "S[S[1,1],S[1,2]]",
                "S[S[1,1],S[2,2]]",
                "S[S[1,2],S[1,2]]",
                "S[S[1,2],S[2,2]]",
                "S[S[2,2],S[2,2]]"
            ]
        );
    }

    #[test]
    fn direct_sum_labels() {
        let e = super::super::parse_schur_expr("W^2(M) (+) M").unwrap();
        let shown: Vec<_> = enumerate_basis(&e, 2).iter().map(|l| l.to_string()).collect();
        assert_eq!(shown, ["1:W[1,2]", "2:1", "2:2"]);
    }

    #[test]
    fn sequences() {
        assert_eq!(increasing_sequences(3, 2, true), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(increasing_sequences(2, 3, true).len(), 0);
        assert_eq!(increasing_sequences(2, 2, false).len(), 3);
        assert_eq!(cartesian(&[2, 3]).len(), 6);
        assert_eq!(cartesian(&[2, 0]).len(), 0);
    }
}
