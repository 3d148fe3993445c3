//! Schur-type expressions: the AST, its degree and rank, and a small DSL.
//!
//! ```text
//! expr    := product ( "(+)" product )*
//! product := factor ( "(x)" factor )*
//! factor  := primary [ "^(x)" nat ]
//! primary := "M" | ("S" | "W" | "T") "^" nat "(" expr ")" | "(" expr ")"
//! ```
//!
//! `T^r(e)` and `e^(x)r` are sugar for an `r`-fold tensor product of
//! copies of `e` and never appear in the AST.

pub(crate) mod basis;
mod parse;

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

pub use basis::{enumerate_basis, BasisLabel};
pub use parse::{parse_schur_expr, ExprError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SchurExpr {
    /// The base module `M`.
    Base,
    Sym(u32, Box<SchurExpr>),
    Wedge(u32, Box<SchurExpr>),
    /// At least two factors.
    Tensor(Vec<SchurExpr>),
    /// At least two summands; only ever at the top level.
    DirectSum(Vec<SchurExpr>),
}

/// Binomial coefficient `C(a, b)`; panics if the result overflows `u128`.
pub fn binomial(a: u128, b: u128) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        // acc * (a - i) is divisible by (i + 1)
        acc = acc.checked_mul(a - i).expect("binomial overflows u128") / (i + 1);
    }
    acc
}

impl SchurExpr {
    pub fn sym(r: u32, child: SchurExpr) -> SchurExpr {
        SchurExpr::Sym(r, Box::new(child))
    }

    pub fn wedge(r: u32, child: SchurExpr) -> SchurExpr {
        SchurExpr::Wedge(r, Box::new(child))
    }

    /// Tensor product; a single factor is returned unchanged.
    pub fn tensor(mut factors: Vec<SchurExpr>) -> SchurExpr {
        assert!(!factors.is_empty(), "empty tensor product");
        if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            SchurExpr::Tensor(factors)
        }
    }

    /// `r`-fold tensor power.
    pub fn tensor_power(self, r: u32) -> SchurExpr {
        assert!(r > 0, "zero tensor power");
        SchurExpr::tensor((0..r).map(|_| self.clone()).collect())
    }

    /// Direct sum; a single summand is returned unchanged.
    pub fn direct_sum(mut summands: Vec<SchurExpr>) -> SchurExpr {
        assert!(!summands.is_empty(), "empty direct sum");
        if summands.len() == 1 {
            summands.pop().unwrap()
        } else {
            SchurExpr::DirectSum(summands)
        }
    }

    /// Checks the structural invariants: positive powers, at least two
    /// tensor factors or summands, direct sums only at the top.
    pub fn validate(&self) -> Result<(), ExprError> {
        fn inner(e: &SchurExpr, top: bool) -> Result<(), ExprError> {
            match e {
                SchurExpr::Base => Ok(()),
                SchurExpr::Sym(r, c) | SchurExpr::Wedge(r, c) => {
                    if *r == 0 {
                        return Err(ExprError::ZeroPower { position: 0 });
                    }
                    inner(c, false)
                }
                SchurExpr::Tensor(fs) => {
                    if fs.len() < 2 {
                        return Err(ExprError::Syntax {
                            position: 0,
                            message: "tensor product needs two factors".into(),
                        });
                    }
                    fs.iter().try_for_each(|f| inner(f, false))
                }
                SchurExpr::DirectSum(ss) => {
                    if !top {
                        return Err(ExprError::NestedDirectSum { position: 0 });
                    }
                    if ss.len() < 2 {
                        return Err(ExprError::Syntax { position: 0, message: "direct sum needs two summands".into() });
                    }
                    ss.iter().try_for_each(|s| inner(s, false))
                }
            }
        }
        inner(self, true)
    }

    pub fn is_direct_sum(&self) -> bool {
        matches!(self, SchurExpr::DirectSum(_))
    }

    /// The summands of a direct sum, or the expression itself.
    pub fn summands(&self) -> &[SchurExpr] {
        match self {
            SchurExpr::DirectSum(ss) => ss,
            other => core::slice::from_ref(other),
        }
    }

    /// Degree `d` of the epimorphism `M^{(x)d} -> S(M)`; `None` for a direct sum.
    pub fn degree(&self) -> Option<u32> {
        match self {
            SchurExpr::Base => Some(1),
            SchurExpr::Sym(r, c) | SchurExpr::Wedge(r, c) => Some(r * c.degree()?),
            SchurExpr::Tensor(fs) => fs.iter().map(|f| f.degree()).sum(),
            SchurExpr::DirectSum(_) => None,
        }
    }

    /// Degrees of each summand.
    pub fn degrees(&self) -> Vec<u32> {
        self.summands().iter().map(|s| s.degree().expect("nested direct sum")).collect()
    }

    /// Rank of `S(F)` for `F` free of rank `n`.
    pub fn rank(&self, n: u64) -> u128 {
        match self {
            SchurExpr::Base => n as u128,
            SchurExpr::Sym(r, c) => {
                let m = c.rank(n);
                if m == 0 {
                    0
                } else {
                    binomial(m + *r as u128 - 1, *r as u128)
                }
            }
            SchurExpr::Wedge(r, c) => binomial(c.rank(n), *r as u128),
            SchurExpr::Tensor(fs) => {
                fs.iter().try_fold(1u128, |acc, f| acc.checked_mul(f.rank(n))).expect("rank overflows u128")
            }
            SchurExpr::DirectSum(ss) => ss.iter().map(|s| s.rank(n)).sum(),
        }
    }

    /// Ranks of each summand.
    pub fn ranks(&self, n: u64) -> Vec<u128> {
        self.summands().iter().map(|s| s.rank(n)).collect()
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            SchurExpr::Base => 1,
            SchurExpr::Sym(_, c) | SchurExpr::Wedge(_, c) => 1 + c.size(),
            SchurExpr::Tensor(xs) | SchurExpr::DirectSum(xs) => 1 + xs.iter().map(|x| x.size()).sum::<usize>(),
        }
    }
}

impl fmt::Display for SchurExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn factor(e: &SchurExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match e {
                SchurExpr::Tensor(_) | SchurExpr::DirectSum(_) => write!(f, "({})", e),
                _ => write!(f, "{}", e),
            }
        }
        match self {
            SchurExpr::Base => write!(f, "M"),
            SchurExpr::Sym(r, c) => write!(f, "S^{}({})", r, c),
            SchurExpr::Wedge(r, c) => write!(f, "W^{}({})", r, c),
            SchurExpr::Tensor(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " (x) ")?;
                    }
                    factor(x, f)?;
                }
                Ok(())
            }
            SchurExpr::DirectSum(ss) => {
                for (i, x) in ss.iter().enumerate() {
                    if i > 0 {
                        write!(f, " (+) ")?;
                    }
                    write!(f, "{}", x)?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn eq1(r: u32, n: u32, m: u32) -> SchurExpr {
        SchurExpr::sym(
            r,
            SchurExpr::tensor(vec![SchurExpr::sym(n, SchurExpr::Base), SchurExpr::wedge(m, SchurExpr::Base)]),
        )
        .tensor_power(2)
    }

    #[test]
    fn degree_examples() {
        assert_eq!(SchurExpr::Base.degree(), Some(1));
        assert_eq!(SchurExpr::sym(2, SchurExpr::sym(2, SchurExpr::Base)).degree(), Some(4));
        for (r, n, m) in [(1, 1, 1), (2, 3, 1), (3, 2, 2)] {
            assert_eq!(eq1(r, n, m).degree(), Some(2 * r * (n + m)));
        }
        let sum = parse_schur_expr("W^2(M) (+) S^3(M)").unwrap();
        assert_eq!(sum.degree(), None);
        assert_eq!(sum.degrees(), vec![2, 3]);
    }

    #[test]
    fn rank_examples() {
        let s2s2 = SchurExpr::sym(2, SchurExpr::sym(2, SchurExpr::Base));
        assert_eq!(s2s2.rank(2), 6);
        assert_eq!(SchurExpr::sym(2, SchurExpr::wedge(2, SchurExpr::Base)).rank(2), 1);
        assert_eq!(SchurExpr::sym(4, SchurExpr::Base).rank(2), 5);
        assert_eq!(SchurExpr::wedge(3, SchurExpr::Base).rank(2), 0);
        assert_eq!(SchurExpr::sym(2, SchurExpr::wedge(3, SchurExpr::Base)).rank(2), 0);
        assert_eq!(parse_schur_expr("W^2(M) (+) S^2(M)").unwrap().rank(3), 3 + 6);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }

    #[test]
    fn formatting() {
        assert_eq!(SchurExpr::sym(2, SchurExpr::Base).to_string(), "S^2(M)");
        assert_eq!(SchurExpr::Tensor(vec![SchurExpr::Base, SchurExpr::Base]).to_string(), "M (x) M");
        assert_eq!(eq1(1, 1, 1).to_string(), "S^1(S^1(M) (x) W^1(M)) (x) S^1(S^1(M) (x) W^1(M))");
        let nested =
            SchurExpr::Tensor(vec![SchurExpr::Base, SchurExpr::Tensor(vec![SchurExpr::Base, SchurExpr::Base])]);
        assert_eq!(nested.to_string(), "M (x) (M (x) M)");
    }

    #[test]
    fn validation() {
        assert!(SchurExpr::sym(0, SchurExpr::Base).validate().is_err());
        let nested = SchurExpr::sym(2, SchurExpr::DirectSum(vec![SchurExpr::Base, SchurExpr::Base]));
        assert!(matches!(nested.validate(), Err(ExprError::NestedDirectSum { .. })));
        assert!(eq1(2, 1, 1).validate().is_ok());
    }
}
