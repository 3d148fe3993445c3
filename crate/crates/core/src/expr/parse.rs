use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::SchurExpr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprError {
    Syntax {
        position: usize,
        message: String,
    },
    /// A direct sum appeared below the top level.
    NestedDirectSum {
        position: usize,
    },
    /// A power of zero.
    ZeroPower {
        position: usize,
    },
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Syntax { position, message } => write!(f, "syntax error at position {}: {}", position, message),
            ExprError::NestedDirectSum { position } => {
                write!(f, "direct sum below the top level at position {}", position)
            }
            ExprError::ZeroPower { position } => write!(f, "power must be positive at position {}", position),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Base,
    Op(char),
    Caret,
    Open,
    Close,
    Times,
    Plus,
    Nat(u32),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        match c {
            '(' => {
                let mark = chars.get(i + 1).map(|x| x.1);
                if matches!(mark, Some('x') | Some('+')) && chars.get(i + 2).map(|x| x.1) == Some(')') {
                    out.push((at, if mark == Some('x') { Tok::Times } else { Tok::Plus }));
                    i += 3;
                    continue;
                }
                out.push((at, Tok::Open));
            }
            ')' => out.push((at, Tok::Close)),
            '^' => out.push((at, Tok::Caret)),
            'M' => out.push((at, Tok::Base)),
            'S' | 'W' | 'T' => out.push((at, Tok::Op(c))),
            '0'..='9' => {
                let mut v: u32 = 0;
                while let Some(&(_, d)) = chars.get(i) {
                    match d.to_digit(10) {
                        Some(x) => {
                            v = v
                                .checked_mul(10)
                                .and_then(|v| v.checked_add(x))
                                .ok_or(ExprError::Syntax { position: at, message: "number too large".into() })?;
                            i += 1;
                        }
                        None => break,
                    }
                }
                out.push((at, Tok::Nat(v)));
                continue;
            }
            other => {
                return Err(ExprError::Syntax {
                    position: at,
                    message: alloc::format!("unexpected character '{}'", other),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err(&self, message: &str) -> ExprError {
        ExprError::Syntax { position: self.offset(), message: message.to_string() }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ExprError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&alloc::format!("expected {}", what)))
        }
    }

    fn nat(&mut self) -> Result<u32, ExprError> {
        let at = self.offset();
        match self.peek() {
            Some(Tok::Nat(0)) => Err(ExprError::ZeroPower { position: at }),
            Some(Tok::Nat(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected a positive integer")),
        }
    }

    fn expr(&mut self) -> Result<SchurExpr, ExprError> {
        let mut summands = Vec::new();
        loop {
            match self.product()? {
                SchurExpr::DirectSum(inner) => summands.extend(inner),
                other => summands.push(other),
            }
            if self.peek() == Some(&Tok::Plus) {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(SchurExpr::direct_sum(summands))
    }

    fn product(&mut self) -> Result<SchurExpr, ExprError> {
        let start = self.offset();
        let mut factors = alloc::vec![self.factor()?];
        while self.peek() == Some(&Tok::Times) {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        if factors.len() > 1 && factors.iter().any(|f| f.is_direct_sum()) {
            return Err(ExprError::NestedDirectSum { position: start });
        }
        Ok(SchurExpr::tensor(factors))
    }

    fn factor(&mut self) -> Result<SchurExpr, ExprError> {
        let start = self.offset();
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) && self.toks.get(self.pos + 1).map(|t| &t.1) == Some(&Tok::Times) {
            self.pos += 2;
            let r = self.nat()?;
            if base.is_direct_sum() {
                return Err(ExprError::NestedDirectSum { position: start });
            }
            return Ok(base.tensor_power(r));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<SchurExpr, ExprError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Base) => {
                self.pos += 1;
                Ok(SchurExpr::Base)
            }
            Some(Tok::Op(op)) => {
                self.pos += 1;
                self.expect(Tok::Caret, "'^'")?;
                let r = self.nat()?;
                self.expect(Tok::Open, "'('")?;
                let inner = self.expr()?;
                self.expect(Tok::Close, "')'")?;
                if inner.is_direct_sum() {
                    return Err(ExprError::NestedDirectSum { position: at });
                }
                Ok(match op {
                    'S' => SchurExpr::sym(r, inner),
                    'W' => SchurExpr::wedge(r, inner),
                    _ => inner.tensor_power(r),
                })
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Tok::Close, "')'")?;
                Ok(inner)
            }
            _ => Err(self.err("expected 'M', 'S^', 'W^', 'T^' or '('")),
        }
    }
}

/// Parses the Schur-type DSL into its canonical AST.
pub fn parse_schur_expr(text: &str) -> Result<SchurExpr, ExprError> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0, end: text.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn nested_symmetric_power() {
        let e = parse_schur_expr("S^2(S^2(M))").unwrap();
        assert_eq!(e, SchurExpr::sym(2, SchurExpr::sym(2, SchurExpr::Base)));
    }

    #[test]
    fn tensor_power_sugar() {
        let e = parse_schur_expr("S^1(S^1(M) (x) W^1(M))^(x)2").unwrap();
        let inner = SchurExpr::sym(
            1,
            SchurExpr::Tensor(vec![SchurExpr::sym(1, SchurExpr::Base), SchurExpr::wedge(1, SchurExpr::Base)]),
        );
        assert_eq!(e, SchurExpr::Tensor(vec![inner.clone(), inner]));
        assert_eq!(parse_schur_expr("T^3(M)").unwrap(), SchurExpr::Tensor(vec![SchurExpr::Base; 3]));
        assert_eq!(parse_schur_expr("T^1(W^2(M))").unwrap(), SchurExpr::wedge(2, SchurExpr::Base));
        assert_eq!(parse_schur_expr("(M)^(x)1").unwrap(), SchurExpr::Base);
    }

    #[test]
    fn direct_sum_top_level() {
        let e = parse_schur_expr("W^2(M) (+) S^2(W^2(M))").unwrap();
        assert_eq!(
            e,
            SchurExpr::DirectSum(vec![
                SchurExpr::wedge(2, SchurExpr::Base),
                SchurExpr::sym(2, SchurExpr::wedge(2, SchurExpr::Base))
            ])
        );
        // a parenthesised sum that is itself a top-level summand is flattened
        assert_eq!(parse_schur_expr("(M (+) M) (+) M").unwrap(), SchurExpr::DirectSum(vec![SchurExpr::Base; 3]));
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(parse_schur_expr(" S ^ 2 ( M ( x ) M ) ").unwrap(), parse_schur_expr("S^2(M(x)M)").unwrap());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_schur_expr("S^2(M (+) M)"), Err(ExprError::NestedDirectSum { .. })));
        assert!(matches!(parse_schur_expr("(M (+) M) (x) M"), Err(ExprError::NestedDirectSum { .. })));
        assert!(matches!(parse_schur_expr("(M (+) M)^(x)2"), Err(ExprError::NestedDirectSum { .. })));
        assert_eq!(parse_schur_expr("S^0(M)"), Err(ExprError::ZeroPower { position: 2 }));
        assert!(matches!(parse_schur_expr("S^2(M"), Err(ExprError::Syntax { position: 5, .. })));
        assert!(matches!(parse_schur_expr("Q"), Err(ExprError::Syntax { position: 0, .. })));
        assert!(matches!(parse_schur_expr("M M"), Err(ExprError::Syntax { position: 2, .. })));
        assert!(matches!(parse_schur_expr(""), Err(ExprError::Syntax { .. })));
    }
}
