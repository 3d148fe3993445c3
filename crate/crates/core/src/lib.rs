//! Exact computations with Schur-type functors on free modules.
//!
//! The crate is `no_std` (it needs `alloc`). It provides exact scalar rings
//! ([`ring`]), dense exact matrices ([`linalg`]), the expression language for
//! Schur-type functors ([`expr`]), the induced-map engine ([`functor`]), the
//! canonical maps between symmetric and exterior powers ([`maps`]), and
//! checks of the identities these maps satisfy ([`verify`]).

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod expr;
pub mod functor;
pub mod linalg;
pub mod maps;
pub mod ring;
pub mod verify;

pub use expr::{enumerate_basis, parse_schur_expr, BasisLabel, ExprError, SchurExpr};
pub use linalg::{ExactMatrix, LinalgError};
pub use ring::{Ring, RingElement, RingError, RingSpec};
