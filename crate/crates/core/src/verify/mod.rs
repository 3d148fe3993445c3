//! Executable checks of the identities satisfied by Schur-type functors and
//! the canonical maps, each producing a [`Verdict`].

mod det;
mod scalars;
mod sequences;
mod wedge;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

pub use det::{check_det_identity, det_exponent, DetMode, SymbolicBudget};
pub use scalars::{
    check_rank_identity, conjecture_row, expected_phi_scalar, expected_q_varphi_scalar, explore_phi_conjecture,
    verify_phi_scalars, verify_theorem_4_3, ConjectureRow,
};
pub use sequences::{check_complex, check_exactness_localized, verify_theorem_5_2, verify_theorem_5_4, Inverted};
pub use wedge::{check_wedge_factorization, random_unimodular, wedge_coefficient};

use crate::functor::FunctorError;
use crate::linalg::{ExactMatrix, LinalgError};
use crate::maps::MapError;
use crate::ring::RingElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Verified,
    NotScalar,
    Refuted,
    DescentFailed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::NotScalar => "not_scalar",
            Status::Refuted => "refuted",
            Status::DescentFailed => "descent_failed",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Structured, ordered evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Bool(bool),
    Int(i128),
    Text(String),
    List(Vec<Evidence>),
    Map(Vec<(String, Evidence)>),
}

impl Evidence {
    pub fn map<K: Into<String>>(entries: impl IntoIterator<Item = (K, Evidence)>) -> Evidence {
        Evidence::Map(entries.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn list<T: Into<Evidence>>(items: impl IntoIterator<Item = T>) -> Evidence {
        Evidence::List(items.into_iter().map(Into::into).collect())
    }

    /// Looks up a key of a map.
    pub fn get(&self, key: &str) -> Option<&Evidence> {
        match self {
            Evidence::Map(entries) => entries.iter().find(|(k, _)| k == key).map(|(_, v)| v),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Evidence::Bool(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i128> {
        match self {
            Evidence::Int(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Evidence::Text(s) => Some(s),
            _ => None,
        }
    }

    /// The rows of a matrix as lists of scalar strings.
    pub fn matrix(m: &ExactMatrix) -> Evidence {
        Evidence::List((0..m.rows()).map(|i| Evidence::list(m.row(i).iter().map(|e| e.to_string()))).collect())
    }
}

impl From<bool> for Evidence {
    fn from(b: bool) -> Self {
        Evidence::Bool(b)
    }
}

macro_rules! int_evidence {
    ($($t:ty),*) => {$(
        impl From<$t> for Evidence {
            fn from(v: $t) -> Self {
                Evidence::Int(v as i128)
            }
        }
    )*};
}
int_evidence!(i32, i64, u32, u64, usize, i128);

impl From<u128> for Evidence {
    fn from(v: u128) -> Self {
        i128::try_from(v).map(Evidence::Int).unwrap_or_else(|_| Evidence::Text(v.to_string()))
    }
}

impl From<&str> for Evidence {
    fn from(s: &str) -> Self {
        Evidence::Text(s.to_string())
    }
}

impl From<String> for Evidence {
    fn from(s: String) -> Self {
        Evidence::Text(s)
    }
}

impl From<&RingElement> for Evidence {
    fn from(e: &RingElement) -> Self {
        Evidence::Text(e.to_string())
    }
}

/// Outcome of one check: a claim, its parameters, a status and evidence.
///
/// Refuted and descent-failed verdicts carry a `witness` evidence entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub claim_id: String,
    pub parameters: Vec<(String, String)>,
    pub status: Status,
    pub evidence: Vec<(String, Evidence)>,
}

impl Verdict {
    pub fn new(claim_id: &str) -> Verdict {
        Verdict {
            claim_id: claim_id.to_string(),
            parameters: Vec::new(),
            status: Status::Verified,
            evidence: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Verdict {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    pub fn record(&mut self, key: &str, value: impl Into<Evidence>) {
        self.evidence.push((key.to_string(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Evidence> {
        self.evidence.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn witness(&self) -> Option<&Evidence> {
        self.get("witness")
    }

    /// Marks the verdict as failed with `status` unless it already failed
    /// more severely; the first witness is kept.
    pub fn fail(&mut self, status: Status, witness: Evidence) {
        if self.status == Status::Verified {
            self.record("witness", witness);
        }
        if status > self.status {
            self.status = status;
        }
    }

    /// Embeds `sub` under `name`; a failing gating sub-verdict fails this one
    /// and its witness is forwarded.
    pub fn absorb(&mut self, name: &str, sub: Verdict, gating: bool) {
        if gating && sub.status != Status::Verified {
            let w = sub.witness().cloned().unwrap_or(Evidence::Text(sub.status.to_string()));
            self.fail(sub.status, Evidence::map([("check", Evidence::from(name)), ("witness", w)]));
        }
        self.record(name, sub.to_evidence());
    }

    pub fn to_evidence(&self) -> Evidence {
        let mut entries = alloc::vec![("status".to_string(), Evidence::from(self.status.as_str()))];
        if !self.parameters.is_empty() {
            entries.push((
                "parameters".to_string(),
                Evidence::Map(self.parameters.iter().map(|(k, v)| (k.clone(), Evidence::from(v.as_str()))).collect()),
            ));
        }
        entries.extend(self.evidence.iter().cloned());
        Evidence::Map(entries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyError {
    /// `m * d` is not divisible by `n` for some summand.
    NotDivisible {
        m: u128,
        d: u32,
        n: u64,
    },
    /// Symbolic mode refused: the induced matrix or the variable count exceeds the budget.
    OverBudget {
        dimension: usize,
        variables: usize,
        budget: SymbolicBudget,
    },
    InvalidParameter(String),
    Map(MapError),
    Functor(FunctorError),
    Linalg(LinalgError),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::NotDivisible { m, d, n } => {
                write!(f, "rank times degree is not divisible by n: m = {}, d = {}, n = {}", m, d, n)
            }
            VerifyError::OverBudget { dimension, variables, budget } => write!(
                f,
                "symbolic mode refused: dimension {} over {} indeterminates exceeds the budget ({} / {})",
                dimension, variables, budget.max_dimension, budget.max_variables
            ),
            VerifyError::InvalidParameter(m) => write!(f, "{}", m),
            VerifyError::Map(e) => write!(f, "{}", e),
            VerifyError::Functor(e) => write!(f, "{}", e),
            VerifyError::Linalg(e) => write!(f, "{}", e),
        }
    }
}

impl From<MapError> for VerifyError {
    fn from(e: MapError) -> Self {
        VerifyError::Map(e)
    }
}

impl From<FunctorError> for VerifyError {
    fn from(e: FunctorError) -> Self {
        VerifyError::Functor(e)
    }
}

impl From<LinalgError> for VerifyError {
    fn from(e: LinalgError) -> Self {
        VerifyError::Linalg(e)
    }
}

/// Records a scalar check `m = expected * I`; empty spaces pass vacuously.
pub(crate) fn scalar_check(name: &str, m: &ExactMatrix, expected: &RingElement) -> Verdict {
    let mut v = Verdict::new(name);
    v.record("dimension", m.rows());
    if m.rows() == 0 && m.cols() == 0 {
        v.record("vacuous", true);
        return v;
    }
    match m.scalar_multiple_of_identity() {
        Some(c) => {
            v.record("scalar", &c);
            if &c != expected {
                v.fail(Status::Refuted, Evidence::map([("scalar", Evidence::from(&c)), ("expected", expected.into())]));
            }
        }
        None => {
            v.record("scalar", Evidence::Bool(false));
            v.fail(Status::NotScalar, first_off_scalar(m));
        }
    }
    v
}

/// The first entry showing that `m` is not a scalar matrix.
fn first_off_scalar(m: &ExactMatrix) -> Evidence {
    if !m.is_square() {
        return Evidence::map([("rows", Evidence::from(m.rows())), ("cols", Evidence::from(m.cols()))]);
    }
    let c = m.get(0, 0);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let e = m.get(i, j);
            if (i == j && e != c) || (i != j && !e.is_zero()) {
                return Evidence::map([
                    ("row", Evidence::from(i + 1)),
                    ("col", Evidence::from(j + 1)),
                    ("value", Evidence::from(e)),
                    ("diagonal_00", Evidence::from(c)),
                ]);
            }
        }
    }
    Evidence::Text("empty".to_string())
}
