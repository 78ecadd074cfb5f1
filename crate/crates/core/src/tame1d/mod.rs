//! Definable subsets of the line in a d-minimal setting.
//!
//! A [`Tame1DSet`] is `(U ∖ H) ∪ Z` where `U` is a finite union of nondegenerate
//! intervals, `H ⊂ int U` a closed-in-`U` zero-dimensional set of holes and `Z` a
//! zero-dimensional set disjoint from `cl U`. Zero-dimensional parts are chain forests
//! ([`ZeroDimSet`]). Holes are what make complements and interiors representable:
//! the complement of `{2⁻ⁿ} ∪ {0}` is the line with those points punched out.

mod interval;
mod parse;
mod rat;
mod set;
mod stratify;
mod zerodim;

use thiserror::Error;

pub use interval::{Cells, Interval};
pub use parse::parse_set;
pub use rat::{fmt_rat, int, parse_rat, rat, ExtRat, Rat};
pub use set::{Dim, SetView, Tame1DSet, Truncation};
pub use stratify::{stratify_line, verify_stratification, LineStratification, Stratum, FIXPOINT_CAP};
pub use zerodim::{Chain, Mode, Node, NodeView, ZeroDimSet, ENUM_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TameError {
    #[error("enumeration cap of {cap} anchors exceeded before a separation certificate was found")]
    EnumerationCapExceeded { cap: usize },
    #[error("no separation certificate: {0}")]
    NoSeparationCertificate(String),
    #[error("set has nonempty interior; subtract the interior first")]
    HasInterior,
    #[error("Cantor-Bendixson rank {rank} exceeds the requested number of layers {layers}")]
    RankExceeded { rank: usize, layers: usize },
    #[error("stratification did not reach a fixpoint within {cap} rounds; generators: {generators:?}")]
    FixpointCapExceeded { cap: usize, generators: Vec<String> },
    #[error("stratification failed verification: {0}")]
    VerificationFailed(String),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// `nested_chain(N)`: `{2⁻ⁿ} ∪ {0}` for `N = 1`, and for larger `N` the closed
/// dyadic chain carrying a scaled copy of `nested_chain(N−1)` at every anchor.
/// Its Cantor-Bendixson rank is `N + 1`.
pub fn nested_chain(n: usize) -> Tame1DSet {
    Tame1DSet::from_zerodim(nested_zerodim(n))
}

pub(crate) fn nested_zerodim(n: usize) -> ZeroDimSet {
    let mut t = ZeroDimSet::point(int(0));
    for _ in 0..n {
        t = ZeroDimSet::chain(Chain::new(int(0), int(1), rat(1, 2), t, true, false).expect("valid nested chain"));
    }
    t
}
