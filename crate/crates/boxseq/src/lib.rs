//! Exact-arithmetic toolkit for minimal vector sequences in the unit box.
//!
//! A sequence of vectors in `[-1,1]^d` is *minimal* when its total sum lies
//! in the box but no proper subsequence of size >= 2 has its sum there. The
//! longest possible length of such a sequence, `tau(d)`, connects vector
//! balancing with the non-redundant subadditivity constraints of integer
//! programming. This crate constructs, rearranges, decomposes, and verifies
//! such sequences with exact rational arithmetic throughout: every claim is
//! an equality or strict inequality over arbitrary-precision fractions, and
//! no floating point appears anywhere.
//!
//! The main entry points:
//!
//! * [`verify::is_tau_witness`] / [`verify::min_box_subset`] — exhaustive
//!   minimality verdicts with explicit witnesses.
//! * [`steinitz::steinitz_order`] — rearranges a zero-sum multiset so every
//!   prefix sum stays in `d * [-1,1]^d`, with exact chain certificates.
//! * [`decompose::decompose`] — given a long sequence with sum in the box,
//!   extracts a proper subsequence with sum in the box; guaranteed above
//!   `4 (2d)^d` elements.
//! * [`signmatrix`] / [`search`] — ±1 matrix certificates (kernel and scaled
//!   inverse contracts) with exhaustive or seeded hill-climbing providers.
//! * [`construct`] — the three lower-bound sequence generators.
//!
//! The book under `book/` walks through the concepts; its code snippets are
//! compiled and run by `cargo test --doc` via the [`guide`] module.

pub mod construct;
pub mod decompose;
pub mod error;
pub mod matrix;
pub mod rational;
pub mod search;
pub mod sequence;
pub mod signmatrix;
pub mod simplex;
pub mod steinitz;
pub mod vector;
pub mod verify;

pub use error::{Error, Result};
pub use rational::BigRat;
pub use sequence::VectorSequence;
pub use vector::QVector;

/// The book chapters, included so `cargo test --doc` keeps every snippet in
/// the guide compiling and passing against the current API.
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    pub mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/sequences-and-witnesses.md")]
    pub mod sequences_and_witnesses {}
    #[doc = include_str!("../../../book/src/steinitz-orderings.md")]
    pub mod steinitz_orderings {}
    #[doc = include_str!("../../../book/src/decomposition.md")]
    pub mod decomposition {}
    #[doc = include_str!("../../../book/src/sign-matrices.md")]
    pub mod sign_matrices {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    pub mod constructions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
