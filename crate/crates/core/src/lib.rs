//! Cyclic codes of arbitrary length over finite commutative chain rings.
//!
//! A cyclic code of length `n` over a chain ring `R` is an ideal of
//! `R[z]/(z^n - 1)`. This crate constructs such codes from generator
//! polynomials, computes their standard generating sets, torsion codes,
//! cardinality, Hamming distance and MDS status, and decides reversibility
//! (closure under coordinate reversal) by several independent routes that
//! can be cross-validated against brute-force oracles at small scale.
//!
//! With the default `parallel` feature, parameter sweeps and exhaustive
//! distance searches run on rayon; without it everything falls back to
//! sequential equivalents (the `*_seq` entry points are always available).

pub mod codes;
pub mod enumerate;
pub mod error;
pub mod golden;
pub mod metrics;
pub mod parse;
pub mod poly;
pub mod report;
pub mod reversibility;
pub mod ring;

pub use codes::{Cardinality, CodewordSet, CyclicCode, StandardGenSet, StdEntry, TorsionProfile};
pub use error::{Error, Result};
pub use poly::Poly;
pub use ring::{ChainRing, Family, RingElement};

/// Caps for exhaustive operations. Exceeding a cap yields an explicit error,
/// never an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Max ring order for element/unit iteration (unit-witness searches).
    pub element_iter: u64,
    /// Max number of codewords for full-code enumeration.
    pub codeword_enum: u64,
    /// Max number of torsion-code words for exhaustive distance search.
    pub distance_search: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            element_iter: 1 << 16,
            codeword_enum: 1 << 20,
            distance_search: 1 << 22,
        }
    }
}

impl Caps {
    /// One knob for everything.
    pub fn uniform(n: u64) -> Self {
        Caps {
            element_iter: n,
            codeword_enum: n,
            distance_search: n,
        }
    }
}
