//! Exact computations for conic-line (CL) arrangements in the projective
//! plane over the rationals.
//!
//! A CL arrangement is a union of distinct lines and smooth conics in P^2.
//! This crate decides freeness of the module of logarithmic derivations,
//! computes the exponents or a minimal free resolution when the module is
//! not free, evaluates local singularity invariants (Milnor and Tjurina
//! numbers per Galois cluster), builds combinatorial invariants, and
//! certifies freeness through addition-deletion steps for lines and conics.
//!
//! Everything is exact: coefficients live in Q (arbitrary precision), all
//! decisions reduce to Groebner basis computations, and no floating point
//! is involved anywhere.
//!
//! The `examples/` directory is the main tour of the API; each example is
//! runnable with `cargo run --example <name>`. A thin CLI binary (`clfree`)
//! exposes `analyze`, `certify` and `compare` over arrangement JSON files.

pub mod addel;
pub mod arrangement;
pub mod clusters;
pub mod combinatorics;
pub mod error;
pub mod factor;
pub mod freeness;
pub mod groebner;
pub mod hilbert;
pub mod local;
pub mod multirestrict;
pub mod parse;
pub mod poly;
pub mod q;
pub mod report;
pub mod resolve;
pub mod restrict;
pub mod ring;

pub use arrangement::{Arrangement, Curve, CurveKind};
pub use error::Error;
pub use poly::Poly;
pub use q::Q;
pub use ring::{Mono, Order, Ring};
