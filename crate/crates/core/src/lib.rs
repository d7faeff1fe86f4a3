//! Exact verification of Gamma-product identities over
//! irreducible root systems.
//!
//! For a root system `R` with simple roots `α_i`, the products
//!
//! ```text
//! γ(R, α_i)   = ∏_{α>0} γ((α|ρ)/h)^{-(α_i|α)}           (simply laced)
//! γ'(R, α_i)  = ∏_{α>0} γ((α|ρ∨)/h)^{-(α_i|α∨)}
//! γ''(R, α_i) = ∏_{α>0} γ((α|ρ)/h∨)^{-(α_i∨|α)}
//! ```
//!
//! with `γ(x) = Γ(x)/Γ(1-x)` reduce to elementary constants
//! `n_i k^{-1/h}`, `n_i∨ k'^{-1/h}` and `n_i∨∨ k''^{-1/h∨}`. This crate builds
//! each side exactly and proves the equality with a rational certificate over
//! the lattice of reflection and multiplication relations, with an
//! independent arbitrary-precision numeric check alongside.
//!
//! Module map:
//!
//! - [`exact`]: rationals and factored constants `∏ p^{e_p} π^{e_π}`
//! - [`rootsys`]: root systems, marks, comarks, Weyl vectors
//! - [`gammaword`]: symbolic γ-products on a `1/N` grid
//! - [`prover`]: the relation lattice and certificates
//! - [`numeric`]: `ln Γ` to arbitrary precision
//! - [`identity`]: the identities themselves and the verification driver
//! - [`cli`]: the `gamma-roots` command-line front end

pub mod cli;
pub mod exact;
pub mod gammaword;
pub mod identity;
mod linalg;
pub mod numeric;
pub mod prover;
pub mod rootsys;

pub use exact::{FactoredConstant, Rational};
pub use identity::{Mode, Status, Variant, VerificationReport, Verifier};
pub use gammaword::GammaWord;
pub use numeric::{PrecisionContext, Real};
pub use prover::{Certificate, Lattice, Relation};
pub use rootsys::{build, Family, RootSystem, RootSystemId};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("base must be positive, got {0}")]
    NonPositiveBase(String),
    #[error("argument {0} is not strictly between 0 and 1")]
    OutOfUnitInterval(String),
    #[error("precision must be at least 10 digits, got {0}")]
    Precision(u32),
    #[error("{family}{rank} is not an admissible root system")]
    InadmissibleSystem { family: Family, rank: u32 },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("zero vector has no coroot")]
    ZeroVector,
    #[error("invalid simple roots: {0}")]
    InvalidSimpleRoots(String),
    #[error("root closure exceeded {0} roots")]
    RootClosureDiverged(usize),
    #[error("simple root index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("variant F requires a simply-laced root system (A, D, E); {0} is not simply laced")]
    NotSimplyLaced(RootSystemId),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}
