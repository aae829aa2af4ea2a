//! Exact computation of `f`-twisted Alexander matrices of finitely presented
//! quandles, their elementary ideals over group rings `Z[A]`, and low-degree
//! quandle homology.
//!
//! The crate is organised around the pipeline
//!
//! ```text
//! presentation / PD code ──> colorings ──> twisted matrix ──> elementary ideals
//!                                 │
//!                                 └──> cocycle weights / H2 ──> ideal comparison
//! ```
//!
//! All arithmetic is exact: ring coefficients are arbitrary-precision
//! integers (see [`Int`]), ideals over finite coefficient groups are integer
//! lattices in Hermite normal form, and the Laurent case (`A = Z`) is
//! reported as generators plus a one-variable gcd.

pub mod alexander;
pub mod homology;
pub mod intmat;
pub mod knots;
pub mod parse;
pub mod quandle;
pub mod ring;

/// Coefficient integer used throughout the domain layer. Minors and normal
/// forms overflow fixed-width integers quickly, so this is arbitrary
/// precision; the kernels in [`intmat`] stay generic over the scalar.
pub type Int = num_bigint::BigInt;

pub use alexander::{AlexanderPair, ElementaryIdeal, TwistedMatrix};
pub use homology::{Cocycle, HomologyResult};
pub use knots::{MarkedPresentation, PdCode};
pub use quandle::{FiniteQuandle, FreeQuandleElem, Presentation};
pub use ring::{AbelianGroup, GroupElem, GroupRingElem, IdealLattice};
