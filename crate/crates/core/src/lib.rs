//! Exact bi-order computations on braided Thompson groups.
//!
//! The crate decides the bi-order of the pure braided Thompson group `BF`
//! together with every ingredient it is built from:
//!
//! * [`ncseries`]: truncated noncommutative power series over an integer
//!   coefficient ring, the codomain of the Magnus expansion;
//! * [`freegroup`]: free-group words, Magnus expansion, deviation and the
//!   Magnus ordering, simple commutators and the doubling map `θᵢ`;
//! * [`braid`]: braid words, the Artin action, strand surgery, the Artin
//!   combing of pure braids and their bi-order;
//! * [`trees`]: binary trees, Thompson's group `F` as tree pairs and its
//!   slope order;
//! * [`braided`]: tree–braid–tree triples (`BV`, `BF`, `PBV`);
//! * [`order`]: the lexicographic bi-order on `BF`.
//!
//! Series are generic over their coefficient type; [`Series`] is the
//! arbitrary-precision instantiation used throughout the order machinery and
//! [`Series64`] a machine-word one for small experiments.

pub mod braid;
pub mod braided;
mod error;
pub mod freegroup;
pub mod gen;
mod letter;
pub mod ncseries;
pub mod order;
pub mod trees;

pub use braid::{BandLetter, BraidWord, Combing, Permutation};
pub use braided::{BvElement, Class, VImage};
pub use error::{Error, Result};
pub use freegroup::{Deviation, FreeWord, Sign};
pub use letter::Letter;
pub use ncseries::{Coefficient, Monomial, NcSeries};
pub use order::{OrderVerdict, Relation, Witness};
pub use trees::{Dyadic, DyadicInterval, Tree, TreePair};

/// Series with arbitrary-precision integer coefficients.
pub type Series = NcSeries<num_bigint::BigInt>;

/// Series with `i64` coefficients. Overflow panics in debug builds, so keep
/// words and caps small.
pub type Series64 = NcSeries<i64>;
