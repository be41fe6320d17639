//! Exact-arithmetic engine for moment functionals satisfying the Pearson-type
//! equation `D_{q,ω}(φu) = ψu` built on Hahn's operator.
//!
//! Everything is computed over ℚ with arbitrary precision, so every identity
//! the crate checks is an exact equality:
//!
//! - [`qnum`]: q-brackets, q-binomials, the `[n,k]_{q,ω}` numbers and the
//!   scalar sequences `d_n`, `e_n`, `k_n`.
//! - [`poly`]: dense polynomials, Hahn's operator `D_{q,ω}`, the shift
//!   `L_{q,ω}`, their starred duals and the monic Newton basis `Y_n`.
//! - [`functional`]: moment functionals stored as `Y_n` moments, together
//!   with their distributional operations.
//! - [`classical`]: regularity classification, recurrence coefficients and
//!   the generated monic orthogonal polynomials.
//! - [`rodrigues`]: the distributional Rodrigues-type formula and its
//!   verification.

pub mod classical;
pub mod error;
pub mod functional;
pub mod poly;
pub mod qnum;
pub mod rodrigues;
pub mod scalar;

pub use classical::{
    presets, Condition, PearsonPair, RecurrenceTable, RegularityFailure, RegularityReport,
};
pub use error::{Error, Result};
pub use functional::{MomentFunctional, DEFAULT_TABLE_DEGREE};
pub use poly::{Poly, YBasis};
pub use qnum::HahnFrame;
pub use rodrigues::RodriguesWitness;
pub use scalar::Scalar;
