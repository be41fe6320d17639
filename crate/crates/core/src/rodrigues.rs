//! The distributional Rodrigues-type formula
//! `P_n u = k_n D^n_{1/q,-ω/q}(Φ(·;n) L^n_{q,ω} u)` and its exact check.
//!
//! `D_{1/q,-ω/q}` is [`MomentFunctional::dist_d_star`]; there is a single
//! implementation of the starred derivative.

use serde::{Deserialize, Serialize};

use crate::classical::{PearsonPair, RecurrenceTable};
use crate::error::{Error, Result};
use crate::functional::{derived_functional, MomentFunctional};
use crate::poly::{op_l_pow, Poly};
use crate::qnum::{rodrigues_constant, HahnFrame};
use crate::scalar::{self, Scalar};

/// Default number of `Y_m` test moments compared by [`verify_rodrigues`].
pub const DEFAULT_TEST_DEGREE: usize = 8;

/// `Φ(x;n) = ∏_{j=1}^n φ(q^j x + ω[j]_q) = ∏_{j=1}^n L^j φ`.
pub fn phi_product(pair: &PearsonPair, frame: &HahnFrame, n: usize) -> Poly {
    let phi = pair.phi();
    (1..=n as i64).fold(Poly::one(), |acc, j| &acc * &op_l_pow(&phi, frame, j))
}

/// Smallest moment-table degree for which both sides of the identity at
/// depth `n` are known through `Y_test_degree`.
pub fn required_moments(n: usize, phi_degree: usize, test_degree: usize) -> usize {
    // rhs window: M - n·deg φ + n, lhs window: M - n
    let rhs = (test_degree + n * phi_degree).saturating_sub(n);
    (test_degree + n).max(rhs).max(n * phi_degree)
}

/// `k_n D*^n (Φ(·;n) L^n u)`
pub fn rodrigues_rhs_closed_form(
    pair: &PearsonPair,
    u: &MomentFunctional,
    n: usize,
) -> Result<MomentFunctional> {
    let k = rodrigues_constant(pair, u.frame(), n)?;
    let inner = u
        .dist_l_pow(n)
        .left_multiply(&phi_product(pair, u.frame(), n))?;
    Ok(inner.dist_d_star_pow(n).scale(&k))
}

/// `k_n D*^n u^{[n]}` with `u^{[n]}` built by iterating `L(φ ·)`.
pub fn rodrigues_rhs_iterated(
    pair: &PearsonPair,
    u: &MomentFunctional,
    n: usize,
) -> Result<MomentFunctional> {
    let k = rodrigues_constant(pair, u.frame(), n)?;
    Ok(derived_functional(pair, u, n)?.dist_d_star_pow(n).scale(&k))
}

/// Right-hand side of the Rodrigues-type formula. Both routes are evaluated
/// and must agree on their common window.
pub fn rodrigues_rhs(
    pair: &PearsonPair,
    u: &MomentFunctional,
    n: usize,
) -> Result<MomentFunctional> {
    let closed = rodrigues_rhs_closed_form(pair, u, n)?;
    let iterated = rodrigues_rhs_iterated(pair, u, n)?;
    if let Some(index) = closed.first_disagreement(&iterated) {
        return Err(Error::RouteMismatch { index });
    }
    if closed.max_degree() != iterated.max_degree() {
        return Err(Error::RouteMismatch {
            index: closed.max_degree().min(iterated.max_degree()) + 1,
        });
    }
    Ok(closed)
}

/// `⟨P_n u, Y_m⟩` against `⟨rhs, Y_m⟩` for `m ≤ test_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RodriguesWitness {
    pub n: usize,
    #[serde(with = "scalar::serde_rational_vec")]
    pub lhs_moments: Vec<Scalar>,
    #[serde(with = "scalar::serde_rational_vec")]
    pub rhs_moments: Vec<Scalar>,
    #[serde(rename = "match")]
    pub matches: bool,
    pub first_mismatch: Option<usize>,
}

pub fn verify_rodrigues(
    pair: &PearsonPair,
    u: &MomentFunctional,
    table: &RecurrenceTable,
    n: usize,
    test_degree: usize,
) -> Result<RodriguesWitness> {
    let phi_deg = pair.phi().degree().unwrap_or(0);
    let needed = required_moments(n, phi_deg, test_degree);
    if u.max_degree() < needed {
        return Err(Error::InsufficientMoments {
            needed,
            available: u.max_degree(),
        });
    }
    if n >= table.polynomials.len() {
        return Err(Error::Domain(format!(
            "recurrence table stops at P_{}, cannot check n = {n}",
            table.polynomials.len() - 1
        )));
    }
    let lhs = u.left_multiply(table.poly(n))?;
    let rhs = rodrigues_rhs(pair, u, n)?;
    let window = lhs.max_degree().min(rhs.max_degree());
    debug_assert!(window >= test_degree);
    let lhs_moments = lhs.moments()[..=test_degree].to_vec();
    let rhs_moments = rhs.moments()[..=test_degree].to_vec();
    let first_mismatch = lhs_moments
        .iter()
        .zip(&rhs_moments)
        .position(|(a, b)| a != b);
    Ok(RodriguesWitness {
        n,
        lhs_moments,
        rhs_moments,
        matches: first_mismatch.is_none(),
        first_mismatch,
    })
}
