//! Classification and generation: admissibility and regularity of a
//! Pearson pair, the recurrence coefficients `β_n`, `γ_n`, the generated
//! monic polynomials and the auxiliary polynomials used in the proofs of
//! orthogonality (`ψ^{[k]}`, `θ₂`, `R_{n+1}`, `P_n^{[k]}`).

mod hankel;
pub mod presets;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::MomentFunctional;
use crate::poly::{op_d, op_d_iter, op_d_star, op_l, Poly};
use crate::qnum::{d_n, e_n, HahnFrame};
use crate::scalar::{self, Scalar};

pub use hankel::{determinant, hankel_determinant, hankel_matrix};

/// `φ(x) = ax² + bx + c`, `ψ(x) = dx + e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PairRepr", into = "PairRepr")]
pub struct PearsonPair {
    a: Scalar,
    b: Scalar,
    c: Scalar,
    d: Scalar,
    e: Scalar,
}

#[derive(Serialize, Deserialize)]
struct PairRepr {
    #[serde(with = "scalar::serde_rational")]
    a: Scalar,
    #[serde(with = "scalar::serde_rational")]
    b: Scalar,
    #[serde(with = "scalar::serde_rational")]
    c: Scalar,
    #[serde(with = "scalar::serde_rational")]
    d: Scalar,
    #[serde(with = "scalar::serde_rational")]
    e: Scalar,
}

impl TryFrom<PairRepr> for PearsonPair {
    type Error = Error;

    fn try_from(r: PairRepr) -> Result<Self> {
        PearsonPair::new(r.a, r.b, r.c, r.d, r.e)
    }
}

impl From<PearsonPair> for PairRepr {
    fn from(p: PearsonPair) -> Self {
        PairRepr {
            a: p.a,
            b: p.b,
            c: p.c,
            d: p.d,
            e: p.e,
        }
    }
}

impl PearsonPair {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar, e: Scalar) -> Result<Self> {
        if [&a, &b, &c, &d, &e].iter().all(|v| v.is_zero()) {
            return Err(Error::ZeroPair);
        }
        Ok(PearsonPair { a, b, c, d, e })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64, e: i64) -> Result<Self> {
        use scalar::int;
        PearsonPair::new(int(a), int(b), int(c), int(d), int(e))
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }
    pub fn b(&self) -> &Scalar {
        &self.b
    }
    pub fn c(&self) -> &Scalar {
        &self.c
    }
    pub fn d(&self) -> &Scalar {
        &self.d
    }
    pub fn e(&self) -> &Scalar {
        &self.e
    }

    pub fn phi(&self) -> Poly {
        Poly::from_coeffs(vec![self.c.clone(), self.b.clone(), self.a.clone()])
    }

    pub fn psi(&self) -> Poly {
        Poly::from_coeffs(vec![self.e.clone(), self.d.clone()])
    }

    /// Same `φ`, with `ψ` replaced by `dx + e`.
    pub fn with_psi(&self, d: Scalar, e: Scalar) -> Result<Self> {
        PearsonPair::new(self.a.clone(), self.b.clone(), self.c.clone(), d, e)
    }

    /// Same `ψ` and `a`, `b`, with a new constant term of `φ`.
    pub fn with_c(&self, c: Scalar) -> Result<Self> {
        PearsonPair::new(
            self.a.clone(),
            self.b.clone(),
            c,
            self.d.clone(),
            self.e.clone(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `d_n = 0`
    Admissibility,
    /// `φ(-e_n/d_{2n}) = 0`
    PhiRootCondition,
}

impl Condition {
    pub fn as_str(self) -> &'static str {
        match self {
            Condition::Admissibility => "admissibility",
            Condition::PhiRootCondition => "phi_root_condition",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityFailure {
    pub index: usize,
    pub condition: Condition,
}

impl std::fmt::Display for RegularityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.condition {
            Condition::Admissibility => write!(
                f,
                "admissibility at n={} (d_{} = 0)",
                self.index, self.index
            ),
            Condition::PhiRootCondition => write!(f, "phi_root_condition at n={}", self.index),
        }
    }
}

/// Outcome of a finite-horizon admissibility / regularity check. A report
/// never claims regularity beyond `regular_up_to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RegularityReport {
    /// Horizon `N` of the check.
    pub regular_up_to: usize,
    /// Highest index `j` for which `d_j ≠ 0` was examined.
    pub d_horizon: usize,
    pub admissible: bool,
    pub first_admissibility_failure: Option<usize>,
    /// `false` for admissibility-only reports.
    pub regularity_checked: bool,
    pub regular: bool,
    pub first_regularity_failure: Option<RegularityFailure>,
    pub psi_degree_one: bool,
}

fn first_zero_d(pair: &PearsonPair, frame: &HahnFrame, horizon: usize) -> Option<usize> {
    (0..=horizon).find(|&j| d_n(pair, frame, j as i64).is_zero())
}

/// Reports the first `n ≤ max_n` with `d_n = 0`, if any.
pub fn check_admissible(pair: &PearsonPair, frame: &HahnFrame, max_n: usize) -> RegularityReport {
    let failure = first_zero_d(pair, frame, max_n);
    RegularityReport {
        regular_up_to: max_n,
        d_horizon: max_n,
        admissible: failure.is_none(),
        first_admissibility_failure: failure,
        regularity_checked: false,
        regular: false,
        first_regularity_failure: None,
        psi_degree_one: !pair.d().is_zero(),
    }
}

/// `-e_n / d_{2n}`, the zero of `ψ^{[n]}`.
pub fn psi_root(pair: &PearsonPair, frame: &HahnFrame, n: usize) -> Result<Scalar> {
    let d2n = d_n(pair, frame, 2 * n as i64);
    if d2n.is_zero() {
        return Err(Error::NotAdmissible { index: 2 * n });
    }
    Ok(-e_n(pair, frame, n as i64) / d2n)
}

/// Checks `d_j ≠ 0` for `j ≤ 2N+1` and then `φ(-e_n/d_{2n}) ≠ 0` for
/// `n ≤ N`; this is exactly what the recurrence coefficients up to
/// `β_N`, `γ_{N+1}` need.
pub fn check_regular(pair: &PearsonPair, frame: &HahnFrame, max_n: usize) -> RegularityReport {
    let horizon = 2 * max_n + 1;
    let adm = first_zero_d(pair, frame, horizon);
    let failure = match adm {
        Some(j) => Some(RegularityFailure {
            index: j,
            condition: Condition::Admissibility,
        }),
        None => {
            let phi = pair.phi();
            (0..=max_n)
                .find(|&n| {
                    let r = psi_root(pair, frame, n).expect("admissible");
                    phi.eval(&r).is_zero()
                })
                .map(|n| RegularityFailure {
                    index: n,
                    condition: Condition::PhiRootCondition,
                })
        }
    };
    let report = RegularityReport {
        regular_up_to: max_n,
        d_horizon: horizon,
        admissible: adm.is_none(),
        first_admissibility_failure: adm,
        regularity_checked: true,
        regular: failure.is_none(),
        first_regularity_failure: failure,
        psi_degree_one: !pair.d().is_zero(),
    };
    // a regular pair has deg ψ = 1 and φ ≠ 0
    debug_assert!(!report.regular || (report.psi_degree_one && !pair.phi().is_zero()));
    report
}

/// `ψ^{[k]}(x) = d_{2k} x + e_k`
pub fn psi_k(pair: &PearsonPair, frame: &HahnFrame, k: usize) -> Poly {
    Poly::from_coeffs(vec![
        e_n(pair, frame, k as i64),
        d_n(pair, frame, 2 * k as i64),
    ])
}

/// `ψ^{[k]} = D_{q,ω}φ + q L_{q,ω} ψ^{[k-1]}`, iterated from `ψ^{[0]} = ψ`.
pub fn psi_k_iterated(pair: &PearsonPair, frame: &HahnFrame, k: usize) -> Poly {
    let dphi = op_d(&pair.phi(), frame);
    (0..k).fold(pair.psi(), |acc, _| {
        &dphi + &op_l(&acc, frame).scale(frame.q())
    })
}

/// `θ₂(x;n) = d_{2n} φ + q ψ^{[n]} ψ^{[n-1]}`, for `n ≥ 1`.
pub fn theta2(pair: &PearsonPair, frame: &HahnFrame, n: usize) -> Poly {
    assert!(n >= 1, "theta2 is defined for n >= 1");
    let d2n = d_n(pair, frame, 2 * n as i64);
    let prod = &psi_k(pair, frame, n) * &psi_k(pair, frame, n - 1);
    &pair.phi().scale(&d2n) + &prod.scale(frame.q())
}

/// Expanded coefficients of `θ₂(x;n)`:
/// `d_{2n}d_{2n-1} x² + d_{2n-1}((1+q)e_n - ω d_{2n}) x + c d_{2n} + q e_n e_{n-1}`.
pub fn theta2_explicit(pair: &PearsonPair, frame: &HahnFrame, n: usize) -> Poly {
    assert!(n >= 1, "theta2 is defined for n >= 1");
    let n = n as i64;
    let q = frame.q();
    let d2n = d_n(pair, frame, 2 * n);
    let d2n1 = d_n(pair, frame, 2 * n - 1);
    let en = e_n(pair, frame, n);
    let en1 = e_n(pair, frame, n - 1);
    let x2 = &d2n * &d2n1;
    let x1 = &d2n1 * ((Scalar::one() + q) * &en - frame.omega() * &d2n);
    let x0 = pair.c() * &d2n + q * &en * &en1;
    Poly::from_coeffs(vec![x0, x1, x2])
}

fn nonzero_d(pair: &PearsonPair, frame: &HahnFrame, j: i64) -> Result<Scalar> {
    let v = d_n(pair, frame, j);
    if v.is_zero() {
        return Err(Error::NotAdmissible { index: j as usize });
    }
    Ok(v)
}

/// `β_n = ω[n]_q + [n]_q e_{n-1}/d_{2n-2} - [n+1]_q e_n/d_{2n}`
pub fn beta(pair: &PearsonPair, frame: &HahnFrame, n: usize) -> Result<Scalar> {
    let ni = n as i64;
    let mut b = -(frame.bracket(ni + 1) * e_n(pair, frame, ni)) / nonzero_d(pair, frame, 2 * ni)?;
    if n > 0 {
        let bn = frame.bracket(ni);
        b += frame.omega() * &bn;
        b += bn * e_n(pair, frame, ni - 1) / nonzero_d(pair, frame, 2 * ni - 2)?;
    }
    Ok(b)
}

/// `γ_{n+1} = -q^n [n+1]_q d_{n-1} / (d_{2n-1} d_{2n+1}) · φ(-e_n/d_{2n})`.
///
/// At `n = 0` the factor `d_{-1}/d_{-1}` is taken as 1, giving
/// `γ_1 = -φ(-e/d)/(dq + a)`.
pub fn gamma_next(pair: &PearsonPair, frame: &HahnFrame, n: usize) -> Result<Scalar> {
    let ni = n as i64;
    let phi_val = pair.phi().eval(&psi_root(pair, frame, n)?);
    let mut g = -phi_val / nonzero_d(pair, frame, 2 * ni + 1)?;
    if n > 0 {
        g *= frame.q_pow(ni) * frame.bracket(ni + 1) * d_n(pair, frame, ni - 1);
        g /= nonzero_d(pair, frame, 2 * ni - 1)?;
    }
    Ok(g)
}

/// `β_n`, `γ_n` and the monic polynomials they generate.
///
/// `gamma[0]` holds the mass `⟨u, 1⟩` (1 unless set with
/// [`RecurrenceTable::with_mass`]), so that `⟨u, P_n²⟩ = gamma[0]·γ_1⋯γ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceTable {
    #[serde(with = "scalar::serde_rational_vec")]
    pub beta: Vec<Scalar>,
    #[serde(with = "scalar::serde_rational_vec")]
    pub gamma: Vec<Scalar>,
    pub polynomials: Vec<Poly>,
}

impl RecurrenceTable {
    /// Runs `P_{n+1} = (x - β_n) P_n - γ_n P_{n-1}` from `P_{-1} = 0`,
    /// `P_0 = 1`, producing `P_0 … P_{len(beta)}`.
    pub fn from_coefficients(beta: Vec<Scalar>, gamma: Vec<Scalar>) -> Self {
        assert_eq!(beta.len(), gamma.len());
        let mut polys = vec![Poly::one()];
        let mut prev = Poly::zero();
        for (n, b) in beta.iter().enumerate() {
            let cur = polys[n].clone();
            let mut next = &Poly::linear_root(b.clone()) * &cur;
            if n > 0 {
                next = &next - &prev.scale(&gamma[n]);
            }
            prev = cur;
            polys.push(next);
        }
        RecurrenceTable {
            beta,
            gamma,
            polynomials: polys,
        }
    }

    pub fn with_mass(mut self, mass: Scalar) -> Self {
        self.gamma[0] = mass;
        self
    }

    /// Largest `n` with `β_n` stored.
    pub fn depth(&self) -> usize {
        self.beta.len() - 1
    }

    pub fn poly(&self, n: usize) -> &Poly {
        &self.polynomials[n]
    }

    /// `gamma[0]·γ_1⋯γ_n`, the squared norm predicted by the recurrence.
    pub fn norm(&self, n: usize) -> Scalar {
        self.gamma[..=n]
            .iter()
            .fold(Scalar::one(), |acc, g| acc * g)
    }
}

/// Recurrence table through `β_N`, `γ_N` (and `P_{N+1}`), assuming only
/// admissibility. `γ_n` may vanish; the polynomials are still a simple set.
pub fn recurrence_admissible(
    pair: &PearsonPair,
    frame: &HahnFrame,
    max_n: usize,
) -> Result<RecurrenceTable> {
    let report = check_admissible(pair, frame, 2 * max_n + 1);
    if let Some(index) = report.first_admissibility_failure {
        return Err(Error::NotAdmissible { index });
    }
    let beta = (0..=max_n)
        .map(|n| beta(pair, frame, n))
        .collect::<Result<Vec<_>>>()?;
    let mut gamma = vec![Scalar::one()];
    for n in 1..=max_n {
        gamma.push(gamma_next(pair, frame, n - 1)?);
    }
    Ok(RecurrenceTable::from_coefficients(beta, gamma))
}

/// Recurrence table for a pair regular up to `max_n`.
pub fn recurrence(pair: &PearsonPair, frame: &HahnFrame, max_n: usize) -> Result<RecurrenceTable> {
    let report = check_regular(pair, frame, max_n);
    if !report.regular {
        return Err(Error::NotRegular(Box::new(report)));
    }
    recurrence_admissible(pair, frame, max_n)
}

/// `P_n^{[k]} = D^k P_{n+k} / ∏_{j=1}^k [n+j]_q` for every `n` the table allows.
pub fn derivative_sequence(table: &RecurrenceTable, frame: &HahnFrame, k: usize) -> Vec<Poly> {
    let total = table.polynomials.len();
    (0..total.saturating_sub(k))
        .map(|n| {
            let norm =
                (1..=k as i64).fold(Scalar::one(), |acc, j| acc * frame.bracket(n as i64 + j));
            op_d_iter(&table.polynomials[n + k], frame, k).scale(&norm.recip())
        })
        .collect()
}

/// `R_{n+1} = φ D*_{q,ω} Q_n + q ψ Q_n`
pub fn r_polynomial(pair: &PearsonPair, frame: &HahnFrame, q_n: &Poly) -> Poly {
    &(&pair.phi() * &op_d_star(q_n, frame)) + &(&pair.psi() * q_n).scale(frame.q())
}

/// `G[m][n] = ⟨u, P_m P_n⟩` for `m, n ≤ max_n`.
pub fn gram_matrix(u: &MomentFunctional, polys: &[Poly], max_n: usize) -> Result<Vec<Vec<Scalar>>> {
    if 2 * max_n > u.max_degree() {
        return Err(Error::InsufficientMoments {
            needed: 2 * max_n,
            available: u.max_degree(),
        });
    }
    let mut g = vec![vec![Scalar::zero(); max_n + 1]; max_n + 1];
    for m in 0..=max_n {
        for n in m..=max_n {
            let v = u.pair(&(&polys[m] * &polys[n]))?;
            g[n][m] = v.clone();
            g[m][n] = v;
        }
    }
    Ok(g)
}
