//! q-combinatorics over ℚ: brackets, factorials, binomials, the
//! `[n,k]_{q,ω}` numbers and the scalar sequences attached to a Pearson pair.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::classical::PearsonPair;
use crate::error::{Error, Result};
use crate::scalar::{self, int, Scalar};

/// The parameters `(q, ω)` of Hahn's operator.
///
/// Over ℚ the excluded set reduces to `q ∈ {0, -1}` (the only rational roots
/// of unity other than 1) together with the degenerate point `(q, ω) = (1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FrameRepr", into = "FrameRepr")]
pub struct HahnFrame {
    q: Scalar,
    omega: Scalar,
}

#[derive(Serialize, Deserialize)]
struct FrameRepr {
    #[serde(with = "scalar::serde_rational")]
    q: Scalar,
    #[serde(with = "scalar::serde_rational")]
    omega: Scalar,
}

impl TryFrom<FrameRepr> for HahnFrame {
    type Error = Error;

    fn try_from(r: FrameRepr) -> Result<Self> {
        HahnFrame::new(r.q, r.omega)
    }
}

impl From<HahnFrame> for FrameRepr {
    fn from(f: HahnFrame) -> Self {
        FrameRepr {
            q: f.q,
            omega: f.omega,
        }
    }
}

impl HahnFrame {
    pub fn new(q: Scalar, omega: Scalar) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidFrame("q must be nonzero".into()));
        }
        if q == -Scalar::one() {
            return Err(Error::InvalidFrame("q = -1 is a root of unity".into()));
        }
        if q.is_one() && omega.is_zero() {
            return Err(Error::InvalidFrame(
                "(q, omega) = (1, 0) is excluded; omega must be nonzero when q = 1".into(),
            ));
        }
        Ok(HahnFrame { q, omega })
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn omega(&self) -> &Scalar {
        &self.omega
    }

    /// `ω₀ = ω/(1-q)`, defined only for `q ≠ 1`.
    pub fn omega0(&self) -> Option<Scalar> {
        if self.q.is_one() {
            None
        } else {
            Some(&self.omega / (Scalar::one() - &self.q))
        }
    }

    /// The frame `(1/q, -ω/q)` of the starred operators.
    pub fn reciprocal(&self) -> HahnFrame {
        HahnFrame {
            q: self.q.recip(),
            omega: -(&self.omega / &self.q),
        }
    }

    /// `q^n` for any integer `n`.
    pub fn q_pow(&self, n: i64) -> Scalar {
        scalar::pow(&self.q, n).expect("frame guarantees q != 0")
    }

    /// `[n]_q` for any integer `n`.
    pub fn bracket(&self, n: i64) -> Scalar {
        q_bracket(n, &self.q).expect("frame guarantees q != 0")
    }
}

/// `[n]_q = (q^n - 1)/(q - 1)`, or `n` when `q = 1`.
pub fn q_bracket(n: i64, q: &Scalar) -> Result<Scalar> {
    if q.is_one() {
        return Ok(int(n));
    }
    if q.is_zero() && n < 0 {
        return Err(Error::Domain(format!("[{n}]_q is undefined at q = 0")));
    }
    let qn = scalar::pow(q, n)?;
    Ok((qn - Scalar::one()) / (q - Scalar::one()))
}

/// `[n]_q! = [1]_q [2]_q ⋯ [n]_q`.
pub fn q_factorial(n: usize, q: &Scalar) -> Scalar {
    (1..=n as i64)
        .map(|j| q_bracket(j, q).expect("nonnegative index"))
        .fold(Scalar::one(), |acc, b| acc * b)
}

/// Gaussian binomial, built from the recursion
/// `[n k] = q^{n-k}[n-1 k-1] + [n-1 k]` so it stays defined even where a
/// factorial in the quotient form would vanish.
pub fn q_binomial(n: usize, k: usize, q: &Scalar) -> Result<Scalar> {
    if k > n {
        return Err(Error::Domain(format!(
            "q-binomial needs k <= n (n = {n}, k = {k})"
        )));
    }
    let mut row = vec![Scalar::one()];
    for m in 1..=n {
        let mut next = vec![Scalar::zero(); m + 1];
        next[0] = Scalar::one();
        next[m] = Scalar::one();
        for j in 1..m {
            let shifted = scalar::pow(q, (m - j) as i64)? * &row[j - 1];
            next[j] = shifted + &row[j];
        }
        row = next;
    }
    Ok(row.swap_remove(k))
}

/// `[n,k]_{q,ω} = ω^k Σ_{j=0}^{n-1-k} C(k+j, j) q^j`; zero when `n ≤ k`.
pub fn hahn_number(n: usize, k: usize, q: &Scalar, omega: &Scalar) -> Scalar {
    if n <= k {
        return Scalar::zero();
    }
    let mut sum = Scalar::zero();
    let mut binom = BigInt::one();
    let mut qj = Scalar::one();
    for j in 0..(n - k) {
        if j > 0 {
            binom = binom * BigInt::from(k + j) / BigInt::from(j);
            qj *= q;
        }
        sum += Scalar::from_integer(binom.clone()) * &qj;
    }
    scalar::pow(omega, k as i64).expect("nonnegative exponent") * sum
}

/// `d_n = d q^n + a [n]_q`. Negative `n` uses the same rational formula.
pub fn d_n(pair: &PearsonPair, frame: &HahnFrame, n: i64) -> Scalar {
    pair.d() * frame.q_pow(n) + pair.a() * frame.bracket(n)
}

/// `e_n = e q^n + (ω d_n + b) [n]_q`.
pub fn e_n(pair: &PearsonPair, frame: &HahnFrame, n: i64) -> Scalar {
    let inner = frame.omega() * d_n(pair, frame, n) + pair.b();
    pair.e() * frame.q_pow(n) + inner * frame.bracket(n)
}

/// `k_n = q^{n(n-3)/2} ∏_{j=0}^{n-1} d_{n+j-1}^{-1}`.
pub fn rodrigues_constant(pair: &PearsonPair, frame: &HahnFrame, n: usize) -> Result<Scalar> {
    let n = n as i64;
    let mut k = frame.q_pow(n * (n - 3) / 2);
    for j in 0..n {
        let idx = n + j - 1;
        let dj = d_n(pair, frame, idx);
        if dj.is_zero() {
            return Err(Error::NotAdmissible {
                index: idx as usize,
            });
        }
        k /= dj;
    }
    Ok(k)
}
