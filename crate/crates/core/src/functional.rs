//! Moment functionals stored as their moments against the Newton basis
//! `Y_n`, and the distributional operations acting on them.
//!
//! A table `y[0..=M]` determines `⟨u, f⟩` for every `f` of degree at most
//! `M`; pairing past that bound is an error, never a silent zero. Every
//! operation computes the exact validity window of its result.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::classical::PearsonPair;
use crate::error::{Error, Result};
use crate::poly::{Poly, YBasis};
use crate::qnum::{d_n, e_n, HahnFrame};
use crate::rodrigues::phi_product;
use crate::scalar::{self, Scalar};

/// Moment-table length used when callers do not ask for a specific one.
pub const DEFAULT_TABLE_DEGREE: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MomentTableRepr", into = "MomentTableRepr")]
pub struct MomentFunctional {
    frame: HahnFrame,
    y: Vec<Scalar>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct MomentTableRepr {
    frame: HahnFrame,
    basis: String,
    #[serde(with = "scalar::serde_rational_vec")]
    moments: Vec<Scalar>,
    max_degree: usize,
}

impl TryFrom<MomentTableRepr> for MomentFunctional {
    type Error = Error;

    fn try_from(r: MomentTableRepr) -> Result<Self> {
        if r.basis != "Y" {
            return Err(Error::Domain(format!(
                "unsupported moment basis {:?}",
                r.basis
            )));
        }
        if r.moments.len() != r.max_degree + 1 {
            return Err(Error::Domain(format!(
                "maxDegree {} does not match {} stored moments",
                r.max_degree,
                r.moments.len()
            )));
        }
        MomentFunctional::new(r.frame, r.moments)
    }
}

impl From<MomentFunctional> for MomentTableRepr {
    fn from(u: MomentFunctional) -> Self {
        MomentTableRepr {
            max_degree: u.max_degree(),
            frame: u.frame,
            basis: "Y".into(),
            moments: u.y,
        }
    }
}

impl MomentFunctional {
    /// `y[n] = ⟨u, Y_n⟩` for `0 ≤ n ≤ y.len() - 1`.
    pub fn new(frame: HahnFrame, y: Vec<Scalar>) -> Result<Self> {
        if y.is_empty() {
            return Err(Error::Domain("a moment table needs at least y[0]".into()));
        }
        Ok(MomentFunctional { frame, y })
    }

    pub fn frame(&self) -> &HahnFrame {
        &self.frame
    }

    pub fn moments(&self) -> &[Scalar] {
        &self.y
    }

    /// Largest `n` for which `⟨u, Y_n⟩` is known.
    pub fn max_degree(&self) -> usize {
        self.y.len() - 1
    }

    pub fn is_nonzero_up_to(&self, n: usize) -> bool {
        self.y.iter().take(n + 1).any(|v| !v.is_zero())
    }

    /// Copy with `y[n]` replaced.
    pub fn with_moment(&self, n: usize, value: Scalar) -> Self {
        let mut out = self.clone();
        out.y[n] = value;
        out
    }

    pub fn truncated(&self, max_degree: usize) -> Self {
        let mut out = self.clone();
        out.y.truncate(max_degree + 1);
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        MomentFunctional {
            frame: self.frame.clone(),
            y: self.y.iter().map(|v| v * c).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Self> {
        if self.frame != other.frame {
            return Err(Error::FrameMismatch);
        }
        let y = self.y.iter().zip(&other.y).map(|(a, b)| op(a, b)).collect();
        MomentFunctional::new(self.frame.clone(), y)
    }

    /// First index in the shared valid range where the tables differ.
    pub fn first_disagreement(&self, other: &Self) -> Option<usize> {
        if self.frame != other.frame {
            return Some(0);
        }
        self.y.iter().zip(&other.y).position(|(a, b)| a != b)
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_disagreement(other).is_none()
    }

    /// `⟨u, f⟩`
    pub fn pair(&self, f: &Poly) -> Result<Scalar> {
        let Some(deg) = f.degree() else {
            return Ok(Scalar::zero());
        };
        self.check_window(deg)?;
        self.pair_in(&YBasis::new(&self.frame, deg), f)
    }

    fn pair_in(&self, basis: &YBasis, f: &Poly) -> Result<Scalar> {
        if let Some(deg) = f.degree() {
            self.check_window(deg)?;
        }
        Ok(basis
            .to_y_basis(f)
            .iter()
            .zip(&self.y)
            .map(|(c, y)| c * y)
            .sum())
    }

    fn check_window(&self, deg: usize) -> Result<()> {
        if deg > self.max_degree() {
            return Err(Error::InsufficientMoments {
                needed: deg,
                available: self.max_degree(),
            });
        }
        Ok(())
    }

    /// Power moments `⟨u, x^n⟩` over the valid range.
    pub fn power_moments(&self) -> Vec<Scalar> {
        let basis = YBasis::new(&self.frame, self.max_degree());
        (0..=self.max_degree())
            .map(|n| {
                self.pair_in(&basis, &Poly::monomial(Scalar::one(), n))
                    .expect("within window")
            })
            .collect()
    }

    /// `y'[n] = factor · ⟨u, image(Y_n)⟩` for `n ≤ new_max`, straight from
    /// the pairing. Kept as the reference route for the sparse operators.
    #[cfg(test)]
    fn transform(&self, new_max: usize, factor: &Scalar, image: impl Fn(&Poly) -> Poly) -> Self {
        let basis = YBasis::new(&self.frame, new_max.max(self.max_degree()));
        let y = (0..=new_max)
            .map(|n| factor * self.pair_in(&basis, &image(basis.get(n))).expect("window"))
            .collect();
        MomentFunctional {
            frame: self.frame.clone(),
            y,
        }
    }

    fn with_moments(&self, y: Vec<Scalar>) -> Self {
        MomentFunctional {
            frame: self.frame.clone(),
            y,
        }
    }

    /// `⟨x u, Y_n⟩ = y[n+1] + ω[n]_q y[n]`, from `x Y_n = Y_{n+1} + ω[n]_q Y_n`.
    fn times_x(&self) -> Self {
        let w = self.frame.omega();
        let y = (0..self.max_degree())
            .map(|n| &self.y[n + 1] + w * self.frame.bracket(n as i64) * &self.y[n])
            .collect();
        self.with_moments(y)
    }

    /// `⟨f u, g⟩ = ⟨u, f g⟩`; the window shrinks by `deg f`.
    pub fn left_multiply(&self, f: &Poly) -> Result<Self> {
        let Some(deg) = f.degree() else {
            return Ok(self.scale(&Scalar::zero()));
        };
        self.check_window(deg)?;
        let mut acc = self.scale(&f.coeff(deg));
        for j in (0..deg).rev() {
            acc = acc.times_x();
            let c = f.coeff(j);
            for (a, y) in acc.y.iter_mut().zip(&self.y) {
                *a += &c * y;
            }
        }
        Ok(acc)
    }

    /// `⟨D_{q,ω} u, f⟩ = -q^{-1} ⟨u, D*_{q,ω} f⟩`. Since `D* = L* D` and
    /// `D Y_n = [n]_q Y_{n-1}`, this is `-[n]_q ⟨L u, Y_{n-1}⟩`; the window
    /// grows by one.
    pub fn dist_d(&self) -> Self {
        let lu = self.dist_l();
        let mut y = Vec::with_capacity(self.y.len() + 1);
        y.push(Scalar::zero());
        for (n, v) in lu.y.into_iter().enumerate() {
            y.push(-self.frame.bracket(n as i64 + 1) * v);
        }
        self.with_moments(y)
    }

    /// `⟨D*_{q,ω} u, f⟩ = -q ⟨u, D_{q,ω} f⟩`, so `y'[n] = -q [n]_q y[n-1]`.
    pub fn dist_d_star(&self) -> Self {
        let q = self.frame.q();
        let mut y = Vec::with_capacity(self.y.len() + 1);
        y.push(Scalar::zero());
        for (n, v) in self.y.iter().enumerate() {
            y.push(-(q * self.frame.bracket(n as i64 + 1)) * v);
        }
        self.with_moments(y)
    }

    /// Coefficient `ω[n-1]_q + ω/q` in `L Y_n = q^n (Y_n + (ω[n-1]_q + ω/q) Y_{n-1})`.
    fn shift_coupling(&self, n: usize) -> Scalar {
        let w = self.frame.omega();
        w * self.frame.bracket(n as i64 - 1) + w / self.frame.q()
    }

    /// `⟨L_{q,ω} u, f⟩ = q^{-1} ⟨u, L*_{q,ω} f⟩`, computed as the inverse of
    /// the bidiagonal map [`Self::dist_l_star`].
    pub fn dist_l(&self) -> Self {
        let mut y: Vec<Scalar> = Vec::with_capacity(self.y.len());
        for (n, v) in self.y.iter().enumerate() {
            let mut next = v / self.frame.q_pow(n as i64 + 1);
            if n > 0 {
                next -= self.shift_coupling(n) * &y[n - 1];
            }
            y.push(next);
        }
        self.with_moments(y)
    }

    /// `⟨L*_{q,ω} u, f⟩ = q ⟨u, L_{q,ω} f⟩`, so
    /// `y'[n] = q^{n+1} (y[n] + (ω[n-1]_q + ω/q) y[n-1])`.
    pub fn dist_l_star(&self) -> Self {
        let y = (0..self.y.len())
            .map(|n| {
                let mut v = self.y[n].clone();
                if n > 0 {
                    v += self.shift_coupling(n) * &self.y[n - 1];
                }
                self.frame.q_pow(n as i64 + 1) * v
            })
            .collect();
        self.with_moments(y)
    }

    pub fn dist_d_pow(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |acc, _| acc.dist_d())
    }

    pub fn dist_d_star_pow(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |acc, _| acc.dist_d_star())
    }

    pub fn dist_l_pow(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |acc, _| acc.dist_l())
    }
}

/// Moments of the solution of `D_{q,ω}(φu) = ψu` with `⟨u, 1⟩ = y0`, from
/// the three-term moment recurrence
/// `d_n y_{n+1} + (e_n + ω[n]_q d_{n-1}) y_n + [n]_q (c + ω e_{n-1}) y_{n-1} = 0`.
pub fn solve_moments(
    pair: &PearsonPair,
    frame: &HahnFrame,
    y0: Scalar,
    max_degree: usize,
) -> Result<MomentFunctional> {
    let mut y = Vec::with_capacity(max_degree + 1);
    y.push(y0);
    for n in 0..max_degree {
        let ni = n as i64;
        let dn = d_n(pair, frame, ni);
        if dn.is_zero() {
            return Err(Error::NotAdmissible { index: n });
        }
        let mut rhs = -(e_n(pair, frame, ni) * &y[n]);
        if n > 0 {
            let br = frame.bracket(ni);
            rhs -= frame.omega() * &br * d_n(pair, frame, ni - 1) * &y[n];
            rhs -= br * (pair.c() + frame.omega() * e_n(pair, frame, ni - 1)) * &y[n - 1];
        }
        y.push(rhs / dn);
    }
    MomentFunctional::new(frame.clone(), y)
}

/// `⟨D(φu) - ψu, Y_n⟩` for `0 ≤ n ≤ max_n`, evaluated straight from the
/// operator definitions.
pub fn pearson_residual(
    pair: &PearsonPair,
    u: &MomentFunctional,
    max_n: usize,
) -> Result<Vec<Scalar>> {
    let lhs = u.left_multiply(&pair.phi())?.dist_d();
    let rhs = u.left_multiply(&pair.psi())?;
    let available = lhs.max_degree().min(rhs.max_degree());
    if max_n > available {
        return Err(Error::InsufficientMoments {
            needed: max_n,
            available,
        });
    }
    Ok((0..=max_n).map(|n| &lhs.y[n] - &rhs.y[n]).collect())
}

/// `u^{[k]} = L_{q,ω}(φ u^{[k-1]})`, by iterating the definition.
pub fn derived_functional(
    pair: &PearsonPair,
    u: &MomentFunctional,
    k: usize,
) -> Result<MomentFunctional> {
    let phi = pair.phi();
    let mut cur = u.clone();
    for _ in 0..k {
        cur = cur.left_multiply(&phi)?.dist_l();
    }
    Ok(cur)
}

/// `u^{[k]} = Φ(·;k) L^k_{q,ω} u`, the closed-form route to the same functional.
pub fn derived_functional_closed_form(
    pair: &PearsonPair,
    u: &MomentFunctional,
    k: usize,
) -> Result<MomentFunctional> {
    u.dist_l_pow(k)
        .left_multiply(&phi_product(pair, u.frame(), k))
}
