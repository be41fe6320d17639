use num_traits::Zero;

use super::Poly;
use crate::qnum::HahnFrame;
use crate::scalar::Scalar;

/// `Y_n(x) = ∏_{j=0}^{n-1} (x - ω[j]_q)`
pub fn y_basis(n: usize, frame: &HahnFrame) -> Poly {
    (0..n as i64).fold(Poly::one(), |acc, j| {
        &acc * &Poly::linear_root(frame.omega() * frame.bracket(j))
    })
}

/// Materialized triangular change of basis between `x^n` and `Y_n`, up to a
/// degree bound that grows on demand.
#[derive(Clone, Debug)]
pub struct YBasis {
    frame: HahnFrame,
    polys: Vec<Poly>,
}

impl YBasis {
    pub fn new(frame: &HahnFrame, max_degree: usize) -> Self {
        let mut b = YBasis {
            frame: frame.clone(),
            polys: vec![Poly::one()],
        };
        b.reserve(max_degree);
        b
    }

    pub fn frame(&self) -> &HahnFrame {
        &self.frame
    }

    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }

    /// Extends the table through `Y_max_degree`.
    pub fn reserve(&mut self, max_degree: usize) {
        while self.polys.len() <= max_degree {
            let n = self.polys.len() - 1;
            let root = self.frame.omega() * self.frame.bracket(n as i64);
            let next = &self.polys[n] * &Poly::linear_root(root);
            self.polys.push(next);
        }
    }

    /// `Y_n`; panics past the materialized bound.
    pub fn get(&self, n: usize) -> &Poly {
        &self.polys[n]
    }

    /// Coordinates `c_k` with `f = Σ c_k Y_k`, by back-substitution from the
    /// top degree (each `Y_k` is monic).
    pub fn to_y_basis(&self, f: &Poly) -> Vec<Scalar> {
        let Some(deg) = f.degree() else {
            return Vec::new();
        };
        assert!(deg <= self.max_degree(), "degree {deg} beyond basis bound");
        let mut rest: Vec<Scalar> = f.coeffs().to_vec();
        let mut out = vec![Scalar::zero(); deg + 1];
        for k in (0..=deg).rev() {
            let c = std::mem::take(&mut rest[k]);
            if c.is_zero() {
                continue;
            }
            for (j, yc) in self.polys[k].coeffs().iter().enumerate().take(k) {
                rest[j] -= &c * yc;
            }
            out[k] = c;
        }
        out
    }

    pub fn from_y_basis(&self, coords: &[Scalar]) -> Poly {
        coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Poly::zero(), |acc, (k, c)| &acc + &self.polys[k].scale(c))
    }
}
