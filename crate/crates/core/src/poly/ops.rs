use num_traits::{One, Zero};

use super::Poly;
use crate::qnum::{hahn_number, q_binomial, HahnFrame};
use crate::scalar::Scalar;

/// `L_{q,ω} f(x) = f(qx + ω)`
pub fn op_l(f: &Poly, frame: &HahnFrame) -> Poly {
    f.compose_affine(frame.q(), frame.omega())
}

/// `L*_{q,ω} f(x) = f((x - ω)/q)`, the inverse of [`op_l`].
pub fn op_l_star(f: &Poly, frame: &HahnFrame) -> Poly {
    op_l(f, &frame.reciprocal())
}

/// `L^n_{q,ω}` for any integer `n`; negative powers iterate `L*`.
pub fn op_l_pow(f: &Poly, frame: &HahnFrame, n: i64) -> Poly {
    let step = if n < 0 {
        frame.reciprocal()
    } else {
        frame.clone()
    };
    (0..n.unsigned_abs()).fold(f.clone(), |acc, _| op_l(&acc, &step))
}

/// Hahn's operator `(f(qx+ω) - f(x)) / ((q-1)x + ω)`, evaluated by exact
/// polynomial division.
pub fn op_d(f: &Poly, frame: &HahnFrame) -> Poly {
    let numer = &op_l(f, frame) - f;
    let divisor = Poly::from_coeffs(vec![frame.omega().clone(), frame.q() - Scalar::one()]);
    let (quot, rem) = numer.div_rem(&divisor);
    assert!(
        rem.is_zero(),
        "Hahn difference quotient left a remainder: {rem}"
    );
    debug_assert_eq!(quot, op_d_by_expansion(f, frame));
    quot
}

/// `D_{q,ω}` through the monomial rule `D x^n = Σ_k [n,k]_{q,ω} x^{n-1-k}`.
pub fn op_d_by_expansion(f: &Poly, frame: &HahnFrame) -> Poly {
    let Some(deg) = f.degree() else {
        return Poly::zero();
    };
    if deg == 0 {
        return Poly::zero();
    }
    let mut out = vec![Scalar::zero(); deg];
    for (n, c) in f.coeffs().iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        for k in 0..n {
            out[n - 1 - k] += c * hahn_number(n, k, frame.q(), frame.omega());
        }
    }
    Poly::from_coeffs(out)
}

/// `D*_{q,ω} = D_{1/q, -ω/q}`
pub fn op_d_star(f: &Poly, frame: &HahnFrame) -> Poly {
    op_d(f, &frame.reciprocal())
}

/// `D^n_{q,ω} f`
pub fn op_d_iter(f: &Poly, frame: &HahnFrame, n: usize) -> Poly {
    (0..n).fold(f.clone(), |acc, _| op_d(&acc, frame))
}

/// Right-hand side of the q-Leibniz rule
/// `D^n(fg) = Σ_k [n k]_q L^k(D^{n-k} f) · D^k g`.
pub fn leibniz_expand(f: &Poly, g: &Poly, frame: &HahnFrame, n: usize) -> Poly {
    (0..=n).fold(Poly::zero(), |acc, k| {
        let coeff = q_binomial(n, k, frame.q()).expect("k <= n");
        let left = op_l_pow(&op_d_iter(f, frame, n - k), frame, k as i64);
        let right = op_d_iter(g, frame, k);
        &acc + &(&left * &right).scale(&coeff)
    })
}
