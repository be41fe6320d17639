#![allow(dead_code)]

use hahn_core::scalar::{int, ratio};
use hahn_core::{HahnFrame, MomentFunctional, Poly, Scalar};
use proptest::prelude::*;

pub fn frame_grid() -> Vec<HahnFrame> {
    let qs = [int(1), int(2), ratio(1, 2), ratio(3, 5), int(-2)];
    let ws = [int(0), int(1), ratio(-1, 3)];
    qs.iter()
        .flat_map(|q| ws.iter().map(move |w| (q.clone(), w.clone())))
        .filter_map(|(q, w)| HahnFrame::new(q, w).ok())
        .collect()
}

pub fn rational() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
}

pub fn poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(rational(), 0..=max_degree + 1).prop_map(Poly::from_coeffs)
}

pub fn frame() -> impl Strategy<Value = HahnFrame> {
    proptest::sample::select(frame_grid())
}

pub fn functional(max_degree: usize) -> impl Strategy<Value = (HahnFrame, Vec<Scalar>)> {
    (
        frame(),
        proptest::collection::vec(rational(), max_degree + 1),
    )
}

pub fn table(frame: &HahnFrame, y: Vec<Scalar>) -> MomentFunctional {
    MomentFunctional::new(frame.clone(), y).unwrap()
}

/// Determinant by the permutation expansion; only for small orders.
pub fn brute_force_determinant(m: &[Vec<Scalar>]) -> Scalar {
    fn permutations(items: Vec<usize>) -> Vec<(Vec<usize>, bool)> {
        if items.len() <= 1 {
            return vec![(items, true)];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.clone();
            let head = rest.remove(i);
            for (mut tail, even) in permutations(rest) {
                tail.insert(0, head);
                out.push((tail, if i % 2 == 0 { even } else { !even }));
            }
        }
        out
    }
    let n = m.len();
    permutations((0..n).collect())
        .into_iter()
        .map(|(perm, even)| {
            let term: Scalar = perm
                .iter()
                .enumerate()
                .map(|(r, &c)| m[r][c].clone())
                .product();
            if even {
                term
            } else {
                -term
            }
        })
        .sum()
}
