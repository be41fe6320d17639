//! Shipped Pearson pairs with rational parameters.
//!
//! The names say which classical family each pair resembles; no claim is
//! made that the parameterization matches any reference normalization.

use crate::classical::{psi_root, PearsonPair};
use crate::error::{Error, Result};
use crate::qnum::HahnFrame;
use crate::scalar::{int, parse_rational, ratio, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preset {
    pub name: String,
    pub description: &'static str,
    pub pair: PearsonPair,
    pub frame: HahnFrame,
}

pub const NAMES: [&str; 4] = [
    "charlier",
    "meixner",
    "al-salam-carlitz",
    "little-q-laguerre",
];

/// `φ = x`, `ψ = μ - x` at `(q, ω) = (1, 1)`.
pub fn charlier(mu: Scalar) -> (PearsonPair, HahnFrame) {
    let pair = PearsonPair::new(int(0), int(1), int(0), int(-1), mu).expect("nonzero pair");
    (pair, HahnFrame::new(int(1), int(1)).expect("valid frame"))
}

/// `φ = x`, `ψ = 1 - x/2` at `(q, ω) = (1, 1)`.
pub fn meixner() -> (PearsonPair, HahnFrame) {
    let pair =
        PearsonPair::new(int(0), int(1), int(0), ratio(-1, 2), int(1)).expect("nonzero pair");
    (pair, HahnFrame::new(int(1), int(1)).expect("valid frame"))
}

/// `φ = (x - 1)(x + 2)`, `ψ = 3x + 1` at `(q, ω) = (1/2, 0)`.
pub fn al_salam_carlitz() -> (PearsonPair, HahnFrame) {
    let pair = PearsonPair::from_ints(1, 1, -2, 3, 1).expect("nonzero pair");
    (
        pair,
        HahnFrame::new(ratio(1, 2), int(0)).expect("valid frame"),
    )
}

/// `φ = x`, `ψ = 1 - x` at `(q, ω) = (2, 0)`.
pub fn little_q_laguerre() -> (PearsonPair, HahnFrame) {
    let pair = PearsonPair::from_ints(0, 1, 0, -1, 1).expect("nonzero pair");
    (pair, HahnFrame::new(int(2), int(0)).expect("valid frame"))
}

fn build(name: &str, description: &'static str, (pair, frame): (PearsonPair, HahnFrame)) -> Preset {
    Preset {
        name: name.to_string(),
        description,
        pair,
        frame,
    }
}

/// All shipped presets at their default parameters (Charlier with μ = 1/2).
pub fn catalog() -> Vec<Preset> {
    NAMES
        .iter()
        .map(|n| lookup(n).expect("shipped preset"))
        .collect()
}

/// Resolves `name` or `name:key=value`; only `charlier` takes a parameter (`mu`).
pub fn lookup(spec: &str) -> Result<Preset> {
    let (name, param) = match spec.split_once(':') {
        Some((n, p)) => (n.trim(), Some(p.trim())),
        None => (spec.trim(), None),
    };
    let unknown_param =
        |p: &str| Error::Domain(format!("preset {name:?} takes no parameter {p:?}"));
    match name {
        "charlier" => {
            let mu = match param {
                None => ratio(1, 2),
                Some(p) => {
                    let value = p.strip_prefix("mu=").unwrap_or(p);
                    parse_rational(value)?
                }
            };
            let label = format!("charlier:mu={}", crate::scalar::display_rational(&mu));
            Ok(build(
                &label,
                "phi = x, psi = mu - x, (q, omega) = (1, 1)",
                charlier(mu),
            ))
        }
        "meixner" | "al-salam-carlitz" | "little-q-laguerre" => {
            if let Some(p) = param {
                return Err(unknown_param(p));
            }
            Ok(match name {
                "meixner" => build(
                    name,
                    "phi = x, psi = 1 - x/2, (q, omega) = (1, 1)",
                    meixner(),
                ),
                "al-salam-carlitz" => build(
                    name,
                    "phi = (x - 1)(x + 2), psi = 3x + 1, (q, omega) = (1/2, 0)",
                    al_salam_carlitz(),
                ),
                _ => build(
                    name,
                    "phi = x, psi = 1 - x, (q, omega) = (2, 0)",
                    little_q_laguerre(),
                ),
            })
        }
        _ => Err(Error::Domain(format!(
            "unknown preset {name:?}; expected one of {}",
            NAMES.join(", ")
        ))),
    }
}

/// Same pair with the constant term of `φ` moved so that
/// `φ(-e_{n0}/d_{2n0}) = 0`. `d_n` and `e_n` do not involve `c`, so the
/// root is unchanged by the adjustment.
pub fn with_phi_root_at(pair: &PearsonPair, frame: &HahnFrame, n0: usize) -> Result<PearsonPair> {
    let r = psi_root(pair, frame, n0)?;
    let c = -(pair.a() * &r * &r + pair.b() * &r);
    pair.with_c(c)
}
