use hahn_core::scalar::format_rational;
use hahn_core::{HahnFrame, PearsonPair, Scalar};
use serde::Serialize;

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

/// CSV with a header row. Cells never contain commas or quotes.
pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn rational(x: &Scalar) -> String {
    format_rational(x)
}

pub fn describe(label: &str, pair: &PearsonPair, frame: &HahnFrame) -> String {
    format!(
        "{label}: phi = {}, psi = {}, q = {}, omega = {}",
        pair.phi(),
        pair.psi(),
        hahn_core::scalar::display_rational(frame.q()),
        hahn_core::scalar::display_rational(frame.omega())
    )
}
