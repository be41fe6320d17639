//! Exact verification suites behind `hahn verify`.

use hahn_core::classical::{
    check_regular, derivative_sequence, presets, psi_k, psi_k_iterated, recurrence,
    recurrence_admissible, theta2, theta2_explicit,
};
use hahn_core::functional::{derived_functional, solve_moments};
use hahn_core::poly::{
    leibniz_expand, op_d, op_d_by_expansion, op_d_iter, op_d_star, op_l, op_l_pow, op_l_star,
    YBasis,
};
use hahn_core::qnum::{d_n, q_binomial};
use hahn_core::rodrigues::{required_moments, verify_rodrigues};
use hahn_core::scalar::{display_rational, pow, ratio};
use hahn_core::{Error, HahnFrame, MomentFunctional, PearsonPair, Poly, Scalar};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::args::{Format, Suite, VerifyArgs};
use crate::config::{RunConfig, Subject};
use crate::render::{csv, json};
use crate::{Failure, Outcome, EXIT_MISMATCH};

/// Random `(f, g, u)` cases per frame in the identities suite.
pub const IDENTITY_CASES: usize = 25;
/// Highest degree of the random polynomials in the identities suite.
pub const IDENTITY_DEGREE: usize = 10;
const IDENTITY_SEED: u64 = 0x4841_484e;
const MAX_DERIVATIVE_LEVEL: usize = 3;
const PSI_LEVELS: usize = 10;
const THETA_LEVELS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub suite: String,
    pub subject: String,
    pub name: String,
    pub pass: bool,
    pub first_mismatch: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub pass: bool,
    pub depth: usize,
    pub test_degree: usize,
    pub checks: Vec<Check>,
}

struct Recorder<'a> {
    suite: &'static str,
    subject: &'a str,
    checks: Vec<Check>,
}

impl<'a> Recorder<'a> {
    fn new(suite: &'static str, subject: &'a str) -> Self {
        Recorder {
            suite,
            subject,
            checks: Vec::new(),
        }
    }

    fn record(&mut self, name: impl Into<String>, first_mismatch: Option<String>) {
        self.checks.push(Check {
            suite: self.suite.into(),
            subject: self.subject.into(),
            name: name.into(),
            pass: first_mismatch.is_none(),
            first_mismatch,
        });
    }
}

fn mismatch(what: String, expected: &Scalar, got: &Scalar) -> String {
    format!(
        "{what}: expected {}, got {}",
        display_rational(expected),
        display_rational(got)
    )
}

fn fuzzed(u: MomentFunctional, fuzz: Option<usize>) -> Result<MomentFunctional, Failure> {
    match fuzz {
        None => Ok(u),
        Some(k) if k <= u.max_degree() => {
            let bumped = &u.moments()[k] + Scalar::one();
            Ok(u.with_moment(k, bumped))
        }
        Some(k) => Err(Failure::input(format!(
            "--fuzz-moment {k} exceeds the moment table degree {}",
            u.max_degree()
        ))),
    }
}

fn require_regular(
    pair: &PearsonPair,
    frame: &HahnFrame,
    depth: usize,
    label: &str,
) -> Result<(), Failure> {
    let report = check_regular(pair, frame, depth);
    if report.regular {
        return Ok(());
    }
    let reason = report
        .first_regularity_failure
        .as_ref()
        .map(|f| f.to_string())
        .unwrap_or_else(|| "not regular".into());
    Err(Failure::negative(
        format!("{label} is not regular up to n = {depth}: {reason}"),
        String::new(),
    ))
}

/// `⟨u, P_m P_n⟩ = δ_{mn} u₀γ₁⋯γ_n` for `m, n ≤ N`.
pub fn gram_suite(
    subject: &str,
    pair: &PearsonPair,
    frame: &HahnFrame,
    depth: usize,
    y0: &Scalar,
    fuzz: Option<usize>,
) -> Result<Vec<Check>, Failure> {
    require_regular(pair, frame, depth, subject)?;
    let u = solve_moments(pair, frame, y0.clone(), 2 * depth).map_err(Failure::from_core)?;
    let u = fuzzed(u, fuzz)?;
    let table = recurrence(pair, frame, depth)
        .map_err(Failure::from_core)?
        .with_mass(y0.clone());
    let mut rec = Recorder::new("gram", subject);
    for m in 0..=depth {
        let mut first = None;
        for n in 0..=depth {
            let got = u
                .pair(&(table.poly(m) * table.poly(n)))
                .map_err(Failure::from_core)?;
            let want = if m == n {
                table.norm(n)
            } else {
                Scalar::zero()
            };
            if got != want {
                first = Some(mismatch(format!("cell ({m}, {n})"), &want, &got));
                break;
            }
        }
        rec.record(format!("gram row {m}"), first);
    }
    Ok(rec.checks)
}

/// `P_n u = k_n D*^n(Φ(·;n) L^n u)` for `n ≤ N`, tested against `Y_0 … Y_T`.
pub fn rodrigues_suite(
    subject: &str,
    pair: &PearsonPair,
    frame: &HahnFrame,
    depth: usize,
    test_degree: usize,
    y0: &Scalar,
    fuzz: Option<usize>,
) -> Result<Vec<Check>, Failure> {
    let phi_degree = pair.phi().degree().unwrap_or(0);
    let needed = required_moments(depth, phi_degree, test_degree);
    let u = solve_moments(pair, frame, y0.clone(), needed).map_err(Failure::from_core)?;
    let u = fuzzed(u, fuzz)?;
    let table = recurrence_admissible(pair, frame, depth).map_err(Failure::from_core)?;
    let mut rec = Recorder::new("rodrigues", subject);
    for n in 0..=depth {
        let first = match verify_rodrigues(pair, &u, &table, n, test_degree) {
            Ok(w) => w.first_mismatch.map(|i| {
                mismatch(
                    format!("moment y_{i}"),
                    &w.lhs_moments[i],
                    &w.rhs_moments[i],
                )
            }),
            Err(Error::RouteMismatch { index }) => Some(format!(
                "closed-form and iterated right-hand sides differ at y_{index}"
            )),
            Err(e) => return Err(Failure::from_core(e)),
        };
        rec.record(format!("rodrigues n={n}"), first);
    }
    Ok(rec.checks)
}

/// Derivative orthogonality and the norm relation for `k ≤ 3`, plus the two
/// closed forms for `ψ^{[k]}` and `θ₂(·;n)`.
pub fn norms_suite(
    subject: &str,
    pair: &PearsonPair,
    frame: &HahnFrame,
    depth: usize,
    y0: &Scalar,
    fuzz: Option<usize>,
) -> Result<Vec<Check>, Failure> {
    require_regular(pair, frame, depth, subject)?;
    let phi_degree = pair.phi().degree().unwrap_or(0);
    let levels = MAX_DERIVATIVE_LEVEL.min(depth);
    let size = 2 * depth + levels * phi_degree;
    let u = solve_moments(pair, frame, y0.clone(), size).map_err(Failure::from_core)?;
    let u = fuzzed(u, fuzz)?;
    let table = recurrence(pair, frame, depth)
        .map_err(Failure::from_core)?
        .with_mass(y0.clone());
    let q = frame.q();
    let mut rec = Recorder::new("norms", subject);
    for k in 1..=levels {
        let uk = derived_functional(pair, &u, k).map_err(Failure::from_core)?;
        let pk = derivative_sequence(&table, frame, k);
        let top = depth - k;
        for n in 0..=top {
            let sign = if k % 2 == 0 {
                Scalar::one()
            } else {
                -Scalar::one()
            };
            let mut factor =
                sign * pow(q, -((k * (2 * n + k - 1)) as i64) / 2).map_err(Failure::from_core)?;
            for j in 1..=k {
                factor *= d_n(pair, frame, (n + k + j) as i64 - 2) / frame.bracket((n + j) as i64);
            }
            let diagonal = factor * table.norm(n + k);
            let mut first = None;
            for m in 0..=top {
                let got = uk.pair(&(&pk[n] * &pk[m])).map_err(Failure::from_core)?;
                let want = if m == n {
                    diagonal.clone()
                } else {
                    Scalar::zero()
                };
                if got != want {
                    first = Some(mismatch(format!("cell ({n}, {m})"), &want, &got));
                    break;
                }
            }
            rec.record(format!("norm relation k={k} row {n}"), first);
        }
    }
    let psi_first = (0..=PSI_LEVELS)
        .find(|&k| psi_k(pair, frame, k) != psi_k_iterated(pair, frame, k))
        .map(|k| format!("k = {k}"));
    rec.record(format!("psi^[k] closed form, k <= {PSI_LEVELS}"), psi_first);
    let theta_first = (1..=THETA_LEVELS)
        .find(|&n| theta2(pair, frame, n) != theta2_explicit(pair, frame, n))
        .map(|n| format!("n = {n}"));
    rec.record(
        format!("theta2 expansion, n <= {THETA_LEVELS}"),
        theta_first,
    );
    Ok(rec.checks)
}

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> Poly {
    let degree = rng.gen_range(0..=max_degree);
    Poly::from_coeffs(
        (0..=degree)
            .map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
            .collect(),
    )
}

fn random_functional(
    rng: &mut ChaCha8Rng,
    frame: &HahnFrame,
    max_degree: usize,
) -> MomentFunctional {
    let y = (0..=max_degree)
        .map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
        .collect();
    MomentFunctional::new(frame.clone(), y).expect("nonempty moments")
}

fn first_functional_difference(a: &MomentFunctional, b: &MomentFunctional) -> Option<usize> {
    let window = a.max_degree().min(b.max_degree());
    (0..=window).find(|&i| a.moments()[i] != b.moments()[i])
}

fn sum_on_common_window(a: MomentFunctional, b: &MomentFunctional) -> MomentFunctional {
    let w = a.max_degree().min(b.max_degree());
    a.truncated(w)
        .checked_add(&b.truncated(w))
        .expect("same frame")
}

/// One randomized case of every operator identity.
fn identity_case(
    frame: &HahnFrame,
    f: &Poly,
    g: &Poly,
    u: &MomentFunctional,
    small: &Poly,
    n: usize,
) -> Vec<(&'static str, bool)> {
    let q = frame.q();
    let qinv = q.recip();
    let fg = f * g;
    let basis = YBasis::new(frame, f.degree().unwrap_or(0));
    let mut out = vec![
        ("L* L f = f", op_l_star(&op_l(f, frame), frame) == *f),
        ("L L* f = f", op_l(&op_l_star(f, frame), frame) == *f),
        (
            "L^n f = f(q^n x + omega[n]_q)",
            op_l_pow(f, frame, n as i64)
                == f.compose_affine(
                    &frame.q_pow(n as i64),
                    &(frame.omega() * frame.bracket(n as i64)),
                ),
        ),
        (
            "D f by division = monomial rule",
            op_d(f, frame) == op_d_by_expansion(f, frame),
        ),
        (
            "D* D f = q D D* f",
            op_d_star(&op_d(f, frame), frame) == op_d(&op_d_star(f, frame), frame).scale(q),
        ),
        (
            "D L* f = q^-1 L* D f",
            op_d(&op_l_star(f, frame), frame) == op_l_star(&op_d(f, frame), frame).scale(&qinv),
        ),
        (
            "D L f = q L D f",
            op_d(&op_l(f, frame), frame) == op_l(&op_d(f, frame), frame).scale(q),
        ),
        (
            "D* L f = q D f",
            op_d_star(&op_l(f, frame), frame) == op_d(f, frame).scale(q),
        ),
        (
            "L(fg) = Lf Lg",
            op_l(&fg, frame) == &op_l(f, frame) * &op_l(g, frame),
        ),
        (
            "D(fg) = Df Lg + f Dg",
            op_d(&fg, frame) == &(&op_d(f, frame) * &op_l(g, frame)) + &(f * &op_d(g, frame)),
        ),
        (
            "polynomial Leibniz",
            leibniz_expand(f, g, frame, n) == op_d_iter(&fg, frame, n),
        ),
        (
            "Newton coordinates round trip",
            basis.from_y_basis(&basis.to_y_basis(f)) == *f,
        ),
        ("functional L* L u = u", u.dist_l().dist_l_star() == *u),
        ("functional L L* u = u", u.dist_l_star().dist_l() == *u),
        (
            "functional D* L u = q D u",
            u.dist_l().dist_d_star() == u.dist_d().scale(q),
        ),
    ];
    let fu = u
        .left_multiply(small)
        .expect("window covers the multiplier");
    out.push((
        "functional L(fu) = Lf Lu",
        fu.dist_l()
            == u.dist_l()
                .left_multiply(&op_l(small, frame))
                .expect("window"),
    ));
    let lhs = fu.dist_d();
    let first = sum_on_common_window(
        u.dist_l()
            .left_multiply(&op_d(small, frame))
            .expect("window"),
        &u.dist_d().left_multiply(small).expect("window"),
    );
    let second = sum_on_common_window(
        u.left_multiply(&op_d(small, frame)).expect("window"),
        &u.dist_d()
            .left_multiply(&op_l(small, frame))
            .expect("window"),
    );
    out.push((
        "functional D(fu) = Df Lu + f Du",
        first_functional_difference(&lhs, &first).is_none(),
    ));
    out.push((
        "functional D(fu) = Df u + Lf Du",
        first_functional_difference(&lhs, &second).is_none(),
    ));
    let lhs = (0..n).fold(fu, |acc, _| acc.dist_d());
    let mut rhs: Option<MomentFunctional> = None;
    for k in 0..=n {
        let coeff = q_binomial(n, k, q).expect("q is not a root of unity");
        let mult = op_l_pow(&op_d_iter(small, frame, n - k), frame, k as i64).scale(&coeff);
        let term = u.dist_d_pow(k).left_multiply(&mult).expect("window");
        rhs = Some(match rhs {
            None => term,
            Some(acc) => sum_on_common_window(acc, &term),
        });
    }
    out.push((
        "functional Leibniz",
        first_functional_difference(&lhs, &rhs.expect("n >= 0")).is_none(),
    ));
    out
}

fn frame_label(frame: &HahnFrame) -> String {
    format!(
        "q={}, omega={}",
        display_rational(frame.q()),
        display_rational(frame.omega())
    )
}

/// Every operator identity on `cases` seeded random cases in one frame.
pub fn identities_suite(frame: &HahnFrame, cases: usize, seed: u64) -> Vec<Check> {
    let label = frame_label(frame);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures: Vec<(&'static str, Option<usize>)> = Vec::new();
    for case in 0..cases {
        let f = random_poly(&mut rng, IDENTITY_DEGREE);
        let g = random_poly(&mut rng, IDENTITY_DEGREE);
        let small = random_poly(&mut rng, 3);
        let n = rng.gen_range(0..=3);
        let u = random_functional(&mut rng, frame, IDENTITY_DEGREE + 4);
        for (name, ok) in identity_case(frame, &f, &g, &u, &small, n) {
            match failures.iter_mut().find(|(k, _)| *k == name) {
                Some(slot) => {
                    if !ok && slot.1.is_none() {
                        slot.1 = Some(case);
                    }
                }
                None => failures.push((name, (!ok).then_some(case))),
            }
        }
    }
    let mut rec = Recorder::new("identities", &label);
    for (name, failed) in failures {
        rec.record(name, failed.map(|c| format!("random case {c}")));
    }
    rec.checks
}

/// The standard frame grid: q in {1, 2, 1/2, 3/5, -2}, ω in {0, 1, -1/3},
/// without the excluded point (1, 0).
pub fn standard_frames() -> Vec<HahnFrame> {
    let qs = [
        ratio(1, 1),
        ratio(2, 1),
        ratio(1, 2),
        ratio(3, 5),
        ratio(-2, 1),
    ];
    let ws = [ratio(0, 1), ratio(1, 1), ratio(-1, 3)];
    qs.iter()
        .flat_map(|q| ws.iter().map(move |w| HahnFrame::new(q.clone(), w.clone())))
        .filter_map(|f| f.ok())
        .collect()
}

fn selected(suite: Suite) -> Vec<Suite> {
    match suite {
        Suite::All => vec![
            Suite::Gram,
            Suite::Rodrigues,
            Suite::Norms,
            Suite::Identities,
        ],
        s => vec![s],
    }
}

pub fn run_suites(config: &RunConfig, args: &VerifyArgs) -> Result<VerifyReport, Failure> {
    let suites = selected(args.suite);
    let needs_pair = suites.iter().any(|s| *s != Suite::Identities);
    let (pair_subjects, frames): (Vec<Subject>, Vec<HahnFrame>) = match &config.subject {
        Some(s) if s.pair.is_some() => (vec![s.clone()], vec![s.frame.clone()]),
        Some(s) => {
            if args.suite != Suite::All && needs_pair {
                return Err(Failure::input(
                    "this suite needs a Pearson pair: use --preset or --a/--b/--c/--d/--e",
                ));
            }
            (Vec::new(), vec![s.frame.clone()])
        }
        None => (
            presets::catalog()
                .into_iter()
                .map(Subject::from_preset)
                .collect(),
            standard_frames(),
        ),
    };
    let depth = config.depth;
    let mut checks = Vec::new();
    for suite in &suites {
        match suite {
            Suite::Identities => {
                for (i, frame) in frames.iter().enumerate() {
                    checks.extend(identities_suite(
                        frame,
                        IDENTITY_CASES,
                        IDENTITY_SEED + i as u64,
                    ));
                }
            }
            Suite::All => unreachable!("expanded by selected()"),
            s => {
                for subject in &pair_subjects {
                    let pair = subject.pair.as_ref().expect("pair subjects carry a pair");
                    let (label, frame) = (&subject.label, &subject.frame);
                    checks.extend(match s {
                        Suite::Gram => {
                            gram_suite(label, pair, frame, depth, &args.y0, args.fuzz_moment)?
                        }
                        Suite::Rodrigues => rodrigues_suite(
                            label,
                            pair,
                            frame,
                            depth,
                            args.test_degree,
                            &args.y0,
                            args.fuzz_moment,
                        )?,
                        _ => norms_suite(label, pair, frame, depth, &args.y0, args.fuzz_moment)?,
                    });
                }
            }
        }
    }
    Ok(VerifyReport {
        pass: checks.iter().all(|c| c.pass),
        depth,
        test_degree: args.test_degree,
        checks,
    })
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, Failure> {
    let config = RunConfig::resolve(&args.common)?;
    let report = run_suites(&config, args)?;
    let text = match config.format {
        Format::Json => json(&report),
        Format::Csv => csv(
            &["suite", "subject", "check", "pass", "first_mismatch"],
            report.checks.iter().map(|c| {
                vec![
                    c.suite.clone(),
                    c.subject.replace(',', ";"),
                    c.name.replace(',', ";"),
                    c.pass.to_string(),
                    c.first_mismatch
                        .clone()
                        .unwrap_or_default()
                        .replace(',', ";"),
                ]
            }),
        ),
        Format::Human => {
            let mut out = String::new();
            for c in &report.checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                out.push_str(&format!("{status} [{}] {}: {}", c.suite, c.subject, c.name));
                if let Some(m) = &c.first_mismatch {
                    out.push_str(&format!(" ({m})"));
                }
                out.push('\n');
            }
            let failed = report.checks.iter().filter(|c| !c.pass).count();
            out.push_str(&format!(
                "{} checks, {failed} failed\n",
                report.checks.len()
            ));
            out
        }
    };
    if report.pass {
        Ok(Outcome::ok(text))
    } else {
        let failed: Vec<String> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| format!("[{}] {}: {}", c.suite, c.subject, c.name))
            .collect();
        Ok(Outcome {
            code: EXIT_MISMATCH,
            stdout: text,
            stderr: format!("verification failed: {}\n", failed.join("; ")),
        })
    }
}
