//! Acceptance run: every criterion is checked exactly over ℚ and reported on
//! one PASS/FAIL line. The process exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use hahn_core::classical::{
    beta, check_regular, derivative_sequence, gamma_next, presets, psi_k_iterated, recurrence,
    recurrence_admissible, theta2, theta2_explicit, RecurrenceTable,
};
use hahn_core::functional::{derived_functional, pearson_residual, solve_moments};
use hahn_core::poly::{
    leibniz_expand, op_d, op_d_iter, op_d_star, op_l, op_l_pow, op_l_star, y_basis,
};
use hahn_core::qnum::q_binomial;
use hahn_core::rodrigues::{rodrigues_rhs_closed_form, rodrigues_rhs_iterated, verify_rodrigues};
use hahn_core::scalar::{format_rational, int, parse_rational, ratio};
use hahn_core::{
    Condition, HahnFrame, MomentFunctional, PearsonPair, Poly, RegularityReport, Scalar,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Criterion id, title, optional time limit in seconds, and the check.
type Criterion = (u32, &'static str, Option<u64>, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

// ---------------------------------------------------------------------------
// Independent scalar oracles.

fn qpow(q: &Scalar, n: i64) -> Scalar {
    let mut out = Scalar::one();
    for _ in 0..n.unsigned_abs() {
        out *= q;
    }
    if n < 0 {
        out.recip()
    } else {
        out
    }
}

/// `[n]_q` as a finite geometric sum, extended by `[-n]_q = -q^{-n}[n]_q`.
fn qint(n: i64, q: &Scalar) -> Scalar {
    if n >= 0 {
        (0..n).map(|j| qpow(q, j)).sum()
    } else {
        -qpow(q, n) * qint(-n, q)
    }
}

fn dn(p: &PearsonPair, fr: &HahnFrame, n: i64) -> Scalar {
    p.d() * qpow(fr.q(), n) + p.a() * qint(n, fr.q())
}

fn en(p: &PearsonPair, fr: &HahnFrame, n: i64) -> Scalar {
    p.e() * qpow(fr.q(), n) + (fr.omega() * dn(p, fr, n) + p.b()) * qint(n, fr.q())
}

fn phi_at(p: &PearsonPair, x: &Scalar) -> Scalar {
    p.a() * x * x + p.b() * x + p.c()
}

/// `γ_{n+1}` from the closed form, with the `n = 0` case written out.
fn gamma_closed(p: &PearsonPair, fr: &HahnFrame, n: i64) -> Scalar {
    let root = -en(p, fr, n) / dn(p, fr, 2 * n);
    if n == 0 {
        return -phi_at(p, &root) / dn(p, fr, 1);
    }
    -qpow(fr.q(), n) * qint(n + 1, fr.q()) * dn(p, fr, n - 1)
        / (dn(p, fr, 2 * n - 1) * dn(p, fr, 2 * n + 1))
        * phi_at(p, &root)
}

/// Determinant by the permutation expansion.
fn brute_det(m: &[Vec<Scalar>]) -> Scalar {
    fn go(m: &[Vec<Scalar>], row: usize, used: &mut Vec<bool>, sign: bool) -> Scalar {
        if row == m.len() {
            return if sign { Scalar::one() } else { -Scalar::one() };
        }
        let mut total = Scalar::zero();
        let mut flips = 0;
        for c in 0..m.len() {
            if used[c] {
                continue;
            }
            if !m[row][c].is_zero() {
                used[c] = true;
                let s = if flips % 2 == 0 { sign } else { !sign };
                total += &m[row][c] * go(m, row + 1, used, s);
                used[c] = false;
            }
            flips += 1;
        }
        total
    }
    go(m, 0, &mut vec![false; m.len()], true)
}

fn frame_grid() -> Vec<HahnFrame> {
    let qs = [int(1), int(2), ratio(1, 2), ratio(3, 5), int(-2)];
    let ws = [int(0), int(1), ratio(-1, 3)];
    qs.iter()
        .flat_map(|q| ws.iter().map(move |w| (q.clone(), w.clone())))
        .filter_map(|(q, w)| HahnFrame::new(q, w).ok())
        .collect()
}

fn random_scalar(rng: &mut ChaCha8Rng, span: i64, den: i64) -> Scalar {
    ratio(rng.gen_range(-span..=span), rng.gen_range(1..=den))
}

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> Poly {
    let deg = rng.gen_range(0..=max_degree);
    Poly::from_coeffs((0..=deg).map(|_| random_scalar(rng, 9, 4)).collect())
}

fn common_window_diff(a: &MomentFunctional, b: &MomentFunctional) -> Option<usize> {
    let w = a.max_degree().min(b.max_degree());
    (0..=w).find(|&i| a.moments()[i] != b.moments()[i])
}

fn add_on_common_window(a: MomentFunctional, b: &MomentFunctional) -> MomentFunctional {
    let w = a.max_degree().min(b.max_degree());
    a.truncated(w)
        .checked_add(&b.truncated(w))
        .expect("same frame")
}

// ---------------------------------------------------------------------------
// Criteria.

fn criterion_1() -> Outcome {
    const CASES: usize = 240;
    let frames = frame_grid();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0001);
    for case in 0..CASES {
        let fr = &frames[case % frames.len()];
        let q = fr.q();
        let f = random_poly(&mut rng, 10);
        let g = random_poly(&mut rng, 10);
        let fg = &f * &g;
        let ctx = format!(
            "case {case}, q = {}, omega = {}",
            format_rational(q),
            format_rational(fr.omega())
        );

        ensure!(op_l_star(&op_l(&f, fr), fr) == f, "L*L f != f ({ctx})");
        ensure!(op_l(&op_l_star(&f, fr), fr) == f, "L L* f != f ({ctx})");
        let n = rng.gen_range(-4i64..=8);
        let substituted = f.compose_affine(&qpow(q, n), &(fr.omega() * qint(n, q)));
        ensure!(
            op_l_pow(&f, fr, n) == substituted,
            "L^{n} f != f(q^n x + omega[n]) ({ctx})"
        );
        ensure!(
            op_d_star(&op_d(&f, fr), fr) == op_d(&op_d_star(&f, fr), fr).scale(q),
            "D*D != q D D* ({ctx})"
        );
        ensure!(
            op_d(&op_l_star(&f, fr), fr) == op_l_star(&op_d(&f, fr), fr).scale(&q.recip()),
            "D L* != q^-1 L* D ({ctx})"
        );
        ensure!(
            op_d(&op_l(&f, fr), fr) == op_l(&op_d(&f, fr), fr).scale(q),
            "D L != q L D ({ctx})"
        );
        ensure!(
            op_d_star(&op_l(&f, fr), fr) == op_d(&f, fr).scale(q),
            "D* L != q D ({ctx})"
        );
        ensure!(
            op_l(&fg, fr) == &op_l(&f, fr) * &op_l(&g, fr),
            "L(fg) != Lf Lg ({ctx})"
        );
        ensure!(
            op_d(&fg, fr) == &(&op_d(&f, fr) * &op_l(&g, fr)) + &(&f * &op_d(&g, fr)),
            "D(fg) != Df Lg + f Dg ({ctx})"
        );
        ensure!(
            op_d(&fg, fr) == &(&op_d(&f, fr) * &g) + &(&op_l(&f, fr) * &op_d(&g, fr)),
            "D(fg) != Df g + Lf Dg ({ctx})"
        );
        let k = rng.gen_range(0..=4usize);
        ensure!(
            leibniz_expand(&f, &g, fr, k) == op_d_iter(&fg, fr, k),
            "polynomial Leibniz, n = {k} ({ctx})"
        );

        let y = (0..=14).map(|_| random_scalar(&mut rng, 9, 4)).collect();
        let u = MomentFunctional::new(fr.clone(), y).unwrap();
        let h = random_poly(&mut rng, 3);
        ensure!(
            u.dist_l().dist_l_star() == u,
            "functional L*L u != u ({ctx})"
        );
        ensure!(
            u.dist_l_star().dist_l() == u,
            "functional L L* u != u ({ctx})"
        );
        ensure!(
            u.dist_l().dist_d_star() == u.dist_d().scale(q),
            "functional D*L u != q D u ({ctx})"
        );
        let hu = u.left_multiply(&h).unwrap();
        ensure!(
            hu.dist_l() == u.dist_l().left_multiply(&op_l(&h, fr)).unwrap(),
            "functional L(hu) != Lh Lu ({ctx})"
        );
        let lhs = hu.dist_d();
        let first = add_on_common_window(
            u.dist_l().left_multiply(&op_d(&h, fr)).unwrap(),
            &u.dist_d().left_multiply(&h).unwrap(),
        );
        let second = add_on_common_window(
            u.left_multiply(&op_d(&h, fr)).unwrap(),
            &u.dist_d().left_multiply(&op_l(&h, fr)).unwrap(),
        );
        ensure!(
            common_window_diff(&lhs, &first).is_none(),
            "functional D(hu), first form ({ctx})"
        );
        ensure!(
            common_window_diff(&lhs, &second).is_none(),
            "functional D(hu), second form ({ctx})"
        );
        let n = rng.gen_range(0..=3usize);
        let lhs = u.left_multiply(&h).unwrap().dist_d_pow(n);
        let mut rhs: Option<MomentFunctional> = None;
        for j in 0..=n {
            let mult = op_l_pow(&op_d_iter(&h, fr, n - j), fr, j as i64)
                .scale(&q_binomial(n, j, q).unwrap());
            let term = u.dist_d_pow(j).left_multiply(&mult).unwrap();
            rhs = Some(match rhs {
                None => term,
                Some(acc) => add_on_common_window(acc, &term),
            });
        }
        let rhs = rhs.unwrap();
        for m in 0..=6 {
            let ym = y_basis(m, fr);
            ensure!(
                lhs.pair(&ym).unwrap() == rhs.pair(&ym).unwrap(),
                "functional Leibniz, n = {n}, m = {m} ({ctx})"
            );
        }
    }
    Ok(format!("{CASES} random cases over {} frames", frames.len()))
}

fn criterion_2() -> Outcome {
    const N: usize = 20;
    for p in presets::catalog() {
        let u = solve_moments(&p.pair, &p.frame, int(1), N + 2).map_err(|e| e.to_string())?;
        let residual = pearson_residual(&p.pair, &u, N).map_err(|e| e.to_string())?;
        ensure!(
            residual.iter().all(Zero::is_zero),
            "{}: residual not zero",
            p.name
        );
        for k in 0..=N {
            let bumped = u.with_moment(k, &u.moments()[k] + ratio(1, 7));
            let r = pearson_residual(&p.pair, &bumped, N).map_err(|e| e.to_string())?;
            ensure!(
                r.iter().any(|x| !x.is_zero()),
                "{}: corrupting y_{k} left the residual zero",
                p.name
            );
        }
    }
    Ok(format!(
        "zero residual to N = {N}, every single-moment corruption detected"
    ))
}

fn gram_check(
    p: &PearsonPair,
    fr: &HahnFrame,
    n_max: usize,
    y0: &Scalar,
) -> Result<RecurrenceTable, String> {
    let u = solve_moments(p, fr, y0.clone(), 2 * n_max).map_err(|e| e.to_string())?;
    let table = recurrence(p, fr, n_max)
        .map_err(|e| e.to_string())?
        .with_mass(y0.clone());
    let mut diag = Vec::new();
    for m in 0..=n_max {
        for n in 0..=n_max {
            let g = u
                .pair(&(table.poly(m) * table.poly(n)))
                .map_err(|e| e.to_string())?;
            if m == n {
                diag.push(g);
            } else {
                ensure!(
                    g.is_zero(),
                    "G[{m}][{n}] = {} is not zero",
                    format_rational(&g)
                );
            }
        }
    }
    let mut running = y0.clone();
    ensure!(diag[0] == running, "G[0][0] != u_0");
    for (n, g) in diag.iter().enumerate().skip(1) {
        let closed = gamma_closed(p, fr, n as i64 - 1);
        ensure!(
            table.gamma[n] == closed,
            "gamma_{n}: engine differs from the closed form"
        );
        running *= &closed;
        ensure!(*g == running, "G[{n}][{n}] != u_0 gamma_1 ... gamma_{n}");
    }
    Ok(table)
}

fn criterion_3() -> Outcome {
    let y0 = ratio(2, 3);
    for p in presets::catalog() {
        gram_check(&p.pair, &p.frame, 10, &y0).map_err(|e| format!("{}: {e}", p.name))?;
    }
    Ok("Gram matrices diagonal for N = 10 on every preset".into())
}

fn criterion_4() -> Outcome {
    let (mut count, mut sharp_count) = (0, 0);
    for p in presets::catalog() {
        for n0 in 0..=2i64 {
            let (pair, fr) = (&p.pair, &p.frame);
            let r = -en(pair, fr, n0) / dn(pair, fr, 2 * n0);
            let c = -(pair.a() * &r * &r + pair.b() * &r);
            let broken = pair.with_c(c).map_err(|e| e.to_string())?;
            ensure!(phi_at(&broken, &r).is_zero(), "root not placed");
            let report = check_regular(&broken, fr, 4);
            let failure = report
                .first_regularity_failure
                .ok_or("placed root not reported")?;
            ensure!(
                failure.index <= n0 as usize && failure.condition == Condition::PhiRootCondition,
                "{} n0 = {n0}: report {failure:?}",
                p.name
            );
            let sharp = failure.index == n0 as usize;
            let g = gamma_next(&broken, fr, n0 as usize).map_err(|e| e.to_string())?;
            ensure!(
                g.is_zero(),
                "{} n0 = {n0}: gamma_{} = {}",
                p.name,
                n0 + 1,
                format_rational(&g)
            );
            let order = n0 as usize + 2;
            let u = solve_moments(&broken, fr, int(1), 2 * order).map_err(|e| e.to_string())?;
            let pm = u.power_moments();
            let hankel = |k: usize| -> Vec<Vec<Scalar>> {
                (0..k)
                    .map(|i| (0..k).map(|j| pm[i + j].clone()).collect())
                    .collect()
            };
            ensure!(
                brute_det(&hankel(order)).is_zero(),
                "{} n0 = {n0}: Hankel determinant nonzero",
                p.name
            );
            if sharp {
                for k in 1..order {
                    ensure!(
                        !brute_det(&hankel(k)).is_zero(),
                        "{} n0 = {n0}: order {k} vanished early",
                        p.name
                    );
                }
                sharp_count += 1;
            }
            count += 1;
        }
    }
    ensure!(
        sharp_count >= 3,
        "only {sharp_count} pairs fail first at n0"
    );
    Ok(format!(
        "{count} constructed pairs with n0 in 0..=2, {sharp_count} failing first at n0"
    ))
}

fn criterion_5() -> Outcome {
    const T: usize = 8;
    let mut subjects: Vec<(String, PearsonPair, HahnFrame)> = presets::catalog()
        .into_iter()
        .map(|p| (p.name, p.pair, p.frame))
        .collect();
    let (mp, mf) = presets::meixner();
    let r = -en(&mp, &mf, 1) / dn(&mp, &mf, 2);
    let irregular = mp.with_c(-(mp.a() * &r * &r + mp.b() * &r)).unwrap();
    ensure!(
        !check_regular(&irregular, &mf, 5).regular,
        "constructed pair is regular"
    );
    subjects.push(("meixner with phi root at n0 = 1".into(), irregular, mf));
    for (name, pair, fr) in &subjects {
        let u = solve_moments(pair, fr, int(1), 24).map_err(|e| e.to_string())?;
        let table = recurrence_admissible(pair, fr, 5).map_err(|e| e.to_string())?;
        for n in 0..=5 {
            let closed = rodrigues_rhs_closed_form(pair, &u, n).map_err(|e| e.to_string())?;
            let iterated = rodrigues_rhs_iterated(pair, &u, n).map_err(|e| e.to_string())?;
            ensure!(
                common_window_diff(&closed, &iterated).is_none(),
                "{name}: routes differ at n = {n}"
            );
            let w = verify_rodrigues(pair, &u, &table, n, T).map_err(|e| e.to_string())?;
            ensure!(
                w.matches,
                "{name}: n = {n}, first mismatch {:?}",
                w.first_mismatch
            );
        }
    }
    Ok(format!(
        "n <= 5, test degree {T}, {} pairs including one irregular",
        subjects.len()
    ))
}

fn criterion_6() -> Outcome {
    let chosen = ["charlier", "al-salam-carlitz"];
    for name in chosen {
        let p = presets::lookup(name).unwrap();
        let (pair, fr) = (&p.pair, &p.frame);
        let q = fr.q();
        let u = solve_moments(pair, fr, int(1), 24).map_err(|e| e.to_string())?;
        let table = recurrence(pair, fr, 8).map_err(|e| e.to_string())?;
        let norm = |n: usize| u.pair(&(table.poly(n) * table.poly(n))).unwrap();

        let u1 = derived_functional(pair, &u, 1).unwrap();
        let p1 = derivative_sequence(&table, fr, 1);
        for n in 0..=6usize {
            for m in 0..=6usize {
                let got = u1.pair(&(&p1[n] * &p1[m])).unwrap();
                let want = if n == m {
                    -qpow(q, -(n as i64)) * dn(pair, fr, n as i64) / qint(n as i64 + 1, q)
                        * norm(n + 1)
                } else {
                    Scalar::zero()
                };
                ensure!(
                    got == want,
                    "{name}: derivative orthogonality at ({n}, {m})"
                );
            }
        }
        for k in 1..=3usize {
            let uk = derived_functional(pair, &u, k).unwrap();
            let pk = derivative_sequence(&table, fr, k);
            for n in 0..=5usize {
                let sign = if k % 2 == 0 {
                    Scalar::one()
                } else {
                    -Scalar::one()
                };
                let mut factor = sign * qpow(q, -((k * (2 * n + k - 1)) as i64 / 2));
                for j in 1..=k {
                    factor *= dn(pair, fr, (n + k + j) as i64 - 2) / qint((n + j) as i64, q);
                }
                for m in 0..=5usize {
                    let got = uk.pair(&(&pk[n] * &pk[m])).unwrap();
                    let want = if n == m {
                        &factor * norm(n + k)
                    } else {
                        Scalar::zero()
                    };
                    ensure!(got == want, "{name}: norm relation k = {k} at ({n}, {m})");
                }
            }
        }
        for k in 0..=10i64 {
            let closed = Poly::from_coeffs(vec![en(pair, fr, k), dn(pair, fr, 2 * k)]);
            ensure!(
                psi_k_iterated(pair, fr, k as usize) == closed,
                "{name}: psi^[{k}] closed form"
            );
        }
        for n in 1..=8 {
            ensure!(
                theta2(pair, fr, n) == theta2_explicit(pair, fr, n),
                "{name}: theta2 at n = {n}"
            );
        }
    }
    Ok(format!("on {}", chosen.join(" and ")))
}

fn criterion_7() -> Outcome {
    const PAIRS: usize = 50;
    let frames = frame_grid();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0007);
    let mut done = 0;
    while done < PAIRS {
        let c: Vec<Scalar> = (0..5).map(|_| random_scalar(&mut rng, 7, 5)).collect();
        let fr = &frames[rng.gen_range(0..frames.len())];
        let Ok(pair) = PearsonPair::new(
            c[0].clone(),
            c[1].clone(),
            c[2].clone(),
            c[3].clone(),
            c[4].clone(),
        ) else {
            continue;
        };
        let (a, b, cc, d, e) = (pair.a(), pair.b(), pair.c(), pair.d(), pair.e());
        let q = fr.q();
        let dq_a = d * q + a;
        if d.is_zero() || dq_a.is_zero() {
            continue;
        }
        let b0 = -e / d;
        ensure!(
            beta(&pair, fr, 0).unwrap() == b0,
            "beta_0 != -e/d for {pair:?}"
        );
        let g1 = -(a * &b0 * &b0 + b * &b0 + cc) / &dq_a;
        ensure!(
            gamma_next(&pair, fr, 0).unwrap() == g1,
            "gamma_1 closed form for {pair:?}"
        );
        let u0 = random_scalar(&mut rng, 5, 3);
        if u0.is_zero() {
            continue;
        }
        let u = solve_moments(&pair, fr, u0.clone(), 2).unwrap();
        let pm = u.power_moments();
        ensure!(pm[1] == -e / d * &u0, "u_1 for {pair:?}");
        let u2 = -(-(q * e + b) * e / d + cc) / &dq_a * &u0;
        ensure!(pm[2] == u2, "u_2 for {pair:?}");
        ensure!(
            &pm[2] / &u0 - (&pm[1] / &u0) * (&pm[1] / &u0) == g1,
            "gamma_1 from moments for {pair:?}"
        );
        done += 1;
    }
    Ok(format!("{PAIRS} random pairs on random frames"))
}

fn criterion_8() -> Outcome {
    let mu = ratio(1, 2);
    let p = presets::lookup("charlier:mu=1/2").unwrap();
    ensure!(
        p.frame.q() == &int(1) && p.frame.omega() == &int(1),
        "charlier frame"
    );
    let table = gram_check(&p.pair, &p.frame, 13, &int(1))?;
    let u = solve_moments(&p.pair, &p.frame, int(1), 26).unwrap();
    for n in 0..=12usize {
        let nn = int(n as i64);
        ensure!(table.beta[n] == &nn + &mu, "beta_{n} != n + mu");
        ensure!(
            table.gamma[n + 1] == (&nn + int(1)) * &mu,
            "gamma_{} != (n + 1) mu",
            n + 1
        );
        let pn2 = table.poly(n) * table.poly(n);
        let gram_beta = u.pair(&(&pn2 * &Poly::x())).unwrap() / u.pair(&pn2).unwrap();
        ensure!(gram_beta == table.beta[n], "Gram beta_{n} disagrees");
    }
    Ok("beta_n = n + 1/2 and gamma_{n+1} = (n + 1)/2 for n <= 12".into())
}

// ---------------------------------------------------------------------------
// CLI contract.

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn hahn(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hahn"));
    cmd.args(args).env_remove("HAHN_DEPTH");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("run hahn");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn expect_code(args: &[&str], code: i32) -> Result<Run, String> {
    let r = hahn(args, &[]);
    ensure!(
        r.code == code,
        "`hahn {}` exited {} (wanted {code}): {}",
        args.join(" "),
        r.code,
        r.stderr.trim()
    );
    Ok(r)
}

fn all_string_leaves(v: &serde_json::Value, out: &mut Vec<String>) {
    match v {
        serde_json::Value::String(s) => out.push(s.clone()),
        serde_json::Value::Array(a) => a.iter().for_each(|x| all_string_leaves(x, out)),
        serde_json::Value::Object(o) => o.values().for_each(|x| all_string_leaves(x, out)),
        _ => {}
    }
}

fn criterion_9() -> Outcome {
    for name in presets::NAMES {
        let p = presets::lookup(name).unwrap();
        let r = expect_code(&["classify", "--preset", name, "--format", "json"], 0)?;
        let report: RegularityReport =
            serde_json::from_str(&r.stdout).map_err(|e| e.to_string())?;
        ensure!(
            report == check_regular(&p.pair, &p.frame, 8),
            "{name}: classify report differs"
        );

        let r = expect_code(
            &[
                "recurrence",
                "--preset",
                name,
                "--format",
                "json",
                "--n",
                "6",
            ],
            0,
        )?;
        let table: RecurrenceTable = serde_json::from_str(&r.stdout).map_err(|e| e.to_string())?;
        ensure!(
            table == recurrence(&p.pair, &p.frame, 6).unwrap(),
            "{name}: recurrence JSON round trip"
        );
        let value: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
        let mut leaves = Vec::new();
        all_string_leaves(&value["beta"], &mut leaves);
        all_string_leaves(&value["gamma"], &mut leaves);
        for s in &leaves {
            let x = parse_rational(s).map_err(|e| e.to_string())?;
            ensure!(&format_rational(&x) == s, "codec is not canonical on {s:?}");
        }

        let r = expect_code(
            &[
                "recurrence",
                "--preset",
                name,
                "--format",
                "csv",
                "--n",
                "4",
            ],
            0,
        )?;
        let mut lines = r.stdout.lines();
        ensure!(lines.next() == Some("n,beta,gamma"), "{name}: csv header");
        for (n, line) in lines.enumerate() {
            let cells: Vec<&str> = line.split(',').collect();
            ensure!(
                cells.len() == 3 && cells[0] == n.to_string(),
                "{name}: csv row {line:?}"
            );
            ensure!(
                parse_rational(cells[1]).unwrap() == table.beta[n],
                "{name}: csv beta_{n}"
            );
            ensure!(
                parse_rational(cells[2]).unwrap() == table.gamma[n],
                "{name}: csv gamma_{n}"
            );
        }

        let r = expect_code(
            &[
                "moments", "--preset", name, "--format", "json", "--n", "10", "--y0", "3",
            ],
            0,
        )?;
        let u: MomentFunctional = serde_json::from_str(&r.stdout).map_err(|e| e.to_string())?;
        let want = solve_moments(&p.pair, &p.frame, int(3), 10).unwrap();
        ensure!(u == want, "{name}: moments JSON round trip");
        let value: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
        let power: Vec<Scalar> = value["powerMoments"]
            .as_array()
            .ok_or("powerMoments missing")?
            .iter()
            .map(|s| parse_rational(s.as_str().unwrap()).unwrap())
            .collect();
        ensure!(power == want.power_moments(), "{name}: power moments");
    }

    let r = expect_code(&["classify", "--preset", "charlier:mu=0"], 2)?;
    ensure!(
        r.stdout.contains("phi_root_condition at n=0")
            || r.stderr.contains("phi_root_condition at n=0"),
        "charlier mu = 0 reason missing"
    );
    let r = expect_code(&["classify", "--q", "0", "--a", "1", "--d", "1"], 1)?;
    ensure!(
        r.stderr.contains("q must be nonzero"),
        "q = 0 message: {}",
        r.stderr
    );
    let r = expect_code(&["classify", "--a", "1/0", "--d", "1", "--q", "2"], 1)?;
    ensure!(
        r.stderr.contains("--a"),
        "parse error does not name the field: {}",
        r.stderr
    );
    expect_code(&["classify", "--preset", "meixner", "--q", "2"], 1)?;
    expect_code(&["classify", "--preset", "no-such-family"], 1)?;
    expect_code(&["frobnicate"], 1)?;
    expect_code(&["--help"], 0)?;
    expect_code(&["recurrence", "--preset", "charlier:mu=0"], 2)?;
    expect_code(
        &[
            "moments", "--a", "1", "--d", "-1", "--q", "1", "--omega", "1",
        ],
        2,
    )?;

    let r = hahn(
        &["classify", "--preset", "meixner", "--format", "json"],
        &[("HAHN_DEPTH", "5")],
    );
    let report: RegularityReport = serde_json::from_str(&r.stdout).map_err(|e| e.to_string())?;
    ensure!(report.regular_up_to == 5, "HAHN_DEPTH not honoured");

    let r = expect_code(&["presets", "--format", "json"], 0)?;
    let listed: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    for (entry, p) in listed.as_array().unwrap().iter().zip(presets::catalog()) {
        let pair: PearsonPair = serde_json::from_value(entry["pair"].clone()).unwrap();
        let frame: HahnFrame = serde_json::from_value(entry["frame"].clone()).unwrap();
        ensure!(
            pair == p.pair && frame == p.frame,
            "presets listing for {}",
            p.name
        );
    }

    expect_code(&["verify", "--suite", "all", "--n", "8"], 0)?;
    let r = expect_code(
        &[
            "verify",
            "--suite",
            "gram",
            "--preset",
            "meixner",
            "--fuzz-moment",
            "3",
            "--format",
            "json",
        ],
        3,
    )?;
    let report: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let named = report["checks"].as_array().unwrap().iter().any(|c| {
        c["pass"] == false
            && c["firstMismatch"]
                .as_str()
                .is_some_and(|m| m.contains("cell ("))
    });
    ensure!(named, "fuzzed gram report does not name a cell");
    expect_code(
        &[
            "verify",
            "--suite",
            "identities",
            "--q",
            "3/5",
            "--omega",
            "-1/3",
        ],
        0,
    )?;
    Ok("exit codes, JSON and CSV round trips, codec, fuzzed verification".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "operator identities", Some(10), criterion_1),
        (2, "moment/Pearson equivalence", Some(5), criterion_2),
        (3, "regularity forward (Gram)", Some(10), criterion_3),
        (4, "regularity converse (Hankel)", None, criterion_4),
        (5, "Rodrigues formula", Some(60), criterion_5),
        (6, "derivative-sequence laws", None, criterion_6),
        (7, "closed-form spot values", None, criterion_7),
        (8, "Charlier limit", None, criterion_8),
        (9, "CLI contract", None, criterion_9),
    ];
    let mut failures = 0;
    for (id, title, limit, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(secs)) if elapsed > Duration::from_secs(secs) => {
                Err(format!("took {elapsed:.2?}, limit {secs} s"))
            }
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("criterion {id}: PASS  {title}: {detail} [{elapsed:.2?}]"),
            Err(why) => {
                failures += 1;
                println!("criterion {id}: FAIL  {title}: {why} [{elapsed:.2?}]");
            }
        }
    }
    if failures > 0 {
        println!("acceptance: {failures} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all 9 criteria passed");
}
