use hahn_core::classical::{check_regular, recurrence as build_recurrence};
use hahn_core::functional::solve_moments;
use hahn_core::presets::catalog;
use hahn_core::scalar::display_rational;
use hahn_core::{MomentFunctional, RegularityReport, Scalar};
use serde::Serialize;

use crate::args::{CommonArgs, Format, MomentArgs, PresetArgs};
use crate::config::RunConfig;
use crate::render::{self, csv, describe, json};
use crate::{Failure, Outcome};

/// Number of polynomials printed in the human recurrence view.
const HUMAN_POLYS: usize = 4;

fn subject_label(config: &RunConfig) -> String {
    config
        .subject
        .as_ref()
        .map(|s| s.label.clone())
        .unwrap_or_else(|| "custom".into())
}

fn report_text(head: &str, report: &RegularityReport) -> String {
    let mut out = format!("{head}\n");
    match report.first_admissibility_failure {
        Some(j) => out.push_str(&format!("admissible: no (d_{j} = 0)\n")),
        None => out.push_str(&format!(
            "admissible: yes (d_0 .. d_{} nonzero)\n",
            report.d_horizon
        )),
    }
    match (&report.first_regularity_failure, report.regular) {
        (_, true) => out.push_str(&format!(
            "regular up to n = {}: yes\n",
            report.regular_up_to
        )),
        (Some(f), false) => out.push_str(&format!(
            "regular up to n = {}: no ({f})\n",
            report.regular_up_to
        )),
        (None, false) => out.push_str(&format!("regular up to n = {}: no\n", report.regular_up_to)),
    }
    out
}

pub fn classify(args: &CommonArgs) -> Result<Outcome, Failure> {
    let config = RunConfig::resolve(args)?;
    let (pair, frame) = config.require_pair()?;
    let label = subject_label(&config);
    let report = check_regular(&pair, &frame, config.depth);
    let text = match config.format {
        Format::Json => json(&report),
        Format::Csv => {
            let failure = report
                .first_regularity_failure
                .as_ref()
                .map(|f| f.to_string())
                .unwrap_or_default();
            csv(
                &["subject", "depth", "admissible", "regular", "failure"],
                [vec![
                    label.clone(),
                    report.regular_up_to.to_string(),
                    report.admissible.to_string(),
                    report.regular.to_string(),
                    failure,
                ]],
            )
        }
        Format::Human => report_text(&describe(&label, &pair, &frame), &report),
    };
    if report.regular {
        Ok(Outcome::ok(text))
    } else {
        let reason = report
            .first_regularity_failure
            .as_ref()
            .map(|f| f.to_string())
            .unwrap_or_else(|| "not regular".into());
        Err(Failure::negative(format!("not regular: {reason}"), text))
    }
}

pub fn recurrence(args: &CommonArgs) -> Result<Outcome, Failure> {
    let config = RunConfig::resolve(args)?;
    let (pair, frame) = config.require_pair()?;
    let label = subject_label(&config);
    let table = match build_recurrence(&pair, &frame, config.depth) {
        Ok(t) => t,
        Err(hahn_core::Error::NotRegular(report)) => {
            let text = match config.format {
                Format::Json => json(&*report),
                _ => report_text(&describe(&label, &pair, &frame), &report),
            };
            let reason = report
                .first_regularity_failure
                .map(|f| f.to_string())
                .unwrap_or_else(|| "not regular".into());
            return Err(Failure::negative(format!("not regular: {reason}"), text));
        }
        Err(e) => return Err(Failure::from_core(e)),
    };
    let text = match config.format {
        Format::Json => json(&table),
        Format::Csv => csv(
            &["n", "beta", "gamma"],
            table
                .beta
                .iter()
                .zip(&table.gamma)
                .enumerate()
                .map(|(n, (b, g))| vec![n.to_string(), render::rational(b), render::rational(g)]),
        ),
        Format::Human => {
            let mut out = describe(&label, &pair, &frame);
            out.push('\n');
            for (n, b) in table.beta.iter().enumerate() {
                out.push_str(&format!("beta_{n} = {}", display_rational(b)));
                if n > 0 {
                    out.push_str(&format!(
                        ", gamma_{n} = {}",
                        display_rational(&table.gamma[n])
                    ));
                }
                out.push('\n');
            }
            for n in 0..table.polynomials.len().min(HUMAN_POLYS) {
                out.push_str(&format!("P_{n}(x) = {}\n", table.poly(n)));
            }
            out
        }
    };
    Ok(Outcome::ok(text))
}

/// Moment table plus its power-basis view.
#[derive(Serialize)]
pub struct MomentsOutput {
    #[serde(flatten)]
    pub table: MomentFunctional,
    #[serde(
        rename = "powerMoments",
        with = "hahn_core::scalar::serde_rational_vec"
    )]
    pub power_moments: Vec<Scalar>,
}

pub fn moments(args: &MomentArgs) -> Result<Outcome, Failure> {
    let config = RunConfig::resolve(&args.common)?;
    let (pair, frame) = config.require_pair()?;
    let label = subject_label(&config);
    let u =
        solve_moments(&pair, &frame, args.y0.clone(), config.depth).map_err(Failure::from_core)?;
    let power = u.power_moments();
    let text = match config.format {
        Format::Json => json(&MomentsOutput {
            table: u,
            power_moments: power,
        }),
        Format::Csv => csv(
            &["n", "y", "power"],
            u.moments()
                .iter()
                .zip(&power)
                .enumerate()
                .map(|(n, (y, p))| vec![n.to_string(), render::rational(y), render::rational(p)]),
        ),
        Format::Human => {
            let mut out = describe(&label, &pair, &frame);
            out.push('\n');
            for (n, (y, p)) in u.moments().iter().zip(&power).enumerate() {
                out.push_str(&format!(
                    "y_{n} = {}, <u, x^{n}> = {}\n",
                    display_rational(y),
                    display_rational(p)
                ));
            }
            out
        }
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct PresetEntry {
    name: String,
    description: &'static str,
    pair: hahn_core::PearsonPair,
    frame: hahn_core::HahnFrame,
}

pub fn presets(args: &PresetArgs) -> Result<Outcome, Failure> {
    let entries: Vec<PresetEntry> = catalog()
        .into_iter()
        .map(|p| PresetEntry {
            name: p.name,
            description: p.description,
            pair: p.pair,
            frame: p.frame,
        })
        .collect();
    let text = match args.format {
        Format::Json => json(&entries),
        Format::Csv => csv(
            &["name", "a", "b", "c", "d", "e", "q", "omega"],
            entries.iter().map(|p| {
                vec![
                    p.name.clone(),
                    render::rational(p.pair.a()),
                    render::rational(p.pair.b()),
                    render::rational(p.pair.c()),
                    render::rational(p.pair.d()),
                    render::rational(p.pair.e()),
                    render::rational(p.frame.q()),
                    render::rational(p.frame.omega()),
                ]
            }),
        ),
        Format::Human => entries
            .iter()
            .map(|p| format!("{:<20} {}\n", p.name, p.description))
            .collect(),
    };
    Ok(Outcome::ok(text))
}
