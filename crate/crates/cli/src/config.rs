use hahn_core::presets::{self, Preset};
use hahn_core::{HahnFrame, PearsonPair, Scalar};
use num_traits::Zero;

use crate::args::{CommonArgs, Format};
use crate::Failure;

/// What a command runs on: a named pair, or only a frame.
#[derive(Clone, Debug)]
pub struct Subject {
    pub label: String,
    pub pair: Option<PearsonPair>,
    pub frame: HahnFrame,
}

impl Subject {
    pub fn from_preset(p: Preset) -> Self {
        Subject {
            label: p.name,
            pair: Some(p.pair),
            frame: p.frame,
        }
    }
}

/// Validated command input.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// `None` when neither a preset nor any pair or frame flag was given.
    pub subject: Option<Subject>,
    pub depth: usize,
    pub format: Format,
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self, Failure> {
        let coeffs = [&args.a, &args.b, &args.c, &args.d, &args.e];
        let any_pair = coeffs.iter().any(|c| c.is_some());
        let any_frame = args.q.is_some() || args.omega.is_some();
        let subject = match &args.preset {
            Some(name) => {
                if any_pair || any_frame {
                    return Err(Failure::input(
                        "--preset cannot be combined with --a/--b/--c/--d/--e/--q/--omega",
                    ));
                }
                let p =
                    presets::lookup(name).map_err(|e| Failure::input(format!("--preset: {e}")))?;
                Some(Subject::from_preset(p))
            }
            None if any_pair || any_frame => {
                let q = args.q.clone().ok_or_else(|| {
                    Failure::input("--q is required with explicit pair or frame flags")
                })?;
                let omega = args.omega.clone().unwrap_or_else(Scalar::zero);
                let frame = HahnFrame::new(q, omega).map_err(|e| Failure::input(e.to_string()))?;
                let pair = if any_pair {
                    let get = |c: &Option<Scalar>| c.clone().unwrap_or_else(Scalar::zero);
                    Some(
                        PearsonPair::new(
                            get(&args.a),
                            get(&args.b),
                            get(&args.c),
                            get(&args.d),
                            get(&args.e),
                        )
                        .map_err(|e| Failure::input(e.to_string()))?,
                    )
                } else {
                    None
                };
                Some(Subject {
                    label: "custom".into(),
                    pair,
                    frame,
                })
            }
            None => None,
        };
        Ok(RunConfig {
            subject,
            depth: args.depth,
            format: args.format,
        })
    }

    /// The pair and frame, for commands that need a full Pearson pair.
    pub fn require_pair(&self) -> Result<(PearsonPair, HahnFrame), Failure> {
        match &self.subject {
            Some(Subject {
                pair: Some(pair),
                frame,
                ..
            }) => Ok((pair.clone(), frame.clone())),
            _ => Err(Failure::input(
                "a Pearson pair is required: use --preset or --a/--b/--c/--d/--e with --q/--omega",
            )),
        }
    }
}
