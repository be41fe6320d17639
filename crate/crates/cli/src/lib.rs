//! Command-line front end for `hahn-core`.
//!
//! [`run`] maps parsed arguments to an [`Outcome`]: the text for stdout and
//! stderr together with the process exit code. Exit codes are stable:
//! 0 pass, 1 input error, 2 classification negative, 3 verification mismatch.

pub mod args;
pub mod commands;
pub mod config;
pub mod render;
pub mod suites;

pub use args::{Cli, Command, Format, Suite};
pub use config::{RunConfig, Subject};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

/// A command that could not complete normally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    /// Rendered output still worth printing, such as a negative report.
    pub stdout: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
            stdout: String::new(),
        }
    }

    pub fn negative(message: impl Into<String>, stdout: String) -> Self {
        Failure {
            code: EXIT_NEGATIVE,
            message: message.into(),
            stdout,
        }
    }

    /// Maps an engine error to the exit-code contract.
    pub fn from_core(e: hahn_core::Error) -> Self {
        match e {
            hahn_core::Error::NotAdmissible { .. } | hahn_core::Error::NotRegular(_) => {
                Failure::negative(e.to_string(), String::new())
            }
            other => Failure::input(other.to_string()),
        }
    }
}

impl From<Failure> for Outcome {
    fn from(f: Failure) -> Self {
        Outcome {
            code: f.code,
            stdout: f.stdout,
            stderr: format!("error: {}\n", f.message),
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Classify(a) => commands::classify(&a),
        Command::Recurrence(a) => commands::recurrence(&a),
        Command::Moments(a) => commands::moments(&a),
        Command::Verify(a) => suites::verify(&a),
        Command::Presets(a) => commands::presets(&a),
    };
    result.unwrap_or_else(Outcome::from)
}
