mod args;
mod cmd_infer;
mod cmd_summarize;
mod cmd_synth;

use std::fmt;
use std::process::ExitCode;

use clap::Parser;
use relnet_core::Error;

/// A pipeline error tagged with the stage that raised it.
pub struct StageError {
    pub stage: &'static str,
    pub source: Error,
}

impl fmt::Display for StageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.stage, self.source)
    }
}

pub trait Stage<T> {
    fn stage(self, stage: &'static str) -> Result<T, StageError>;
}

impl<T> Stage<T> for relnet_core::Result<T> {
    fn stage(self, stage: &'static str) -> Result<T, StageError> {
        self.map_err(|source| StageError { stage, source })
    }
}

impl<T> Stage<T> for std::io::Result<T> {
    fn stage(self, stage: &'static str) -> Result<T, StageError> {
        self.map_err(|source| StageError {
            stage,
            source: Error::Io(source),
        })
    }
}

// Exit codes: 0 ok, 2 parse/format, 3 label/class, 4 empty result, 5 I/O.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } | Error::Format(_) | Error::Dimension(_) | Error::Domain(_) => 2,
        Error::Label(_) | Error::Class(_) => 3,
        Error::Empty(_) => 4,
        Error::Io(_) => 5,
    }
}

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    let result = match cli.command {
        args::Command::Infer(a) => cmd_infer::run(&a),
        args::Command::Synth(a) => cmd_synth::run(&a),
        args::Command::Summarize(a) => cmd_summarize::run(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err.source))
        }
    }
}
