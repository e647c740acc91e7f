//! The `mirrorkit` command line: argument parsing, command execution and
//! report rendering, kept separate from `main` so tests can drive it.

pub mod args;
pub mod commands;
pub mod report;

use args::{Cli, Command, Options};
use clap::Parser;
use commands::CliError;
use serde_json::json;
use std::ffi::OsString;

/// What a run prints and the status it exits with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli.command, &cli.opts),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            }
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Parse { .. } => "parse",
        Command::Basis { .. } => "basis",
        Command::Mirror { .. } => "mirror",
        Command::ReducedMirror { .. } => "reduced-mirror",
        Command::MirrorQuiver { .. } => "mirror-quiver",
        Command::CheckSymmetric { .. } => "check-symmetric",
        Command::CheckGendo { .. } => "check-gendo",
        Command::Domdim { .. } => "domdim",
        Command::Ext { .. } => "ext",
        Command::Tor { .. } => "tor",
        Command::StrongIdem { .. } => "strong-idem",
        Command::StratDim { .. } => "strat-dim",
        Command::Tower { .. } => "tower",
        Command::VerifyPaperSuite { .. } => "verify-paper-suite",
    }
}

pub fn execute(cmd: &Command, opts: &Options) -> Outcome {
    match commands::evaluate(cmd, opts) {
        Ok((report, tally)) => {
            let doc = json!({
                "command": command_name(cmd),
                "input": cmd.file().display().to_string(),
                "report": report,
                "tally": tally.to_json(),
            });
            let stdout = if opts.pretty {
                report::render_text(&doc)
            } else {
                let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
                s.push('\n');
                s
            };
            Outcome { code: tally.exit_code(opts.strict), stdout, stderr: String::new() }
        }
        Err(e) => {
            let msg = match &e {
                CliError::Usage(m) | CliError::Io(m) => m.clone(),
                CliError::Core(c) => format!("{}: {}", cmd.file().display(), c),
            };
            Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {}\n", msg) }
        }
    }
}
