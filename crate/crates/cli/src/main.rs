mod args;
mod commands;
mod error;
mod manifest;
mod model;
mod units;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::{CliError, CliResult};
use manifest::{recorded_args, RunManifest};

fn main() -> ExitCode {
    let argv: Vec<OsString> = std::env::args_os().collect();
    match run(argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("casimir: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(argv: Vec<OsString>) -> CliResult<()> {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            // --help / --version print and succeed; everything else is a usage error.
            let code = e.exit_code();
            let _ = e.print();
            if code == 0 {
                return Ok(());
            }
            return Err(CliError::usage("invalid command line"));
        }
    };
    if let Command::Rerun { file } = &cli.command {
        let text = fs::read_to_string(file).map_err(|source| CliError::Io {
            path: file.display().to_string(),
            source,
        })?;
        let recorded = recorded_args(&text);
        if recorded.is_empty() {
            return Err(CliError::usage(format!("{} has no recorded command", file.display())));
        }
        let mut replay: Vec<OsString> = vec![argv[0].clone()];
        replay.extend(recorded.into_iter().map(OsString::from));
        // The output destination belongs to this invocation, not the recorded one.
        if let Some(out) = &cli.global.output {
            replay.push("--output".into());
            replay.push(out.clone().into_os_string());
        }
        return run(replay);
    }
    let recorded = recordable_args(&argv[1..]);
    let quad = cli.global.settings();
    let m = RunManifest::new(command_name(&cli.command), &recorded);
    let out = match &cli.command {
        Command::Pressure(a) => commands::cmd_pressure(a, quad, m),
        Command::Sweep(a) => commands::cmd_sweep(a, quad, m),
        Command::Integrand(a) => commands::cmd_integrand(a, quad, m),
        Command::Slab(a) => commands::cmd_slab(a, quad, m),
        Command::Thermo(a) => commands::cmd_thermo(a, quad, m),
        Command::Rerun { .. } => unreachable!("handled above"),
    }?;
    let timestamp = (!cli.global.deterministic).then(|| chrono::Utc::now().to_rfc3339());
    let text = out.manifest.render(timestamp.as_deref()) + &out.body;
    match &cli.global.output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Pressure(_) => "pressure",
        Command::Sweep(_) => "sweep",
        Command::Integrand(_) => "integrand",
        Command::Slab(_) => "slab",
        Command::Thermo(_) => "thermo",
        Command::Rerun { .. } => "rerun",
    }
}

/// The command line minus the output destination, so replaying a header
/// never overwrites the file it came from.
fn recordable_args(args: &[OsString]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip_next = false;
    for a in args {
        let a = a.to_string_lossy().into_owned();
        if skip_next {
            skip_next = false;
            continue;
        }
        if a == "-o" || a == "--output" {
            skip_next = true;
            continue;
        }
        if a.starts_with("--output=") || (a.starts_with("-o") && a.len() > 2 && !a.starts_with("--")) {
            continue;
        }
        out.push(a);
    }
    out
}
