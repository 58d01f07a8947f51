//! `kercal`: batch front-end for the experiments of the kercal workspace.
//!
//! Exit codes: 0 pass, 1 computation error, 2 usage or config error, 3 acceptance check failed.

mod commands;
mod config;
mod output;

use std::ffi::OsString;
use std::path::Path;
use std::process::ExitCode;

use clap::{Arg, ArgMatches, Command};
use thiserror::Error;

use commands::{Outcome, COMMANDS};
use config::{parse_config, ConfigFile, Params};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] kercal_core::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Io(_) | CliError::Core(_) => 1,
        }
    }
}

fn cli() -> Command {
    let mut cmd = Command::new("kercal")
        .about("Conjugation norms, braid quasi-morphisms and averaged quasi-morphisms on disk maps")
        .arg(
            Arg::new("config")
                .long("config")
                .global(true)
                .value_name("FILE")
                .help("key = value config; command-line flags override it"),
        );
    for spec in COMMANDS {
        let mut sub = Command::new(spec.name).about(spec.about);
        for o in spec.options {
            let mut help = o.help.to_string();
            if let Some(d) = o.default.filter(|d| *d != "-") {
                help.push_str(&format!(" [default: {d}]"));
            }
            sub = sub.arg(Arg::new(o.key).long(o.key).value_name("VALUE").help(help));
        }
        cmd = cmd.subcommand(sub);
    }
    cmd
}

fn load_config(path: &str) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
    let dir = Path::new(path).parent().unwrap_or(Path::new("."));
    parse_config(&text, dir)
}

fn dispatch(matches: &ArgMatches) -> Result<Outcome, CliError> {
    let sub = matches.subcommand();
    let config_path = sub
        .and_then(|(_, m)| m.get_one::<String>("config"))
        .or_else(|| matches.get_one::<String>("config"));
    let config = config_path.map(|p| load_config(p)).transpose()?;
    let name = match (sub, config.as_ref().and_then(|c| c.command.as_deref())) {
        (Some((name, _)), _) => name.to_string(),
        (None, Some(name)) => name.to_string(),
        (None, None) => return Err(CliError::Usage("no subcommand given (try --help)".into())),
    };
    let spec = commands::find(&name).ok_or_else(|| CliError::Usage(format!("unknown command {name:?}")))?;
    let overrides: Vec<(String, String)> = match sub {
        Some((_, m)) => spec
            .options
            .iter()
            .filter_map(|o| m.get_one::<String>(o.key).map(|v| (o.key.to_string(), v.clone())))
            .collect(),
        None => Vec::new(),
    };
    let params = Params::resolve(spec.name, spec.options, config.as_ref(), &overrides)?;
    (spec.run)(&params)
}

fn run<I: IntoIterator<Item = OsString>>(args: I) -> u8 {
    let matches = match cli().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&matches) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 3,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
