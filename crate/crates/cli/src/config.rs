//! Key-value experiment configs and the merged parameter set of one run.
//!
//! ```text
//! # acceptance run for the scaling law
//! schema = 1
//! command = scaling-check
//! map = maps/kercal.map
//! r = 2
//! power = 8
//! ```
//!
//! Relative paths in a config file are resolved against the file's directory. Flags given on
//! the command line override config values.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Value,
    /// An input file that must exist.
    Input,
    /// An output file.
    Output,
}

#[derive(Debug, Clone, Copy)]
pub struct OptSpec {
    pub key: &'static str,
    pub help: &'static str,
    pub kind: Kind,
    pub default: Option<&'static str>,
}

pub const fn value(key: &'static str, help: &'static str, default: Option<&'static str>) -> OptSpec {
    OptSpec {
        key,
        help,
        kind: Kind::Value,
        default,
    }
}

pub const fn input(key: &'static str, help: &'static str) -> OptSpec {
    OptSpec {
        key,
        help,
        kind: Kind::Input,
        default: None,
    }
}

pub const fn output(key: &'static str, help: &'static str, default: &'static str) -> OptSpec {
    OptSpec {
        key,
        help,
        kind: Kind::Output,
        default: Some(default),
    }
}

#[derive(Debug, Clone, Default)]
pub struct ConfigFile {
    pub command: Option<String>,
    /// key -> (line, value)
    pub entries: BTreeMap<String, (usize, String)>,
    pub dir: PathBuf,
}

pub fn parse_config(text: &str, dir: &Path) -> Result<ConfigFile, CliError> {
    let mut cfg = ConfigFile {
        dir: dir.to_path_buf(),
        ..Default::default()
    };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, val) = content
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {line}: expected `key = value`")))?;
        let (key, val) = (key.trim().to_string(), val.trim().to_string());
        if key.is_empty() || val.is_empty() {
            return Err(CliError::Config(format!("line {line}: empty key or value")));
        }
        match key.as_str() {
            "schema" => {
                if val.parse::<u32>().ok() != Some(SCHEMA_VERSION) {
                    return Err(CliError::Config(format!(
                        "line {line}: unsupported schema {val:?}, expected {SCHEMA_VERSION}"
                    )));
                }
            }
            "command" => cfg.command = Some(val),
            _ => {
                if cfg.entries.insert(key.clone(), (line, val)).is_some() {
                    return Err(CliError::Config(format!("line {line}: duplicate key {key:?}")));
                }
            }
        }
    }
    Ok(cfg)
}

/// Resolved parameters of one run.
#[derive(Debug, Clone)]
pub struct Params {
    pub command: String,
    values: BTreeMap<String, String>,
    kinds: BTreeMap<String, Kind>,
}

impl Params {
    /// Merges config entries and command-line values over the defaults in `specs`.
    pub fn resolve(
        command: &str,
        specs: &[OptSpec],
        config: Option<&ConfigFile>,
        cli: &[(String, String)],
    ) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        let mut kinds = BTreeMap::new();
        for s in specs {
            kinds.insert(s.key.to_string(), s.kind);
            if let Some(d) = s.default {
                values.insert(s.key.to_string(), d.to_string());
            }
        }
        if let Some(cfg) = config {
            if let Some(c) = &cfg.command {
                if c != command {
                    return Err(CliError::Config(format!("config is for {c:?}, not {command:?}")));
                }
            }
            for (key, (line, val)) in &cfg.entries {
                let spec = specs
                    .iter()
                    .find(|s| s.key == key)
                    .ok_or_else(|| CliError::Config(format!("line {line}: unknown key {key:?} for {command}")))?;
                let val = match spec.kind {
                    Kind::Value => val.clone(),
                    _ => cfg.dir.join(val).to_string_lossy().into_owned(),
                };
                values.insert(key.clone(), val);
            }
        }
        for (key, val) in cli {
            values.insert(key.clone(), val.clone());
        }
        let params = Params {
            command: command.to_string(),
            values,
            kinds,
        };
        for (key, kind) in &params.kinds {
            if *kind == Kind::Input {
                if let Some(p) = params.values.get(key) {
                    if !Path::new(p).is_file() {
                        return Err(CliError::Config(format!("{key}: no such file {p:?}")));
                    }
                }
            }
        }
        Ok(params)
    }

    pub fn opt<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<T>()
                .map(Some)
                .map_err(|_| CliError::Config(format!("{key}: cannot parse {v:?}"))),
        }
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<T, CliError> {
        self.opt(key)?
            .ok_or_else(|| CliError::Config(format!("missing required parameter {key:?}")))
    }

    pub fn path(&self, key: &str) -> Result<PathBuf, CliError> {
        self.get::<String>(key).map(PathBuf::from)
    }

    /// Canonical text hashed into every artifact: parameters (minus output locations) and
    /// the contents of every input file.
    pub fn canonical(&self) -> Result<String, CliError> {
        let mut out = format!("command={}\n", self.command);
        for (key, val) in &self.values {
            match self.kinds.get(key) {
                Some(Kind::Output) => {}
                Some(Kind::Input) => {
                    let text = std::fs::read_to_string(val).map_err(|e| CliError::Io(format!("{val}: {e}")))?;
                    out.push_str(&format!("{key}:file\n{text}\n"));
                }
                _ => out.push_str(&format!("{key}={val}\n")),
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPECS: &[OptSpec] = &[
        value("r", "", Some("2")),
        value("power", "", None),
        output("out", "", "x.json"),
    ];

    #[test]
    fn parses_and_merges() {
        let cfg = parse_config(
            "schema = 1\ncommand = c\n# note\npower = 8 # trailing\n",
            Path::new("/tmp"),
        )
        .unwrap();
        let p = Params::resolve("c", SPECS, Some(&cfg), &[("r".into(), "3".into())]).unwrap();
        assert_eq!(p.get::<f64>("r").unwrap(), 3.0);
        assert_eq!(p.get::<usize>("power").unwrap(), 8);
        assert!(p.canonical().unwrap().contains("power=8"));
        assert!(!p.canonical().unwrap().contains("out"));
    }

    #[test]
    fn rejects_bad_configs() {
        let dir = Path::new(".");
        assert!(parse_config("schema = 2", dir).is_err());
        assert!(parse_config("power", dir).is_err());
        assert!(parse_config("power = 1\npower = 2", dir).is_err());
        let cfg = parse_config("speed = 4", dir).unwrap();
        let e = Params::resolve("c", SPECS, Some(&cfg), &[]).unwrap_err();
        assert!(e.to_string().contains("line 1"));
        let cfg = parse_config("command = other", dir).unwrap();
        assert!(Params::resolve("c", SPECS, Some(&cfg), &[]).is_err());
    }
}
