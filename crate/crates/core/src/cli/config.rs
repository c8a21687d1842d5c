//! `--config FILE` support.
//!
//! The file is turned into flags and spliced in right after the subcommand
//! name. Since every argument overrides itself, anything the user typed later
//! on the command line wins.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::CommandFactory;
use serde_json::Value;

use super::{Cli, CliError};

fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--" {
            break;
        }
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(rest) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(rest));
        }
    }
    None
}

fn subcommand_position(args: &[OsString]) -> Option<usize> {
    let cmd = Cli::command();
    let names: Vec<String> = cmd.get_subcommands().map(|c| c.get_name().to_string()).collect();
    let mut i = 1;
    while i < args.len() {
        let s = args[i].to_string_lossy();
        if s == "--config" {
            i += 2;
            continue;
        }
        if names.iter().any(|n| *n == s) {
            return Some(i);
        }
        i += 1;
    }
    None
}

fn scalar(key: &str, v: &Value) -> Result<Option<String>, CliError> {
    match v {
        Value::Number(n) => Ok(Some(n.to_string())),
        Value::String(s) => Ok(Some(s.clone())),
        Value::Array(items) => {
            let parts = items
                .iter()
                .map(|x| match x {
                    Value::Number(n) => Ok(n.to_string()),
                    _ => Err(CliError::Usage(format!("config key `{key}`: arrays must hold numbers"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Some(parts.join(",")))
        }
        Value::Null => Ok(None),
        Value::Bool(_) | Value::Object(_) => Err(CliError::Usage(format!("config key `{key}` has an unsupported value"))),
    }
}

/// Flags equivalent to a config object, in key order.
pub fn config_flags(config: &Value) -> Result<Vec<OsString>, CliError> {
    let Value::Object(map) = config else {
        return Err(CliError::Usage("config file must hold a JSON object".into()));
    };
    let mut out = Vec::new();
    for (key, v) in map {
        let flag = format!("--{}", key.replace('_', "-"));
        match v {
            Value::Bool(true) => out.push(flag.into()),
            Value::Bool(false) => {}
            other => {
                if let Some(s) = scalar(key, other)? {
                    out.push(flag.into());
                    out.push(s.into());
                }
            }
        }
    }
    Ok(out)
}

/// Returns `args` with the config file's flags inserted, or unchanged when no
/// `--config` is given. Parsing of the result is left to clap, so unknown keys
/// are reported as unknown flags.
pub fn merge_config(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: invalid JSON: {e}", path.display())))?;
    let flags = config_flags(&value)?;
    let Some(pos) = subcommand_position(&args) else {
        return Ok(args);
    };
    let mut merged = args[..=pos].to_vec();
    merged.extend(flags);
    merged.extend_from_slice(&args[pos + 1..]);
    Ok(merged)
}
