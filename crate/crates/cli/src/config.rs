//! Flat `key = value` configuration files.

use std::ffi::OsString;
use std::path::Path;

use clap::parser::ValueSource;
use clap::{ArgAction, ArgMatches, Command};

use crate::Invalid;

/// Reads `key = value` lines; `#` starts a comment, blank lines are skipped.
pub fn read(path: &Path) -> anyhow::Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Invalid(format!("cannot read config file {}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse(text: &str) -> anyhow::Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Invalid(format!("config line {}: expected `key = value`", n + 1)))?;
        let key = key.trim().replace('_', "-");
        if key.is_empty() {
            return Err(Invalid(format!("config line {}: empty key", n + 1)).into());
        }
        out.push((key, value.trim().to_string()));
    }
    Ok(out)
}

/// Turns config entries into extra arguments for `command`, skipping those
/// already given on the command line.
pub fn to_args(
    entries: &[(String, String)],
    command: &Command,
    matches: &ArgMatches,
) -> anyhow::Result<Vec<OsString>> {
    let mut extra = Vec::new();
    for (key, value) in entries {
        let arg = command
            .get_arguments()
            .find(|a| a.get_long() == Some(key.as_str()) && a.get_id() != "config")
            .ok_or_else(|| {
                Invalid(format!(
                    "unknown config key `{key}` for `{}`",
                    command.get_name()
                ))
            })?;
        if matches.value_source(arg.get_id().as_str()) == Some(ValueSource::CommandLine) {
            continue;
        }
        if matches!(arg.get_action(), ArgAction::SetTrue) {
            match value.as_str() {
                "true" => extra.push(format!("--{key}").into()),
                "false" => {}
                other => {
                    return Err(Invalid(format!(
                        "config key `{key}`: expected true or false, got `{other}`"
                    ))
                    .into())
                }
            }
        } else {
            let joined: Vec<&str> = value.split(',').map(str::trim).collect();
            extra.push(format!("--{key}={}", joined.join(",")).into());
        }
    }
    Ok(extra)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blank_lines() {
        let got = parse("# header\n\nbeta = 1.5  # inline\np_count=4\n").unwrap();
        assert_eq!(
            got,
            vec![
                ("beta".into(), "1.5".into()),
                ("p-count".into(), "4".into())
            ]
        );
    }

    #[test]
    fn missing_equals_rejected() {
        assert!(parse("beta 1").is_err());
    }
}
