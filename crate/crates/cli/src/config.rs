//! Splices flags from a JSON config file into argv so clap sees them as if
//! typed before the user's own flags; `args_override_self` lets the later
//! (user) occurrence win.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;

use anyhow::{bail, Context, Result};
use clap::CommandFactory;
use serde_json::{Map, Value};

use crate::args::{Cli, GLOBAL_VALUE_FLAGS};

pub fn expand_argv(argv: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some((config, sub_at)) = scan(&argv) else {
        return Ok(argv);
    };
    let Some(sub_at) = sub_at else {
        return Ok(argv);
    };
    let text = fs::read_to_string(&config).with_context(|| format!("reading config {config}"))?;
    let root: Value =
        serde_json::from_str(&text).with_context(|| format!("parsing config {config}"))?;
    let Value::Object(root) = root else {
        bail!("config {config} must be a JSON object");
    };
    let sub = argv[sub_at].to_string_lossy().into_owned();
    let injected = config_flags(&root, &sub)?;
    let mut out = argv[..=sub_at].to_vec();
    out.extend(injected.into_iter().map(OsString::from));
    out.extend_from_slice(&argv[sub_at + 1..]);
    Ok(out)
}

/// Config path and argv index of the subcommand, if any.
fn scan(argv: &[OsString]) -> Option<(String, Option<usize>)> {
    let subcommands: BTreeSet<String> = Cli::command()
        .get_subcommands()
        .map(|c| c.get_name().to_owned())
        .collect();
    let mut config = None;
    let mut sub_at = None;
    let mut i = 1;
    while i < argv.len() {
        let tok = argv[i].to_string_lossy();
        if let Some(path) = tok.strip_prefix("--config=") {
            config = Some(path.to_owned());
        } else if tok == "--config" {
            config = argv.get(i + 1).map(|p| p.to_string_lossy().into_owned());
            i += 1;
        } else if GLOBAL_VALUE_FLAGS.contains(&tok.as_ref()) {
            i += 1;
        } else if sub_at.is_none() && subcommands.contains(tok.as_ref()) {
            sub_at = Some(i);
        } else if tok == "--" {
            break;
        }
        i += 1;
    }
    config.map(|c| (c, sub_at))
}

fn long_flags(sub: Option<&str>) -> BTreeSet<String> {
    let cmd = Cli::command();
    let cmds: Vec<&clap::Command> = match sub {
        Some(name) => cmd.find_subcommand(name).into_iter().collect(),
        None => cmd.get_subcommands().collect(),
    };
    cmds.iter()
        .flat_map(|c| c.get_arguments())
        .filter_map(|a| a.get_long().map(str::to_owned))
        .collect()
}

fn config_flags(root: &Map<String, Value>, sub: &str) -> Result<Vec<String>> {
    let own = long_flags(Some(sub));
    let any = long_flags(None);
    let subcommands: BTreeSet<String> = Cli::command()
        .get_subcommands()
        .map(|c| c.get_name().to_owned())
        .collect();

    let mut merged: Vec<(String, Value)> = Vec::new();
    let mut put = |key: &str, value: &Value| {
        let flag = key.replace('_', "-");
        merged.retain(|(f, _)| *f != flag);
        merged.push((flag, value.clone()));
    };
    // `bounds` names both a subcommand and a sweep flag, so a section is
    // recognised by being an object.
    let is_section = |key: &str, value: &Value| subcommands.contains(key) && value.is_object();
    for (key, value) in root {
        if !is_section(key, value) {
            put(key, value);
        }
    }
    if let Some(Value::Object(section)) = root.get(sub) {
        for (key, value) in section {
            put(key, value);
        }
    }

    let mut flags = Vec::new();
    for (flag, value) in merged {
        if matches!(flag.as_str(), "config" | "output") {
            bail!("`{flag}` cannot be set from a config file");
        }
        if !own.contains(&flag) {
            if any.contains(&flag) {
                continue;
            }
            bail!("unknown config key `{flag}`");
        }
        let rendered = match value {
            Value::Null | Value::Bool(false) => continue,
            Value::Bool(true) => None,
            Value::Number(x) => Some(x.to_string()),
            Value::String(s) => Some(s),
            Value::Array(items) => Some(
                items
                    .iter()
                    .map(scalar)
                    .collect::<Result<Vec<_>>>()
                    .with_context(|| format!("config key `{flag}`"))?
                    .join(","),
            ),
            Value::Object(_) => bail!("config key `{flag}` must not be an object"),
        };
        flags.push(format!("--{flag}"));
        flags.extend(rendered);
    }
    Ok(flags)
}

fn scalar(v: &Value) -> Result<String> {
    match v {
        Value::Number(x) => Ok(x.to_string()),
        Value::String(s) => Ok(s.clone()),
        other => bail!("expected a number or string, found {other}"),
    }
}
