use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use posetq::{parse_posets, Error, LabeledPoset, NamedPoset};

/// Reads every stanza of a poset file, attaching the file name to parse
/// errors.
pub fn read_all(path: &str) -> Result<Vec<NamedPoset>> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
    parse_posets(&text).map_err(|e| match e {
        Error::Parse { line, msg } => anyhow!("{path}:{line}: {msg}"),
        other => anyhow!("{path}: {other}"),
    })
}

fn split_spec(spec: &str) -> (&str, Option<&str>) {
    match spec.rsplit_once(':') {
        Some((p, n)) if !Path::new(spec).exists() => (p, Some(n)),
        _ => (spec, None),
    }
}

/// All posets of `file`, or just the one named by `file:name`.
pub fn read_many(spec: &str) -> Result<Vec<NamedPoset>> {
    match split_spec(spec) {
        (_, Some(_)) => Ok(vec![read_one(spec)?]),
        (path, None) => read_all(path),
    }
}

/// Resolves `file` (which must hold exactly one poset) or `file:name`.
pub fn read_one(spec: &str) -> Result<NamedPoset> {
    let (path, name) = split_spec(spec);
    let mut all = read_all(path)?;
    match name {
        Some(n) => {
            let idx = all.iter().position(|p| p.name == n).ok_or_else(|| anyhow!("{path}: no poset named `{n}`"))?;
            Ok(all.swap_remove(idx))
        }
        None if all.len() == 1 => Ok(all.remove(0)),
        None if all.is_empty() => bail!("{path}: no poset found"),
        None => {
            let names: Vec<_> = all.iter().map(|p| p.name.as_str()).collect();
            bail!("{path} holds several posets ({}); pick one with {path}:<name>", names.join(", "))
        }
    }
}

pub fn poset(spec: &str) -> Result<LabeledPoset> {
    Ok(read_one(spec)?.poset)
}
