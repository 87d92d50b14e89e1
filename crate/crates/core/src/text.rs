//! The plain-text poset format.
//!
//! ```text
//! # comments and blank lines are ignored
//! poset sample
//! elements 4
//! cover 1 3 weak
//! cover 2 3 strict
//! labels 1 3 4 2
//! ```
//!
//! A file may hold several stanzas; each starts with a `poset` line.  The
//! `labels` line is optional and gives the label of element `i` at
//! position `i`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poset::{Cover, EdgeKind, LabeledPoset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedPoset {
    pub name: String,
    pub poset: LabeledPoset,
}

struct Stanza {
    name: String,
    start: usize,
    elements: Option<(usize, usize)>,
    covers: Vec<(Cover, usize)>,
    labels: Option<(Vec<usize>, usize)>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn number(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, format!("expected a number, found `{tok}`")))
}

impl Stanza {
    fn finish(self) -> Result<NamedPoset> {
        let (n, _) = self.elements.ok_or_else(|| parse_err(self.start, "missing `elements` line"))?;
        // Point at the offending line when the library rejects the poset.
        let line_of = |lower: usize, upper: usize| {
            self.covers.iter().find(|(c, _)| c.lower == lower && c.upper == upper).map_or(self.start, |&(_, l)| l)
        };
        let labels = self.labels.as_ref().map(|(l, _)| l.clone());
        let covers = self.covers.iter().map(|&(c, _)| c);
        let poset = LabeledPoset::new(n, covers, labels).map_err(|e| {
            let line = match &e {
                Error::SelfLoop { lower, upper }
                | Error::DuplicateEdge { lower, upper }
                | Error::RedundantEdge { lower, upper } => line_of(*lower, *upper),
                Error::LabelMismatch(c) => line_of(c.lower, c.upper),
                Error::InvalidLabels { .. } => self.labels.as_ref().map_or(self.start, |&(_, l)| l),
                _ => self.start,
            };
            parse_err(line, e.to_string())
        })?;
        Ok(NamedPoset { name: self.name, poset })
    }
}

/// Parses every stanza in `input`.
pub fn parse_posets(input: &str) -> Result<Vec<NamedPoset>> {
    let mut out = Vec::new();
    let mut current: Option<Stanza> = None;
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks[0] == "poset" {
            if let Some(s) = current.take() {
                out.push(s.finish()?);
            }
            let name = toks[1..].join(" ");
            if name.is_empty() {
                return Err(parse_err(line, "`poset` needs a name"));
            }
            current = Some(Stanza { name, start: line, elements: None, covers: Vec::new(), labels: None });
            continue;
        }
        let stanza = current.as_mut().ok_or_else(|| parse_err(line, "expected a `poset <name>` line first"))?;
        match toks[0] {
            "elements" => {
                if toks.len() != 2 {
                    return Err(parse_err(line, "usage: elements <n>"));
                }
                if stanza.elements.is_some() {
                    return Err(parse_err(line, "repeated `elements` line"));
                }
                stanza.elements = Some((number(toks[1], line)?, line));
            }
            "cover" => {
                let n = stanza.elements.map(|(n, _)| n).ok_or_else(|| parse_err(line, "`cover` before `elements`"))?;
                if toks.len() != 4 {
                    return Err(parse_err(line, "usage: cover <a> <b> weak|strict"));
                }
                let (a, b) = (number(toks[1], line)?, number(toks[2], line)?);
                for x in [a, b] {
                    if x == 0 || x > n {
                        return Err(parse_err(line, format!("element {x} is out of range 1..={n}")));
                    }
                }
                let kind = match toks[3] {
                    "weak" => EdgeKind::Weak,
                    "strict" => EdgeKind::Strict,
                    other => return Err(parse_err(line, format!("edge kind must be weak or strict, found `{other}`"))),
                };
                stanza.covers.push((Cover::new(a, b, kind), line));
            }
            "labels" => {
                if stanza.labels.is_some() {
                    return Err(parse_err(line, "repeated `labels` line"));
                }
                let labels = toks[1..].iter().map(|t| number(t, line)).collect::<Result<Vec<_>>>()?;
                stanza.labels = Some((labels, line));
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }
    if let Some(s) = current {
        out.push(s.finish()?);
    }
    Ok(out)
}

/// Parses input that must contain exactly one stanza.
pub fn parse_poset(input: &str) -> Result<NamedPoset> {
    let mut all = parse_posets(input)?;
    match all.len() {
        1 => Ok(all.remove(0)),
        0 => Err(parse_err(1, "no poset found")),
        k => Err(parse_err(1, format!("expected one poset, found {k}"))),
    }
}

/// Renders a poset as a stanza that `parse_posets` reads back unchanged.
pub fn write_poset(name: &str, p: &LabeledPoset) -> String {
    let mut s = String::new();
    writeln!(s, "poset {name}").unwrap();
    writeln!(s, "elements {}", p.len()).unwrap();
    for c in p.covers() {
        writeln!(s, "cover {} {} {}", c.lower, c.upper, c.kind.as_str()).unwrap();
    }
    if let Some(labels) = p.labels() {
        let l: Vec<String> = labels.iter().map(|x| x.to_string()).collect();
        writeln!(s, "labels {}", l.join(" ")).unwrap();
    }
    s
}

/// Lookup helper for files holding several named posets.
pub fn by_name(posets: &[NamedPoset]) -> HashMap<&str, &LabeledPoset> {
    posets.iter().map(|np| (np.name.as_str(), &np.poset)).collect()
}
