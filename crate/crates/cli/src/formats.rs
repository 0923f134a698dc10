//! Plain-text input formats.
//!
//! Poset files hold `cover <u> <v>` lines and optional `element <x>` lines;
//! label files hold `label <u> <v> <int>` lines; facet files hold
//! `facet <v> <v> ...` lines. Ids are whitespace-free tokens, `#` starts a
//! comment, blank lines are ignored.

use std::collections::BTreeMap;
use std::fmt::Write;

use lexmorse_core::{EdgeLabeling, Error, LabelToken, Poset};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, as (1-based line number, tokens).
fn tokenized(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    /// Line of each cover.
    pub cover_lines: Vec<usize>,
}

pub fn parse_poset(text: &str) -> Result<PosetFile, ParseError> {
    let mut out = PosetFile::default();
    for (line, t) in tokenized(text) {
        match t.as_slice() {
            ["cover", u, v] => {
                out.covers.push((u.to_string(), v.to_string()));
                out.cover_lines.push(line);
            }
            ["element", x] => out.elements.push(x.to_string()),
            ["cover", ..] => return Err(err(line, "expected `cover <u> <v>`")),
            ["element", ..] => return Err(err(line, "expected `element <id>`")),
            [other, ..] => return Err(err(line, format!("unknown directive `{other}`"))),
            [] => unreachable!(),
        }
    }
    if out.covers.is_empty() {
        return Err(err(1, "no `cover` lines"));
    }
    Ok(out)
}

impl PosetFile {
    /// Builds the poset, attaching a line number to errors about a single
    /// cover.
    pub fn build(&self) -> Result<Poset, BuildError> {
        let built = if self.elements.is_empty() {
            Poset::from_covers(&self.covers)
        } else {
            Poset::from_elements_and_covers(&self.elements, &self.covers)
        };
        built.map_err(|e| {
            let line_of = |u: &str, v: &str| {
                self.covers
                    .iter()
                    .position(|(a, b)| a == u && b == v)
                    .map(|i| self.cover_lines[i])
            };
            let line = match &e {
                Error::NonReducedCover(u, v) => line_of(u, v),
                Error::CycleDetected(x) => line_of(x, x),
                _ => None,
            };
            match line {
                Some(line) => BuildError::Parse(err(line, e.to_string())),
                None => BuildError::Core(e),
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error(transparent)]
    Parse(ParseError),
    #[error(transparent)]
    Core(Error),
}

/// Reads integer labels for the covers of `poset`.
pub fn parse_labels(text: &str, poset: &Poset) -> Result<EdgeLabeling, BuildError> {
    let mut labels = BTreeMap::new();
    for (line, t) in tokenized(text) {
        let ["label", u, v, value] = t.as_slice() else {
            return Err(BuildError::Parse(err(
                line,
                "expected `label <u> <v> <int>`",
            )));
        };
        let index = |x: &str| {
            poset
                .index_of(x)
                .map_err(|_| BuildError::Parse(err(line, format!("unknown element `{x}`"))))
        };
        let (a, b) = (index(u)?, index(v)?);
        if !poset.is_cover(a, b) {
            return Err(BuildError::Parse(err(
                line,
                format!("`{u}` < `{v}` is not a cover"),
            )));
        }
        let value: i64 = value.parse().map_err(|_| {
            BuildError::Parse(err(line, format!("label `{value}` is not an integer")))
        })?;
        if labels.insert((a, b), LabelToken::Int(value)).is_some() {
            return Err(BuildError::Parse(err(
                line,
                format!("cover `{u}` < `{v}` labeled twice"),
            )));
        }
    }
    EdgeLabeling::new(poset, labels).map_err(BuildError::Core)
}

/// Facets as vertex-index lists in file order, with the vertex names in
/// order of first appearance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FacetFile {
    pub names: Vec<String>,
    pub facets: Vec<Vec<usize>>,
}

pub fn parse_facets(text: &str) -> Result<FacetFile, ParseError> {
    let mut out = FacetFile::default();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    for (line, t) in tokenized(text) {
        let ["facet", vertices @ ..] = t.as_slice() else {
            return Err(err(line, "expected `facet <v> ...`"));
        };
        let mut facet = Vec::with_capacity(vertices.len());
        for v in vertices {
            let next = index.len();
            let id = *index.entry(v.to_string()).or_insert(next);
            if id == next {
                out.names.push(v.to_string());
            }
            if facet.contains(&id) {
                return Err(err(line, format!("vertex `{v}` repeated")));
            }
            facet.push(id);
        }
        out.facets.push(facet);
    }
    if out.facets.is_empty() {
        return Err(err(1, "no `facet` lines"));
    }
    Ok(out)
}

/// Writes a poset in the cover format, covers sorted by id.
pub fn write_poset(poset: &Poset) -> String {
    let mut covers: Vec<(&str, &str)> = poset
        .covers()
        .map(|(u, v)| (poset.id(u), poset.id(v)))
        .collect();
    covers.sort();
    let mut out = String::new();
    for (u, v) in covers {
        let _ = writeln!(out, "cover {u} {v}");
    }
    out
}
