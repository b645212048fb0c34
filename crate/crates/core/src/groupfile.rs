//! Group specification files.
//!
//! A group file lists the generators in order and the unordered pairs that
//! commute; every other pair has `m(s,t) = ∞`.
//!
//! ```toml
//! generators = ["a", "b", "c"]
//! commuting_pairs = [["a", "b"]]
//! ```
//!
//! The same fields are accepted as JSON when the path ends in `.json`.
//! Errors carry 1-based line and column positions.

use std::collections::HashSet;
use std::ops::Range;
use std::path::Path;

use serde::Deserialize;

use crate::coxeter::CoxeterSystem;
use crate::error::{Error, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TomlGroup {
    generators: Vec<toml::Spanned<String>>,
    #[serde(default)]
    commuting_pairs: Vec<toml::Spanned<Vec<toml::Spanned<String>>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGroup {
    generators: Vec<String>,
    #[serde(default)]
    commuting_pairs: Vec<Vec<String>>,
}

/// 1-based line and column of a byte offset.
fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn parse_error(text: &str, span: Option<Range<usize>>, message: impl Into<String>) -> Error {
    let (line, column) = span.map_or((1, 1), |s| line_column(text, s.start));
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses a TOML group file.
pub fn parse_group_toml(text: &str) -> Result<CoxeterSystem> {
    let raw: TomlGroup =
        toml::from_str(text).map_err(|e| parse_error(text, e.span(), e.message().trim().to_string()))?;
    let mut seen = HashSet::new();
    for g in &raw.generators {
        if !seen.insert(g.get_ref().as_str()) {
            return Err(parse_error(
                text,
                Some(g.span()),
                format!("duplicate generator {:?}", g.get_ref()),
            ));
        }
    }
    let mut pairs = Vec::with_capacity(raw.commuting_pairs.len());
    let mut seen_pairs = HashSet::new();
    for pair in &raw.commuting_pairs {
        let [a, b] = pair.get_ref().as_slice() else {
            return Err(parse_error(
                text,
                Some(pair.span()),
                format!(
                    "commuting pair must have exactly 2 entries, found {}",
                    pair.get_ref().len()
                ),
            ));
        };
        for name in [a, b] {
            if !seen.contains(name.get_ref().as_str()) {
                return Err(parse_error(
                    text,
                    Some(name.span()),
                    format!("unknown generator {:?} in commuting pair", name.get_ref()),
                ));
            }
        }
        let (a, b) = (a.get_ref().clone(), b.get_ref().clone());
        if a == b {
            return Err(parse_error(
                text,
                Some(pair.span()),
                format!("self pair ({a}, {a}) is not allowed"),
            ));
        }
        let key = if a < b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        if !seen_pairs.insert(key) {
            return Err(parse_error(
                text,
                Some(pair.span()),
                format!("duplicate commuting pair ({a}, {b})"),
            ));
        }
        pairs.push((a, b));
    }
    let names: Vec<String> = raw.generators.into_iter().map(|g| g.into_inner()).collect();
    CoxeterSystem::from_named_pairs(&names, &pairs).map_err(as_parse_error)
}

/// Parses a JSON group file.
pub fn parse_group_json(text: &str) -> Result<CoxeterSystem> {
    let raw: JsonGroup = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line().max(1),
        column: e.column().max(1),
        message: e.to_string(),
    })?;
    let mut pairs = Vec::with_capacity(raw.commuting_pairs.len());
    for pair in &raw.commuting_pairs {
        let [a, b] = pair.as_slice() else {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!("commuting pair must have exactly 2 entries, found {}", pair.len()),
            });
        };
        pairs.push((a.clone(), b.clone()));
    }
    CoxeterSystem::from_named_pairs(&raw.generators, &pairs).map_err(as_parse_error)
}

/// Semantic errors found after deserialization are reported as parse errors.
fn as_parse_error(e: Error) -> Error {
    match e {
        Error::Input(message) => Error::Parse {
            line: 1,
            column: 1,
            message,
        },
        other => other,
    }
}

/// Reads a group file, choosing JSON for a `.json` extension and TOML otherwise.
pub fn load_group(path: &Path) -> Result<CoxeterSystem> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read group file {}: {e}", path.display())))?;
    if path.extension().is_some_and(|x| x.eq_ignore_ascii_case("json")) {
        parse_group_json(&text)
    } else {
        parse_group_toml(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PENTAGON: &str = r#"
generators = ["s1", "s2", "s3", "s4", "s5"]
commuting_pairs = [["s1", "s2"], ["s2", "s3"], ["s3", "s4"], ["s4", "s5"], ["s5", "s1"]]
"#;

    #[test]
    fn toml_roundtrip() {
        let sys = parse_group_toml(PENTAGON).unwrap();
        assert_eq!(sys.rank(), 5);
        assert_eq!(sys.commuting_pairs().len(), 5);
        assert!(sys.is_irreducible());
    }

    #[test]
    fn json_matches_toml() {
        let json = r#"{"generators": ["a", "b", "c"], "commuting_pairs": [["a", "b"]]}"#;
        let sys = parse_group_json(json).unwrap();
        assert_eq!(sys.names(), ["a", "b", "c"]);
        assert_eq!(sys.commuting_pairs().len(), 1);
    }

    #[test]
    fn errors_have_positions() {
        let bad = "generators = [\"a\", \"b\"]\ncommuting_pairs = [[\"a\", \"a\"]]\n";
        match parse_group_toml(bad) {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!((line, column), (2, 20));
                assert!(message.contains("self pair"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let bad = "generators = [\"a\", \"b\"]\ncommuting_pairs = [[\"a\", \"c\"]]\n";
        match parse_group_toml(bad) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 26)),
            other => panic!("unexpected {other:?}"),
        }
        let bad = "generators = [\"a\", \"b\"\ncommuting_pairs = []\n";
        assert!(matches!(parse_group_toml(bad), Err(Error::Parse { .. })));
        let dup = "generators = [\"a\", \"b\"]\ncommuting_pairs = [[\"a\", \"b\"], [\"b\", \"a\"]]\n";
        assert!(matches!(parse_group_toml(dup), Err(Error::Parse { line: 2, .. })));
        let json = "{\"generators\": [\"a\",\n \"b\"], \"extra\": 1}";
        assert!(matches!(parse_group_json(json), Err(Error::Parse { line: 2, .. })));
    }
}
