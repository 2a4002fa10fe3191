//! Line handling shared by the text formats: `#` starts a comment, blank lines are ignored.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

/// Meaningful lines with 1-based line numbers, comments stripped and trimmed.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Parses a header such as `form n=3 d=4` into its `key=value` fields.
pub(crate) fn parse_header(
    line: usize,
    text: &str,
    keyword: &str,
) -> Result<BTreeMap<String, String>> {
    let mut parts = text.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(Error::parse(line, format!("expected `{keyword}` header")));
    }
    parts
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| Error::parse(line, format!("malformed header field `{p}`")))
        })
        .collect()
}

pub(crate) fn header_usize(
    fields: &BTreeMap<String, String>,
    key: &str,
    line: usize,
) -> Result<usize> {
    fields
        .get(key)
        .ok_or_else(|| Error::parse(line, format!("header is missing `{key}=`")))?
        .parse()
        .map_err(|_| Error::parse(line, format!("header field `{key}` is not an integer")))
}

pub(crate) fn rational_at(tok: &str, line: usize) -> Result<Rational> {
    parse_rational(tok).map_err(|_| Error::parse(line, format!("invalid rational `{tok}`")))
}

pub(crate) fn uint_at(tok: &str, line: usize) -> Result<u32> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("invalid nonnegative integer `{tok}`")))
}
