//! The line-oriented poset text format.
//!
//! ```text
//! poset <n>
//! cover <u> <v>
//! # comment
//! ```
//!
//! One arc per `cover` line, indices 0-based. Arcs are closed transitively on
//! parse, so arbitrary relation pairs are accepted, not only covers.

use crate::poset::{Poset, PosetError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("missing `poset <n>` header")]
    MissingHeader,
    #[error(transparent)]
    Poset(#[from] PosetError),
}

pub fn parse_poset(text: &str) -> Result<Poset, ParseError> {
    let mut n: Option<usize> = None;
    let mut pairs = Vec::new();
    for (ix, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().unwrap();
        let mut arg = |what: &str| -> Result<usize, ParseError> {
            tokens
                .next()
                .ok_or_else(|| ParseError::Malformed {
                    line: ix + 1,
                    msg: format!("expected {what}"),
                })?
                .parse()
                .map_err(|_| ParseError::Malformed {
                    line: ix + 1,
                    msg: format!("{what} is not a number"),
                })
        };
        match keyword {
            "poset" => {
                if n.is_some() {
                    return Err(ParseError::Malformed {
                        line: ix + 1,
                        msg: "duplicate poset header".into(),
                    });
                }
                n = Some(arg("element count")?);
            }
            "cover" => {
                if n.is_none() {
                    return Err(ParseError::MissingHeader);
                }
                let u = arg("source element")?;
                let v = arg("target element")?;
                pairs.push((u, v));
            }
            other => {
                return Err(ParseError::Malformed {
                    line: ix + 1,
                    msg: format!("unknown keyword `{other}`"),
                })
            }
        }
    }
    let n = n.ok_or(ParseError::MissingHeader)?;
    Ok(Poset::from_cover(n, &pairs)?)
}

pub fn write_poset(p: &Poset) -> String {
    let mut out = format!("poset {}\n", p.n());
    for (u, v) in p.cover_digraph().arcs() {
        out.push_str(&format!("cover {u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let p = Poset::from_cover(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let text = write_poset(&p);
        let q = parse_poset(&text).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn comments_and_blanks_skipped() {
        let p = parse_poset("# a chain\nposet 3\n\ncover 0 1\ncover 1 2\n").unwrap();
        assert!(p.lt(0, 2));
    }

    #[test]
    fn errors_reported() {
        assert!(matches!(parse_poset(""), Err(ParseError::MissingHeader)));
        assert!(matches!(
            parse_poset("cover 0 1"),
            Err(ParseError::MissingHeader)
        ));
        assert!(matches!(
            parse_poset("poset 2\ncover 0"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_poset("poset 2\nedge 0 1"),
            Err(ParseError::Malformed { .. })
        ));
        assert!(parse_poset("poset 2\ncover 0 1\ncover 1 0").is_err());
    }
}
