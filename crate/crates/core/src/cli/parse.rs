//! Text formats: geometry files and interval tables.

use thiserror::Error;

use crate::basis::{Implication, ImplicationBasis};
use crate::set::{ElementSet, GroundSet};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is not tied to a line.
    pub line: usize,
    pub reason: String,
}

fn error(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError {
        line,
        reason: reason.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn labels_to_set(
    ground: &GroundSet,
    labels: &[&str],
    line: usize,
) -> Result<ElementSet, ParseError> {
    let mut set = ElementSet::empty();
    for label in labels {
        let e = ground
            .index_of(label)
            .ok_or_else(|| error(line, format!("unknown element {label:?}")))?;
        set.insert(e);
    }
    Ok(set)
}

/// Parses the geometry grammar:
///
/// ```text
/// # comment
/// elements a b c d
/// imp a b -> c
/// ```
///
/// The `elements` line must come before any implication.
pub fn parse_geometry(text: &str) -> Result<ImplicationBasis, ParseError> {
    let mut ground: Option<GroundSet> = None;
    let mut implications = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        let Some((&keyword, rest)) = tokens.split_first() else {
            continue;
        };
        match keyword {
            "elements" => {
                if ground.is_some() {
                    return Err(error(line, "second elements line"));
                }
                if let Some(bad) = rest.iter().find(|t| **t == "->") {
                    return Err(error(line, format!("{bad:?} is not a valid label")));
                }
                let g =
                    GroundSet::new(rest.iter().copied()).map_err(|e| error(line, e.to_string()))?;
                ground = Some(g);
            }
            "imp" => {
                let g = ground
                    .as_ref()
                    .ok_or_else(|| error(line, "implication before the elements line"))?;
                let arrow = rest
                    .iter()
                    .position(|t| *t == "->")
                    .ok_or_else(|| error(line, "missing \"->\""))?;
                let (premise, conclusion) = (&rest[..arrow], &rest[arrow + 1..]);
                if premise.is_empty() {
                    return Err(error(line, "empty premise"));
                }
                if conclusion.is_empty() {
                    return Err(error(line, "empty conclusion"));
                }
                if conclusion.contains(&"->") {
                    return Err(error(line, "more than one \"->\""));
                }
                implications.push(Implication::new(
                    labels_to_set(g, premise, line)?,
                    labels_to_set(g, conclusion, line)?,
                ));
            }
            other => return Err(error(line, format!("unknown directive {other:?}"))),
        }
    }
    let ground = ground.ok_or_else(|| error(0, "missing elements line"))?;
    ImplicationBasis::new(ground, implications).map_err(|e| error(0, e.to_string()))
}

/// Parses an `element left_endpoint right_endpoint` table. Rows may come in
/// any order; every element of `ground` needs exactly one row.
pub fn parse_interval_table(text: &str, ground: &GroundSet) -> Result<Vec<(f64, f64)>, ParseError> {
    let mut intervals: Vec<Option<(f64, f64)>> = vec![None; ground.len()];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.as_slice() {
            [] => continue,
            ["element", "left_endpoint", "right_endpoint"] => continue,
            [label, a, b] => {
                let e = ground
                    .index_of(label)
                    .ok_or_else(|| error(line, format!("unknown element {label:?}")))?;
                let parse = |t: &str| {
                    t.parse::<f64>()
                        .map_err(|_| error(line, format!("{t:?} is not a number")))
                };
                if intervals[e].replace((parse(a)?, parse(b)?)).is_some() {
                    return Err(error(line, format!("element {label:?} listed twice")));
                }
            }
            _ => return Err(error(line, "expected three columns")),
        }
    }
    intervals
        .into_iter()
        .enumerate()
        .map(|(e, iv)| {
            iv.ok_or_else(|| error(0, format!("no row for element {:?}", ground.name(e))))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn notsuf_text() {
        let b = parse_geometry("elements a b c d\nimp a b -> c\nimp b c -> d\nimp a -> d").unwrap();
        assert_eq!(b.n(), 4);
        assert_eq!(b.m(), 3);
        assert_eq!(b.format_implication(&b.implications()[2]), "a -> d");
        let again = parse_geometry(&b.to_geometry_text()).unwrap();
        assert_eq!(again.implications(), b.implications());
    }

    #[test]
    fn single_element() {
        let b = parse_geometry("elements a").unwrap();
        assert_eq!(b.n(), 1);
        assert_eq!(b.m(), 0);
    }

    #[test]
    fn comments_and_blank_lines() {
        let b = parse_geometry("# header\n\nelements a b # two\n  imp a -> b # inline\n").unwrap();
        assert_eq!(b.m(), 1);
    }

    #[test]
    fn errors() {
        let line = |t: &str| parse_geometry(t).unwrap_err().line;
        assert_eq!(line("imp a -> b"), 1);
        assert_eq!(line(""), 0);
        assert_eq!(line("elements a a"), 1);
        assert_eq!(line("elements a b\nimp -> b"), 2);
        assert_eq!(line("elements a b\nimp a -> c"), 2);
        assert_eq!(line("elements a b\nimp a b"), 2);
        assert_eq!(line("elements a b\nimp a ->"), 2);
        assert_eq!(line("elements a\nelements b"), 2);
        assert_eq!(line("elements a\nfoo"), 2);
        assert!(parse_geometry("elements a b\nimp x -> b")
            .unwrap_err()
            .reason
            .contains("unknown element"));
    }

    #[test]
    fn interval_table() {
        let g = GroundSet::new(["a", "b"]).unwrap();
        let t = "element left_endpoint right_endpoint\nb -1 2\na -2 1\n";
        assert_eq!(
            parse_interval_table(t, &g).unwrap(),
            vec![(-2.0, 1.0), (-1.0, 2.0)]
        );
        assert!(parse_interval_table("a -2 1\n", &g).is_err());
        assert!(parse_interval_table("a -2 1\na 0 1\nb 1 2", &g).is_err());
    }
}
