//! The `.sgt` text format.
//!
//! ```text
//! # optional comments
//! 3
//! 0 0 0
//! 0 1 0
//! 0 0 2
//! labels: z a b
//! ```
//!
//! Line 1 holds the order `n`, the next `n` lines hold the rows of the table as
//! 0-based indices, and an optional trailing `labels:` line names the elements.
//! Lines whose first non-blank character is `#` are comments; blank lines are skipped.

use std::fmt;
use std::fmt::Write as _;

use super::table::CayleyTable;
use super::TableError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl fmt::Display) -> Self {
        ParseError {
            line,
            column,
            message: message.to_string(),
        }
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

pub fn parse_sgt(text: &str) -> Result<CayleyTable, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "missing order line"))?;
    let header_tokens = tokens(header);
    let (col, tok) = header_tokens[0];
    if header_tokens.len() != 1 {
        return Err(ParseError::new(
            header_line,
            header_tokens[1].0,
            "order line must hold a single integer",
        ));
    }
    let order: usize = tok
        .parse()
        .map_err(|_| ParseError::new(header_line, col, format!("invalid order `{tok}`")))?;
    if order == 0 {
        return Err(ParseError::new(header_line, col, "order must be positive"));
    }

    let mut flat = Vec::with_capacity(order * order);
    let mut last_line = header_line;
    for row in 0..order {
        let (line_no, line) = lines.next().ok_or_else(|| {
            ParseError::new(
                last_line + 1,
                1,
                format!("expected {order} rows, found {row}"),
            )
        })?;
        last_line = line_no;
        let toks = tokens(line);
        if toks.len() != order {
            let column = toks.get(order).map_or(line.chars().count() + 1, |t| t.0);
            return Err(ParseError::new(
                line_no,
                column,
                format!("row {row} has {} entries, expected {order}", toks.len()),
            ));
        }
        for (column, tok) in toks {
            let value: usize = tok
                .parse()
                .map_err(|_| ParseError::new(line_no, column, format!("invalid entry `{tok}`")))?;
            if value >= order {
                return Err(ParseError::new(
                    line_no,
                    column,
                    format!("entry {value} out of range for order {order}"),
                ));
            }
            flat.push(value);
        }
    }

    let table = CayleyTable::from_flat(order, flat).map_err(|e| ParseError::new(1, 1, e))?;

    let Some((line_no, line)) = lines.next() else {
        return Ok(table);
    };
    let toks = tokens(line);
    if toks[0].1 != "labels:" {
        return Err(ParseError::new(
            line_no,
            toks[0].0,
            format!("unexpected content `{}` after table", toks[0].1),
        ));
    }
    let labels: Vec<String> = toks[1..].iter().map(|(_, t)| t.to_string()).collect();
    if labels.len() != order {
        return Err(ParseError::new(
            line_no,
            toks.get(order + 1)
                .map_or(line.chars().count() + 1, |t| t.0),
            format!("expected {order} labels, found {}", labels.len()),
        ));
    }
    let table = table.with_labels(labels).map_err(|e| {
        let column = match &e {
            TableError::DuplicateLabel(l) => toks
                .iter()
                .skip(1)
                .filter(|(_, t)| t == l)
                .nth(1)
                .map_or(1, |t| t.0),
            _ => 1,
        };
        ParseError::new(line_no, column, e)
    })?;
    if let Some((extra_line, extra)) = lines.next() {
        return Err(ParseError::new(
            extra_line,
            tokens(extra)[0].0,
            "unexpected content after labels line",
        ));
    }
    Ok(table)
}

pub fn emit_sgt(table: &CayleyTable) -> String {
    let mut out = String::new();
    writeln!(out, "{}", table.order()).unwrap();
    for x in table.elements() {
        let row: Vec<String> = table.row(x).iter().map(|p| p.index().to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    if let Some(labels) = table.labels() {
        writeln!(out, "labels: {}", labels.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_labels() {
        let text =
            "# a comment\n3\n0 0 0\n  # inline comment line\n0 1 0\n0 0 2\n\nlabels: z a b\n";
        let t = parse_sgt(text).unwrap();
        assert_eq!(t.order(), 3);
        assert_eq!(t.flat(), vec![0, 0, 0, 0, 1, 0, 0, 0, 2]);
        assert_eq!(t.labels().unwrap(), ["z", "a", "b"]);
        assert_eq!(emit_sgt(&t), "3\n0 0 0\n0 1 0\n0 0 2\nlabels: z a b\n");
    }

    #[test]
    fn emits_exact_bytes() {
        let t = CayleyTable::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(emit_sgt(&t), "2\n0 1\n1 0\n");
    }

    #[test]
    fn out_of_range_entry_cites_line_and_column() {
        let err = parse_sgt("2\n0 0\n0 5\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 3));
        assert!(err.message.contains("out of range"));
    }

    #[test]
    fn wrong_arity() {
        let err = parse_sgt("2\n0 0 1\n0 0\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 5));
        let err = parse_sgt("3\n0 0 0\n0 0\n0 0 0\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_sgt("2\n0 0\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("expected 2 rows"));
    }

    #[test]
    fn bad_header_and_trailing_content() {
        assert_eq!(parse_sgt("").unwrap_err().line, 1);
        assert_eq!(parse_sgt("x\n").unwrap_err().column, 1);
        assert_eq!(parse_sgt("0\n").unwrap_err().line, 1);
        let err = parse_sgt("1\n0\nfoo\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_sgt("1\n0\nlabels: a\nmore\n").unwrap_err();
        assert_eq!(err.line, 4);
        let err = parse_sgt("2\n0 0\n0 0\nlabels: a\n").unwrap_err();
        assert_eq!(err.line, 4);
        let err = parse_sgt("2\n0 0\n0 0\nlabels: a a\n").unwrap_err();
        assert_eq!((err.line, err.column), (4, 11));
    }
}
