//! Plain-text matrix files.
//!
//! ```text
//! # x + y = 2, x - y = 0
//! 2 3
//! 1  1 2
//! 1 -1 0
//! ```
//!
//! The header gives rows and columns; each following line holds one row of
//! integers or `p/q` fractions. Everything after `#` on a line is ignored,
//! as are blank lines. An augmented system is an `m × (n+1)` matrix whose
//! last column is the right-hand side.

use thiserror::Error;

use super::{AugmentedSystem, LinalgError, Matrix};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Dimension(#[from] LinalgError),
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Tokens of the non-empty lines, with 1-based line and column positions.
fn tokenize(text: &str) -> Vec<(usize, Vec<(usize, &str)>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut offset = 0;
            for tok in content.split_whitespace() {
                let pos = content[offset..].find(tok).unwrap() + offset;
                tokens.push((pos + 1, tok));
                offset = pos + tok.len();
            }
            (!tokens.is_empty()).then_some((i + 1, tokens))
        })
        .collect()
}

pub fn parse_matrix(text: &str) -> Result<Matrix, FormatError> {
    let lines = tokenize(text);
    let Some((hline, header)) = lines.first() else {
        return Err(parse_err(1, 1, "missing `rows cols` header"));
    };
    if header.len() != 2 {
        let col = header.get(2).map_or(header[0].0, |t| t.0);
        return Err(parse_err(*hline, col, "header must be `rows cols`"));
    }
    let dim = |(col, tok): (usize, &str)| -> Result<usize, FormatError> {
        match tok.parse::<usize>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(parse_err(*hline, col, format!("invalid dimension `{tok}`"))),
        }
    };
    let rows = dim(header[0])?;
    let cols = dim(header[1])?;

    let body = &lines[1..];
    let mut entries = Vec::with_capacity(rows * cols);
    for (line, toks) in body.iter().take(rows) {
        if toks.len() != cols {
            let column = toks
                .get(cols)
                .map_or_else(|| toks.last().map_or(1, |(c, t)| c + t.len()), |t| t.0);
            return Err(parse_err(
                *line,
                column,
                format!("expected {cols} entries, found {}", toks.len()),
            ));
        }
        for &(column, tok) in toks {
            let v: Rational = tok
                .parse()
                .map_err(|_| parse_err(*line, column, format!("invalid number `{tok}`")))?;
            entries.push(v);
        }
    }
    if body.len() < rows {
        let line = body.last().map_or(*hline, |l| l.0) + 1;
        return Err(parse_err(
            line,
            1,
            format!("expected {rows} rows, found {}", body.len()),
        ));
    }
    if let Some((line, toks)) = body.get(rows) {
        return Err(parse_err(*line, toks[0].0, "unexpected extra row"));
    }

    Ok(Matrix::new(rows, cols, entries)?)
}

pub fn parse_system(text: &str) -> Result<AugmentedSystem, FormatError> {
    let m = parse_matrix(text)?;
    Ok(AugmentedSystem::from_augmented(&m)?)
}

/// Renders a matrix in the same format `parse_matrix` reads.
pub fn write_matrix(m: &Matrix) -> String {
    format!("{} {}\n{}", m.rows(), m.cols(), m)
}
