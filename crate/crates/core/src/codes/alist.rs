//! MacKay alist sparse-matrix text format (1-based indices).
//!
//! ```text
//! N M
//! max_col_degree max_row_degree
//! col_degree_1 .. col_degree_N
//! row_degree_1 .. row_degree_M
//! N lines of row indices per column (zero padded to max_col_degree)
//! M lines of column indices per row (zero padded to max_row_degree)
//! ```
//!
//! Columns are variable nodes and rows are check nodes.

use std::fmt::Write as _;

use super::graph::TannerGraph;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AlistError {
    #[error("line {line}: malformed header: {msg}")]
    Header { line: usize, msg: String },
    #[error("line {line}: expected {expected} entries, found {found}")]
    LengthMismatch { line: usize, expected: usize, found: usize },
    #[error("line {line}: index {index} out of range 1..={max}")]
    IndexOutOfRange { line: usize, index: usize, max: usize },
    #[error("line {line}: invalid integer {token:?}")]
    BadInteger { line: usize, token: String },
    #[error("line {line}: duplicate index {index}")]
    DuplicateIndex { line: usize, index: usize },
    #[error("line {line}: row list disagrees with column lists")]
    Inconsistent { line: usize },
    #[error("unexpected end of input after line {line}")]
    UnexpectedEof { line: usize },
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self { inner: text.lines().enumerate(), last: 0 }
    }

    /// Next non-blank line as `(line_number, integers)`.
    fn next_ints(&mut self) -> Result<(usize, Vec<usize>), AlistError> {
        for (i, raw) in self.inner.by_ref() {
            let line = i + 1;
            self.last = line;
            if raw.trim().is_empty() {
                continue;
            }
            let ints = raw
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| AlistError::BadInteger { line, token: tok.to_string() })
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Ok((line, ints));
        }
        Err(AlistError::UnexpectedEof { line: self.last })
    }
}

fn index_list(
    line: usize,
    ints: &[usize],
    degree: usize,
    max_index: usize,
) -> Result<Vec<usize>, AlistError> {
    let list: Vec<usize> = ints.iter().copied().filter(|&x| x != 0).collect();
    if list.len() != degree {
        return Err(AlistError::LengthMismatch { line, expected: degree, found: list.len() });
    }
    let mut out = Vec::with_capacity(degree);
    for &x in &list {
        if x > max_index {
            return Err(AlistError::IndexOutOfRange { line, index: x, max: max_index });
        }
        if out.contains(&(x - 1)) {
            return Err(AlistError::DuplicateIndex { line, index: x });
        }
        out.push(x - 1);
    }
    Ok(out)
}

pub fn parse_alist(text: &str) -> Result<TannerGraph, AlistError> {
    let mut lines = Lines::new(text);
    let (line, dims) = lines.next_ints()?;
    let [n, m] = dims[..] else {
        return Err(AlistError::Header { line, msg: format!("expected `N M`, found {} values", dims.len()) });
    };
    let (line, maxes) = lines.next_ints()?;
    let [max_col, max_row] = maxes[..] else {
        return Err(AlistError::Header { line, msg: "expected two maximum degrees".into() });
    };
    let (line, col_deg) = lines.next_ints()?;
    if col_deg.len() != n {
        return Err(AlistError::LengthMismatch { line, expected: n, found: col_deg.len() });
    }
    if let Some(&d) = col_deg.iter().find(|&&d| d > max_col) {
        return Err(AlistError::Header { line, msg: format!("column degree {d} exceeds maximum {max_col}") });
    }
    let (line, row_deg) = lines.next_ints()?;
    if row_deg.len() != m {
        return Err(AlistError::LengthMismatch { line, expected: m, found: row_deg.len() });
    }
    if let Some(&d) = row_deg.iter().find(|&&d| d > max_row) {
        return Err(AlistError::Header { line, msg: format!("row degree {d} exceeds maximum {max_row}") });
    }

    let mut var_adj = Vec::with_capacity(n);
    for &deg in &col_deg {
        let (line, ints) = lines.next_ints()?;
        var_adj.push(index_list(line, &ints, deg, m)?);
    }
    let mut chk_adj = Vec::with_capacity(m);
    let mut row_lines = Vec::with_capacity(m);
    for &deg in &row_deg {
        let (line, ints) = lines.next_ints()?;
        chk_adj.push(index_list(line, &ints, deg, n)?);
        row_lines.push(line);
    }

    // Cross-check the two views.
    let mut derived: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (v, checks) in var_adj.iter().enumerate() {
        for &c in checks {
            derived[c].push(v);
        }
    }
    for (c, vars) in chk_adj.iter().enumerate() {
        let mut a = vars.clone();
        a.sort_unstable();
        if a != derived[c] {
            return Err(AlistError::Inconsistent { line: row_lines[c] });
        }
    }
    Ok(TannerGraph::from_parts(var_adj, chk_adj))
}

pub fn serialize_alist(g: &TannerGraph) -> String {
    let (n, m) = (g.n_var(), g.n_chk());
    let max_col = g.var_adjacency().iter().map(Vec::len).max().unwrap_or(0);
    let max_row = g.chk_adjacency().iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    let join = |it: &mut dyn Iterator<Item = usize>| it.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    writeln!(out, "{n} {m}").unwrap();
    writeln!(out, "{max_col} {max_row}").unwrap();
    writeln!(out, "{}", join(&mut g.var_adjacency().iter().map(Vec::len))).unwrap();
    writeln!(out, "{}", join(&mut g.chk_adjacency().iter().map(Vec::len))).unwrap();
    for (adj, max) in [(g.var_adjacency(), max_col), (g.chk_adjacency(), max_row)] {
        for list in adj {
            let padded = list.iter().map(|&x| x + 1).chain(std::iter::repeat_n(0, max - list.len()));
            writeln!(out, "{}", join(&mut padded.into_iter())).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOY: &str = "6 3\n2 3\n1 2 1 2 1 2\n3 3 3\n1\n1 2\n2\n2 3\n3\n1 3\n1 2 6\n2 3 4\n4 5 6\n";

    #[test]
    fn parses_toy_matrix() {
        let g = parse_alist(TOY).unwrap();
        assert_eq!((g.n_var(), g.n_chk()), (6, 3));
        assert_eq!(g.var_neighbors(5), &[0, 2]);
        assert_eq!(g.chk_neighbors(2), &[3, 4, 5]);
    }

    #[test]
    fn toy_round_trips() {
        let g = parse_alist(TOY).unwrap();
        assert_eq!(parse_alist(&serialize_alist(&g)).unwrap(), g);
    }

    #[test]
    fn column_index_beyond_m_names_line() {
        let bad = TOY.replacen("2 3\n3\n", "2 4\n3\n", 1);
        assert_eq!(parse_alist(&bad).unwrap_err(), AlistError::IndexOutOfRange { line: 8, index: 4, max: 3 });
    }

    #[test]
    fn degree_mismatch_is_reported() {
        let bad = TOY.replacen("1 2\n2\n", "1\n2\n", 1);
        assert!(matches!(parse_alist(&bad).unwrap_err(), AlistError::LengthMismatch { line: 6, expected: 2, found: 1 }));
    }

    #[test]
    fn malformed_header() {
        assert!(matches!(parse_alist("6\n").unwrap_err(), AlistError::Header { line: 1, .. }));
        assert!(matches!(parse_alist("6 x\n").unwrap_err(), AlistError::BadInteger { line: 1, .. }));
        assert!(matches!(parse_alist("6 3\n").unwrap_err(), AlistError::UnexpectedEof { .. }));
    }

    #[test]
    fn inconsistent_rows_are_rejected() {
        let bad = TOY.replacen("4 5 6\n", "3 5 6\n", 1);
        assert!(matches!(parse_alist(&bad).unwrap_err(), AlistError::Inconsistent { line: 13 }));
    }

    #[test]
    fn zero_padding_is_accepted() {
        let padded = TOY.replacen("\n1\n1 2\n", "\n1 0\n1 2\n", 1);
        assert_eq!(parse_alist(&padded).unwrap(), parse_alist(TOY).unwrap());
    }
}
