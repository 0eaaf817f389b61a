//! Text form of an error set:
//!
//! ```text
//! # label E^[5](Λ^(10,4))
//! # source <sha256 hex>
//! # raw 17863
//! 0,1,2,5,9
//! ...
//! ```

use std::fmt::Write as _;

use super::{ErrorPattern, ErrorSet};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EsetFileError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing `# {0}` header")]
    MissingHeader(&'static str),
}

pub fn write_error_set(set: &ErrorSet) -> String {
    let mut out = String::new();
    writeln!(out, "# label {}", set.label).unwrap();
    writeln!(out, "# source {}", set.source_hash).unwrap();
    writeln!(out, "# raw {}", set.raw_count).unwrap();
    for p in &set.patterns {
        let cells: Vec<String> = p.support().iter().map(usize::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_error_set(text: &str) -> Result<ErrorSet, EsetFileError> {
    let (mut label, mut source, mut raw) = (None, None, None);
    let mut patterns = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let line = i + 1;
        let l = l.trim();
        if l.is_empty() {
            continue;
        }
        if let Some(h) = l.strip_prefix('#') {
            let (key, val) = h.trim().split_once(' ').unwrap_or((h.trim(), ""));
            match key {
                "label" => label = Some(val.trim().to_string()),
                "source" => source = Some(val.trim().to_string()),
                "raw" => {
                    raw = Some(val.trim().parse().map_err(|_| EsetFileError::Parse {
                        line,
                        msg: format!("bad raw count {val:?}"),
                    })?)
                }
                _ => {}
            }
            continue;
        }
        let support = l
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| EsetFileError::Parse { line, msg: format!("bad index {t:?}") })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let p = ErrorPattern::new(support.clone());
        if p.weight() != support.len() {
            return Err(EsetFileError::Parse { line, msg: "repeated index".into() });
        }
        patterns.push(p);
    }
    let label = label.ok_or(EsetFileError::MissingHeader("label"))?;
    let source_hash = source.ok_or(EsetFileError::MissingHeader("source"))?;
    let n = patterns.len();
    patterns.sort();
    patterns.dedup();
    if patterns.len() != n {
        return Err(EsetFileError::Parse { line: 0, msg: "duplicate patterns".into() });
    }
    Ok(ErrorSet { label, patterns, source_hash, raw_count: raw.unwrap_or(n) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let set = ErrorSet {
            label: "E^[2](Λ^(5,3))".into(),
            patterns: vec![ErrorPattern::new(vec![0, 4]), ErrorPattern::new(vec![3, 9])],
            source_hash: "ab12".into(),
            raw_count: 3,
        };
        let text = write_error_set(&set);
        assert!(text.contains("\n0,4\n3,9\n"));
        assert_eq!(parse_error_set(&text).unwrap(), set);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_error_set("1,2\n"), Err(EsetFileError::MissingHeader("label")));
        assert!(matches!(
            parse_error_set("# label x\n# source y\n1,z\n"),
            Err(EsetFileError::Parse { line: 3, .. })
        ));
    }
}
