//! Plain-text basis format.
//!
//! ```text
//! # optional comment lines
//! dim 4
//! 0:1 1:-1 2:-1 3:1
//! ```
//!
//! One element per line after the `dim` header, entries as `index:value`.

use std::io::{BufRead, Write};

use crate::error::{GamaError, Result};
use crate::vector::SparseIntVector;

pub fn write_basis<W: Write>(
    mut out: W,
    dim: usize,
    elements: &[SparseIntVector],
    comment: Option<&str>,
) -> Result<()> {
    if let Some(text) = comment {
        for line in text.lines() {
            writeln!(out, "# {line}")?;
        }
    }
    writeln!(out, "dim {dim}")?;
    for g in elements {
        writeln!(out, "{g}")?;
    }
    Ok(())
}

/// Returns `(dim, elements)`. Elements must be sign-canonical.
pub fn read_basis<R: BufRead>(input: R) -> Result<(usize, Vec<SparseIntVector>)> {
    let mut dim = None;
    let mut elements = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| GamaError::Parse(format!("line {}: {msg}", lineno + 1));
        let Some(d) = dim else {
            let value = line
                .strip_prefix("dim")
                .ok_or_else(|| err("expected `dim N` header".into()))?
                .trim()
                .parse::<usize>()
                .map_err(|e| err(e.to_string()))?;
            dim = Some(value);
            continue;
        };
        let mut entries = Vec::new();
        for token in line.split_whitespace() {
            let (i, v) = token
                .split_once(':')
                .ok_or_else(|| err(format!("bad entry `{token}`")))?;
            let i = i.parse::<usize>().map_err(|e| err(e.to_string()))?;
            let v = v.parse::<i64>().map_err(|e| err(e.to_string()))?;
            entries.push((i, v));
        }
        let g = SparseIntVector::new(d, entries).map_err(|e| err(e.to_string()))?;
        if !g.is_sign_canonical() {
            return Err(err("element is zero or not sign-canonical".into()));
        }
        elements.push(g);
    }
    let dim = dim.ok_or_else(|| GamaError::Parse("missing `dim` header".into()))?;
    Ok((dim, elements))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_expected_text() {
        let g = SparseIntVector::from_dense(&[1, -1, -1, 1]);
        let mut buf = Vec::new();
        write_basis(&mut buf, 4, &[g], Some("assignment n=2 k=2")).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "# assignment n=2 k=2\ndim 4\n0:1 1:-1 2:-1 3:1\n"
        );
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(read_basis("0:1 1:-1\n".as_bytes()).is_err());
        assert!(read_basis("dim 2\n0:-1 1:1\n".as_bytes()).is_err());
        assert!(read_basis("dim 2\n0:1 5:-1\n".as_bytes()).is_err());
        assert!(read_basis("dim 2\n0=1\n".as_bytes()).is_err());
        assert!(read_basis("".as_bytes()).is_err());
    }

    #[test]
    fn reads_comments_and_blank_lines() {
        let (dim, els) = read_basis("# hi\n\ndim 3\n0:1 2:-1\n".as_bytes()).unwrap();
        assert_eq!(dim, 3);
        assert_eq!(els, vec![SparseIntVector::from_dense(&[1, 0, -1])]);
    }
}
