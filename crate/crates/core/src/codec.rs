//! Plain-text complex format.
//!
//! ```text
//! n=4
//! # comment
//! 0 1 2
//! 2 3
//! ```
//!
//! The first non-comment line is `n=<int>`; every further non-comment line
//! lists one simplex as strictly increasing vertex ids. The complex is the
//! face closure of the listed simplices. A comment of the exact form
//! `# cap=<int>` restores a dimension cap; other readers see a comment.

use std::fmt::Write as _;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut n: Option<usize> = None;
    let mut cap: Option<usize> = None;
    let mut simplices: Vec<Vec<u32>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("cap=") {
                cap = Some(v.trim().parse().map_err(|_| err(format!("bad cap {v:?}")))?);
            }
            continue;
        }
        let line = match line.find('#') {
            Some(i) => line[..i].trim(),
            None => line,
        };
        if line.is_empty() {
            continue;
        }
        match n {
            None => {
                let v = line
                    .strip_prefix("n=")
                    .ok_or_else(|| err(format!("expected `n=<int>`, found {line:?}")))?;
                n = Some(v.trim().parse().map_err(|_| err(format!("bad vertex count {v:?}")))?);
            }
            Some(n) => {
                let mut s = Vec::new();
                for tok in line.split_whitespace() {
                    let v: u32 = tok.parse().map_err(|_| err(format!("bad vertex id {tok:?}")))?;
                    if v as usize >= n {
                        return Err(err(format!("vertex {v} >= n={n}")));
                    }
                    if s.last().is_some_and(|&last| last >= v) {
                        return Err(err(format!("vertices not strictly increasing: {line:?}")));
                    }
                    s.push(v);
                }
                simplices.push(s);
            }
        }
    }
    let n = n.ok_or(Error::Parse { line: 0, msg: "missing `n=<int>` header".into() })?;
    Ok(SimplicialComplex::from_simplices(n, simplices)?.with_cap(cap))
}

/// Canonical text: header, optional cap comment, maximal simplices by
/// dimension then lexicographically.
pub fn emit_complex(x: &SimplicialComplex) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n={}", x.n());
    if let Some(cap) = x.cap() {
        let _ = writeln!(out, "# cap={cap}");
    }
    for s in x.maximal_simplices() {
        let mut first = true;
        for v in s.vertices() {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}

pub fn read_complex(path: &std::path::Path) -> Result<SimplicialComplex> {
    parse_complex(&std::fs::read_to_string(path)?)
}

pub fn write_complex(path: &std::path::Path, x: &SimplicialComplex) -> Result<()> {
    std::fs::write(path, emit_complex(x))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_hollow_triangle() {
        let x = parse_complex("n=3\n0 1\n0 2\n1 2\n").unwrap();
        assert_eq!(x.f_vector(), vec![3, 3]);
        assert_eq!(x.n(), 3);
    }

    #[test]
    fn canonical_form() {
        let s = "# a triangle and a stray edge\nn=5\n2 3\n0 1 2   # filled\n\n1 2\n";
        let x = parse_complex(s).unwrap();
        assert_eq!(emit_complex(&x), "n=5\n2 3\n0 1 2\n");
        assert_eq!(parse_complex(&emit_complex(&x)).unwrap(), x);
        let isolated = parse_complex("n=3\n1\n").unwrap();
        assert_eq!(emit_complex(&isolated), "n=3\n1\n");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_complex("n=3\n2 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_complex("n=3\n0 3\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_complex("0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_complex("n=3\n0 x\n"), Err(Error::Parse { .. })));
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn cap_round_trips() {
        let x = SimplicialComplex::full(5, 4).skeleton(2);
        let text = emit_complex(&x);
        assert!(text.contains("# cap=2"));
        assert_eq!(parse_complex(&text).unwrap(), x);
    }
}
