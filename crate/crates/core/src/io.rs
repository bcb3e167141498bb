//! Text point-set format.
//!
//! One point per line, `d` whitespace-separated decimal coordinates. A
//! `#weighted` header line (before the first data line) adds a trailing
//! weight column. Any other line starting with `#` is a comment.
//!
//! ```text
//! #weighted
//! # hammersley, N = 2
//! 0.0 0.0 1.0
//! 0.5 0.5 2.5
//! ```

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::types::PointSet;

pub const WEIGHTED_HEADER: &str = "#weighted";

/// Formats a float with 17 significant digits, which round-trips any `f64`.
pub fn fmt_f64(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let a = x.abs();
    if !(1e-5..1e17).contains(&a) {
        return format!("{x:.16e}");
    }
    let exp = a.log10().floor() as i32;
    let decimals = (16 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn parse_point_set<R: BufRead>(reader: R) -> Result<PointSet> {
    let mut weighted = false;
    let mut seen_data = false;
    let mut width = None;
    let mut coords = Vec::new();
    let mut weights = Vec::new();

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            if trimmed == WEIGHTED_HEADER {
                if seen_data {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "#weighted header after data lines".into(),
                    });
                }
                weighted = true;
            }
            continue;
        }
        seen_data = true;
        let fields = trimmed
            .split_whitespace()
            .map(|s| {
                s.parse::<f64>().map_err(|e| Error::Parse {
                    line: line_no,
                    message: format!("bad number {s:?}: {e}"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        let expected = *width.get_or_insert(fields.len());
        if fields.len() != expected {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {expected} columns, found {}", fields.len()),
            });
        }
        if weighted {
            let (w, x) = fields.split_last().expect("nonempty line");
            coords.extend_from_slice(x);
            weights.push(*w);
        } else {
            coords.extend(fields);
        }
    }

    let width = width.ok_or(Error::EmptySet)?;
    let dim = if weighted { width - 1 } else { width };
    if dim == 0 {
        return Err(Error::InvalidDimension(0));
    }
    PointSet::from_flat(coords, weighted.then_some(weights), dim)
}

pub fn read_point_set(path: impl AsRef<Path>) -> Result<PointSet> {
    let file = std::fs::File::open(path)?;
    parse_point_set(std::io::BufReader::new(file))
}

pub fn format_point_set(ps: &PointSet) -> String {
    let mut out = String::new();
    if ps.is_weighted() {
        out.push_str(WEIGHTED_HEADER);
        out.push('\n');
    }
    let _ = writeln!(out, "# n = {}, d = {}", ps.len(), ps.dim());
    for (i, p) in ps.points().enumerate() {
        let mut cols: Vec<String> = p.iter().map(|&x| fmt_f64(x)).collect();
        if ps.is_weighted() {
            cols.push(fmt_f64(ps.weight(i)));
        }
        out.push_str(&cols.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_point_set<W: Write>(mut w: W, ps: &PointSet) -> Result<()> {
    w.write_all(format_point_set(ps).as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_and_comments() {
        let text = "# comment\n0.1 0.2\n\n  0.3 0.4  \n";
        let ps = parse_point_set(text.as_bytes()).unwrap();
        assert_eq!(ps.dim(), 2);
        assert_eq!(ps.len(), 2);
        assert_eq!(ps.point(1), &[0.3, 0.4]);
        assert!(!ps.is_weighted());
    }

    #[test]
    fn parses_weighted() {
        let text = "#weighted\n0.1 0.2 3.0\n0.3 0.4 -1.5\n";
        let ps = parse_point_set(text.as_bytes()).unwrap();
        assert_eq!(ps.dim(), 2);
        assert_eq!(ps.weights(), Some(&[3.0, -1.5][..]));
    }

    #[test]
    fn rejects_ragged_and_bad_numbers() {
        assert!(matches!(
            parse_point_set("0.1 0.2\n0.3\n".as_bytes()),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_point_set("0.1 abc\n".as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_point_set("# only comments\n".as_bytes()),
            Err(Error::EmptySet)
        ));
        assert!(parse_point_set("1.0 0.5\n".as_bytes()).is_err());
    }

    #[test]
    fn late_weighted_header_is_an_error() {
        assert!(parse_point_set("0.1 0.2\n#weighted\n".as_bytes()).is_err());
    }

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_f64(0.5), "0.50000000000000000");
        assert_eq!(fmt_f64(0.0), "0");
        let x = 0.1 + 0.2;
        assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        let tiny = 3.0e-9;
        assert_eq!(fmt_f64(tiny).parse::<f64>().unwrap(), tiny);
    }

    #[test]
    fn write_then_read_is_identity() {
        let ps = PointSet::new(
            vec![vec![0.1, 1.0 / 3.0], vec![0.0, 0.999_999_999_999]],
            Some(vec![1.0, -2.25]),
            2,
        )
        .unwrap();
        let back = parse_point_set(format_point_set(&ps).as_bytes()).unwrap();
        assert_eq!(back, ps);
    }
}
