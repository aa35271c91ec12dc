//! Tabular results and their CSV encoding.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use crate::error::{CliError, Result};

/// Significant digits of every printed number.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Locale-independent scientific notation with [`SIGNIFICANT_DIGITS`] digits.
pub fn format_number(x: f64) -> String {
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
}

/// Header plus pre-formatted rows; an empty string is an empty cell.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Non-fatal problems, in row order.
    pub warnings: Vec<String>,
}

impl Table {
    /// Joins tables that share their first column, appending `suffixes[i]`
    /// to the remaining column names of `tables[i]`.
    pub fn join(tables: &[Table], suffixes: &[String]) -> Result<Table> {
        let first = tables
            .first()
            .ok_or_else(|| CliError::Usage("nothing to join".into()))?;
        let mut out = Table {
            header: vec![first.header[0].clone()],
            rows: first.rows.iter().map(|r| vec![r[0].clone()]).collect(),
            warnings: Vec::new(),
        };
        for (t, suffix) in tables.iter().zip(suffixes) {
            if t.rows.len() != out.rows.len() || t.rows.iter().zip(&out.rows).any(|(a, b)| a[0] != b[0]) {
                return Err(CliError::Usage("joined tables must share their first column".into()));
            }
            out.header
                .extend(t.header[1..].iter().map(|h| format!("{h}{suffix}")));
            for (row, src) in out.rows.iter_mut().zip(&t.rows) {
                row.extend_from_slice(&src[1..]);
            }
            out.warnings.extend(t.warnings.iter().cloned());
        }
        Ok(out)
    }

    pub fn write_csv<W: Write>(&self, sink: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes to `path`, or to standard output when `path` is `None`.
    pub fn emit(&self, path: Option<&Path>) -> Result<()> {
        for warning in &self.warnings {
            eprintln!("warning: {warning}");
        }
        match path {
            Some(p) => self.write_csv(File::create(p)?),
            None => self.write_csv(std::io::stdout().lock()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_have_twelve_significant_digits() {
        assert_eq!(format_number(3.308_712_345_678_9), "3.30871234568e0");
        assert_eq!(format_number(-1.5e-7), "-1.50000000000e-7");
        assert_eq!(format_number(0.0), "0.00000000000e0");
    }

    #[test]
    fn join_checks_the_shared_axis() {
        let a = Table {
            header: vec!["r".into(), "g".into()],
            rows: vec![vec!["0".into(), "1".into()]],
            warnings: vec![],
        };
        let mut b = a.clone();
        let t = Table::join(&[a.clone(), b.clone()], &["_a".into(), "_b".into()]).unwrap();
        assert_eq!(t.header, ["r", "g_a", "g_b"]);
        assert_eq!(t.rows, [["0", "1", "1"]]);
        b.rows[0][0] = "1".into();
        assert!(Table::join(&[a, b], &["".into(), "".into()]).is_err());
    }
}
