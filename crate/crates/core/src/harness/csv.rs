use std::io::Write;
use std::path::Path;

use super::sweep::{CellFailure, SweepRecord};
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 12] = [
    "method",
    "integrand",
    "d",
    "M",
    "eps_target",
    "value",
    "true_value",
    "abs_error",
    "oracle_queries",
    "shots",
    "seed",
    "wall_time_ms",
];

/// Twelve significant digits.
fn float(x: f64) -> String {
    format!("{x:.11e}")
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    }
}

/// Serialize records to any writer (LF line endings, no trailing blank line).
pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.method.clone(),
            r.integrand.clone(),
            r.d.to_string(),
            r.m.to_string(),
            float(r.eps_target),
            float(r.value),
            float(r.true_value),
            float(r.abs_error),
            r.oracle_queries.to_string(),
            r.shots.to_string(),
            r.seed.to_string(),
            float(r.wall_time_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(records: &[SweepRecord], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv(records, std::io::BufWriter::new(file)).map_err(csv_err(path))
}

pub fn read_csv(path: &Path) -> Result<Vec<SweepRecord>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_csv(file).map_err(|e| match e {
        ParseError::Csv(source) => Error::Csv {
            path: path.to_path_buf(),
            source,
        },
        ParseError::Schema(msg) => Error::Config(format!("{}: {msg}", path.display())),
    })
}

enum ParseError {
    Csv(csv::Error),
    Schema(String),
}

impl From<csv::Error> for ParseError {
    fn from(e: csv::Error) -> Self {
        ParseError::Csv(e)
    }
}

fn parse_csv<R: std::io::Read>(input: R) -> std::result::Result<Vec<SweepRecord>, ParseError> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(ParseError::Schema(format!("unexpected header {header:?}")));
    }
    let mut out = Vec::new();
    for (line, row) in rdr.records().enumerate() {
        let row = row?;
        let field = |i: usize| row.get(i).unwrap_or("");
        fn num<T: std::str::FromStr>(s: &str, line: usize, col: &str) -> std::result::Result<T, ParseError> {
            s.parse()
                .map_err(|_| ParseError::Schema(format!("row {}: bad {col} `{s}`", line + 2)))
        }
        out.push(SweepRecord {
            method: field(0).to_string(),
            integrand: field(1).to_string(),
            d: num(field(2), line, "d")?,
            m: num(field(3), line, "M")?,
            eps_target: num(field(4), line, "eps_target")?,
            value: num(field(5), line, "value")?,
            true_value: num(field(6), line, "true_value")?,
            abs_error: num(field(7), line, "abs_error")?,
            oracle_queries: num(field(8), line, "oracle_queries")?,
            shots: num(field(9), line, "shots")?,
            seed: num(field(10), line, "seed")?,
            wall_time_ms: num(field(11), line, "wall_time_ms")?,
        });
    }
    Ok(out)
}

/// Sidecar log with one line per failed cell.
pub fn emit_failures(failures: &[CellFailure], path: &Path) -> Result<()> {
    let mut text = String::new();
    for f in failures {
        text.push_str(&format!(
            "{}\t{}\teps={}\tseed={}\t{}\n",
            f.method, f.integrand, f.eps_target, f.seed, f.error
        ));
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(value: f64) -> SweepRecord {
        SweepRecord {
            method: "qc_fft(auto,256,5)".into(),
            integrand: "gaussian-bump:0.25@2x4".into(),
            d: 2,
            m: 4,
            eps_target: 1.0 / 3.0,
            value,
            true_value: 0.123456789012345,
            abs_error: (value - 0.123456789012345).abs(),
            oracle_queries: 1275,
            shots: 5,
            seed: 7,
            wall_time_ms: 0.0,
        }
    }

    fn to_string(records: &[SweepRecord]) -> String {
        let mut buf = Vec::new();
        write_csv(records, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn header_only() {
        assert_eq!(to_string(&[]), format!("{}\n", CSV_HEADER.join(",")));
    }

    #[test]
    fn one_record_two_lines() {
        let s = to_string(&[record(0.2)]);
        assert_eq!(s.lines().count(), 2);
        assert!(!s.contains('\r'));
        assert!(s.lines().nth(1).unwrap().contains("3.33333333333e-1"));
    }

    #[test]
    fn round_trip() {
        let recs = vec![record(0.2), record(f64::MIN_POSITIVE), record(0.987654321)];
        let text = to_string(&recs);
        let back = parse_csv(text.as_bytes()).ok().unwrap();
        assert_eq!(back.len(), 3);
        assert_eq!(to_string(&back), text);
        assert_eq!(back[0].value, 0.2);
        assert_eq!(back[0].method, recs[0].method);
        assert!((back[0].eps_target - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_foreign_header() {
        assert!(parse_csv("a,b\n1,2\n".as_bytes()).is_err());
    }
}
