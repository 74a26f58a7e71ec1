//! Number formatting and CSV / gnuplot output helpers.

use std::fs;
use std::io::{self, Write as _};

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// 17 significant digits in scientific notation; round-trips every `f64`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// A rectangular table written as RFC 4180 CSV.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<I, S>(header: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(Vec::new());
        let to_io = |e: csv::Error| Error::Io(std::io::Error::other(e));
        w.write_record(&self.header).map_err(to_io)?;
        for r in &self.rows {
            w.write_record(r).map_err(to_io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        write_file(path, self.to_csv()?.as_bytes())
    }
}

/// Whitespace-separated columns, one point per line, `#` header comment.
pub fn gnuplot_data(comment: &str, columns: &[&[f64]]) -> String {
    let mut out = format!("# {comment}\n");
    let rows = columns.iter().map(|c| c.len()).min().unwrap_or(0);
    for i in 0..rows {
        let line: Vec<String> = columns.iter().map(|c| fmt_f64(c[i])).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Like [`gnuplot_data`] with a leading integer column.
pub fn gnuplot_indexed(comment: &str, index: &[usize], columns: &[&[f64]]) -> String {
    let mut out = format!("# {comment}\n");
    for (i, k) in index.iter().enumerate() {
        out.push_str(&k.to_string());
        for c in columns {
            out.push(' ');
            out.push_str(&fmt_f64(c[i]));
        }
        out.push('\n');
    }
    out
}

/// `z(x_i, y_j)` as gnuplot `splot` blocks separated by blank lines.
pub fn gnuplot_grid(comment: &str, axis: &[f64], z: &[Vec<f64>]) -> String {
    let mut out = format!("# {comment}\n");
    for (i, row) in z.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out.push_str(&format!("{} {} {}\n", fmt_f64(axis[i]), fmt_f64(axis[j]), fmt_f64(*v)));
        }
        out.push('\n');
    }
    out
}

/// Pretty JSON whose floats use the same 17-digit form as the CSV output.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17(PrettyFormatter::new()));
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("json output is utf-8"))
}

struct Digits17<'a>(PrettyFormatter<'a>);

impl Formatter for Digits17<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut f = fs::File::create(path)?;
    f.write_all(bytes)?;
    Ok(())
}

/// Builds names like `rank_sf_n128_a0.85_T1000_s7.csv`.
#[derive(Clone, Debug)]
pub struct FileStem {
    parts: Vec<String>,
}

impl FileStem {
    pub fn new(experiment: &str) -> Self {
        FileStem {
            parts: vec![experiment.to_string()],
        }
    }

    pub fn part(mut self, p: impl Into<String>) -> Self {
        self.parts.push(p.into());
        self
    }

    pub fn file(&self, dir: &Path, suffix: &str) -> PathBuf {
        dir.join(format!("{}{suffix}", self.parts.join("_")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_roundtrip_at_17_digits() {
        for x in [0.1, 1.0 / 3.0, 1e-300, 123456.789, 0.0] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.split('e').next().unwrap().replace(['.', '-'], "");
            assert_eq!(mantissa.len(), 17);
        }
    }

    #[test]
    fn csv_quoting() {
        let mut t = Table::new(["a", "b"]);
        t.push(vec!["x,y".into(), "plain".into()]);
        assert_eq!(t.to_csv().unwrap(), "a,b\r\n\"x,y\",plain\r\n");
    }

    #[test]
    fn json_floats_keep_17_digits() {
        let s = to_json(&serde_json::json!({"x": 0.1, "n": 3, "v": [1.0 / 3.0]})).unwrap();
        let back: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["x"].as_f64(), Some(0.1));
        assert_eq!(back["v"][0].as_f64(), Some(1.0 / 3.0));
        assert_eq!(back["n"].as_u64(), Some(3));
        assert!(s.contains("1.0000000000000001e-1"));
    }

    #[test]
    fn gnuplot_layout() {
        let s = gnuplot_data("x y", &[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_eq!(s.lines().count(), 3);
        assert!(s.starts_with("# x y\n"));
    }
}
