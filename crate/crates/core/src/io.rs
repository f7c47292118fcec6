//! Plain-text tables with round-trip float formatting.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::linalg::CMatrix;

/// 17 significant digits, enough to reproduce any `f64` exactly.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        // no negative zero in outputs
        return format!("{:.16e}", 0.0);
    }
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Int(i64),
    Text(String),
    Float(u64),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x.to_bits())
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Float(bits) => format_float(f64::from_bits(*bits)),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Panics if the row width differs from the header.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row width");
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// `row,col,re,im` for every entry.
pub fn matrix_dump(a: &CMatrix) -> String {
    let mut out = String::from("row,col,re,im\n");
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            let z = a[(i, j)];
            let _ = writeln!(out, "{i},{j},{},{}", format_float(z.re), format_float(z.im));
        }
    }
    out
}

/// Writes to a sibling temporary file and renames it over `path`.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| std::io::Error::new(std::io::ErrorKind::InvalidInput, "path has no file name"))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, -0.75, 1.0 / 3.0, 6.02e23, -1e-300, f64::MIN_POSITIVE] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_float(-0.0), format_float(0.0));
        assert_eq!(format_float(0.25), "2.5000000000000000e-1");
    }

    #[test]
    fn table_layout() {
        let mut t = CsvTable::new(&["level", "energy"]);
        t.push(vec![0usize.into(), (-0.75).into()]);
        t.push(vec![1usize.into(), 0.25.into()]);
        assert_eq!(t.to_csv(), "level,energy\n0,-7.5000000000000000e-1\n1,2.5000000000000000e-1\n");
    }

    #[test]
    fn dump_and_atomic_write() {
        let a = CMatrix::from_row_slice(1, 2, &[Complex64::new(1.0, 0.0), Complex64::new(0.0, -2.0)]);
        let text = matrix_dump(&a);
        assert_eq!(text.lines().count(), 3);
        let dir = std::env::temp_dir().join(format!("spinon-io-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let p = dir.join("m.csv");
        write_atomic(&p, text.as_bytes()).unwrap();
        write_atomic(&p, text.as_bytes()).unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), text);
        assert_eq!(fs::read_dir(&dir).unwrap().count(), 1);
        fs::remove_dir_all(&dir).unwrap();
    }
}
