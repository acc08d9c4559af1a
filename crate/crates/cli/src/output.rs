//! Deterministic CSV emission and the parallel point sweep.

use anyhow::{Context, Result};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Seventeen significant digits: enough for every `f64` to re-parse exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Rows of finite values under a fixed header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    /// Appends a row; non-finite rows are refused and reported back.
    pub fn push(&mut self, row: Vec<f64>) -> std::result::Result<(), String> {
        debug_assert_eq!(row.len(), self.header.len());
        if let Some(v) = row.iter().find(|v| !v.is_finite()) {
            return Err(format!("non-finite value {v}"));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| fmt_f64(*v)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).with_context(|| format!("writing {}", path.display()))
    }
}

/// A point that could not be evaluated, with the coordinates it failed at.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub x: f64,
    pub t: f64,
    pub error: String,
    /// Failures expected by construction (the entry transition band) do not fail the run.
    pub expected: bool,
    /// The exponent guard tripped; the asymptotic solver covers these points.
    pub guard: bool,
}

impl Failure {
    pub fn new(x: f64, t: f64, err: &solgas::Error) -> Self {
        Failure {
            x,
            t,
            error: err.to_string(),
            expected: matches!(err, solgas::Error::Transition(_)),
            guard: matches!(err, solgas::Error::Range(_)),
        }
    }

    pub fn non_finite(x: f64, t: f64, msg: String) -> Self {
        Failure { x, t, error: msg, expected: false, guard: false }
    }
}

pub fn write_failures(path: &Path, failures: &[Failure]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    w.write_record(["x", "t", "error"])?;
    for f in failures {
        w.write_record([fmt_f64(f.x), fmt_f64(f.t), f.error.clone()])?;
    }
    w.flush()?;
    Ok(())
}

/// Where a command's files go and how they are named.
#[derive(Debug, Clone)]
pub struct Sink {
    pub dir: PathBuf,
    pub long_format: bool,
}

impl Sink {
    pub fn path(&self, stem: &str) -> PathBuf {
        self.dir.join(format!("{stem}.csv"))
    }

    /// File stem for a single time slice, e.g. `gas_t2.5`.
    pub fn slice_stem(stem: &str, t: f64) -> String {
        format!("{stem}_t{t}")
    }
}

/// Evaluates `f` at every point on a worker pool of `workers` threads. Results come
/// back in input order, so output does not depend on scheduling.
pub fn sweep<P, T, F>(points: &[P], workers: usize, f: F) -> Result<Vec<T>>
where
    P: Sync,
    T: Send,
    F: Fn(&P) -> T + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build()?;
    Ok(pool.install(|| points.par_iter().map(&f).collect()))
}

/// One-line summary of a failure set for stderr.
pub fn summarize(failures: &[Failure], manifest: &Path) -> String {
    let mut s = String::new();
    let hard = failures.iter().filter(|f| !f.expected).count();
    let _ = write!(s, "{} point(s) failed ({} in the entry transition band); see {}", failures.len(), failures.len() - hard, manifest.display());
    if let Some(f) = failures.iter().find(|f| !f.expected) {
        let _ = write!(s, "\nfirst failure at x = {}, t = {}: {}", f.x, f.t, f.error);
    }
    if failures.iter().any(|f| f.guard) {
        let _ = write!(s, "\nthe exponent guard was exceeded; rerun these points with `solgas asymptotic`");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE, f64::MAX, -0.0, 4.0 * 1e-17] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
        }
    }

    #[test]
    fn table_rejects_non_finite_rows() {
        let mut t = Table::new(&["x", "t", "q"]);
        assert!(t.push(vec![0.0, 1.0, f64::NAN]).is_err());
        assert!(t.push(vec![0.0, 1.0, f64::INFINITY]).is_err());
        t.push(vec![0.0, 1.0, 2.0]).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.to_csv(), "x,t,q\n0.0000000000000000e0,1.0000000000000000e0,2.0000000000000000e0\n");
    }

    #[test]
    fn sweep_preserves_order() {
        let pts: Vec<u64> = (0..1000).collect();
        let out = sweep(&pts, 4, |p| p * p).unwrap();
        assert_eq!(out, pts.iter().map(|p| p * p).collect::<Vec<_>>());
    }
}
