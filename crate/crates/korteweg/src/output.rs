//! File formats: amplitude curves and tables as CSV, field magnitudes as
//! binary portable graymaps (P5).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::CliError;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_err(path: &Path, e: csv::Error) -> CliError {
    CliError::Io {
        path: path.to_path_buf(),
        source: e.into(),
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes a table with the given header; creates parent directories.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    w.write_record(header).map_err(|e| csv_err(path, e))?;
    for row in rows {
        w.write_record(row.iter().map(|&x| format_f64(x))).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(io_err(path))
}

/// Header `y,F`, one row per sample. Sample coordinates must be monotone.
pub fn write_amplitude_csv(curve: &[(f64, f64)], path: &Path) -> Result<(), CliError> {
    let increasing = curve.windows(2).all(|w| w[1].0 > w[0].0);
    let decreasing = curve.windows(2).all(|w| w[1].0 < w[0].0);
    if !(increasing || decreasing) {
        return Err(CliError::config("amplitude curve coordinates must be monotone"));
    }
    let rows: Vec<Vec<f64>> = curve.iter().map(|&(y, f)| vec![y, f]).collect();
    write_csv(path, &["y", "F"], &rows)
}

/// Reads back a file written by [`write_amplitude_csv`].
pub fn read_amplitude_csv(path: &Path) -> Result<Vec<(f64, f64)>, CliError> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_err(path, e))?;
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| csv_err(path, e))?;
        let parse = |i: usize| -> Result<f64, CliError> {
            rec.get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| CliError::config(format!("malformed row in {}", path.display())))
        };
        out.push((parse(0)?, parse(1)?));
    }
    Ok(out)
}

/// File name of an along-axis amplitude curve, e.g.
/// `pml_0.001_0.0005_n1_1.57_n2_1.57.csv`; `ξ` is rounded to two decimals.
pub fn curve_filename(u1: f64, u2: f64, xi: f64) -> String {
    let r = (xi * 100.0).round() / 100.0;
    format!("pml_{u1:?}_{u2:?}_n1_{r:?}_n2_{r:?}.csv")
}

/// Binary graymap of `values` (row-major, `width × height`, first row on
/// top), scaled linearly so the maximum maps to 255.
pub fn write_pgm(path: &Path, width: usize, height: usize, values: &[f64]) -> Result<(), CliError> {
    assert_eq!(values.len(), width * height, "pixel count mismatch");
    let max = values.iter().copied().filter(|v| v.is_finite()).fold(0.0, f64::max);
    let scale = if max > 0.0 { 255.0 / max } else { 0.0 };
    let mut bytes = format!("P5\n{width} {height}\n255\n").into_bytes();
    bytes.extend(values.iter().map(|v| {
        if v.is_finite() {
            (v * scale).round().clamp(0.0, 255.0) as u8
        } else {
            0
        }
    }));
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    let mut f = fs::File::create(path).map_err(io_err(path))?;
    f.write_all(&bytes).map_err(io_err(path))
}

/// `dir/name`, for brevity at call sites.
pub fn artifact(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}
