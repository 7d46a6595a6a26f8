//! Field serialization: CSV (`x[,y],value`) and a flat little-endian binary layout
//! (u64 dim, u64 n, f64 L, then row-major f64 values with x fastest).

use super::field::Field;
use super::grid::Grid;
use crate::error::{Error, Result};
use std::fmt::Write as _;

pub fn field_to_csv(u: &Field) -> String {
    let g = u.grid;
    let mut s = String::from(if g.dim() == 1 { "x,value\n" } else { "x,y,value\n" });
    for (i, v) in u.values.iter().enumerate() {
        let p = g.point(i);
        if g.dim() == 1 {
            let _ = writeln!(s, "{:?},{:?}", p[0], v);
        } else {
            let _ = writeln!(s, "{:?},{:?},{:?}", p[0], p[1], v);
        }
    }
    s
}

pub fn field_to_bytes(u: &Field) -> Vec<u8> {
    let g = u.grid;
    let mut out = Vec::with_capacity(24 + 8 * u.values.len());
    out.extend_from_slice(&(g.dim() as u64).to_le_bytes());
    out.extend_from_slice(&(g.n() as u64).to_le_bytes());
    out.extend_from_slice(&g.half_width().to_le_bytes());
    for v in &u.values {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn field_from_bytes(bytes: &[u8]) -> Result<Field> {
    if bytes.len() < 24 {
        return Err(Error::Data("field file shorter than its header".into()));
    }
    let word = |i: usize| -> [u8; 8] { bytes[8 * i..8 * i + 8].try_into().expect("8-byte slice") };
    let dim = u64::from_le_bytes(word(0)) as usize;
    let n = u64::from_le_bytes(word(1)) as usize;
    let l = f64::from_le_bytes(word(2));
    let grid = Grid::new(dim, l, n)?;
    if bytes.len() != 24 + 8 * grid.len() {
        return Err(Error::Data(format!(
            "field payload has {} bytes, expected {}",
            bytes.len() - 24,
            8 * grid.len()
        )));
    }
    let values = (0..grid.len()).map(|i| f64::from_le_bytes(word(3 + i))).collect();
    Field::new(grid, values)
}

/// Parses the CSV layout back onto `grid`, checking the coordinates.
pub fn field_from_csv(text: &str, grid: Grid) -> Result<Field> {
    let mut values = Vec::with_capacity(grid.len());
    for (line_no, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != grid.dim() + 1 {
            return Err(Error::Data(format!("line {}: expected {} columns", line_no + 1, grid.dim() + 1)));
        }
        let num = |s: &str| -> Result<f64> {
            s.trim().parse::<f64>().map_err(|e| Error::Data(format!("line {}: {e}", line_no + 1)))
        };
        let idx = values.len();
        if idx >= grid.len() {
            return Err(Error::Data("more rows than grid nodes".into()));
        }
        let p = grid.point(idx);
        for a in 0..grid.dim() {
            if (num(cols[a])? - p[a]).abs() > 1e-9 * grid.half_width() {
                return Err(Error::Data(format!("line {}: coordinate does not match the grid", line_no + 1)));
            }
        }
        values.push(num(cols[grid.dim()])?);
    }
    Field::new(grid, values)
}

/// Writes through a sibling temporary file and renames it into place.
pub fn write_atomic(path: &std::path::Path, bytes: &[u8]) -> Result<()> {
    let name = path
        .file_name()
        .ok_or_else(|| Error::Io(format!("{} has no file name", path.display())))?
        .to_string_lossy()
        .into_owned();
    let tmp = path.with_file_name(format!(".{name}.tmp"));
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}
