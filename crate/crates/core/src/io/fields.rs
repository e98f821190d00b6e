//! Field snapshot files.
//!
//! CSV: a header line `nx,ny,Lx,Ly,t`, one line with those values, then `ny`
//! rows of `nx` values (row `iy` holds `y = y(iy)`). Reals are written with
//! 17 significant digits so they parse back to the same bits.
//!
//! Binary (little-endian), 32-byte header followed by `nx·ny` `f64` values
//! in the same row-major order:
//!
//! | offset | size | content                          |
//! |--------|------|----------------------------------|
//! | 0      | 4    | magic `BURG`                     |
//! | 4      | 1    | format version (1)               |
//! | 5      | 1    | log2(nx)                         |
//! | 6      | 1    | log2(ny)                         |
//! | 7      | 1    | reserved, 0                      |
//! | 8      | 8    | Lx                               |
//! | 16     | 8    | Ly                               |
//! | 24     | 8    | t                                |

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::heat::{DomainBox, HeatError, ScalarField2D};

pub const MAGIC: &[u8; 4] = b"BURG";
pub const BINARY_VERSION: u8 = 1;
pub const HEADER_LEN: usize = 32;

#[derive(Debug, Error)]
pub enum FieldIoError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed field file: {0}")]
    Format(String),
    #[error(transparent)]
    Grid(#[from] HeatError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FieldFormat {
    #[default]
    Csv,
    Bin,
}

impl FieldFormat {
    pub fn extension(self) -> &'static str {
        match self {
            FieldFormat::Csv => "csv",
            FieldFormat::Bin => "bin",
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> FieldIoError + '_ {
    move |source| FieldIoError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// The domain stored in a file keeps `t0 = t` of the snapshot.
fn snapshot_domain(nx: usize, ny: usize, lx: f64, ly: f64, t: f64) -> Result<DomainBox, FieldIoError> {
    Ok(DomainBox::new(lx, ly, nx, ny, t)?)
}

pub fn to_csv_string(field: &ScalarField2D) -> String {
    let d = field.domain();
    let mut out = String::new();
    out.push_str("nx,ny,Lx,Ly,t\n");
    out.push_str(&format!(
        "{},{},{:.16e},{:.16e},{:.16e}\n",
        d.nx,
        d.ny,
        d.lx,
        d.ly,
        field.time()
    ));
    for row in field.values().chunks(d.nx) {
        let line: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn write_csv(field: &ScalarField2D, path: &Path) -> Result<(), FieldIoError> {
    fs::write(path, to_csv_string(field)).map_err(io_err(path))
}

pub fn read_csv(path: &Path) -> Result<ScalarField2D, FieldIoError> {
    let file = fs::File::open(path).map_err(io_err(path))?;
    let mut lines = BufReader::new(file).lines();
    let mut next_line = |what: &str| -> Result<String, FieldIoError> {
        lines
            .next()
            .ok_or_else(|| FieldIoError::Format(format!("missing {what}")))?
            .map_err(io_err(path))
    };
    let header = next_line("header")?;
    if header.trim() != "nx,ny,Lx,Ly,t" {
        return Err(FieldIoError::Format(format!("unexpected header `{header}`")));
    }
    let meta = next_line("metadata line")?;
    let parts: Vec<&str> = meta.trim().split(',').collect();
    if parts.len() != 5 {
        return Err(FieldIoError::Format(format!("bad metadata line `{meta}`")));
    }
    let parse_usize = |s: &str| s.parse::<usize>().map_err(|e| FieldIoError::Format(format!("{s}: {e}")));
    let parse_f64 = |s: &str| s.parse::<f64>().map_err(|e| FieldIoError::Format(format!("{s}: {e}")));
    let (nx, ny) = (parse_usize(parts[0])?, parse_usize(parts[1])?);
    let (lx, ly, t) = (parse_f64(parts[2])?, parse_f64(parts[3])?, parse_f64(parts[4])?);
    let domain = snapshot_domain(nx, ny, lx, ly, t)?;
    let mut values = Vec::with_capacity(nx * ny);
    for iy in 0..ny {
        let line = next_line(&format!("row {iy}"))?;
        let row = line
            .trim()
            .split(',')
            .map(parse_f64)
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != nx {
            return Err(FieldIoError::Format(format!(
                "row {iy} has {} values, expected {nx}",
                row.len()
            )));
        }
        values.extend(row);
    }
    Ok(ScalarField2D::new(domain, t, values)?)
}

pub fn to_binary(field: &ScalarField2D) -> Vec<u8> {
    let d = field.domain();
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * d.len());
    out.extend_from_slice(MAGIC);
    out.push(BINARY_VERSION);
    out.push(d.nx.trailing_zeros() as u8);
    out.push(d.ny.trailing_zeros() as u8);
    out.push(0);
    out.extend_from_slice(&d.lx.to_le_bytes());
    out.extend_from_slice(&d.ly.to_le_bytes());
    out.extend_from_slice(&field.time().to_le_bytes());
    for v in field.values() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn from_binary(bytes: &[u8]) -> Result<ScalarField2D, FieldIoError> {
    if bytes.len() < HEADER_LEN {
        return Err(FieldIoError::Format(format!("{} bytes is shorter than the header", bytes.len())));
    }
    if &bytes[0..4] != MAGIC {
        return Err(FieldIoError::Format("bad magic".into()));
    }
    if bytes[4] != BINARY_VERSION {
        return Err(FieldIoError::Format(format!("unsupported version {}", bytes[4])));
    }
    let (ex, ey) = (bytes[5] as u32, bytes[6] as u32);
    if ex >= 32 || ey >= 32 {
        return Err(FieldIoError::Format(format!("grid exponents {ex}, {ey} out of range")));
    }
    let (nx, ny) = (1usize << ex, 1usize << ey);
    let f64_at = |off: usize| f64::from_le_bytes(bytes[off..off + 8].try_into().expect("8 bytes"));
    let (lx, ly, t) = (f64_at(8), f64_at(16), f64_at(24));
    let body = &bytes[HEADER_LEN..];
    if body.len() != 8 * nx * ny {
        return Err(FieldIoError::Format(format!(
            "payload has {} bytes, expected {}",
            body.len(),
            8 * nx * ny
        )));
    }
    let values = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
        .collect();
    let domain = snapshot_domain(nx, ny, lx, ly, t)?;
    Ok(ScalarField2D::new(domain, t, values)?)
}

pub fn write_binary(field: &ScalarField2D, path: &Path) -> Result<(), FieldIoError> {
    let mut file = fs::File::create(path).map_err(io_err(path))?;
    file.write_all(&to_binary(field)).map_err(io_err(path))
}

pub fn read_binary(path: &Path) -> Result<ScalarField2D, FieldIoError> {
    let mut bytes = Vec::new();
    fs::File::open(path)
        .map_err(io_err(path))?
        .read_to_end(&mut bytes)
        .map_err(io_err(path))?;
    from_binary(&bytes)
}

pub fn write_field(field: &ScalarField2D, path: &Path, format: FieldFormat) -> Result<(), FieldIoError> {
    match format {
        FieldFormat::Csv => write_csv(field, path),
        FieldFormat::Bin => write_binary(field, path),
    }
}

pub fn read_field(path: &Path, format: FieldFormat) -> Result<ScalarField2D, FieldIoError> {
    match format {
        FieldFormat::Csv => read_csv(path),
        FieldFormat::Bin => read_binary(path),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ScalarField2D {
        let d = DomainBox::new(3.7, 1.1, 16, 8, 0.25).unwrap();
        ScalarField2D::from_fn(d, 0.375, |x, y| (x * 1.3).sin() * y.exp() / 7.0)
    }

    #[test]
    fn header_is_32_bytes() {
        let bytes = to_binary(&sample());
        assert_eq!(bytes.len(), HEADER_LEN + 8 * 128);
        assert_eq!(&bytes[..4], b"BURG");
        assert_eq!(bytes[5], 4);
        assert_eq!(bytes[6], 3);
    }

    #[test]
    fn corrupted_binary_rejected() {
        let mut bytes = to_binary(&sample());
        assert!(from_binary(&bytes[..20]).is_err());
        bytes.pop();
        assert!(from_binary(&bytes).is_err());
        let mut bad = to_binary(&sample());
        bad[0] = b'X';
        assert!(from_binary(&bad).is_err());
    }

    #[test]
    fn csv_header() {
        let s = to_csv_string(&sample());
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("nx,ny,Lx,Ly,t"));
        assert!(lines.next().unwrap().starts_with("16,8,"));
        assert_eq!(s.lines().count(), 2 + 8);
    }
}
