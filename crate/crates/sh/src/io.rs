//! Snapshot dumps and observable streams.
//!
//! A snapshot file is a sequence of little-endian records
//! `t, v, re(c_0), im(c_0), …, re(c_{n-1}), im(c_{n-1})`, all `f64`, with
//! modes in FFT order. A JSON sidecar (`<file>.json`) describes the layout.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use tp_numerics::{Complex64, Grid1D, SpectralField};

use crate::{Observation, ShError};

#[derive(Debug, Clone)]
pub struct Snapshot {
    pub t: f64,
    pub v: f64,
    pub field: SpectralField,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotManifest {
    pub format: String,
    pub n_points: usize,
    pub length: f64,
    pub records: usize,
    pub record_bytes: usize,
    pub layout: String,
}

fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Writes `snapshots` (all on one grid) and the sidecar manifest.
pub fn write_snapshots(path: &Path, snapshots: &[Snapshot]) -> Result<SnapshotManifest, ShError> {
    let grid = match snapshots.first() {
        Some(s) => *s.field.grid(),
        None => return Err(ShError::Config("no snapshots to write".into())),
    };
    if snapshots.iter().any(|s| *s.field.grid() != grid) {
        return Err(ShError::Config("snapshots live on different grids".into()));
    }
    let mut out = BufWriter::new(File::create(path)?);
    for s in snapshots {
        out.write_all(&s.t.to_le_bytes())?;
        out.write_all(&s.v.to_le_bytes())?;
        for c in s.field.modes() {
            out.write_all(&c.re.to_le_bytes())?;
            out.write_all(&c.im.to_le_bytes())?;
        }
    }
    out.flush()?;
    let manifest = SnapshotManifest {
        format: "f64-le".into(),
        n_points: grid.n_points(),
        length: grid.length(),
        records: snapshots.len(),
        record_bytes: 8 * (2 + 2 * grid.n_points()),
        layout: "t, v, then (re, im) per mode in FFT order".into(),
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(|e| ShError::Config(e.to_string()))?;
    std::fs::write(sidecar(path), json)?;
    Ok(manifest)
}

/// Reads a snapshot file written by [`write_snapshots`].
pub fn read_snapshots(path: &Path) -> Result<Vec<Snapshot>, ShError> {
    let manifest: SnapshotManifest = serde_json::from_str(&std::fs::read_to_string(sidecar(path))?)
        .map_err(|e| ShError::Config(format!("bad snapshot manifest: {e}")))?;
    let grid = Grid1D::with_length(manifest.n_points, manifest.length)?;
    let mut bytes = Vec::new();
    File::open(path)?.read_to_end(&mut bytes)?;
    if bytes.len() != manifest.records * manifest.record_bytes {
        return Err(ShError::Config("snapshot file size does not match its manifest".into()));
    }
    let word = |i: usize| f64::from_le_bytes(bytes[8 * i..8 * i + 8].try_into().expect("8 bytes"));
    let per = manifest.record_bytes / 8;
    (0..manifest.records)
        .map(|r| {
            let base = r * per;
            let modes = (0..manifest.n_points)
                .map(|j| Complex64::new(word(base + 2 + 2 * j), word(base + 3 + 2 * j)))
                .collect();
            Ok(Snapshot { t: word(base), v: word(base + 1), field: SpectralField::from_modes(grid, modes)? })
        })
        .collect()
}

/// CSV stream `t,v,hul_norm,max_abs,mode1_abs,ln_max_abs`.
pub fn write_observables_csv(path: &Path, rows: &[Observation]) -> Result<(), ShError> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "t,v,hul_norm,max_abs,mode1_abs,ln_max_abs")?;
    for o in rows {
        writeln!(
            out,
            "{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}",
            o.t, o.v, o.hul_norm, o.max_abs, o.mode1_abs, o.ln_max_abs
        )?;
    }
    out.flush()?;
    Ok(())
}
