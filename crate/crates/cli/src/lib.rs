//! Harness behind the `qwalk` binary.

// `!(x < y)` is used on purpose so that NaN inputs fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use config::RunConfig;
use table::Table;

fn write_to(path: &Path, table: &Table, cfg: &RunConfig) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    table.write(&mut w, cfg.format)?;
    w.flush()?;
    Ok(())
}

/// Writes one table to `--out`, or stdout when no path is set.
pub fn write_output(cfg: &RunConfig, table: &Table) -> Result<()> {
    match &cfg.out {
        Some(path) => write_to(path, table, cfg),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            table.write(&mut lock, cfg.format)?;
            lock.flush()?;
            Ok(())
        }
    }
}

/// `dir/stem.ext` becomes `dir/stem_n<N>.ext`, with the extension taken from the format.
pub fn per_step_path(out: &Path, n: usize, cfg: &RunConfig) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("walk");
    out.with_file_name(format!("{stem}_n{n}.{}", cfg.format.extension()))
}

/// A single table goes where [`write_output`] puts it; several need `--out`
/// and are split into per-step files. Returns the files written.
pub fn write_per_step(cfg: &RunConfig, tables: &[(usize, Table)]) -> Result<Vec<PathBuf>> {
    match (tables, &cfg.out) {
        ([(_, t)], _) => {
            write_output(cfg, t)?;
            Ok(cfg.out.iter().cloned().collect())
        }
        (_, None) => bail!("several step counts need --out; one file is written per step count"),
        (_, Some(out)) => tables
            .iter()
            .map(|(n, t)| {
                let path = per_step_path(out, *n, cfg);
                write_to(&path, t, cfg)?;
                Ok(path)
            })
            .collect(),
    }
}
