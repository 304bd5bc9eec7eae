//! The on-disk catalogue store: a directory holding `catalogue.txt`, one canonical line per
//! P1F, and `index.tsv`, one index line per P1F. Both are sorted by canonical line.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::catalogue::record::CatalogueRecord;
use crate::error::Result;

pub const CATALOGUE_FILE: &str = "catalogue.txt";
pub const INDEX_FILE: &str = "index.tsv";

/// Writes (replacing) the store at `dir`.
pub fn write_store(dir: &Path, records: &[CatalogueRecord]) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut sorted: Vec<&CatalogueRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.canonical_line.cmp(&b.canonical_line));
    sorted.dedup_by(|a, b| a.canonical_line == b.canonical_line);
    let mut lines = fs::File::create(dir.join(CATALOGUE_FILE))?;
    let mut index = fs::File::create(dir.join(INDEX_FILE))?;
    for r in sorted {
        writeln!(lines, "{}", r.canonical_line)?;
        writeln!(index, "{}", r.to_index_line())?;
    }
    Ok(())
}

/// Reads the index of the store at `dir`.
pub fn read_index(dir: &Path) -> Result<Vec<CatalogueRecord>> {
    fs::read_to_string(dir.join(INDEX_FILE))?
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(CatalogueRecord::from_index_line)
        .collect()
}
