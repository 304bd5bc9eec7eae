//! Reading, checking and summarising catalogue files.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::catalogue::line::{parse_tokens, token_order};
use crate::catalogue::record::CatalogueRecord;
use crate::catalogue::store::INDEX_FILE;
use crate::error::Result;

/// One factorisation's worth of tokens and where it started.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEntry {
    pub source: PathBuf,
    pub line: usize,
    pub tokens: Vec<String>,
}

impl RawEntry {
    pub fn text(&self) -> String {
        self.tokens.join(" ")
    }
}

/// Splits catalogue text into entries. Tokens accumulate across lines until an entry has
/// `n - 1` of them, `n` being the order implied by its first token, so both one-line and
/// wrapped layouts are accepted. Lines starting with `#` are comments.
pub fn split_entries(text: &str, source: &Path) -> Vec<RawEntry> {
    let mut out = Vec::new();
    let mut current: Option<(usize, RawEntry)> = None;
    for (i, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        for token in line.split_whitespace() {
            let n = token_order(token);
            if let Some((m, _)) = &current {
                if *m != n {
                    // A token of another order ends the entry early; parsing will report it.
                    out.push(current.take().expect("present").1);
                }
            }
            let (_, entry) = current.get_or_insert_with(|| {
                (
                    n,
                    RawEntry {
                        source: source.to_path_buf(),
                        line: i + 1,
                        tokens: Vec::new(),
                    },
                )
            });
            entry.tokens.push(token.to_string());
            if entry.tokens.len() + 1 >= n {
                out.push(current.take().expect("present").1);
            }
        }
    }
    if let Some((_, entry)) = current {
        out.push(entry);
    }
    out
}

/// Catalogue files under `path`: the file itself, or the files of a directory in name order
/// (the store's index file excluded).
pub fn catalogue_files(path: &Path) -> Result<Vec<PathBuf>> {
    if !path.is_dir() {
        fs::metadata(path)?;
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files: Vec<PathBuf> = fs::read_dir(path)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.is_file() && p.file_name().is_some_and(|f| f != INDEX_FILE));
    files.sort();
    Ok(files)
}

/// A rejected or questionable entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IngestIssue {
    pub source: PathBuf,
    pub line: usize,
    pub text: String,
    pub message: String,
}

impl fmt::Display for IngestIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.source.display(), self.line, self.message)
    }
}

#[derive(Clone, Debug)]
pub struct Ingested {
    /// One record per distinct isomorphism class, in input order.
    pub records: Vec<CatalogueRecord>,
    /// Entries that failed to parse, were not perfect, or repeated an earlier class.
    pub errors: Vec<IngestIssue>,
    /// Valid entries not written in canonical form; they are kept, under their canonical form.
    pub non_canonical: Vec<IngestIssue>,
    pub stats: CatalogueStats,
}

/// Parses, validates, canonises and indexes every entry under `path`.
pub fn ingest_catalogue(path: &Path) -> Result<Ingested> {
    let mut entries = Vec::new();
    for file in catalogue_files(path)? {
        let text = fs::read_to_string(&file)?;
        entries.extend(split_entries(&text, &file));
    }
    Ok(ingest_entries(&entries))
}

pub fn ingest_entries(entries: &[RawEntry]) -> Ingested {
    let computed: Vec<std::result::Result<(CatalogueRecord, bool), String>> = entries
        .par_iter()
        .map(|e| {
            let tokens: Vec<&str> = e.tokens.iter().map(String::as_str).collect();
            let f = parse_tokens(&tokens).map_err(|err| err.to_string())?;
            let record = CatalogueRecord::compute(&f).map_err(|err| err.to_string())?;
            let canonical = record.canonical_line == e.text();
            Ok((record, canonical))
        })
        .collect();
    let mut records = Vec::new();
    let mut errors = Vec::new();
    let mut non_canonical = Vec::new();
    let mut first_seen: HashMap<String, usize> = HashMap::new();
    for (e, result) in entries.iter().zip(computed) {
        let issue = |message: String| IngestIssue {
            source: e.source.clone(),
            line: e.line,
            text: e.text(),
            message,
        };
        match result {
            Err(message) => errors.push(issue(message)),
            Ok((record, canonical)) => {
                if let Some(&earlier) = first_seen.get(&record.canonical_line) {
                    errors.push(issue(format!("isomorphic to the entry at line {earlier}")));
                    continue;
                }
                if !canonical {
                    non_canonical.push(issue(format!(
                        "not in canonical form; canonical line is {}",
                        record.canonical_line
                    )));
                }
                first_seen.insert(record.canonical_line.clone(), e.line);
                records.push(record);
            }
        }
    }
    let mut stats = CatalogueStats::from_records(&records);
    stats.errors = errors.len();
    stats.non_canonical = non_canonical.len();
    Ingested {
        records,
        errors,
        non_canonical,
        stats,
    }
}

/// How an invariant partitions a set of records.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantClasses {
    pub classes: usize,
    /// Class size -> number of classes of that size.
    pub sizes: BTreeMap<usize, usize>,
}

impl InvariantClasses {
    pub fn of<K: Ord>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut groups: BTreeMap<K, usize> = BTreeMap::new();
        for k in keys {
            *groups.entry(k).or_default() += 1;
        }
        let mut sizes = BTreeMap::new();
        for &size in groups.values() {
            *sizes.entry(size).or_default() += 1;
        }
        InvariantClasses {
            classes: groups.len(),
            sizes,
        }
    }

    /// Number of classes with exactly `size` members.
    pub fn with_size(&self, size: usize) -> usize {
        self.sizes.get(&size).copied().unwrap_or(0)
    }
}

/// Invariant names used in [`CatalogueStats::invariant_classes`].
pub const STAT_INVARIANTS: [&str; 8] = [
    "indegree",
    "pv4",
    "pv5",
    "tricolour",
    "cycles",
    "profile3",
    "profile34",
    "train",
];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CatalogueStats {
    pub total: usize,
    /// Order -> count.
    pub orders: BTreeMap<usize, usize>,
    /// Automorphism group order -> count.
    pub aut_orders: BTreeMap<usize, usize>,
    /// Generator cycle type of non-trivial cyclic groups -> count; `non-cyclic` otherwise.
    pub cycle_types: BTreeMap<String, usize>,
    pub nontrivial: usize,
    pub invariant_classes: BTreeMap<&'static str, InvariantClasses>,
    pub species_total: usize,
    pub folds_checked: usize,
    pub folds_symbol_hamiltonian: usize,
    pub folds_atomic: usize,
    pub errors: usize,
    pub non_canonical: usize,
}

impl CatalogueStats {
    pub fn from_records(records: &[CatalogueRecord]) -> Self {
        let mut s = CatalogueStats {
            total: records.len(),
            ..Default::default()
        };
        for r in records {
            let n = r.canonical_line.split_whitespace().count() + 1;
            *s.orders.entry(n).or_default() += 1;
            *s.aut_orders.entry(r.aut_order).or_default() += 1;
            if r.aut_order > 1 {
                s.nontrivial += 1;
                let key = r.aut_cycle_type.clone().unwrap_or_else(|| "non-cyclic".into());
                *s.cycle_types.entry(key).or_default() += 1;
            }
            s.species_total += r.species;
            s.folds_checked += r.folds_checked;
            s.folds_symbol_hamiltonian += r.folds_symbol_hamiltonian;
            s.folds_atomic += r.folds_atomic;
        }
        let classes = &mut s.invariant_classes;
        classes.insert("indegree", InvariantClasses::of(records.iter().map(|r| &r.indegree)));
        classes.insert("pv4", InvariantClasses::of(records.iter().map(|r| r.pvector_upto(4))));
        classes.insert("pv5", InvariantClasses::of(records.iter().map(|r| r.pvector_upto(5))));
        classes.insert("tricolour", InvariantClasses::of(records.iter().map(|r| &r.tricolour)));
        classes.insert("cycles", InvariantClasses::of(records.iter().map(|r| &r.cycles)));
        classes.insert(
            "profile3",
            InvariantClasses::of(records.iter().map(|r| r.profile_restricted(&[0]))),
        );
        classes.insert("profile34", InvariantClasses::of(records.iter().map(|r| &r.profile)));
        classes.insert("train", InvariantClasses::of(records.iter().map(|r| &r.train)));
        s
    }

    pub fn classes(&self, invariant: &str) -> Option<&InvariantClasses> {
        self.invariant_classes.get(invariant)
    }
}

impl fmt::Display for CatalogueStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "total: {}", self.total)?;
        for (n, c) in &self.orders {
            writeln!(f, "order {n}: {c}")?;
        }
        writeln!(f, "non-trivial automorphism group: {}", self.nontrivial)?;
        for (o, c) in &self.aut_orders {
            writeln!(f, "  |Aut| = {o}: {c}")?;
        }
        for (t, c) in &self.cycle_types {
            writeln!(f, "  generator {t}: {c}")?;
        }
        for (name, cls) in &self.invariant_classes {
            let sizes: Vec<String> = cls
                .sizes
                .iter()
                .filter(|(&size, _)| size > 1)
                .map(|(size, count)| format!("{count}x{size}"))
                .collect();
            if sizes.is_empty() {
                writeln!(f, "classes {name}: {}", cls.classes)?;
            } else {
                writeln!(f, "classes {name}: {} (shared: {})", cls.classes, sizes.join(", "))?;
            }
        }
        writeln!(f, "species: {}", self.species_total)?;
        writeln!(
            f,
            "folds: {} checked, {} symbol-Hamiltonian, {} atomic",
            self.folds_checked, self.folds_symbol_hamiltonian, self.folds_atomic
        )?;
        writeln!(f, "non-canonical entries: {}", self.non_canonical)?;
        write!(f, "errors: {}", self.errors)
    }
}
