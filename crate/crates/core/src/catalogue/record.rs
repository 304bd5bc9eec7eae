//! Per-factorisation records of the catalogue index.

use std::fmt::Write as _;

use crate::canon::canonicalize;
use crate::catalogue::line::{emit_line, parse_line};
use crate::error::{Error, Result};
use crate::graph::Factorisation;
use crate::invariants::{
    build_train, indegree_sequence, list, p_vector, per_row_cycle_profile, train_canonical_hash,
    tricolour_vector, vertex_cycle_tally, CycleTally, IndegreeSequence, PVector, TrainDigest,
};
use crate::latin::fold;

/// Largest `i` kept in the stored p-vector.
pub const PV_DEPTH: usize = 5;

/// Row-cycle lengths used for the stored per-row profile.
pub const PROFILE_LENGTHS: [usize; 2] = [3, 4];

/// Everything the index keeps about one P1F.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogueRecord {
    pub canonical_line: String,
    pub aut_order: usize,
    /// Cycle type of a generator, or `None` for a non-cyclic group.
    pub aut_cycle_type: Option<String>,
    pub species: usize,
    pub indegree: IndegreeSequence,
    pub pvector: PVector,
    pub tricolour: Vec<usize>,
    pub cycles: CycleTally,
    /// Per-row counts of row cycles of lengths [`PROFILE_LENGTHS`], rows sorted.
    pub profile: Vec<Vec<usize>>,
    pub train: TrainDigest,
    /// Folds at one vertex per automorphism orbit, and how many were symbol-Hamiltonian and
    /// atomic.
    pub folds_checked: usize,
    pub folds_symbol_hamiltonian: usize,
    pub folds_atomic: usize,
}

impl CatalogueRecord {
    /// Canonises `f` and computes every invariant.
    pub fn compute(f: &Factorisation) -> Result<Self> {
        let canon = canonicalize(f)?;
        let form = &canon.form;
        let train = build_train(form);
        let orbits = canon.automorphisms.orbits();
        let mut folds_symbol_hamiltonian = 0;
        let mut folds_atomic = 0;
        for orbit in &orbits {
            let h = fold(form, orbit[0])?.classify();
            folds_symbol_hamiltonian += h.symbol as usize;
            folds_atomic += h.atomic() as usize;
        }
        Ok(CatalogueRecord {
            canonical_line: emit_line(form),
            aut_order: canon.automorphisms.order(),
            aut_cycle_type: canon
                .automorphisms
                .generator_cycle_type()
                .map(|c| c.to_string()),
            species: orbits.len(),
            indegree: indegree_sequence(&train),
            pvector: p_vector(&train, PV_DEPTH),
            tricolour: tricolour_vector(form),
            cycles: vertex_cycle_tally(form),
            profile: per_row_cycle_profile(form, &PROFILE_LENGTHS),
            train: train_canonical_hash(&train),
            folds_checked: orbits.len(),
            folds_symbol_hamiltonian,
            folds_atomic,
        })
    }

    pub fn factorisation(&self) -> Result<Factorisation> {
        parse_line(&self.canonical_line)
    }

    /// The p-vector cut down to `p(v) <= max_i`.
    pub fn pvector_upto(&self, max_i: usize) -> &[usize] {
        &self.pvector.0[..=max_i.min(self.pvector.0.len() - 1)]
    }

    /// Per-row profile restricted to the lengths at positions `keep` of [`PROFILE_LENGTHS`],
    /// rows re-sorted.
    pub fn profile_restricted(&self, keep: &[usize]) -> Vec<Vec<usize>> {
        let mut rows: Vec<Vec<usize>> = self
            .profile
            .iter()
            .map(|r| keep.iter().map(|&k| r[k]).collect())
            .collect();
        rows.sort_unstable();
        rows
    }

    /// `canonical_line <TAB> key=value ...`
    pub fn to_index_line(&self) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "{}\taut={} cycletype={} species={} indegree={} pv={} tricolour={} cycles={} profile={} train={} folds={}/{}/{}",
            self.canonical_line,
            self.aut_order,
            self.aut_cycle_type
                .as_deref()
                .map_or("-".to_string(), |c| c.replace(' ', ",")),
            self.species,
            list(&self.indegree.0),
            list(&self.pvector.0),
            list(&self.tricolour),
            self.cycles,
            profile_text(&self.profile),
            self.train,
            self.folds_checked,
            self.folds_symbol_hamiltonian,
            self.folds_atomic,
        );
        s
    }

    pub fn from_index_line(text: &str) -> Result<Self> {
        let bad = |what: &str| Error::parse(0, 0, format!("index line: {what}"));
        let (line, fields) = text.split_once('\t').ok_or_else(|| bad("missing tab"))?;
        let get = |key: &str| -> Result<String> {
            fields
                .split_whitespace()
                .find_map(|kv| kv.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
                .map(str::to_string)
                .ok_or_else(|| bad(&format!("missing {key}")))
        };
        let num = |s: String| s.parse::<usize>().map_err(|_| bad(&format!("bad number {s:?}")));
        let cycletype = get("cycletype")?;
        let folds = get("folds")?;
        let fold_parts: Vec<usize> = folds
            .split('/')
            .map(|x| x.parse().map_err(|_| bad("bad folds")))
            .collect::<Result<_>>()?;
        if fold_parts.len() != 3 {
            return Err(bad("bad folds"));
        }
        Ok(CatalogueRecord {
            canonical_line: line.to_string(),
            aut_order: num(get("aut")?)?,
            aut_cycle_type: (cycletype != "-").then(|| cycletype.replace(',', " ")),
            species: num(get("species")?)?,
            indegree: IndegreeSequence(parse_list(&get("indegree")?).ok_or_else(|| bad("indegree"))?),
            pvector: PVector(parse_list(&get("pv")?).ok_or_else(|| bad("pv"))?),
            tricolour: parse_list(&get("tricolour")?).ok_or_else(|| bad("tricolour"))?,
            cycles: parse_tally(&get("cycles")?).ok_or_else(|| bad("cycles"))?,
            profile: parse_profile(&get("profile")?).ok_or_else(|| bad("profile"))?,
            train: TrainDigest(get("train")?),
            folds_checked: fold_parts[0],
            folds_symbol_hamiltonian: fold_parts[1],
            folds_atomic: fold_parts[2],
        })
    }
}

fn profile_text(rows: &[Vec<usize>]) -> String {
    let rows: Vec<String> = rows.iter().map(|r| list(r)).collect();
    format!("[{}]", rows.join(","))
}

fn parse_list(s: &str) -> Option<Vec<usize>> {
    let inner = s.strip_prefix('[')?.strip_suffix(']')?;
    if inner.is_empty() {
        return Some(Vec::new());
    }
    inner.split(',').map(|x| x.parse().ok()).collect()
}

fn parse_tally(s: &str) -> Option<CycleTally> {
    let inner = s.strip_prefix('{')?.strip_suffix('}')?;
    let mut tally = CycleTally::default();
    for part in inner.split(',').filter(|p| !p.is_empty()) {
        let (l, c) = part.split_once(':')?;
        tally.0.insert(l.parse().ok()?, c.parse().ok()?);
    }
    Some(tally)
}

fn parse_profile(s: &str) -> Option<Vec<Vec<usize>>> {
    let inner = s.strip_prefix('[')?.strip_suffix(']')?;
    if inner.is_empty() {
        return Some(Vec::new());
    }
    inner
        .split("],")
        .map(|r| {
            let r = if r.ends_with(']') { r.to_string() } else { format!("{r}]") };
            parse_list(&r)
        })
        .collect()
}
