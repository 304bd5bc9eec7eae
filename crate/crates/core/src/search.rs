//! Orderly enumeration of perfect 1-factorisations.
//!
//! Every canonical P1F contains `F1`, `F2` and a third factor `F3` holding edge `{0, 2}`. Seeds are
//! the possible `F3`s, one per isomorphism class of the triple `{F1, F2, F3}`, each the least
//! token its class can take in that position. A seed's search extends `F1, F2, F3` one factor at a
//! time from the set of factors compatible with all three, branching on the unused edge that lies
//! in the fewest active factors, and discards any partial factorisation in which some relabelling
//! yields a smaller third factor than the seed. Complete factorisations are canonised and
//! de-duplicated per seed; canonical forms from different seeds differ in their second token.

use std::collections::BTreeSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::canon::canonicalize;
use crate::error::{Error, Result};
use crate::graph::{hamilton_union, make_f1_f2, Edge, Factorisation, OneFactor, Order};
use crate::matching::{compatible_factors, for_each_compatible};

const NONE: u8 = u8::MAX;

/// A candidate third factor; `index` is its position among all seeds of the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub index: usize,
    pub factor: OneFactor,
}

/// Tests whether a set of pairwise compatible factors admits a relabelling with a smaller third
/// factor than a target.
///
/// For every ordered pair `(A, B)` the Hamilton cycle of `A ∪ B` is cached as `cycle` (starting at
/// vertex 0 with an `A`-edge) and its inverse `place`. Under the alignment that sends the vertex at
/// cycle position `t` to label 0, the label of `v` is `place[v] - t` when `t` is even and
/// `t - place[v]` when `t` is odd (mod `n`).
struct PrefixCheck {
    n: usize,
    slots: usize,
    cycle: Vec<u8>,
    place: Vec<u8>,
    seen: Vec<u32>,
    stamp: u32,
}

impl PrefixCheck {
    fn new(n: usize, slots: usize) -> Self {
        PrefixCheck {
            n,
            slots,
            cycle: vec![0; slots * slots * n],
            place: vec![0; slots * slots * n],
            seen: vec![0; n],
            stamp: 0,
        }
    }

    fn prepare(&mut self, a: usize, b: usize, fa: &[u8], fb: &[u8]) {
        let n = self.n;
        let base = (a * self.slots + b) * n;
        let cycle = &mut self.cycle[base..base + n];
        let place = &mut self.place[base..base + n];
        let mut v = 0u8;
        for i in (0..n).step_by(2) {
            cycle[i] = v;
            place[v as usize] = i as u8;
            let w = fa[v as usize];
            cycle[i + 1] = w;
            place[w as usize] = (i + 1) as u8;
            v = fb[w as usize];
        }
    }

    /// Compares the token of `c` relabelled by the alignment of pair slot `base` at cycle
    /// position `t` with `target`. Both tokens start `0 2 1`; the first real comparison is the
    /// label given to `c`'s partner of label 1.
    #[inline]
    fn third_is_smaller(&mut self, base: usize, t: usize, c: &[u8], target: &[u8]) -> bool {
        let n = self.n;
        let forward = t % 2 == 0;
        let cycle = &self.cycle[base..base + n];
        let place = &self.place[base..base + n];
        let vertex_at = |i: usize| {
            if forward {
                cycle[(t + i) % n]
            } else {
                cycle[(t + n - i) % n]
            }
        };
        let label_of = |v: u8| {
            let q = place[v as usize] as usize;
            if forward {
                (q + n - t) % n
            } else {
                (t + n - q) % n
            }
        };
        let p1 = label_of(c[vertex_at(1) as usize]) as u8;
        match p1.cmp(&target[3]) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        let stamp = self.stamp;
        let seen = &mut self.seen;
        for l in [0, 1, 2, p1 as usize] {
            seen[l] = stamp;
        }
        let mut idx = 4;
        for i in 3..n {
            if seen[i] == stamp {
                continue;
            }
            let p = label_of(c[vertex_at(i) as usize]);
            seen[i] = stamp;
            seen[p] = stamp;
            for byte in [i as u8, p as u8] {
                match byte.cmp(&target[idx]) {
                    std::cmp::Ordering::Less => return true,
                    std::cmp::Ordering::Greater => return false,
                    std::cmp::Ordering::Equal => idx += 1,
                }
            }
        }
        false
    }

    #[inline]
    fn slot(&self, a: usize, b: usize) -> usize {
        (a * self.slots + b) * self.n
    }

    /// Checks every alignment of the cached pair `(a, b)`.
    fn pair_smaller(&mut self, a: usize, b: usize, factors: &[&[u8]], owner: &[u8], target: &[u8]) -> bool {
        let n = self.n;
        let base = self.slot(a, b);
        for t in 0..n {
            let x = self.cycle[base + t] as usize;
            // Positions t and t +- 2 receive labels 0 and 2.
            let y = if t % 2 == 0 {
                self.cycle[base + (t + 2) % n]
            } else {
                self.cycle[base + (t + n - 2) % n]
            };
            let c = owner[x * n + y as usize];
            if c != NONE && self.third_is_smaller(base, t, factors[c as usize], target) {
                return true;
            }
        }
        false
    }

    /// True if an ordered pair `(A, B)` of `factors`, one of the `n` alignments of `A ∪ B` onto
    /// `(F1, F2)`, and the factor `C` of `factors` holding the preimage of `{0, 2}` give a
    /// relabelled `C` with token below `target`.
    ///
    /// With `involving = Some(k)`, only combinations in which factor `k` is one of `A`, `B`, `C`
    /// are examined, and only the pairs containing `k` are (re)cached; pairs among the other
    /// factors must have been cached by earlier calls. With `None` every pair is cached afresh.
    ///
    /// The factors must be pairwise compatible. `owner[u * n + v]` gives the index in `factors` of
    /// the factor holding `{u, v}`, or `NONE`.
    fn smaller_exists(
        &mut self,
        factors: &[&[u8]],
        owner: &[u8],
        target: &[u8],
        involving: Option<usize>,
    ) -> bool {
        let n = self.n;
        let m = factors.len();
        let Some(k) = involving else {
            for a in 0..m {
                for b in 0..m {
                    if a != b {
                        self.prepare(a, b, factors[a], factors[b]);
                    }
                }
            }
            for a in 0..m {
                for b in 0..m {
                    if a != b && self.pair_smaller(a, b, factors, owner, target) {
                        return true;
                    }
                }
            }
            return false;
        };
        for other in 0..m {
            if other != k {
                self.prepare(k, other, factors[k], factors[other]);
                self.prepare(other, k, factors[other], factors[k]);
            }
        }
        for other in 0..m {
            if other != k
                && (self.pair_smaller(k, other, factors, owner, target)
                    || self.pair_smaller(other, k, factors, owner, target))
            {
                return true;
            }
        }
        // k as the third factor: an alignment starting at x with A gives label 2 to B(A(x)),
        // so for each edge {x, y} of k and each A the pair partner B is the owner of {A(x), y}.
        let fk = factors[k];
        for x in 0..n {
            let y = fk[x] as usize;
            for a in 0..m {
                if a == k {
                    continue;
                }
                let z = factors[a][x] as usize;
                let b = owner[z * n + y];
                if b == NONE || b as usize == a || b as usize == k {
                    continue;
                }
                let base = self.slot(a, b as usize);
                let t = self.place[base + x] as usize;
                if self.third_is_smaller(base, t, fk, target) {
                    return true;
                }
            }
        }
        false
    }
}

/// `|a ∩ b|` by block popcount.
#[inline]
fn and_count(a: &FixedBitSet, b: &FixedBitSet) -> usize {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

fn owner_table(n: usize, factors: &[&[u8]]) -> Vec<u8> {
    let mut owner = vec![NONE; n * n];
    for (k, f) in factors.iter().enumerate() {
        for (v, &p) in f.iter().enumerate() {
            owner[v * n + p as usize] = k as u8;
        }
    }
    owner
}

/// All seeds of order `n`, in ascending token order.
pub fn gen_seeds(n: usize) -> Result<Vec<Seed>> {
    let order = Order::new(n)?;
    let (f1, f2) = make_f1_f2(n)?;
    let mut check = PrefixCheck::new(n, 3);
    let mut seeds = Vec::new();
    for_each_compatible(order, &[&f1, &f2], Some((0, 2)), |p| {
        let triple: [&[u8]; 3] = [f1.partners(), f2.partners(), p];
        let owner = owner_table(n, &triple);
        let token = OneFactor::from_partner_unchecked(order, p.to_vec()).token();
        if !check.smaller_exists(&triple, &owner, &token, None) {
            seeds.push(Seed {
                index: seeds.len(),
                factor: OneFactor::from_partner_unchecked(order, p.to_vec()),
            });
        }
    });
    Ok(seeds)
}

/// The set of factors compatible with `F1`, `F2` and the seed factor.
pub fn compat_set(seed: &Seed) -> Vec<OneFactor> {
    let order = seed.factor.order();
    let (f1, f2) = make_f1_f2(order.get()).expect("seed order is valid");
    compatible_factors(order, &[&f1, &f2, &seed.factor], None)
}

/// The candidate factors of one seed with their pairwise compatibility.
pub struct CompatTable {
    order: Order,
    seed: Seed,
    factors: Vec<OneFactor>,
    pair_bits: Vec<FixedBitSet>,
    edge_masks: Vec<FixedBitSet>,
    /// Edge ids of factor `i` at `[i * n/2, (i + 1) * n/2)`.
    factor_edges: Vec<u16>,
}

pub fn build_compat_table(seed: &Seed) -> CompatTable {
    let order = seed.factor.order();
    let factors = compat_set(seed);
    let t = factors.len();
    let mut pair_bits = vec![FixedBitSet::with_capacity(t); t];
    for i in 0..t {
        let fi = factors[i].partners();
        let (head, tail) = pair_bits.split_at_mut(i + 1);
        for (off, row) in tail.iter_mut().enumerate() {
            let j = i + 1 + off;
            if hamilton_union(fi, factors[j].partners()) {
                head[i].insert(j);
                row.insert(i);
            }
        }
    }
    let mut edge_masks = vec![FixedBitSet::with_capacity(t); order.edge_count()];
    for (i, f) in factors.iter().enumerate() {
        for e in f.edge_bits().ones() {
            edge_masks[e].insert(i);
        }
    }
    let factor_edges = factors
        .iter()
        .flat_map(|f| f.edge_bits().ones().map(|e| e as u16))
        .collect();
    CompatTable {
        order,
        seed: seed.clone(),
        factors,
        pair_bits,
        edge_masks,
        factor_edges,
    }
}

impl CompatTable {
    pub fn seed(&self) -> &Seed {
        &self.seed
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[OneFactor] {
        &self.factors
    }

    pub fn compatible(&self, i: usize, j: usize) -> bool {
        self.pair_bits[i].contains(j)
    }

    pub fn row(&self, i: usize) -> &FixedBitSet {
        &self.pair_bits[i]
    }

    /// Factors containing edge `id`.
    pub fn edge_mask(&self, id: usize) -> &FixedBitSet {
        &self.edge_masks[id]
    }

    /// For each edge id, the number of factors in `active` that contain it.
    pub fn per_edge_counts(&self, active: &FixedBitSet) -> Vec<usize> {
        self.edge_masks
            .iter()
            .map(|m| and_count(m, active))
            .collect()
    }

    /// The search state holding `F1`, `F2` and the seed factor, with every factor active.
    pub fn initial_state(&self) -> SearchState {
        let n = self.order.get();
        let (f1, f2) = make_f1_f2(n).expect("valid order");
        let mut used = FixedBitSet::with_capacity(self.order.edge_count());
        for f in [&f1, &f2, &self.seed.factor] {
            used.union_with(f.edge_bits());
        }
        let mut active = FixedBitSet::with_capacity(self.len());
        active.insert_range(..);
        SearchState {
            chosen: vec![f1, f2, self.seed.factor.clone()],
            active,
            used_edges: used,
        }
    }
}

/// A partial factorisation during search.
#[derive(Clone, Debug)]
pub struct SearchState {
    pub chosen: Vec<OneFactor>,
    /// Table factors compatible with every chosen factor.
    pub active: FixedBitSet,
    pub used_edges: FixedBitSet,
}

impl SearchState {
    pub fn is_complete(&self) -> bool {
        self.chosen.len() + 1 == self.chosen[0].order().get()
    }

    /// Adds table factor `i` and restricts the active set to factors compatible with it.
    pub fn push(&mut self, table: &CompatTable, i: usize) {
        self.chosen.push(table.factors[i].clone());
        self.active.intersect_with(&table.pair_bits[i]);
        self.used_edges.union_with(table.factors[i].edge_bits());
    }
}

/// The unused edge lying in the fewest active factors, ties to the smallest id, with that count.
/// `None` when every edge is used.
pub fn select_branch_edge(state: &SearchState, table: &CompatTable) -> Option<(Edge, usize)> {
    let counts = table.per_edge_counts(&state.active);
    (0..table.order.edge_count())
        .filter(|&id| !state.used_edges.contains(id))
        .map(|id| (id, counts[id]))
        .min_by_key(|&(id, c)| (c, id))
        .map(|(id, c)| (table.order.edge_from_id(id), c))
}

struct SeedSearch<'a> {
    table: &'a CompatTable,
    n: usize,
    seed_token: Vec<u8>,
    chosen: Vec<&'a [u8]>,
    owner: Vec<u8>,
    used: Vec<bool>,
    counts: Vec<u32>,
    check: PrefixCheck,
    nodes: u64,
    found: BTreeSet<Factorisation>,
}

impl<'a> SeedSearch<'a> {
    /// `active` lists the table factors compatible with every chosen factor.
    fn run(&mut self, active: &[u32]) {
        self.nodes += 1;
        let needed = self.n - 1 - self.chosen.len();
        if needed == 0 {
            self.emit();
            return;
        }
        if active.len() < needed {
            return;
        }
        let half = self.n / 2;
        self.counts.iter_mut().for_each(|c| *c = 0);
        for &i in active {
            let i = i as usize;
            for &e in &self.table.factor_edges[i * half..(i + 1) * half] {
                self.counts[e as usize] += 1;
            }
        }
        let mut best = (u32::MAX, usize::MAX);
        for (id, &c) in self.counts.iter().enumerate() {
            if !self.used[id] && c < best.0 {
                best = (c, id);
                if c == 0 {
                    return;
                }
            }
        }
        let edge = self.table.order.edge_from_id(best.1);
        let n = self.n;
        let mut next = Vec::with_capacity(active.len());
        for &i in active {
            let table = self.table;
            let f = &table.factors[i as usize];
            if !f.contains(edge.lo, edge.hi) {
                continue;
            }
            let k = self.chosen.len();
            self.chosen.push(f.partners());
            for (v, &p) in f.partners().iter().enumerate() {
                self.owner[v * n + p as usize] = k as u8;
            }
            let rejected =
                self.check
                    .smaller_exists(&self.chosen, &self.owner, &self.seed_token, Some(k));
            if !rejected {
                let row = &table.pair_bits[i as usize];
                next.clear();
                next.extend(active.iter().copied().filter(|&j| row.contains(j as usize)));
                let edges = &table.factor_edges[i as usize * half..(i as usize + 1) * half];
                edges.iter().for_each(|&e| self.used[e as usize] = true);
                let child = std::mem::take(&mut next);
                self.run(&child);
                next = child;
                edges.iter().for_each(|&e| self.used[e as usize] = false);
            }
            for (v, &p) in f.partners().iter().enumerate() {
                self.owner[v * n + p as usize] = NONE;
            }
            self.chosen.pop();
        }
    }

    fn emit(&mut self) {
        let order = self.table.order;
        let factors = self
            .chosen
            .iter()
            .map(|p| OneFactor::from_partner_unchecked(order, p.to_vec()))
            .collect();
        let f = Factorisation::new(order.get(), factors).expect("search keeps an edge partition");
        let canon = canonicalize(&f).expect("search only builds perfect factorisations");
        debug_assert_eq!(canon.form.factors()[1].token(), self.seed_token);
        self.found.insert(canon.form);
    }
}

/// Result of searching a single seed.
#[derive(Clone, Debug)]
pub struct SeedOutcome {
    pub seed: usize,
    pub table_size: usize,
    pub nodes: u64,
    pub elapsed: Duration,
    /// Canonical P1Fs, distinct and sorted.
    pub found: Vec<Factorisation>,
}

/// Runs the full search below one seed.
pub fn search_seed(seed: &Seed) -> SeedOutcome {
    let start = Instant::now();
    let table = build_compat_table(seed);
    search_table(&table, start)
}

fn search_table(table: &CompatTable, start: Instant) -> SeedOutcome {
    let n = table.order.get();
    let (f1, f2) = make_f1_f2(n).expect("valid order");
    let chosen: Vec<&[u8]> = vec![f1.partners(), f2.partners(), table.seed.factor.partners()];
    let owner = owner_table(n, &chosen);
    let mut used = vec![false; table.order.edge_count()];
    for f in &chosen {
        for (v, &p) in f.iter().enumerate() {
            if v < p as usize {
                used[table.order.edge_id(v, p as usize)] = true;
            }
        }
    }
    let mut search = SeedSearch {
        table,
        n,
        seed_token: table.seed.factor.token(),
        chosen,
        owner,
        used,
        counts: vec![0; table.order.edge_count()],
        check: PrefixCheck::new(n, n - 1),
        nodes: 0,
        found: BTreeSet::new(),
    };
    for a in 0..3 {
        for b in 0..3 {
            if a != b {
                search.check.prepare(a, b, search.chosen[a], search.chosen[b]);
            }
        }
    }
    let active: Vec<u32> = (0..table.len() as u32).collect();
    search.run(&active);
    SeedOutcome {
        seed: table.seed.index,
        table_size: table.len(),
        nodes: search.nodes,
        elapsed: start.elapsed(),
        found: search.found.into_iter().collect(),
    }
}

/// Consumer of enumeration results. Called once per finished seed, from worker threads.
pub trait Sink: Sync {
    fn accept(&self, outcome: &SeedOutcome) -> Result<()>;
}

impl Sink for Mutex<Vec<Factorisation>> {
    fn accept(&self, outcome: &SeedOutcome) -> Result<()> {
        self.lock()
            .expect("sink poisoned")
            .extend(outcome.found.iter().cloned());
        Ok(())
    }
}

/// Writes catalogue lines to a stream, one per P1F.
pub struct LineSink<W: Write + Send> {
    out: Mutex<W>,
}

impl<W: Write + Send> LineSink<W> {
    pub fn new(out: W) -> Self {
        LineSink {
            out: Mutex::new(out),
        }
    }

    pub fn into_inner(self) -> W {
        self.out.into_inner().expect("sink poisoned")
    }
}

impl<W: Write + Send> Sink for LineSink<W> {
    fn accept(&self, outcome: &SeedOutcome) -> Result<()> {
        let mut out = self.out.lock().expect("sink poisoned");
        for f in &outcome.found {
            writeln!(out, "{}", crate::catalogue::emit_line(f))?;
        }
        out.flush()?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedSummary {
    pub seed: usize,
    pub count: usize,
    pub nodes: u64,
    pub table_size: Option<usize>,
    pub elapsed: Duration,
    /// Taken from a checkpoint rather than searched in this run.
    pub resumed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumerationSummary {
    pub n: usize,
    pub total_seeds: usize,
    pub seeds: Vec<SeedSummary>,
    pub elapsed: Duration,
}

impl EnumerationSummary {
    pub fn count(&self) -> usize {
        self.seeds.iter().map(|s| s.count).sum()
    }

    pub fn nodes(&self) -> u64 {
        self.seeds.iter().map(|s| s.nodes).sum()
    }

    /// Combines summaries of disjoint seed sets.
    pub fn merge(mut self, other: EnumerationSummary) -> EnumerationSummary {
        self.seeds.extend(other.seeds);
        self.seeds.sort_by_key(|s| s.seed);
        self.elapsed = self.elapsed.max(other.elapsed);
        self.n = self.n.max(other.n);
        self.total_seeds = self.total_seeds.max(other.total_seeds);
        self
    }
}

#[derive(Clone, Debug, Default)]
pub struct EnumerateOptions {
    /// Seed indices to process; all seeds when `None`.
    pub seeds: Option<Range<usize>>,
    pub checkpoint: Option<PathBuf>,
    /// Process seeds from last to first.
    pub reverse: bool,
}

/// Enumerates P1Fs of `K_n` over the selected seeds, passing each seed's canonical P1Fs to `sink`.
pub fn enumerate(n: usize, options: &EnumerateOptions, sink: &dyn Sink) -> Result<EnumerationSummary> {
    let start = Instant::now();
    let seeds = gen_seeds(n)?;
    let range = options.seeds.clone().unwrap_or(0..seeds.len());
    if range.start > range.end || range.end > seeds.len() {
        return Err(Error::Checkpoint(format!(
            "seed range {}..{} outside 0..{}",
            range.start,
            range.end,
            seeds.len()
        )));
    }
    let checkpoint = match &options.checkpoint {
        Some(path) => Some(Mutex::new(Checkpoint::open(path, n, seeds.len())?)),
        None => None,
    };
    let mut summary = EnumerationSummary {
        n,
        total_seeds: seeds.len(),
        ..Default::default()
    };
    let mut todo: Vec<usize> = Vec::new();
    for idx in range {
        let done = checkpoint
            .as_ref()
            .and_then(|c| c.lock().expect("checkpoint poisoned").done(idx));
        match done {
            Some((count, nodes)) => summary.seeds.push(SeedSummary {
                seed: idx,
                count,
                nodes,
                table_size: None,
                elapsed: Duration::ZERO,
                resumed: true,
            }),
            None => todo.push(idx),
        }
    }
    if options.reverse {
        todo.reverse();
    }
    let results: Vec<Result<SeedSummary>> = todo
        .par_iter()
        .map(|&idx| {
            let outcome = search_seed(&seeds[idx]);
            sink.accept(&outcome)?;
            if let Some(c) = &checkpoint {
                c.lock()
                    .expect("checkpoint poisoned")
                    .record(idx, outcome.found.len(), outcome.nodes)?;
            }
            Ok(SeedSummary {
                seed: idx,
                count: outcome.found.len(),
                nodes: outcome.nodes,
                table_size: Some(outcome.table_size),
                elapsed: outcome.elapsed,
                resumed: false,
            })
        })
        .collect();
    for r in results {
        summary.seeds.push(r?);
    }
    summary.seeds.sort_by_key(|s| s.seed);
    summary.elapsed = start.elapsed();
    Ok(summary)
}

/// Seed-granular progress file: a header `n=<order> seeds=<total> version=1` followed by one
/// `seed_index status count nodes` record per finished seed.
pub struct Checkpoint {
    file: File,
    done: std::collections::BTreeMap<usize, (usize, u64)>,
}

impl Checkpoint {
    pub fn open(path: &Path, n: usize, total: usize) -> Result<Self> {
        let header = format!("n={n} seeds={total} version=1");
        let mut done = std::collections::BTreeMap::new();
        if path.exists() && std::fs::metadata(path)?.len() > 0 {
            let reader = BufReader::new(File::open(path)?);
            let mut lines = reader.lines();
            let first = lines.next().transpose()?.unwrap_or_default();
            if first.trim() != header {
                return Err(Error::Checkpoint(format!(
                    "{} was written for `{}`, refusing to resume `{header}`",
                    path.display(),
                    first.trim()
                )));
            }
            for (lineno, line) in lines.enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let bad = || Error::Checkpoint(format!("malformed record at line {}: {line:?}", lineno + 2));
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 4 || parts[1] != "done" {
                    return Err(bad());
                }
                let idx: usize = parts[0].parse().map_err(|_| bad())?;
                let count: usize = parts[2].parse().map_err(|_| bad())?;
                let nodes: u64 = parts[3].parse().map_err(|_| bad())?;
                if idx >= total {
                    return Err(bad());
                }
                done.insert(idx, (count, nodes));
            }
            let file = OpenOptions::new().append(true).open(path)?;
            Ok(Checkpoint { file, done })
        } else {
            let mut file = File::create(path)?;
            writeln!(file, "{header}")?;
            file.flush()?;
            Ok(Checkpoint { file, done })
        }
    }

    pub fn done(&self, seed: usize) -> Option<(usize, u64)> {
        self.done.get(&seed).copied()
    }

    pub fn completed(&self) -> usize {
        self.done.len()
    }

    pub fn record(&mut self, seed: usize, count: usize, nodes: u64) -> Result<()> {
        writeln!(self.file, "{seed} done {count} {nodes}")?;
        self.file.flush()?;
        self.done.insert(seed, (count, nodes));
        Ok(())
    }
}
