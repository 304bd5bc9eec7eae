//! Isomorphism invariants: the train, its indegree sequence and path-length vector, a complete
//! canonical hash of the train, the tricolour vector, and row-cycle tallies of `U(F)`.

use std::collections::BTreeMap;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::graph::{Edge, Factorisation};
use crate::latin::unipotent_square;

/// The train of a 1-factorisation: one vertex per (edge, factor) pair, and the arc
/// `({a,b}, f) -> ({F_f(a), F_f(b)}, g)` where `g` is the factor containing `{a,b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Train {
    n: usize,
    succ: Vec<u32>,
}

impl Train {
    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    pub fn successor(&self, v: usize) -> usize {
        self.succ[v] as usize
    }

    pub fn successors(&self) -> &[u32] {
        &self.succ
    }

    /// Index of the vertex `(e, f)`.
    pub fn index(&self, e: Edge, f: usize) -> usize {
        e.id * (self.n - 1) + f
    }

    /// The `(edge, factor)` pair of vertex `v`.
    pub fn vertex(&self, v: usize) -> (Edge, usize) {
        let order = crate::graph::Order::new(self.n).expect("train built from a valid order");
        (order.edge_from_id(v / (self.n - 1)), v % (self.n - 1))
    }

    pub fn indegrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.succ.len()];
        for &w in &self.succ {
            deg[w as usize] += 1;
        }
        deg
    }

    /// Flags the vertices lying on a directed cycle.
    pub fn on_cycle(&self) -> Vec<bool> {
        // 0 = unvisited, 1 = on the current path, 2 = finished.
        let mut state = vec![0u8; self.succ.len()];
        let mut cyclic = vec![false; self.succ.len()];
        let mut path = Vec::new();
        for start in 0..self.succ.len() {
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                path.push(v);
                v = self.succ[v] as usize;
            }
            if state[v] == 1 {
                let mut w = v;
                loop {
                    cyclic[w] = true;
                    w = self.succ[w] as usize;
                    if w == v {
                        break;
                    }
                }
            }
            for u in path.drain(..) {
                state[u] = 2;
            }
        }
        cyclic
    }

    /// `p(v)` for every vertex: the distance from `v` to the nearest vertex on a cycle.
    pub fn depths(&self) -> Vec<usize> {
        let cyclic = self.on_cycle();
        let mut depth = vec![usize::MAX; self.succ.len()];
        let mut path = Vec::new();
        for start in 0..self.succ.len() {
            let mut v = start;
            while depth[v] == usize::MAX && !cyclic[v] {
                path.push(v);
                v = self.succ[v] as usize;
            }
            let mut d = if cyclic[v] { 0 } else { depth[v] };
            if cyclic[v] {
                depth[v] = 0;
            }
            for u in path.drain(..).rev() {
                d += 1;
                depth[u] = d;
            }
        }
        depth
    }
}

pub fn build_train(f: &Factorisation) -> Train {
    let n = f.n();
    let order = f.order();
    let m = n - 1;
    let mut succ = vec![0u32; order.edge_count() * m];
    for e in order.edges() {
        let g = f.factor_of(e.lo, e.hi);
        for (k, factor) in f.factors().iter().enumerate() {
            let target = order.edge_id(factor.partner(e.lo), factor.partner(e.hi));
            succ[e.id * m + k] = (target * m + g) as u32;
        }
    }
    Train { n, succ }
}

/// `tallies[i]` is the number of train vertices of indegree `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndegreeSequence(pub Vec<usize>);

pub fn indegree_sequence(t: &Train) -> IndegreeSequence {
    let deg = t.indegrees();
    let max = deg.iter().copied().max().unwrap_or(0);
    let mut tallies = vec![0; max + 1];
    for d in deg {
        tallies[d] += 1;
    }
    IndegreeSequence(tallies)
}

/// `counts[i]` is the number of train vertices with `p(v) = i`, for `i = 0..=max_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PVector(pub Vec<usize>);

pub fn p_vector(t: &Train, max_i: usize) -> PVector {
    let mut counts = vec![0; max_i + 1];
    for d in t.depths() {
        if d <= max_i {
            counts[d] += 1;
        }
    }
    PVector(counts)
}

/// Hex SHA-256 of a canonical code of the train as an unlabelled digraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TrainDigest(pub String);

impl fmt::Display for TrainDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Canonical code of a functional digraph: each in-tree hanging off a cycle vertex gets the
/// usual nested-parenthesis code with children sorted; each cycle becomes the least rotation of
/// its sequence of tree codes; the component codes are then sorted and concatenated.
pub fn train_canonical_code(t: &Train) -> Vec<u8> {
    let len = t.vertex_count();
    let cyclic = t.on_cycle();
    let depth = t.depths();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); len];
    for v in 0..len {
        if !cyclic[v] {
            children[t.successor(v)].push(v);
        }
    }
    let mut by_depth: Vec<usize> = (0..len).collect();
    by_depth.sort_unstable_by_key(|&v| std::cmp::Reverse(depth[v]));
    let mut code: Vec<Vec<u8>> = vec![Vec::new(); len];
    for &v in &by_depth {
        let mut kids: Vec<Vec<u8>> = children[v]
            .iter()
            .map(|&c| std::mem::take(&mut code[c]))
            .collect();
        kids.sort_unstable();
        let mut c = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
        c.push(b'(');
        kids.iter().for_each(|k| c.extend_from_slice(k));
        c.push(b')');
        code[v] = c;
    }
    let mut seen = vec![false; len];
    let mut components: Vec<Vec<u8>> = Vec::new();
    for v in 0..len {
        if !cyclic[v] || seen[v] {
            continue;
        }
        let mut ring = Vec::new();
        let mut w = v;
        while !seen[w] {
            seen[w] = true;
            ring.push(std::mem::take(&mut code[w]));
            w = t.successor(w);
        }
        let best = (0..ring.len())
            .min_by(|&a, &b| rotation(&ring, a).cmp(rotation(&ring, b)))
            .unwrap_or(0);
        let mut c = vec![b'['];
        rotation(&ring, best).for_each(|x| c.extend_from_slice(x));
        c.push(b']');
        components.push(c);
    }
    components.sort_unstable();
    components.concat()
}

fn rotation(ring: &[Vec<u8>], start: usize) -> impl Iterator<Item = &Vec<u8>> {
    ring[start..].iter().chain(ring[..start].iter())
}

pub fn train_canonical_hash(t: &Train) -> TrainDigest {
    TrainDigest(hex::encode(Sha256::digest(train_canonical_code(t))))
}

/// For every unordered triple of factors, the number of triangles with one edge in each; the
/// counts are returned sorted.
pub fn tricolour_vector(f: &Factorisation) -> Vec<usize> {
    let n = f.n();
    let m = n - 1;
    let mut counts = vec![0usize; m * m * m];
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let mut c = [f.factor_of(x, y), f.factor_of(x, z), f.factor_of(y, z)];
                c.sort_unstable();
                counts[(c[0] * m + c[1]) * m + c[2]] += 1;
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                out.push(counts[(i * m + j) * m + k]);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Number of row cycles of each length in `U(F)`, leaving out the 2-cycle through the two
/// diagonal cells that every row pair has.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleTally(pub BTreeMap<usize, usize>);

impl CycleTally {
    pub fn get(&self, len: usize) -> usize {
        self.0.get(&len).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }
}

impl fmt::Display for CycleTally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(l, c)| format!("{l}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Row-cycle lengths of each row pair `r < s` of `U(F)`, without the diagonal 2-cycle.
fn vertex_cycles(f: &Factorisation) -> Vec<(usize, usize, Vec<usize>)> {
    let u = unipotent_square(f);
    let n = f.n();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for r in 0..n {
        for s in r + 1..n {
            let lengths = u
                .row_cycles(r, s)
                .expect("distinct rows")
                .into_iter()
                .filter(|c| !(c.len() == 2 && c.columns.contains(&r)))
                .map(|c| c.len())
                .collect();
            out.push((r, s, lengths));
        }
    }
    out
}

pub fn vertex_cycle_tally(f: &Factorisation) -> CycleTally {
    let mut tally = CycleTally::default();
    for (_, _, lengths) in vertex_cycles(f) {
        for l in lengths {
            *tally.0.entry(l).or_default() += 1;
        }
    }
    tally
}

/// For each row, the number of row cycles through it of each length in `lengths` (in the
/// order given); the rows' vectors are returned sorted.
pub fn per_row_cycle_profile(f: &Factorisation, lengths: &[usize]) -> Vec<Vec<usize>> {
    let n = f.n();
    let mut rows = vec![vec![0; lengths.len()]; n];
    for (r, s, ls) in vertex_cycles(f) {
        for l in ls {
            if let Some(k) = lengths.iter().position(|&x| x == l) {
                rows[r][k] += 1;
                rows[s][k] += 1;
            }
        }
    }
    rows.sort_unstable();
    rows
}

/// Which invariant a report or CLI call refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantKind {
    Train,
    Indegree,
    PVector,
    Tricolour,
    Cycles,
    Profile,
}

impl InvariantKind {
    pub const ALL: [InvariantKind; 6] = [
        InvariantKind::Train,
        InvariantKind::Indegree,
        InvariantKind::PVector,
        InvariantKind::Tricolour,
        InvariantKind::Cycles,
        InvariantKind::Profile,
    ];

    pub fn key(self) -> &'static str {
        match self {
            InvariantKind::Train => "train",
            InvariantKind::Indegree => "indegree",
            InvariantKind::PVector => "pv",
            InvariantKind::Tricolour => "tricolour",
            InvariantKind::Cycles => "cycles",
            InvariantKind::Profile => "profile",
        }
    }

    pub fn from_key(key: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.key() == key)
    }

    /// The invariant as a single whitespace-free token.
    pub fn evaluate(self, f: &Factorisation) -> String {
        match self {
            InvariantKind::Train => train_canonical_hash(&build_train(f)).0,
            InvariantKind::Indegree => list(&indegree_sequence(&build_train(f)).0),
            InvariantKind::PVector => list(&p_vector(&build_train(f), 5).0),
            InvariantKind::Tricolour => list(&tricolour_vector(f)),
            InvariantKind::Cycles => vertex_cycle_tally(f).to_string(),
            InvariantKind::Profile => {
                let rows: Vec<String> = per_row_cycle_profile(f, &[3, 4])
                    .iter()
                    .map(|r| list(r))
                    .collect();
                format!("[{}]", rows.join(","))
            }
        }
    }
}

/// `[a,b,c]`
pub fn list(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(","))
}
