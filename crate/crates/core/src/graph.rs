//! Vertices, edges, 1-factors and 1-factorisations of the complete graph `K_n`.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Vertex index in `[0, n)`. Rendered as `a`, `b`, ... for small orders.
pub type Vertex = usize;

/// Largest supported order. Partner arrays are stored as bytes.
pub const MAX_ORDER: usize = 254;

/// Order of the complete graph being factorised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Order(usize);

impl Order {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 || n % 2 == 1 || n > MAX_ORDER {
            return Err(Error::InvalidOrder(n));
        }
        Ok(Order(n))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// Number of edges of `K_n`.
    #[inline]
    pub fn edge_count(self) -> usize {
        self.0 * (self.0 - 1) / 2
    }

    /// Number of factors in a 1-factorisation.
    #[inline]
    pub fn factor_count(self) -> usize {
        self.0 - 1
    }

    /// Dense lexicographic id of the edge `{u, v}`.
    #[inline]
    pub fn edge_id(self, u: Vertex, v: Vertex) -> usize {
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        debug_assert!(lo != hi && hi < self.0);
        lo * (2 * self.0 - lo - 1) / 2 + (hi - lo - 1)
    }

    pub fn edge(self, u: Vertex, v: Vertex) -> Edge {
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        Edge {
            lo,
            hi,
            id: self.edge_id(lo, hi),
        }
    }

    /// Inverse of [`Order::edge_id`].
    pub fn edge_from_id(self, id: usize) -> Edge {
        let n = self.0;
        let mut lo = 0;
        let mut first = 0;
        while first + (n - lo - 1) <= id {
            first += n - lo - 1;
            lo += 1;
        }
        let hi = lo + 1 + (id - first);
        Edge { lo, hi, id }
    }

    /// All edges in id order.
    pub fn edges(self) -> impl Iterator<Item = Edge> {
        let n = self.0;
        (0..n).flat_map(move |lo| (lo + 1..n).map(move |hi| Order(n).edge(lo, hi)))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Unordered vertex pair with its dense id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub lo: Vertex,
    pub hi: Vertex,
    pub id: usize,
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.hi < 26 {
            write!(f, "{}{}", vertex_letter(self.lo), vertex_letter(self.hi))
        } else {
            write!(f, "{}-{}", self.lo, self.hi)
        }
    }
}

pub fn vertex_letter(v: Vertex) -> char {
    debug_assert!(v < 26);
    (b'a' + v as u8) as char
}

/// A perfect matching of `K_n`, held both as a partner array and as an edge bit-vector.
#[derive(Clone)]
pub struct OneFactor {
    partner: Vec<u8>,
    edges: FixedBitSet,
}

impl OneFactor {
    pub fn from_partner(partner: Vec<u8>) -> Result<Self> {
        let order = Order::new(partner.len())?;
        for (v, &p) in partner.iter().enumerate() {
            let p = p as usize;
            if p >= partner.len() {
                return Err(Error::NotAMatching(format!("partner {p} of {v} out of range")));
            }
            if p == v {
                return Err(Error::NotAMatching(format!("vertex {v} matched to itself")));
            }
            if partner[p] as usize != v {
                return Err(Error::NotAMatching(format!(
                    "vertex {v} is matched to {p} but {p} is matched to {}",
                    partner[p]
                )));
            }
        }
        Ok(Self::from_partner_unchecked(order, partner))
    }

    pub(crate) fn from_partner_unchecked(order: Order, partner: Vec<u8>) -> Self {
        let mut edges = FixedBitSet::with_capacity(order.edge_count());
        for (v, &p) in partner.iter().enumerate() {
            if v < p as usize {
                edges.insert(order.edge_id(v, p as usize));
            }
        }
        OneFactor { partner, edges }
    }

    pub fn from_edges(n: usize, pairs: &[(Vertex, Vertex)]) -> Result<Self> {
        let order = Order::new(n)?;
        if pairs.len() != n / 2 {
            return Err(Error::NotAMatching(format!(
                "expected {} edges, found {}",
                n / 2,
                pairs.len()
            )));
        }
        let mut partner = vec![u8::MAX; n];
        for &(u, v) in pairs {
            if u >= n || v >= n || u == v {
                return Err(Error::NotAMatching(format!("bad edge ({u}, {v})")));
            }
            if partner[u] != u8::MAX || partner[v] != u8::MAX {
                return Err(Error::NotAMatching(format!(
                    "vertex covered twice by edge {}",
                    order.edge(u, v)
                )));
            }
            partner[u] = v as u8;
            partner[v] = u as u8;
        }
        Ok(Self::from_partner_unchecked(order, partner))
    }

    #[inline]
    pub fn order(&self) -> Order {
        Order(self.partner.len())
    }

    #[inline]
    pub fn partner(&self, v: Vertex) -> Vertex {
        self.partner[v] as usize
    }

    #[inline]
    pub fn partners(&self) -> &[u8] {
        &self.partner
    }

    #[inline]
    pub fn edge_bits(&self) -> &FixedBitSet {
        &self.edges
    }

    #[inline]
    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.partner[u] as usize == v
    }

    /// Edges with the smaller endpoint first, in ascending order of that endpoint.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let order = self.order();
        self.partner
            .iter()
            .enumerate()
            .filter(|&(v, &p)| v < p as usize)
            .map(move |(v, &p)| order.edge(v, p as usize))
    }

    /// The catalogue token as vertex indices: `v0 p(v0) v1 p(v1) ...` with `v0 < v1 < ...`.
    pub fn token(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.partner.len());
        for (v, &p) in self.partner.iter().enumerate() {
            if v < p as usize {
                out.push(v as u8);
                out.push(p);
            }
        }
        out
    }

    /// Image of this factor under the vertex map `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> OneFactor {
        let mut partner = vec![0u8; self.partner.len()];
        for (v, &p) in self.partner.iter().enumerate() {
            partner[perm[v]] = perm[p as usize] as u8;
        }
        Self::from_partner_unchecked(self.order(), partner)
    }
}

impl PartialEq for OneFactor {
    fn eq(&self, other: &Self) -> bool {
        self.partner == other.partner
    }
}

impl Eq for OneFactor {}

impl std::hash::Hash for OneFactor {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.partner.hash(state);
    }
}

impl PartialOrd for OneFactor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Factors are ordered by their catalogue token.
impl Ord for OneFactor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.token().cmp(&other.token())
    }
}

impl fmt::Debug for OneFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// The two fixed factors every canonical factorisation contains:
/// `F1 = {01, 23, ...}` and `F2 = {0(n-1), 12, 34, ...}`, whose union is the cycle `0-1-...-(n-1)-0`.
pub fn make_f1_f2(n: usize) -> Result<(OneFactor, OneFactor)> {
    let order = Order::new(n)?;
    let mut p1 = vec![0u8; n];
    let mut p2 = vec![0u8; n];
    for v in 0..n {
        p1[v] = (v ^ 1) as u8;
        p2[v] = if v % 2 == 1 { (v + 1) % n } else { (v + n - 1) % n } as u8;
    }
    Ok((
        OneFactor::from_partner_unchecked(order, p1),
        OneFactor::from_partner_unchecked(order, p2),
    ))
}

/// Cycle decomposition of the union of two 1-factors, treated as a multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleStructure {
    /// Sorted ascending; counted in vertices.
    pub lengths: Vec<usize>,
    pub cycles: Vec<Vec<Vertex>>,
}

impl CycleStructure {
    pub fn is_hamiltonian(&self) -> bool {
        self.cycles.len() == 1
    }
}

pub fn factor_union_cycles(f: &OneFactor, g: &OneFactor) -> Result<CycleStructure> {
    let n = f.order().get();
    if g.order().get() != n {
        return Err(Error::OrderMismatch {
            expected: n,
            found: g.order().get(),
        });
    }
    if f == g {
        return Err(Error::IdenticalFactors);
    }
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = start;
        loop {
            seen[v] = true;
            cycle.push(v);
            let w = f.partner(v);
            seen[w] = true;
            cycle.push(w);
            v = g.partner(w);
            if v == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    let mut lengths: Vec<usize> = cycles.iter().map(Vec::len).collect();
    lengths.sort_unstable();
    Ok(CycleStructure { lengths, cycles })
}

/// True iff `f ∪ g` is a Hamilton cycle. Total on distinct factors of equal order.
pub fn is_compatible(f: &OneFactor, g: &OneFactor) -> Result<bool> {
    if f.order() != g.order() {
        return Err(Error::OrderMismatch {
            expected: f.order().get(),
            found: g.order().get(),
        });
    }
    if f == g {
        return Err(Error::IdenticalFactors);
    }
    Ok(hamilton_union(f.partners(), g.partners()))
}

/// Walks `f ∪ g` from vertex 0 and reports whether it closes only after visiting everything.
#[inline]
pub(crate) fn hamilton_union(f: &[u8], g: &[u8]) -> bool {
    let half = f.len() / 2;
    let mut v = 0u8;
    for step in 1..=half {
        v = g[f[v as usize] as usize];
        if v == 0 {
            return step == half;
        }
    }
    false
}

/// A 1-factorisation of `K_n`: `n - 1` factors partitioning the edges, sorted by token.
/// Ordered by catalogue line.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorisation {
    order: Order,
    factors: Vec<OneFactor>,
    /// `colour[u * n + v]` is the index of the factor containing `{u, v}`; `u8::MAX` on the diagonal.
    colour: Vec<u8>,
}

impl Factorisation {
    pub fn new(n: usize, mut factors: Vec<OneFactor>) -> Result<Self> {
        let order = Order::new(n)?;
        if factors.len() != order.factor_count() {
            return Err(Error::FactorCount {
                expected: order.factor_count(),
                found: factors.len(),
            });
        }
        for f in &factors {
            if f.order() != order {
                return Err(Error::OrderMismatch {
                    expected: n,
                    found: f.order().get(),
                });
            }
        }
        let cover = edge_cover_counts(order, &factors);
        if let Some((id, &times)) = cover.iter().enumerate().find(|(_, &c)| c != 1) {
            return Err(Error::NotPartition {
                edge: order.edge_from_id(id),
                times,
            });
        }
        factors.sort();
        let mut colour = vec![u8::MAX; n * n];
        for (k, f) in factors.iter().enumerate() {
            for (v, &p) in f.partners().iter().enumerate() {
                colour[v * n + p as usize] = k as u8;
            }
        }
        Ok(Factorisation {
            order,
            factors,
            colour,
        })
    }

    #[inline]
    pub fn order(&self) -> Order {
        self.order
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.order.get()
    }

    #[inline]
    pub fn factors(&self) -> &[OneFactor] {
        &self.factors
    }

    /// Index (in sorted order) of the factor containing edge `{u, v}`.
    #[inline]
    pub fn factor_of(&self, u: Vertex, v: Vertex) -> usize {
        self.colour[u * self.order.get() + v] as usize
    }

    /// Image of the factorisation under `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Factorisation {
        let factors = self.factors.iter().map(|f| f.relabel(perm)).collect();
        Factorisation::new(self.n(), factors).expect("relabelling preserves the edge partition")
    }

    /// The concatenated factor tokens, as vertex indices.
    pub fn tokens(&self) -> Vec<Vec<u8>> {
        self.factors.iter().map(OneFactor::token).collect()
    }
}

impl fmt::Debug for Factorisation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.factors.iter()).finish()
    }
}

fn edge_cover_counts(order: Order, factors: &[OneFactor]) -> Vec<usize> {
    let mut cover = vec![0usize; order.edge_count()];
    for f in factors {
        for id in f.edge_bits().ones() {
            cover[id] += 1;
        }
    }
    cover
}

/// Outcome of checking a list of factors for being a perfect 1-factorisation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub factor_count_ok: bool,
    pub uncovered: Vec<Edge>,
    pub multiply_covered: Vec<Edge>,
    /// Factor index pairs `(i, j)`, `i < j`, whose union is not a Hamilton cycle, with its cycle lengths.
    pub offending_pairs: Vec<(usize, usize, Vec<usize>)>,
    pub pairs_checked: usize,
}

impl ValidationReport {
    pub fn is_partition(&self) -> bool {
        self.factor_count_ok && self.uncovered.is_empty() && self.multiply_covered.is_empty()
    }

    pub fn is_p1f(&self) -> bool {
        self.is_partition() && self.offending_pairs.is_empty()
    }
}

pub fn validate_factors(order: Order, factors: &[OneFactor]) -> ValidationReport {
    let mut report = ValidationReport {
        factor_count_ok: factors.len() == order.factor_count()
            && factors.iter().all(|f| f.order() == order),
        ..Default::default()
    };
    if factors.iter().any(|f| f.order() != order) {
        return report;
    }
    for (id, c) in edge_cover_counts(order, factors).into_iter().enumerate() {
        match c {
            0 => report.uncovered.push(order.edge_from_id(id)),
            1 => {}
            _ => report.multiply_covered.push(order.edge_from_id(id)),
        }
    }
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            report.pairs_checked += 1;
            match factor_union_cycles(&factors[i], &factors[j]) {
                Ok(cs) if cs.is_hamiltonian() => {}
                Ok(cs) => report.offending_pairs.push((i, j, cs.lengths)),
                Err(_) => report.offending_pairs.push((i, j, Vec::new())),
            }
        }
    }
    report
}

pub fn validate_p1f(f: &Factorisation) -> ValidationReport {
    validate_factors(f.order(), f.factors())
}
