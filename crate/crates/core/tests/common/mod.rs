//! Fixtures and brute-force oracles shared by the integration tests.
//!
//! The oracles deliberately avoid the library's search, matching and canonical-form code: they
//! work from definitions, trading speed for obviousness.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use p1f::catalogue::parse_line;
use p1f::{Factorisation, OneFactor};
use rand::seq::SliceRandom;
use rand::Rng;

pub const K16_FIXTURES: &str = include_str!("../data/k16_fixtures.txt");
pub const N15: &str = include_str!("../data/n15.txt");
pub const ORDER7_SPEC: &str = include_str!("../data/order7_development.txt");
pub const K4: &str = "abcd acbd adbc";

/// A fixture line with the comment that precedes it.
pub struct Fixture {
    pub label: String,
    pub line: String,
}

pub fn k16_fixtures() -> Vec<Fixture> {
    let mut label = String::new();
    let mut out = Vec::new();
    for l in K16_FIXTURES.lines() {
        if let Some(c) = l.strip_prefix('#') {
            label = c.trim().to_string();
        } else if !l.trim().is_empty() {
            out.push(Fixture {
                label: label.clone(),
                line: l.trim().to_string(),
            });
        }
    }
    out
}

pub fn k16_factorisations() -> Vec<Factorisation> {
    k16_fixtures()
        .iter()
        .map(|f| parse_line(&f.line).expect("fixture parses"))
        .collect()
}

pub fn random_perm(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// All perfect matchings of `K_n` as partner arrays, by plain recursion.
pub fn all_matchings(n: usize) -> Vec<Vec<usize>> {
    fn go(partner: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(v) = partner.iter().position(|&p| p == usize::MAX) else {
            out.push(partner.clone());
            return;
        };
        for w in v + 1..partner.len() {
            if partner[w] == usize::MAX {
                partner[v] = w;
                partner[w] = v;
                go(partner, out);
                partner[v] = usize::MAX;
                partner[w] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; n], &mut out);
    out
}

/// Cycle lengths of the union of two perfect matchings, sorted.
pub fn union_cycle_lengths(a: &[usize], b: &[usize]) -> Vec<usize> {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut lengths = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut v = s;
        let mut use_a = true;
        loop {
            seen[v] = true;
            v = if use_a { a[v] } else { b[v] };
            use_a = !use_a;
            len += 1;
            if v == s && use_a {
                break;
            }
        }
        lengths.push(len);
    }
    lengths.sort_unstable();
    lengths
}

pub fn hamiltonian(a: &[usize], b: &[usize]) -> bool {
    union_cycle_lengths(a, b) == [a.len()]
}

pub fn to_factor(partner: &[usize]) -> OneFactor {
    OneFactor::from_partner(partner.iter().map(|&p| p as u8).collect()).expect("matching")
}

pub fn to_factorisation(factors: &[Vec<usize>]) -> Factorisation {
    let n = factors[0].len();
    Factorisation::new(n, factors.iter().map(|f| to_factor(f)).collect()).expect("partition")
}

/// The two fixed factors `{01, 23, ...}` and `{0(n-1), 12, 34, ...}`.
pub fn fixed_pair(n: usize) -> (Vec<usize>, Vec<usize>) {
    let f1: Vec<usize> = (0..n).map(|v| v ^ 1).collect();
    let f2: Vec<usize> = (0..n)
        .map(|v| match v {
            0 => n - 1,
            v if v == n - 1 => 0,
            v if v % 2 == 1 => v + 1,
            v => v - 1,
        })
        .collect();
    (f1, f2)
}

/// Every P1F of `K_n` containing the two fixed factors. Every P1F is isomorphic to at least
/// one of these, since any two of its factors form a Hamilton cycle and all Hamilton cycles
/// with alternating edge colours are equivalent.
pub fn p1fs_through_fixed_pair(n: usize) -> Vec<Vec<Vec<usize>>> {
    let (f1, f2) = fixed_pair(n);
    let pool: Vec<Vec<usize>> = all_matchings(n)
        .into_iter()
        .filter(|m| hamiltonian(m, &f1) && hamiltonian(m, &f2))
        .collect();
    let mut covered = vec![vec![false; n]; n];
    for f in [&f1, &f2] {
        for v in 0..n {
            covered[v][f[v]] = true;
        }
    }
    let mut chosen = vec![f1, f2];
    let mut out = Vec::new();
    fn go(
        n: usize,
        pool: &[Vec<usize>],
        chosen: &mut Vec<Vec<usize>>,
        covered: &mut Vec<Vec<bool>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        // Lowest uncovered edge; every factorisation is found once, via its factor holding it.
        let mut edge = None;
        'find: for u in 0..n {
            for v in u + 1..n {
                if !covered[u][v] {
                    edge = Some((u, v));
                    break 'find;
                }
            }
        }
        let Some((u, v)) = edge else {
            out.push(chosen.clone());
            return;
        };
        for m in pool {
            if m[u] != v || (0..n).any(|x| covered[x][m[x]]) {
                continue;
            }
            if !chosen.iter().all(|c| hamiltonian(c, m)) {
                continue;
            }
            for x in 0..n {
                covered[x][m[x]] = true;
            }
            chosen.push(m.clone());
            go(n, pool, chosen, covered, out);
            chosen.pop();
            for x in 0..n {
                covered[x][m[x]] = false;
            }
        }
    }
    go(n, &pool, &mut chosen, &mut covered, &mut out);
    out
}

/// Sorted catalogue-style tokens of `factors` relabelled by `perm`.
fn relabelled_tokens(factors: &[Vec<usize>], perm: &[usize]) -> Vec<Vec<usize>> {
    let mut tokens: Vec<Vec<usize>> = factors
        .iter()
        .map(|f| {
            let n = f.len();
            let mut image = vec![0; n];
            for v in 0..n {
                image[perm[v]] = perm[f[v]];
            }
            let mut t = Vec::with_capacity(n);
            for v in 0..n {
                if v < image[v] {
                    t.push(v);
                    t.push(image[v]);
                }
            }
            t
        })
        .collect();
    tokens.sort();
    tokens
}

/// Least relabelled token list over every relabelling that sends some ordered pair of factors
/// onto the fixed pair. Two P1Fs are isomorphic exactly when these agree.
pub fn slow_canonical(factors: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = factors[0].len();
    let mut best: Option<Vec<Vec<usize>>> = None;
    for a in factors {
        for b in factors {
            if a == b {
                continue;
            }
            // Walk the Hamilton cycle a, b, a, ... from each start; label positions 0..n.
            for start in 0..n {
                let mut perm = vec![0; n];
                let mut v = start;
                for label in 0..n {
                    perm[v] = label;
                    v = if label % 2 == 0 { a[v] } else { b[v] };
                }
                let t = relabelled_tokens(factors, &perm);
                if best.as_ref().map_or(true, |b| t < *b) {
                    best = Some(t);
                }
            }
        }
    }
    best.expect("at least two factors")
}

/// Number of isomorphism classes of P1Fs of `K_n`, by exhaustive generation through the fixed
/// pair and de-duplication with [`slow_canonical`].
pub fn oracle_class_count(n: usize) -> usize {
    let forms: BTreeSet<Vec<Vec<usize>>> = p1fs_through_fixed_pair(n)
        .iter()
        .map(|f| slow_canonical(f))
        .collect();
    forms.len()
}

/// Least relabelled token list over all `n!` permutations.
pub fn all_perm_canonical(factors: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = factors[0].len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = relabelled_tokens(factors, &perm);
    // Heap's algorithm.
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let t = relabelled_tokens(factors, &perm);
            if t < best {
                best = t;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// A 1-factorisation of `K_8` in which factor `d` pairs `x` with `x xor d`. Every union of two
/// factors is two 4-cycles.
pub fn xor_k8() -> Factorisation {
    let factors: Vec<Vec<usize>> = (1..8).map(|d| (0..8).map(|x| x ^ d).collect()).collect();
    to_factorisation(&factors)
}

/// A random 1-factorisation of `K_n` by randomised backtracking, one factor at a time.
pub fn random_one_factorisation(n: usize, rng: &mut impl Rng) -> Factorisation {
    fn go(
        n: usize,
        used: &mut Vec<Vec<bool>>,
        current: &mut Vec<usize>,
        factors: &mut Vec<Vec<usize>>,
        rng: &mut impl Rng,
    ) -> bool {
        let Some(v) = current.iter().position(|&p| p == usize::MAX) else {
            factors.push(std::mem::replace(current, vec![usize::MAX; n]));
            if factors.len() == n - 1 || go(n, used, current, factors, rng) {
                return true;
            }
            *current = factors.pop().expect("pushed");
            return false;
        };
        let mut options: Vec<usize> = (v + 1..n)
            .filter(|&w| current[w] == usize::MAX && !used[v][w])
            .collect();
        options.shuffle(rng);
        for w in options {
            current[v] = w;
            current[w] = v;
            used[v][w] = true;
            used[w][v] = true;
            if go(n, used, current, factors, rng) {
                return true;
            }
            current[v] = usize::MAX;
            current[w] = usize::MAX;
            used[v][w] = false;
            used[w][v] = false;
        }
        false
    }
    let mut used = vec![vec![false; n]; n];
    let mut current = vec![usize::MAX; n];
    let mut factors = Vec::new();
    assert!(
        go(n, &mut used, &mut current, &mut factors, rng),
        "K_{n} has a 1-factorisation"
    );
    to_factorisation(&factors)
}

/// Isomorphism of two functional digraphs given by successor arrays. Vertices are coloured by
/// colour refinement over both graphs at once (own colour, predecessor colours, successor
/// colour), then a bijection is found by backtracking within colour classes.
pub fn functional_digraphs_isomorphic(a: &[u32], b: &[u32]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    let succ = |g: usize, v: usize| if g == 0 { a[v] as usize } else { b[v] as usize };
    let mut preds = [vec![Vec::new(); n], vec![Vec::new(); n]];
    for g in 0..2 {
        for v in 0..n {
            preds[g][succ(g, v)].push(v);
        }
    }
    let mut colour = [vec![0usize; n], vec![0usize; n]];
    let mut classes = 1;
    loop {
        let mut palette: BTreeMap<(usize, Vec<usize>, usize), usize> = BTreeMap::new();
        let keys: Vec<Vec<_>> = (0..2)
            .map(|g| {
                (0..n)
                    .map(|v| {
                        let mut ps: Vec<usize> = preds[g][v].iter().map(|&u| colour[g][u]).collect();
                        ps.sort_unstable();
                        (colour[g][v], ps, colour[g][succ(g, v)])
                    })
                    .collect()
            })
            .collect();
        for k in keys.iter().flatten() {
            let next = palette.len();
            palette.entry(k.clone()).or_insert(next);
        }
        for g in 0..2 {
            for v in 0..n {
                colour[g][v] = palette[&keys[g][v]];
            }
        }
        if palette.len() == classes {
            break;
        }
        classes = palette.len();
    }
    let mut ca = colour[0].clone();
    let mut cb = colour[1].clone();
    ca.sort_unstable();
    cb.sort_unstable();
    if ca != cb {
        return false;
    }
    let mut by_colour: HashMap<usize, Vec<usize>> = HashMap::new();
    for v in 0..n {
        by_colour.entry(colour[1][v]).or_default().push(v);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    // Visit vertices so that each one after the first of its component touches a mapped one.
    let mut order = Vec::with_capacity(n);
    let mut queued = vec![false; n];
    for root in 0..n {
        if queued[root] {
            continue;
        }
        queued[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in preds[0][v].iter().chain(std::iter::once(&(a[v] as usize))) {
                if !queued[u] {
                    queued[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    fn go(
        i: usize,
        order: &[usize],
        a: &[u32],
        b: &[u32],
        ca: &[usize],
        preds_a: &[Vec<usize>],
        by_colour: &HashMap<usize, Vec<usize>>,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some(&v) = order.get(i) else {
            return (0..a.len()).all(|u| map[a[u] as usize] == b[map[u]] as usize);
        };
        for &w in &by_colour[&ca[v]] {
            if used[w] {
                continue;
            }
            let s = a[v] as usize;
            if map[s] != usize::MAX && map[s] != b[w] as usize {
                continue;
            }
            if preds_a[v]
                .iter()
                .any(|&u| map[u] != usize::MAX && b[map[u]] as usize != w)
            {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if go(i + 1, order, a, b, ca, preds_a, by_colour, map, used) {
                return true;
            }
            map[v] = usize::MAX;
            used[w] = false;
        }
        false
    }
    go(0, &order, a, b, &colour[0], &preds[0], &by_colour, &mut map, &mut used)
}
