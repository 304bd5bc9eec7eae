//! Canonical labelling, isomorphism testing and automorphism groups of perfect 1-factorisations.
//!
//! The canonical form of a P1F is the relabelling that contains the fixed factors `F1`, `F2`
//! (see [`make_f1_f2`](crate::graph::make_f1_f2)) and whose catalogue line is lexicographically
//! least. Every ordered pair `(A, B)` of factors is a candidate for `(F1, F2)`; the Hamilton cycle
//! `A ∪ B` can be laid onto `0-1-...-(n-1)-0` with `A`-edges on `F1` in exactly `n` ways, one per
//! choice of the vertex sent to 0. That gives `(n-1)(n-2)n` candidate relabellings in total.
//!
//! Since every factor contains a distinct edge at vertex 0, the sorted tokens of a relabelled
//! factorisation are ordered by the partner of 0: the `k`-th token belongs to the factor holding
//! the preimage of edge `{0, k}`. Candidates are compared token by token and abandoned at the first
//! byte that exceeds the incumbent.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Factorisation, Vertex};
use crate::perm::{CycleType, Relabelling};

/// Fills `cycle` with the Hamilton cycle of `a ∪ b` starting `0, a(0), b(a(0)), ...`.
/// Returns false if the union is not a single cycle.
pub(crate) fn hamilton_sequence(a: &[u8], b: &[u8], cycle: &mut [u8]) -> bool {
    let n = a.len();
    let mut v = 0u8;
    for i in (0..n).step_by(2) {
        cycle[i] = v;
        let w = a[v as usize];
        cycle[i + 1] = w;
        v = b[w as usize];
        if v == 0 && i + 2 != n {
            return false;
        }
    }
    v == 0
}

/// The alignment of a Hamilton cycle (as produced by [`hamilton_sequence`]) that sends the
/// vertex at position `start` to label 0: `walk[i]` is the vertex receiving label `i`.
#[inline]
pub(crate) fn aligned_walk(cycle: &[u8], start: usize, walk: &mut [u8]) {
    let n = cycle.len();
    if start % 2 == 0 {
        for (i, w) in walk.iter_mut().enumerate() {
            *w = cycle[(start + i) % n];
        }
    } else {
        for (i, w) in walk.iter_mut().enumerate() {
            *w = cycle[(start + n - i) % n];
        }
    }
}

/// Canonical form together with the labelling that produces it and the automorphism group.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub form: Factorisation,
    pub labelling: Relabelling,
    pub automorphisms: AutGroup,
}

struct Search<'a> {
    f: &'a Factorisation,
    n: usize,
    best: Vec<u8>,
    scratch: Vec<u8>,
    minimisers: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Streams the line of the candidate whose labels are given by `walk`/`pos`.
    fn offer(&mut self, walk: &[u8], pos: &[usize]) {
        let n = self.n;
        let first = self.best.is_empty();
        let mut less = first;
        let mut idx = 0;
        let mut seen = vec![false; n];
        self.scratch.clear();
        for k in 1..n {
            let x = &self.f.factors()[self.f.factor_of(walk[0] as usize, walk[k] as usize)];
            seen.iter_mut().for_each(|s| *s = false);
            for i in 0..n {
                if seen[i] {
                    continue;
                }
                let p = pos[x.partner(walk[i] as usize)];
                seen[i] = true;
                seen[p] = true;
                for byte in [i as u8, p as u8] {
                    if !less {
                        match byte.cmp(&self.best[idx]) {
                            std::cmp::Ordering::Greater => return,
                            std::cmp::Ordering::Less => less = true,
                            std::cmp::Ordering::Equal => {}
                        }
                    }
                    self.scratch.push(byte);
                    idx += 1;
                }
            }
        }
        if less {
            std::mem::swap(&mut self.best, &mut self.scratch);
            self.minimisers.clear();
        }
        self.minimisers.push(pos.to_vec());
    }
}

/// Computes the canonical form, a canonising relabelling, and the automorphism group.
///
/// Fails with [`Error::NotPerfect`] when some pair of factors does not form a Hamilton cycle.
pub fn canonicalize(f: &Factorisation) -> Result<Canonical> {
    let n = f.n();
    let m = f.factors().len();
    let mut search = Search {
        f,
        n,
        best: Vec::with_capacity(n * (n - 1)),
        scratch: Vec::with_capacity(n * (n - 1)),
        minimisers: Vec::new(),
    };
    let mut cycle = vec![0u8; n];
    let mut walk = vec![0u8; n];
    let mut pos = vec![0usize; n];
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let (a, b) = (f.factors()[i].partners(), f.factors()[j].partners());
            if !hamilton_sequence(a, b, &mut cycle) {
                return Err(Error::NotPerfect(i.min(j), i.max(j)));
            }
            for start in 0..n {
                aligned_walk(&cycle, start, &mut walk);
                for (label, &v) in walk.iter().enumerate() {
                    pos[v as usize] = label;
                }
                search.offer(&walk, &pos);
            }
        }
    }
    let labelling = Relabelling::new_unchecked(search.minimisers[0].clone());
    let inverse = labelling.inverse();
    let mut elements: Vec<Relabelling> = search
        .minimisers
        .into_iter()
        .map(|p| inverse.after(&Relabelling::new_unchecked(p)))
        .collect();
    elements.sort();
    let form = f.relabel(labelling.as_slice());
    Ok(Canonical {
        form,
        labelling,
        automorphisms: AutGroup::from_elements(n, elements),
    })
}

pub fn canonical_form(f: &Factorisation) -> Result<(Factorisation, Relabelling)> {
    let c = canonicalize(f)?;
    Ok((c.form, c.labelling))
}

/// Isomorphism test via canonical forms. Factorisations of different orders are reported as
/// non-isomorphic; non-perfect inputs are an error.
pub fn are_isomorphic(a: &Factorisation, b: &Factorisation) -> Result<bool> {
    if a.order() != b.order() {
        return Ok(false);
    }
    Ok(canonicalize(a)?.form == canonicalize(b)?.form)
}

pub fn automorphism_group(f: &Factorisation) -> Result<AutGroup> {
    Ok(canonicalize(f)?.automorphisms)
}

/// A permutation group given by its full element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutGroup {
    degree: usize,
    elements: Vec<Relabelling>,
    generators: Vec<Relabelling>,
}

impl AutGroup {
    /// `elements` must be closed under composition and contain the identity.
    pub fn from_elements(degree: usize, mut elements: Vec<Relabelling>) -> Self {
        elements.sort();
        let order = elements.len();
        let generators = match elements.iter().find(|g| g.element_order() == order) {
            Some(g) if order > 1 => vec![g.clone()],
            Some(_) => Vec::new(),
            None => {
                let mut gens: Vec<Relabelling> = Vec::new();
                let mut span: HashSet<Relabelling> = HashSet::new();
                span.insert(Relabelling::identity(degree));
                for g in &elements {
                    if !span.contains(g) {
                        gens.push(g.clone());
                        span = closure(degree, &gens);
                    }
                }
                gens
            }
        };
        AutGroup {
            degree,
            elements,
            generators,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn elements(&self) -> &[Relabelling] {
        &self.elements
    }

    pub fn generators(&self) -> &[Relabelling] {
        &self.generators
    }

    pub fn is_cyclic(&self) -> bool {
        self.order() == 1 || self.generators.len() == 1
    }

    /// Cycle type of a generator when the group is cyclic; `1^n` for the trivial group.
    pub fn generator_cycle_type(&self) -> Option<CycleType> {
        if self.is_trivial() {
            return Some(CycleType::from_lengths(std::iter::repeat(1).take(self.degree)));
        }
        if self.is_cyclic() {
            return Some(self.generators[0].cycle_type());
        }
        None
    }

    /// Orbits on vertices, each sorted, ordered by smallest member.
    pub fn orbits(&self) -> Vec<Vec<Vertex>> {
        let mut orbit_of = vec![usize::MAX; self.degree];
        let mut orbits = Vec::new();
        for v in 0..self.degree {
            if orbit_of[v] != usize::MAX {
                continue;
            }
            let mut orbit: Vec<Vertex> = self.elements.iter().map(|g| g.image(v)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &w in &orbit {
                orbit_of[w] = orbits.len();
            }
            orbits.push(orbit);
        }
        orbits
    }
}

fn closure(degree: usize, gens: &[Relabelling]) -> HashSet<Relabelling> {
    let mut seen = HashSet::new();
    let id = Relabelling::identity(degree);
    let mut queue = VecDeque::from([id.clone()]);
    seen.insert(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.after(&x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_f1_f2, OneFactor};

    fn k4() -> Factorisation {
        let (f1, f2) = make_f1_f2(4).unwrap();
        let f3 = OneFactor::from_edges(4, &[(0, 2), (1, 3)]).unwrap();
        Factorisation::new(4, vec![f1, f2, f3]).unwrap()
    }

    #[test]
    fn hamilton_sequence_of_fixed_factors() {
        let (f1, f2) = make_f1_f2(8).unwrap();
        let mut c = vec![0u8; 8];
        assert!(hamilton_sequence(f1.partners(), f2.partners(), &mut c));
        assert_eq!(c, (0..8).collect::<Vec<u8>>());
        let mut w = vec![0u8; 8];
        aligned_walk(&c, 3, &mut w);
        assert_eq!(w, vec![3, 2, 1, 0, 7, 6, 5, 4]);
        assert!(f1.contains(w[0] as usize, w[1] as usize));
        assert!(f2.contains(w[1] as usize, w[2] as usize));
    }

    #[test]
    fn k4_group_is_full_symmetric_group() {
        // Every permutation of K4's vertices permutes its three factors.
        let c = canonicalize(&k4()).unwrap();
        assert_eq!(c.form, k4());
        assert_eq!(c.automorphisms.order(), 24);
        assert!(!c.automorphisms.is_cyclic());
        assert_eq!(c.automorphisms.orbits(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn group_generators_span() {
        let c = canonicalize(&k4()).unwrap();
        let span = closure(4, c.automorphisms.generators());
        assert_eq!(span.len(), 24);
    }
}
