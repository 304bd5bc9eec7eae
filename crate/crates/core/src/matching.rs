//! Enumeration of perfect matchings of `K_n` that form a Hamilton cycle with each of a set of
//! given 1-factors.
//!
//! The matching is built by always pairing the smallest unmatched vertex, so matchings are produced
//! in ascending token order. For each constraint factor the union with the partial matching is a
//! disjoint set of paths; `ends[k][x]` holds the far end of the path at endpoint `x`, and an edge
//! joining the two ends of one path is allowed only when it closes the final cycle.

use crate::graph::{OneFactor, Order, Vertex};

const FREE: u8 = u8::MAX;

struct Walker<'a, F: FnMut(&[u8])> {
    n: usize,
    partner: Vec<u8>,
    ends: Vec<Vec<u8>>,
    unmatched: usize,
    visit: &'a mut F,
}

impl<F: FnMut(&[u8])> Walker<'_, F> {
    /// Tries to add `{u, v}`; on success returns the undo log.
    fn push(&mut self, u: usize, v: usize) -> Option<Vec<(usize, u8, u8)>> {
        let closing = self.unmatched == 2;
        for ends in &self.ends {
            if ends[u] as usize == v && !closing {
                return None;
            }
        }
        let mut undo = Vec::with_capacity(self.ends.len());
        if !closing {
            for (k, ends) in self.ends.iter_mut().enumerate() {
                let a = ends[u];
                let b = ends[v];
                undo.push((k, a, b));
                ends[a as usize] = b;
                ends[b as usize] = a;
            }
        }
        self.partner[u] = v as u8;
        self.partner[v] = u as u8;
        self.unmatched -= 2;
        Some(undo)
    }

    fn pop(&mut self, u: usize, v: usize, undo: Vec<(usize, u8, u8)>) {
        for (k, a, b) in undo.into_iter().rev() {
            let ends = &mut self.ends[k];
            ends[a as usize] = u as u8;
            ends[b as usize] = v as u8;
        }
        self.partner[u] = FREE;
        self.partner[v] = FREE;
        self.unmatched += 2;
    }

    fn run(&mut self, from: usize) {
        let Some(u) = (from..self.n).find(|&x| self.partner[x] == FREE) else {
            (self.visit)(&self.partner);
            return;
        };
        for v in u + 1..self.n {
            if self.partner[v] != FREE {
                continue;
            }
            if let Some(undo) = self.push(u, v) {
                self.run(u + 1);
                self.pop(u, v, undo);
            }
        }
    }
}

/// Calls `visit` with the partner array of every perfect matching `M` of `K_n` such that
/// `M ∪ C` is a Hamilton cycle for every `C` in `constraints`, and `M` contains `required`
/// when given. Matchings arrive in ascending token order.
pub fn for_each_compatible<F: FnMut(&[u8])>(
    order: Order,
    constraints: &[&OneFactor],
    required: Option<(Vertex, Vertex)>,
    mut visit: F,
) {
    let n = order.get();
    let ends = constraints
        .iter()
        .map(|c| c.partners().to_vec())
        .collect::<Vec<_>>();
    let mut walker = Walker {
        n,
        partner: vec![FREE; n],
        ends,
        unmatched: n,
        visit: &mut visit,
    };
    match required {
        Some((u, v)) => {
            if let Some(undo) = walker.push(u.min(v), u.max(v)) {
                walker.run(0);
                walker.pop(u.min(v), u.max(v), undo);
            }
        }
        None => walker.run(0),
    }
}

/// Collects the matchings of [`for_each_compatible`] as factors.
pub fn compatible_factors(
    order: Order,
    constraints: &[&OneFactor],
    required: Option<(Vertex, Vertex)>,
) -> Vec<OneFactor> {
    let mut out = Vec::new();
    for_each_compatible(order, constraints, required, |p| {
        out.push(OneFactor::from_partner_unchecked(order, p.to_vec()))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_compatible, make_f1_f2};

    fn double_factorial(k: usize) -> usize {
        (1..=k).rev().step_by(2).product()
    }

    #[test]
    fn counts_all_matchings() {
        for n in [4, 6, 8, 10, 12] {
            let order = Order::new(n).unwrap();
            let mut count = 0;
            for_each_compatible(order, &[], None, |_| count += 1);
            assert_eq!(count, double_factorial(n - 1), "n={n}");
            let mut with_edge = 0;
            for_each_compatible(order, &[], Some((3, 1)), |p| {
                assert_eq!(p[1], 3);
                with_edge += 1
            });
            assert_eq!(with_edge, double_factorial(n - 3), "n={n}");
        }
    }

    #[test]
    fn tokens_ascend() {
        let order = Order::new(8).unwrap();
        let all = compatible_factors(order, &[], None);
        assert!(all.windows(2).all(|w| w[0].token() < w[1].token()));
    }

    #[test]
    fn agrees_with_direct_filter() {
        for n in [6, 8, 10] {
            let order = Order::new(n).unwrap();
            let (f1, f2) = make_f1_f2(n).unwrap();
            let all = compatible_factors(order, &[], None);
            let expected: Vec<_> = all
                .iter()
                .filter(|m| {
                    **m != f1
                        && **m != f2
                        && is_compatible(m, &f1).unwrap()
                        && is_compatible(m, &f2).unwrap()
                })
                .cloned()
                .collect();
            assert_eq!(compatible_factors(order, &[&f1, &f2], None), expected);
        }
    }

    #[test]
    fn compatible_with_one_factor_count() {
        // Hamilton cycles through a fixed perfect matching: 2^(k-1) (k-1)! with k = n/2.
        for (n, expected) in [(4, 2), (6, 8), (8, 48), (10, 384)] {
            let order = Order::new(n).unwrap();
            let (f1, _) = make_f1_f2(n).unwrap();
            assert_eq!(compatible_factors(order, &[&f1], None).len(), expected);
        }
    }
}
