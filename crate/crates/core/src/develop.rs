//! 1-factorisations built by developing base factors under a permutation.
//!
//! A spec file has one `key: value` entry per line, with values allowed to continue on
//! following lines:
//!
//! ```text
//! n: 16
//! perm: (abcdefg)(hijklmn)
//! base: {ab, cg, do, em, fi, hp, jl, kn} {ac, bk, dj, ei, fp, gl, ho, mn}
//! fixed: {ah, bi, cj, dk, el, fm, gn, op}
//! ```
//!
//! Factors are written either as brace-delimited edge lists or as compressed tokens
//! (`abcgdoemfihpjlkn`). `n` may be omitted when a factor fixes the order. Lines starting with
//! `#` are ignored.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{Factorisation, OneFactor, Order, Vertex};
use crate::perm::Relabelling;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DevelopmentSpec {
    order: Order,
    generator: Relabelling,
    base: Vec<OneFactor>,
    fixed: Vec<OneFactor>,
}

impl DevelopmentSpec {
    pub fn new(
        n: usize,
        generator: Relabelling,
        base: Vec<OneFactor>,
        fixed: Vec<OneFactor>,
    ) -> Result<Self> {
        let order = Order::new(n)?;
        if generator.len() != n {
            return Err(Error::Development(format!(
                "generator acts on {} points, order is {n}",
                generator.len()
            )));
        }
        for f in base.iter().chain(&fixed) {
            if f.order() != order {
                return Err(Error::OrderMismatch {
                    expected: n,
                    found: f.order().get(),
                });
            }
        }
        let d = generator.element_order();
        if base.len() * d + fixed.len() != n - 1 {
            return Err(Error::Development(format!(
                "{} base factors under a generator of order {d} plus {} fixed factors do not give {} factors",
                base.len(),
                fixed.len(),
                n - 1
            )));
        }
        for f in &fixed {
            if f.relabel(generator.as_slice()) != *f {
                return Err(Error::Development(format!(
                    "fixed factor {f:?} is not invariant under {generator}"
                )));
            }
        }
        Ok(DevelopmentSpec {
            order,
            generator,
            base,
            fixed,
        })
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn generator(&self) -> &Relabelling {
        &self.generator
    }

    pub fn base_factors(&self) -> &[OneFactor] {
        &self.base
    }

    pub fn fixed_factors(&self) -> &[OneFactor] {
        &self.fixed
    }

    /// Reads the spec file format described in the module documentation.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<(String, String)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match line.split_once(':') {
                Some((key, value)) if !key.contains(['{', '(']) => {
                    entries.push((key.trim().to_ascii_lowercase(), value.trim().to_string()))
                }
                _ => match entries.last_mut() {
                    Some((_, value)) => {
                        value.push(' ');
                        value.push_str(line);
                    }
                    None => {
                        return Err(Error::Development(format!("expected `key:` line, found {line:?}")))
                    }
                },
            }
        }
        let get = |key: &str| {
            entries
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.as_str())
        };
        if let Some((k, _)) = entries
            .iter()
            .find(|(k, _)| !["n", "perm", "base", "fixed"].contains(&k.as_str()))
        {
            return Err(Error::Development(format!("unknown key {k:?}")));
        }
        let perm = get("perm").ok_or_else(|| Error::Development("missing `perm:`".into()))?;
        let base = split_factors(get("base").unwrap_or(""));
        let fixed = split_factors(get("fixed").unwrap_or(""));
        let n = match get("n") {
            Some(v) => v
                .parse()
                .map_err(|_| Error::Development(format!("bad order {v:?}")))?,
            None => base
                .iter()
                .chain(&fixed)
                .next()
                .map(|f| letters(f).len())
                .ok_or_else(|| Error::Development("no factors and no `n:`".into()))?,
        };
        let generator = parse_permutation(perm, n)?;
        let base = base
            .iter()
            .map(|f| parse_factor(n, f))
            .collect::<Result<Vec<_>>>()?;
        let fixed = fixed
            .iter()
            .map(|f| parse_factor(n, f))
            .collect::<Result<Vec<_>>>()?;
        DevelopmentSpec::new(n, generator, base, fixed)
    }
}

fn letters(text: &str) -> Vec<u8> {
    text.bytes().filter(u8::is_ascii_lowercase).collect()
}

/// Braced groups if any, else whitespace-separated tokens.
fn split_factors(value: &str) -> Vec<String> {
    if value.contains('{') {
        value
            .split('{')
            .filter_map(|part| part.split_once('}').map(|(inside, _)| inside.to_string()))
            .collect()
    } else {
        value.split_whitespace().map(str::to_string).collect()
    }
}

/// A factor written as letter pairs in any order, with punctuation ignored.
fn parse_factor(n: usize, text: &str) -> Result<OneFactor> {
    let ls = letters(text);
    if ls.len() % 2 != 0 {
        return Err(Error::Development(format!("odd number of letters in {text:?}")));
    }
    let pairs: Vec<(Vertex, Vertex)> = ls
        .chunks(2)
        .map(|c| ((c[0] - b'a') as usize, (c[1] - b'a') as usize))
        .collect();
    OneFactor::from_edges(n, &pairs)
}

/// Parses disjoint cycles in letter notation, e.g. `(abcdefg)(hijklmn)`, as a permutation of
/// `n` points; letters not mentioned are fixed. The empty string is the identity.
pub fn parse_permutation(text: &str, n: usize) -> Result<Relabelling> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut seen = vec![false; n];
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| Error::Permutation(format!("malformed cycle notation {text:?}")))?;
        let cycle: Vec<usize> = body
            .0
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| {
                let v = (c as u32).wrapping_sub('a' as u32) as usize;
                if !c.is_ascii_lowercase() || v >= n {
                    return Err(Error::Permutation(format!("letter {c:?} outside the first {n}")));
                }
                Ok(v)
            })
            .collect::<Result<_>>()?;
        for &v in &cycle {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Permutation(format!(
                    "letter {:?} repeated",
                    crate::graph::vertex_letter(v)
                )));
            }
        }
        for (i, &v) in cycle.iter().enumerate() {
            perm[v] = cycle[(i + 1) % cycle.len()];
        }
        rest = body.1.trim_start();
    }
    Relabelling::new(perm)
}

/// The factorisation formed by the generator's images of every base factor together with the
/// fixed factors.
///
/// Fails with [`Error::Development`] if two images coincide and with [`Error::NotPartition`]
/// naming the first edge covered other than once.
pub fn develop(spec: &DevelopmentSpec) -> Result<Factorisation> {
    let order = spec.order;
    let d = spec.generator.element_order();
    let mut factors = Vec::with_capacity(order.factor_count());
    let mut seen = HashSet::new();
    for b in &spec.base {
        let mut img = b.clone();
        for i in 0..d {
            if !seen.insert(img.clone()) {
                return Err(Error::Development(format!(
                    "image {i} of base factor {b:?} repeats an earlier factor"
                )));
            }
            let next = img.relabel(spec.generator.as_slice());
            factors.push(img);
            img = next;
        }
    }
    for f in &spec.fixed {
        if !seen.insert(f.clone()) {
            return Err(Error::Development(format!("fixed factor {f:?} repeats an earlier factor")));
        }
        factors.push(f.clone());
    }
    let mut times = vec![0usize; order.edge_count()];
    for f in &factors {
        for e in f.edge_bits().ones() {
            times[e] += 1;
        }
    }
    if let Some((id, &t)) = times.iter().enumerate().find(|(_, &t)| t != 1) {
        return Err(Error::NotPartition {
            edge: order.edge_from_id(id),
            times: t,
        });
    }
    let f = Factorisation::new(order.get(), factors)?;
    debug_assert_eq!(f.relabel(spec.generator.as_slice()), f);
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_notation() {
        let p = parse_permutation("(abc)(de)", 6).unwrap();
        assert_eq!(p.as_slice(), &[1, 2, 0, 4, 3, 5]);
        assert_eq!(p.to_string(), "(abc)(de)");
        assert!(parse_permutation("", 4).unwrap().is_identity());
        assert!(parse_permutation("(ab)(ba)", 4).is_err());
        assert!(parse_permutation("(ae)", 4).is_err());
        assert!(parse_permutation("(ab", 4).is_err());
    }

    #[test]
    fn identity_development_of_k4() {
        let base: Vec<OneFactor> = ["abcd", "acbd", "adbc"]
            .iter()
            .map(|t| parse_factor(4, t).unwrap())
            .collect();
        let spec = DevelopmentSpec::new(4, Relabelling::identity(4), base.clone(), vec![]).unwrap();
        assert_eq!(develop(&spec).unwrap().factors(), &base[..]);
    }

    #[test]
    fn rotational_k4() {
        // (abc) fixes d; {ad, bc} rotates to the other two factors.
        let spec = DevelopmentSpec::parse("perm: (abc)\nbase: {ad, bc}").unwrap();
        assert_eq!(spec.order().get(), 4);
        let f = develop(&spec).unwrap();
        assert_eq!(crate::catalogue::emit_line(&f), "abcd acbd adbc");
    }

    #[test]
    fn spec_errors() {
        assert!(DevelopmentSpec::parse("base: {ad, bc}").is_err());
        assert!(DevelopmentSpec::parse("perm: (abc)\nbase: {ad, bc}\ncolour: red").is_err());
        // Wrong factor count.
        assert!(DevelopmentSpec::parse("perm: (ab)\nbase: {ad, bc}").is_err());
        // {ab, cd} is not fixed by (abc).
        assert!(DevelopmentSpec::parse("n: 4\nperm: (abc)\nfixed: abcd acbd adbc").is_err());
    }
}
