use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Vertex;

/// A bijection on the vertex set; `image(v)` is the new label of `v`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relabelling {
    perm: Vec<usize>,
}

impl Relabelling {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::Permutation(format!("{perm:?} is not a bijection")));
            }
            seen[p] = true;
        }
        Ok(Relabelling { perm })
    }

    pub(crate) fn new_unchecked(perm: Vec<usize>) -> Self {
        Relabelling { perm }
    }

    pub fn identity(n: usize) -> Self {
        Relabelling {
            perm: (0..n).collect(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.perm.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    #[inline]
    pub fn image(&self, v: Vertex) -> Vertex {
        self.perm[v]
    }

    #[inline]
    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Relabelling {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        Relabelling { perm: inv }
    }

    /// `self` after `first`: `v -> self(first(v))`.
    pub fn after(&self, first: &Relabelling) -> Relabelling {
        Relabelling {
            perm: first.perm.iter().map(|&v| self.perm[v]).collect(),
        }
    }

    /// Disjoint cycles, each starting at its smallest point, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.perm.len()];
        let mut out = Vec::new();
        for s in 0..self.perm.len() {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut v = s;
            while !seen[v] {
                seen[v] = true;
                c.push(v);
                v = self.perm[v];
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_lengths(self.cycles().iter().map(Vec::len))
    }

    /// Order of the permutation as a group element.
    pub fn element_order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, lcm)
    }

    pub fn pow(&self, k: usize) -> Relabelling {
        let mut out = Relabelling::identity(self.perm.len());
        for _ in 0..k {
            out = self.after(&out);
        }
        out
    }
}

impl fmt::Debug for Relabelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation with letters for small degree, e.g. `(abcdefg)(hijklmn)`. Fixed points omitted.
impl fmt::Display for Relabelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.perm.len() <= 26;
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            f.write_str("(")?;
            for (i, v) in c.iter().enumerate() {
                if letters {
                    write!(f, "{}", (b'a' + *v as u8) as char)?;
                } else {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{v}")?;
                }
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// Multiset of cycle lengths, kept as `(length, multiplicity)` with lengths descending.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(pub Vec<(usize, usize)>);

impl CycleType {
    pub fn from_lengths(lengths: impl IntoIterator<Item = usize>) -> Self {
        let mut ls: Vec<usize> = lengths.into_iter().collect();
        ls.sort_unstable_by(|a, b| b.cmp(a));
        let mut out: Vec<(usize, usize)> = Vec::new();
        for l in ls {
            match out.last_mut() {
                Some((len, mult)) if *len == l => *mult += 1,
                _ => out.push((l, 1)),
            }
        }
        CycleType(out)
    }

    /// Parses the `7^2 1^2` form produced by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lengths = Vec::new();
        for part in text.split_whitespace() {
            let (l, m) = part.split_once('^').unwrap_or((part, "1"));
            let l: usize = l
                .parse()
                .map_err(|_| Error::Permutation(format!("bad cycle type part {part:?}")))?;
            let m: usize = m
                .parse()
                .map_err(|_| Error::Permutation(format!("bad cycle type part {part:?}")))?;
            lengths.extend(std::iter::repeat(l).take(m));
        }
        Ok(CycleType::from_lengths(lengths))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (l, m)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}^{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
