//! Latin squares derived from 1-factorisations: the unipotent square `U(F)`, the folded squares
//! `I(F, j)`, row cycles, conjugates and Hamiltonicity.

use std::fmt;
use std::str::FromStr;

use crate::canon::automorphism_group;
use crate::error::{Error, Result};
use crate::graph::{Factorisation, Vertex};

/// An `m × m` Latin square on symbols `1..=m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    m: usize,
    cells: Vec<usize>,
}

impl LatinSquare {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let m = rows.len();
        let mut cells = Vec::with_capacity(m * m);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Latin(format!(
                    "row {} has {} entries, expected {m}",
                    r + 1,
                    row.len()
                )));
            }
            cells.extend_from_slice(row);
        }
        Self::from_cells(m, cells)
    }

    fn from_cells(m: usize, cells: Vec<usize>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Latin("empty square".into()));
        }
        let square = LatinSquare { m, cells };
        for i in 0..m {
            let mut in_row = vec![false; m + 1];
            let mut in_col = vec![false; m + 1];
            for j in 0..m {
                for (seen, s, what) in [
                    (&mut in_row, square.get(i, j), "row"),
                    (&mut in_col, square.get(j, i), "column"),
                ] {
                    if s == 0 || s > m {
                        return Err(Error::Latin(format!("symbol {s} outside 1..={m}")));
                    }
                    if seen[s] {
                        return Err(Error::Latin(format!(
                            "symbol {s} repeated in {what} {}",
                            i + 1
                        )));
                    }
                    seen[s] = true;
                }
            }
        }
        Ok(square)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.m
    }

    /// Symbol in cell `(row, col)`, 0-based indices, 1-based symbol.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.m + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.chunks(self.m)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.m).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.m).all(|i| self.get(i, i) == i + 1)
    }

    /// Row cycles between rows `r` and `s`.
    pub fn row_cycles(&self, r: usize, s: usize) -> Result<Vec<RowCycle>> {
        if r == s || r >= self.m || s >= self.m {
            return Err(Error::Latin(format!("row cycles need two distinct rows, got {r} and {s}")));
        }
        let next = self.row_pair_map(r, s);
        let mut seen = vec![false; self.m];
        let mut out = Vec::new();
        for c in 0..self.m {
            if seen[c] {
                continue;
            }
            let mut columns = Vec::new();
            let mut x = c;
            while !seen[x] {
                seen[x] = true;
                columns.push(x);
                x = next[x];
            }
            out.push(RowCycle {
                rows: (r, s),
                columns,
            });
        }
        Ok(out)
    }

    /// Lengths of the row cycles between `r` and `s`, sorted.
    pub fn row_cycle_lengths(&self, r: usize, s: usize) -> Result<Vec<usize>> {
        let mut ls: Vec<usize> = self.row_cycles(r, s)?.iter().map(RowCycle::len).collect();
        ls.sort_unstable();
        Ok(ls)
    }

    /// `next[c]` is the column where row `r` holds the symbol found in row `s` at column `c`.
    fn row_pair_map(&self, r: usize, s: usize) -> Vec<usize> {
        let mut col_in_r = vec![0; self.m + 1];
        for c in 0..self.m {
            col_in_r[self.get(r, c)] = c;
        }
        (0..self.m).map(|c| col_in_r[self.get(s, c)]).collect()
    }

    fn row_pair_is_hamiltonian(&self, r: usize, s: usize) -> bool {
        let next = self.row_pair_map(r, s);
        let mut x = next[0];
        let mut len = 1;
        while x != 0 {
            x = next[x];
            len += 1;
        }
        len == self.m
    }

    /// Every pair of rows forms a single row cycle of full length.
    pub fn is_row_hamiltonian(&self) -> bool {
        (0..self.m).all(|r| (r + 1..self.m).all(|s| self.row_pair_is_hamiltonian(r, s)))
    }

    /// The square whose triples are `(t[order[0]], t[order[1]], t[order[2]])` for each triple
    /// `t = (row, column, symbol)` of `self`.
    pub fn conjugate(&self, order: [Coordinate; 3]) -> Result<LatinSquare> {
        let mut used = [false; 3];
        for c in order {
            if std::mem::replace(&mut used[c as usize], true) {
                return Err(Error::Latin(format!("{order:?} is not a permutation of coordinates")));
            }
        }
        let m = self.m;
        let mut cells = vec![0; m * m];
        for r in 0..m {
            for c in 0..m {
                let t = [r, c, self.get(r, c) - 1];
                let (nr, nc, ns) = (t[order[0] as usize], t[order[1] as usize], t[order[2] as usize]);
                cells[nr * m + nc] = ns + 1;
            }
        }
        Ok(LatinSquare { m, cells })
    }

    pub fn transpose(&self) -> LatinSquare {
        self.conjugate([Coordinate::Column, Coordinate::Row, Coordinate::Symbol])
            .expect("valid coordinate permutation")
    }

    /// Rows and symbols exchanged: its row cycles are the symbol cycles of `self`.
    pub fn row_symbol_conjugate(&self) -> LatinSquare {
        self.conjugate([Coordinate::Symbol, Coordinate::Column, Coordinate::Row])
            .expect("valid coordinate permutation")
    }

    pub fn classify(&self) -> Hamiltonicity {
        let row = self.is_row_hamiltonian();
        let column = self.transpose().is_row_hamiltonian();
        let symbol = self.row_symbol_conjugate().is_row_hamiltonian();
        Hamiltonicity {
            row,
            column,
            symbol,
        }
    }

    /// Checks that `row_map`, `col_map`, `sym_map` (0-based maps on indices and symbols) send
    /// the square to itself.
    pub fn is_autotopism(&self, row_map: &[usize], col_map: &[usize], sym_map: &[usize]) -> bool {
        (0..self.m).all(|r| {
            (0..self.m).all(|c| {
                self.get(row_map[r], col_map[c]) - 1 == sym_map[self.get(r, c) - 1]
            })
        })
    }
}

impl fmt::Debug for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `m` lines of `m` whitespace-separated symbols.
impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.m.to_string().len();
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for LatinSquare {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|x| {
                        x.parse::<usize>()
                            .map_err(|_| Error::Latin(format!("bad symbol {x:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LatinSquare::from_rows(rows)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coordinate {
    Row = 0,
    Column = 1,
    Symbol = 2,
}

/// A minimal `2 × len` Latin subrectangle on rows `rows`; `columns` in cycle order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCycle {
    pub rows: (usize, usize),
    pub columns: Vec<usize>,
}

impl RowCycle {
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hamiltonicity {
    pub row: bool,
    pub column: bool,
    pub symbol: bool,
}

impl Hamiltonicity {
    pub fn atomic(&self) -> bool {
        self.row && self.column && self.symbol
    }
}

/// `U(F)`: cell `(i, j)` holds the 1-based index of the factor containing `{i, j}`, and the
/// diagonal holds `n`.
pub fn unipotent_square(f: &Factorisation) -> LatinSquare {
    let n = f.n();
    let mut cells = vec![n; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                cells[i * n + j] = f.factor_of(i, j) + 1;
            }
        }
    }
    LatinSquare { m: n, cells }
}

/// `I(F, j)`: `U(F)` with column `j` copied onto the diagonal and row and column `j` deleted,
/// then symbols renamed so that the diagonal reads `1, 2, ..., n - 1`.
pub fn fold(f: &Factorisation, j: Vertex) -> Result<LatinSquare> {
    let n = f.n();
    if j >= n {
        return Err(Error::Latin(format!("fold vertex {j} out of range for order {n}")));
    }
    let keep: Vec<usize> = (0..n).filter(|&v| v != j).collect();
    let m = n - 1;
    // Symbol U[i][j] lands on the diagonal of kept row i; rename it to that row's new index.
    let mut rename = vec![0; n + 1];
    for (new, &i) in keep.iter().enumerate() {
        rename[f.factor_of(i, j) + 1] = new + 1;
    }
    let mut cells = vec![0; m * m];
    for (a, &i) in keep.iter().enumerate() {
        for (b, &k) in keep.iter().enumerate() {
            let symbol = if i == k {
                f.factor_of(i, j) + 1
            } else {
                f.factor_of(i, k) + 1
            };
            cells[a * m + b] = rename[symbol];
        }
    }
    LatinSquare::from_cells(m, cells)
}

/// Number of orbits of the automorphism group on vertices, i.e. the number of species among
/// the folded squares when distinct orbits give distinct species.
pub fn species_count(f: &Factorisation) -> Result<usize> {
    Ok(automorphism_group(f)?.orbits().len())
}

/// One representative vertex per automorphism orbit.
pub fn fold_representatives(f: &Factorisation) -> Result<Vec<Vertex>> {
    Ok(automorphism_group(f)?
        .orbits()
        .into_iter()
        .map(|o| o[0])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::parse_line;

    fn k4() -> Factorisation {
        parse_line("abcd acbd adbc").unwrap()
    }

    fn cyclic3() -> LatinSquare {
        "1 3 2\n3 2 1\n2 1 3".parse().unwrap()
    }

    #[test]
    fn unipotent_k4() {
        let u = unipotent_square(&k4());
        let expected: LatinSquare = "4 1 2 3\n1 4 3 2\n2 3 4 1\n3 2 1 4".parse().unwrap();
        assert_eq!(u, expected);
        assert!(u.is_symmetric());
    }

    #[test]
    fn fold_k4_at_d() {
        let l = fold(&k4(), 3).unwrap();
        assert_eq!(l, cyclic3());
        assert!(l.is_idempotent() && l.is_symmetric());
    }

    #[test]
    fn order_three_square_is_atomic() {
        let l = cyclic3();
        assert_eq!(l.row_cycle_lengths(0, 1).unwrap(), vec![3]);
        assert!(l.classify().atomic());
    }

    #[test]
    fn conjugate_basics() {
        let l = cyclic3();
        let id = l
            .conjugate([Coordinate::Row, Coordinate::Column, Coordinate::Symbol])
            .unwrap();
        assert_eq!(id, l);
        assert_eq!(l.transpose(), l);
        let u = unipotent_square(&k4());
        let rs = u.row_symbol_conjugate();
        assert_eq!(rs.row_symbol_conjugate(), u);
        assert!(l
            .conjugate([Coordinate::Row, Coordinate::Row, Coordinate::Symbol])
            .is_err());
    }

    #[test]
    fn rejects_non_latin() {
        assert!("1 2\n1 2".parse::<LatinSquare>().is_err());
        assert!("1 2\n2".parse::<LatinSquare>().is_err());
        assert!("1 3\n3 1".parse::<LatinSquare>().is_err());
        assert!(cyclic3().row_cycles(1, 1).is_err());
    }
}
