//! The catalogue line format.
//!
//! A line is `n - 1` whitespace-separated tokens, one per factor, in ascending order. A token lists
//! the factor's edges with the smaller endpoint first, edges in ascending order of that endpoint,
//! and all separators removed: `{ab, cd, ef, gh}` is `abcdefgh`. Vertices are lowercase letters,
//! which covers orders up to 26. Larger orders use a numeric dialect in which edges are written
//! `u-v` and joined by `.`, e.g. `0-1.2-3.4-5`.

use crate::error::{Error, Result};
use crate::graph::{Factorisation, OneFactor, Order};

/// Largest order written with letters.
pub const LETTER_LIMIT: usize = 26;

fn is_numeric(token: &str) -> bool {
    token.contains('-')
}

/// Parses a single factor token of order `n`, enforcing the canonical edge layout.
pub fn parse_token(n: usize, token: &str, index: usize) -> Result<OneFactor> {
    let pairs = if is_numeric(token) {
        numeric_pairs(token, index)?
    } else {
        letter_pairs(n, token, index)?
    };
    if pairs.len() * 2 != n {
        return Err(Error::parse(
            index,
            0,
            format!("token has {} vertices, expected {n}", pairs.len() * 2),
        ));
    }
    let mut seen = vec![false; n];
    let mut prev_lo: Option<usize> = None;
    for (k, &(u, v)) in pairs.iter().enumerate() {
        let column = 2 * k;
        for (off, x) in [(0, u), (1, v)] {
            if x >= n {
                return Err(Error::parse(index, column + off, format!("vertex {x} out of range")));
            }
            if seen[x] {
                return Err(Error::parse(index, column + off, format!("repeated vertex {x}")));
            }
            seen[x] = true;
        }
        if u > v {
            return Err(Error::parse(index, column, "edge not written smaller endpoint first"));
        }
        if prev_lo.is_some_and(|p| p > u) {
            return Err(Error::parse(index, column, "edges not in ascending order"));
        }
        prev_lo = Some(u);
    }
    OneFactor::from_edges(n, &pairs).map_err(|e| Error::parse(index, 0, e.to_string()))
}

fn letter_pairs(n: usize, token: &str, index: usize) -> Result<Vec<(usize, usize)>> {
    let bytes = token.as_bytes();
    if bytes.len() != n {
        return Err(Error::parse(
            index,
            0,
            format!("token length {} does not match order {n}", bytes.len()),
        ));
    }
    let mut vs = Vec::with_capacity(n);
    for (col, &b) in bytes.iter().enumerate() {
        if !b.is_ascii_lowercase() || (b - b'a') as usize >= n {
            return Err(Error::parse(
                index,
                col,
                format!("letter {:?} outside the first {n} letters", b as char),
            ));
        }
        vs.push((b - b'a') as usize);
    }
    Ok(vs.chunks(2).map(|c| (c[0], c[1])).collect())
}

fn numeric_pairs(token: &str, index: usize) -> Result<Vec<(usize, usize)>> {
    token
        .split('.')
        .enumerate()
        .map(|(k, edge)| {
            let (u, v) = edge
                .split_once('-')
                .ok_or_else(|| Error::parse(index, 2 * k, format!("malformed edge {edge:?}")))?;
            let u = u
                .parse()
                .map_err(|_| Error::parse(index, 2 * k, format!("bad vertex {u:?}")))?;
            let v = v
                .parse()
                .map_err(|_| Error::parse(index, 2 * k + 1, format!("bad vertex {v:?}")))?;
            Ok((u, v))
        })
        .collect()
}

/// Order implied by a token.
pub fn token_order(token: &str) -> usize {
    if is_numeric(token) {
        2 * token.split('.').count()
    } else {
        token.len()
    }
}

/// Parses the tokens of one factorisation.
pub fn parse_tokens(tokens: &[&str]) -> Result<Factorisation> {
    let first = tokens
        .first()
        .ok_or_else(|| Error::parse(0, 0, "empty line"))?;
    let n = token_order(first);
    Order::new(n).map_err(|e| Error::parse(0, 0, e.to_string()))?;
    if tokens.len() != n - 1 {
        return Err(Error::parse(
            tokens.len().min(n - 1),
            0,
            format!("expected {} tokens for order {n}, found {}", n - 1, tokens.len()),
        ));
    }
    let mut factors = Vec::with_capacity(tokens.len());
    for (i, t) in tokens.iter().enumerate() {
        let f = parse_token(n, t, i)?;
        if let Some(prev) = factors.last() {
            if f <= *prev {
                return Err(Error::parse(i, 0, "tokens not in ascending order"));
            }
        }
        factors.push(f);
    }
    Factorisation::new(n, factors).map_err(|e| Error::parse(0, 0, e.to_string()))
}

/// Parses a catalogue line. Any run of whitespace, including newlines, separates tokens.
pub fn parse_line(text: &str) -> Result<Factorisation> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    parse_tokens(&tokens)
}

pub fn emit_token(f: &OneFactor) -> String {
    let n = f.order().get();
    let token = f.token();
    if n <= LETTER_LIMIT {
        token.iter().map(|&v| (b'a' + v) as char).collect()
    } else {
        token
            .chunks(2)
            .map(|e| format!("{}-{}", e[0], e[1]))
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Single-line form of a factorisation: sorted tokens joined by one space.
pub fn emit_line(f: &Factorisation) -> String {
    f.factors()
        .iter()
        .map(emit_token)
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_f1_f2;

    const K4: &str = "abcd acbd adbc";

    #[test]
    fn k4_round_trip() {
        let f = parse_line(K4).unwrap();
        assert_eq!(emit_line(&f), K4);
        let (f1, f2) = make_f1_f2(4).unwrap();
        assert_eq!(f.factors()[0], f1);
        assert_eq!(f.factors()[2], f2);
    }

    #[test]
    fn fixed_factor_tokens() {
        let (f1, f2) = make_f1_f2(16).unwrap();
        assert_eq!(emit_token(&f1), "abcdefghijklmnop");
        assert_eq!(emit_token(&f2), "apbcdefghijklmno");
    }

    #[test]
    fn layout_insensitive() {
        assert_eq!(
            parse_line("abcd\n  acbd\n\tadbc\n").unwrap(),
            parse_line(K4).unwrap()
        );
    }

    #[test]
    fn parse_errors() {
        let cases = [
            "abcd acbd",              // too few tokens
            "abcd acbd adbc abcd",    // too many
            "abcd acbd adbe",         // letter out of range
            "abcd acbd adb",          // short token
            "abcd acdb adbc",         // edge written backwards
            "abcd bdac adbc",         // edges out of order
            "abcd adbc acbd",         // tokens out of order
            "abcd aabc adbc",         // repeated letter
            "",
        ];
        for c in cases {
            assert!(matches!(parse_line(c), Err(Error::Parse { .. })), "{c:?}");
        }
    }

    #[test]
    fn numeric_dialect() {
        let n = 28;
        let order = Order::new(n).unwrap();
        let factors: Vec<OneFactor> = (1..n)
            .map(|k| {
                // Rotational 1-factorisation: vertex n-1 is the centre.
                let m = n - 1;
                let mut pairs = vec![(k - 1, m)];
                for d in 1..=(m - 1) / 2 {
                    let a = (k - 1 + d) % m;
                    let b = (k - 1 + m - d) % m;
                    pairs.push((a.min(b), a.max(b)));
                }
                OneFactor::from_edges(n, &pairs).unwrap()
            })
            .collect();
        let f = Factorisation::new(order.get(), factors).unwrap();
        let line = emit_line(&f);
        assert!(line.starts_with("0-"));
        assert_eq!(parse_line(&line).unwrap(), f);
    }
}
