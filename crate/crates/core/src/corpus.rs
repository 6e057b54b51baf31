//! The diagrams the verification suites run over: braid closures, torus
//! products of geodesic multicurves, and kink chains.

use crate::diagram::geodesic::{GeodesicLayer, GeodesicStack};
use crate::diagram::{from_braid, kink_chain, MarkedDiagram};
use crate::Result;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub diagram: MarkedDiagram,
}

/// Primitive torus classes used for products.
pub const TORUS_CLASSES: [(i64, i64); 8] = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1)];

/// Every word in the generators of the braid group on `strands` strands of
/// length at most `max_len`, shortest first.
pub fn braid_words(strands: u32, max_len: usize) -> Vec<Vec<i32>> {
    let letters: Vec<i32> = (1..strands as i32).flat_map(|i| [i, -i]).collect();
    let mut out = vec![vec![]];
    if letters.is_empty() {
        return out;
    }
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = vec![];
        for w in &frontier {
            for &g in &letters {
                let mut v: Vec<i32> = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn braid_entries(max_strands: u32, max_len: usize) -> Result<Vec<CorpusEntry>> {
    let mut out = vec![];
    for n in 1..=max_strands {
        for w in braid_words(n, max_len) {
            out.push(CorpusEntry { name: format!("braid {n} {w:?}"), diagram: from_braid(n, &w)? });
        }
    }
    Ok(out)
}

/// `(n, alpha, m, beta)` with `n alpha` stacked over `m beta`.
pub type TorusProduct = (usize, (i64, i64), usize, (i64, i64));

pub fn torus_products(max_copies: usize, max_det: i64) -> Vec<TorusProduct> {
    let mut out = vec![];
    for &a in &TORUS_CLASSES {
        for &b in &TORUS_CLASSES {
            if (a.0 * b.1 - a.1 * b.0).abs() > max_det {
                continue;
            }
            for n in 1..=max_copies {
                for m in 1..=max_copies {
                    out.push((n, a, m, b));
                }
            }
        }
    }
    out
}

/// Geodesic stack of a strong product.
pub fn product_stack(&(n, a, m, b): &TorusProduct) -> Result<GeodesicStack> {
    let mut stack = GeodesicStack::new();
    stack.push_layer(GeodesicLayer::new(a, n)?, &[]);
    stack.push_layer(GeodesicLayer::new(b, m)?, &[0]);
    Ok(stack)
}

pub fn torus_entries(max_copies: usize, max_det: i64) -> Result<Vec<CorpusEntry>> {
    torus_products(max_copies, max_det)
        .iter()
        .map(|t @ (n, a, m, b)| {
            Ok(CorpusEntry { name: format!("torus {n}{a:?} over {m}{b:?}"), diagram: product_stack(t)?.build()? })
        })
        .collect()
}

pub fn kink_entries(max: u32) -> Vec<CorpusEntry> {
    (0..=max).map(|i| CorpusEntry { name: format!("kinks {i}"), diagram: kink_chain(i) }).collect()
}

/// Size limits of the corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub max_strands: u32,
    pub max_braid_len: usize,
    pub max_copies: usize,
    pub max_det: i64,
    pub max_kinks: u32,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        Self { max_strands: 3, max_braid_len: 6, max_copies: 2, max_det: 3, max_kinks: 5 }
    }
}

impl CorpusSpec {
    /// A corpus small enough for smoke tests.
    pub fn small() -> Self {
        Self { max_strands: 3, max_braid_len: 3, max_copies: 1, max_det: 2, max_kinks: 3 }
    }

    pub fn build(&self) -> Result<Vec<CorpusEntry>> {
        let mut out = braid_entries(self.max_strands, self.max_braid_len)?;
        out.extend(torus_entries(self.max_copies, self.max_det)?);
        out.extend(kink_entries(self.max_kinks));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_counts() {
        assert_eq!(braid_words(1, 6), vec![Vec::<i32>::new()]);
        assert_eq!(braid_words(2, 6).len(), 127);
        assert_eq!(braid_words(3, 2).len(), 1 + 4 + 16);
    }

    #[test]
    fn products_respect_determinant() {
        let products = torus_products(2, 3);
        assert!(products.iter().all(|(_, a, _, b)| (a.0 * b.1 - a.1 * b.0).abs() <= 3));
        assert!(products.contains(&(2, (1, 2), 2, (2, 1))));
        assert!(!products.iter().any(|(_, a, _, b)| *a == (1, 2) && *b == (1, -2)));
        let e = torus_entries(2, 3).unwrap();
        let max = e.iter().map(|e| e.diagram.crossing_count()).max().unwrap();
        assert_eq!(max, 12);
    }
}
