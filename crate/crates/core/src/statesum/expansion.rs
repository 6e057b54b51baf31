//! The order-by-order expansion of the bracket through resolution operators.

use std::collections::HashMap;

use num_traits::Zero;

use super::bracket::{loop_histogram, Histogram};
use super::chi::{chi_apply, for_each_subset, phi_star, phi_table, select};
use super::poly::derive_p;
use crate::diagram::{smooth, CrossingId, KState, MarkedDiagram};
use crate::exactalg::{c_map, int, phi_coeff, pi_k, rational::sign_pow, Rational};
use crate::surface::{CurveClass, SkeinVector};
use crate::{Error, Exec, Result};

/// `sum_j (phi_j)_* chi(P_{k-2j})(D)`, built literally from the operators.
pub fn expansion(d: &MarkedDiagram, k: usize) -> Result<SkeinVector<Rational>> {
    if !d.is_real() {
        return Err(Error::NotRealDiagram);
    }
    let mut out = SkeinVector::zero();
    for j in 0..=k / 2 {
        let p = derive_p(k - 2 * j)?;
        out.add_assign(&phi_star(phi_table(j), &chi_apply(&p, d)?)?);
    }
    Ok(out)
}

/// All smoothings `[D(sigma), C \ T]` with `|T| <= max_order`, projected to
/// loop statistics once and reused for every order and polynomial.
///
/// Entries are keyed by `(|T|, infinity-markers on T)`; the histograms count
/// full states of the smoothed diagram by `(class, trivial circles)`.
pub struct ExpansionTable {
    crossings: usize,
    max_order: usize,
    entries: HashMap<(u32, u32), Histogram<(CurveClass, u32)>>,
}

impl ExpansionTable {
    pub fn new(d: &MarkedDiagram, max_order: usize, exec: Exec) -> Result<Self> {
        if !d.is_real() {
            return Err(Error::NotRealDiagram);
        }
        let ids: Vec<CrossingId> = d.crossings().iter().copied().collect();
        let mut subsets = vec![];
        for m in 0..=max_order.min(ids.len()) {
            for_each_subset(ids.len(), m, |s| subsets.push(s));
        }
        let parts = exec.map(&subsets, |&subset| {
            let t = select(&ids, subset);
            let m = t.len() as u32;
            let mut local: Vec<((u32, u32), Histogram<(CurveClass, u32)>)> = vec![];
            for markers in 0..1u64 << m {
                let sm = smooth(d, &KState::from_mask(&t, markers))?;
                local.push(((m, markers.count_ones()), loop_histogram(&sm, Exec::Sequential)?));
            }
            Ok(local)
        })?;
        let mut entries: HashMap<(u32, u32), Histogram<(CurveClass, u32)>> = HashMap::new();
        for (key, hist) in parts.into_iter().flatten() {
            let slot = entries.entry(key).or_default();
            for (k, n) in hist {
                *slot.entry(k).or_insert(0) += n;
            }
        }
        Ok(Self { crossings: ids.len(), max_order, entries })
    }

    /// `<D>_k` through the operator formula.
    pub fn order(&self, k: usize) -> Result<SkeinVector<Rational>> {
        assert!(k <= self.max_order, "table built to order {}", self.max_order);
        let mut acc: HashMap<CurveClass, Rational> = HashMap::new();
        for j in 0..=k / 2 {
            let image = c_map(&derive_p(k - 2 * j)?);
            for (&(m, iota), hist) in &self.entries {
                let weights = pi_k(&image, m);
                let w = weights.weight(iota as usize);
                if w.is_zero() {
                    continue;
                }
                // (-1)^m from the operator, (-1)^(c-m) from the projection
                let outer = sign_pow(self.crossings) * w;
                for ((class, mu), n) in hist {
                    let phi = phi_coeff(j, *mu as usize);
                    if phi.is_zero() {
                        continue;
                    }
                    *acc.entry(class.clone()).or_insert_with(Rational::zero) += &outer * phi * int(*n as i64);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(terms.into_iter().collect())
    }
}

/// `<D>_0, ..., <D>_max_order` through the operator formula.
pub fn expansion_series(d: &MarkedDiagram, max_order: usize, exec: Exec) -> Result<Vec<SkeinVector<Rational>>> {
    let table = ExpansionTable::new(d, max_order, exec)?;
    (0..=max_order).map(|k| table.order(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{from_braid, kink_chain, superpose, torus_multicurve, ProductMode};
    use crate::statesum::bracket::{bfk_first_order, bracket_order, t0_bracket};

    #[test]
    fn low_orders_match_oracles() {
        let d = from_braid(3, &[1, -2, 1]).unwrap();
        assert_eq!(expansion(&d, 0).unwrap(), t0_bracket(&d).unwrap());
        assert_eq!(expansion(&d, 1).unwrap(), bfk_first_order(&d).unwrap());
    }

    #[test]
    fn kink_chain_second_order() {
        let d = kink_chain(2);
        assert_eq!(expansion(&d, 2).unwrap(), bracket_order(&d, 2).unwrap());
    }

    #[test]
    fn table_matches_literal_formula() {
        let a = torus_multicurve(1, 1, 0).unwrap();
        let b = torus_multicurve(2, 1, 1).unwrap();
        let d = superpose(&a, &b, ProductMode::Strong).unwrap();
        let series = expansion_series(&d, 4, Exec::Sequential).unwrap();
        for (k, v) in series.iter().enumerate() {
            assert_eq!(v, &expansion(&d, k).unwrap(), "order {k}");
            assert_eq!(v, &bracket_order(&d, k).unwrap(), "order {k}");
        }
    }

    #[test]
    fn third_order_on_one_kink() {
        let d = kink_chain(1);
        assert_eq!(expansion(&d, 3).unwrap(), bracket_order(&d, 3).unwrap());
    }
}
