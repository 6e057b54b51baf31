//! Resolution operators on formal sums of marked diagrams, and the loop
//! projections back to curve systems.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::bracket::loop_histogram;
use crate::diagram::{smooth, CrossingId, KState, MarkedDiagram};
use crate::exactalg::{c_map, int, phi_coeff, pi_k, rational::sign_pow, PolyZW, Rational};
use crate::surface::SkeinVector;
use crate::{Error, Exec, Result};

/// A finite rational combination of marked diagrams, compared structurally.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalDiagramSum {
    terms: BTreeMap<MarkedDiagram, Rational>,
}

impl FormalDiagramSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_diagram(d: MarkedDiagram) -> Self {
        Self::from_term(int(1), d)
    }

    pub fn from_term(coeff: Rational, d: MarkedDiagram) -> Self {
        let mut s = Self::zero();
        s.add_term(coeff, d);
        s
    }

    pub fn add_term(&mut self, coeff: Rational, d: MarkedDiagram) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(d);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &MarkedDiagram)> {
        self.terms.iter().map(|(d, c)| (c, d))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, d) in other.terms() {
            out.add_term(c.clone(), d.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (x, d) in self.terms() {
            out.add_term(x * c, d.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    /// Every diagram with all of its crossings marked.
    pub fn promote(&self) -> Self {
        let mut out = Self::zero();
        for (c, d) in self.terms() {
            out.add_term(c.clone(), d.promote());
        }
        out
    }
}

impl FromIterator<(Rational, MarkedDiagram)> for FormalDiagramSum {
    fn from_iter<I: IntoIterator<Item = (Rational, MarkedDiagram)>>(iter: I) -> Self {
        let mut s = Self::zero();
        for (c, d) in iter {
            s.add_term(c, d);
        }
        s
    }
}

impl fmt::Display for FormalDiagramSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, d) in self.terms() {
            writeln!(f, "{c}\t{} crossings, {} marked, loops {:?}", d.crossing_count(), d.marked().len(), d.free_loops())?;
        }
        Ok(())
    }
}

/// Calls `f` with every `m`-element subset of `0..n` as a bitmask, in
/// increasing numeric order.
pub(crate) fn for_each_subset(n: usize, m: usize, mut f: impl FnMut(u64)) {
    if m > n {
        return;
    }
    if m == 0 {
        f(0);
        return;
    }
    let mut s: u64 = (1u64 << m) - 1;
    let limit = 1u64 << n;
    while s < limit {
        f(s);
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
}

pub(crate) fn select(ids: &[CrossingId], mask: u64) -> Vec<CrossingId> {
    ids.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, c)| *c).collect()
}

/// Applies the resolution operator of `p` to `[D, C]`.
///
/// For each degree `m`, every `m`-element subset `T` of the marked set and
/// every marker assignment on `T` contributes `(-1)^m a_{i, m-i} [D(sigma), C \ T]`,
/// where `i` counts infinity-markers and `a_{i,j}` is the coefficient of
/// `z^i w^j` in `p`.
pub fn chi_apply(p: &PolyZW, d: &MarkedDiagram) -> Result<FormalDiagramSum> {
    let marked: Vec<CrossingId> = d.marked().iter().copied().collect();
    let image = c_map(p);
    let mut out = FormalDiagramSum::zero();
    let top = p.degree().unwrap_or(0).min(marked.len() as u32);
    for m in 0..=top {
        let weights = pi_k(&image, m);
        if weights.is_zero() {
            continue;
        }
        let sign = sign_pow(m as usize);
        let mut failure = None;
        for_each_subset(marked.len(), m as usize, |subset| {
            if failure.is_some() {
                return;
            }
            let t = select(&marked, subset);
            for markers in 0..1u64 << m {
                let w = weights.weight(markers.count_ones() as usize);
                if w.is_zero() {
                    continue;
                }
                match smooth(d, &KState::from_mask(&t, markers)) {
                    Ok(sm) => out.add_term(&sign * w, sm),
                    Err(e) => failure = Some(e),
                }
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
    }
    Ok(out)
}

/// Linear extension of [`chi_apply`].
pub fn chi_apply_sum(p: &PolyZW, s: &FormalDiagramSum) -> Result<FormalDiagramSum> {
    let mut out = FormalDiagramSum::zero();
    for (c, d) in s.terms() {
        out = out.add(&chi_apply(p, d)?.scale(c));
    }
    Ok(out)
}

/// The loop projection of order `j`: trivial circles weighted by the
/// `h^{2j}` coefficient of `(-e^{2h} - e^{-2h})^mu`.
pub fn phi_table(j: usize) -> impl Fn(usize) -> Rational + Sync {
    move |mu| phi_coeff(j, mu)
}

/// `(-1)^{|C|}` times the full state sum with loop weight `phi(mu)`, over real diagrams.
pub fn phi_star(phi: impl Fn(usize) -> Rational + Sync, s: &FormalDiagramSum) -> Result<SkeinVector<Rational>> {
    phi_star_with(phi, s, Exec::default())
}

pub fn phi_star_with(
    phi: impl Fn(usize) -> Rational + Sync,
    s: &FormalDiagramSum,
    exec: Exec,
) -> Result<SkeinVector<Rational>> {
    let terms: Vec<(&Rational, &MarkedDiagram)> = s.terms().collect();
    if terms.iter().any(|(_, d)| !d.is_real()) {
        return Err(Error::NotRealDiagram);
    }
    let parts = exec.map(&terms, |(c, d)| project_one(&phi, c, d))?;
    let mut out = SkeinVector::zero();
    for p in parts {
        out.add_assign(&p);
    }
    Ok(out)
}

fn project_one(phi: &impl Fn(usize) -> Rational, c: &Rational, d: &MarkedDiagram) -> Result<SkeinVector<Rational>> {
    let hist = loop_histogram(d, Exec::Sequential)?;
    let sign = sign_pow(d.crossing_count());
    let mut weights: BTreeMap<u32, Rational> = BTreeMap::new();
    let mut keys: Vec<_> = hist.into_iter().collect();
    keys.sort();
    let mut out = SkeinVector::zero();
    for ((class, mu), n) in keys {
        let w = weights.entry(mu).or_insert_with(|| phi(mu as usize)).clone();
        if w.is_zero() {
            continue;
        }
        out.add_term(class, &sign * c * w * int(n as i64));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{from_braid, kink_chain, Marker};
    use crate::exactalg::{phi0, rat};
    use crate::statesum::bracket::t0_bracket;
    use crate::surface::CurveClass;

    #[test]
    fn subsets_enumerated_once() {
        let mut seen = vec![];
        for_each_subset(5, 2, |s| seen.push(s));
        assert_eq!(seen.len(), 10);
        assert!(seen.iter().all(|s| s.count_ones() == 2));
        let mut none = 0;
        for_each_subset(2, 3, |_| none += 1);
        assert_eq!(none, 0);
    }

    #[test]
    fn constant_is_multiplication() {
        let d = from_braid(2, &[1, -1]).unwrap();
        let s = chi_apply(&PolyZW::constant(rat(5, 2)), &d).unwrap();
        assert_eq!(s, FormalDiagramSum::from_term(rat(5, 2), d));
    }

    #[test]
    fn first_order_operator_is_crossing_difference() {
        let d = from_braid(2, &[1, 1, -1]).unwrap();
        let p = &PolyZW::w() - &PolyZW::z();
        let mut expected = FormalDiagramSum::zero();
        for &c in d.crossings() {
            expected.add_term(int(-1), smooth(&d, &KState::single(c, Marker::Zero)).unwrap());
            expected.add_term(int(1), smooth(&d, &KState::single(c, Marker::Infinity)).unwrap());
        }
        assert_eq!(chi_apply(&p, &d).unwrap(), expected);
    }

    #[test]
    fn high_degree_vanishes() {
        let p = &PolyZW::w() * &PolyZW::z();
        assert!(chi_apply(&p, &kink_chain(1)).unwrap().is_empty());
    }

    #[test]
    fn phi0_projection_is_t0_bracket() {
        for d in [kink_chain(0), kink_chain(2), from_braid(3, &[1, 2, -1]).unwrap()] {
            let s = FormalDiagramSum::from_diagram(d.clone());
            assert_eq!(phi_star(phi0, &s).unwrap(), t0_bracket(&d).unwrap());
        }
        let loop_only = FormalDiagramSum::from_diagram(kink_chain(0));
        assert_eq!(phi_star(phi0, &loop_only).unwrap(), SkeinVector::from_term(CurveClass::Empty, int(-2)));
    }

    #[test]
    fn partial_marking_rejected() {
        let d = kink_chain(2).with_marked([0].into()).unwrap();
        let s = FormalDiagramSum::from_diagram(d);
        assert!(matches!(phi_star(phi0, &s), Err(Error::NotRealDiagram)));
    }
}
