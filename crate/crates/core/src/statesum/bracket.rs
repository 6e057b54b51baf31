//! The bracket state sum and its low-order oracles.

use std::collections::HashMap;

use crate::diagram::{classify_crossingless, smooth, KState, MarkedDiagram, Marker, ResolutionKernel, Scratch};
use crate::exactalg::{int, laurent_to_series, LaurentPoly, Rational, TruncSeries};
use crate::surface::{CurveClass, SkeinVector};
use crate::{Error, Exec, Result};

/// State counts keyed by resolved curve system and marker/loop statistics.
pub(crate) type Histogram<K> = HashMap<K, u64>;

fn merge<K: std::hash::Hash + Eq>(mut a: Histogram<K>, b: Histogram<K>) -> Histogram<K> {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, n) in b {
        *a.entry(k).or_insert(0) += n;
    }
    a
}

/// Counts full states of a real diagram by `(class, infinity count, trivial circles)`.
pub(crate) fn state_histogram(d: &MarkedDiagram, exec: Exec) -> Result<Histogram<(CurveClass, u32, u32)>> {
    if !d.is_real() {
        return Err(Error::NotRealDiagram);
    }
    let kernel = ResolutionKernel::new(d);
    let c = kernel.crossing_count();
    if c >= 63 {
        return Err(Error::MalformedDiagram(format!("{c} crossings is beyond full state enumeration")));
    }
    exec.fold_range(
        1u64 << c,
        |range| {
            let mut scratch = Scratch::default();
            let mut hist = Histogram::new();
            for mask in range {
                let (mu, class) = kernel.resolve(mask, &mut scratch)?;
                *hist.entry((class, mask.count_ones(), mu as u32)).or_insert(0) += 1;
            }
            Ok(hist)
        },
        merge,
    )
}

/// Counts full states by `(class, trivial circles)` only.
pub(crate) fn loop_histogram(d: &MarkedDiagram, exec: Exec) -> Result<Histogram<(CurveClass, u32)>> {
    let mut out = Histogram::new();
    for ((class, _, mu), n) in state_histogram(d, exec)? {
        *out.entry((class, mu)).or_insert(0) += n;
    }
    Ok(out)
}

/// `<D> = sum over states of (-t)^(zeta - iota) (-t^2 - t^-2)^mu D(sigma)`.
pub fn bracket(d: &MarkedDiagram) -> Result<SkeinVector<LaurentPoly>> {
    bracket_with(d, Exec::default())
}

pub fn bracket_with(d: &MarkedDiagram, exec: Exec) -> Result<SkeinVector<LaurentPoly>> {
    let hist = state_histogram(d, exec)?;
    let c = d.crossing_count() as i64;
    let max_mu = hist.keys().map(|k| k.2).max().unwrap_or(0) as usize;
    let mut loop_pows = vec![LaurentPoly::one()];
    for _ in 0..max_mu {
        let next = loop_pows.last().unwrap() * &LaurentPoly::loop_value();
        loop_pows.push(next);
    }
    let mut keys: Vec<_> = hist.into_iter().collect();
    keys.sort();
    let mut out = SkeinVector::zero();
    for ((class, iota, mu), n) in keys {
        let e = c - 2 * iota as i64;
        let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
        let term = &loop_pows[mu as usize].scale(&int(sign * n as i64)) * &LaurentPoly::monomial(e, int(1));
        out.add_term(class, term);
    }
    Ok(out)
}

/// Every bracket coefficient expanded under `t = e^h` up to `h^order`.
pub fn bracket_series(d: &MarkedDiagram, order: usize) -> Result<SkeinVector<TruncSeries>> {
    Ok(bracket(d)?.map_coeffs(|l| laurent_to_series(l, order)))
}

/// Coefficient of `h^k` in the bracket.
pub fn bracket_order(d: &MarkedDiagram, k: usize) -> Result<SkeinVector<Rational>> {
    Ok(bracket_series(d, k)?.map_coeffs(|s| s.coeff(k).clone()))
}

/// The bracket at `t = 1`, evaluated independently of the state sum by the
/// recursion `D_+ = -D_0 - D_inf` and `U = -2`.
pub fn t0_bracket(d: &MarkedDiagram) -> Result<SkeinVector<Rational>> {
    if !d.is_real() {
        return Err(Error::NotRealDiagram);
    }
    let mut out = SkeinVector::zero();
    t0_into(d, &int(1), &mut out)?;
    Ok(out)
}

fn t0_into(d: &MarkedDiagram, coeff: &Rational, out: &mut SkeinVector<Rational>) -> Result<()> {
    match d.crossings().iter().next() {
        None => {
            let (mu, class) = classify_crossingless(d)?;
            let weight = crate::exactalg::rational::pow(&int(-2), mu);
            out.add_term(class, coeff * weight);
        }
        Some(&c) => {
            let neg = -coeff;
            for m in Marker::all() {
                t0_into(&smooth(d, &KState::single(c, m))?, &neg, out)?;
            }
        }
    }
    Ok(())
}

/// `<D>_1 = sum over crossings p of <D_{p,inf}>_0 - <D_{p,0}>_0`.
pub fn bfk_first_order(d: &MarkedDiagram) -> Result<SkeinVector<Rational>> {
    if !d.is_real() {
        return Err(Error::NotRealDiagram);
    }
    let mut out = SkeinVector::zero();
    for &p in d.crossings() {
        out.add_assign(&t0_bracket(&smooth(d, &KState::single(p, Marker::Infinity))?)?);
        out = out.sub(&t0_bracket(&smooth(d, &KState::single(p, Marker::Zero))?)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{from_braid, kink_chain, superpose, torus_multicurve, ProductMode};
    use crate::surface::normalize_torus_class;

    fn delta() -> LaurentPoly {
        LaurentPoly::loop_value()
    }

    #[test]
    fn trivial_loop() {
        let b = bracket(&kink_chain(0)).unwrap();
        assert_eq!(b, SkeinVector::from_term(CurveClass::Empty, delta()));
        assert_eq!(bracket_order(&kink_chain(0), 0).unwrap(), SkeinVector::from_term(CurveClass::Empty, int(-2)));
        assert!(bracket_order(&kink_chain(0), 1).unwrap().is_zero());
    }

    #[test]
    fn one_kink() {
        let b = bracket(&kink_chain(1)).unwrap();
        let expected = &LaurentPoly::monomial(-3, int(1)) * &delta();
        assert_eq!(b, SkeinVector::from_term(CurveClass::Empty, expected));
    }

    #[test]
    fn one_torus_crossing() {
        let a = torus_multicurve(1, 1, 0).unwrap();
        let b = torus_multicurve(1, 0, 1).unwrap();
        let d = superpose(&a, &b, ProductMode::Strong).unwrap();
        let br = bracket(&d).unwrap();
        assert_eq!(br.len(), 2);
        let plus = normalize_torus_class(1, 1);
        let minus = normalize_torus_class(1, -1);
        let c0 = br.get(&plus).unwrap();
        let c1 = br.get(&minus).unwrap();
        let t = LaurentPoly::t();
        assert!((*c0 == -&t && *c1 == -&t.mirror()) || (*c1 == -&t && *c0 == -&t.mirror()));
        let first = bfk_first_order(&d).unwrap();
        assert_eq!(first, bracket_order(&d, 1).unwrap());
        assert_eq!(first.get(&plus).unwrap(), &-first.get(&minus).unwrap());
    }

    #[test]
    fn t0_agrees_with_state_sum() {
        for d in [kink_chain(2), from_braid(2, &[1, 1, 1]).unwrap(), from_braid(3, &[1, -2, 1, 2]).unwrap()] {
            assert_eq!(t0_bracket(&d).unwrap(), bracket_order(&d, 0).unwrap());
            assert_eq!(bfk_first_order(&d).unwrap(), bracket_order(&d, 1).unwrap());
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let d = from_braid(3, &[1, 2, -1, 2, 1, -2]).unwrap();
        assert_eq!(bracket_with(&d, Exec::Sequential).unwrap(), bracket_with(&d, Exec::Parallel).unwrap());
    }

    #[test]
    fn unmarked_rejected() {
        let d = from_braid(2, &[1]).unwrap().with_marked(Default::default()).unwrap();
        assert!(matches!(bracket(&d), Err(Error::NotRealDiagram)));
    }
}
