//! Structural identities of the resolution operators.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::bracket::{bracket, bracket_order};
use super::chi::{chi_apply, chi_apply_sum, for_each_subset, phi_star, select, FormalDiagramSum};
use crate::diagram::geodesic::{GeodesicLayer, GeodesicStack, ProductMode};
use crate::diagram::{smooth, tau, CrossingId, KState, MarkedDiagram, Marker};
use crate::exactalg::rational::{binomial, from_big, sign_pow};
use crate::exactalg::{c_map, phi0, pi_k, LaurentPoly, PolyZW, Rational};
use crate::report::Report;
use crate::surface::SkeinVector;
use crate::{Error, Result};

/// Left side of the skein relation for the resolution operators:
/// `chi_P(D_+ - D_0 - D_inf) + chi_{(P - a_k z^k)/w}(D_0) + chi_{(P - a_0 w^k)/z}(D_inf)`.
///
/// `D_0` and `D_inf` are the smoothings of `d_plus` at `plus`, carrying the
/// marked set minus `plus`. The sum cancels exactly when `|C| = deg P`.
pub fn skein_relation_residual(p: &PolyZW, d_plus: &MarkedDiagram, plus: CrossingId) -> Result<FormalDiagramSum> {
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous(p.to_string()));
    }
    if !d_plus.marked().contains(&plus) {
        return Err(Error::StateOutsideMarkedSet);
    }
    let k = p.degree().unwrap_or(0);
    let d0 = smooth(d_plus, &KState::single(plus, Marker::Zero))?;
    let dinf = smooth(d_plus, &KState::single(plus, Marker::Infinity))?;
    let top_z = PolyZW::monomial(k, 0, p.coeff(k, 0));
    let top_w = PolyZW::monomial(0, k, p.coeff(0, k));
    let q0 = (p - &top_z).div_w().expect("remaining terms carry w");
    let qinf = (p - &top_w).div_z().expect("remaining terms carry z");
    let mut out = chi_apply(p, d_plus)?;
    out = out.sub(&chi_apply(p, &d0)?);
    out = out.sub(&chi_apply(p, &dinf)?);
    out = out.add(&chi_apply(&q0, &d0)?);
    out = out.add(&chi_apply(&qinf, &dinf)?);
    Ok(out)
}

/// Inputs for [`axiom_checks`].
#[derive(Clone, Debug)]
pub struct AxiomInputs {
    pub diagram: MarkedDiagram,
    pub p: PolyZW,
    pub q: PolyZW,
    /// Geodesic stack of `diagram`, used to superpose an unmarked loop.
    pub stack: Option<GeodesicStack>,
    pub overlay: (i64, i64),
}

/// Divergence, grading, vacuum, composition and weak-product checks.
pub fn axiom_checks(inp: &AxiomInputs) -> Result<Report> {
    let mut report = Report::new("axioms");
    report.absorb(divergence_check(&inp.p, &inp.diagram)?);
    report.absorb(grading_check(&inp.p, &inp.diagram)?);
    report.absorb(vacuum_check(&inp.p, &inp.diagram)?);
    report.absorb(composition_check(&inp.p, &inp.q, &inp.diagram)?);
    if let Some(stack) = &inp.stack {
        report.absorb(weak_product_check(&inp.p, stack, inp.overlay)?);
    }
    Ok(report)
}

/// Each homogeneous part acts as the sum over subsets of that size, each
/// subset treated as the marked set with the rest of `C` re-marked afterwards.
pub fn divergence_check(p: &PolyZW, d: &MarkedDiagram) -> Result<Report> {
    let mut report = Report::new("divergence");
    let marked: Vec<CrossingId> = d.marked().iter().copied().collect();
    let top = p.degree().unwrap_or(0);
    for m in 0..=top {
        let part = p.homogeneous_part(m);
        if part.is_zero() {
            continue;
        }
        let whole = chi_apply(&part, d)?;
        let mut by_subset = FormalDiagramSum::zero();
        let mut err = None;
        for_each_subset(marked.len(), m as usize, |mask| {
            let t = select(&marked, mask);
            let rest: std::collections::BTreeSet<CrossingId> =
                marked.iter().copied().filter(|c| !t.contains(c)).collect();
            let run = || -> Result<FormalDiagramSum> {
                let restricted = d.with_marked(t.iter().copied().collect())?;
                let mut s = FormalDiagramSum::zero();
                for (c, sm) in chi_apply(&part, &restricted)?.terms() {
                    s.add_term(c.clone(), sm.with_marked(rest.clone())?);
                }
                Ok(s)
            };
            match run() {
                Ok(s) => by_subset = by_subset.add(&s),
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        report.check(whole == by_subset, || format!("degree {m} part does not split over subsets"));
    }
    Ok(report)
}

/// A homogeneous degree-`d` part lowers the marked count by `d`.
pub fn grading_check(p: &PolyZW, d: &MarkedDiagram) -> Result<Report> {
    let mut report = Report::new("grading");
    let m = d.marked().len();
    for deg in 0..=p.degree().unwrap_or(0) {
        let part = p.homogeneous_part(deg);
        if part.is_zero() {
            continue;
        }
        let out = chi_apply(&part, d)?;
        for (_, sm) in out.terms() {
            report.check(sm.marked().len() + deg as usize == m, || {
                format!("degree {deg}: {} marked crossings remain of {m}", sm.marked().len())
            });
        }
        if deg as usize > m {
            report.check(out.is_empty(), || format!("degree {deg} exceeds {m} marked crossings but acts"));
        }
    }
    Ok(report)
}

/// On the empty diagram only the constant term survives.
pub fn vacuum_check(p: &PolyZW, d: &MarkedDiagram) -> Result<Report> {
    let mut report = Report::new("vacuum");
    let empty = MarkedDiagram::empty(d.surface());
    let expected = FormalDiagramSum::from_term(p.coeff(0, 0), empty.clone());
    report.check(chi_apply(p, &empty)? == expected, || "non-constant terms act on the empty diagram".into());
    Ok(report)
}

/// `chi_P chi_Q` against `chi_{PQ}` after the order-0 loop projection.
pub fn composition_check(p: &PolyZW, q: &PolyZW, d: &MarkedDiagram) -> Result<Report> {
    let mut report = Report::new("composition");
    let lhs = phi_star(phi0, &chi_apply_sum(p, &chi_apply(q, d)?)?)?;
    let rhs = phi_star(phi0, &chi_apply(&(p * q), d)?)?;
    report.check(lhs == rhs, || format!("P = {p}, Q = {q}: composite\n{lhs}differs from product\n{rhs}"));
    Ok(report)
}

fn bracket_of_sum(s: &FormalDiagramSum) -> Result<SkeinVector<LaurentPoly>> {
    let mut out = SkeinVector::zero();
    for (c, d) in s.terms() {
        out.add_assign(&bracket(&d.promote())?.map_coeffs(|l| l.scale(c)));
    }
    Ok(out)
}

/// An unmarked loop stacked over or under `[D, C]` commutes with `chi_P`.
pub fn weak_product_check(p: &PolyZW, stack: &GeodesicStack, overlay: (i64, i64)) -> Result<Report> {
    let mut report = Report::new("weak product");
    let base = stack.with_explicit_levels();
    let (d, d_sites) = base.build_with_sites()?;
    let mut loop_stack = GeodesicStack::new();
    let levels = crate::diagram::geodesic::default_levels(base.layers().len() + 3, 1);
    loop_stack.push_layer(GeodesicLayer::with_levels(overlay, levels)?, &[]);
    let image = c_map(p);
    for (label, upper, lower) in [("over", &loop_stack, &base), ("under", &base, &loop_stack)] {
        let (g, g_sites) = GeodesicStack::stacked(upper, lower, ProductMode::Weak).build_with_sites()?;
        let by_point: BTreeMap<_, CrossingId> =
            g_sites.iter().enumerate().map(|(i, s)| (s.point.clone(), i as CrossingId)).collect();
        let transport: BTreeMap<CrossingId, CrossingId> =
            d_sites.iter().enumerate().map(|(i, s)| (i as CrossingId, by_point[&s.point])).collect();
        let image_marked: std::collections::BTreeSet<CrossingId> = d.marked().iter().map(|c| transport[c]).collect();
        if !report.check(g.marked() == &image_marked, || format!("{label}: stacking changed the marked set")) {
            continue;
        }
        let lhs = bracket_of_sum(&chi_apply(p, &g)?)?;
        // smooth the transported states directly
        let marked: Vec<CrossingId> = d.marked().iter().copied().collect();
        let mut rhs_sum = FormalDiagramSum::zero();
        for m in 0..=p.degree().unwrap_or(0).min(marked.len() as u32) {
            let weights = pi_k(&image, m);
            let mut states = vec![];
            for_each_subset(marked.len(), m as usize, |mask| states.push(select(&marked, mask)));
            for t in states {
                let moved: Vec<CrossingId> = t.iter().map(|c| transport[c]).collect();
                for markers in 0..1u64 << m {
                    let w = weights.weight(markers.count_ones() as usize);
                    if !w.is_zero() {
                        rhs_sum.add_term(sign_pow(m as usize) * w, smooth(&g, &KState::from_mask(&moved, markers))?);
                    }
                }
            }
        }
        let rhs = bracket_of_sum(&rhs_sum)?;
        report.check(lhs == rhs, || format!("{label}: operator does not commute with the unmarked loop"));
    }
    Ok(report)
}

/// For homogeneous `P = sum a_l z^l w^{i-l}` on a chain of `i` kinks, the
/// smoothings with `l` infinity-markers all coincide and collect
/// `(-1)^i C(i, l) a_l`; the order-0 projection is nonzero when `P` is.
pub fn injectivity_witness(p: &PolyZW, chain: &MarkedDiagram) -> Result<Report> {
    let i = chain.crossing_count() as u32;
    let mut report = Report::new(format!("injectivity on {i} kinks"));
    if !p.is_homogeneous() || p.degree() != Some(i) {
        return Err(Error::NotHomogeneous(p.to_string()));
    }
    let out = chi_apply(p, chain)?;
    let mut by_loops: BTreeMap<usize, Rational> = BTreeMap::new();
    for (c, d) in out.terms() {
        report.check(d.crossing_count() == 0, || "smoothing left crossings".into());
        *by_loops.entry(d.free_loops().len()).or_insert_with(Rational::zero) += c;
    }
    for l in 0..=i {
        let expected = sign_pow(i as usize) * from_big(binomial(i as usize, l as usize)) * p.coeff(l, i - l);
        let got = by_loops.get(&(l as usize + 1)).cloned().unwrap_or_else(Rational::zero);
        report.check(got == expected, || format!("{l} infinity-markers: coefficient {got}, expected {expected}"));
    }
    let projected = phi_star(phi0, &out)?;
    report.check(!projected.is_zero() || p.is_zero(), || "order-0 projection vanishes".into());
    Ok(report)
}

/// `bracket(tau D)(t) = bracket(D)(1/t)` and `<tau D>_j = (-1)^j <D>_j` for `j <= k`.
pub fn mirror_symmetry_check(d: &MarkedDiagram, k: usize) -> Result<Report> {
    let mut report = Report::new("mirror symmetry");
    let m = tau(d);
    let b = bracket(d)?;
    let bm = bracket(&m)?;
    report.check(bm == b.map_coeffs(LaurentPoly::mirror), || "bracket of the mirror is not t -> 1/t".into());
    for j in 0..=k {
        let lhs = bracket_order(&m, j)?;
        let rhs = bracket_order(d, j)?.scale(&sign_pow(j));
        report.check(lhs == rhs, || format!("order {j}: sign rule fails"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{from_braid, kink_chain, superpose, torus_multicurve};
    use crate::exactalg::{int, rat};

    #[test]
    fn skein_relation_one_crossing() {
        let d = from_braid(1, &[]).unwrap();
        assert!(d.crossings().is_empty());
        let d = from_braid(2, &[1]).unwrap();
        let p = &PolyZW::w() - &PolyZW::z();
        assert!(skein_relation_residual(&p, &d, 0).unwrap().is_empty());
    }

    #[test]
    fn skein_relation_graded_piece() {
        let d = from_braid(3, &[1, 2, -1, 2]).unwrap();
        let p = PolyZW::from_terms([((0, 2), int(3)), ((1, 1), rat(-1, 2)), ((2, 0), int(2))]);
        let d = d.with_marked([1, 3].into()).unwrap();
        assert!(skein_relation_residual(&p, &d, 3).unwrap().is_empty());
    }

    #[test]
    fn vacuum_constant() {
        let p = &PolyZW::constant(int(5)) + &PolyZW::z();
        let r = vacuum_check(&p, &kink_chain(0)).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn divergence_and_grading() {
        let d = from_braid(2, &[1, 1, 1]).unwrap();
        let p = &(&PolyZW::w() * &PolyZW::z()) + &PolyZW::w();
        assert!(divergence_check(&p, &d).unwrap().passed());
        assert!(grading_check(&p, &d).unwrap().passed());
        let deg1 = chi_apply(&PolyZW::w(), &d).unwrap();
        assert_eq!(deg1.len(), 3);
    }

    #[test]
    fn weak_product_torus() {
        let a = torus_multicurve(1, 1, 0).unwrap();
        let b = torus_multicurve(1, 0, 1).unwrap();
        let d = superpose(&a, &b, ProductMode::Strong).unwrap();
        let p = &PolyZW::w() - &PolyZW::z();
        let r = weak_product_check(&p, d.geometry().unwrap(), (1, 1)).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn injectivity_pattern() {
        for i in 1..=3u32 {
            let p = PolyZW::from_terms((0..=i).map(|l| ((l, i - l), int(l as i64 + 1))));
            let r = injectivity_witness(&p, &kink_chain(i)).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn mirror_kink() {
        assert!(mirror_symmetry_check(&kink_chain(1), 3).unwrap().passed());
        assert!(mirror_symmetry_check(&from_braid(2, &[1, 1, 1]).unwrap(), 4).unwrap().passed());
    }
}
