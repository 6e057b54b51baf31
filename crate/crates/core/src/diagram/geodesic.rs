//! Torus diagrams realized by straight lines in `R^2 / Z^2`.
//!
//! A primitive class `(p, q)` and a level `f` determine the closed geodesic
//! `{x : q x_1 - p x_2 = f mod 1}`. Lines of one layer are parallel copies;
//! earlier layers lie over later ones. Crossing ids follow the lexicographic
//! order of the intersection points in `[0,1)^2`, and edge labels count
//! signed crossings of the walls `x_1 = 0` and `x_2 = 0`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{CrossingId, Edge, Endpoint, MarkedDiagram};
use crate::exactalg::{rat, Rational};
use crate::surface::{HomologyClass, SurfaceSpec};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMode {
    /// New crossings stay unmarked.
    Weak,
    /// New crossings join the marked set.
    Strong,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicLayer {
    pub class: (i64, i64),
    pub levels: Vec<Rational>,
    /// Levels were chosen by the caller; otherwise they follow the layer index.
    pub explicit: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeodesicStack {
    layers: Vec<GeodesicLayer>,
    marked_pairs: BTreeSet<(usize, usize)>,
    trivial_loops: usize,
    mirrored: bool,
}

type Point = (Rational, Rational);

/// Intersection data of a built stack, indexed by crossing id.
#[derive(Clone, Debug)]
pub struct CrossingSite {
    pub point: Point,
    pub upper: usize,
    pub lower: usize,
}

fn frac(q: &Rational) -> Rational {
    q - q.floor()
}

fn floor_i64(q: &Rational) -> i64 {
    q.floor().to_integer().to_i64().expect("wall count fits in i64")
}

// Decimal expansions of sqrt(2), sqrt(3), sqrt(5), ... keep default levels
// free of short integer relations, so three lines rarely meet in one point.
const LEVEL_SEEDS: [i64; 8] = [
    414_213_562, 732_050_807, 236_067_977, 645_751_311, 316_624_790, 605_551_275, 123_105_625,
    872_983_346,
];

/// Default levels for `copies` parallel lines in layer `index`.
pub fn default_levels(index: usize, copies: usize) -> Vec<Rational> {
    let seed = LEVEL_SEEDS[index % LEVEL_SEEDS.len()] + 7_919 * (index / LEVEL_SEEDS.len()) as i64;
    let base = rat(seed, 1_000_000_000);
    (0..copies).map(|i| frac(&(&base + rat(i as i64, copies as i64)))).collect()
}

impl GeodesicLayer {
    pub fn new(class: (i64, i64), copies: usize) -> Result<Self> {
        check_primitive(class)?;
        Ok(Self { class, levels: default_levels(0, copies), explicit: false })
    }

    pub fn with_levels(class: (i64, i64), levels: Vec<Rational>) -> Result<Self> {
        check_primitive(class)?;
        Ok(Self { class, levels: levels.iter().map(frac).collect(), explicit: true })
    }

    pub fn copies(&self) -> usize {
        self.levels.len()
    }
}

fn check_primitive((p, q): (i64, i64)) -> Result<()> {
    if p.gcd(&q) != 1 {
        return Err(Error::NonPrimitiveClass(p, q));
    }
    Ok(())
}

impl GeodesicStack {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a layer underneath the existing ones. `marked_against` lists the
    /// earlier layers whose crossings with the new layer are marked.
    pub fn push_layer(&mut self, mut layer: GeodesicLayer, marked_against: &[usize]) {
        let idx = self.layers.len();
        if !layer.explicit {
            layer.levels = default_levels(idx, layer.copies());
        }
        for &upper in marked_against {
            self.marked_pairs.insert((upper, idx));
        }
        self.layers.push(layer);
    }

    /// The same stack with its current levels pinned, so restacking keeps them.
    pub fn with_explicit_levels(&self) -> Self {
        let mut out = self.clone();
        out.layers.iter_mut().for_each(|l| l.explicit = true);
        out
    }

    pub fn add_trivial_loops(&mut self, n: usize) {
        self.trivial_loops += n;
    }

    pub fn layers(&self) -> &[GeodesicLayer] {
        &self.layers
    }

    pub fn is_mirrored(&self) -> bool {
        self.mirrored
    }

    pub(crate) fn mirrored(&self) -> Self {
        Self { mirrored: !self.mirrored, ..self.clone() }
    }

    /// Levels are preserved by unimodular maps; only directions move.
    pub(crate) fn transformed(&self, m: [[i64; 2]; 2]) -> Self {
        let mut out = self.clone();
        for layer in &mut out.layers {
            let (p, q) = layer.class;
            layer.class = (m[0][0] * p + m[0][1] * q, m[1][0] * p + m[1][1] * q);
        }
        out
    }

    /// `upper` stacked over `lower`.
    pub fn stacked(upper: &Self, lower: &Self, mode: ProductMode) -> Self {
        let mut out = upper.clone();
        let shift = upper.layers.len();
        for (i, layer) in lower.layers.iter().enumerate() {
            let marked: Vec<usize> = match mode {
                ProductMode::Strong => (0..shift).collect(),
                ProductMode::Weak => vec![],
            };
            out.push_layer(layer.clone(), &marked);
            let _ = i;
        }
        for &(a, b) in &lower.marked_pairs {
            out.marked_pairs.insert((a + shift, b + shift));
        }
        out.trivial_loops += lower.trivial_loops;
        out
    }

    /// Builds the diagram; every crossing between marked layer pairs is marked.
    pub fn build(&self) -> Result<MarkedDiagram> {
        Ok(self.build_with_sites()?.0)
    }

    pub fn build_with_sites(&self) -> Result<(MarkedDiagram, Vec<CrossingSite>)> {
        if self.mirrored {
            return Err(Error::UnsupportedSuperposition("mirrored geodesic stack".into()));
        }
        struct Line {
            layer: usize,
            dir: (i64, i64),
            origin: Point,
            bezout_dual: (i64, i64),
        }
        let mut lines = vec![];
        for (li, layer) in self.layers.iter().enumerate() {
            let (p, q) = layer.class;
            // e with q e1 - p e2 = 1, g with g1 p + g2 q = 1
            let (e1, e2) = bezout(q, -p);
            let (g1, g2) = bezout(p, q);
            for f in &layer.levels {
                lines.push(Line {
                    layer: li,
                    dir: (p, q),
                    origin: (f * Rational::from_integer(e1.into()), f * Rational::from_integer(e2.into())),
                    bezout_dual: (g1, g2),
                });
            }
        }
        // coincident lines
        for (i, a) in lines.iter().enumerate() {
            for b in &lines[i + 1..] {
                if a.dir == b.dir || a.dir == (-b.dir.0, -b.dir.1) {
                    let fa = level_of(a.dir, &a.origin);
                    let fb = level_of(a.dir, &b.origin);
                    if frac(&(fa - fb)).is_zero() {
                        return Err(Error::UnsupportedSuperposition(
                            "two geodesics coincide; choose distinct levels".into(),
                        ));
                    }
                }
            }
        }
        let mut sites: Vec<(Point, usize, usize)> = vec![];
        for (i, a) in lines.iter().enumerate() {
            for (j, b) in lines.iter().enumerate().skip(i + 1) {
                if a.layer == b.layer {
                    continue;
                }
                for pt in intersections(a.dir, &a.origin, b.dir, &b.origin) {
                    sites.push((pt, i, j));
                }
            }
        }
        sites.sort_by(|x, y| x.0.cmp(&y.0));
        if sites.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::UnsupportedSuperposition(
                "three geodesics meet in one point; choose other levels".into(),
            ));
        }
        // per line: (parameter, crossing id)
        let mut along: Vec<Vec<(Rational, CrossingId)>> = vec![vec![]; lines.len()];
        for (cid, (pt, i, j)) in sites.iter().enumerate() {
            for &l in [i, j] {
                let line = &lines[l];
                let v = (&pt.0 - &line.origin.0, &pt.1 - &line.origin.1);
                let (g1, g2) = line.bezout_dual;
                let u = frac(&(&v.0 * Rational::from_integer(g1.into()) + &v.1 * Rational::from_integer(g2.into())));
                along[l].push((u, cid as CrossingId));
            }
        }
        let port = |l: usize, cid: usize, forward: bool| -> u8 {
            let (_, upper, lower) = &sites[cid];
            if l == *upper {
                if forward { 0 } else { 2 }
            } else {
                let du = lines[*upper].dir;
                let dl = lines[*lower].dir;
                let ccw = du.0 * dl.1 - du.1 * dl.0 > 0;
                match (ccw, forward) {
                    (true, true) | (false, false) => 1,
                    _ => 3,
                }
            }
        };
        let mut edges = vec![];
        let mut free_loops = vec![HomologyClass::Pair(0, 0); self.trivial_loops];
        for (l, pts) in along.iter_mut().enumerate() {
            let line = &lines[l];
            if pts.is_empty() {
                free_loops.push(HomologyClass::Pair(line.dir.0, line.dir.1));
                continue;
            }
            pts.sort();
            let lift = |u: &Rational| {
                (
                    floor_i64(&(&line.origin.0 + u * Rational::from_integer(line.dir.0.into()))),
                    floor_i64(&(&line.origin.1 + u * Rational::from_integer(line.dir.1.into()))),
                )
            };
            let n = pts.len();
            for k in 0..n {
                let (ua, ca) = &pts[k];
                let (ub, cb) = &pts[(k + 1) % n];
                let ub = if k + 1 == n { ub + Rational::from_integer(1.into()) } else { ub.clone() };
                let (a0, a1) = lift(ua);
                let (b0, b1) = lift(&ub);
                edges.push(Edge {
                    id: edges.len() as u32,
                    tail: Endpoint::port(*ca, port(l, *ca as usize, true)),
                    head: Endpoint::port(*cb, port(l, *cb as usize, false)),
                    h: HomologyClass::Pair(b0 - a0, b1 - a1),
                });
            }
        }
        let crossings: BTreeSet<CrossingId> = (0..sites.len() as CrossingId).collect();
        let marked: BTreeSet<CrossingId> = sites
            .iter()
            .enumerate()
            .filter(|(_, (_, i, j))| self.marked_pairs.contains(&(lines[*i].layer, lines[*j].layer)))
            .map(|(c, _)| c as CrossingId)
            .collect();
        let edge_map: BTreeMap<_, _> = edges.into_iter().map(|e| (e.id, e)).collect();
        let mut d = MarkedDiagram::from_parts(SurfaceSpec::Torus, crossings, edge_map, free_loops, marked);
        d.validate()?;
        d.set_geometry(Some(Arc::new(self.clone())));
        let sites = sites
            .into_iter()
            .map(|(point, i, j)| CrossingSite { point, upper: lines[i].layer, lower: lines[j].layer })
            .collect();
        Ok((d, sites))
    }
}

/// Integers `(x, y)` with `a x + b y = 1`; `a, b` coprime.
fn bezout(a: i64, b: i64) -> (i64, i64) {
    let e = a.extended_gcd(&b);
    let s = if e.gcd < 0 { -1 } else { 1 };
    (s * e.x, s * e.y)
}

fn level_of(dir: (i64, i64), x: &Point) -> Rational {
    &x.0 * Rational::from_integer(dir.1.into()) - &x.1 * Rational::from_integer(dir.0.into())
}

/// The `|det|` intersection points of two closed geodesics, reduced to `[0,1)^2`.
fn intersections(d1: (i64, i64), o1: &Point, d2: (i64, i64), o2: &Point) -> Vec<Point> {
    let det = d1.0 * d2.1 - d1.1 * d2.0;
    if det == 0 {
        return vec![];
    }
    // rows: x -> q x1 - p x2 for each line
    let (n11, n12, n21, n22) = (d1.1, -d1.0, d2.1, -d2.0);
    let ndet = Rational::from_integer(BigInt::from(n11 * n22 - n12 * n21));
    let f1 = level_of(d1, o1);
    let f2 = level_of(d2, o2);
    let mut out = BTreeSet::new();
    let r = |v: i64| Rational::from_integer(v.into());
    for a in 0..det.abs() {
        for b in 0..det.abs() {
            let y1 = &f1 + r(a);
            let y2 = &f2 + r(b);
            let x1 = (&y1 * r(n22) - &y2 * r(n12)) / &ndet;
            let x2 = (&y2 * r(n11) - &y1 * r(n21)) / &ndet;
            out.insert((frac(&x1), frac(&x2)));
        }
    }
    debug_assert_eq!(out.len() as i64, det.abs());
    out.into_iter().collect()
}

/// Geodesic data of a torus diagram: its recorded stack, or a one-layer stack
/// for a crossingless multicurve.
fn stack_of(d: &MarkedDiagram) -> Result<GeodesicStack> {
    if let Some(g) = d.geometry() {
        if g.is_mirrored() {
            return Err(Error::UnsupportedSuperposition("diagram is a mirrored stack".into()));
        }
        return Ok(g.clone());
    }
    if d.crossing_count() > 0 {
        return Err(Error::UnsupportedSuperposition(
            "torus diagram with crossings but no geodesic realization".into(),
        ));
    }
    let mut stack = GeodesicStack::new();
    let trivial = d.free_loops().iter().filter(|h| h.is_zero()).count();
    stack.add_trivial_loops(trivial);
    let essential: Vec<[i64; 2]> =
        d.free_loops().iter().filter(|h| !h.is_zero()).map(|h| h.to_vec()).collect();
    if let Some(&[p, q]) = essential.first() {
        if essential.iter().any(|v| *v != [p, q] && *v != [-p, -q]) {
            return Err(Error::UnsupportedSuperposition("free loops are not parallel".into()));
        }
        stack.push_layer(GeodesicLayer::new((p, q), essential.len())?, &[]);
    }
    Ok(stack)
}

/// `upper` placed entirely over `lower`.
pub fn superpose(upper: &MarkedDiagram, lower: &MarkedDiagram, mode: ProductMode) -> Result<MarkedDiagram> {
    if upper.surface() != lower.surface() {
        return Err(Error::SurfaceMismatch);
    }
    match upper.surface() {
        SurfaceSpec::Torus => {
            let stack = GeodesicStack::stacked(&stack_of(upper)?, &stack_of(lower)?, mode);
            stack.build()
        }
        SurfaceSpec::Annulus | SurfaceSpec::Disk(0) => {
            if upper.crossing_count() > 0 || lower.crossing_count() > 0 {
                return Err(Error::UnsupportedSuperposition(
                    "only crossingless diagrams stack on the annulus and disk".into(),
                ));
            }
            let loops = upper.free_loops().iter().chain(lower.free_loops()).copied();
            MarkedDiagram::new(upper.surface(), [], [], loops, None)
        }
        SurfaceSpec::Disk(_) => Err(Error::UnsupportedSuperposition(
            "stacking diagrams with arcs is not supported".into(),
        )),
    }
}

/// Superposition of torus multicurves with explicit levels: `upper` is
/// `(class, levels)`, likewise `lower`.
pub fn superpose_with_offsets(
    upper: ((i64, i64), Vec<Rational>),
    lower: ((i64, i64), Vec<Rational>),
    mode: ProductMode,
) -> Result<MarkedDiagram> {
    let mut stack = GeodesicStack::new();
    stack.push_layer(GeodesicLayer::with_levels(upper.0, upper.1)?, &[]);
    let marked: &[usize] = if mode == ProductMode::Strong { &[0] } else { &[] };
    stack.push_layer(GeodesicLayer::with_levels(lower.0, lower.1)?, marked);
    stack.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn multicurve(n: usize, p: i64, q: i64) -> MarkedDiagram {
        let mut s = GeodesicStack::new();
        s.push_layer(GeodesicLayer::new((p, q), n).unwrap(), &[]);
        s.build().unwrap()
    }

    #[test]
    fn determinant_counts_crossings() {
        let d = superpose(&multicurve(1, 1, 0), &multicurve(1, 0, 1), ProductMode::Strong).unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert!(d.is_real());
        let d = superpose(&multicurve(2, 1, 0), &multicurve(1, 0, 1), ProductMode::Strong).unwrap();
        assert_eq!(d.crossing_count(), 2);
        let d = superpose(&multicurve(2, 1, 2), &multicurve(2, 2, 1), ProductMode::Weak).unwrap();
        assert_eq!(d.crossing_count(), 12);
        assert!(d.marked().is_empty());
    }

    #[test]
    fn empty_is_identity() {
        let a = multicurve(1, 1, 1);
        let d = superpose(&a, &MarkedDiagram::empty(SurfaceSpec::Torus), ProductMode::Strong).unwrap();
        assert_eq!(d, a);
    }

    #[test]
    fn edge_labels_sum_to_classes() {
        let d = superpose(&multicurve(1, 1, 2), &multicurve(1, 1, -1), ProductMode::Strong).unwrap();
        assert_eq!(d.crossing_count(), 3);
        let total = d.edges().fold([0, 0], |acc, e| {
            let v = e.h.to_vec();
            [acc[0] + v[0], acc[1] + v[1]]
        });
        assert_eq!(total, [2, 1]);
    }

    #[test]
    fn coincident_lines_rejected() {
        let r = superpose_with_offsets(
            ((1, 0), vec![rat(1, 3)]),
            ((1, 0), vec![rat(4, 3)]),
            ProductMode::Strong,
        );
        assert!(matches!(r, Err(Error::UnsupportedSuperposition(_))));
    }
}
