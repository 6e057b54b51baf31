//! Marked diagrams `[D, C]` on the disk, annulus and torus.
//!
//! Port convention: the four ports `0, 1, 2, 3` of a crossing are in
//! counterclockwise order and the over-strand occupies ports `0` and `2`.
//! The 0-smoothing joins ports `(0,1)` and `(2,3)`; the infinity-smoothing
//! joins `(0,3)` and `(1,2)`. Edge homology labels are measured along the
//! edge from tail to head.

mod construct;
pub mod geodesic;
pub mod io;
mod kernel;
mod smooth;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub use construct::{disk_braid, from_braid, kink_chain, torus_multicurve};
pub use geodesic::{superpose, superpose_with_offsets, GeodesicStack, ProductMode};
pub(crate) use kernel::{ResolutionKernel, Scratch};
pub(crate) use smooth::classify_crossingless;
pub use smooth::{resolve, smooth, Resolution};

use crate::surface::{HomologyClass, SurfaceSpec};
use crate::{Error, Result};

pub type CrossingId = u32;
pub type EdgeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Port { crossing: CrossingId, port: u8 },
    /// Disk boundary point, numbered from 1.
    Boundary(u32),
}

impl Endpoint {
    pub fn port(crossing: CrossingId, port: u8) -> Self {
        Endpoint::Port { crossing, port }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: Endpoint,
    pub head: Endpoint,
    pub h: HomologyClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Marker {
    Zero,
    Infinity,
}

impl Marker {
    /// Port joined to `port` by this smoothing.
    pub fn partner(self, port: u8) -> u8 {
        match self {
            Marker::Zero => port ^ 1,
            Marker::Infinity => 3 - port,
        }
    }
}

/// A partial state: markers on a subset of the marked crossings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KState(pub BTreeMap<CrossingId, Marker>);

impl KState {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Markers on `crossings[i]` read from bit `i` of `mask` (set = infinity).
    pub fn from_mask(crossings: &[CrossingId], mask: u64) -> Self {
        Self(
            crossings
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let m = if mask >> i & 1 == 1 { Marker::Infinity } else { Marker::Zero };
                    (c, m)
                })
                .collect(),
        )
    }

    pub fn single(c: CrossingId, m: Marker) -> Self {
        Self([(c, m)].into_iter().collect())
    }

    pub fn zeros(&self) -> usize {
        self.0.values().filter(|m| **m == Marker::Zero).count()
    }

    pub fn infinities(&self) -> usize {
        self.0.values().filter(|m| **m == Marker::Infinity).count()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &KState) -> KState {
        let mut out = self.clone();
        out.0.extend(other.0.iter().map(|(c, m)| (*c, *m)));
        out
    }
}

/// A diagram together with the distinguished crossing set `C`.
///
/// Equality and ordering are structural (ids, ports, labels). The optional
/// geodesic embedding is a construction hint and does not take part in them.
#[derive(Clone, Debug)]
pub struct MarkedDiagram {
    surface: SurfaceSpec,
    crossings: BTreeSet<CrossingId>,
    edges: BTreeMap<EdgeId, Edge>,
    free_loops: Vec<HomologyClass>,
    marked: BTreeSet<CrossingId>,
    pub(crate) geometry: Option<Arc<GeodesicStack>>,
}

impl MarkedDiagram {
    pub fn new(
        surface: SurfaceSpec,
        crossings: impl IntoIterator<Item = CrossingId>,
        edges: impl IntoIterator<Item = Edge>,
        free_loops: impl IntoIterator<Item = HomologyClass>,
        marked: Option<BTreeSet<CrossingId>>,
    ) -> Result<Self> {
        let crossings: BTreeSet<_> = crossings.into_iter().collect();
        let mut edge_map = BTreeMap::new();
        for e in edges {
            if edge_map.insert(e.id, e).is_some() {
                return Err(Error::MalformedDiagram(format!("duplicate edge id {}", e.id)));
            }
        }
        let marked = marked.unwrap_or_else(|| crossings.clone());
        let d = Self::from_parts(surface, crossings, edge_map, free_loops.into_iter().collect(), marked);
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn from_parts(
        surface: SurfaceSpec,
        crossings: BTreeSet<CrossingId>,
        edges: BTreeMap<EdgeId, Edge>,
        free_loops: Vec<HomologyClass>,
        marked: BTreeSet<CrossingId>,
    ) -> Self {
        let mut free_loops: Vec<HomologyClass> =
            free_loops.into_iter().map(canonical_loop).collect();
        free_loops.sort_unstable();
        Self { surface, crossings, edges, free_loops, marked, geometry: None }
    }

    pub fn empty(surface: SurfaceSpec) -> Self {
        Self::from_parts(surface, BTreeSet::new(), BTreeMap::new(), vec![], BTreeSet::new())
    }

    pub fn surface(&self) -> SurfaceSpec {
        self.surface
    }

    pub fn crossings(&self) -> &BTreeSet<CrossingId> {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.values()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.get(&id)
    }

    pub fn free_loops(&self) -> &[HomologyClass] {
        &self.free_loops
    }

    pub fn marked(&self) -> &BTreeSet<CrossingId> {
        &self.marked
    }

    /// `C` is the set of all crossings.
    pub fn is_real(&self) -> bool {
        self.marked == self.crossings
    }

    pub fn geometry(&self) -> Option<&GeodesicStack> {
        self.geometry.as_deref()
    }

    /// The same diagram with `C` replaced.
    pub fn with_marked(&self, marked: BTreeSet<CrossingId>) -> Result<Self> {
        if !marked.is_subset(&self.crossings) {
            return Err(Error::MalformedDiagram("marked set is not a set of crossings".into()));
        }
        let mut d = self.clone();
        d.marked = marked;
        if d.marked != self.marked {
            d.geometry = None;
        }
        Ok(d)
    }

    /// Marks every crossing.
    pub fn promote(&self) -> Self {
        let mut d = self.clone();
        if !d.is_real() {
            d.marked = d.crossings.clone();
            d.geometry = None;
        }
        d
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedDiagram(msg));
        self.surface.validate()?;
        if !self.marked.is_subset(&self.crossings) {
            return bad("marked crossings missing from the crossing list".into());
        }
        let mut ports: BTreeMap<(CrossingId, u8), EdgeId> = BTreeMap::new();
        let mut boundary: BTreeMap<u32, EdgeId> = BTreeMap::new();
        let m = self.surface.boundary_points();
        for e in self.edges.values() {
            if !self.surface.accepts(&e.h) {
                return bad(format!("edge {} label {:?} does not fit the surface", e.id, e.h));
            }
            for end in [e.tail, e.head] {
                match end {
                    Endpoint::Port { crossing, port } => {
                        if port > 3 {
                            return bad(format!("edge {} uses port {port}", e.id));
                        }
                        if !self.crossings.contains(&crossing) {
                            return bad(format!("edge {} ends at unknown crossing {crossing}", e.id));
                        }
                        if ports.insert((crossing, port), e.id).is_some() {
                            return bad(format!("port {port} of crossing {crossing} used twice"));
                        }
                    }
                    Endpoint::Boundary(k) => {
                        if k == 0 || k > m {
                            return bad(format!("edge {} ends at boundary point {k} of {m}", e.id));
                        }
                        if boundary.insert(k, e.id).is_some() {
                            return bad(format!("boundary point {k} used twice"));
                        }
                    }
                }
            }
        }
        for c in &self.crossings {
            for p in 0..4u8 {
                if !ports.contains_key(&(*c, p)) {
                    return bad(format!("port {p} of crossing {c} is dangling"));
                }
            }
        }
        if boundary.len() as u32 != m {
            return bad(format!("{} of {m} boundary points are used", boundary.len()));
        }
        if let Some(h) = self.free_loops.iter().find(|h| !self.surface.accepts(h)) {
            return bad(format!("free loop class {h:?} does not fit the surface"));
        }
        Ok(())
    }

    fn key(&self) -> DiagramKey<'_> {
        (&self.surface, &self.crossings, &self.edges, &self.free_loops, &self.marked)
    }

    pub(crate) fn set_geometry(&mut self, g: Option<Arc<GeodesicStack>>) {
        self.geometry = g;
    }
}

type DiagramKey<'a> = (
    &'a SurfaceSpec,
    &'a BTreeSet<CrossingId>,
    &'a BTreeMap<EdgeId, Edge>,
    &'a Vec<HomologyClass>,
    &'a BTreeSet<CrossingId>,
);

impl PartialEq for MarkedDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for MarkedDiagram {}

impl PartialOrd for MarkedDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MarkedDiagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl Hash for MarkedDiagram {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

/// Free loops are unoriented; store one sign.
fn canonical_loop(h: HomologyClass) -> HomologyClass {
    match h {
        HomologyClass::Winding(w) if w < 0 => HomologyClass::Winding(-w),
        HomologyClass::Pair(a, b) if a < 0 || (a == 0 && b < 0) => HomologyClass::Pair(-a, -b),
        other => other,
    }
}

/// Crossing change at every marked crossing: ports rotate one step, moving
/// the over-strand to ports `1, 3`.
pub fn tau(d: &MarkedDiagram) -> MarkedDiagram {
    let flip = |end: Endpoint| match end {
        Endpoint::Port { crossing, port } if d.marked.contains(&crossing) => {
            Endpoint::Port { crossing, port: (port + 1) % 4 }
        }
        other => other,
    };
    let edges = d
        .edges
        .values()
        .map(|e| (e.id, Edge { tail: flip(e.tail), head: flip(e.head), ..*e }))
        .collect();
    let mut out = MarkedDiagram {
        surface: d.surface,
        crossings: d.crossings.clone(),
        edges,
        free_loops: d.free_loops.clone(),
        marked: d.marked.clone(),
        geometry: None,
    };
    if let Some(g) = &d.geometry {
        if d.crossings.is_empty() {
            out.geometry = Some(g.clone());
        } else if d.is_real() {
            out.geometry = Some(Arc::new(g.mirrored()));
        }
    }
    out
}

/// Mapping-class action of `m` in SL(2, Z) on a torus diagram.
pub fn sl2z_act(m: [[i64; 2]; 2], d: &MarkedDiagram) -> Result<MarkedDiagram> {
    if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 1 {
        return Err(Error::NotUnimodular);
    }
    if d.surface != SurfaceSpec::Torus {
        return Err(Error::SurfaceMismatch);
    }
    let act = |h: HomologyClass| match h {
        HomologyClass::Pair(a, b) => {
            HomologyClass::Pair(m[0][0] * a + m[0][1] * b, m[1][0] * a + m[1][1] * b)
        }
        other => other,
    };
    let edges = d.edges.values().map(|e| (e.id, Edge { h: act(e.h), ..*e })).collect();
    let mut out = MarkedDiagram::from_parts(
        d.surface,
        d.crossings.clone(),
        edges,
        d.free_loops.iter().map(|h| act(*h)).collect(),
        d.marked.clone(),
    );
    out.geometry = d.geometry.as_ref().map(|g| Arc::new(g.transformed(m)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_torus_diagram_is_valid() {
        MarkedDiagram::empty(SurfaceSpec::Torus).validate().unwrap();
    }

    #[test]
    fn dangling_edge_rejected() {
        let e = Edge {
            id: 0,
            tail: Endpoint::port(0, 0),
            head: Endpoint::port(0, 2),
            h: HomologyClass::Null,
        };
        let r = MarkedDiagram::new(SurfaceSpec::Disk(0), [0], [e], [], None);
        assert!(matches!(r, Err(Error::MalformedDiagram(_))));
    }

    #[test]
    fn odd_disk_rejected() {
        let d = MarkedDiagram::empty(SurfaceSpec::Disk(3));
        assert!(matches!(d.validate(), Err(Error::MalformedDiagram(_))));
    }

    #[test]
    fn tau_fixes_crossingless() {
        let d = torus_multicurve(2, 1, 1).unwrap();
        assert_eq!(tau(&d), d);
    }

    #[test]
    fn sl2z_examples() {
        let d = torus_multicurve(1, 0, 1).unwrap();
        assert_eq!(sl2z_act([[1, 0], [0, 1]], &d).unwrap(), d);
        let moved = sl2z_act([[1, 1], [0, 1]], &d).unwrap();
        assert_eq!(moved.free_loops(), &[HomologyClass::Pair(1, 1)]);
        assert!(matches!(sl2z_act([[2, 0], [0, 1]], &d), Err(Error::NotUnimodular)));
    }
}
