use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Edge, EdgeId, Endpoint, KState, Marker, MarkedDiagram};
use crate::surface::{classify_components, CurveClass, HomologyClass, SurfaceSpec};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum End {
    Tail,
    Head,
}

/// Smooths every crossing in the domain of `state`.
///
/// Edge chains joined through smoothed crossings merge into one edge that
/// keeps the smallest constituent id and that edge's orientation; chains that
/// close up become free loops. The output is a pure function of the inputs.
pub fn smooth(d: &MarkedDiagram, state: &KState) -> Result<MarkedDiagram> {
    if state.0.keys().any(|c| !d.marked.contains(c)) {
        return Err(Error::StateOutsideMarkedSet);
    }
    if state.is_empty() {
        return Ok(d.clone());
    }
    let markers = &state.0;
    let mut slots: HashMap<(u32, u8), (EdgeId, End)> = HashMap::with_capacity(d.edges.len() * 2);
    for e in d.edges.values() {
        if let Endpoint::Port { crossing, port } = e.tail {
            slots.insert((crossing, port), (e.id, End::Tail));
        }
        if let Endpoint::Port { crossing, port } = e.head {
            slots.insert((crossing, port), (e.id, End::Head));
        }
    }
    // Next (edge, end we enter through) when leaving via `slot`, if smoothed there.
    let step = |slot: Endpoint| -> Option<(EdgeId, End)> {
        match slot {
            Endpoint::Port { crossing, port } => {
                let m = markers.get(&crossing)?;
                Some(slots[&(crossing, m.partner(port))])
            }
            Endpoint::Boundary(_) => None,
        }
    };
    let surface = d.surface;
    let add = |a: [i64; 2], e: &Edge, forward: bool| {
        let v = e.h.to_vec();
        if forward {
            [a[0] + v[0], a[1] + v[1]]
        } else {
            [a[0] - v[0], a[1] - v[1]]
        }
    };

    let mut visited: BTreeSet<EdgeId> = BTreeSet::new();
    let mut new_edges: BTreeMap<EdgeId, Edge> = BTreeMap::new();
    let mut free_loops = d.free_loops.clone();

    for start in d.edges.values() {
        if visited.contains(&start.id) {
            continue;
        }
        visited.insert(start.id);
        // chain as (edge, forward) in traversal order
        let mut forward_part: Vec<(EdgeId, bool)> = vec![(start.id, true)];
        let mut head_slot = start.head;
        let mut closed = false;
        while let Some((eid, end)) = step(head_slot) {
            if eid == start.id {
                closed = true;
                break;
            }
            visited.insert(eid);
            let e = &d.edges[&eid];
            match end {
                End::Tail => {
                    forward_part.push((eid, true));
                    head_slot = e.head;
                }
                End::Head => {
                    forward_part.push((eid, false));
                    head_slot = e.tail;
                }
            }
        }
        if closed {
            let mut h = [0, 0];
            for (eid, fwd) in &forward_part {
                h = add(h, &d.edges[eid], *fwd);
            }
            free_loops.push(HomologyClass::from_vec(surface, h));
            continue;
        }
        let mut backward_part: Vec<(EdgeId, bool)> = vec![];
        let mut tail_slot = start.tail;
        while let Some((eid, end)) = step(tail_slot) {
            visited.insert(eid);
            let e = &d.edges[&eid];
            // walking backwards: entering through the head means the edge runs along the chain
            match end {
                End::Head => {
                    backward_part.push((eid, true));
                    tail_slot = e.tail;
                }
                End::Tail => {
                    backward_part.push((eid, false));
                    tail_slot = e.head;
                }
            }
        }
        let chain: Vec<(EdgeId, bool)> =
            backward_part.into_iter().rev().chain(forward_part).collect();
        let mut h = [0, 0];
        for (eid, fwd) in &chain {
            h = add(h, &d.edges[eid], *fwd);
        }
        let (min_id, min_fwd) = *chain.iter().min_by_key(|(id, _)| *id).unwrap();
        let merged = if min_fwd {
            Edge { id: min_id, tail: tail_slot, head: head_slot, h: HomologyClass::from_vec(surface, h) }
        } else {
            Edge {
                id: min_id,
                tail: head_slot,
                head: tail_slot,
                h: HomologyClass::from_vec(surface, [-h[0], -h[1]]),
            }
        };
        new_edges.insert(min_id, merged);
    }

    let crossings: BTreeSet<_> =
        d.crossings.iter().copied().filter(|c| !markers.contains_key(c)).collect();
    let marked: BTreeSet<_> =
        d.marked.iter().copied().filter(|c| !markers.contains_key(c)).collect();
    Ok(MarkedDiagram::from_parts(surface, crossings, new_edges, free_loops, marked))
}

/// Outcome of fully resolving a real diagram by one Kauffman state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Resolution {
    /// number of 0-markers
    pub zeta: usize,
    /// number of infinity-markers
    pub iota: usize,
    /// number of trivial circles
    pub mu: usize,
    pub essential: CurveClass,
}

/// Resolves a real diagram by a full state, via [`smooth`].
pub fn resolve(d: &MarkedDiagram, state: &KState) -> Result<Resolution> {
    if !d.is_real() {
        return Err(Error::NotRealDiagram);
    }
    if state.len() != d.crossings.len() || state.0.keys().any(|c| !d.crossings.contains(c)) {
        return Err(Error::StateOutsideMarkedSet);
    }
    let flat = smooth(d, state)?;
    let (mu, essential) = classify_crossingless(&flat)?;
    Ok(Resolution { zeta: state.zeros(), iota: state.infinities(), mu, essential })
}

/// Classifies a crossingless diagram: trivial loops and the curve system.
pub(crate) fn classify_crossingless(d: &MarkedDiagram) -> Result<(usize, CurveClass)> {
    debug_assert!(d.crossings.is_empty());
    let (mu, closed) = classify_components(d.surface, &d.free_loops)?;
    if let SurfaceSpec::Disk(m) = d.surface {
        if m > 0 {
            let arcs = d.edges.values().map(|e| match (e.tail, e.head) {
                (Endpoint::Boundary(a), Endpoint::Boundary(b)) => Ok((a, b)),
                _ => Err(Error::MalformedDiagram("crossingless arc ends at a port".into())),
            });
            let arcs: Vec<(u32, u32)> = arcs.collect::<Result<_>>()?;
            return Ok((mu, CurveClass::matching(arcs)?));
        }
    }
    Ok((mu, closed))
}

impl Marker {
    pub fn all() -> [Marker; 2] {
        [Marker::Zero, Marker::Infinity]
    }
}
