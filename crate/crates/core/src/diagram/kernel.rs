use super::{CrossingId, Endpoint, MarkedDiagram};
use crate::surface::{normalize_torus_class, CurveClass, SurfaceSpec};
use crate::{Error, Result};

const BOUNDARY: u32 = 1 << 31;

/// Flat form of a diagram for enumerating full resolutions quickly.
///
/// Slots are `4 * crossing_index + port`, or `BOUNDARY | k` for disk points.
pub(crate) struct ResolutionKernel {
    surface: SurfaceSpec,
    crossing_ids: Vec<CrossingId>,
    tails: Vec<u32>,
    heads: Vec<u32>,
    labels: Vec<[i64; 2]>,
    /// per slot: edge index * 2 + (1 if the head sits there)
    slot_edge: Vec<u32>,
    /// per boundary point (index k - 1): edge index * 2 + end
    boundary_edge: Vec<u32>,
    free_loops: Vec<[i64; 2]>,
}

/// Reusable buffers for [`ResolutionKernel::resolve`].
#[derive(Default)]
pub(crate) struct Scratch {
    visited: Vec<bool>,
    essential: Vec<[i64; 2]>,
    arcs: Vec<(u32, u32)>,
}

impl ResolutionKernel {
    pub fn new(d: &MarkedDiagram) -> Self {
        let crossing_ids: Vec<CrossingId> = d.crossings().iter().copied().collect();
        let index = |c: CrossingId| crossing_ids.binary_search(&c).expect("validated crossing") as u32;
        let slot = |end: Endpoint| match end {
            Endpoint::Port { crossing, port } => 4 * index(crossing) + port as u32,
            Endpoint::Boundary(k) => BOUNDARY | k,
        };
        let mut tails = vec![];
        let mut heads = vec![];
        let mut labels = vec![];
        let mut slot_edge = vec![u32::MAX; 4 * crossing_ids.len()];
        let m = d.surface().boundary_points() as usize;
        let mut boundary_edge = vec![u32::MAX; m];
        for (i, e) in d.edges().enumerate() {
            let (t, h) = (slot(e.tail), slot(e.head));
            for (s, end) in [(t, 0u32), (h, 1u32)] {
                let code = 2 * i as u32 + end;
                if s & BOUNDARY != 0 {
                    boundary_edge[(s & !BOUNDARY) as usize - 1] = code;
                } else {
                    slot_edge[s as usize] = code;
                }
            }
            tails.push(t);
            heads.push(h);
            labels.push(e.h.to_vec());
        }
        Self {
            surface: d.surface(),
            crossing_ids,
            tails,
            heads,
            labels,
            slot_edge,
            boundary_edge,
            free_loops: d.free_loops().iter().map(|h| h.to_vec()).collect(),
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossing_ids.len()
    }

    /// Slot reached after leaving through `slot` under the markers in `mask`
    /// (bit set = infinity); returns (edge code).
    #[inline]
    fn cross(&self, slot: u32, mask: u64) -> u32 {
        let c = slot >> 2;
        let port = slot & 3;
        let partner = if mask >> c & 1 == 1 { 3 - port } else { port ^ 1 };
        self.slot_edge[(4 * c + partner) as usize]
    }

    /// Trivial-circle count and curve system of the full resolution `mask`.
    pub fn resolve(&self, mask: u64, scratch: &mut Scratch) -> Result<(usize, CurveClass)> {
        let n_edges = self.tails.len();
        scratch.visited.clear();
        scratch.visited.resize(n_edges, false);
        scratch.essential.clear();
        scratch.arcs.clear();
        let mut trivial = 0usize;
        for h in &self.free_loops {
            if *h == [0, 0] {
                trivial += 1;
            } else {
                scratch.essential.push(*h);
            }
        }
        for (k, &code) in self.boundary_edge.iter().enumerate() {
            let start = k as u32 + 1;
            let e = (code >> 1) as usize;
            if scratch.visited[e] {
                continue;
            }
            let (mut edge, mut at_head) = (e, code & 1 == 1);
            loop {
                scratch.visited[edge] = true;
                let exit = if at_head { self.tails[edge] } else { self.heads[edge] };
                if exit & BOUNDARY != 0 {
                    let end = exit & !BOUNDARY;
                    scratch.arcs.push((start.min(end), start.max(end)));
                    break;
                }
                let next = self.cross(exit, mask);
                edge = (next >> 1) as usize;
                at_head = next & 1 == 1;
            }
        }
        for e0 in 0..n_edges {
            if scratch.visited[e0] {
                continue;
            }
            let mut h = [0i64, 0i64];
            let (mut edge, mut forward) = (e0, true);
            loop {
                scratch.visited[edge] = true;
                let l = self.labels[edge];
                let exit = if forward {
                    h[0] += l[0];
                    h[1] += l[1];
                    self.heads[edge]
                } else {
                    h[0] -= l[0];
                    h[1] -= l[1];
                    self.tails[edge]
                };
                let next = self.cross(exit, mask);
                edge = (next >> 1) as usize;
                forward = next & 1 == 0;
                if edge == e0 {
                    break;
                }
            }
            if h == [0, 0] {
                trivial += 1;
            } else {
                scratch.essential.push(h);
            }
        }
        let essential = self.classify(scratch)?;
        Ok((trivial, essential))
    }

    fn classify(&self, scratch: &mut Scratch) -> Result<CurveClass> {
        if !scratch.arcs.is_empty() {
            return CurveClass::matching(scratch.arcs.iter().copied());
        }
        let es = &scratch.essential;
        if es.is_empty() {
            return Ok(CurveClass::Empty);
        }
        match self.surface {
            SurfaceSpec::Disk(_) => Ok(CurveClass::Empty),
            SurfaceSpec::Annulus => {
                if let Some(v) = es.iter().find(|v| v[0].abs() != 1) {
                    return Err(Error::NonParallelComponents(format!(
                        "annulus component with winding {}",
                        v[0]
                    )));
                }
                Ok(CurveClass::core(es.len() as u32))
            }
            SurfaceSpec::Torus => {
                let [p, q] = es[0];
                if num_integer::Integer::gcd(&p, &q) != 1 {
                    return Err(Error::NonParallelComponents(format!(
                        "non-primitive component class ({p},{q})"
                    )));
                }
                if let Some(v) = es[1..].iter().find(|v| **v != [p, q] && **v != [-p, -q]) {
                    return Err(Error::NonParallelComponents(format!(
                        "components ({p},{q}) and ({},{}) are not parallel",
                        v[0], v[1]
                    )));
                }
                let n = es.len() as i64;
                Ok(normalize_torus_class(n * p, n * q))
            }
        }
    }
}
