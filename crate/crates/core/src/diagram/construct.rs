//! Test-corpus generators.

use super::geodesic::{GeodesicLayer, GeodesicStack};
use super::{CrossingId, Edge, Endpoint, MarkedDiagram};
use crate::surface::{HomologyClass, SurfaceSpec};
use crate::{Error, Result};

/// Ports (in from position i, in from i+1, out to i, out to i+1) of a braid
/// crossing. Positions increase upward; ports run counterclockwise, so for
/// `σ_i` port 0 is the north-east corner and for `σ_i^{-1}` the south-east.
fn braid_ports(positive: bool) -> [u8; 4] {
    if positive {
        [2, 1, 3, 0]
    } else {
        [3, 2, 0, 1]
    }
}

struct BraidTrace {
    crossings: Vec<CrossingId>,
    edges: Vec<Edge>,
    /// Per position: first port entered and last port left.
    first: Vec<Option<Endpoint>>,
    last: Vec<Option<Endpoint>>,
}

fn trace_braid(strands: u32, word: &[i32], label: HomologyClass) -> Result<BraidTrace> {
    if strands == 0 {
        return Err(Error::BadGenerator(0));
    }
    let n = strands as usize;
    let mut t = BraidTrace { crossings: vec![], edges: vec![], first: vec![None; n], last: vec![None; n] };
    for (c, &g) in word.iter().enumerate() {
        let i = g.unsigned_abs() as usize;
        if g == 0 || i >= n {
            return Err(Error::BadGenerator(g));
        }
        let c = c as CrossingId;
        t.crossings.push(c);
        let [in_lo, in_hi, out_lo, out_hi] = braid_ports(g > 0);
        for (pos, port_in, port_out) in [(i - 1, in_lo, out_lo), (i, in_hi, out_hi)] {
            let entry = Endpoint::port(c, port_in);
            match t.last[pos] {
                Some(tail) => {
                    let id = t.edges.len() as u32;
                    t.edges.push(Edge { id, tail, head: entry, h: label });
                }
                None => t.first[pos] = Some(entry),
            }
            t.last[pos] = Some(Endpoint::port(c, port_out));
        }
    }
    Ok(t)
}

/// Closure of a braid in the annulus. Each closing arc winds once around the core.
pub fn from_braid(strands: u32, word: &[i32]) -> Result<MarkedDiagram> {
    let mut t = trace_braid(strands, word, HomologyClass::Winding(0))?;
    let mut loops = vec![];
    for pos in 0..strands as usize {
        match (t.last[pos], t.first[pos]) {
            (Some(tail), Some(head)) => {
                let id = t.edges.len() as u32;
                t.edges.push(Edge { id, tail, head, h: HomologyClass::Winding(1) });
            }
            _ => loops.push(HomologyClass::Winding(1)),
        }
    }
    MarkedDiagram::new(SurfaceSpec::Annulus, t.crossings, t.edges, loops, None)
}

/// A braid as a tangle in the disk with `2 * strands` boundary points: left
/// ends are points `1..=n` bottom to top, right ends `n+1..=2n` top to bottom.
pub fn disk_braid(strands: u32, word: &[i32]) -> Result<MarkedDiagram> {
    let mut t = trace_braid(strands, word, HomologyClass::Null)?;
    let n = strands;
    for pos in 0..n {
        let left = Endpoint::Boundary(pos + 1);
        let right = Endpoint::Boundary(2 * n - pos);
        let p = pos as usize;
        let (tail, head) = match (t.first[p], t.last[p]) {
            (Some(first), Some(last)) => {
                let id = t.edges.len() as u32;
                t.edges.push(Edge { id, tail: left, head: first, h: HomologyClass::Null });
                (last, right)
            }
            _ => (left, right),
        };
        let id = t.edges.len() as u32;
        t.edges.push(Edge { id, tail, head, h: HomologyClass::Null });
    }
    MarkedDiagram::new(SurfaceSpec::Disk(2 * n), t.crossings, t.edges, [], None)
}

/// A trivial circle in the disk with `i` curls in a row. The ∞-smoothing of a
/// curl splits off one circle; the 0-smoothing undoes it.
pub fn kink_chain(i: u32) -> MarkedDiagram {
    if i == 0 {
        return MarkedDiagram::new(SurfaceSpec::Disk(0), [], [], [HomologyClass::Null], None)
            .expect("trivial loop");
    }
    let mut edges = vec![];
    for c in 0..i {
        edges.push(Edge {
            id: 2 * c,
            tail: Endpoint::port(c, 1),
            head: Endpoint::port(c, 2),
            h: HomologyClass::Null,
        });
        edges.push(Edge {
            id: 2 * c + 1,
            tail: Endpoint::port(c, 0),
            head: Endpoint::port((c + 1) % i, 3),
            h: HomologyClass::Null,
        });
    }
    MarkedDiagram::new(SurfaceSpec::Disk(0), 0..i, edges, [], None).expect("kink chain is well formed")
}

/// `n` parallel copies of the simple loop of class `(p, q)`.
pub fn torus_multicurve(n: u32, p: i64, q: i64) -> Result<MarkedDiagram> {
    let layer = GeodesicLayer::new((p, q), n as usize)?;
    let mut stack = GeodesicStack::new();
    if n > 0 {
        stack.push_layer(layer, &[]);
    }
    stack.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{resolve, KState, Marker};
    use crate::surface::CurveClass;

    #[test]
    fn trivial_braids() {
        let d = from_braid(1, &[]).unwrap();
        assert_eq!(d.free_loops(), &[HomologyClass::Winding(1)]);
        let d = from_braid(2, &[]).unwrap();
        assert_eq!(d.free_loops().len(), 2);
    }

    #[test]
    fn trefoil_all_zero_gives_two_core_circles() {
        let d = from_braid(2, &[1, 1, 1]).unwrap();
        assert_eq!(d.crossing_count(), 3);
        let r = resolve(&d, &KState::from_mask(&[0, 1, 2], 0)).unwrap();
        assert_eq!((r.mu, r.essential), (0, CurveClass::Core(2)));
        let r = resolve(&d, &KState::from_mask(&[0, 1, 2], 0b111)).unwrap();
        assert_eq!((r.mu, r.essential), (3, CurveClass::Empty));
    }

    #[test]
    fn bad_generators() {
        assert!(matches!(from_braid(2, &[2]), Err(Error::BadGenerator(2))));
        assert!(matches!(from_braid(3, &[0]), Err(Error::BadGenerator(0))));
    }

    #[test]
    fn disk_crossing_resolutions() {
        let d = disk_braid(2, &[1]).unwrap();
        let zero = resolve(&d, &KState::single(0, Marker::Zero)).unwrap();
        let inf = resolve(&d, &KState::single(0, Marker::Infinity)).unwrap();
        assert_ne!(zero.essential, inf.essential);
        assert_eq!(zero.mu + inf.mu, 0);
    }

    #[test]
    fn kinks_split_circles() {
        let d = kink_chain(3);
        let r = resolve(&d, &KState::from_mask(&[0, 1, 2], 0b111)).unwrap();
        assert_eq!(r.mu, 4);
        let r = resolve(&d, &KState::from_mask(&[0, 1, 2], 0)).unwrap();
        assert_eq!(r.mu, 1);
        assert_eq!(kink_chain(0).free_loops(), &[HomologyClass::Null]);
    }

    #[test]
    fn multicurves() {
        assert_eq!(torus_multicurve(0, 1, 0).unwrap(), MarkedDiagram::empty(SurfaceSpec::Torus));
        assert_eq!(torus_multicurve(2, 1, 1).unwrap().free_loops(), &[HomologyClass::Pair(1, 1); 2]);
        assert!(matches!(torus_multicurve(1, 2, 2), Err(Error::NonPrimitiveClass(2, 2))));
    }
}
