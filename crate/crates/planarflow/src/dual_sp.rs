//! Priority-queue shortest paths in the dual graph, the st-planar maximum
//! flow derived from them, and the clockwise-acyclic normalization.
//!
//! The dual dart of a primal dart `d` runs from `left_face(d)` to
//! `right_face(d)` with length `c[d]`, so shortest-path distances satisfy
//! `dist[right(d)] - dist[left(d)] <= c[d]` and the induced assignment
//! `f[d] = dist[right(d)] - dist[left(d)]` is a feasible circulation.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::embedding::{rev, ArcSpec, Dart, FaceId, PlanarEmbedding, RawEmbedding, VertexId};
use crate::error::{Error, Result};
use crate::flow::{residual, CapacityFn, FlowAssignment};

/// Counters for the cost model: completed shortest-path computations and
/// priority-queue operations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpStats {
    pub sp_calls: u64,
    pub pq_ops: u64,
}

/// Shortest-path distances over faces, with the predecessor dart crossed to
/// reach each face. Unreachable faces hold `None`.
#[derive(Debug, Clone)]
pub struct DualDistances {
    pub root: FaceId,
    pub dist: Vec<Option<i64>>,
    pub pred: Vec<Option<Dart>>,
}

impl DualDistances {
    pub fn get(&self, f: FaceId) -> Option<i64> {
        self.dist[f]
    }
}

/// Dijkstra over the dual rooted at `root`, interpreting capacities as
/// lengths. Counts one shortest-path computation.
pub fn dijkstra_dual(
    emb: &PlanarEmbedding,
    lengths: &CapacityFn,
    root: FaceId,
    stats: &mut SpStats,
) -> DualDistances {
    // Binary heap with lazy deletion: stale entries are skipped on pop.
    let mut dist: Vec<Option<i64>> = vec![None; emb.face_count()];
    let mut pred: Vec<Option<Dart>> = vec![None; emb.face_count()];
    let mut heap: BinaryHeap<Reverse<(i64, FaceId, Option<Dart>)>> = BinaryHeap::new();
    heap.push(Reverse((0, root, None)));
    stats.pq_ops += 1;
    while let Some(Reverse((du, u, via))) = heap.pop() {
        stats.pq_ops += 1;
        if dist[u].is_some() {
            continue;
        }
        dist[u] = Some(du);
        pred[u] = via;
        for &d in emb.face_cycle(u) {
            // u is left of d; crossing d reaches its right face.
            let v = emb.right_face(d);
            if dist[v].is_none() {
                heap.push(Reverse((du + lengths.get(d), v, Some(d))));
                stats.pq_ops += 1;
            }
        }
    }
    stats.sp_calls += 1;
    DualDistances { root, dist, pred }
}

fn sum_caps(c: &CapacityFn) -> i64 {
    c.total()
}

/// Maximum leftmost s-to-t flow when both terminals share `common_face`.
///
/// Embeds an artificial high-capacity t-to-s arc in that face, runs one dual
/// shortest-path computation rooted at the face traced by the artificial
/// dart, and reads the flow off the distance differences.
pub fn st_planar_max_flow(
    emb: &PlanarEmbedding,
    c: &CapacityFn,
    s: VertexId,
    t: VertexId,
    common_face: FaceId,
    stats: &mut SpStats,
) -> Result<(FlowAssignment, i64)> {
    let corner_t = emb.corner_slot(t, common_face).ok_or(Error::NotCofacial)?;
    let corner_s = emb.corner_slot(s, common_face).ok_or(Error::NotCofacial)?;

    let m = emb.arc_count();
    let ts_dart = 2 * m;
    let mut arcs: Vec<ArcSpec> = (0..m)
        .map(|a| ArcSpec { tail: emb.tail(2 * a), head: emb.head(2 * a) })
        .collect();
    arcs.push(ArcSpec { tail: t, head: s });
    let mut rotations: Vec<Vec<Dart>> = (0..emb.vertex_count())
        .map(|v| emb.rotation(v).to_vec())
        .collect();
    // Insert each new dart in the corner of the common face it is drawn in.
    let pos_t = rotations[t].iter().position(|&x| x == corner_t).unwrap();
    rotations[t].insert(pos_t + 1, ts_dart);
    let pos_s = rotations[s].iter().position(|&x| x == corner_s).unwrap();
    rotations[s].insert(pos_s + 1, rev(ts_dart));

    let aug = RawEmbedding {
        n: emb.vertex_count(),
        arcs,
        rotations,
        s,
        t,
        fs_corner: None,
        ft_corner: None,
        allow_disconnected: true,
    }
    .build()
    .expect("inserting one arc in a face keeps the embedding valid");

    let mut lengths = Vec::with_capacity(2 * m + 2);
    lengths.extend_from_slice(c.values());
    lengths.push(1 + sum_caps(c));
    lengths.push(0);
    let lengths = CapacityFn::new(lengths).unwrap();

    let root = aug.face_of(ts_dart);
    let dd = dijkstra_dual(&aug, &lengths, root, stats);

    let mut f = FlowAssignment::zero(emb.dart_count());
    for a in 0..m {
        let d = 2 * a;
        match (dd.get(aug.face_of(rev(d))), dd.get(aug.face_of(d))) {
            (Some(right), Some(left)) => f.set(d, right - left),
            (None, None) => {} // component unreachable from the root face
            _ => unreachable!("both sides of an edge share reachability"),
        }
    }
    let value: i64 = emb.rotation(s).iter().map(|&d| f.get(d)).sum();
    debug_assert!((0..emb.dart_count()).all(|d| f.get(d) <= c.get(d)));
    Ok((f, value))
}

/// Saturate the clockwise residual cycles of `c`: one dual shortest-path
/// computation rooted at f_t yields the leftmost circulation; returns it with
/// the clockwise-acyclic residual capacities.
pub fn leftmost_circulation(
    emb: &PlanarEmbedding,
    c: &CapacityFn,
    stats: &mut SpStats,
) -> (FlowAssignment, CapacityFn) {
    let dd = dijkstra_dual(emb, c, emb.ft_face(), stats);
    let mut f = FlowAssignment::zero(emb.dart_count());
    for a in 0..emb.arc_count() {
        let d = 2 * a;
        match (dd.get(emb.right_face(d)), dd.get(emb.left_face(d))) {
            (Some(right), Some(left)) => f.set(d, right - left),
            (None, None) => {}
            _ => unreachable!("both sides of an edge share reachability"),
        }
    }
    let c0 = residual(c, &f).expect("triangle inequality keeps the circulation feasible");
    (f, c0)
}
