//! Independent ground truth: breadth-first augmenting-path maximum flow over
//! the dart network, exhaustive path enumeration, and a flow verifier. None
//! of this consults the embedding beyond using rotations as adjacency lists,
//! so its failure modes are independent of the planar machinery.

use std::collections::{BTreeSet, VecDeque};

use crate::dual_sp::{leftmost_circulation, SpStats};
use crate::embedding::{rev, Dart, Path, PlanarEmbedding, VertexId};
use crate::error::{Error, Result};
use crate::flow::{classify, residual, CapacityFn, FlowAssignment, FlowClass};

/// Result of the augmenting-path oracle.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub value: i64,
    pub flow: FlowAssignment,
    pub min_cut: Vec<Dart>,
}

/// Edmonds–Karp: shortest augmenting paths by dart count.
pub fn edmonds_karp(emb: &PlanarEmbedding, c: &CapacityFn, s: VertexId, t: VertexId) -> OracleResult {
    let mut flow = FlowAssignment::zero(emb.dart_count());
    let mut value = 0;
    loop {
        let r = residual(c, &flow).expect("oracle flow stays feasible");
        let mut pred: Vec<Option<Dart>> = vec![None; emb.vertex_count()];
        let mut seen = vec![false; emb.vertex_count()];
        let mut queue = VecDeque::new();
        seen[s] = true;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            if v == t {
                break;
            }
            for &d in emb.rotation(v) {
                let w = emb.head(d);
                if !seen[w] && r.is_residual(d) {
                    seen[w] = true;
                    pred[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        if !seen[t] {
            let mut min_cut = Vec::new();
            for d in 0..emb.dart_count() {
                if seen[emb.tail(d)] && !seen[emb.head(d)] {
                    min_cut.push(d);
                }
            }
            return OracleResult { value, flow, min_cut };
        }
        let mut bottleneck = i64::MAX;
        let mut v = t;
        while v != s {
            let d = pred[v].unwrap();
            bottleneck = bottleneck.min(r.get(d));
            v = emb.tail(d);
        }
        let mut v = t;
        while v != s {
            let d = pred[v].unwrap();
            flow.add(d, bottleneck);
            v = emb.tail(d);
        }
        value += bottleneck;
    }
}

/// Number of augmenting iterations Edmonds–Karp needs; used for run stats.
pub fn edmonds_karp_iterations(
    emb: &PlanarEmbedding,
    c: &CapacityFn,
    s: VertexId,
    t: VertexId,
) -> usize {
    let mut flow = FlowAssignment::zero(emb.dart_count());
    let mut iters = 0;
    loop {
        let r = residual(c, &flow).unwrap();
        let mut pred: Vec<Option<Dart>> = vec![None; emb.vertex_count()];
        let mut seen = vec![false; emb.vertex_count()];
        let mut queue = VecDeque::new();
        seen[s] = true;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            if v == t {
                break;
            }
            for &d in emb.rotation(v) {
                let w = emb.head(d);
                if !seen[w] && r.is_residual(d) {
                    seen[w] = true;
                    pred[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        if !seen[t] {
            return iters;
        }
        let mut bottleneck = i64::MAX;
        let mut v = t;
        while v != s {
            let d = pred[v].unwrap();
            bottleneck = bottleneck.min(r.get(d));
            v = emb.tail(d);
        }
        let mut v = t;
        while v != s {
            let d = pred[v].unwrap();
            flow.add(d, bottleneck);
            v = emb.tail(d);
        }
        iters += 1;
    }
}

/// All simple s-to-t paths through residual darts, in depth-first order.
/// Fails once more than `max_count` paths are found.
pub fn enumerate_residual_paths(
    emb: &PlanarEmbedding,
    c: &CapacityFn,
    s: VertexId,
    t: VertexId,
    max_count: usize,
) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    let mut on_stack = vec![false; emb.vertex_count()];
    let mut stack: Vec<Dart> = Vec::new();
    fn go(
        emb: &PlanarEmbedding,
        c: &CapacityFn,
        v: VertexId,
        t: VertexId,
        on_stack: &mut Vec<bool>,
        stack: &mut Vec<Dart>,
        out: &mut Vec<Path>,
        max_count: usize,
    ) -> Result<()> {
        if v == t {
            if out.len() == max_count {
                return Err(Error::TooManyPaths(max_count));
            }
            out.push(Path::new(emb, stack.clone()));
            return Ok(());
        }
        on_stack[v] = true;
        for &d in emb.rotation(v) {
            let w = emb.head(d);
            if c.is_residual(d) && !on_stack[w] {
                stack.push(d);
                go(emb, c, w, t, on_stack, stack, out, max_count)?;
                stack.pop();
            }
        }
        on_stack[v] = false;
        Ok(())
    }
    go(emb, c, s, t, &mut on_stack, &mut stack, &mut out, max_count)?;
    Ok(out)
}

/// One named check of a verification report.
#[derive(Debug, Clone)]
pub struct CheckEntry {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of verifying a flow against an instance.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub entries: Vec<CheckEntry>,
    pub value: i64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

/// Check antisymmetry, capacity respect, conservation, maximality, value
/// against the oracle, and optionally leftmost-ness of `f`.
pub fn verify_flow(
    emb: &PlanarEmbedding,
    c: &CapacityFn,
    f: &FlowAssignment,
    s: VertexId,
    t: VertexId,
    require_leftmost: bool,
) -> VerificationReport {
    let mut entries = Vec::new();
    let mut push = |name: &'static str, passed: bool, detail: String| {
        entries.push(CheckEntry { name, passed, detail });
    };

    // Antisymmetry is structural for FlowAssignment; re-check anyway.
    let anti = (0..f.len()).all(|d| f.get(d) == -f.get(rev(d)));
    push("antisymmetry", anti, String::new());

    let over: Vec<Dart> = (0..f.len()).filter(|&d| f.get(d) > c.get(d)).collect();
    push("capacity", over.is_empty(), format!("{over:?}"));

    let s_set = BTreeSet::from([s]);
    let t_set = BTreeSet::from([t]);
    let class = classify(emb, c, f, &s_set, &t_set);
    let conserving = matches!(class, FlowClass::Circulation | FlowClass::STFlow { .. });
    push("conservation", conserving, format!("{class:?}"));

    let value = f.net_at(emb, t);
    let feasible = over.is_empty() && conserving;
    let maximal = feasible && crate::flow::is_maximum(emb, c, f, s, t).unwrap_or(false);
    push("maximality", maximal, String::new());

    let oracle = edmonds_karp(emb, c, s, t);
    push(
        "value-vs-oracle",
        value == oracle.value,
        format!("flow {value}, oracle {}", oracle.value),
    );

    if require_leftmost {
        let leftmost = match residual(c, f) {
            Ok(r) => {
                let mut scratch = SpStats::default();
                let (circ, _) = leftmost_circulation(emb, &r, &mut scratch);
                circ.is_zero()
            }
            Err(_) => false,
        };
        push("leftmost", leftmost, String::new());
    }

    VerificationReport { entries, value }
}
