//! Flow assignments over darts: capacities, residuals, classification,
//! value, decomposition and clockwise-acyclicity.

use std::collections::{BTreeSet, VecDeque};

use crate::dual_sp;
use crate::embedding::{rev, Dart, PlanarEmbedding, VertexId};
use crate::error::{Error, Result};

/// Non-negative integer capacity per dart. The two darts of an arc carry
/// independent capacities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityFn {
    values: Vec<i64>,
}

impl CapacityFn {
    pub fn new(values: Vec<i64>) -> Result<CapacityFn> {
        if let Some(d) = values.iter().position(|&c| c < 0) {
            return Err(Error::CapacityViolated(d));
        }
        Ok(CapacityFn { values })
    }

    pub fn zero(dart_count: usize) -> CapacityFn {
        CapacityFn { values: vec![0; dart_count] }
    }

    #[inline]
    pub fn get(&self, d: Dart) -> i64 {
        self.values[d]
    }

    pub fn set(&mut self, d: Dart, c: i64) {
        assert!(c >= 0);
        self.values[d] = c;
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.values.iter().sum()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    #[inline]
    pub fn is_residual(&self, d: Dart) -> bool {
        self.values[d] > 0
    }
}

/// Antisymmetric integer flow per dart: `f[rev d] = -f[d]` always holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAssignment {
    values: Vec<i64>,
}

impl FlowAssignment {
    pub fn zero(dart_count: usize) -> FlowAssignment {
        FlowAssignment { values: vec![0; dart_count] }
    }

    /// Normalize an arbitrary per-dart table into antisymmetric net form.
    pub fn from_net(values: Vec<i64>) -> FlowAssignment {
        let mut f = FlowAssignment::zero(values.len());
        for (d, &v) in values.iter().enumerate() {
            if d % 2 == 0 {
                f.set(d, v - values[rev(d)]);
            }
        }
        f
    }

    #[inline]
    pub fn get(&self, d: Dart) -> i64 {
        self.values[d]
    }

    /// Set the flow on `d` (and `-f` on its reverse).
    #[inline]
    pub fn set(&mut self, d: Dart, v: i64) {
        self.values[d] = v;
        self.values[rev(d)] = -v;
    }

    #[inline]
    pub fn add(&mut self, d: Dart, v: i64) {
        self.values[d] += v;
        self.values[rev(d)] -= v;
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add_assign(&mut self, other: &FlowAssignment) {
        assert_eq!(self.values.len(), other.values.len());
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += b;
        }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Net flow into `v`: the sum over darts with head `v`.
    pub fn net_at(&self, emb: &PlanarEmbedding, v: VertexId) -> i64 {
        emb.rotation(v).iter().map(|&out| -self.values[out]).sum()
    }
}

/// Residual capacities `c - f`. Fails if `f` exceeds `c` on any dart.
pub fn residual(c: &CapacityFn, f: &FlowAssignment) -> Result<CapacityFn> {
    assert_eq!(c.len(), f.len());
    let mut out = Vec::with_capacity(c.len());
    for d in 0..c.len() {
        let r = c.get(d) - f.get(d);
        if r < 0 {
            return Err(Error::CapacityViolated(d));
        }
        out.push(r);
    }
    Ok(CapacityFn { values: out })
}

/// How a flow assignment relates to capacities and terminal sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowClass {
    /// Capacity violated somewhere.
    Infeasible { violated: Vec<Dart> },
    /// Feasible, zero net flow everywhere.
    Circulation,
    /// Feasible, deficits confined to S and excesses to T.
    STFlow { sources: Vec<VertexId>, sinks: Vec<VertexId> },
    /// Feasible but unbalanced outside the terminal sets.
    Pseudoflow { excess: Vec<VertexId>, deficit: Vec<VertexId> },
}

/// Classify `f` against capacities and terminal sets.
pub fn classify(
    emb: &PlanarEmbedding,
    c: &CapacityFn,
    f: &FlowAssignment,
    s_set: &BTreeSet<VertexId>,
    t_set: &BTreeSet<VertexId>,
) -> FlowClass {
    let violated: Vec<Dart> = (0..c.len()).filter(|&d| f.get(d) > c.get(d)).collect();
    if !violated.is_empty() {
        return FlowClass::Infeasible { violated };
    }
    let mut excess = Vec::new();
    let mut deficit = Vec::new();
    for v in 0..emb.vertex_count() {
        let net = f.net_at(emb, v);
        if net > 0 {
            excess.push(v);
        } else if net < 0 {
            deficit.push(v);
        }
    }
    if excess.is_empty() && deficit.is_empty() {
        return FlowClass::Circulation;
    }
    let deficits_ok = deficit.iter().all(|v| s_set.contains(v));
    let excesses_ok = excess.iter().all(|v| t_set.contains(v));
    if deficits_ok && excesses_ok {
        FlowClass::STFlow { sources: deficit, sinks: excess }
    } else {
        FlowClass::Pseudoflow { excess, deficit }
    }
}

/// Value of a flow: the negated total net flow of its sources.
pub fn flow_value(
    emb: &PlanarEmbedding,
    f: &FlowAssignment,
    s_set: &BTreeSet<VertexId>,
) -> Result<i64> {
    let mut total = 0;
    for &v in s_set {
        let net = f.net_at(emb, v);
        if net > 0 {
            return Err(Error::NotAFlow(format!("source {v} has positive net flow")));
        }
        total -= net;
    }
    Ok(total)
}

/// True when no residual s-to-t path exists (breadth-first search over darts
/// with positive residual capacity).
pub fn is_maximum(
    emb: &PlanarEmbedding,
    c: &CapacityFn,
    f: &FlowAssignment,
    s: VertexId,
    t: VertexId,
) -> Result<bool> {
    let r = residual(c, f)?;
    Ok(!reachable(emb, &r, s, t))
}

pub(crate) fn reachable(emb: &PlanarEmbedding, caps: &CapacityFn, s: VertexId, t: VertexId) -> bool {
    let mut seen = vec![false; emb.vertex_count()];
    let mut queue = VecDeque::new();
    seen[s] = true;
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        if v == t {
            return true;
        }
        for &d in emb.rotation(v) {
            let w = emb.head(d);
            if caps.is_residual(d) && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    false
}

/// A weighted simple path or cycle extracted from a flow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowComponent {
    pub darts: Vec<Dart>,
    pub weight: i64,
}

/// Decompose a pseudoflow into weighted simple source-to-sink paths and
/// simple cycles whose signed sum reproduces it exactly.
pub fn decompose(
    emb: &PlanarEmbedding,
    f: &FlowAssignment,
) -> (Vec<FlowComponent>, Vec<FlowComponent>) {
    let mut work = f.clone();
    let mut paths = Vec::new();
    let mut cycles = Vec::new();

    // Walk forward along positive-flow darts from `v`, peeling off any cycle
    // encountered; stop when a vertex with negative... the walk ends at a
    // vertex with no positive outgoing flow (an excess vertex for paths).
    let first_flow_out = |work: &FlowAssignment, v: VertexId| -> Option<Dart> {
        emb.rotation(v).iter().copied().find(|&d| work.get(d) > 0)
    };

    // Deficit vertices seed paths.
    loop {
        let mut start = None;
        for v in 0..emb.vertex_count() {
            if work.net_at(emb, v) < 0 {
                start = Some(v);
                break;
            }
        }
        let Some(s0) = start else { break };
        // trace a walk, peeling cycles on revisit
        let mut pos_in_walk: Vec<Option<usize>> = vec![None; emb.vertex_count()];
        let mut walk: Vec<Dart> = Vec::new();
        let mut v = s0;
        pos_in_walk[v] = Some(0);
        loop {
            let Some(d) = first_flow_out(&work, v) else { break };
            let w = emb.head(d);
            if let Some(at) = pos_in_walk[w] {
                // cycle from `at` to the end
                let cycle: Vec<Dart> = walk[at..].iter().copied().chain([d]).collect();
                let weight = cycle.iter().map(|&x| work.get(x)).min().unwrap();
                for &x in &cycle {
                    work.add(x, -weight);
                }
                cycles.push(FlowComponent { darts: cycle.clone(), weight });
                for &x in &walk[at..] {
                    pos_in_walk[emb.head(x)] = None;
                }
                walk.truncate(at);
                v = w;
                pos_in_walk[v] = Some(walk.len());
                continue;
            }
            walk.push(d);
            pos_in_walk[w] = Some(walk.len());
            v = w;
        }
        if walk.is_empty() {
            break;
        }
        let weight = walk.iter().map(|&x| work.get(x)).min().unwrap();
        debug_assert!(weight > 0);
        for &x in &walk {
            work.add(x, -weight);
        }
        paths.push(FlowComponent { darts: walk, weight });
    }

    // What remains is a circulation; peel cycles.
    loop {
        let Some(d0) = (0..work.len()).find(|&d| work.get(d) > 0) else { break };
        let mut pos_in_walk: Vec<Option<usize>> = vec![None; emb.vertex_count()];
        let mut walk = vec![d0];
        pos_in_walk[emb.tail(d0)] = Some(0);
        let mut v = emb.head(d0);
        loop {
            if let Some(at) = pos_in_walk[v] {
                let cycle: Vec<Dart> = walk[at..].to_vec();
                let weight = cycle.iter().map(|&x| work.get(x)).min().unwrap();
                for &x in &cycle {
                    work.add(x, -weight);
                }
                cycles.push(FlowComponent { darts: cycle, weight });
                break;
            }
            pos_in_walk[v] = Some(walk.len());
            let d = first_flow_out(&work, v).expect("circulation keeps positive out-darts");
            walk.push(d);
            v = emb.head(d);
        }
    }
    debug_assert!(work.is_zero());
    (paths, cycles)
}

/// True when no clockwise cycle is residual: the leftmost circulation of `c`
/// is identically zero.
pub fn is_cw_acyclic(emb: &PlanarEmbedding, c: &CapacityFn) -> bool {
    let mut scratch = dual_sp::SpStats::default();
    let (circ, _) = dual_sp::leftmost_circulation(emb, c, &mut scratch);
    circ.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::forward_dart;
    use crate::fixtures;

    #[test]
    fn residual_basics() {
        let (emb, c) = fixtures::single_arc(5);
        let zero = FlowAssignment::zero(emb.dart_count());
        assert_eq!(residual(&c, &zero).unwrap(), c);
        let mut f = FlowAssignment::zero(emb.dart_count());
        f.set(0, 3);
        let r = residual(&c, &f).unwrap();
        assert_eq!(r.get(0), 2);
        assert_eq!(r.get(1), 3);
        // involution: residual(residual(c,f), -f) = c
        let mut neg = FlowAssignment::zero(emb.dart_count());
        neg.set(0, -3);
        assert_eq!(residual(&r, &neg).unwrap(), c);
        // over capacity
        f.set(0, 6);
        assert!(matches!(residual(&c, &f), Err(Error::CapacityViolated(0))));
    }

    #[test]
    fn classify_cases() {
        let (emb, c) = fixtures::diamond();
        let s_set = BTreeSet::from([emb.s()]);
        let t_set = BTreeSet::from([emb.t()]);
        let zero = FlowAssignment::zero(emb.dart_count());
        assert_eq!(classify(&emb, &c, &zero, &s_set, &t_set), FlowClass::Circulation);

        let mut f = FlowAssignment::zero(emb.dart_count());
        f.set(0, 1); // s->a
        f.set(4, 1); // a->t
        assert_eq!(
            classify(&emb, &c, &f, &s_set, &t_set),
            FlowClass::STFlow { sources: vec![emb.s()], sinks: vec![emb.t()] }
        );
        assert_eq!(flow_value(&emb, &f, &s_set).unwrap(), 1);

        let mut g = FlowAssignment::zero(emb.dart_count());
        g.set(0, 1); // stops at a
        assert_eq!(
            classify(&emb, &c, &g, &s_set, &t_set),
            FlowClass::Pseudoflow { excess: vec![1], deficit: vec![emb.s()] }
        );
    }

    #[test]
    fn maximality_trivial() {
        let (emb, c) = fixtures::single_arc(5);
        let mut f = FlowAssignment::zero(emb.dart_count());
        f.set(0, 5);
        assert!(is_maximum(&emb, &c, &f, emb.s(), emb.t()).unwrap());
        let zero = FlowAssignment::zero(emb.dart_count());
        assert!(!is_maximum(&emb, &c, &zero, emb.s(), emb.t()).unwrap());
    }

    #[test]
    fn decompose_round_trip() {
        let (emb, _) = fixtures::diamond();
        let mut f = FlowAssignment::zero(emb.dart_count());
        // two units via a, one via b, one around the a->b chord
        f.set(0, 2);
        f.set(4, 1);
        f.set(8, 1);
        f.set(2, 1);
        f.set(6, 2);
        let (paths, cycles) = decompose(&emb, &f);
        let mut sum = FlowAssignment::zero(emb.dart_count());
        for comp in paths.iter().chain(&cycles) {
            for &d in &comp.darts {
                sum.add(d, comp.weight);
            }
        }
        assert_eq!(sum, f);
        for p in &paths {
            assert_eq!(emb.tail(p.darts[0]), emb.s());
            assert_eq!(emb.head(*p.darts.last().unwrap()), emb.t());
        }
    }

    #[test]
    fn decompose_unit_cycle() {
        let (emb, _) = fixtures::cw_triangle(1);
        let mut f = FlowAssignment::zero(emb.dart_count());
        for a in 0..3 {
            f.add(forward_dart(a), 1);
        }
        let (paths, cycles) = decompose(&emb, &f);
        assert!(paths.is_empty());
        assert_eq!(cycles.len(), 1);
        assert!(crate::embedding::is_clockwise(&emb, &f).unwrap());
    }

    #[test]
    fn cw_acyclicity() {
        let (emb, c) = fixtures::cw_triangle(1);
        assert!(!is_cw_acyclic(&emb, &c));
        let (emb, c) = fixtures::single_arc(5);
        assert!(is_cw_acyclic(&emb, &c));
        let (emb, _) = fixtures::cw_triangle(1);
        assert!(is_cw_acyclic(&emb, &CapacityFn::zero(emb.dart_count())));
    }

    #[test]
    fn cw_acyclic_matches_exhaustive_cycle_check() {
        for (emb, c) in [
            fixtures::cw_triangle(1),
            fixtures::diamond(),
            fixtures::single_arc(2),
        ] {
            let fast = is_cw_acyclic(&emb, &c);
            let slow = !fixtures::exhaustive_cw_residual_cycle_exists(&emb, &c);
            assert_eq!(fast, slow);
        }
    }
}
