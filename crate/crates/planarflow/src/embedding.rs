//! Combinatorial planar embeddings on the sphere.
//!
//! A graph is stored as a rotation system over darts: each undirected edge
//! contributes two oppositely directed darts, and every vertex carries the
//! clockwise cyclic order of its outgoing darts. Faces are the orbits of the
//! permutation `d -> cw-successor of rev(d) at head(d)`; the orbit containing
//! a dart is the face on its left, so `right_face(d) = face_of(rev(d))`.
//! Flows relate to face potentials by `f[d] = pot[right(d)] - pot[left(d)]`,
//! which makes a visually clockwise cycle enclose non-negative potential.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::flow::FlowAssignment;

pub type VertexId = usize;
pub type Dart = usize;
pub type FaceId = usize;
pub type ArcId = usize;

/// The opposite dart of the same edge. Arc `i` owns darts `2i` and `2i+1`.
#[inline]
pub fn rev(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn arc_of(d: Dart) -> ArcId {
    d >> 1
}

#[inline]
pub fn forward_dart(a: ArcId) -> Dart {
    a << 1
}

/// Endpoints of one arc; the forward dart runs tail to head.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcSpec {
    pub tail: VertexId,
    pub head: VertexId,
}

/// An immutable sphere embedding with designated terminals s and t.
///
/// `ft_corner` pins the corner of the distinguished face f_t = f_infty in the
/// rotation at t; `fs_corner` optionally does the same at s. Corners are
/// named by the outgoing dart they follow in clockwise order.
#[derive(Debug, Clone)]
pub struct PlanarEmbedding {
    n: usize,
    tails: Vec<VertexId>,
    rotations: Vec<Vec<Dart>>,
    rot_pos: Vec<usize>,
    face_of: Vec<FaceId>,
    face_cycles: Vec<Vec<Dart>>,
    components: usize,
    s: VertexId,
    t: VertexId,
    fs_corner: Option<Dart>,
    ft_corner: Dart,
}

impl PlanarEmbedding {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn dart_count(&self) -> usize {
        self.tails.len()
    }

    pub fn arc_count(&self) -> usize {
        self.tails.len() / 2
    }

    pub fn face_count(&self) -> usize {
        self.face_cycles.len()
    }

    pub fn components(&self) -> usize {
        self.components
    }

    #[inline]
    pub fn tail(&self, d: Dart) -> VertexId {
        self.tails[d]
    }

    #[inline]
    pub fn head(&self, d: Dart) -> VertexId {
        self.tails[rev(d)]
    }

    #[inline]
    pub fn face_of(&self, d: Dart) -> FaceId {
        self.face_of[d]
    }

    /// Face on the left side of `d` (the one whose boundary walk uses `d`).
    #[inline]
    pub fn left_face(&self, d: Dart) -> FaceId {
        self.face_of[d]
    }

    #[inline]
    pub fn right_face(&self, d: Dart) -> FaceId {
        self.face_of[rev(d)]
    }

    pub fn face_cycle(&self, f: FaceId) -> &[Dart] {
        &self.face_cycles[f]
    }

    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        &self.rotations[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotations[v].len()
    }

    pub fn s(&self) -> VertexId {
        self.s
    }

    pub fn t(&self) -> VertexId {
        self.t
    }

    pub fn fs_corner(&self) -> Option<Dart> {
        self.fs_corner
    }

    pub fn ft_corner(&self) -> Dart {
        self.ft_corner
    }

    /// The distinguished face f_t = f_infty.
    pub fn ft_face(&self) -> FaceId {
        self.corner_face(self.ft_corner)
    }

    /// Clockwise successor of `d` in the rotation at its tail.
    #[inline]
    pub fn cw_next(&self, d: Dart) -> Dart {
        let v = self.tails[d];
        let rot = &self.rotations[v];
        rot[(self.rot_pos[d] + 1) % rot.len()]
    }

    /// Clockwise predecessor of `d` in the rotation at its tail.
    #[inline]
    pub fn cw_prev(&self, d: Dart) -> Dart {
        let v = self.tails[d];
        let rot = &self.rotations[v];
        rot[(self.rot_pos[d] + rot.len() - 1) % rot.len()]
    }

    /// Next dart of the face boundary walk containing `d`.
    #[inline]
    pub fn next_in_face(&self, d: Dart) -> Dart {
        self.cw_next(rev(d))
    }

    /// Face occupying the corner clockwise after slot `x` at `tail(x)`.
    #[inline]
    pub fn corner_face(&self, x: Dart) -> FaceId {
        self.face_of[rev(x)]
    }

    /// Faces incident to `v`, one per corner, in rotation order (with repeats).
    pub fn corner_faces(&self, v: VertexId) -> impl Iterator<Item = FaceId> + '_ {
        self.rotations[v].iter().map(move |&x| self.corner_face(x))
    }

    /// First corner slot at `v` bounding face `f`, if any.
    pub fn corner_slot(&self, v: VertexId, f: FaceId) -> Option<Dart> {
        self.rotations[v].iter().copied().find(|&x| self.corner_face(x) == f)
    }

    /// Lowest-numbered face incident to both vertices, if one exists.
    pub fn common_face(&self, u: VertexId, v: VertexId) -> Option<FaceId> {
        let at_u: BTreeSet<FaceId> = self.corner_faces(u).collect();
        self.corner_faces(v)
            .filter(|f| at_u.contains(f))
            .min()
    }

    /// Vertices on the boundary of face `f`, in walk order.
    pub fn face_vertices(&self, f: FaceId) -> Vec<VertexId> {
        self.face_cycles[f].iter().map(|&d| self.tails[d]).collect()
    }
}

/// Everything needed to construct an embedding. Used directly by surgery;
/// the public entry point is [`build_embedding`].
pub(crate) struct RawEmbedding {
    pub n: usize,
    pub arcs: Vec<ArcSpec>,
    pub rotations: Vec<Vec<Dart>>,
    pub s: VertexId,
    pub t: VertexId,
    pub fs_corner: Option<Dart>,
    pub ft_corner: Option<Dart>,
    pub allow_disconnected: bool,
}

impl RawEmbedding {
    pub fn build(self) -> Result<PlanarEmbedding> {
        let m = self.arcs.len();
        let dart_count = 2 * m;
        if self.s >= self.n || self.t >= self.n {
            return Err(Error::MalformedRotation("terminal vertex out of range".into()));
        }
        let mut tails = vec![0usize; dart_count];
        for (a, spec) in self.arcs.iter().enumerate() {
            if spec.tail >= self.n || spec.head >= self.n {
                return Err(Error::MalformedRotation(format!(
                    "arc {a} endpoint out of range"
                )));
            }
            tails[2 * a] = spec.tail;
            tails[2 * a + 1] = spec.head;
        }
        if self.rotations.len() != self.n {
            return Err(Error::MalformedRotation(format!(
                "expected {} rotation lines, got {}",
                self.n,
                self.rotations.len()
            )));
        }

        let mut rot_pos = vec![usize::MAX; dart_count];
        for (v, rot) in self.rotations.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if d >= dart_count {
                    return Err(Error::MalformedRotation(format!(
                        "dart {d} out of range in rotation of vertex {v}"
                    )));
                }
                if tails[d] != v {
                    return Err(Error::MalformedRotation(format!(
                        "dart {d} listed at vertex {v} but its tail is {}",
                        tails[d]
                    )));
                }
                if rot_pos[d] != usize::MAX {
                    return Err(Error::MalformedRotation(format!("dart {d} listed twice")));
                }
                rot_pos[d] = i;
            }
        }
        if let Some(d) = rot_pos.iter().position(|&p| p == usize::MAX) {
            return Err(Error::MalformedRotation(format!(
                "dart {d} missing from rotations"
            )));
        }

        // Union over edges; isolated vertices count as their own component.
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut c = x;
            while parent[c] != r {
                let next = parent[c];
                parent[c] = r;
                c = next;
            }
            r
        }
        for spec in &self.arcs {
            let (a, b) = (find(&mut parent, spec.tail), find(&mut parent, spec.head));
            if a != b {
                parent[a] = b;
            }
        }
        let mut roots = BTreeSet::new();
        for v in 0..self.n {
            roots.insert(find(&mut parent, v));
        }
        let components = roots.len();
        if !self.allow_disconnected && components != 1 {
            return Err(Error::Disconnected);
        }

        // Trace faces.
        let mut face_of = vec![usize::MAX; dart_count];
        let mut face_cycles: Vec<Vec<Dart>> = Vec::new();
        for d0 in 0..dart_count {
            if face_of[d0] != usize::MAX {
                continue;
            }
            let f = face_cycles.len();
            let mut cycle = Vec::new();
            let mut d = d0;
            loop {
                face_of[d] = f;
                cycle.push(d);
                // next dart in face = cw successor of rev(d) at head(d)
                let r = rev(d);
                let v = tails[r];
                let rot = &self.rotations[v];
                d = rot[(rot_pos[r] + 1) % rot.len()];
                if d == d0 {
                    break;
                }
            }
            face_cycles.push(cycle);
        }

        // On the sphere each extra component adds one boundary orbit to the
        // region that hosts it, so n - m + #orbits = 2 * #components.
        if self.n + face_cycles.len() != m + 2 * components {
            return Err(Error::NonPlanarRotation);
        }

        if self.rotations[self.t].is_empty() {
            return Err(Error::MalformedRotation("t has no incident darts".into()));
        }
        let ft_corner = match self.ft_corner {
            Some(x) => {
                if x >= dart_count || tails[x] != self.t {
                    return Err(Error::MalformedRotation(
                        "f_t hint is not a dart leaving t".into(),
                    ));
                }
                x
            }
            None => self.rotations[self.t][0],
        };
        let fs_corner = match self.fs_corner {
            Some(x) => {
                if x >= dart_count || tails[x] != self.s {
                    return Err(Error::MalformedRotation(
                        "f_s hint is not a dart leaving s".into(),
                    ));
                }
                Some(x)
            }
            None => None,
        };

        Ok(PlanarEmbedding {
            n: self.n,
            tails,
            rotations: self.rotations,
            rot_pos,
            face_of,
            face_cycles,
            components,
            s: self.s,
            t: self.t,
            fs_corner,
            ft_corner,
        })
    }
}

/// Build a connected embedding from arcs with capacities and per-vertex
/// clockwise rotations. Returns the embedding together with the dart
/// capacity table (arc `i`'s forward dart gets `cap`, its reverse `rev_cap`).
#[allow(clippy::too_many_arguments)]
pub fn build_embedding(
    n: usize,
    arcs: &[(VertexId, VertexId, i64, i64)],
    rotations: Vec<Vec<Dart>>,
    s: VertexId,
    t: VertexId,
    fs_hint: Option<Dart>,
    ft_hint: Option<Dart>,
) -> Result<(PlanarEmbedding, crate::flow::CapacityFn)> {
    let specs: Vec<ArcSpec> = arcs
        .iter()
        .map(|&(tail, head, _, _)| ArcSpec { tail, head })
        .collect();
    let mut caps = Vec::with_capacity(arcs.len() * 2);
    for &(_, _, cap, rev_cap) in arcs {
        caps.push(cap);
        caps.push(rev_cap);
    }
    let emb = RawEmbedding {
        n,
        arcs: specs,
        rotations,
        s,
        t,
        fs_corner: fs_hint,
        ft_corner: ft_hint,
        allow_disconnected: false,
    }
    .build()?;
    let caps = crate::flow::CapacityFn::new(caps)?;
    Ok((emb, caps))
}

/// A directed walk given by consecutive darts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    darts: Vec<Dart>,
    vertices: Vec<VertexId>,
}

impl Path {
    pub fn new(emb: &PlanarEmbedding, darts: Vec<Dart>) -> Path {
        assert!(!darts.is_empty(), "a path needs at least one dart");
        let mut vertices = Vec::with_capacity(darts.len() + 1);
        vertices.push(emb.tail(darts[0]));
        for w in darts.windows(2) {
            assert_eq!(emb.head(w[0]), emb.tail(w[1]), "darts do not chain");
        }
        for &d in &darts {
            vertices.push(emb.head(d));
        }
        Path { darts, vertices }
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Number of darts.
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    pub fn is_simple(&self) -> bool {
        let set: BTreeSet<VertexId> = self.vertices.iter().copied().collect();
        set.len() == self.vertices.len()
    }
}

/// Per-vertex view of a simple s-to-t path: the non-path rotation slots on
/// each side, in clockwise walk order. A slot is the outgoing dart of the
/// edge occupying that rotation position.
#[derive(Debug, Clone)]
pub(crate) struct PathVertexView {
    pub vertex: VertexId,
    pub right_slots: Vec<Dart>,
    pub left_slots: Vec<Dart>,
}

/// Classify every non-path rotation slot along `path` as left or right.
///
/// Interior vertices split at the in/out darts. At s the split runs from the
/// f_s corner (default: the corner just before the first dart); at t it runs
/// to the f_t corner. Index `i` of the result is the path's vertex `i`.
pub(crate) fn path_views(emb: &PlanarEmbedding, path: &Path) -> Result<Vec<PathVertexView>> {
    if !path.is_simple() {
        return Err(Error::NotSimple);
    }
    if path.start() != emb.s() || path.end() != emb.t() {
        return Err(Error::WrongEndpoints);
    }
    let darts = path.darts();
    let mut views = Vec::with_capacity(path.vertices().len());

    // s: clockwise from the first dart, right slots run up to and including
    // the f_s corner slot, the remainder is left.
    {
        let s = emb.s();
        let p0 = darts[0];
        let corner = emb.fs_corner().unwrap_or_else(|| emb.cw_prev(p0));
        let rot = emb.rotation(s);
        let start = rot.iter().position(|&x| x == p0).expect("dart at tail");
        let mut right_slots = Vec::new();
        let mut left_slots = Vec::new();
        let mut past_corner = corner == p0;
        for i in 1..rot.len() {
            let x = rot[(start + i) % rot.len()];
            if past_corner {
                left_slots.push(x);
            } else {
                right_slots.push(x);
                if x == corner {
                    past_corner = true;
                }
            }
        }
        views.push(PathVertexView { vertex: s, right_slots, left_slots });
    }

    for i in 1..darts.len() {
        let v = emb.head(darts[i - 1]);
        let out = darts[i];
        let in_slot = rev(darts[i - 1]);
        let rot = emb.rotation(v);
        let start = rot.iter().position(|&x| x == out).expect("dart at tail");
        let mut right_slots = Vec::new();
        let mut left_slots = Vec::new();
        let mut seen_in = false;
        for j in 1..rot.len() {
            let x = rot[(start + j) % rot.len()];
            if x == in_slot {
                seen_in = true;
            } else if seen_in {
                left_slots.push(x);
            } else {
                right_slots.push(x);
            }
        }
        debug_assert!(seen_in);
        views.push(PathVertexView { vertex: v, right_slots, left_slots });
    }

    // t: clockwise from the incoming slot, left slots run up to and including
    // the f_t corner slot.
    {
        let t = emb.t();
        let z0 = rev(*darts.last().unwrap());
        let corner = emb.ft_corner();
        let rot = emb.rotation(t);
        let start = rot.iter().position(|&x| x == z0).expect("dart at tail");
        let mut right_slots = Vec::new();
        let mut left_slots = Vec::new();
        let mut past_corner = corner == z0;
        for i in 1..rot.len() {
            let x = rot[(start + i) % rot.len()];
            if past_corner {
                right_slots.push(x);
            } else {
                left_slots.push(x);
                if x == corner {
                    past_corner = true;
                }
            }
        }
        views.push(PathVertexView { vertex: t, right_slots, left_slots });
    }

    Ok(views)
}

fn collect_side(
    emb: &PlanarEmbedding,
    path: &Path,
    views: &[PathVertexView],
    left: bool,
) -> Result<BTreeSet<Dart>> {
    let on_path: BTreeSet<VertexId> = path.vertices().iter().copied().collect();
    let pos_of: HashMap<VertexId, usize> = path
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut out = BTreeSet::new();
    for view in views {
        let slots = if left { &view.left_slots } else { &view.right_slots };
        for &x in slots {
            let other = emb.head(x);
            if on_path.contains(&other) {
                let i = pos_of[&view.vertex];
                let j = pos_of[&other];
                if i.abs_diff(j) == 1 {
                    // A parallel copy of a path edge cannot be assigned a
                    // side consistently; the tie-break assumes none exist.
                    return Err(Error::MalformedRotation(
                        "parallel edge with both endpoints on the path".into(),
                    ));
                }
                continue; // chord between path vertices: neither set
            }
            out.insert(x);
            out.insert(rev(x));
        }
    }
    Ok(out)
}

/// Darts with exactly one endpoint on `path` that attach on its left side.
pub fn left_darts(emb: &PlanarEmbedding, path: &Path) -> Result<BTreeSet<Dart>> {
    let views = path_views(emb, path)?;
    collect_side(emb, path, &views, true)
}

/// Darts with exactly one endpoint on `path` that attach on its right side.
pub fn right_darts(emb: &PlanarEmbedding, path: &Path) -> Result<BTreeSet<Dart>> {
    let views = path_views(emb, path)?;
    collect_side(emb, path, &views, false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossDir {
    RightToLeft,
    LeftToRight,
}

/// One crossing between two paths: a maximal shared subpath (possibly a
/// single vertex) entered on one side and left on the other. Positions are
/// vertex indices into the respective paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub q_start: usize,
    pub q_end: usize,
    pub p_start: usize,
    pub p_end: usize,
    pub dir: CrossDir,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Side of `probe_slot` relative to the walk (a in, b out) at vertex v.
/// Left is the clockwise sweep from rev(a) to b.
fn side_at(emb: &PlanarEmbedding, a: Dart, b: Dart, probe_slot: Dart) -> Side {
    let v = emb.tail(b);
    debug_assert_eq!(emb.head(a), v);
    let rot = emb.rotation(v);
    let start = rot.iter().position(|&x| x == rev(a)).expect("slot");
    for i in 1..rot.len() {
        let x = rot[(start + i) % rot.len()];
        if x == b {
            return Side::Right;
        }
        if x == probe_slot {
            return Side::Left;
        }
    }
    unreachable!("probe slot not incident to vertex");
}

/// All crossings of simple path `p` with simple path `q`, ordered along `q`.
pub fn crossings(emb: &PlanarEmbedding, p: &Path, q: &Path) -> Vec<Crossing> {
    assert!(p.is_simple() && q.is_simple(), "crossings expects simple paths");
    let p_pos: HashMap<VertexId, usize> = p
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let qv = q.vertices();
    let qd = q.darts();
    let mut out = Vec::new();

    let mut i = 0;
    while i < qv.len() {
        let Some(&pi) = p_pos.get(&qv[i]) else {
            i += 1;
            continue;
        };
        // Extend the contact along q while p uses the same edges.
        let mut j = i;
        let mut pj = pi;
        let mut orient: i64 = 0; // +1 forward along p, -1 reverse
        while j + 1 < qv.len() {
            let Some(&pn) = p_pos.get(&qv[j + 1]) else { break };
            let d = qd[j];
            let step = pn as i64 - pj as i64;
            if step.abs() != 1 {
                break;
            }
            let p_dart = if step == 1 { p.darts()[pj] } else { p.darts()[pn] };
            let matches = if step == 1 { p_dart == d } else { p_dart == rev(d) };
            if !matches {
                break;
            }
            if orient != 0 && orient != step {
                break;
            }
            orient = step;
            j += 1;
            pj = pn;
        }

        // Decide whether the contact is a crossing.
        let crossing = (|| {
            if i == 0 || j + 1 >= qv.len() {
                return None; // prefix or suffix of q
            }
            let forward = orient >= 0;
            let (probe_start, probe_end) = if forward {
                if pi == 0 || pj >= p.len() {
                    return None; // prefix or suffix of p
                }
                (rev(p.darts()[pi - 1]), p.darts()[pj])
            } else {
                if pi >= p.len() || pj == 0 {
                    return None;
                }
                (p.darts()[pi], rev(p.darts()[pj - 1]))
            };
            let side_start = side_at(emb, qd[i - 1], qd[i], probe_start);
            let side_end = side_at(emb, qd[j - 1], qd[j], probe_end);
            if side_start == side_end {
                return None;
            }
            let dir = if side_start == Side::Right {
                CrossDir::RightToLeft
            } else {
                CrossDir::LeftToRight
            };
            Some(Crossing { q_start: i, q_end: j, p_start: pi, p_end: pj, dir })
        })();
        if let Some(c) = crossing {
            out.push(c);
        }
        i = j + 1;
    }
    out
}

/// Integer potentials on faces, rooted at f_t with potential zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacePotential {
    pub root: FaceId,
    pub values: Vec<i64>,
}

impl FacePotential {
    pub fn get(&self, f: FaceId) -> i64 {
        self.values[f]
    }
}

/// Recover the face potentials inducing circulation `f`, anchored at f_t.
///
/// Fails with `NotACirculation` if no consistent assignment exists.
pub fn potentials_from_circulation(
    emb: &PlanarEmbedding,
    f: &FlowAssignment,
) -> Result<FacePotential> {
    assert_eq!(emb.components(), 1, "potentials need a connected embedding");
    let root = emb.ft_face();
    let mut values = vec![i64::MAX; emb.face_count()];
    values[root] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(root);
    while let Some(face) = queue.pop_front() {
        let base = values[face];
        for &d in emb.face_cycle(face) {
            // face is left of d; crossing d reaches its right face.
            let g = emb.right_face(d);
            let cand = base + f.get(d);
            if values[g] == i64::MAX {
                values[g] = cand;
                queue.push_back(g);
            } else if values[g] != cand {
                return Err(Error::NotACirculation(d));
            }
        }
    }
    debug_assert!(values.iter().all(|&v| v != i64::MAX));
    Ok(FacePotential { root, values })
}

/// A circulation is clockwise when every face potential is non-negative.
pub fn is_clockwise(emb: &PlanarEmbedding, f: &FlowAssignment) -> Result<bool> {
    let pot = potentials_from_circulation(emb, f)?;
    Ok(pot.values.iter().all(|&v| v >= 0))
}

/// Strict left order on simple s-to-t paths: the circulation pushing one unit
/// along `a` and back along `b` must be clockwise and non-trivial.
pub fn is_left_of(emb: &PlanarEmbedding, a: &Path, b: &Path) -> Result<bool> {
    for p in [a, b] {
        if p.start() != emb.s() || p.end() != emb.t() {
            return Err(Error::WrongEndpoints);
        }
        if !p.is_simple() {
            return Err(Error::NotSimple);
        }
    }
    let mut f = FlowAssignment::zero(emb.dart_count());
    for &d in a.darts() {
        f.add(d, 1);
    }
    for &d in b.darts() {
        f.add(d, -1);
    }
    let pot = potentials_from_circulation(emb, &f).expect("path difference is a circulation");
    Ok(pot.values.iter().all(|&v| v >= 0) && pot.values.iter().any(|&v| v > 0))
}

/// Minimum number of faces any curve from s to t must pass through.
///
/// Breadth-first search over faces where consecutive faces must share a
/// vertex, seeded with the faces incident to s.
pub fn compute_phi(emb: &PlanarEmbedding, s: VertexId, t: VertexId) -> usize {
    assert_ne!(s, t, "phi is defined for distinct terminals");
    assert_eq!(emb.components(), 1);
    // vertex -> incident faces (via corners)
    let mut vertex_faces: Vec<BTreeSet<FaceId>> = vec![BTreeSet::new(); emb.vertex_count()];
    for v in 0..emb.vertex_count() {
        for f in emb.corner_faces(v) {
            vertex_faces[v].insert(f);
        }
    }
    let target: BTreeSet<FaceId> = vertex_faces[t].clone();
    let mut dist = vec![usize::MAX; emb.face_count()];
    let mut queue = VecDeque::new();
    for &f in &vertex_faces[s] {
        dist[f] = 1;
        queue.push_back(f);
    }
    let mut best = usize::MAX;
    while let Some(f) = queue.pop_front() {
        if target.contains(&f) {
            best = best.min(dist[f]);
            continue;
        }
        for &v in emb.face_vertices(f).iter() {
            for &g in &vertex_faces[v] {
                if dist[g] == usize::MAX {
                    dist[g] = dist[f] + 1;
                    queue.push_back(g);
                }
            }
        }
    }
    assert_ne!(best, usize::MAX, "face search must reach t in a connected embedding");
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn single_arc_embedding() {
        let (emb, _) = fixtures::single_arc(5);
        assert_eq!(emb.vertex_count(), 2);
        assert_eq!(emb.arc_count(), 1);
        assert_eq!(emb.face_count(), 1);
    }

    #[test]
    fn triangle_has_two_faces() {
        let (emb, _) = fixtures::cw_triangle(1);
        assert_eq!(emb.face_count(), 2);
        assert_eq!(emb.vertex_count() + emb.face_count(), emb.arc_count() + 2);
    }

    #[test]
    fn grid_3x3_has_five_faces() {
        let (emb, _) = fixtures::grid(3, 3, 1);
        assert_eq!(emb.face_count(), 5);
    }

    #[test]
    fn face_lengths_sum_to_dart_count() {
        for (emb, _) in [
            fixtures::single_arc(1),
            fixtures::cw_triangle(2),
            fixtures::diamond(),
            fixtures::grid(4, 3, 7),
        ] {
            let total: usize = (0..emb.face_count()).map(|f| emb.face_cycle(f).len()).sum();
            assert_eq!(total, emb.dart_count());
        }
    }

    #[test]
    fn malformed_rotation_is_rejected() {
        // dart 0 listed twice, dart 1 missing
        let r = RawEmbedding {
            n: 2,
            arcs: vec![ArcSpec { tail: 0, head: 1 }],
            rotations: vec![vec![0, 0], vec![]],
            s: 0,
            t: 1,
            fs_corner: None,
            ft_corner: None,
            allow_disconnected: false,
        }
        .build();
        assert!(matches!(r, Err(Error::MalformedRotation(_))));
    }

    #[test]
    fn disconnected_is_rejected() {
        let r = RawEmbedding {
            n: 4,
            arcs: vec![ArcSpec { tail: 0, head: 1 }, ArcSpec { tail: 2, head: 3 }],
            rotations: vec![vec![0], vec![1], vec![2], vec![3]],
            s: 0,
            t: 1,
            fs_corner: None,
            ft_corner: None,
            allow_disconnected: false,
        }
        .build();
        assert!(matches!(r, Err(Error::Disconnected)));
    }

    #[test]
    fn diamond_side_classification() {
        let (emb, _) = fixtures::diamond();
        let p = fixtures::diamond_left_path(&emb);
        let left = left_darts(&emb, &p).unwrap();
        let right = right_darts(&emb, &p).unwrap();
        assert!(left.is_empty());
        // s->b (dart 2), b->t (dart 6) and their reverses sit right of P;
        // a->b has both of its own endpoints... only a on P, so included.
        assert_eq!(right, BTreeSet::from([2, 3, 6, 7, 8, 9]));
    }

    #[test]
    fn side_sets_partition_incident_darts() {
        let (emb, _) = fixtures::grid(3, 3, 1);
        let p = fixtures::vertex_path(&emb, &[0, 1, 4, 7, 8]);
        let left = left_darts(&emb, &p).unwrap();
        let right = right_darts(&emb, &p).unwrap();
        assert!(left.is_disjoint(&right));
        let on_path: BTreeSet<_> = p.vertices().iter().copied().collect();
        for d in 0..emb.dart_count() {
            let ends = [emb.tail(d), emb.head(d)];
            let cnt = ends.iter().filter(|v| on_path.contains(v)).count();
            let in_sets = left.contains(&d) || right.contains(&d);
            if cnt == 1 {
                assert!(in_sets, "dart {d} with one endpoint on P must be classified");
            } else {
                assert!(!in_sets);
            }
        }
    }

    #[test]
    fn crossings_disjoint_paths_empty() {
        let (emb, _) = fixtures::grid(3, 3, 1);
        // two vertical paths in different columns share no vertex
        let p = fixtures::vertex_path(&emb, &[0, 3]);
        let q = fixtures::vertex_path(&emb, &[2, 5]);
        assert!(crossings(&emb, &p, &q).is_empty());
    }

    #[test]
    fn transversal_paths_cross_once() {
        let (emb, _) = fixtures::grid(3, 3, 1);
        // vertical through the centre vs horizontal through the centre
        let p = fixtures::vertex_path(&emb, &[1, 4, 7]);
        let q = fixtures::vertex_path(&emb, &[3, 4, 5]);
        let pq = crossings(&emb, &p, &q);
        assert_eq!(pq.len(), 1);
        assert_eq!(pq[0].dir, CrossDir::RightToLeft);
        let qp = crossings(&emb, &q, &p);
        assert_eq!(qp.len(), 1);
        assert_eq!(qp[0].dir, CrossDir::LeftToRight);
    }

    #[test]
    fn same_side_touch_is_not_a_crossing() {
        let (emb, _) = fixtures::grid(3, 3, 1);
        // p passes through the centre arriving from the south and leaving
        // east; q runs west-to-north through the centre. Both of p's darts
        // sit right of q at the shared vertex.
        let p = fixtures::vertex_path(&emb, &[0, 1, 4, 5, 2]);
        let q = fixtures::vertex_path(&emb, &[3, 4, 7]);
        assert!(crossings(&emb, &p, &q).is_empty());
        // paths sharing only their endpoints never cross
        let (emb, _) = fixtures::diamond();
        let a = fixtures::diamond_left_path(&emb);
        let b = fixtures::diamond_right_path(&emb);
        assert!(crossings(&emb, &a, &b).is_empty());
    }

    #[test]
    fn crossing_counts_symmetric() {
        let (emb, _) = fixtures::grid(4, 4, 1);
        let p = fixtures::vertex_path(&emb, &[0, 1, 5, 6, 10, 11, 15]);
        let q = fixtures::vertex_path(&emb, &[0, 4, 5, 9, 10, 14, 15]);
        let pq = crossings(&emb, &p, &q);
        let qp = crossings(&emb, &q, &p);
        assert_eq!(pq.len(), qp.len());
    }

    #[test]
    fn zero_circulation_has_zero_potentials() {
        let (emb, _) = fixtures::diamond();
        let f = FlowAssignment::zero(emb.dart_count());
        let pot = potentials_from_circulation(&emb, &f).unwrap();
        assert!(pot.values.iter().all(|&v| v == 0));
        assert!(is_clockwise(&emb, &f).unwrap());
    }

    #[test]
    fn unit_triangle_potentials() {
        let (emb, _) = fixtures::cw_triangle(1);
        let mut f = FlowAssignment::zero(emb.dart_count());
        for a in 0..3 {
            f.add(forward_dart(a), 1);
        }
        let pot = potentials_from_circulation(&emb, &f).unwrap();
        let inner: i64 = pot.values.iter().copied().max().unwrap();
        assert_eq!(pot.get(emb.ft_face()), 0);
        assert_eq!(inner, 1);
        assert!(is_clockwise(&emb, &f).unwrap());
        // counterclockwise variant
        let mut g = FlowAssignment::zero(emb.dart_count());
        for a in 0..3 {
            g.add(forward_dart(a) ^ 1, 1);
        }
        let pot = potentials_from_circulation(&emb, &g).unwrap();
        assert_eq!(pot.values.iter().copied().min().unwrap(), -1);
        assert!(!is_clockwise(&emb, &g).unwrap());
    }

    #[test]
    fn potential_round_trip() {
        let (emb, _) = fixtures::grid(3, 3, 1);
        // a clockwise unit square around the south-west cell
        let mut f = FlowAssignment::zero(emb.dart_count());
        let cycle = fixtures::vertex_cycle_darts(&emb, &[0, 3, 4, 1]);
        for d in cycle {
            f.add(d, 1);
        }
        let pot = potentials_from_circulation(&emb, &f).unwrap();
        for d in 0..emb.dart_count() {
            assert_eq!(f.get(d), pot.get(emb.right_face(d)) - pot.get(emb.left_face(d)));
        }
    }

    #[test]
    fn not_a_circulation_detected() {
        let (emb, _) = fixtures::diamond();
        let mut f = FlowAssignment::zero(emb.dart_count());
        f.add(0, 1); // unit flow on s->a alone is not a circulation
        assert!(matches!(
            potentials_from_circulation(&emb, &f),
            Err(Error::NotACirculation(_))
        ));
    }

    #[test]
    fn left_path_of_diamond() {
        let (emb, _) = fixtures::diamond();
        let a = fixtures::diamond_left_path(&emb);
        let b = fixtures::diamond_right_path(&emb);
        assert!(is_left_of(&emb, &a, &b).unwrap());
        assert!(!is_left_of(&emb, &b, &a).unwrap());
        assert!(!is_left_of(&emb, &a, &a).unwrap());
    }

    #[test]
    fn phi_trivial_cases() {
        let (emb, _) = fixtures::single_arc(3);
        assert_eq!(compute_phi(&emb, emb.s(), emb.t()), 1);
        let (emb, _) = fixtures::diamond();
        assert_eq!(compute_phi(&emb, emb.s(), emb.t()), 1);
    }

    #[test]
    fn phi_grid_center_to_corner() {
        // centre of a (2k+1) x (2k+1) grid to its corner needs k faces
        for k in 1..=3usize {
            let side = 2 * k + 1;
            let (emb, _) = fixtures::grid_with_terminals(side, side, 1, (side * side) / 2, 0);
            assert_eq!(compute_phi(&emb, emb.s(), emb.t()), k, "k = {k}");
        }
    }

    #[test]
    fn phi_invariant_under_relabeling() {
        let (emb, _) = fixtures::grid_with_terminals(5, 5, 1, 12, 0);
        let phi = compute_phi(&emb, emb.s(), emb.t());
        let (emb2, _) = fixtures::relabeled(&emb, 3);
        assert_eq!(compute_phi(&emb2, emb2.s(), emb2.t()), phi);
    }
}
