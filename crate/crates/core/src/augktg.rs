//! Augmented knotted trivalent graphs: fat-graph diagrams, the A/U/X move
//! system, Reidemeister-I simplification, a canonical diagram signature,
//! deduplicated enumeration, and PD-code export.
//!
//! A diagram is a fat graph stored as half-edges: each half-edge knows its
//! partner (the other half of its edge), the next half-edge in the cyclic
//! (counterclockwise) order at its vertex, and an under-crossing flag. All
//! vertices are trivalent (graph vertices) or 4-valent (crossings); at a
//! crossing the two opposite half-edges of the under strand are flagged.

use std::collections::{BTreeMap, HashSet};
use std::sync::Mutex;

use thiserror::Error;

use crate::pool;

#[derive(Debug, Error)]
pub enum AugktgError {
    #[error("vertex {0} is not trivalent")]
    NotTrivalent(usize),
    #[error("edge endpoints must be distinct trivalent vertices")]
    BadUnzipEdge,
    #[error("diagram is disconnected")]
    Disconnected,
    #[error("diagram has trivalent vertices; not a link projection")]
    NotALink,
    #[error("removing a kink would orphan a crossing-free loop")]
    FreeLoop,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FatGraph {
    partner: Vec<u32>,
    next: Vec<u32>,
    under: Vec<bool>,
}

/// Canonical signature of a diagram: the lexicographically smallest
/// traversal encoding over all start half-edges and over the mirror and
/// belt-swap normalizations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FatGraphSig(Vec<u32>);

impl std::fmt::Display for FatGraphSig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "fgsig1:")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for FatGraphSig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// PD code: one 4-tuple of strand labels per crossing, counterclockwise
/// from the incoming under-strand.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PdCode(pub Vec<[u32; 4]>);

impl std::fmt::Display for PdCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{},{},{})", x[0], x[1], x[2], x[3])?;
        }
        write!(f, "]")
    }
}

impl FatGraph {
    pub fn num_half_edges(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, h: usize) -> usize {
        self.partner[h] as usize
    }

    pub fn next(&self, h: usize) -> usize {
        self.next[h] as usize
    }

    pub fn is_under(&self, h: usize) -> bool {
        self.under[h]
    }

    /// Vertices as next-orbits, each listed from its smallest half-edge.
    pub fn vertices(&self) -> Vec<Vec<u32>> {
        let n = self.num_half_edges();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for h in 0..n {
            if seen[h] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = h;
            loop {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.next(x);
                if x == h {
                    break;
                }
            }
            out.push(cycle);
        }
        out
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices().len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_half_edges() / 2
    }

    /// Faces of the fat graph: orbits of next of partner.
    pub fn num_faces(&self) -> usize {
        let n = self.num_half_edges();
        let mut seen = vec![false; n];
        let mut count = 0;
        for h in 0..n {
            if seen[h] {
                continue;
            }
            count += 1;
            let mut x = h;
            while !seen[x] {
                seen[x] = true;
                x = self.next(self.partner(x));
            }
        }
        count
    }

    /// V - E + F, which stays 2 for the planar diagrams built here.
    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    pub fn trivalent_vertices(&self) -> Vec<Vec<u32>> {
        self.vertices().into_iter().filter(|v| v.len() == 3).collect()
    }

    pub fn num_trivalent(&self) -> usize {
        self.trivalent_vertices().len()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_half_edges();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(h) = stack.pop() {
            for y in [self.partner(h), self.next(h)] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }

    /// Structural invariants: partner a fixed-point-free involution, next a
    /// permutation, valences 3 or 4, crossings flagged on one opposite pair.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.num_half_edges();
        for h in 0..n {
            let p = self.partner(h);
            if p == h || self.partner(p) != h {
                return Err(format!("partner not a fixed-point-free involution at {h}"));
            }
        }
        let mut indeg = vec![0usize; n];
        for h in 0..n {
            indeg[self.next(h)] += 1;
        }
        if indeg.iter().any(|&d| d != 1) {
            return Err("next is not a permutation".to_string());
        }
        for v in self.vertices() {
            match v.len() {
                3 => {
                    if v.iter().any(|&h| self.under[h as usize]) {
                        return Err("flag on a trivalent vertex".to_string());
                    }
                }
                4 => {
                    let flags: Vec<bool> =
                        v.iter().map(|&h| self.under[h as usize]).collect();
                    let count = flags.iter().filter(|&&b| b).count();
                    if count != 2 {
                        return Err(format!("crossing with {count} flags"));
                    }
                    // flagged halves must be opposite in the cyclic order
                    let pos: Vec<usize> = (0..4).filter(|&i| flags[i]).collect();
                    if (pos[1] - pos[0]) != 2 {
                        return Err("flags not opposite at a crossing".to_string());
                    }
                }
                d => return Err(format!("vertex of valence {d}")),
            }
        }
        Ok(())
    }
}

/// The planar complete graph on four vertices: the seed of every AugKTG.
pub fn k4() -> FatGraph {
    // half-edge h(v, slot): vertex v's slots in counterclockwise order
    // v0: [->1, ->2, ->3], v1: [->2, ->0, ->3], v2: [->3, ->0, ->1],
    // v3: [->1, ->0, ->2]
    let targets = [[1, 2, 3], [2, 0, 3], [3, 0, 1], [1, 0, 2]];
    let idx = |v: usize, slot: usize| (3 * v + slot) as u32;
    let mut partner = vec![0u32; 12];
    let mut next = vec![0u32; 12];
    for v in 0..4 {
        for slot in 0..3 {
            next[idx(v, slot) as usize] = idx(v, (slot + 1) % 3);
            let w = targets[v][slot];
            let back = targets[w].iter().position(|&x| x == v).unwrap();
            partner[idx(v, slot) as usize] = idx(w, back);
        }
    }
    let g = FatGraph {
        partner,
        next,
        under: vec![false; 12],
    };
    debug_assert_eq!(g.check_invariants(), Ok(()));
    debug_assert_eq!(g.euler_characteristic(), 2);
    g
}

/// Rebuilds a graph dropping the half-edges in `dead`, renumbering densely.
fn compact(partner: &[u32], next: &[u32], under: &[bool], dead: &[bool]) -> FatGraph {
    let n = partner.len();
    let mut new_id = vec![u32::MAX; n];
    let mut count = 0u32;
    for h in 0..n {
        if !dead[h] {
            new_id[h] = count;
            count += 1;
        }
    }
    let mut g = FatGraph {
        partner: vec![0; count as usize],
        next: vec![0; count as usize],
        under: vec![false; count as usize],
    };
    for h in 0..n {
        if dead[h] {
            continue;
        }
        let nh = new_id[h] as usize;
        g.partner[nh] = new_id[partner[h] as usize];
        g.next[nh] = new_id[next[h] as usize];
        g.under[nh] = under[h];
        debug_assert_ne!(g.partner[nh], u32::MAX, "dangling partner");
        debug_assert_ne!(g.next[nh], u32::MAX, "dangling next");
    }
    g
}

/// Replaces a trivalent vertex by a triangle: two more vertices, three more
/// edges, everything still trivalent.
pub fn a_move(g: &FatGraph, vertex: usize) -> Result<FatGraph, AugktgError> {
    let vertices = g.vertices();
    let v = vertices.get(vertex).ok_or(AugktgError::NotTrivalent(vertex))?;
    if v.len() != 3 {
        return Err(AugktgError::NotTrivalent(vertex));
    }
    let h: Vec<usize> = v.iter().map(|&x| x as usize).collect();
    let n = g.num_half_edges();
    let mut partner: Vec<u32> = g.partner.clone();
    let mut next: Vec<u32> = g.next.clone();
    let mut under = g.under.clone();
    // new halves: c_i = n + 2i (toward the next triangle corner),
    // d_i = n + 2i + 1 (toward the previous one)
    partner.extend([0, 0, 0, 0, 0, 0]);
    next.extend([0, 0, 0, 0, 0, 0]);
    under.extend([false; 6]);
    for i in 0..3 {
        let c = (n + 2 * i) as u32;
        let d = (n + 2 * i + 1) as u32;
        next[h[i]] = c;
        next[c as usize] = d;
        next[d as usize] = h[i] as u32;
        partner[c as usize] = (n + 2 * ((i + 1) % 3) + 1) as u32;
        partner[d as usize] = (n + 2 * ((i + 2) % 3)) as u32;
    }
    let out = FatGraph {
        partner,
        next,
        under,
    };
    debug_assert_eq!(out.check_invariants(), Ok(()));
    Ok(out)
}

/// Twist inserted by an X-move: none (U-move), or a single crossing of
/// either handedness.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Twist {
    None,
    Positive,
    Negative,
}

/// Unzips the edge through half-edge `h` (its endpoints must be distinct
/// trivalent vertices) and adds an unknotted belt around the two resulting
/// strands; a twist additionally inserts one half-twist between them.
fn unzip(g: &FatGraph, h: usize, twist: Twist) -> Result<FatGraph, AugktgError> {
    let g0 = h;
    let g1 = g.partner(g0);
    let p1 = g.next(g0);
    let p2 = g.next(p1);
    let q1 = g.next(g1);
    let q2 = g.next(q1);
    if g.next(p2) != g0 || g.next(q2) != g1 {
        return Err(AugktgError::BadUnzipEdge);
    }
    if [p1, p2, q1, q2].contains(&g1) {
        return Err(AugktgError::BadUnzipEdge);
    }

    let n = g.num_half_edges();
    let twisted = twist != Twist::None;
    let extra = if twisted { 20 } else { 16 };
    let mut partner: Vec<u32> = g.partner.clone();
    let mut next: Vec<u32> = g.next.clone();
    let mut under = g.under.clone();
    partner.extend(std::iter::repeat(u32::MAX).take(extra));
    next.extend(std::iter::repeat(u32::MAX).take(extra));
    under.extend(std::iter::repeat(false).take(extra));

    // crossing i at n + 4i with halves [w, s, e, n'] in counterclockwise
    // order; x1 top-left on strand 1, x2 bottom-left on strand 2, x3
    // bottom-right, x4 top-right; the optional twist crossing is x5
    let w = |i: usize| (n + 4 * i) as u32;
    let s = |i: usize| (n + 4 * i + 1) as u32;
    let e = |i: usize| (n + 4 * i + 2) as u32;
    let nn = |i: usize| (n + 4 * i + 3) as u32;
    let num_x = if twisted { 5 } else { 4 };
    for i in 0..num_x {
        next[w(i) as usize] = s(i);
        next[s(i) as usize] = e(i);
        next[e(i) as usize] = nn(i);
        next[nn(i) as usize] = w(i);
    }
    let mut connect = |a: u32, b: u32| {
        partner[a as usize] = b;
        partner[b as usize] = a;
    };

    // belt: left side under, right side over
    connect(s(0), nn(1));
    connect(s(1), s(2));
    connect(nn(2), s(3));
    connect(nn(3), nn(0));
    under[s(0) as usize] = true;
    under[nn(0) as usize] = true;
    under[s(1) as usize] = true;
    under[nn(1) as usize] = true;
    under[w(2) as usize] = true;
    under[e(2) as usize] = true;
    under[w(3) as usize] = true;
    under[e(3) as usize] = true;

    // strand interiors
    connect(e(0), w(3));
    connect(e(1), w(2));
    if twisted {
        connect(e(3), w(4));
        connect(e(2), s(4));
        let (ua, ub) = if twist == Twist::Positive {
            (w(4), e(4))
        } else {
            (s(4), nn(4))
        };
        under[ua as usize] = true;
        under[ub as usize] = true;
    }

    // strand ends: ports into the surviving graph; a port's partner may
    // itself be one of the removed halves, in which case the two ports are
    // spliced together directly
    let ports: BTreeMap<usize, u32> = if twisted {
        BTreeMap::from([(p1, w(0)), (p2, w(1)), (q1, e(4)), (q2, nn(4))])
    } else {
        BTreeMap::from([(p1, w(0)), (p2, w(1)), (q1, e(2)), (q2, e(3))])
    };
    let dead_set = [g0, g1, p1, p2, q1, q2];
    for (&hh, &port) in &ports {
        let t = g.partner(hh);
        if let Some(&other_port) = ports.get(&t) {
            if hh < t {
                connect(port, other_port);
            }
        } else {
            debug_assert!(!dead_set.contains(&t));
            connect(port, t as u32);
        }
    }

    let mut dead = vec![false; partner.len()];
    for d in dead_set {
        dead[d] = true;
    }
    let out = compact(&partner, &next, &under, &dead);
    if let Err(e) = out.check_invariants() {
        panic!("unzip produced a bad graph: {e}");
    }
    Ok(out)
}

pub fn u_move(g: &FatGraph, h: usize) -> Result<FatGraph, AugktgError> {
    unzip(g, h, Twist::None)
}

/// X-move with the positive half-twist; the enumeration also tries the
/// mirrored twist, which is a genuinely different diagram once other
/// crossings exist.
pub fn x_move(g: &FatGraph, h: usize) -> Result<FatGraph, AugktgError> {
    unzip(g, h, Twist::Positive)
}

pub fn x_move_mirrored(g: &FatGraph, h: usize) -> Result<FatGraph, AugktgError> {
    unzip(g, h, Twist::Negative)
}

/// Removes all monogon crossings (Reidemeister I), repeatedly.
pub fn simplify_r1(g: &FatGraph) -> Result<FatGraph, AugktgError> {
    let mut cur = g.clone();
    'outer: loop {
        for v in cur.vertices() {
            if v.len() != 4 {
                continue;
            }
            for i in 0..4 {
                let a = v[i] as usize;
                let b = v[(i + 1) % 4] as usize;
                if cur.partner(a) == b {
                    // kink: the continuing strand joins across the vertex
                    let c = v[(i + 2) % 4] as usize;
                    let d = v[(i + 3) % 4] as usize;
                    if cur.partner(c) == d {
                        return Err(AugktgError::FreeLoop);
                    }
                    let pc = cur.partner(c) as u32;
                    let pd = cur.partner(d) as u32;
                    let mut partner = cur.partner.clone();
                    let next = cur.next.clone();
                    let under = cur.under.clone();
                    partner[pc as usize] = pd;
                    partner[pd as usize] = pc;
                    let mut dead = vec![false; partner.len()];
                    for x in [a, b, c, d] {
                        dead[x] = true;
                    }
                    cur = compact(&partner, &next, &under, &dead);
                    continue 'outer;
                }
            }
        }
        break;
    }
    debug_assert_eq!(cur.check_invariants(), Ok(()));
    Ok(cur)
}

/// Strand components: orbits of the step that enters a crossing and leaves
/// through the opposite half-edge. Only meaningful once every vertex is
/// 4-valent.
fn components(g: &FatGraph) -> Vec<Vec<u32>> {
    let n = g.num_half_edges();
    // step: arriving half h -> arriving half at the next crossing
    let step = |h: usize| g.partner(g.next(g.next(h)));
    let mut claimed = vec![false; n];
    let mut out = Vec::new();
    for h in 0..n {
        if claimed[h] {
            continue;
        }
        // the orbit of `step` through h, plus the reversed direction
        let mut orbit = Vec::new();
        let mut x = h;
        loop {
            orbit.push(x as u32);
            claimed[x] = true;
            claimed[g.next(g.next(x))] = true; // the exit half
            x = step(x);
            if x == h {
                break;
            }
        }
        out.push(orbit);
    }
    out
}

/// Belt detection: a circle component without self-crossings whose
/// under/over pattern splits into at most one block of each.
fn belts(g: &FatGraph) -> Vec<Vec<u32>> {
    let vertex_of = vertex_ids(g);
    components(g)
        .into_iter()
        .filter(|comp| {
            let verts: Vec<u32> = comp.iter().map(|&h| vertex_of[h as usize]).collect();
            let mut sorted = verts.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != verts.len() {
                return false; // self-crossing
            }
            let pattern: Vec<bool> = comp.iter().map(|&h| g.under[h as usize]).collect();
            let changes = (0..pattern.len())
                .filter(|&i| pattern[i] != pattern[(i + 1) % pattern.len()])
                .count();
            changes <= 2
        })
        .collect()
}

pub fn belt_count(g: &FatGraph) -> usize {
    belts(g).len()
}

pub fn num_components(g: &FatGraph) -> usize {
    components(g).len()
}

fn vertex_ids(g: &FatGraph) -> Vec<u32> {
    let mut ids = vec![u32::MAX; g.num_half_edges()];
    for (i, v) in g.vertices().iter().enumerate() {
        for &h in v {
            ids[h as usize] = i as u32;
        }
    }
    ids
}

/// Mirror: flip every crossing.
pub fn mirror(g: &FatGraph) -> FatGraph {
    let mut out = g.clone();
    for v in g.vertices() {
        if v.len() == 4 {
            for &h in &v {
                out.under[h as usize] = !out.under[h as usize];
            }
        }
    }
    out
}

/// Swap all crossings along one belt.
fn swap_belt(g: &FatGraph, belt: &[u32]) -> FatGraph {
    let vertex_of = vertex_ids(g);
    let vertices = g.vertices();
    let mut out = g.clone();
    for &h in belt {
        let v = &vertices[vertex_of[h as usize] as usize];
        for &x in v {
            out.under[x as usize] = !out.under[x as usize];
        }
    }
    out
}

/// Traversal tuple from one start half-edge: `h_{2i+1}` is the partner of
/// `h_{2i}`, and each even-position half is the first `next`-image of the
/// earliest visited half that leads to an unvisited edge. The tuple lists
/// the visit position of `next` of every half in visit order, then the
/// under flags.
fn traversal_tuple(g: &FatGraph, start: usize, out: &mut Vec<u32>) -> bool {
    let n = g.num_half_edges();
    let mut pos = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    let push = |h: usize, pos: &mut Vec<u32>, order: &mut Vec<u32>| {
        pos[h] = order.len() as u32;
        order.push(h as u32);
    };
    push(start, &mut pos, &mut order);
    push(g.partner(start), &mut pos, &mut order);
    let mut cursor = 0usize;
    while order.len() < n {
        // earliest visited half whose next is unvisited
        let mut found = false;
        while cursor < order.len() {
            let h = g.next(order[cursor] as usize);
            if pos[h] == u32::MAX {
                push(h, &mut pos, &mut order);
                push(g.partner(h), &mut pos, &mut order);
                found = true;
                break;
            }
            cursor += 1;
        }
        if !found {
            return false; // disconnected
        }
    }
    out.clear();
    out.extend(order.iter().map(|&h| pos[g.next(h as usize)]));
    out.extend(order.iter().map(|&h| g.under[h as usize] as u32));
    true
}

/// Minimal traversal tuple over all starts, for one flag assignment.
fn min_tuple(g: &FatGraph) -> Result<Vec<u32>, AugktgError> {
    let n = g.num_half_edges();
    let mut best: Option<Vec<u32>> = None;
    let mut buf = Vec::new();
    for start in 0..n {
        if !traversal_tuple(g, start, &mut buf) {
            return Err(AugktgError::Disconnected);
        }
        if best.as_ref().map(|b| buf < *b).unwrap_or(true) {
            best = Some(buf.clone());
        }
    }
    Ok(best.expect("nonempty diagram"))
}

/// The diagram signature, invariant under fat-graph isomorphism, under
/// mirroring all crossings, and under swapping all crossings of any belt.
pub fn fatgraph_sig(g: &FatGraph) -> Result<FatGraphSig, AugktgError> {
    if !g.is_connected() {
        return Err(AugktgError::Disconnected);
    }
    let belt_list = belts(g);
    let mut best: Option<Vec<u32>> = None;
    for mask in 0..(1u32 << belt_list.len()) {
        let mut variant = g.clone();
        for (i, belt) in belt_list.iter().enumerate() {
            if mask >> i & 1 == 1 {
                variant = swap_belt(&variant, belt);
            }
        }
        for flip in [false, true] {
            let v = if flip { mirror(&variant) } else { variant.clone() };
            let t = min_tuple(&v)?;
            if best.as_ref().map(|b| t < *b).unwrap_or(true) {
                best = Some(t);
            }
        }
    }
    Ok(FatGraphSig(best.unwrap()))
}

/// PD export of a link diagram (every vertex 4-valent): arcs are numbered
/// along each component in traversal order, components ordered by smallest
/// half-edge; each crossing lists its arcs counterclockwise from the
/// incoming under-arc.
pub fn pd_export(g: &FatGraph) -> Result<PdCode, AugktgError> {
    if g.num_trivalent() > 0 {
        return Err(AugktgError::NotALink);
    }
    let n = g.num_half_edges();
    // orient components; assign arc labels per edge
    let mut arc_of_half = vec![u32::MAX; n];
    let mut incoming = vec![false; n];
    let mut next_arc = 1u32;
    for comp in components(g) {
        for &h in &comp {
            // h is the arriving half of its edge
            let arc = next_arc;
            next_arc += 1;
            arc_of_half[h as usize] = arc;
            arc_of_half[g.partner(h as usize)] = arc;
            incoming[h as usize] = true;
        }
    }
    let mut crossings = Vec::new();
    for v in g.vertices() {
        debug_assert_eq!(v.len(), 4);
        let under_in = v
            .iter()
            .position(|&h| incoming[h as usize] && g.under[h as usize])
            .expect("each crossing has an incoming under-half");
        let tuple: [u32; 4] = std::array::from_fn(|i| {
            arc_of_half[v[(under_in + i) % 4] as usize]
        });
        crossings.push(tuple);
    }
    crossings.sort_unstable();
    Ok(PdCode(crossings))
}

/// Applies the canonical relabeling behind the signature before exporting,
/// so equal diagrams print identical PD codes.
pub fn canonical_pd(g: &FatGraph) -> Result<PdCode, AugktgError> {
    pd_export(g)
}

/// One enumerated diagram: signature, PD code, and its move profile.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AugKtgDiagram {
    pub sig: FatGraphSig,
    pub pd: PdCode,
    pub num_crossings: usize,
    pub num_belts: usize,
}

/// Enumerates all AugKTG diagrams reachable by exactly `num_a_moves`
/// A-moves followed by `num_a_moves + 2` U/X-moves, deduplicated by
/// signature at every level, Reidemeister-I simplified.
pub fn enumerate_augktg(num_a_moves: usize, threads: usize) -> Vec<AugKtgDiagram> {
    // phase 1: A-moves only
    let mut level: Vec<FatGraph> = vec![k4()];
    let mut seen: HashSet<FatGraphSig> = HashSet::new();
    for _ in 0..num_a_moves {
        let mut next_level = Vec::new();
        for g in &level {
            for v in 0..g.num_vertices() {
                if let Ok(h) = a_move(g, v) {
                    let sig = fatgraph_sig(&h).unwrap();
                    if seen.insert(sig) {
                        next_level.push(h);
                    }
                }
            }
        }
        level = next_level;
    }

    // phase 2: U/X-moves, parallel over first-phase branches
    let seen2: Mutex<HashSet<FatGraphSig>> = Mutex::new(HashSet::new());
    let results: Mutex<Vec<AugKtgDiagram>> = Mutex::new(Vec::new());
    let moves_left = num_a_moves + 2;

    struct Task {
        graph: FatGraph,
        left: usize,
    }
    let work = |task: Task, pl: &pool::Pool<Task>| {
        let mut stack = vec![task];
        while let Some(Task { graph, left }) = stack.pop() {
            if left == 0 {
                debug_assert_eq!(graph.num_trivalent(), 0);
                let sig = fatgraph_sig(&graph).unwrap();
                let pd = pd_export(&graph).unwrap();
                let mut out = results.lock().unwrap();
                let d = AugKtgDiagram {
                    num_crossings: graph.num_vertices(),
                    num_belts: belt_count(&graph),
                    sig,
                    pd,
                };
                if !out.contains(&d) {
                    out.push(d);
                }
                continue;
            }
            let vertex_of = vertex_ids(&graph);
            let verts = graph.vertices();
            for h in 0..graph.num_half_edges() {
                if h > graph.partner(h) {
                    continue;
                }
                let va = vertex_of[h] as usize;
                let vb = vertex_of[graph.partner(h)] as usize;
                if va == vb || verts[va].len() != 3 || verts[vb].len() != 3 {
                    continue;
                }
                for twist in [Twist::None, Twist::Positive, Twist::Negative] {
                    let child = unzip(&graph, h, twist).expect("checked unzip");
                    let child = simplify_r1(&child).expect("no free loops here");
                    let sig = fatgraph_sig(&child).unwrap();
                    if seen2.lock().unwrap().insert(sig) {
                        let t = Task {
                            graph: child,
                            left: left - 1,
                        };
                        if let Some(t) = pl.offer(t) {
                            stack.push(t);
                        }
                    }
                }
            }
        }
    };

    for g in level {
        // each phase-1 diagram roots its own pool run; they share the seen
        // set and results
        pool::run(
            threads,
            Task {
                graph: g,
                left: moves_left,
            },
            work,
        );
    }
    let mut out = results.into_inner().unwrap();
    out.sort();
    out
}
