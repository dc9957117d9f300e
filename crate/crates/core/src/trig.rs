//! Barycentric-subdivision triangulations of Platonic complexes.
//!
//! A triangulation is an array of simplices, each storing four neighbor
//! indices: face `i` of a simplex is always glued to face `i` of the
//! neighbor, with vertex labels preserved, so no gluing permutations are
//! needed. `-1` marks an unglued face. Faces 0, 1, 2 are internal to a
//! solid and always follow the fixed template of [`crate::solid`]; face 3
//! is the solid boundary.

use std::fmt::Write as _;

use thiserror::Error;

use crate::schlafli::SchlafliType;
use crate::solid::{solid_template, SolidTemplate};

pub const UNGLUED: i32 = -1;

#[derive(Debug, Error)]
pub enum TrigError {
    #[error("solid {{{0},{1}}} does not match triangulation type {2}")]
    SolidMismatch(u32, u32, SchlafliType),
    #[error("simplex index {0} out of range (have {1} simplices)")]
    BadIndex(i32, usize),
    #[error("triangulation is not fully glued")]
    NotFullyGlued,
    #[error("triangulation is disconnected")]
    Disconnected,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid triangulation data: {0}")]
    Invalid(String),
}

/// Simple union-find over `0..n`.
pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let g = self.parent[self.parent[x] as usize];
            self.parent[x] = g;
            x = g as usize;
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb) as u32;
        }
    }

    /// Dense class ids, numbered by smallest member.
    pub fn classes(&mut self) -> (Vec<u32>, usize) {
        let n = self.parent.len();
        let mut id = vec![u32::MAX; n];
        let mut count = 0;
        for x in 0..n {
            let r = self.find(x);
            if id[r] == u32::MAX {
                id[r] = count;
                count += 1;
            }
            id[x] = id[r];
        }
        (id, count as usize)
    }
}

/// The link of a vertex class, triangulated by the simplex corners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkSurface {
    /// Vertex label 0..3 of the class.
    pub label: u8,
    /// Class id among classes of the same label.
    pub class_id: usize,
    /// Number of simplex corners (= triangles of the link).
    pub num_corners: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub closed: bool,
}

impl LinkSurface {
    pub fn is_sphere(&self) -> bool {
        self.closed && self.euler_characteristic == 2
    }

    pub fn is_torus(&self) -> bool {
        self.closed && self.orientable && self.euler_characteristic == 0
    }

    pub fn is_klein_bottle(&self) -> bool {
        self.closed && !self.orientable && self.euler_characteristic == 0
    }

    pub fn is_projective_plane(&self) -> bool {
        self.closed && self.euler_characteristic == 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Triangulation {
    schlafli: SchlafliType,
    orientable_mode: bool,
    simplices: Vec<[i32; 4]>,
}

impl Triangulation {
    pub fn new(schlafli: SchlafliType, orientable_mode: bool) -> Self {
        Triangulation {
            schlafli,
            orientable_mode,
            simplices: Vec::new(),
        }
    }

    pub fn schlafli(&self) -> SchlafliType {
        self.schlafli
    }

    pub fn orientable_mode(&self) -> bool {
        self.orientable_mode
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn num_solids(&self) -> usize {
        self.len() / self.schlafli.simplices_per_solid()
    }

    /// Neighbor of `simp` across face `face`, or `UNGLUED`.
    pub fn neighbor(&self, simp: usize, face: usize) -> i32 {
        self.simplices[simp][face]
    }

    pub fn simplices(&self) -> &[[i32; 4]] {
        &self.simplices
    }

    pub(crate) fn template(&self) -> &'static SolidTemplate {
        solid_template(self.schlafli.p(), self.schlafli.q())
    }

    /// Appends the barycentric subdivision of one solid `{p,q}`, faces 0, 1,
    /// 2 glued per the fixed template, face 3 unglued everywhere. Returns the
    /// index of the first added simplex.
    ///
    /// Neighboring new simplices always get indices of opposite parity, and
    /// the block starts at an even index, so the parity convention of
    /// orientable mode is preserved.
    pub fn add_platonic_solid(&mut self, p: u32, q: u32) -> Result<usize, TrigError> {
        if (p, q) != (self.schlafli.p(), self.schlafli.q()) {
            return Err(TrigError::SolidMismatch(p, q, self.schlafli));
        }
        let tmpl = self.template();
        let base = self.simplices.len();
        debug_assert_eq!(base % tmpl.size, 0);
        for flag in 0..tmpl.size {
            self.simplices.push([
                base as i32 + tmpl.adj[0][flag] as i32,
                base as i32 + tmpl.adj[1][flag] as i32,
                base as i32 + tmpl.adj[2][flag] as i32,
                UNGLUED,
            ]);
        }
        Ok(base)
    }

    /// Pairs face 3 of the simplices forming one polygon face with those of
    /// another, starting with `simp0` glued to `simp1` and walking both
    /// faces simultaneously about their 23-edges (neighbor 0 on even steps,
    /// neighbor 1 on odd steps). Returns false iff the two simplices belong
    /// to the same polygon face of the same solid; partial gluings made
    /// before such an early stop are not rolled back, so callers branch on
    /// copies.
    pub fn glue_faces(&mut self, simp0: usize, simp1: usize, p: u32) -> bool {
        debug_assert_eq!(p, self.schlafli.p());
        let mut s0 = simp0;
        let mut s1 = simp1;
        let mut n = 0u32;
        while self.simplices[s0][3] == UNGLUED && self.simplices[s1][3] == UNGLUED {
            if s0 == s1 {
                return false;
            }
            self.simplices[s0][3] = s1 as i32;
            self.simplices[s1][3] = s0 as i32;
            let step = (n % 2) as usize;
            s0 = self.simplices[s0][step] as usize;
            s1 = self.simplices[s1][step] as usize;
            n += 1;
        }
        n == 2 * p
    }

    /// Whether [`glue_faces`] with the same arguments would return true,
    /// without mutating. The walk is replayed with a virtual glued set (it
    /// touches at most `4p` simplices).
    ///
    /// [`glue_faces`]: Triangulation::glue_faces
    pub fn glue_faces_check(&self, simp0: usize, simp1: usize, p: u32) -> bool {
        let mut virt = [usize::MAX; 24];
        let mut virt_len = 0usize;
        let glued = |s: usize, virt: &[usize; 24], virt_len: usize| {
            self.simplices[s][3] != UNGLUED || virt[..virt_len].contains(&s)
        };
        let mut s0 = simp0;
        let mut s1 = simp1;
        let mut n = 0u32;
        while !glued(s0, &virt, virt_len) && !glued(s1, &virt, virt_len) {
            if s0 == s1 {
                return false;
            }
            virt[virt_len] = s0;
            virt[virt_len + 1] = s1;
            virt_len += 2;
            let step = (n % 2) as usize;
            s0 = self.simplices[s0][step] as usize;
            s1 = self.simplices[s1][step] as usize;
            n += 1;
        }
        n == 2 * p
    }

    pub fn has_open_faces(&self) -> bool {
        self.simplices.iter().any(|q| q[3] == UNGLUED)
    }

    pub fn num_open_faces(&self) -> usize {
        self.simplices.iter().filter(|q| q[3] == UNGLUED).count()
    }

    /// Corner classes for one vertex label: two corners are identified when
    /// a face gluing carries one to the other. Returns per-simplex class ids
    /// and the class count.
    pub fn vertex_classes(&self, label: u8) -> (Vec<u32>, usize) {
        let mut uf = UnionFind::new(self.len());
        for s in 0..self.len() {
            for face in 0..4 {
                if face == label as usize {
                    continue;
                }
                let nb = self.simplices[s][face];
                if nb != UNGLUED {
                    uf.union(s, nb as usize);
                }
            }
        }
        uf.classes()
    }

    /// 01-edge classes: the barycentric edges from a tessellation vertex to
    /// an edge midpoint. Identified across faces 2 and 3.
    pub fn edge01_classes(&self) -> (Vec<u32>, usize) {
        let mut uf = UnionFind::new(self.len());
        for s in 0..self.len() {
            for face in [2, 3] {
                let nb = self.simplices[s][face];
                if nb != UNGLUED {
                    uf.union(s, nb as usize);
                }
            }
        }
        uf.classes()
    }

    /// Links of all vertex classes of all four labels.
    pub fn vertex_links(&self) -> Vec<LinkSurface> {
        let mut out = Vec::new();
        for label in 0..4u8 {
            out.extend(self.vertex_links_for_label(label));
        }
        out
    }

    pub fn vertex_links_for_label(&self, label: u8) -> Vec<LinkSurface> {
        let (class, count) = self.vertex_classes(label);
        let k = self.len();
        let others: Vec<usize> = (0..4).filter(|&m| m != label as usize).collect();

        // Link vertices: classes of (simplex, other label m), identified
        // across glued faces f with f != label, f != m.
        let slot = |s: usize, mi: usize| s * 3 + mi;
        let mut uf = UnionFind::new(k * 3);
        for s in 0..k {
            for (mi, &m) in others.iter().enumerate() {
                for &f in &others {
                    if f == m {
                        continue;
                    }
                    let nb = self.simplices[s][f];
                    if nb != UNGLUED {
                        uf.union(slot(s, mi), slot(nb as usize, mi));
                    }
                }
            }
        }
        let (vclass, vcount_total) = uf.classes();

        let mut faces_per = vec![0usize; count];
        let mut interior_halves = vec![0usize; count];
        let mut boundary = vec![0usize; count];
        let mut vcount = vec![0usize; count];
        let mut vclass_seen = vec![false; vcount_total];
        for s in 0..k {
            let c = class[s] as usize;
            faces_per[c] += 1;
            for (mi, &m) in others.iter().enumerate() {
                if self.simplices[s][m] == UNGLUED {
                    boundary[c] += 1;
                } else {
                    interior_halves[c] += 1;
                }
                let vc = vclass[slot(s, mi)] as usize;
                if !vclass_seen[vc] {
                    vclass_seen[vc] = true;
                    vcount[c] += 1;
                }
            }
        }

        // Orientability: the corner adjacency graph must be bipartite.
        let mut color = vec![-1i8; k];
        let mut orientable = vec![true; count];
        for start in 0..k {
            if color[start] >= 0 {
                continue;
            }
            color[start] = 0;
            let mut stack = vec![start];
            while let Some(s) = stack.pop() {
                for &m in &others {
                    let nb = self.simplices[s][m];
                    if nb == UNGLUED {
                        continue;
                    }
                    let nb = nb as usize;
                    if color[nb] < 0 {
                        color[nb] = 1 - color[s];
                        stack.push(nb);
                    } else if color[nb] == color[s] {
                        orientable[class[s] as usize] = false;
                    }
                }
            }
        }

        (0..count)
            .map(|c| {
                let f = faces_per[c] as i64;
                let e = (interior_halves[c] / 2 + boundary[c]) as i64;
                let v = vcount[c] as i64;
                LinkSurface {
                    label,
                    class_id: c,
                    num_corners: faces_per[c],
                    euler_characteristic: v - e + f,
                    orientable: orientable[c],
                    closed: boundary[c] == 0,
                }
            })
            .collect()
    }

    /// Whether some closed label-1 vertex link is a projective plane (the
    /// only closed surface with Euler characteristic 1). Leaner than
    /// [`vertex_links_for_label`] for the edge-fixing hot path: no
    /// orientability pass, and the link-vertex classes are only computed
    /// when a closed link exists at all.
    ///
    /// [`vertex_links_for_label`]: Triangulation::vertex_links_for_label
    pub(crate) fn has_projective_label1_link(&self) -> bool {
        let k = self.len();
        let mut uf = UnionFind::new(k);
        for s in 0..k {
            for face in [0, 2, 3] {
                let nb = self.simplices[s][face];
                if nb != UNGLUED {
                    uf.union(s, nb as usize);
                }
            }
        }
        let (class, count) = uf.classes();
        let mut open = vec![false; count];
        let mut faces_per = vec![0u32; count];
        for s in 0..k {
            let c = class[s] as usize;
            faces_per[c] += 1;
            if self.simplices[s][0] == UNGLUED
                || self.simplices[s][2] == UNGLUED
                || self.simplices[s][3] == UNGLUED
            {
                open[c] = true;
            }
        }
        if open.iter().all(|&o| o) {
            return false;
        }

        // for a closed class, E = 3F/2, so chi = V - F/2
        let others = [0usize, 2, 3];
        let slot = |s: usize, mi: usize| s * 3 + mi;
        let mut vuf = UnionFind::new(k * 3);
        for s in 0..k {
            if open[class[s] as usize] {
                continue;
            }
            for (mi, &m) in others.iter().enumerate() {
                for &f in &others {
                    if f == m {
                        continue;
                    }
                    let nb = self.simplices[s][f];
                    if nb != UNGLUED {
                        vuf.union(slot(s, mi), slot(nb as usize, mi));
                    }
                }
            }
        }
        let (vclass, vcount_total) = vuf.classes();
        let mut vcount = vec![0i64; count];
        let mut vclass_seen = vec![false; vcount_total];
        for s in 0..k {
            let c = class[s] as usize;
            if open[c] {
                continue;
            }
            for mi in 0..3 {
                let vc = vclass[slot(s, mi)] as usize;
                if !vclass_seen[vc] {
                    vclass_seen[vc] = true;
                    vcount[c] += 1;
                }
            }
        }
        (0..count).any(|c| !open[c] && vcount[c] - faces_per[c] as i64 / 2 == 1)
    }

    /// A triangulation is orientable iff its dual graph admits a proper
    /// 2-coloring (the two classes are the two simplex handednesses).
    pub fn is_orientable(&self) -> bool {
        let k = self.len();
        let mut color = vec![-1i8; k];
        for start in 0..k {
            if color[start] >= 0 {
                continue;
            }
            color[start] = 0;
            let mut stack = vec![start];
            while let Some(s) = stack.pop() {
                for face in 0..4 {
                    let nb = self.simplices[s][face];
                    if nb == UNGLUED {
                        continue;
                    }
                    let nb = nb as usize;
                    if color[nb] < 0 {
                        color[nb] = 1 - color[s];
                        stack.push(nb);
                    } else if color[nb] == color[s] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut n = 1;
        while let Some(s) = stack.pop() {
            for face in 0..4 {
                let nb = self.simplices[s][face];
                if nb != UNGLUED && !seen[nb as usize] {
                    seen[nb as usize] = true;
                    n += 1;
                    stack.push(nb as usize);
                }
            }
        }
        n == self.len()
    }

    /// Whether the simplices follow the fixed per-solid template layout in
    /// consecutive blocks. Everything built through [`add_platonic_solid`]
    /// does; relabeled triangulations generally do not.
    ///
    /// [`add_platonic_solid`]: Triangulation::add_platonic_solid
    pub(crate) fn is_template_aligned(&self) -> bool {
        let tmpl = self.template();
        let n = tmpl.size;
        if self.len() % n != 0 {
            return false;
        }
        for base in (0..self.len()).step_by(n) {
            for flag in 0..n {
                let q = &self.simplices[base + flag];
                for i in 0..3 {
                    if q[i] != (base + tmpl.adj[i][flag] as usize) as i32 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Relabels an arbitrary valid gluing matrix onto the template layout.
    /// Solids are discovered as components of the face-0/1/2 subcomplex and
    /// mapped onto the template by propagating from their smallest simplex.
    pub fn from_raw(
        schlafli: SchlafliType,
        orientable_mode: bool,
        simplices: Vec<[i32; 4]>,
    ) -> Result<Triangulation, TrigError> {
        let k = simplices.len();
        let bad = |msg: String| TrigError::Invalid(msg);
        for (s, q) in simplices.iter().enumerate() {
            for (i, &nb) in q.iter().enumerate() {
                if nb != UNGLUED {
                    if nb < 0 || nb as usize >= k {
                        return Err(bad(format!("simplex {s} face {i}: bad index {nb}")));
                    }
                    if simplices[nb as usize][i] != s as i32 {
                        return Err(bad(format!("simplex {s} face {i}: pairing not symmetric")));
                    }
                }
                if i < 3 && nb == UNGLUED {
                    return Err(bad(format!("simplex {s} face {i}: internal face unglued")));
                }
            }
        }
        let tmpl = solid_template(schlafli.p(), schlafli.q());
        let n = tmpl.size;
        if k % n != 0 {
            return Err(bad(format!("{k} simplices is not a multiple of {n}")));
        }

        // map old index -> new index, block by block
        let mut newidx = vec![u32::MAX; k];
        let mut seed_of_block = Vec::new();
        for s in 0..k {
            if newidx[s] != u32::MAX {
                continue;
            }
            let base = seed_of_block.len() * n;
            seed_of_block.push(s);
            // propagate old simplex <-> template flag from (s, 0)
            newidx[s] = base as u32;
            let mut stack = vec![s];
            let mut placed = 1usize;
            while let Some(x) = stack.pop() {
                let flag = newidx[x] as usize - base;
                for i in 0..3 {
                    let y = simplices[x][i] as usize;
                    let fy = base + tmpl.adj[i][flag] as usize;
                    if newidx[y] == u32::MAX {
                        newidx[y] = fy as u32;
                        placed += 1;
                        stack.push(y);
                    } else if newidx[y] as usize != fy {
                        return Err(bad(format!(
                            "face-0/1/2 component of simplex {s} is not a {{{},{}}} solid",
                            schlafli.p(),
                            schlafli.q()
                        )));
                    }
                }
            }
            if placed != n {
                return Err(bad(format!(
                    "face-0/1/2 component of simplex {s} has {placed} simplices, expected {n}"
                )));
            }
        }

        let mut out = vec![[UNGLUED; 4]; k];
        for (s, q) in simplices.iter().enumerate() {
            let ns = newidx[s] as usize;
            let base = ns / n * n;
            let flag = ns - base;
            for i in 0..3 {
                out[ns][i] = (base + tmpl.adj[i][flag] as usize) as i32;
            }
            if q[3] != UNGLUED {
                out[ns][3] = newidx[q[3] as usize] as i32;
            }
        }
        Ok(Triangulation {
            schlafli,
            orientable_mode,
            simplices: out,
        })
    }

    /// Text serialization: `ptrig v1 p q r k` then `k` lines of four signed
    /// integers, space-separated, newline-terminated.
    pub fn to_text(&self) -> String {
        let s = self.schlafli;
        let mut out = String::new();
        writeln!(
            out,
            "ptrig v1 {} {} {} {}",
            s.p(),
            s.q(),
            s.r(),
            self.len()
        )
        .unwrap();
        for q in &self.simplices {
            writeln!(out, "{} {} {} {}", q[0], q[1], q[2], q[3]).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Triangulation, TrigError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(TrigError::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 6 || parts[0] != "ptrig" || parts[1] != "v1" {
            return Err(TrigError::Parse {
                line: 1,
                msg: "expected header `ptrig v1 p q r k`".into(),
            });
        }
        let nums: Vec<u32> = parts[2..6]
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()
            .map_err(|e| TrigError::Parse {
                line: 1,
                msg: format!("bad header number: {e}"),
            })?;
        let schlafli = SchlafliType::new(nums[0], nums[1], nums[2]).map_err(|e| {
            TrigError::Parse {
                line: 1,
                msg: e.to_string(),
            }
        })?;
        let k = nums[3] as usize;
        let mut simplices = Vec::with_capacity(k);
        for _ in 0..k {
            let (ln, line) = lines.next().ok_or(TrigError::Parse {
                line: k + 1,
                msg: "missing simplex lines".into(),
            })?;
            let vals: Vec<i32> = line
                .split_whitespace()
                .map(|s| s.parse())
                .collect::<Result<_, _>>()
                .map_err(|e| TrigError::Parse {
                    line: ln + 1,
                    msg: format!("bad integer: {e}"),
                })?;
            if vals.len() != 4 {
                return Err(TrigError::Parse {
                    line: ln + 1,
                    msg: "expected four integers".into(),
                });
            }
            simplices.push([vals[0], vals[1], vals[2], vals[3]]);
        }
        let t = Triangulation::from_raw(schlafli, false, simplices)?;
        if !t.is_template_aligned() {
            // from_raw always aligns; defensive
            return Err(TrigError::Invalid("relayout failed".into()));
        }
        Ok(t)
    }

    pub(crate) fn from_parts(
        schlafli: SchlafliType,
        orientable_mode: bool,
        simplices: Vec<[i32; 4]>,
    ) -> Triangulation {
        Triangulation {
            schlafli,
            orientable_mode,
            simplices,
        }
    }
}

impl std::fmt::Debug for Triangulation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Triangulation({}, {} simplices, {} open)",
            self.schlafli,
            self.len(),
            self.num_open_faces()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn schlafli(p: u32, q: u32, r: u32) -> SchlafliType {
        SchlafliType::new(p, q, r).unwrap()
    }

    #[test]
    fn add_solid_counts() {
        let mut t = Triangulation::new(schlafli(3, 3, 6), true);
        assert_eq!(t.add_platonic_solid(3, 3).unwrap(), 0);
        assert_eq!(t.len(), 24);

        let mut t = Triangulation::new(schlafli(5, 3, 6), true);
        assert_eq!(t.add_platonic_solid(5, 3).unwrap(), 0);
        assert_eq!(t.len(), 120);

        let mut t = Triangulation::new(schlafli(3, 4, 4), true);
        t.add_platonic_solid(3, 4).unwrap();
        assert_eq!(t.add_platonic_solid(3, 4).unwrap(), 48);
        assert_eq!(t.len(), 96);

        assert!(t.add_platonic_solid(4, 3).is_err());
    }

    #[test]
    fn face_pairing_symmetry_and_parity() {
        let mut t = Triangulation::new(schlafli(4, 3, 6), true);
        t.add_platonic_solid(4, 3).unwrap();
        for s in 0..t.len() {
            for face in 0..3 {
                let nb = t.neighbor(s, face);
                assert_eq!(t.neighbor(nb as usize, face), s as i32);
                assert_ne!(s % 2, nb as usize % 2);
            }
            assert_eq!(t.neighbor(s, 3), UNGLUED);
        }
    }

    #[test]
    fn glue_two_cubes() {
        let mut t = Triangulation::new(schlafli(4, 3, 6), true);
        t.add_platonic_solid(4, 3).unwrap();
        t.add_platonic_solid(4, 3).unwrap();
        assert!(t.glue_faces(1, 48, 4));
        let glued = t.simplices().iter().filter(|q| q[3] != UNGLUED).count();
        assert_eq!(glued, 16); // 8 pairs, one polygon face each side
        for s in 0..t.len() {
            let nb = t.neighbor(s, 3);
            if nb != UNGLUED {
                assert_eq!(t.neighbor(nb as usize, 3), s as i32);
                assert_ne!(s % 2, nb as usize % 2);
            }
        }
    }

    #[test]
    fn glue_same_simplex_fails() {
        let mut t = Triangulation::new(schlafli(3, 3, 6), false);
        t.add_platonic_solid(3, 3).unwrap();
        assert!(!t.glue_faces(5, 5, 3));
    }

    /// Some self-gluing of a single tetrahedral solid must succeed: only
    /// same-face gluings are rejected. Brute force over all simplex pairs.
    #[test]
    fn single_solid_self_gluing_possible() {
        let base = {
            let mut t = Triangulation::new(schlafli(3, 3, 6), false);
            t.add_platonic_solid(3, 3).unwrap();
            t
        };
        let mut successes = 0;
        for s0 in 0..24 {
            for s1 in 0..24 {
                let mut t = base.clone();
                if t.glue_faces(s0, s1, 3) {
                    successes += 1;
                    let glued = t.simplices().iter().filter(|q| q[3] != UNGLUED).count();
                    assert_eq!(glued, 12);
                }
            }
        }
        assert!(successes > 0);
    }

    /// glue_faces_check must agree with glue_faces everywhere.
    #[test]
    fn glue_check_matches_glue() {
        let mut base = Triangulation::new(schlafli(3, 4, 4), false);
        base.add_platonic_solid(3, 4).unwrap();
        base.add_platonic_solid(3, 4).unwrap();
        // also exercise a partially glued state
        assert!(base.glue_faces(1, 48, 3));
        for s0 in 0..96 {
            for s1 in 0..96 {
                let check = base.glue_faces_check(s0, s1, 3);
                let mut t = base.clone();
                assert_eq!(check, t.glue_faces(s0, s1, 3), "({s0},{s1})");
            }
        }
    }

    /// glue_faces succeeds or fails the same way with the arguments swapped.
    #[test]
    fn glue_outcome_symmetric() {
        let base = {
            let mut t = Triangulation::new(schlafli(3, 4, 4), false);
            t.add_platonic_solid(3, 4).unwrap();
            t.add_platonic_solid(3, 4).unwrap();
            t
        };
        for s0 in (0..96).step_by(7) {
            for s1 in (0..96).step_by(5) {
                let mut a = base.clone();
                let mut b = base.clone();
                assert_eq!(a.glue_faces(s0, s1, 3), b.glue_faces(s1, s0, 3));
            }
        }
    }

    #[test]
    fn single_solid_links() {
        let mut t = Triangulation::new(schlafli(3, 3, 6), true);
        t.add_platonic_solid(3, 3).unwrap();
        let links = t.vertex_links_for_label(3);
        assert_eq!(links.len(), 1);
        assert!(links[0].is_sphere(), "{:?}", links[0]);
        assert_eq!(links[0].num_corners, 24);

        // corner incidence count over all labels
        let all = t.vertex_links();
        let corners: usize = all.iter().map(|l| l.num_corners).sum();
        assert_eq!(corners, 4 * t.len());

        // label 0/1/2 links of a bare solid are open disks
        for l in &all {
            if l.label < 3 {
                assert!(!l.closed);
                assert_eq!(l.euler_characteristic, 1);
            }
        }
    }

    /// specialized projective-plane detector agrees with full link data
    #[test]
    fn rp2_detector_matches_links() {
        let mut stack = vec![{
            let mut t = Triangulation::new(schlafli(3, 3, 6), false);
            t.add_platonic_solid(3, 3).unwrap();
            t
        }];
        let mut checked = 0;
        while let Some(t) = stack.pop() {
            if checked > 3000 {
                break;
            }
            checked += 1;
            let full = t
                .vertex_links_for_label(1)
                .iter()
                .any(|l| l.is_projective_plane());
            assert_eq!(t.has_projective_label1_link(), full);
            let Some(s0) = (0..t.len()).find(|&s| t.neighbor(s, 3) == UNGLUED) else {
                continue;
            };
            for s1 in 0..t.len() {
                let mut t1 = t.clone();
                if t1.glue_faces(s0, s1, 3) {
                    stack.push(t1);
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn text_round_trip() {
        let mut t = Triangulation::new(schlafli(4, 3, 6), true);
        t.add_platonic_solid(4, 3).unwrap();
        t.add_platonic_solid(4, 3).unwrap();
        assert!(t.glue_faces(1, 48, 4));
        let text = t.to_text();
        let back = Triangulation::from_text(&text).unwrap();
        assert_eq!(t.simplices(), back.simplices());
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn from_raw_relabels_to_template() {
        let mut t = Triangulation::new(schlafli(3, 3, 6), false);
        t.add_platonic_solid(3, 3).unwrap();
        t.add_platonic_solid(3, 3).unwrap();
        assert!(t.glue_faces(1, 24, 3));
        // scramble with index reversal
        let k = t.len();
        let perm: Vec<usize> = (0..k).rev().collect();
        let mut raw = vec![[UNGLUED; 4]; k];
        for s in 0..k {
            for i in 0..4 {
                let nb = t.neighbor(s, i);
                raw[perm[s]][i] = if nb == UNGLUED {
                    UNGLUED
                } else {
                    perm[nb as usize] as i32
                };
            }
        }
        let back = Triangulation::from_raw(schlafli(3, 3, 6), false, raw).unwrap();
        assert!(back.is_template_aligned());
        assert_eq!(back.len(), k);
    }
}
