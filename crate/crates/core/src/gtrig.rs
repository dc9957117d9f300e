//! Tetrahedral complexes with full face-pairing permutations, used to house
//! the outputs of the cubulation subdivisions.

use std::fmt::Write as _;

use thiserror::Error;

use crate::schlafli::SchlafliType;
use crate::trig::{Triangulation, UnionFind, UNGLUED};

#[derive(Debug, Error)]
pub enum GtrigError {
    #[error("not a permutation: {0:?}")]
    BadPerm([u8; 4]),
    #[error("tetrahedron {0} out of range")]
    BadIndex(usize),
    #[error("face ({0},{1}) already glued")]
    AlreadyGlued(usize, usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A permutation of the vertex labels 0..3.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub fn new(images: [u8; 4]) -> Result<Perm4, GtrigError> {
        let mut seen = [false; 4];
        for &v in &images {
            if v > 3 || seen[v as usize] {
                return Err(GtrigError::BadPerm(images));
            }
            seen[v as usize] = true;
        }
        Ok(Perm4(images))
    }

    pub fn identity() -> Perm4 {
        Perm4([0, 1, 2, 3])
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn inverse(&self) -> Perm4 {
        let mut inv = [0u8; 4];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Perm4(inv)
    }

    pub fn images(&self) -> [u8; 4] {
        self.0
    }

    pub fn is_even(&self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }
}

impl std::fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Gluing {
    pub target: u32,
    pub perm: Perm4,
}

/// Sequence of tetrahedra, each with four optional face gluings. Face `f`
/// of a tetrahedron is the face opposite vertex `f`; a gluing's permutation
/// sends vertex labels to the target's vertex labels (so face `f` maps to
/// face `perm(f)`).
#[derive(Clone, Default)]
pub struct GeneralTriangulation {
    tets: Vec<[Option<Gluing>; 4]>,
}

/// What [`GeneralTriangulation::validate`] found.
#[derive(Debug, Clone)]
pub struct ValidityReport {
    pub valid: bool,
    pub problems: Vec<String>,
    pub num_tetrahedra: usize,
    pub free_faces: usize,
    pub edge_orders: Vec<usize>,
    pub vertex_links: Vec<GeneralLink>,
    /// V - E + F - T of the cell complex.
    pub euler_characteristic: i64,
    /// -E + F - T: the complex minus its vertices, which is the manifold
    /// itself when the vertices are ideal. Zero for ideal triangulations of
    /// cusped manifolds and for closed manifolds minus their vertex set.
    pub ideal_euler_characteristic: i64,
}

/// Link surface of a vertex class of a general triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralLink {
    pub class_id: usize,
    pub num_corners: usize,
    pub euler_characteristic: i64,
    pub closed: bool,
    pub orientable: bool,
}

impl GeneralLink {
    pub fn is_sphere(&self) -> bool {
        self.closed && self.euler_characteristic == 2
    }

    pub fn is_torus_or_klein(&self) -> bool {
        self.closed && self.euler_characteristic == 0
    }
}

impl GeneralTriangulation {
    pub fn new(num_tetrahedra: usize) -> Self {
        GeneralTriangulation {
            tets: vec![[None; 4]; num_tetrahedra],
        }
    }

    pub fn len(&self) -> usize {
        self.tets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tets.is_empty()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Option<Gluing> {
        self.tets[tet][face]
    }

    /// Glues face `face` of `tet` to face `perm(face)` of `target`, setting
    /// the reverse gluing as well.
    pub fn glue(
        &mut self,
        tet: usize,
        face: usize,
        target: usize,
        perm: Perm4,
    ) -> Result<(), GtrigError> {
        if tet >= self.len() || target >= self.len() {
            return Err(GtrigError::BadIndex(tet.max(target)));
        }
        let back = perm.apply(face);
        if self.tets[tet][face].is_some() {
            return Err(GtrigError::AlreadyGlued(tet, face));
        }
        if self.tets[target][back].is_some() {
            return Err(GtrigError::AlreadyGlued(target, back));
        }
        self.tets[tet][face] = Some(Gluing {
            target: target as u32,
            perm,
        });
        self.tets[target][back] = Some(Gluing {
            target: tet as u32,
            perm: perm.inverse(),
        });
        Ok(())
    }

    pub fn num_free_faces(&self) -> usize {
        self.tets
            .iter()
            .map(|t| t.iter().filter(|g| g.is_none()).count())
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut n = 1;
        while let Some(t) = stack.pop() {
            for g in self.tets[t].iter().flatten() {
                let nb = g.target as usize;
                if !seen[nb] {
                    seen[nb] = true;
                    n += 1;
                    stack.push(nb);
                }
            }
        }
        n == self.len()
    }

    fn involutive(&self) -> Result<(), String> {
        for (t, faces) in self.tets.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                let back = self.tets[g.target as usize][g.perm.apply(f)];
                match back {
                    None => return Err(format!("gluing ({t},{f}) has no reverse")),
                    Some(b) => {
                        if b.target as usize != t || b.perm != g.perm.inverse() {
                            return Err(format!("gluing ({t},{f}) is not involutive"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Vertex classes: per (tet, vertex) slot, identified across gluings.
    pub fn vertex_classes(&self) -> (Vec<u32>, usize) {
        let mut uf = UnionFind::new(4 * self.len());
        for (t, faces) in self.tets.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                for v in 0..4 {
                    if v != f {
                        uf.union(4 * t + v, 4 * g.target as usize + g.perm.apply(v));
                    }
                }
            }
        }
        uf.classes()
    }

    /// Edge classes over the 6 edges {a,b} of each tetrahedron.
    fn edge_slot(tet: usize, a: usize, b: usize) -> usize {
        const EDGE_INDEX: [[usize; 4]; 4] = [
            [9, 0, 1, 2],
            [0, 9, 3, 4],
            [1, 3, 9, 5],
            [2, 4, 5, 9],
        ];
        6 * tet + EDGE_INDEX[a][b]
    }

    pub fn edge_classes(&self) -> (Vec<u32>, usize) {
        let mut uf = UnionFind::new(6 * self.len());
        for (t, faces) in self.tets.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                for a in 0..4 {
                    for b in a + 1..4 {
                        if a == f || b == f {
                            continue;
                        }
                        let (na, nb) = (g.perm.apply(a), g.perm.apply(b));
                        uf.union(
                            Self::edge_slot(t, a, b),
                            Self::edge_slot(g.target as usize, na.min(nb), na.max(nb)),
                        );
                    }
                }
            }
        }
        uf.classes()
    }

    /// One (tet, a, b) representative per edge class, a < b.
    pub fn edge_class_representatives(&self) -> Vec<(usize, usize, usize)> {
        let (class, count) = self.edge_classes();
        let mut reps = vec![None; count];
        for t in 0..self.len() {
            for a in 0..4 {
                for b in a + 1..4 {
                    let c = class[Self::edge_slot(t, a, b)] as usize;
                    if reps[c].is_none() {
                        reps[c] = Some((t, a, b));
                    }
                }
            }
        }
        reps.into_iter().flatten().collect()
    }

    /// Link surfaces of all vertex classes, triangulated by the corners.
    pub fn vertex_link_surfaces(&self) -> Vec<GeneralLink> {
        let nt = self.len();
        let (class, count) = self.vertex_classes();

        // link vertices: (tet, v, m) slots with m != v, glued across faces
        // f not in {v, m}
        let slot = |t: usize, v: usize, m: usize| (4 * t + v) * 4 + m;
        let mut uf = UnionFind::new(16 * nt);
        for (t, faces) in self.tets.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                for v in 0..4 {
                    for m in 0..4 {
                        if m == v || v == f || m == f {
                            continue;
                        }
                        uf.union(
                            slot(t, v, m),
                            slot(g.target as usize, g.perm.apply(v), g.perm.apply(m)),
                        );
                    }
                }
            }
        }
        let (vclass, vcount_total) = uf.classes();

        let mut faces_per = vec![0usize; count];
        let mut interior = vec![0usize; count];
        let mut boundary = vec![0usize; count];
        let mut vcount = vec![0i64; count];
        let mut vclass_seen = vec![false; vcount_total];
        for t in 0..nt {
            for v in 0..4 {
                let c = class[4 * t + v] as usize;
                faces_per[c] += 1;
                for f in 0..4 {
                    if f == v {
                        continue;
                    }
                    if self.tets[t][f].is_some() {
                        interior[c] += 1;
                    } else {
                        boundary[c] += 1;
                    }
                }
                for m in 0..4 {
                    if m == v {
                        continue;
                    }
                    let vc = vclass[slot(t, v, m)] as usize;
                    if !vclass_seen[vc] {
                        vclass_seen[vc] = true;
                        vcount[c] += 1;
                    }
                }
            }
        }

        // orientability by orienting corner triangles coherently
        let orientable = self.link_orientability(&class, count);

        (0..count)
            .map(|c| GeneralLink {
                class_id: c,
                num_corners: faces_per[c],
                euler_characteristic: vcount[c] - (interior[c] as i64 / 2 + boundary[c] as i64)
                    + faces_per[c] as i64,
                closed: boundary[c] == 0,
                orientable: orientable[c],
            })
            .collect()
    }

    /// Tries to orient all corner triangles of each link coherently. The
    /// corner triangle of (tet, v) has its vertices at the labels other
    /// than v, oriented by ascending label; a gluing must reverse the
    /// direction of the shared edge.
    fn link_orientability(&self, class: &[u32], count: usize) -> Vec<bool> {
        let nt = self.len();
        let mut orientable = vec![true; count];
        let mut orient = vec![0i8; 4 * nt];
        let dir = |v: usize, x: usize, y: usize| -> i8 {
            // +1 if x -> y follows the ascending cyclic order of the corner
            // triangle of vertex v
            let labels: Vec<usize> = (0..4).filter(|&l| l != v).collect();
            let ix = labels.iter().position(|&l| l == x).unwrap();
            let iy = labels.iter().position(|&l| l == y).unwrap();
            if (ix + 1) % 3 == iy {
                1
            } else {
                -1
            }
        };
        for start in 0..4 * nt {
            if orient[start] != 0 {
                continue;
            }
            orient[start] = 1;
            let mut stack = vec![start];
            while let Some(s) = stack.pop() {
                let (t, v) = (s / 4, s % 4);
                for f in 0..4 {
                    if f == v {
                        continue;
                    }
                    let Some(g) = self.tets[t][f] else { continue };
                    // shared edge endpoints: the labels other than v and f
                    let mut others = (0..4).filter(|&l| l != v && l != f);
                    let x = others.next().unwrap();
                    let y = others.next().unwrap();
                    let (t2, v2) = (g.target as usize, g.perm.apply(v));
                    let (x2, y2) = (g.perm.apply(x), g.perm.apply(y));
                    // coherent orientations traverse the shared edge in
                    // opposite directions
                    let want = -orient[s] * dir(v, x, y) * dir(v2, x2, y2);
                    let s2 = 4 * t2 + v2;
                    if orient[s2] == 0 {
                        orient[s2] = want;
                        stack.push(s2);
                    } else if orient[s2] != want {
                        orientable[class[s] as usize] = false;
                    }
                }
            }
        }
        orientable
    }

    pub fn validate(&self) -> ValidityReport {
        let mut problems = Vec::new();
        if let Err(e) = self.involutive() {
            problems.push(e);
        }
        let free_faces = self.num_free_faces();
        let (eclass, ecount) = self.edge_classes();
        let mut edge_orders = vec![0usize; ecount];
        for s in 0..6 * self.len() {
            edge_orders[eclass[s] as usize] += 1;
        }
        let vertex_links = if problems.is_empty() {
            self.vertex_link_surfaces()
        } else {
            Vec::new()
        };
        let (_, vcount) = self.vertex_classes();
        let faces = (4 * self.len() - free_faces) / 2 + free_faces;
        let ideal = faces as i64 - ecount as i64 - self.len() as i64;
        ValidityReport {
            valid: problems.is_empty(),
            problems,
            num_tetrahedra: self.len(),
            free_faces,
            edge_orders,
            vertex_links,
            euler_characteristic: vcount as i64 + ideal,
            ideal_euler_characteristic: ideal,
        }
    }

    /// `gtrig v1 n` then per tetrahedron four entries `target:perm` (perm as
    /// four digits) or `-` for unglued.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "gtrig v1 {}", self.len()).unwrap();
        for tet in &self.tets {
            let parts: Vec<String> = tet
                .iter()
                .map(|g| match g {
                    None => "-".to_string(),
                    Some(g) => format!("{}:{:?}", g.target, g.perm),
                })
                .collect();
            writeln!(out, "{}", parts.join(" ")).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<GeneralTriangulation, GtrigError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(GtrigError::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "gtrig" || parts[1] != "v1" {
            return Err(GtrigError::Parse {
                line: 1,
                msg: "expected header `gtrig v1 n`".into(),
            });
        }
        let n: usize = parts[2].parse().map_err(|e| GtrigError::Parse {
            line: 1,
            msg: format!("bad count: {e}"),
        })?;
        let mut gt = GeneralTriangulation::new(n);
        for t in 0..n {
            let (ln, line) = lines.next().ok_or(GtrigError::Parse {
                line: n + 1,
                msg: "missing tetrahedron lines".into(),
            })?;
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != 4 {
                return Err(GtrigError::Parse {
                    line: ln + 1,
                    msg: "expected four entries".into(),
                });
            }
            for (f, e) in entries.iter().enumerate() {
                if *e == "-" {
                    continue;
                }
                let (target, perm) = e.split_once(':').ok_or(GtrigError::Parse {
                    line: ln + 1,
                    msg: format!("bad entry `{e}`"),
                })?;
                let target: usize = target.parse().map_err(|_| GtrigError::Parse {
                    line: ln + 1,
                    msg: format!("bad target in `{e}`"),
                })?;
                if perm.len() != 4 || !perm.chars().all(|c| c.is_ascii_digit()) {
                    return Err(GtrigError::Parse {
                        line: ln + 1,
                        msg: format!("bad permutation in `{e}`"),
                    });
                }
                let digits: Vec<u8> = perm.bytes().map(|b| b - b'0').collect();
                let perm = Perm4::new([digits[0], digits[1], digits[2], digits[3]])
                    .map_err(|_| GtrigError::Parse {
                        line: ln + 1,
                        msg: format!("bad permutation in `{e}`"),
                    })?;
                gt.tets[t][f] = Some(Gluing {
                    target: target as u32,
                    perm,
                });
            }
        }
        Ok(gt)
    }

    /// The barycentric subdivision as a label-preserving [`Triangulation`]:
    /// one simplex per chain (vertex, edge, face) of each tetrahedron, with
    /// the output's solids being the tetrahedra.
    pub fn barycentric_subdivision(
        &self,
        schlafli: SchlafliType,
    ) -> Result<Triangulation, crate::trig::TrigError> {
        assert_eq!(
            (schlafli.p(), schlafli.q()),
            (3, 3),
            "barycentric subdivision of a tetrahedral complex is tetrahedral"
        );
        let tmpl = crate::solid::solid_template(3, 3);
        let n = tmpl.size;
        // template flag for each (vertex, edge bits, face bits) chain
        let mut flag_of_chain = std::collections::HashMap::new();
        for flag in 0..n {
            let v = tmpl.flag_vertex[flag];
            let (a, b) = tmpl.edges[tmpl.flag_edge[flag] as usize];
            let fverts = &tmpl.faces[tmpl.flag_face[flag] as usize];
            let ebits = (1u8 << a) | (1 << b);
            let fbits = fverts.iter().fold(0u8, |m, &x| m | 1 << x);
            flag_of_chain.insert((v, ebits, fbits), flag);
        }
        let chain_of_flag: Vec<(u8, u8, u8)> = (0..n)
            .map(|flag| {
                let v = tmpl.flag_vertex[flag];
                let (a, b) = tmpl.edges[tmpl.flag_edge[flag] as usize];
                let fverts = &tmpl.faces[tmpl.flag_face[flag] as usize];
                (
                    v,
                    (1u8 << a) | (1 << b),
                    fverts.iter().fold(0u8, |m, &x| m | 1 << x),
                )
            })
            .collect();

        let map_bits = |bits: u8, perm: &Perm4| -> u8 {
            (0..4)
                .filter(|&x| bits >> x & 1 == 1)
                .fold(0u8, |m, x| m | 1 << perm.apply(x))
        };

        let mut simplices = vec![[UNGLUED; 4]; n * self.len()];
        for tet in 0..self.len() {
            let base = tet * n;
            for flag in 0..n {
                for i in 0..3 {
                    simplices[base + flag][i] = (base + tmpl.adj[i][flag] as usize) as i32;
                }
                let (v, ebits, fbits) = chain_of_flag[flag];
                // face 3 of the simplex lies on the tetrahedron face of this
                // chain, i.e. the face opposite the vertex missing from fbits
                let omit = (0..4).find(|&x| fbits >> x & 1 == 0).unwrap();
                if let Some(g) = self.tets[tet][omit] {
                    let nv = g.perm.apply(v as usize) as u8;
                    let nebits = map_bits(ebits, &g.perm);
                    let nfbits = map_bits(fbits, &g.perm);
                    let nflag = flag_of_chain[&(nv, nebits, nfbits)];
                    simplices[base + flag][3] =
                        (g.target as usize * n + nflag) as i32;
                }
            }
        }
        let t = Triangulation::from_parts(schlafli, false, simplices);
        debug_assert!(t.is_template_aligned());
        Ok(t)
    }
}

impl std::fmt::Debug for GeneralTriangulation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GeneralTriangulation({} tetrahedra, {} free faces)",
            self.len(),
            self.num_free_faces()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_basics() {
        let p = Perm4::new([1, 0, 3, 2]).unwrap();
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.inverse(), p);
        assert!(p.is_even());
        assert!(Perm4::new([0, 0, 1, 2]).is_err());
        assert!(!Perm4::new([1, 0, 2, 3]).unwrap().is_even());
    }

    #[test]
    fn lone_tetrahedron_valid() {
        let gt = GeneralTriangulation::new(1);
        let report = gt.validate();
        assert!(report.valid);
        assert_eq!(report.free_faces, 4);
        assert_eq!(report.vertex_links.len(), 4);
        for link in &report.vertex_links {
            assert!(!link.closed);
            assert_eq!(link.euler_characteristic, 1);
        }
    }

    #[test]
    fn non_involutive_rejected() {
        let mut gt = GeneralTriangulation::new(2);
        // handcraft an inconsistent pair of gluings
        gt.tets[0][0] = Some(Gluing {
            target: 1,
            perm: Perm4::identity(),
        });
        gt.tets[1][0] = Some(Gluing {
            target: 1,
            perm: Perm4::identity(),
        });
        let report = gt.validate();
        assert!(!report.valid);
    }

    #[test]
    fn text_round_trip() {
        let mut gt = GeneralTriangulation::new(2);
        gt.glue(0, 0, 1, Perm4::new([0, 2, 1, 3]).unwrap()).unwrap();
        gt.glue(0, 1, 1, Perm4::new([2, 1, 3, 0]).unwrap()).unwrap();
        let text = gt.to_text();
        assert!(text.starts_with("gtrig v1 2\n"));
        let back = GeneralTriangulation::from_text(&text).unwrap();
        assert!(back.validate().valid);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn barycentric_subdivision_of_free_tet() {
        let gt = GeneralTriangulation::new(1);
        let t = gt
            .barycentric_subdivision(SchlafliType::new(3, 3, 6).unwrap())
            .unwrap();
        assert_eq!(t.len(), 24);
        assert!(t.has_open_faces());
    }
}
