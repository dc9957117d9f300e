//! Combinatorics of the five Platonic solids and the fixed flag templates
//! used by the barycentric subdivision.
//!
//! A flag of a solid is a chain (vertex, edge, face); the barycentric
//! subdivision has one simplex per flag, with simplex vertex 0 on the solid
//! vertex, 1 on the edge center, 2 on the face center and 3 on the solid
//! center. Crossing simplex face `i` (the face opposite vertex `i`) changes
//! exactly the `i`-th entry of the chain, so the gluings on faces 0, 1, 2
//! are the three flag involutions of the solid.
//!
//! The local flag numbering is fixed once and for all: flag `2*(f*p + i) + s`
//! is the side-`s` flag of the `i`-th edge of face `f`. Side `s` is the
//! handedness class of the flag, so all three involutions connect even to odd
//! indices, which is what the orientable-mode parity convention needs.

use std::collections::HashMap;
use std::sync::OnceLock;

/// Face tables of a polyhedron: each face is a cyclic vertex list, all faces
/// oriented consistently (every directed edge appears in exactly one face).
struct Polyhedron {
    faces: Vec<Vec<u8>>,
}

impl Polyhedron {
    fn num_vertices(&self) -> usize {
        self.faces
            .iter()
            .flatten()
            .map(|&v| v as usize + 1)
            .max()
            .unwrap()
    }

    /// Every directed edge must appear exactly once across all face cycles.
    fn check_orientation(&self) {
        let mut seen = HashMap::new();
        for (f, cycle) in self.faces.iter().enumerate() {
            for i in 0..cycle.len() {
                let a = cycle[i];
                let b = cycle[(i + 1) % cycle.len()];
                assert!(
                    seen.insert((a, b), f).is_none(),
                    "directed edge ({a},{b}) duplicated"
                );
            }
        }
        for &(a, b) in seen.keys().collect::<Vec<_>>() {
            assert!(seen.contains_key(&(b, a)), "edge ({a},{b}) has no partner");
        }
    }

    /// Map from directed edge (a,b) to (face, position) with face[pos] = a.
    fn directed_edge_map(&self) -> HashMap<(u8, u8), (usize, usize)> {
        let mut map = HashMap::new();
        for (f, cycle) in self.faces.iter().enumerate() {
            for i in 0..cycle.len() {
                let a = cycle[i];
                let b = cycle[(i + 1) % cycle.len()];
                map.insert((a, b), (f, i));
            }
        }
        map
    }

    /// The dual polyhedron: one face per vertex, listing the faces around
    /// that vertex in rotational order.
    fn dual(&self) -> Polyhedron {
        let de = self.directed_edge_map();
        let nv = self.num_vertices();
        let mut dual_faces = Vec::with_capacity(nv);
        for v in 0..nv as u8 {
            // start anywhere: first face containing v
            let (mut f, mut i) = self
                .faces
                .iter()
                .enumerate()
                .find_map(|(f, cycle)| cycle.iter().position(|&x| x == v).map(|i| (f, i)))
                .expect("vertex not on any face");
            let start = f;
            let mut cycle = Vec::new();
            loop {
                cycle.push(f as u8);
                let len = self.faces[f].len();
                let b = self.faces[f][(i + 1) % len];
                // the face containing the reversed edge (b, v)
                let (f2, j) = de[&(b, v)];
                f = f2;
                i = (j + 1) % self.faces[f].len(); // position of v in f2
                debug_assert_eq!(self.faces[f][i], v);
                if f == start {
                    break;
                }
            }
            dual_faces.push(cycle);
        }
        Polyhedron { faces: dual_faces }
    }
}

fn tetrahedron() -> Polyhedron {
    Polyhedron {
        faces: vec![vec![0, 2, 1], vec![0, 1, 3], vec![1, 2, 3], vec![2, 0, 3]],
    }
}

fn cube() -> Polyhedron {
    Polyhedron {
        faces: vec![
            vec![0, 3, 2, 1],
            vec![4, 5, 6, 7],
            vec![0, 1, 5, 4],
            vec![1, 2, 6, 5],
            vec![2, 3, 7, 6],
            vec![3, 0, 4, 7],
        ],
    }
}

/// Vertices: 0 = apex, 1-5 = upper pentagon, 6-10 = lower pentagon, 11 = apex.
fn icosahedron() -> Polyhedron {
    let mut faces: Vec<Vec<u8>> = Vec::with_capacity(20);
    for i in 0..5u8 {
        let u = 1 + i;
        let un = 1 + (i + 1) % 5;
        let l = 6 + i;
        let ln = 6 + (i + 1) % 5;
        faces.push(vec![0, u, un]);
        faces.push(vec![u, l, un]);
        faces.push(vec![un, l, ln]);
        faces.push(vec![11, ln, l]);
    }
    Polyhedron { faces }
}

fn polyhedron(p: u32, q: u32) -> Polyhedron {
    match (p, q) {
        (3, 3) => tetrahedron(),
        (4, 3) => cube(),
        (3, 4) => cube().dual(),
        (3, 5) => icosahedron(),
        (5, 3) => icosahedron().dual(),
        _ => panic!("{{{p},{q}}} is not a Platonic solid"),
    }
}

/// The fixed barycentric-subdivision template of one Platonic solid, plus the
/// precomputed data driving the canonical reindexing.
pub(crate) struct SolidTemplate {
    #[allow(dead_code)]
    pub p: u32,
    #[allow(dead_code)]
    pub q: u32,
    /// Number of flags (= simplices per solid).
    pub size: usize,
    /// The three internal involutions: `adj[i][flag]` is the neighbor across
    /// simplex face `i`.
    pub adj: [Vec<u32>; 3],
    /// Solid vertex carrying simplex vertex 0 of each flag.
    pub flag_vertex: Vec<u8>,
    /// Solid edge (index into `edges`) carrying simplex vertex 1.
    pub flag_edge: Vec<u8>,
    /// Solid face carrying simplex vertex 2.
    pub flag_face: Vec<u8>,
    #[allow(dead_code)]
    pub num_vertices: usize,
    pub edges: Vec<(u8, u8)>,
    /// Face tables, cyclically ordered and consistently oriented.
    pub faces: Vec<Vec<u8>>,
    /// For each face, the face sharing no vertex with it (cube only).
    pub opposite_face: Option<Vec<u8>>,
    /// Canonical traversal of the template seeded at flag 0: position -> flag.
    traversal: Vec<u32>,
    /// `order[seed][pos]`: the flag at position `pos` of the canonical
    /// traversal seeded at flag `seed`. Row `seed` is the image of the
    /// seed-0 traversal under the unique template automorphism 0 -> seed.
    order: Vec<u32>,
    /// Inverse rows: `inv_order[seed][flag]` is the traversal position of
    /// `flag` when seeded at `seed`.
    inv_order: Vec<u32>,
}

impl SolidTemplate {
    fn build(p: u32, q: u32) -> SolidTemplate {
        let poly = polyhedron(p, q);
        poly.check_orientation();
        let nf = poly.faces.len();
        let pp = p as usize;
        assert!(poly.faces.iter().all(|c| c.len() == pp));
        let size = 2 * pp * nf;

        let mut edges: Vec<(u8, u8)> = Vec::new();
        let mut edge_id = HashMap::new();
        for cycle in &poly.faces {
            for i in 0..pp {
                let a = cycle[i];
                let b = cycle[(i + 1) % pp];
                let key = (a.min(b), a.max(b));
                if !edge_id.contains_key(&key) {
                    edge_id.insert(key, edges.len() as u8);
                    edges.push(key);
                }
            }
        }

        let idx = |f: usize, i: usize, s: usize| (2 * (f * pp + i) + s) as u32;
        let de = poly.directed_edge_map();

        let mut adj0 = vec![0u32; size];
        let mut adj1 = vec![0u32; size];
        let mut adj2 = vec![0u32; size];
        let mut flag_vertex = vec![0u8; size];
        let mut flag_edge = vec![0u8; size];
        let mut flag_face = vec![0u8; size];
        for f in 0..nf {
            let cycle = &poly.faces[f];
            for i in 0..pp {
                let a = cycle[i];
                let b = cycle[(i + 1) % pp];
                let (f2, j) = de[&(b, a)];
                for s in 0..2 {
                    let x = idx(f, i, s) as usize;
                    flag_face[x] = f as u8;
                    flag_edge[x] = edge_id[&(a.min(b), a.max(b))];
                    flag_vertex[x] = if s == 0 { a } else { b };
                    adj0[x] = idx(f, i, 1 - s);
                    adj1[x] = if s == 0 {
                        idx(f, (i + pp - 1) % pp, 1)
                    } else {
                        idx(f, (i + 1) % pp, 0)
                    };
                    adj2[x] = idx(f2, j, 1 - s);
                }
            }
        }
        let adj = [adj0, adj1, adj2];

        // All three involutions must pair even with odd indices.
        for a in &adj {
            for (x, &y) in a.iter().enumerate() {
                assert_eq!(a[y as usize] as usize, x);
                assert_ne!(x % 2, y as usize % 2);
            }
        }

        let traversal = template_traversal(&adj, size, 0);
        let mut order = vec![0u32; size * size];
        let mut inv_order = vec![0u32; size * size];
        for seed in 0..size {
            let auto = template_automorphism(&adj, size, seed as u32);
            for (pos, &t) in traversal.iter().enumerate() {
                let flag = auto[t as usize];
                order[seed * size + pos] = flag;
                inv_order[seed * size + flag as usize] = pos as u32;
            }
        }

        let opposite_face = if (p, q) == (4, 3) {
            let mut opp = vec![0u8; nf];
            for f in 0..nf {
                let o = (0..nf)
                    .find(|&g| {
                        g != f && poly.faces[g].iter().all(|v| !poly.faces[f].contains(v))
                    })
                    .expect("cube face without opposite");
                opp[f] = o as u8;
            }
            Some(opp)
        } else {
            None
        };

        SolidTemplate {
            p,
            q,
            size,
            adj,
            flag_vertex,
            flag_edge,
            flag_face,
            num_vertices: poly.num_vertices(),
            edges,
            faces: poly.faces,
            opposite_face,
            traversal,
            order,
            inv_order,
        }
    }

    /// Canonical traversal positions for a solid entered at `seed`.
    pub fn order_row(&self, seed: usize) -> &[u32] {
        &self.order[seed * self.size..(seed + 1) * self.size]
    }

    /// Traversal position of each flag for a solid entered at `seed`.
    pub fn inv_order_row(&self, seed: usize) -> &[u32] {
        &self.inv_order[seed * self.size..(seed + 1) * self.size]
    }

    #[allow(dead_code)]
    pub fn traversal(&self) -> &[u32] {
        &self.traversal
    }
}

/// The node ordering rule restricted to one solid: repeatedly take, among
/// edges of the flag graph from ordered to unordered nodes, those with the
/// lowest label, then the one at the lowest-positioned ordered endpoint.
fn template_traversal(adj: &[Vec<u32>; 3], size: usize, seed: u32) -> Vec<u32> {
    let mut order = Vec::with_capacity(size);
    let mut rank = vec![u32::MAX; size];
    order.push(seed);
    rank[seed as usize] = 0;
    let mut cursor = [0usize; 3];
    while order.len() < size {
        let mut appended = false;
        for label in 0..3 {
            let c = &mut cursor[label];
            while *c < order.len() {
                let nb = adj[label][order[*c] as usize] as usize;
                if rank[nb] == u32::MAX {
                    rank[nb] = order.len() as u32;
                    order.push(nb as u32);
                    appended = true;
                    break;
                }
                *c += 1;
            }
            if appended {
                break;
            }
        }
        assert!(appended, "flag graph disconnected");
    }
    order
}

/// The unique label-preserving automorphism of the template taking flag 0 to
/// `seed` (the symmetry group acts simply transitively on flags).
fn template_automorphism(adj: &[Vec<u32>; 3], size: usize, seed: u32) -> Vec<u32> {
    let mut phi = vec![u32::MAX; size];
    phi[0] = seed;
    let mut stack = vec![0u32];
    while let Some(x) = stack.pop() {
        for a in adj {
            let y = a[x as usize] as usize;
            let fy = a[phi[x as usize] as usize];
            if phi[y] == u32::MAX {
                phi[y] = fy;
                stack.push(y as u32);
            } else {
                assert_eq!(phi[y], fy, "flag graph has no automorphism 0 -> {seed}");
            }
        }
    }
    assert!(phi.iter().all(|&v| v != u32::MAX));
    phi
}

static TEMPLATES: OnceLock<HashMap<(u32, u32), &'static SolidTemplate>> = OnceLock::new();

pub(crate) fn solid_template(p: u32, q: u32) -> &'static SolidTemplate {
    let map = TEMPLATES.get_or_init(|| {
        let mut m = HashMap::new();
        for (p, q) in [(3, 3), (3, 4), (4, 3), (3, 5), (5, 3)] {
            m.insert((p, q), &*Box::leak(Box::new(SolidTemplate::build(p, q))));
        }
        m
    });
    map[&(p, q)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn template_sizes() {
        assert_eq!(solid_template(3, 3).size, 24);
        assert_eq!(solid_template(3, 4).size, 48);
        assert_eq!(solid_template(4, 3).size, 48);
        assert_eq!(solid_template(3, 5).size, 120);
        assert_eq!(solid_template(5, 3).size, 120);
    }

    #[test]
    fn solid_counts() {
        for ((p, q), (v, e, f)) in [
            ((3u32, 3u32), (4, 6, 4)),
            ((3, 4), (6, 12, 8)),
            ((4, 3), (8, 12, 6)),
            ((3, 5), (12, 30, 20)),
            ((5, 3), (20, 30, 12)),
        ] {
            let t = solid_template(p, q);
            assert_eq!(t.num_vertices, v, "{{{p},{q}}}");
            assert_eq!(t.edges.len(), e);
            assert_eq!(t.faces.len(), f);
            // each vertex on q faces
            for vtx in 0..t.num_vertices as u8 {
                let deg = t.faces.iter().filter(|c| c.contains(&vtx)).count();
                assert_eq!(deg, q as usize);
            }
        }
    }

    #[test]
    fn traversal_covers_all_flags() {
        for (p, q) in [(3, 3), (3, 4), (4, 3), (3, 5), (5, 3)] {
            let t = solid_template(p, q);
            for seed in 0..t.size {
                let row = t.order_row(seed);
                let mut seen = vec![false; t.size];
                for &x in row {
                    assert!(!seen[x as usize]);
                    seen[x as usize] = true;
                }
                assert_eq!(row[0] as usize, seed);
            }
        }
    }

    /// The traversal pattern in position space must not depend on the seed;
    /// this is what makes dropping the face-0/1/2 gluings from the signature
    /// safe.
    #[test]
    fn traversal_pattern_seed_independent() {
        for (p, q) in [(3, 3), (4, 3), (5, 3)] {
            let t = solid_template(p, q);
            let base = t.order_row(0);
            let mut base_inv = vec![0u32; t.size];
            for (pos, &x) in base.iter().enumerate() {
                base_inv[x as usize] = pos as u32;
            }
            let pattern: Vec<[u32; 3]> = base
                .iter()
                .map(|&x| {
                    [0, 1, 2].map(|i| base_inv[t.adj[i][x as usize] as usize])
                })
                .collect();
            for seed in [1, t.size / 2, t.size - 1] {
                let row = t.order_row(seed);
                let mut inv = vec![0u32; t.size];
                for (pos, &x) in row.iter().enumerate() {
                    inv[x as usize] = pos as u32;
                }
                for (pos, &x) in row.iter().enumerate() {
                    let got = [0, 1, 2].map(|i| inv[t.adj[i][x as usize] as usize]);
                    assert_eq!(got, pattern[pos], "{{{p},{q}}} seed {seed} pos {pos}");
                }
            }
        }
    }

    #[test]
    fn cube_opposite_faces() {
        let t = solid_template(4, 3);
        let opp = t.opposite_face.as_ref().unwrap();
        for f in 0..6 {
            assert_eq!(opp[opp[f] as usize] as usize, f);
            assert_ne!(opp[f] as usize, f);
        }
    }
}
