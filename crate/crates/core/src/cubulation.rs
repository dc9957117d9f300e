//! Subdivision algorithms for cubical tessellations: the general face-cycle
//! subdivision into an ideal triangulation (six tetrahedra per cube, via a
//! canonical choice of face diagonals), and the two-coloring subdivision of
//! cusped cubical tessellations into five regular tetrahedra per cube.

use thiserror::Error;

use crate::canonical::specialized_iso_sig;
use crate::gtrig::{GeneralTriangulation, Perm4};
use crate::schlafli::SchlafliType;
use crate::solid::solid_template;
use crate::trig::{Triangulation, UnionFind};

#[derive(Debug, Error)]
pub enum CubulationError {
    #[error("input must be a fully glued cubical tessellation, got {0}")]
    NotCubical(SchlafliType),
    #[error("complex has unglued faces")]
    NotClosed,
    #[error("two-coloring subdivision requires the cusped cubical type {{4,3,6}}")]
    NotCuspedCubical,
}

/// A closed complex of cubes with face-pairing data, extracted from the
/// barycentric subdivision by contracting each 48-simplex block.
///
/// Local conventions come from the fixed cube template: corners 0..8,
/// faces 0..6 with their corner 4-cycles, and the opposite-face involution.
pub struct CubeComplex {
    pub num_cubes: usize,
    /// `pairing[side]` is the partner of side `side = 6*cube + face`.
    pairing: Vec<u32>,
    /// `vertex_map[side][corner]` is the partner-side corner identified
    /// with `corner`; 255 off the face.
    vertex_map: Vec<[u8; 8]>,
    /// Per (cube, corner): global vertex class.
    vertex_class: Vec<u32>,
    pub num_vertex_classes: usize,
    /// Per (cube, template edge): global edge class.
    edge_class: Vec<u32>,
    pub num_edge_classes: usize,
}

fn cube_faces() -> &'static [Vec<u8>] {
    &solid_template(4, 3).faces
}

fn opposite_face(face: usize) -> usize {
    solid_template(4, 3).opposite_face.as_ref().unwrap()[face] as usize
}

impl CubeComplex {
    pub fn side(cube: usize, face: usize) -> usize {
        6 * cube + face
    }

    pub fn pairing(&self, side: usize) -> usize {
        self.pairing[side] as usize
    }

    pub fn vertex_map(&self, side: usize) -> &[u8; 8] {
        &self.vertex_map[side]
    }

    pub fn vertex_class(&self, cube: usize, corner: usize) -> usize {
        self.vertex_class[8 * cube + corner] as usize
    }

    /// Edge class of a template edge (index into the cube's edge table).
    pub fn edge_class(&self, cube: usize, edge: usize) -> usize {
        self.edge_class[12 * cube + edge] as usize
    }

    /// Extracts the cube complex from a fully glued cubical tessellation.
    pub fn from_triangulation(t: &Triangulation) -> Result<CubeComplex, CubulationError> {
        if t.schlafli().p() != 4 || t.schlafli().q() != 3 {
            return Err(CubulationError::NotCubical(t.schlafli()));
        }
        if t.has_open_faces() {
            return Err(CubulationError::NotClosed);
        }
        let tmpl = solid_template(4, 3);
        let n = tmpl.size;
        let num_cubes = t.len() / n;

        let mut pairing = vec![u32::MAX; 6 * num_cubes];
        let mut vertex_map = vec![[255u8; 8]; 6 * num_cubes];
        for s in 0..t.len() {
            let cube = s / n;
            let flag = s % n;
            let side = Self::side(cube, tmpl.flag_face[flag] as usize);
            let img = t.neighbor(s, 3) as usize;
            let iside = Self::side(img / n, tmpl.flag_face[img % n] as usize);
            if pairing[side] == u32::MAX {
                pairing[side] = iside as u32;
            } else {
                debug_assert_eq!(pairing[side], iside as u32);
            }
            let v = tmpl.flag_vertex[flag] as usize;
            let iv = tmpl.flag_vertex[img % n];
            if vertex_map[side][v] == 255 {
                vertex_map[side][v] = iv;
            } else {
                debug_assert_eq!(vertex_map[side][v], iv);
            }
        }
        debug_assert!((0..6 * num_cubes).all(|s| pairing[pairing[s] as usize] as usize == s));

        // global vertex classes of the cubulation
        let mut uf = UnionFind::new(8 * num_cubes);
        for side in 0..6 * num_cubes {
            let cube = side / 6;
            let icube = pairing[side] as usize / 6;
            for v in 0..8 {
                if vertex_map[side][v] != 255 {
                    uf.union(8 * cube + v, 8 * icube + vertex_map[side][v] as usize);
                }
            }
        }
        let (vertex_class, num_vertex_classes) = uf.classes();

        // global edge classes
        let edges = &tmpl.edges;
        let edge_index = |a: u8, b: u8| -> usize {
            edges
                .iter()
                .position(|&(x, y)| (x, y) == (a.min(b), a.max(b)))
                .unwrap()
        };
        let mut uf = UnionFind::new(12 * num_cubes);
        for side in 0..6 * num_cubes {
            let cube = side / 6;
            let icube = pairing[side] as usize / 6;
            let cycle = &cube_faces()[side % 6];
            for i in 0..4 {
                let a = cycle[i];
                let b = cycle[(i + 1) % 4];
                let (ia, ib) = (vertex_map[side][a as usize], vertex_map[side][b as usize]);
                uf.union(
                    12 * cube + edge_index(a, b),
                    12 * icube + edge_index(ia, ib),
                );
            }
        }
        let (edge_class, num_edge_classes) = uf.classes();

        Ok(CubeComplex {
            num_cubes,
            pairing,
            vertex_map,
            vertex_class,
            num_vertex_classes,
            edge_class,
            num_edge_classes,
        })
    }

    pub fn num_face_classes(&self) -> usize {
        3 * self.num_cubes
    }

    /// Face class id of a side (sides pair up; the class is keyed by the
    /// smaller side).
    pub fn face_class(&self, side: usize) -> usize {
        side.min(self.pairing(side))
    }
}

/// Oriented face cycles: maximal sequences of face classes successively
/// opposite within cubes.
pub struct FaceCycleDecomposition {
    /// Each cycle as the sequence of sides it enters cubes through.
    pub cycles: Vec<Vec<u32>>,
    /// For each side, the cycle containing it as an entering side.
    pub cycle_of_side: Vec<u32>,
}

/// Partitions the faces into cycles and fixes each cycle's orientation so
/// that its smallest (cube, face) side is traversed as an entering side.
///
/// Entering sides are iterated by `side -> pairing(opposite(side))`; the
/// orbit of the partner sides is the same cycle reversed, so an unoriented
/// cycle is a pair of orbits and choosing an orientation means choosing one
/// of them.
pub fn face_cycles(c: &CubeComplex) -> FaceCycleDecomposition {
    let num_sides = 6 * c.num_cubes;
    let step = |side: usize| c.pairing(CubeComplex::side(side / 6, opposite_face(side % 6)));
    let orbit_of = |start: usize| {
        let mut o = vec![start as u32];
        let mut x = step(start);
        while x != start {
            o.push(x as u32);
            x = step(x);
        }
        o
    };
    let mut cycle_of_side = vec![u32::MAX; num_sides];
    let mut cycles = Vec::new();
    for start in 0..num_sides {
        if cycle_of_side[start] != u32::MAX {
            continue;
        }
        let orbit = orbit_of(start);
        let partner_orbit: Vec<u32> =
            orbit.iter().map(|&s| c.pairing(s as usize) as u32).collect();
        assert!(
            !partner_orbit.contains(&(start as u32)),
            "face cycle equal to its own reverse"
        );
        let min_fwd = *orbit.iter().min().unwrap();
        let min_rev = *partner_orbit.iter().min().unwrap();
        let mut chosen = if min_fwd <= min_rev {
            orbit
        } else {
            orbit_of(min_rev as usize)
        };
        let min_side = *chosen.iter().min().unwrap();
        let pos = chosen.iter().position(|&s| s == min_side).unwrap();
        chosen.rotate_left(pos);
        let id = cycles.len() as u32;
        for &s in &chosen {
            debug_assert_eq!(cycle_of_side[s as usize], u32::MAX, "side in two cycles");
            cycle_of_side[s as usize] = id;
            cycle_of_side[c.pairing(s as usize)] = id;
        }
        cycles.push(chosen);
    }
    FaceCycleDecomposition {
        cycles,
        cycle_of_side,
    }
}

impl FaceCycleDecomposition {
    /// The face-class sequence of one oriented cycle.
    pub fn face_classes(&self, c: &CubeComplex, cycle: usize) -> Vec<usize> {
        self.cycles[cycle]
            .iter()
            .map(|&s| c.face_class(s as usize))
            .collect()
    }
}

/// The canonical diagonal choice induced by the oriented face cycles.
pub struct DiagonalChoice {
    /// Per face class (keyed by smaller side): the picked side.
    pub picked_side: Vec<u32>,
    /// Per side: the two corners of its diagonal, in that side's cube.
    pub diagonal: Vec<(u8, u8)>,
    /// Per cube: the vertex where the three picked faces meet.
    pub apex: Vec<u8>,
}

/// For each face class the oriented cycle picks the side it enters the next
/// cube through; per cube this selects one face of each opposite pair, and
/// those three faces meet at a vertex, through which their diagonals are
/// drawn. Unpicked sides inherit the partner's diagonal through the pairing.
pub fn choose_diagonals(c: &CubeComplex, fcd: &FaceCycleDecomposition) -> DiagonalChoice {
    let num_sides = 6 * c.num_cubes;
    let mut picked = vec![false; num_sides];
    for cycle in &fcd.cycles {
        for &s in cycle {
            picked[s as usize] = true;
        }
    }
    // exactly one side of each pair is picked, one face of each opposite
    // pair per cube
    let mut picked_side = vec![u32::MAX; num_sides];
    for side in 0..num_sides {
        let partner = c.pairing(side);
        assert_ne!(
            picked[side], picked[partner],
            "face class must have exactly one picked side"
        );
        let class = side.min(partner);
        picked_side[class] = if picked[side] { side } else { partner } as u32;
    }
    let faces = cube_faces();
    let mut apex = vec![255u8; c.num_cubes];
    for cube in 0..c.num_cubes {
        let sides: Vec<usize> = (0..6)
            .map(|f| CubeComplex::side(cube, f))
            .filter(|&s| picked[s])
            .collect();
        assert_eq!(sides.len(), 3, "three picked faces per cube");
        for f in 0..6 {
            let s = CubeComplex::side(cube, f);
            assert_ne!(
                picked[s],
                picked[CubeComplex::side(cube, opposite_face(f))],
                "one picked face per opposite pair"
            );
        }
        let common = (0..8u8)
            .find(|&v| sides.iter().all(|&s| faces[s % 6].contains(&v)))
            .expect("three picked faces meet at a vertex");
        apex[cube] = common;
    }

    // diagonals: picked side gets the diagonal through the cube's apex;
    // the partner side inherits it through the vertex correspondence
    let mut diagonal = vec![(255u8, 255u8); num_sides];
    for side in 0..num_sides {
        if !picked[side] {
            continue;
        }
        let cube = side / 6;
        let cycle = &faces[side % 6];
        let pos = cycle
            .iter()
            .position(|&v| v == apex[cube])
            .expect("apex lies on its picked faces");
        let d = (cycle[pos], cycle[(pos + 2) % 4]);
        diagonal[side] = d;
        let partner = c.pairing(side);
        let vm = c.vertex_map(side);
        diagonal[partner] = (vm[d.0 as usize], vm[d.1 as usize]);
    }
    DiagonalChoice {
        picked_side,
        diagonal,
        apex,
    }
}

/// Subdivides each cube by coning its diagonal-subdivided boundary, minus
/// the cells at the apex, to the apex: six tetrahedra per cube, glued
/// internally across the far-face diagonals and the three far edges, and
/// externally through the cube pairings.
pub fn subdivide_appendix(c: &CubeComplex) -> GeneralTriangulation {
    let fcd = face_cycles(c);
    let choice = choose_diagonals(c, &fcd);
    let faces = cube_faces();

    // per cube: 6 tetrahedra (apex, t0, t1, t2) over the far-face triangles;
    // vertex 0 is the apex
    let mut tet_corners: Vec<[u8; 4]> = Vec::with_capacity(6 * c.num_cubes);
    // triangle key (cube corners as bitmask) -> tet index, for matching
    let mut tet_of_far_triangle = std::collections::HashMap::new();
    let mut far_tris_of_side: Vec<Vec<usize>> = vec![Vec::new(); 6 * c.num_cubes];
    for cube in 0..c.num_cubes {
        let v = choice.apex[cube];
        for f in 0..6 {
            let side = CubeComplex::side(cube, f);
            if faces[f].contains(&v) {
                continue; // near face
            }
            let (d0, d1) = choice.diagonal[side];
            let cycle = &faces[f];
            let pos = cycle.iter().position(|&x| x == d0).unwrap();
            debug_assert_eq!(cycle[(pos + 2) % 4], d1);
            for tri in [
                [d0, cycle[(pos + 1) % 4], d1],
                [d0, d1, cycle[(pos + 3) % 4]],
            ] {
                let tet = tet_corners.len();
                tet_corners.push([v, tri[0], tri[1], tri[2]]);
                let mask = tri.iter().fold(0u8, |m, &x| m | 1 << x);
                tet_of_far_triangle.insert((cube, mask), tet);
                far_tris_of_side[side].push(tet);
            }
        }
    }

    let mut gt = GeneralTriangulation::new(tet_corners.len());
    let glue_by_corners = |gt: &mut GeneralTriangulation,
                           t1: usize,
                           t2: usize,
                           map: &dyn Fn(u8) -> u8| {
        // face of t1 not fixed... both faces determined by matching corners
        let c1 = &tet_corners[t1];
        let c2 = &tet_corners[t2];
        // find the unmatched corner of t1: the one whose image is not in t2
        let mut images = [255u8; 4];
        let mut missing1 = usize::MAX;
        for (i, &x) in c1.iter().enumerate() {
            let y = map(x);
            if let Some(_j) = c2.iter().position(|&z| z == y) {
                images[i] = y;
            } else {
                debug_assert_eq!(missing1, usize::MAX);
                missing1 = i;
            }
        }
        let missing2 = (0..4)
            .find(|&j| !images.contains(&c2[j]))
            .expect("one unmatched corner");
        let mut perm = [0u8; 4];
        for i in 0..4 {
            if i == missing1 {
                perm[i] = missing2 as u8;
            } else {
                perm[i] = c2.iter().position(|&z| z == images[i]).unwrap() as u8;
            }
        }
        if gt.gluing(t1, missing1).is_none() {
            gt.glue(t1, missing1, t2, Perm4::new(perm).unwrap()).unwrap();
        }
    };

    for cube in 0..c.num_cubes {
        let v = choice.apex[cube];
        // internal gluings: far triangles sharing an edge (a far-face
        // diagonal or a cube edge at the corner opposite the apex) give
        // tetrahedra sharing the cone face over that edge
        let tets: Vec<usize> = (6 * cube..6 * (cube + 1)).collect();
        for (ai, &a) in tets.iter().enumerate() {
            for &b in &tets[ai + 1..] {
                let ca = &tet_corners[a];
                let cb = &tet_corners[b];
                let shared: Vec<u8> = ca[1..]
                    .iter()
                    .filter(|x| cb[1..].contains(x))
                    .cloned()
                    .collect();
                if shared.len() == 2 {
                    glue_by_corners(&mut gt, a, b, &|x| x);
                }
            }
        }
        // external gluings: the cone faces over the near-face triangles
        // attach to the partner side, where the same face class is far
        for f in 0..6 {
            if !faces[f].contains(&v) {
                continue; // handled from the partner's near side
            }
            let side = CubeComplex::side(cube, f);
            let partner = c.pairing(side);
            let pcube = partner / 6;
            let vm = c.vertex_map(side);
            let map = |x: u8| vm[x as usize];
            // the near face is cut by its diagonal through the apex
            let (d0, d1) = choice.diagonal[side];
            debug_assert!(d0 == v || d1 == v);
            let w = if d0 == v { d1 } else { d0 };
            let cycle = &faces[f];
            let pos = cycle.iter().position(|&x| x == v).unwrap();
            for other in [cycle[(pos + 1) % 4], cycle[(pos + 3) % 4]] {
                // near triangle (v, other, w) is the cone face over the
                // hexagon edge {other, w} of the far triangle containing it
                let our_tet = *far_tris_of_side[6 * cube..6 * (cube + 1)]
                    .iter()
                    .flatten()
                    .find(|&&tt| {
                        let tc = &tet_corners[tt];
                        tc[1..].contains(&other) && tc[1..].contains(&w)
                    })
                    .expect("cone face has a carrier tetrahedron");
                let pmask = (1u8 << map(v)) | (1 << map(other)) | (1 << map(w));
                let their_tet = tet_of_far_triangle[&(pcube, pmask)];
                glue_by_corners(&mut gt, our_tet, their_tet, &map);
            }
        }
    }
    debug_assert_eq!(gt.num_free_faces(), 0);
    gt
}

/// Two-coloring subdivision of a cusped cubical tessellation: if the
/// 1-skeleton (cusps as vertices) is bipartite, each color class draws the
/// face diagonals between its vertices, splitting every cube into five
/// regular ideal tetrahedra. Returns the resulting tetrahedral
/// tessellations, deduplicated by signature (0, 1, or 2 of them).
pub fn subdivide_two_coloring(
    t: &Triangulation,
) -> Result<Vec<Triangulation>, CubulationError> {
    if (t.schlafli().p(), t.schlafli().q(), t.schlafli().r()) != (4, 3, 6) {
        return Err(CubulationError::NotCuspedCubical);
    }
    let c = CubeComplex::from_triangulation(t)?;

    // proper 2-coloring of the vertex classes along edge classes
    let mut color = vec![-1i8; c.num_vertex_classes];
    let edges = &solid_template(4, 3).edges;
    // adjacency via cube edges
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); c.num_vertex_classes];
    for cube in 0..c.num_cubes {
        for &(a, b) in edges.iter() {
            let ca = c.vertex_class(cube, a as usize) as u32;
            let cb = c.vertex_class(cube, b as usize) as u32;
            adj[ca as usize].push(cb);
            adj[cb as usize].push(ca);
        }
    }
    let mut stack = vec![0usize];
    color[0] = 0;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            let y = y as usize;
            if color[y] < 0 {
                color[y] = 1 - color[x];
                stack.push(y);
            } else if color[y] == color[x] {
                return Ok(Vec::new()); // not bipartite
            }
        }
    }

    let schlafli = SchlafliType::new(3, 3, 6).unwrap();
    let mut out: Vec<Triangulation> = Vec::new();
    let mut seen = Vec::new();
    for fixed in 0..2i8 {
        let gt = five_tet_subdivision(&c, |cube, corner| {
            color[c.vertex_class(cube, corner)] == fixed
        });
        debug_assert_eq!(gt.num_free_faces(), 0);
        let bary = gt.barycentric_subdivision(schlafli).unwrap();
        let sig = specialized_iso_sig(&bary).unwrap();
        if !seen.contains(&sig) {
            seen.push(sig);
            out.push(bary);
        }
    }
    Ok(out)
}

/// Splits each cube into the central tetrahedron on the marked corners plus
/// four corner tetrahedra, wiring internal and pairing gluings.
fn five_tet_subdivision(
    c: &CubeComplex,
    marked: impl Fn(usize, usize) -> bool,
) -> GeneralTriangulation {
    let faces = cube_faces();
    // per cube: tet 0 = central (4 marked corners ascending), tets 1..5 =
    // corner tets (unmarked corner + its 3 marked neighbors ascending)
    let mut tet_corners: Vec<Vec<u8>> = Vec::with_capacity(5 * c.num_cubes);
    let edges = &solid_template(4, 3).edges;
    for cube in 0..c.num_cubes {
        let marks: Vec<u8> = (0..8u8).filter(|&v| marked(cube, v as usize)).collect();
        assert_eq!(marks.len(), 4, "cube corners 2-color 4+4");
        tet_corners.push(marks.clone());
        for u in (0..8u8).filter(|v| !marks.contains(v)) {
            let mut tc = vec![u];
            for &(a, b) in edges.iter() {
                if a == u {
                    tc.push(b);
                } else if b == u {
                    tc.push(a);
                }
            }
            tc[1..].sort_unstable();
            debug_assert!(tc[1..].iter().all(|x| marks.contains(x)));
            tet_corners.push(tc);
        }
    }

    let tet_base = |cube: usize| 5 * cube;
    let mut gt = GeneralTriangulation::new(5 * c.num_cubes);

    // internal: each corner tet's face opposite its unmarked corner glues to
    // the central tet
    for cube in 0..c.num_cubes {
        let central = tet_base(cube);
        for ci in 1..5 {
            let tet = central + ci;
            let tc = tet_corners[tet].clone();
            let cc = tet_corners[central].clone();
            // vertex map: corner-tet vertex i (for i >= 1) -> central index
            let mut perm = [0u8; 4];
            // face 0 of the corner tet (opposite the unmarked corner)
            // glues to the central face opposite the fourth marked corner
            let missing = cc
                .iter()
                .position(|x| !tc[1..].contains(x))
                .expect("central corner not on the corner tet");
            perm[0] = missing as u8;
            for i in 1..4 {
                perm[i] = cc.iter().position(|&x| x == tc[i]).unwrap() as u8;
            }
            gt.glue(tet, 0, central, Perm4::new(perm).unwrap()).unwrap();
        }
    }

    // external: each cube face contributes two triangle halves, each a face
    // of a corner tet, glued through the cube pairing
    for cube in 0..c.num_cubes {
        for f in 0..6 {
            let side = CubeComplex::side(cube, f);
            let partner = c.pairing(side);
            let (pcube, _pf) = (partner / 6, partner % 6);
            let vm = c.vertex_map(side);
            // halves: (u, x, y) with u unmarked on this face, x, y its
            // marked neighbors on the face, i.e. the diagonal is (x, y)
            for &u in faces[f].iter() {
                if marked(cube, u as usize) {
                    continue;
                }
                let cycle = &faces[f];
                let pos = cycle.iter().position(|&z| z == u).unwrap();
                let x = cycle[(pos + 1) % 4];
                let y = cycle[(pos + 3) % 4];
                // our tet: corner tet at u; its face opposite the marked
                // corner not in {x, y}
                let our_tet = tet_base(cube)
                    + 1
                    + (0..8u8)
                        .filter(|&v| !marked(cube, v as usize))
                        .position(|v| v == u)
                        .unwrap();
                let tc = &tet_corners[our_tet];
                let our_face = tc
                    .iter()
                    .position(|&z| z != u && z != x && z != y)
                    .unwrap();
                if gt.gluing(our_tet, our_face).is_some() {
                    continue;
                }
                // partner half: images of (u, x, y)
                let (pu, px, py) = (vm[u as usize], vm[x as usize], vm[y as usize]);
                let their_tet = tet_base(pcube)
                    + 1
                    + (0..8u8)
                        .filter(|&v| !marked(pcube, v as usize))
                        .position(|v| v == pu)
                        .expect("pairing preserves the coloring");
                let ptc = &tet_corners[their_tet];
                let their_face = ptc
                    .iter()
                    .position(|&z| z != pu && z != px && z != py)
                    .unwrap();
                let mut perm = [0u8; 4];
                perm[our_face] = their_face as u8;
                for (i, &z) in tc.iter().enumerate() {
                    if i == our_face {
                        continue;
                    }
                    let img = if z == u {
                        pu
                    } else if z == x {
                        px
                    } else {
                        debug_assert_eq!(z, y);
                        py
                    };
                    perm[i] = ptc.iter().position(|&w| w == img).unwrap() as u8;
                }
                gt.glue(our_tet, our_face, their_tet, Perm4::new(perm).unwrap())
                    .unwrap();
            }
        }
    }
    gt
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate, SearchConfig};

    fn cubical_census(max: usize, orientable: bool) -> Vec<Triangulation> {
        let s = SchlafliType::new(4, 3, 6).unwrap();
        enumerate(SearchConfig::new(s, max, orientable))
            .unwrap()
            .sigs
            .iter()
            .map(crate::canonical::triangulation_from_sig)
            .collect()
    }

    #[test]
    fn one_cube_extraction() {
        for t in cubical_census(1, true) {
            let c = CubeComplex::from_triangulation(&t).unwrap();
            assert_eq!(c.num_cubes, 1);
            assert_eq!(c.num_face_classes(), 3);
            let fcd = face_cycles(&c);
            let total: usize = fcd.cycles.iter().map(|cy| cy.len()).sum();
            assert_eq!(total, 3);
        }
    }

    #[test]
    fn diagonals_and_apex() {
        for t in cubical_census(1, true) {
            let c = CubeComplex::from_triangulation(&t).unwrap();
            let fcd = face_cycles(&c);
            let choice = choose_diagonals(&c, &fcd);
            assert_eq!(choice.apex.len(), 1);
            assert_ne!(choice.apex[0], 255);
            // diagonal consistency across every pairing
            for side in 0..6 {
                let partner = c.pairing(side);
                let vm = c.vertex_map(side);
                let (d0, d1) = choice.diagonal[side];
                let (e0, e1) = choice.diagonal[partner];
                let mapped = (vm[d0 as usize], vm[d1 as usize]);
                assert!(mapped == (e0, e1) || mapped == (e1, e0));
            }
        }
    }

    #[test]
    fn appendix_subdivision_valid_one_cube() {
        for t in cubical_census(1, true) {
            let c = CubeComplex::from_triangulation(&t).unwrap();
            let gt = subdivide_appendix(&c);
            assert_eq!(gt.len(), 6);
            let report = gt.validate();
            assert!(report.valid, "{:?}", report.problems);
            assert_eq!(report.free_faces, 0);
        }
    }

    #[test]
    fn one_cusped_cubes_have_no_two_coloring() {
        for t in cubical_census(1, true) {
            let cusps = crate::invariants::num_cusps(&t);
            let subs = subdivide_two_coloring(&t).unwrap();
            if cusps == 1 {
                assert!(subs.is_empty());
            }
            for s in &subs {
                assert_eq!(s.len(), 5 * 48 / 48 * 24);
            }
        }
    }
}
