//! Cross-module property tests on small censuses: signature completeness,
//! census closure invariants, orientability partition, duality
//! compatibility, and profile refinement.

use platonic_census::invariants;
use platonic_census::*;

fn schlafli(p: u32, q: u32, r: u32) -> SchlafliType {
    SchlafliType::new(p, q, r).unwrap()
}

fn census(p: u32, q: u32, r: u32, max: usize, orientable: bool) -> Vec<SpecializedIsoSig> {
    let cfg = SearchConfig::new(schlafli(p, q, r), max, orientable).threads(2);
    enumerate(cfg).unwrap().sigs.into_iter().collect()
}

/// Label-preserving simplicial isomorphism by brute force over the image of
/// simplex 0.
fn brute_force_isomorphic(a: &Triangulation, b: &Triangulation) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let k = a.len();
    'outer: for image0 in 0..k {
        let mut map = vec![u32::MAX; k];
        map[0] = image0 as u32;
        let mut stack = vec![0usize];
        while let Some(s) = stack.pop() {
            for f in 0..4 {
                let na = a.neighbor(s, f);
                let nb = b.neighbor(map[s] as usize, f);
                if na == UNGLUED || nb == UNGLUED {
                    if na != nb {
                        continue 'outer;
                    }
                    continue;
                }
                let (na, nb) = (na as usize, nb as usize);
                if map[na] == u32::MAX {
                    map[na] = nb as u32;
                    stack.push(na);
                } else if map[na] as usize != nb {
                    continue 'outer;
                }
            }
        }
        if map.iter().all(|&v| v != u32::MAX) {
            let mut seen = vec![false; k];
            if map.iter().all(|&v| {
                let fresh = !seen[v as usize];
                seen[v as usize] = true;
                fresh
            }) {
                return true;
            }
        }
    }
    false
}

/// Distinct signatures admit no isomorphism; equal signatures admit one.
#[test]
fn signature_completeness_at_small_scale() {
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    let mut rng = StdRng::seed_from_u64(42);
    for (p, q, r) in [(3, 3, 6), (3, 4, 4)] {
        let mut sigs = census(p, q, r, 2, true);
        sigs.extend(census(p, q, r, 2, false));
        let ts: Vec<Triangulation> = sigs.iter().map(triangulation_from_sig).collect();
        for i in 0..ts.len() {
            for j in i + 1..ts.len() {
                assert!(
                    !brute_force_isomorphic(&ts[i], &ts[j]),
                    "distinct signatures must be non-isomorphic"
                );
            }
            // a random relabeling has the same signature and is isomorphic
            let k = ts[i].len();
            let mut perm: Vec<usize> = (0..k).collect();
            perm.shuffle(&mut rng);
            let mut raw = vec![[UNGLUED; 4]; k];
            for s in 0..k {
                for f in 0..4 {
                    let nb = ts[i].neighbor(s, f);
                    raw[perm[s]][f] = if nb == UNGLUED {
                        UNGLUED
                    } else {
                        perm[nb as usize] as i32
                    };
                }
            }
            let relabeled = Triangulation::from_raw(ts[i].schlafli(), false, raw).unwrap();
            assert_eq!(specialized_iso_sig(&relabeled).unwrap(), sigs[i]);
            assert!(brute_force_isomorphic(&ts[i], &relabeled));
        }
    }
}

/// Census members are closed with the right edge orders and vertex links.
#[test]
fn census_closure_invariants() {
    for (p, q, r, max, orientable) in [
        (3, 3, 6, 3, false),
        (3, 4, 4, 2, true),
        (4, 3, 6, 1, false),
        (5, 3, 5, 1, true),
    ] {
        let s = schlafli(p, q, r);
        for sig in census(p, q, r, max, orientable) {
            let t = triangulation_from_sig(&sig);
            assert!(!t.has_open_faces());
            assert_eq!(fix_edges(&mut t.clone(), p, r), FixVerdict::Valid);
            let (class, count) = t.edge01_classes();
            let mut size = vec![0usize; count];
            for x in 0..t.len() {
                size[class[x] as usize] += 1;
            }
            assert!(size.iter().all(|&x| x == 2 * r as usize), "01-edge orders");
            for label in 1..4u8 {
                for link in t.vertex_links_for_label(label) {
                    assert!(link.is_sphere(), "label {label} link must be a sphere");
                }
            }
            for link in t.vertex_links_for_label(0) {
                if s.is_closed() {
                    assert!(link.is_sphere());
                } else {
                    assert!(link.closed && link.euler_characteristic == 0);
                }
            }
            // corner incidence count
            let corners: usize = t.vertex_links().iter().map(|l| l.num_corners).sum();
            assert_eq!(corners, 4 * t.len());
        }
    }
}

/// Orientable and non-orientable runs partition the census, and each
/// output's orientability matches its run; output at a smaller bound is a
/// subset of the output at a larger one.
#[test]
fn orientability_partition_and_monotonicity() {
    for (p, q, r) in [(3, 3, 6), (4, 3, 6)] {
        let o2: std::collections::BTreeSet<_> = census(p, q, r, 2, true).into_iter().collect();
        let n2: std::collections::BTreeSet<_> = census(p, q, r, 2, false).into_iter().collect();
        assert!(o2.is_disjoint(&n2));
        for sig in &o2 {
            assert!(triangulation_from_sig(sig).is_orientable());
        }
        for sig in &n2 {
            assert!(!triangulation_from_sig(sig).is_orientable());
        }
        let o1: std::collections::BTreeSet<_> = census(p, q, r, 1, true).into_iter().collect();
        assert!(o1.is_subset(&o2));
    }
}

/// Every returned signature re-parses and re-canonicalizes to itself.
#[test]
fn dedup_soundness() {
    for sig in census(3, 4, 4, 2, false) {
        let reparsed = SpecializedIsoSig::parse(&sig.to_string()).unwrap();
        assert_eq!(reparsed, sig);
        let t = triangulation_from_sig(&sig);
        assert_eq!(specialized_iso_sig(&t).unwrap(), sig);
    }
}

/// H1 and profiles are invariant under dualizing; automorphism order too.
#[test]
fn duality_compatibility() {
    let rules = invariants::default_escalation_rules();
    for sig in census(3, 5, 3, 1, true) {
        let t = triangulation_from_sig(&sig);
        let d = dual(&t).unwrap();
        assert_eq!(
            first_homology(&t).unwrap(),
            first_homology(&d).unwrap()
        );
        assert_eq!(
            invariants::profile(&t, &rules).unwrap(),
            invariants::profile(&d, &rules).unwrap()
        );
        assert_eq!(
            automorphisms(&t).unwrap().order,
            automorphisms(&d).unwrap().order
        );
    }
}

/// Adding cover data refines the homology-only partition.
#[test]
fn partition_refinement() {
    let sigs = census(5, 3, 5, 1, true);
    let h1_groups = {
        let mut groups: Vec<(AbelianGroup, Vec<usize>)> = Vec::new();
        for (i, sig) in sigs.iter().enumerate() {
            let h = first_homology(&triangulation_from_sig(sig)).unwrap();
            match groups.iter_mut().find(|(g, _)| *g == h) {
                Some((_, m)) => m.push(i),
                None => groups.push((h, vec![i])),
            }
        }
        groups
    };
    let full = invariants::group_by_profile(&sigs, &invariants::default_escalation_rules()).unwrap();
    // every full group is contained in one h1 group
    for g in &full {
        let owner = h1_groups
            .iter()
            .find(|(_, m)| m.contains(&g[0]))
            .unwrap();
        assert!(g.iter().all(|i| owner.1.contains(i)));
    }
    assert!(full.len() >= h1_groups.len());
}

/// The edge-fixing helper auto-closes a full-order 01-edge somewhere in the
/// 2-tetrahedron search space.
#[test]
fn fix_edges_auto_closes() {
    let s = schlafli(3, 3, 6);
    let mut base = Triangulation::new(s, false);
    base.add_platonic_solid(3, 3).unwrap();
    base.add_platonic_solid(3, 3).unwrap();
    let mut stack = vec![base];
    let mut witnessed = false;
    let mut states = 0;
    while let Some(t) = stack.pop() {
        states += 1;
        if witnessed || states > 20_000 {
            break;
        }
        let Some(s0) = (0..t.len()).find(|&x| t.neighbor(x, 3) == UNGLUED) else {
            continue;
        };
        for s1 in 0..t.len() {
            let mut t1 = t.clone();
            if !t1.glue_faces(s0, s1, 3) {
                continue;
            }
            let before = t1.num_open_faces();
            let mut probe = t1.clone();
            if fix_edges(&mut probe, 3, 6) == FixVerdict::Valid {
                if probe.num_open_faces() < before {
                    witnessed = true;
                }
                stack.push(probe);
            }
        }
    }
    assert!(witnessed, "fix_edges glued a full-order edge somewhere");
}

/// Dual of a cusped cubical tessellation has the reversed type, which is
/// not a census type.
#[test]
fn dual_of_cubical_rejected() {
    let sig = &census(4, 3, 6, 1, true)[0];
    let t = triangulation_from_sig(sig);
    match dual(&t) {
        Err(CanonicalError::NonSelfDualType(_, 6, 3, 4)) => {}
        other => panic!("expected reversed-symbol rejection, got {other:?}"),
    }
}

/// Parallel runs agree with the published row: 8 one-cube non-orientable
/// cubical tessellations at 4 threads.
#[test]
fn parallel_cubical_row() {
    let cfg = SearchConfig::new(schlafli(4, 3, 6), 1, false).threads(4);
    let result = enumerate_parallel(cfg).unwrap();
    assert_eq!(result.sigs.len(), 8);
}

/// One 2-cube cubical tessellation subdivides into two tetrahedral
/// tessellations of the same manifold, one of which hides symmetries: the
/// automorphism orders are 48 and 240 on the same five-cusped homology.
#[test]
fn hidden_symmetries_pair_from_cubical_subdivision() {
    use platonic_census::cubulation;
    let mut found = false;
    for sig in census(4, 3, 6, 2, true) {
        if sig.num_solids() != 2 {
            continue;
        }
        let t = triangulation_from_sig(&sig);
        let subs = cubulation::subdivide_two_coloring(&t).unwrap();
        if subs.len() != 2 {
            continue;
        }
        let mut orders: Vec<usize> = subs
            .iter()
            .map(|s| automorphisms(s).unwrap().order)
            .collect();
        orders.sort_unstable();
        if orders == vec![48, 240] {
            let h: Vec<AbelianGroup> = subs
                .iter()
                .map(|s| first_homology(s).unwrap())
                .collect();
            assert_eq!(h[0], h[1]);
            assert_eq!(h[0], AbelianGroup::free(5));
            // the order-240 tessellation is flag-transitive on oriented
            // flags: 240 = half the flag count of ten tetrahedra
            let regular = subs
                .iter()
                .find(|s| automorphisms(s).unwrap().order == 240)
                .unwrap();
            assert!(automorphisms(regular).unwrap().flag_transitive_oriented);
            found = true;
        }
    }
    assert!(found);
}

/// Face cycles partition the face classes; a cycle visits a cube at most
/// twice on the one-cube complexes and three-visit cycles appear in the
/// two-cube census.
#[test]
fn face_cycle_partition_and_cube_visits() {
    use platonic_census::cubulation::{face_cycles, CubeComplex};
    let mut max_visits_one_cube = 0;
    let mut three_visit_witness = false;
    for orientable in [true, false] {
        for sig in census(4, 3, 6, 2, orientable) {
            let t = triangulation_from_sig(&sig);
            let c = CubeComplex::from_triangulation(&t).unwrap();
            let fcd = face_cycles(&c);
            // partition: every face class in exactly one cycle
            let mut class_seen = vec![0usize; 6 * c.num_cubes];
            let mut total = 0;
            for cy in 0..fcd.cycles.len() {
                for fc in fcd.face_classes(&c, cy) {
                    class_seen[fc] += 1;
                    total += 1;
                }
            }
            assert_eq!(total, c.num_face_classes());
            for side in 0..6 * c.num_cubes {
                assert_eq!(class_seen[c.face_class(side)], 1);
            }
            for cy in &fcd.cycles {
                let mut visits = std::collections::BTreeMap::new();
                for &s in cy {
                    *visits.entry(s as usize / 6).or_insert(0usize) += 1;
                }
                for (_, v) in visits {
                    assert!(v <= 3, "a cycle meets a cube at most three times");
                    if c.num_cubes == 1 {
                        max_visits_one_cube = max_visits_one_cube.max(v);
                    } else if v == 3 {
                        three_visit_witness = true;
                    }
                }
            }
        }
    }
    assert_eq!(max_visits_one_cube, 2);
    assert!(three_visit_witness);
}

/// Fat-graph structural invariants hold after random reachable move
/// sequences, and the planar Euler count stays 2.
#[test]
fn augktg_random_walk_invariants() {
    use platonic_census::augktg::{self, FatGraph};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..40 {
        let mut g = augktg::k4();
        let a_moves = rng.gen_range(0..=2);
        for _ in 0..a_moves {
            let v = rng.gen_range(0..g.num_vertices());
            g = augktg::a_move(&g, v).unwrap();
            g.check_invariants().unwrap();
            assert_eq!(g.euler_characteristic(), 2);
        }
        let mut completed = true;
        for _ in 0..a_moves + 2 {
            let candidates: Vec<usize> = unzippable_edges(&g);
            if candidates.is_empty() {
                // some walks strand two non-adjacent trivalent vertices;
                // such sequences yield no link and the enumerator drops them
                completed = false;
                break;
            }
            let h = candidates[rng.gen_range(0..candidates.len())];
            g = match rng.gen_range(0..3) {
                0 => augktg::u_move(&g, h).unwrap(),
                1 => augktg::x_move(&g, h).unwrap(),
                _ => augktg::x_move_mirrored(&g, h).unwrap(),
            };
            g.check_invariants().unwrap();
            assert_eq!(g.euler_characteristic(), 2);
            g = augktg::simplify_r1(&g).unwrap();
            g.check_invariants().unwrap();
            assert_eq!(g.euler_characteristic(), 2);
        }
        if completed {
            assert_eq!(g.num_trivalent(), 0);
        }
    }

    fn unzippable_edges(g: &FatGraph) -> Vec<usize> {
        let verts = g.vertices();
        let mut vertex_of = vec![0usize; g.num_half_edges()];
        for (i, v) in verts.iter().enumerate() {
            for &h in v {
                vertex_of[h as usize] = i;
            }
        }
        (0..g.num_half_edges())
            .filter(|&h| {
                h < g.partner(h)
                    && vertex_of[h] != vertex_of[g.partner(h)]
                    && verts[vertex_of[h]].len() == 3
                    && verts[vertex_of[g.partner(h)]].len() == 3
            })
            .collect()
    }
}
