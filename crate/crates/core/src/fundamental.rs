//! Fundamental group presentations from the dual spine of a tessellation.
//!
//! For a barycentric [`Triangulation`] the presentation is computed at the
//! solid level: one generator per polygon-face pairing outside a spanning
//! tree of the solid adjacency graph, one relator per tessellation edge
//! (read off by walking the simplices around a 01-edge class). This
//! presents the fundamental group of the complex minus its vertices, which
//! for the cusped types is the cusped manifold itself and for the closed
//! types (all vertex links spheres) the closed manifold.
//!
//! [`GeneralTriangulation`] input uses the tetrahedron-level spine instead:
//! generators are face pairings, relators are edge classes.

use thiserror::Error;

use crate::gtrig::GeneralTriangulation;
use crate::trig::Triangulation;

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("presentation requires a fully glued complex")]
    NotFullyGlued,
    #[error("complex is not connected")]
    Disconnected,
}

/// Words are sequences of nonzero letters: `g+1` for generator `g`,
/// `-(g+1)` for its inverse.
pub type Word = Vec<i32>;

#[derive(Debug, Clone)]
pub struct Presentation {
    pub num_generators: usize,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// Signed exponent-sum matrix, one row per relator.
    pub fn abelianized_rows(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|w| {
                let mut row = vec![0i64; self.num_generators];
                for &l in w {
                    row[l.unsigned_abs() as usize - 1] += l.signum() as i64;
                }
                row
            })
            .collect()
    }

    pub fn total_relator_length(&self) -> usize {
        self.relators.iter().map(|w| w.len()).sum()
    }
}

/// A presentation read off a complex, remembering which generator (if any)
/// each face crossing maps to, so covering spaces can be built by lifting
/// the complex along a representation.
#[derive(Debug, Clone)]
pub struct SpinePresentation {
    pub presentation: Presentation,
    /// Letter crossed when leaving simplex `s` through face 3 (for
    /// triangulations), or tetrahedron face slot `4s + f` (general):
    /// 0 for spanning-tree or unglued crossings, otherwise `+-(g+1)`.
    pub crossing_letter: Vec<i32>,
}

fn free_reduce(w: &mut Word) {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w.iter() {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    *w = out;
}

fn cyclic_reduce(w: &mut Word) {
    free_reduce(w);
    while w.len() >= 2 && *w.first().unwrap() == -*w.last().unwrap() {
        w.remove(0);
        w.pop();
        free_reduce(w);
    }
}

/// Deduplicates relators equal up to rotation and inversion.
fn dedup_relators(relators: Vec<Word>) -> Vec<Word> {
    let canon = |w: &Word| -> Word {
        let mut best: Option<Word> = None;
        for flip in [false, true] {
            let base: Word = if flip {
                w.iter().rev().map(|&l| -l).collect()
            } else {
                w.clone()
            };
            for rot in 0..base.len().max(1) {
                let mut cand = base.clone();
                cand.rotate_left(rot);
                if best.as_ref().map(|b| &cand < b).unwrap_or(true) {
                    best = Some(cand);
                }
            }
        }
        best.unwrap_or_default()
    };
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for w in relators {
        if w.is_empty() {
            continue;
        }
        if seen.insert(canon(&w)) {
            out.push(w);
        }
    }
    out
}

/// Dual-spine presentation of a fully glued barycentric triangulation, at
/// the level of the solid complex.
pub fn presentation_from_triangulation(
    t: &Triangulation,
) -> Result<SpinePresentation, PresentationError> {
    if t.has_open_faces() {
        return Err(PresentationError::NotFullyGlued);
    }
    if !t.is_connected() {
        return Err(PresentationError::Disconnected);
    }
    let n = t.schlafli().simplices_per_solid();
    let k = t.len();
    let num_solids = k / n;

    // polygon faces: orbits under faces 0 and 1 (the walk about a 23-edge)
    let mut face_id = vec![u32::MAX; k];
    let mut num_faces = 0u32;
    for s in 0..k {
        if face_id[s] != u32::MAX {
            continue;
        }
        let mut stack = vec![s];
        face_id[s] = num_faces;
        while let Some(x) = stack.pop() {
            for i in 0..2 {
                let nb = t.neighbor(x, i) as usize;
                if face_id[nb] == u32::MAX {
                    face_id[nb] = num_faces;
                    stack.push(nb);
                }
            }
        }
        num_faces += 1;
    }

    // pairings of polygon faces via face 3; directed from the side with the
    // smaller face id (self-pairings of a solid keep the tie)
    let mut pairing_of_face = vec![u32::MAX; num_faces as usize];
    let mut pairings: Vec<(u32, u32, usize)> = Vec::new(); // (from face, to face, witness simplex)
    for s in 0..k {
        let f = face_id[s];
        if pairing_of_face[f as usize] != u32::MAX {
            continue;
        }
        let g = face_id[t.neighbor(s, 3) as usize];
        let id = pairings.len() as u32;
        pairing_of_face[f as usize] = id;
        pairing_of_face[g as usize] = id;
        let (from, to) = if f <= g { (f, g) } else { (g, f) };
        let witness = if from == f { s } else { t.neighbor(s, 3) as usize };
        pairings.push((from, to, witness));
    }

    // spanning tree over solids
    let solid_of_face: Vec<u32> = {
        let mut v = vec![0u32; num_faces as usize];
        for s in 0..k {
            v[face_id[s] as usize] = (s / n) as u32;
        }
        v
    };
    let mut in_tree = vec![false; pairings.len()];
    let mut reached = vec![false; num_solids];
    reached[0] = true;
    let mut grown = true;
    while grown {
        grown = false;
        for (pi, &(from, to, _)) in pairings.iter().enumerate() {
            let a = solid_of_face[from as usize] as usize;
            let b = solid_of_face[to as usize] as usize;
            if reached[a] != reached[b] {
                in_tree[pi] = true;
                reached[a] = true;
                reached[b] = true;
                grown = true;
            }
        }
    }
    debug_assert!(reached.iter().all(|&r| r));

    // generators = non-tree pairings
    let mut letter_of_pairing = vec![0i32; pairings.len()];
    let mut num_generators = 0usize;
    for (pi, tree) in in_tree.iter().enumerate() {
        if !tree {
            num_generators += 1;
            letter_of_pairing[pi] = num_generators as i32;
        }
    }

    // crossing letter per simplex: sign + iff leaving through the pairing's
    // `from` side
    let mut crossing_letter = vec![0i32; k];
    for s in 0..k {
        let f = face_id[s];
        let pi = pairing_of_face[f as usize] as usize;
        let letter = letter_of_pairing[pi];
        if letter == 0 {
            continue;
        }
        let (from, to, _) = pairings[pi];
        // same-face gluings are rejected by glue_faces, so the two sides of
        // a pairing always have distinct face ids
        debug_assert_ne!(from, to);
        crossing_letter[s] = if f == from { letter } else { -letter };
    }

    // one relator per 01-edge class: walk around the edge, alternating
    // faces 2 and 3, recording face-3 crossings
    let (class, count) = t.edge01_classes();
    let mut visited = vec![false; count];
    let mut relators = Vec::new();
    for s0 in 0..k {
        let c = class[s0] as usize;
        if visited[c] {
            continue;
        }
        visited[c] = true;
        let mut word: Word = Vec::new();
        let mut s = s0;
        let mut via = 2usize;
        loop {
            if via == 3 {
                let l = crossing_letter[s];
                if l != 0 {
                    word.push(l);
                }
            }
            s = t.neighbor(s, via) as usize;
            via = 5 - via;
            if s == s0 && via == 2 {
                break;
            }
        }
        cyclic_reduce(&mut word);
        relators.push(word);
    }
    let relators = dedup_relators(relators);

    Ok(SpinePresentation {
        presentation: Presentation {
            num_generators,
            relators,
        },
        crossing_letter,
    })
}

/// Tetrahedron-level dual-spine presentation of a general triangulation.
pub fn presentation_from_general(
    gt: &GeneralTriangulation,
) -> Result<SpinePresentation, PresentationError> {
    if gt.num_free_faces() > 0 {
        return Err(PresentationError::NotFullyGlued);
    }
    if !gt.is_connected() {
        return Err(PresentationError::Disconnected);
    }
    let nt = gt.len();

    // face slots pair up; direct each pairing from the smaller slot
    let slot = |tet: usize, face: usize| 4 * tet + face;
    let mut pairing_of_slot = vec![u32::MAX; 4 * nt];
    let mut pairings: Vec<(usize, usize)> = Vec::new(); // (from slot, to slot)
    for tet in 0..nt {
        for face in 0..4 {
            if pairing_of_slot[slot(tet, face)] != u32::MAX {
                continue;
            }
            let g = gt.gluing(tet, face).unwrap();
            let other = slot(g.target as usize, g.perm.apply(face));
            let id = pairings.len() as u32;
            pairing_of_slot[slot(tet, face)] = id;
            pairing_of_slot[other] = id;
            pairings.push((slot(tet, face).min(other), slot(tet, face).max(other)));
        }
    }

    // spanning tree over tetrahedra
    let mut in_tree = vec![false; pairings.len()];
    let mut reached = vec![false; nt];
    reached[0] = true;
    let mut grown = true;
    while grown {
        grown = false;
        for (pi, &(from, to)) in pairings.iter().enumerate() {
            let a = from / 4;
            let b = to / 4;
            if reached[a] != reached[b] {
                in_tree[pi] = true;
                reached[a] = true;
                reached[b] = true;
                grown = true;
            }
        }
    }
    debug_assert!(reached.iter().all(|&r| r));

    let mut letter_of_pairing = vec![0i32; pairings.len()];
    let mut num_generators = 0usize;
    for (pi, tree) in in_tree.iter().enumerate() {
        if !tree {
            num_generators += 1;
            letter_of_pairing[pi] = num_generators as i32;
        }
    }
    let mut crossing_letter = vec![0i32; 4 * nt];
    for sl in 0..4 * nt {
        let pi = pairing_of_slot[sl] as usize;
        let letter = letter_of_pairing[pi];
        if letter == 0 {
            continue;
        }
        let (from, to) = pairings[pi];
        crossing_letter[sl] = if sl == from {
            letter
        } else {
            debug_assert_eq!(sl, to);
            -letter
        };
    }

    // one relator per edge class: walk around the edge until the state
    // (tetrahedron, directed edge, entering face) returns, so edges whose
    // neighborhood loop reverses them are followed around twice
    let mut relators = Vec::new();
    for (tet0, a0, b0) in gt.edge_class_representatives() {
        let mut word: Word = Vec::new();
        let enter0 = (0..4).find(|&f| f != a0 && f != b0).unwrap();
        let (mut tet, mut a, mut b, mut enter_face) = (tet0, a0, b0, enter0);
        loop {
            let leave_face = (0..4)
                .find(|&f| f != a && f != b && f != enter_face)
                .unwrap();
            let l = crossing_letter[slot(tet, leave_face)];
            if l != 0 {
                word.push(l);
            }
            let g = gt.gluing(tet, leave_face).unwrap();
            (tet, a, b, enter_face) = (
                g.target as usize,
                g.perm.apply(a),
                g.perm.apply(b),
                g.perm.apply(leave_face),
            );
            if (tet, a, b, enter_face) == (tet0, a0, b0, enter0) {
                break;
            }
        }
        cyclic_reduce(&mut word);
        relators.push(word);
    }
    let relators = dedup_relators(relators);

    Ok(SpinePresentation {
        presentation: Presentation {
            num_generators,
            relators,
        },
        crossing_letter,
    })
}

/// A Tietze-simplified presentation, with each original generator expressed
/// as a word in the simplified generators so representations pull back.
#[derive(Debug, Clone)]
pub struct SimplifiedPresentation {
    pub presentation: Presentation,
    /// original generator index -> word over simplified generators
    pub original_in_simplified: Vec<Word>,
}

/// Eliminates generators that occur exactly once in some relator,
/// re-substituting everywhere; shrinks the coset-table searches.
pub fn tietze_simplify(p: &Presentation) -> SimplifiedPresentation {
    let mut gens: Vec<Option<()>> = vec![Some(()); p.num_generators];
    let mut relators: Vec<Word> = p.relators.clone();
    let mut exprs: Vec<Word> = (1..=p.num_generators as i32).map(|g| vec![g]).collect();

    let subst = |w: &Word, gen: i32, replacement: &Word| -> Word {
        let mut out = Vec::with_capacity(w.len() + replacement.len());
        for &l in w {
            if l == gen {
                out.extend_from_slice(replacement);
            } else if l == -gen {
                out.extend(replacement.iter().rev().map(|&x| -x));
            } else {
                out.push(l);
            }
        }
        out
    };

    loop {
        for w in relators.iter_mut() {
            cyclic_reduce(w);
        }
        relators.retain(|w| !w.is_empty());
        relators = dedup_relators(relators);

        // find (relator, generator) with a single occurrence, preferring
        // short replacement words
        let mut pick: Option<(usize, i32, usize)> = None; // (relator idx, letter, relator len)
        for (ri, w) in relators.iter().enumerate() {
            let mut counts: std::collections::HashMap<i32, usize> = std::collections::HashMap::new();
            for &l in w {
                *counts.entry(l.abs()).or_insert(0) += 1;
            }
            for (&g, &c) in &counts {
                if c == 1 && pick.map(|(_, _, len)| w.len() < len).unwrap_or(true) {
                    pick = Some((ri, g, w.len()));
                }
            }
        }
        let Some((ri, g, len)) = pick else { break };
        if len > 24 {
            break; // replacement words would blow up
        }
        // solve relator for g: rotate so +-g is first, g = inverse of rest
        let w = relators.remove(ri);
        let pos = w.iter().position(|&l| l.abs() == g).unwrap();
        let mut rot = w.clone();
        rot.rotate_left(pos);
        let replacement: Word = if rot[0] > 0 {
            rot[1..].iter().rev().map(|&x| -x).collect()
        } else {
            rot[1..].to_vec()
        };
        for w in relators.iter_mut() {
            *w = subst(w, g, &replacement);
        }
        for e in exprs.iter_mut() {
            *e = subst(e, g, &replacement);
            free_reduce(e);
        }
        gens[g as usize - 1] = None;
    }

    // renumber surviving generators densely
    let mut new_of_old = vec![0i32; p.num_generators];
    let mut next = 0i32;
    for (gi, alive) in gens.iter().enumerate() {
        if alive.is_some() {
            next += 1;
            new_of_old[gi] = next;
        }
    }
    let renumber = |w: &Word| -> Word {
        w.iter()
            .map(|&l| {
                let nn = new_of_old[l.unsigned_abs() as usize - 1];
                debug_assert_ne!(nn, 0, "eliminated generator survives in a word");
                l.signum() * nn
            })
            .collect()
    };
    let relators = relators.iter().map(&renumber).collect();
    let exprs = exprs.iter().map(&renumber).collect();
    SimplifiedPresentation {
        presentation: Presentation {
            num_generators: next as usize,
            relators,
        },
        original_in_simplified: exprs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::abelian_group_from_relations;
    use crate::schlafli::SchlafliType;

    #[test]
    fn word_reduction() {
        let mut w = vec![1, 2, -2, -1, 3];
        free_reduce(&mut w);
        assert_eq!(w, vec![3]);
        let mut w = vec![1, 2, 3, -1];
        cyclic_reduce(&mut w);
        assert_eq!(w, vec![2, 3]);
    }

    #[test]
    fn tietze_eliminates() {
        // <a, b | a b a^-1 b^-1, b^3> with an extra c = ab relator
        let p = Presentation {
            num_generators: 3,
            relators: vec![vec![1, 2, -1, -2], vec![2, 2, 2], vec![3, -1, -2]],
        };
        let s = tietze_simplify(&p);
        assert!(s.presentation.num_generators < 3);
        // abelianizations agree
        let g1 = abelian_group_from_relations(&p.abelianized_rows(), 3);
        let g2 = abelian_group_from_relations(
            &s.presentation.abelianized_rows(),
            s.presentation.num_generators,
        );
        assert_eq!(g1, g2);
    }

    /// Deficiency sanity: generators - relators before dedup matches the
    /// Euler characteristic of the dual spine.
    #[test]
    fn two_tet_presentation_shape() {
        let s = SchlafliType::new(3, 3, 6).unwrap();
        let cfg = crate::enumerate::SearchConfig::new(s, 2, true);
        let result = crate::enumerate::enumerate(cfg).unwrap();
        assert_eq!(result.sigs.len(), 2);
        for sig in &result.sigs {
            let t = crate::canonical::triangulation_from_sig(sig);
            let sp = presentation_from_triangulation(&t).unwrap();
            // direct counts: 2 tetrahedra, 4 face pairings, 1 tree edge ->
            // 3 generators; relators come from the 01-edge classes (two per
            // tessellation edge before deduplication)
            assert_eq!(sp.presentation.num_generators, 3);
            let (_, num01) = t.edge01_classes();
            assert_eq!(num01, 4); // two tessellation edge classes
            assert!(!sp.presentation.relators.is_empty());
            assert!(sp.presentation.relators.len() <= num01);
            // deficiency consistency with the dual spine: gens = P - S + 1
            assert_eq!(sp.presentation.num_generators, 4 - 2 + 1);
        }
    }
}
