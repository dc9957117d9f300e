//! Combinatorial manifold invariants: first homology, small-degree covers
//! and their homology, and the composite profiles used to group
//! tessellations into manifold candidates.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::canonical::{dual, specialized_iso_sig, SpecializedIsoSig};
use crate::cosets::{cyclic_quotients, transitive_actions, CosetAction};
use crate::fundamental::{
    presentation_from_general, presentation_from_triangulation, tietze_simplify,
    PresentationError, SpinePresentation,
};
use crate::gtrig::GeneralTriangulation;
use crate::homology::{abelian_group_from_relations, AbelianGroup};
use crate::trig::{Triangulation, UNGLUED};

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("cover degree {0} out of supported range 2..=6")]
    BadDegree(usize),
    #[error("homology-link test requires a cusped type, got {0}")]
    NotCusped(crate::schlafli::SchlafliType),
    #[error("homology-link test requires an orientable tessellation")]
    NotOrientable,
}

/// First homology of the underlying manifold (for cusped types: with the
/// ideal vertices removed), from the abelianized dual-spine presentation.
pub fn first_homology(t: &Triangulation) -> Result<AbelianGroup, InvariantError> {
    let sp = presentation_from_triangulation(t)?;
    Ok(abelian_group_from_relations(
        &sp.presentation.abelianized_rows(),
        sp.presentation.num_generators,
    ))
}

pub fn first_homology_general(
    gt: &GeneralTriangulation,
) -> Result<AbelianGroup, InvariantError> {
    let sp = presentation_from_general(gt)?;
    Ok(abelian_group_from_relations(
        &sp.presentation.abelianized_rows(),
        sp.presentation.num_generators,
    ))
}

/// Number of label-0 vertex classes.
pub fn num_cusps(t: &Triangulation) -> usize {
    t.vertex_classes(0).1
}

/// Whether an orientable cusped tessellation has the homology of a link
/// complement: H1 isomorphic to Z^c with c the number of cusps.
pub fn is_homology_link(t: &Triangulation) -> Result<bool, InvariantError> {
    if !t.schlafli().is_cusped() {
        return Err(InvariantError::NotCusped(t.schlafli()));
    }
    if !t.is_orientable() {
        return Err(InvariantError::NotOrientable);
    }
    let h = first_homology(t)?;
    Ok(h.torsion.is_empty() && h.rank == num_cusps(t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoverType {
    Cyclic,
    Regular,
    Irregular,
}

impl std::fmt::Display for CoverType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoverType::Cyclic => write!(f, "cyclic"),
            CoverType::Regular => write!(f, "regular"),
            CoverType::Irregular => write!(f, "irregular"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoverRecord {
    pub degree: usize,
    pub cover_type: CoverType,
    pub homology: AbelianGroup,
}

/// Lifts the triangulation along a transitive action of its fundamental
/// group: sheet `i` of simplex `s` is simplex `i*k + s`, glued within a
/// sheet on internal faces and across sheets through the face-3 crossing
/// letters.
pub fn lift_triangulation(
    t: &Triangulation,
    spine: &SpinePresentation,
    action: &CosetAction,
) -> Triangulation {
    let k = t.len();
    let degree = action.degree;
    // permutation per signed letter (identity for letter 0)
    let mut perm_cache: BTreeMap<i32, Vec<u32>> = BTreeMap::new();
    let mut perm_of = |letter: i32| -> Vec<u32> {
        perm_cache
            .entry(letter)
            .or_insert_with(|| {
                if letter == 0 {
                    (0..degree as u32).collect()
                } else {
                    action.word_permutation(&vec![letter])
                }
            })
            .clone()
    };
    let mut simplices = vec![[UNGLUED; 4]; k * degree];
    for sheet in 0..degree {
        for s in 0..k {
            let new = sheet * k + s;
            for i in 0..3 {
                simplices[new][i] = (sheet * k + t.neighbor(s, i) as usize) as i32;
            }
            let nb = t.neighbor(s, 3);
            if nb != UNGLUED {
                let p = perm_of(spine.crossing_letter[s]);
                simplices[new][3] = (p[sheet] as usize * k + nb as usize) as i32;
            }
        }
    }
    Triangulation::from_parts(t.schlafli(), false, simplices)
}

/// Covers of the given degree with their homology, as a sorted multiset.
/// With `cyclic_only` set, only the cyclic covers (degrees 2..=6 supported
/// either way; degree 2 is all-cyclic anyway).
pub fn covers(
    t: &Triangulation,
    degree: usize,
    cyclic_only: bool,
) -> Result<Vec<CoverRecord>, InvariantError> {
    if !(2..=6).contains(&degree) {
        return Err(InvariantError::BadDegree(degree));
    }
    let spine = presentation_from_triangulation(t)?;
    let mut records = Vec::new();
    if cyclic_only {
        for phis in cyclic_quotients(&spine.presentation, degree) {
            let action = CosetAction {
                degree,
                perms: phis
                    .iter()
                    .map(|&v| {
                        (0..degree as u32)
                            .map(|x| (x + v) % degree as u32)
                            .collect()
                    })
                    .collect(),
            };
            records.push(cover_record(t, &spine, &action));
        }
    } else {
        let simplified = tietze_simplify(&spine.presentation);
        for simple_action in transitive_actions(&simplified.presentation, degree) {
            // pull the action back to the original generators
            let perms: Vec<Vec<u32>> = simplified
                .original_in_simplified
                .iter()
                .map(|w| simple_action.word_permutation(w))
                .collect();
            let action = CosetAction { degree, perms };
            records.push(cover_record(t, &spine, &action));
        }
    }
    records.sort();
    Ok(records)
}

fn cover_record(
    t: &Triangulation,
    spine: &SpinePresentation,
    action: &CosetAction,
) -> CoverRecord {
    let lifted = lift_triangulation(t, spine, action);
    debug_assert!(lifted.is_connected());
    let homology = first_homology(&lifted).expect("cover of a tessellation");
    let order = action.image_order();
    let cover_type = if order == action.degree {
        if action.is_cyclic_regular() {
            CoverType::Cyclic
        } else {
            CoverType::Regular
        }
    } else {
        CoverType::Irregular
    };
    CoverRecord {
        degree: action.degree,
        cover_type,
        homology,
    }
}

/// Escalation rule: when the base profile has this homology and empty
/// degree-2 and degree-3 cover sets, append the given cover data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscalationRule {
    pub h1: AbelianGroup,
    pub degree: usize,
    pub cyclic_only: bool,
}

/// The two escalations used by the census: homology (Z/5)^3 with empty
/// C2, C3 adds degree-5 cyclic covers; homology Z/29 adds all degree-6
/// covers. Further collisions can be resolved with user-supplied rules.
pub fn default_escalation_rules() -> Vec<EscalationRule> {
    vec![
        EscalationRule {
            h1: AbelianGroup::from_parts(0, &[5, 5, 5]),
            degree: 5,
            cyclic_only: true,
        },
        EscalationRule {
            h1: AbelianGroup::from_parts(0, &[29]),
            degree: 6,
            cyclic_only: false,
        },
    ]
}

/// Invariant profile of a tessellation; equality is an equivalence coarser
/// than homeomorphism of the underlying manifold.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct InvariantProfile {
    pub orientable: bool,
    pub num_cusps: usize,
    pub h1: AbelianGroup,
    /// Cover multisets keyed by (degree, cyclic_only).
    pub covers: BTreeMap<(usize, bool), Vec<CoverRecord>>,
}

pub fn profile(
    t: &Triangulation,
    rules: &[EscalationRule],
) -> Result<InvariantProfile, InvariantError> {
    let h1 = first_homology(t)?;
    let c2 = covers(t, 2, false)?;
    let c3 = covers(t, 3, false)?;
    let mut cover_map = BTreeMap::new();
    let escalate = c2.is_empty() && c3.is_empty();
    cover_map.insert((2, false), c2);
    cover_map.insert((3, false), c3);
    if escalate {
        for rule in rules {
            if rule.h1 == h1 {
                cover_map.insert(
                    (rule.degree, rule.cyclic_only),
                    covers(t, rule.degree, rule.cyclic_only)?,
                );
            }
        }
    }
    Ok(InvariantProfile {
        orientable: t.is_orientable(),
        num_cusps: if t.schlafli().is_cusped() {
            num_cusps(t)
        } else {
            0
        },
        h1,
        covers: cover_map,
    })
}

/// Groups signatures by profile equality. Returns the partition as index
/// sets into the input, each sorted, ordered by first member.
pub fn group_by_profile(
    sigs: &[SpecializedIsoSig],
    rules: &[EscalationRule],
) -> Result<Vec<Vec<usize>>, InvariantError> {
    let mut groups: Vec<(InvariantProfile, Vec<usize>)> = Vec::new();
    for (i, sig) in sigs.iter().enumerate() {
        let t = crate::canonical::triangulation_from_sig(sig);
        let p = profile(&t, rules)?;
        match groups.iter_mut().find(|(q, _)| *q == p) {
            Some((_, members)) => members.push(i),
            None => groups.push((p, vec![i])),
        }
    }
    Ok(groups.into_iter().map(|(_, m)| m).collect())
}

/// Profile report line: signature, orientability, cusp count, homology and
/// cover summary.
pub fn profile_report_line(sig: &SpecializedIsoSig, p: &InvariantProfile) -> String {
    let mut cover_parts = Vec::new();
    for ((degree, cyclic), records) in &p.covers {
        let tag = if *cyclic {
            format!("c{degree}cyc")
        } else {
            format!("c{degree}")
        };
        let entries: Vec<String> = records
            .iter()
            .map(|r| {
                let ty = match r.cover_type {
                    CoverType::Cyclic => "cyc",
                    CoverType::Regular => "reg",
                    CoverType::Irregular => "irr",
                };
                format!("{ty}/{}", r.homology.compact())
            })
            .collect();
        cover_parts.push(format!("{tag}=[{}]", entries.join(" ")));
    }
    format!(
        "{} {} {} {} {}",
        sig,
        if p.orientable { "orientable" } else { "non-orientable" },
        p.num_cusps,
        p.h1.compact(),
        cover_parts.join(" ")
    )
}

pub use crate::canonical::triangulation_from_sig;

/// Homology must be invariant under dualizing (same manifold).
pub fn dual_homology_matches(t: &Triangulation) -> Result<bool, InvariantError> {
    let d = dual(t).map_err(|_| InvariantError::NotOrientable)?;
    Ok(first_homology(t)? == first_homology(&d)?)
}

/// Brute-force count of label-preserving simplicial automorphisms, used as
/// an oracle against the canonical-form count.
pub fn brute_force_automorphism_count(t: &Triangulation) -> usize {
    let k = t.len();
    let mut count = 0;
    'outer: for image0 in 0..k {
        // propagate simplex 0 -> image0 across all faces
        let mut map = vec![u32::MAX; k];
        map[0] = image0 as u32;
        let mut stack = vec![0usize];
        while let Some(s) = stack.pop() {
            for f in 0..4 {
                let nb = t.neighbor(s, f);
                let inb = t.neighbor(map[s] as usize, f);
                if nb == UNGLUED || inb == UNGLUED {
                    if nb != inb {
                        continue 'outer;
                    }
                    continue;
                }
                let (nb, inb) = (nb as usize, inb as usize);
                if map[nb] == u32::MAX {
                    map[nb] = inb as u32;
                    stack.push(nb);
                } else if map[nb] as usize != inb {
                    continue 'outer;
                }
            }
        }
        if map.iter().all(|&v| v != u32::MAX) {
            // bijectivity
            let mut seen = vec![false; k];
            if map.iter().all(|&v| {
                let fresh = !seen[v as usize];
                seen[v as usize] = true;
                fresh
            }) {
                count += 1;
            }
        }
    }
    count
}

/// The specialized signature must agree with itself after reconstruction.
pub fn sig_round_trips(sig: &SpecializedIsoSig) -> bool {
    let t = triangulation_from_sig(sig);
    specialized_iso_sig(&t).map(|s| s == *sig).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate, SearchConfig};
    use crate::schlafli::SchlafliType;

    fn census(p: u32, q: u32, r: u32, max: usize, orientable: bool) -> Vec<SpecializedIsoSig> {
        let cfg = SearchConfig::new(SchlafliType::new(p, q, r).unwrap(), max, orientable);
        enumerate(cfg).unwrap().sigs.into_iter().collect()
    }

    #[test]
    fn two_tet_census_has_a_homology_link() {
        let sigs = census(3, 3, 6, 2, true);
        assert_eq!(sigs.len(), 2);
        let links: Vec<bool> = sigs
            .iter()
            .map(|s| is_homology_link(&triangulation_from_sig(s)).unwrap())
            .collect();
        assert_eq!(links.iter().filter(|&&b| b).count(), 1);
        // the homology link is the figure-eight complement: H1 = Z
        for (sig, is_link) in sigs.iter().zip(&links) {
            let t = triangulation_from_sig(sig);
            let h = first_homology(&t).unwrap();
            if *is_link {
                assert_eq!(h, AbelianGroup::free(1));
            }
            assert_eq!(num_cusps(&t), 1);
        }
    }

    #[test]
    fn degree2_cover_count_matches_homology_formula() {
        for sig in census(3, 3, 6, 2, true) {
            let t = triangulation_from_sig(&sig);
            let h = first_homology(&t).unwrap();
            let c2 = covers(&t, 2, false).unwrap();
            assert_eq!(
                c2.len(),
                crate::cosets::index2_count_from_homology(&h),
                "{h}"
            );
            for r in &c2 {
                assert_eq!(r.cover_type, CoverType::Cyclic);
            }
        }
    }

    #[test]
    fn cover_size_is_degree_times_base() {
        let sigs = census(3, 3, 6, 2, true);
        let t = triangulation_from_sig(&sigs[0]);
        let spine = presentation_from_triangulation(&t).unwrap();
        let simplified = tietze_simplify(&spine.presentation);
        for action in transitive_actions(&simplified.presentation, 3) {
            let perms: Vec<Vec<u32>> = simplified
                .original_in_simplified
                .iter()
                .map(|w| action.word_permutation(w))
                .collect();
            let full = CosetAction { degree: 3, perms };
            let lifted = lift_triangulation(&t, &spine, &full);
            assert_eq!(lifted.len(), 3 * t.len());
            assert!(lifted.is_connected());
        }
    }

    #[test]
    fn homology_invariant_under_relabeling() {
        for sig in census(3, 4, 4, 1, true) {
            let t = triangulation_from_sig(&sig);
            let h = first_homology(&t).unwrap();
            // sig reconstruction uses the canonical labeling; compare with a
            // differently labeled copy found during enumeration
            let c = crate::canonical::canonical_reindex(&t, t.len() / 2).unwrap();
            let t2 = Triangulation::from_raw(t.schlafli(), false, c.simplices().to_vec()).unwrap();
            assert_eq!(h, first_homology(&t2).unwrap());
        }
    }

    #[test]
    fn bad_degree_rejected() {
        let sigs = census(3, 3, 6, 2, true);
        let t = triangulation_from_sig(&sigs[0]);
        assert!(covers(&t, 7, false).is_err());
        assert!(covers(&t, 1, true).is_err());
    }

    #[test]
    fn closed_input_rejected_for_homology_link() {
        let sigs = census(5, 3, 5, 1, true);
        let t = triangulation_from_sig(&sigs[0]);
        assert!(is_homology_link(&t).is_err());
    }
}
