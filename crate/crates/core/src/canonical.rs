//! Canonical reindexing, the specialized isomorphism signature, automorphism
//! reports, and duality.
//!
//! The canonical node ordering seeded at a start simplex walks the labeled
//! dual 1-skeleton: among all edges from ordered to unordered nodes, take
//! those of lowest face label, then the one at the lowest-indexed ordered
//! endpoint. Because labels 0, 1, 2 are preferred over 3, each solid is
//! exhausted before the next one is entered, and within a solid the
//! traversal always follows the same pattern up to the solid's symmetry.
//! The face-0/1/2 gluings of the reindexed triangulation are therefore a
//! fixed constant, and the face-3 neighbor tuple alone, minimized over all
//! start simplices, is a complete invariant of the combinatorial
//! isomorphism type.

use std::fmt;

use thiserror::Error;

use crate::schlafli::SchlafliType;
use crate::trig::{Triangulation, UNGLUED};

#[derive(Debug, Error)]
pub enum CanonicalError {
    #[error("triangulation is disconnected")]
    Disconnected,
    #[error("start simplex {0} out of range (have {1})")]
    BadStart(usize, usize),
    #[error("operation requires a fully glued triangulation")]
    PartialTriangulation,
    #[error("dual of a {0} tessellation has type {{{1},{2},{3}}}, not a census type")]
    NonSelfDualType(SchlafliType, u32, u32, u32),
    #[error("empty triangulation")]
    Empty,
    #[error("input is not the barycentric subdivision of a tessellation: {0}")]
    NotATessellation(String),
}

/// Signature parse failure, with the byte offset of the offending part.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("signature parse error at byte {pos}: {msg}")]
pub struct SigParseError {
    pub pos: usize,
    pub msg: String,
}

/// The canonical integer tuple identifying a tessellation up to
/// combinatorial isomorphism: the face-3 neighbors of the lexicographically
/// first canonical reindexing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpecializedIsoSig {
    schlafli: SchlafliType,
    entries: Box<[i32]>,
}

impl SpecializedIsoSig {
    pub fn schlafli(&self) -> SchlafliType {
        self.schlafli
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn num_solids(&self) -> usize {
        self.entries.len() / self.schlafli.simplices_per_solid()
    }

    /// Approximate heap footprint, used for the seen-set memory budget.
    pub fn approx_bytes(&self) -> usize {
        self.entries.len() * 4 + 24
    }

    /// `ptsig1:<p>,<q>,<r>:<k>:<e0>,...,<e_{k-1}>`, no spaces.
    pub fn parse(s: &str) -> Result<SpecializedIsoSig, SigParseError> {
        let err = |pos: usize, msg: &str| SigParseError {
            pos,
            msg: msg.to_string(),
        };
        let rest = s
            .strip_prefix("ptsig1:")
            .ok_or_else(|| err(0, "expected `ptsig1:` prefix"))?;
        let mut sections = rest.splitn(3, ':');
        let type_part = sections.next().unwrap();
        let type_pos = 7;
        let nums: Vec<&str> = type_part.split(',').collect();
        if nums.len() != 3 {
            return Err(err(type_pos, "expected `p,q,r`"));
        }
        let mut pqr = [0u32; 3];
        for (i, n) in nums.iter().enumerate() {
            pqr[i] = n
                .parse()
                .map_err(|_| err(type_pos, "bad Schläfli number"))?;
        }
        let schlafli = SchlafliType::new(pqr[0], pqr[1], pqr[2])
            .map_err(|e| err(type_pos, &e.to_string()))?;
        let k_part = sections
            .next()
            .ok_or_else(|| err(s.len(), "missing simplex count"))?;
        let k_pos = type_pos + type_part.len() + 1;
        let k: usize = k_part.parse().map_err(|_| err(k_pos, "bad simplex count"))?;
        let n = schlafli.simplices_per_solid();
        if k == 0 || k % n != 0 {
            return Err(err(
                k_pos,
                &format!("length {k} is not a positive multiple of the solid size {n}"),
            ));
        }
        let entries_part = sections
            .next()
            .ok_or_else(|| err(s.len(), "missing entries"))?;
        let entries_pos = k_pos + k_part.len() + 1;
        let mut entries = Vec::with_capacity(k);
        let mut pos = entries_pos;
        for part in entries_part.split(',') {
            let e: i32 = part.parse().map_err(|_| err(pos, "bad entry"))?;
            if e < -1 || e as i64 >= k as i64 {
                return Err(err(pos, &format!("entry {e} out of range")));
            }
            entries.push(e);
            pos += part.len() + 1;
        }
        if entries.len() != k {
            return Err(err(
                entries_pos,
                &format!("expected {k} entries, found {}", entries.len()),
            ));
        }
        Ok(SpecializedIsoSig {
            schlafli,
            entries: entries.into_boxed_slice(),
        })
    }
}

impl fmt::Display for SpecializedIsoSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.schlafli;
        write!(f, "ptsig1:{},{},{}:{}:", s.p(), s.q(), s.r(), self.entries.len())?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SpecializedIsoSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical node order seeded at `start`, over all four labels. Returns
/// position -> simplex, or None if not every simplex is reachable.
fn reindex_order(t: &Triangulation, start: usize) -> Option<Vec<u32>> {
    let k = t.len();
    let mut order = Vec::with_capacity(k);
    let mut rank = vec![u32::MAX; k];
    order.push(start as u32);
    rank[start] = 0;
    let mut cursor = [0usize; 4];
    while order.len() < k {
        let mut appended = false;
        for label in 0..4 {
            let c = &mut cursor[label];
            while *c < order.len() {
                let nb = t.neighbor(order[*c] as usize, label);
                if nb != UNGLUED && rank[nb as usize] == u32::MAX {
                    rank[nb as usize] = order.len() as u32;
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
        if !appended {
            return None;
        }
    }
    Some(order)
}

/// Relabels `t` by the canonical ordering seeded at `start`.
///
/// The result's face-0/1/2 gluings depend only on the solid, not on `t` or
/// `start`; its parity pattern is not the template one, so orientable mode
/// is dropped on the output.
pub fn canonical_reindex(
    t: &Triangulation,
    start: usize,
) -> Result<Triangulation, CanonicalError> {
    if start >= t.len() {
        return Err(CanonicalError::BadStart(start, t.len()));
    }
    let order = reindex_order(t, start).ok_or(CanonicalError::Disconnected)?;
    let mut rank = vec![0u32; t.len()];
    for (pos, &old) in order.iter().enumerate() {
        rank[old as usize] = pos as u32;
    }
    let simplices = order
        .iter()
        .map(|&old| {
            let mut q = [UNGLUED; 4];
            for (i, slot) in q.iter_mut().enumerate() {
                let nb = t.neighbor(old as usize, i);
                if nb != UNGLUED {
                    *slot = rank[nb as usize] as i32;
                }
            }
            q
        })
        .collect();
    Ok(Triangulation::from_parts(t.schlafli(), false, simplices))
}

/// Per-start signature tuples via the precomputed solid traversal tables.
/// Requires template-aligned input.
///
/// A start determines the canonical order block by block: whole solids are
/// placed at once through their traversal row, and the next solid is always
/// entered through the lowest-ranked simplex whose label-3 partner is still
/// unplaced. Tuple entries are therefore computable on the fly from the
/// slot and entering flag of each placed block, and a candidate start can
/// be compared against the current best tuple entry by entry, aborting at
/// the first entry that is larger.
struct FastSig<'a> {
    t: &'a Triangulation,
    n: usize,
    num_blocks: usize,
    /// old block id -> slot in the new order, or MAX
    slot_of_block: Vec<u32>,
    /// slot -> old block id
    block_of_slot: Vec<u32>,
    /// slot -> local flag the block was entered through
    seed_of_slot: Vec<u32>,
    /// face-3 gluedness per old block, one bit per local flag
    flag_glued: Vec<u128>,
    /// glued local flags per old block
    glued_flags: Vec<Vec<u16>>,
}

#[derive(PartialEq, Eq)]
enum StartOutcome {
    Worse,
    TiesBest,
    NewBest,
    Disconnected,
}

impl<'a> FastSig<'a> {
    fn new(t: &'a Triangulation) -> Self {
        let n = t.schlafli().simplices_per_solid();
        debug_assert!(n <= 128);
        let num_blocks = t.len() / n;
        let mut flag_glued = vec![0u128; num_blocks];
        let mut glued_flags = vec![Vec::new(); num_blocks];
        for (s, q) in t.simplices().iter().enumerate() {
            if q[3] != UNGLUED {
                flag_glued[s / n] |= 1u128 << (s % n);
                glued_flags[s / n].push((s % n) as u16);
            }
        }
        FastSig {
            t,
            n,
            num_blocks,
            slot_of_block: vec![u32::MAX; num_blocks],
            block_of_slot: vec![u32::MAX; num_blocks],
            seed_of_slot: vec![u32::MAX; num_blocks],
            flag_glued,
            glued_flags,
        }
    }

    /// Key of the tuple's earliest glued entry when a block is entered at
    /// `seed`: the traversal position of the first glued face-3 entry (or
    /// `n` if the block has none) and the entry value there. The minimal
    /// tuple maximizes the run of leading -1 entries and then minimizes the
    /// first glued value, so only starts attaining the best key can win;
    /// this prunes almost every start without a full comparison.
    fn start_key(&self, block: usize, seed: usize) -> (u32, i32) {
        let tmpl = self.t.template();
        let glued = &self.glued_flags[block];
        if glued.is_empty() {
            return (self.n as u32, -2);
        }
        let inv = tmpl.inv_order_row(seed);
        let (pos, flag) = if glued.len() <= 16 {
            glued
                .iter()
                .map(|&x| (inv[x as usize], x))
                .min()
                .unwrap()
        } else {
            let row = tmpl.order_row(seed);
            let mask = self.flag_glued[block];
            let mut found = None;
            for (j, &f) in row.iter().enumerate() {
                if mask >> f & 1 == 1 {
                    found = Some((j as u32, f as u16));
                    break;
                }
            }
            found.unwrap()
        };
        // value of the entry at that position: rank of the face-3 partner,
        // which is an in-block traversal position or exactly n (the partner
        // seeds the second block)
        let partner = self.t.neighbor(block * self.n + flag as usize, 3) as usize;
        let value = if partner / self.n == block {
            inv[partner % self.n] as i32
        } else {
            self.n as i32
        };
        (pos, value)
    }

    /// Runs one start against `best` (the tuple of the best start so far).
    /// On `NewBest` the buffer is overwritten with this start's tuple.
    fn run_start(&mut self, start: usize, best: &mut [i32], have_best: bool) -> StartOutcome {
        let t = self.t;
        let tmpl = t.template();
        let n = self.n;
        let k = t.len();
        for b in 0..self.num_blocks {
            self.slot_of_block[b] = u32::MAX;
        }
        self.slot_of_block[start / n] = 0;
        self.block_of_slot[0] = (start / n) as u32;
        self.seed_of_slot[0] = (start % n) as u32;
        let mut placed = 1usize;
        let mut recording = !have_best;

        let mut row = tmpl.order_row(start % n);
        let mut row_slot = 0usize;
        for r in 0..k {
            let slot = r / n;
            if slot >= placed {
                return StartOutcome::Disconnected;
            }
            if slot != row_slot {
                row = tmpl.order_row(self.seed_of_slot[slot] as usize);
                row_slot = slot;
            }
            let old = self.block_of_slot[slot] as usize * n + row[r - slot * n] as usize;
            let partner = t.neighbor(old, 3);
            let entry = if partner == UNGLUED {
                UNGLUED
            } else {
                let pb = partner as usize / n;
                let ps = self.slot_of_block[pb];
                if ps != u32::MAX {
                    (ps as usize * n
                        + tmpl.inv_order_row(self.seed_of_slot[ps as usize] as usize)
                            [partner as usize % n] as usize) as i32
                } else {
                    // the scan reached the lowest rank with an unplaced
                    // partner: that partner seeds the next block
                    let slot_new = placed;
                    self.slot_of_block[pb] = slot_new as u32;
                    self.block_of_slot[slot_new] = pb as u32;
                    self.seed_of_slot[slot_new] = (partner as usize % n) as u32;
                    placed += 1;
                    (slot_new * n) as i32
                }
            };
            if recording {
                best[r] = entry;
            } else {
                match entry.cmp(&best[r]) {
                    std::cmp::Ordering::Less => {
                        recording = true;
                        best[r] = entry;
                    }
                    std::cmp::Ordering::Greater => return StartOutcome::Worse,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        if placed < self.num_blocks {
            return StartOutcome::Disconnected;
        }
        if recording {
            StartOutcome::NewBest
        } else {
            StartOutcome::TiesBest
        }
    }
}

fn sig_with_witnesses(
    t: &Triangulation,
) -> Result<(SpecializedIsoSig, Vec<usize>), CanonicalError> {
    if t.is_empty() {
        return Err(CanonicalError::Empty);
    }
    let k = t.len();
    let mut best: Option<Vec<i32>> = None;
    let mut witnesses = Vec::new();
    if t.is_template_aligned() {
        let mut fast = FastSig::new(t);
        let n = fast.n;
        // only starts whose block traversal has the longest -1 prefix and
        // then the smallest first glued entry can win
        let mut keys = vec![(0u32, 0i32); k];
        let mut best_key = (0u32, i32::MAX);
        for block in 0..fast.num_blocks {
            for seed in 0..n {
                let key = fast.start_key(block, seed);
                keys[block * n + seed] = key;
                if key.0 > best_key.0 || (key.0 == best_key.0 && key.1 < best_key.1) {
                    best_key = key;
                }
            }
        }
        let mut buf = vec![0i32; k];
        let mut have_best = false;
        for start in 0..k {
            if keys[start] != best_key {
                continue;
            }
            match fast.run_start(start, &mut buf, have_best) {
                StartOutcome::Disconnected => return Err(CanonicalError::Disconnected),
                StartOutcome::Worse => {}
                StartOutcome::TiesBest => witnesses.push(start),
                StartOutcome::NewBest => {
                    have_best = true;
                    witnesses.clear();
                    witnesses.push(start);
                }
            }
        }
        best = Some(buf);
    } else {
        for start in 0..k {
            let order = reindex_order(t, start).ok_or(CanonicalError::Disconnected)?;
            let mut rank = vec![0u32; k];
            for (pos, &old) in order.iter().enumerate() {
                rank[old as usize] = pos as u32;
            }
            let tuple: Vec<i32> = order
                .iter()
                .map(|&old| {
                    let nb = t.neighbor(old as usize, 3);
                    if nb == UNGLUED {
                        UNGLUED
                    } else {
                        rank[nb as usize] as i32
                    }
                })
                .collect();
            match &best {
                Some(b) => match tuple.cmp(b) {
                    std::cmp::Ordering::Less => {
                        best = Some(tuple);
                        witnesses.clear();
                        witnesses.push(start);
                    }
                    std::cmp::Ordering::Equal => witnesses.push(start),
                    std::cmp::Ordering::Greater => {}
                },
                None => {
                    best = Some(tuple);
                    witnesses.push(start);
                }
            }
        }
    }
    let sig = SpecializedIsoSig {
        schlafli: t.schlafli(),
        entries: best.unwrap().into_boxed_slice(),
    };
    Ok((sig, witnesses))
}

/// The specialized isomorphism signature: the minimum over all start
/// simplices of the face-3 tuple of the canonical reindexing.
pub fn specialized_iso_sig(t: &Triangulation) -> Result<SpecializedIsoSig, CanonicalError> {
    sig_with_witnesses(t).map(|(sig, _)| sig)
}

/// Automorphism data of a fully glued tessellation, read off from the set
/// of start simplices that reproduce the minimal signature tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismReport {
    /// Number of combinatorial automorphisms (they act freely on flags).
    pub order: usize,
    /// Whether some automorphism reverses orientation; None when the
    /// tessellation is non-orientable.
    pub orientation_reversing_exists: Option<bool>,
    /// The automorphism group is transitive on all flags.
    pub flag_transitive: bool,
    /// The orientation-preserving subgroup is transitive on the flags of one
    /// handedness (the regularity notion for orientable tessellations).
    pub flag_transitive_oriented: bool,
}

/// 2-coloring of the dual graph, or None if non-orientable. The
/// triangulation must be connected for the coloring to be canonical up to a
/// global flip.
fn orientation_coloring(t: &Triangulation) -> Option<Vec<i8>> {
    let k = t.len();
    let mut color = vec![-1i8; k];
    for start in 0..k {
        if color[start] >= 0 {
            continue;
        }
        color[start] = 0;
        let mut stack = vec![start];
        while let Some(s) = stack.pop() {
            for face in 0..4 {
                let nb = t.neighbor(s, face);
                if nb == UNGLUED {
                    continue;
                }
                let nb = nb as usize;
                if color[nb] < 0 {
                    color[nb] = 1 - color[s];
                    stack.push(nb);
                } else if color[nb] == color[s] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

pub fn automorphisms(t: &Triangulation) -> Result<AutomorphismReport, CanonicalError> {
    if t.has_open_faces() {
        return Err(CanonicalError::PartialTriangulation);
    }
    let (_, witnesses) = sig_with_witnesses(t)?;
    let k = t.len();
    let order = witnesses.len();
    let coloring = orientation_coloring(t);
    let (orientation_reversing_exists, flag_transitive_oriented) = match coloring {
        Some(color) => {
            let c0 = color[witnesses[0]];
            let same = witnesses.iter().filter(|&&w| color[w] == c0).count();
            (Some(same != order), same == k / 2)
        }
        None => (None, false),
    };
    Ok(AutomorphismReport {
        order,
        orientation_reversing_exists,
        flag_transitive: order == k,
        flag_transitive_oriented,
    })
}

/// Rebuilds a triangulation from its signature: the face-0/1/2 gluings of
/// the canonical form are the fixed traversal pattern of the solid, so the
/// face-3 tuple is all that is needed.
pub fn triangulation_from_sig(sig: &SpecializedIsoSig) -> Triangulation {
    let schlafli = sig.schlafli();
    let tmpl = crate::solid::solid_template(schlafli.p(), schlafli.q());
    let n = tmpl.size;
    let k = sig.len();
    let row = tmpl.order_row(0);
    let inv = tmpl.inv_order_row(0);
    let mut simplices = vec![[UNGLUED; 4]; k];
    for base in (0..k).step_by(n) {
        for pos in 0..n {
            for i in 0..3 {
                let nb = inv[tmpl.adj[i][row[pos] as usize] as usize] as usize;
                simplices[base + pos][i] = (base + nb) as i32;
            }
        }
    }
    for (s, &e) in sig.entries().iter().enumerate() {
        simplices[s][3] = e;
    }
    Triangulation::from_raw(schlafli, false, simplices)
        .expect("signature encodes a valid triangulation")
}

/// The dual tessellation of a `{3,5,3}` or `{5,3,5}` tessellation: vertex
/// roles 0 and 3 and roles 1 and 2 swap, so each quadruple is reversed; the
/// result is relabeled back onto the solid template.
pub fn dual(t: &Triangulation) -> Result<Triangulation, CanonicalError> {
    if t.has_open_faces() {
        return Err(CanonicalError::PartialTriangulation);
    }
    let s = t.schlafli();
    if !s.is_self_dual_type() {
        let (p, q, r) = s.reversed();
        return Err(CanonicalError::NonSelfDualType(s, p, q, r));
    }
    let reversed: Vec<[i32; 4]> = t
        .simplices()
        .iter()
        .map(|q| [q[3], q[2], q[1], q[0]])
        .collect();
    Triangulation::from_raw(s, false, reversed)
        .map_err(|e| CanonicalError::NotATessellation(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schlafli::SchlafliType;

    fn schlafli(p: u32, q: u32, r: u32) -> SchlafliType {
        SchlafliType::new(p, q, r).unwrap()
    }

    fn single_solid(p: u32, q: u32, r: u32) -> Triangulation {
        let mut t = Triangulation::new(schlafli(p, q, r), false);
        t.add_platonic_solid(p, q).unwrap();
        t
    }

    #[test]
    fn bare_solid_sig_all_unglued() {
        let t = single_solid(3, 3, 6);
        let sig = specialized_iso_sig(&t).unwrap();
        assert_eq!(sig.len(), 24);
        assert!(sig.entries().iter().all(|&e| e == UNGLUED));
    }

    /// All 24 starts on a bare tetrahedral solid give the same reindexed
    /// triangulation: the solid symmetry merges them.
    #[test]
    fn bare_solid_reindex_start_independent() {
        let t = single_solid(3, 3, 6);
        let base = canonical_reindex(&t, 0).unwrap();
        for start in 1..24 {
            let other = canonical_reindex(&t, start).unwrap();
            assert_eq!(base.simplices(), other.simplices(), "start {start}");
        }
    }

    /// Relabel-equivalent triangulations reindexed from corresponding
    /// starts give identical outputs.
    #[test]
    fn reindex_relabel_determinism() {
        let mut t = single_solid(3, 3, 6);
        t.add_platonic_solid(3, 3).unwrap();
        assert!(t.glue_faces(1, 24, 3));
        let k = t.len();
        let perm: Vec<usize> = (0..k).map(|s| (s * 11 + 3) % k).collect();
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
        let relabeled = Triangulation::from_parts(t.schlafli(), false, raw);
        for start in [0usize, 7, 30] {
            let a = canonical_reindex(&t, start).unwrap();
            let b = canonical_reindex(&relabeled, perm[start]).unwrap();
            assert_eq!(a.simplices(), b.simplices(), "start {start}");
        }
    }

    #[test]
    fn reindex_of_canonical_is_identity() {
        let mut t = single_solid(3, 3, 6);
        t.add_platonic_solid(3, 3).unwrap();
        assert!(t.glue_faces(1, 24, 3));
        let c = canonical_reindex(&t, 0).unwrap();
        let cc = canonical_reindex(&c, 0).unwrap();
        assert_eq!(c.simplices(), cc.simplices());
    }

    /// Fast (template-table) and generic signature paths agree.
    #[test]
    fn fast_matches_generic() {
        let mut t = single_solid(4, 3, 6);
        t.add_platonic_solid(4, 3).unwrap();
        assert!(t.glue_faces(1, 48, 4));
        // find any second legal gluing
        'outer: for s0 in 0..t.len() {
            for s1 in 0..t.len() {
                if t.neighbor(s0, 3) == UNGLUED && t.neighbor(s1, 3) == UNGLUED {
                    let mut copy = t.clone();
                    if copy.glue_faces(s0, s1, 4) {
                        t = copy;
                        break 'outer;
                    }
                }
            }
        }
        assert!(t.is_template_aligned());
        let fast = specialized_iso_sig(&t).unwrap();

        // scramble the labels so the generic path runs
        let k = t.len();
        let perm: Vec<usize> = (0..k).map(|s| (s * 37 + 11) % k).collect();
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
        let scrambled = Triangulation::from_parts(t.schlafli(), false, raw);
        assert!(!scrambled.is_template_aligned());
        let generic = specialized_iso_sig(&scrambled).unwrap();
        assert_eq!(fast, generic);
    }

    #[test]
    fn sig_string_round_trip() {
        let t = single_solid(3, 3, 6);
        let sig = specialized_iso_sig(&t).unwrap();
        let s = sig.to_string();
        assert!(s.starts_with("ptsig1:3,3,6:24:-1,"));
        assert_eq!(SpecializedIsoSig::parse(&s).unwrap(), sig);
    }

    #[test]
    fn sig_parse_errors() {
        assert!(SpecializedIsoSig::parse("nonsense").is_err());
        // 23 entries: not a multiple of 24
        let bad = format!("ptsig1:3,3,6:23:{}", vec!["-1"; 23].join(","));
        let err = SpecializedIsoSig::parse(&bad).unwrap_err();
        assert!(err.msg.contains("multiple"), "{err}");
        // entry out of range
        let bad = format!("ptsig1:3,3,6:24:{}", vec!["99"; 24].join(","));
        assert!(SpecializedIsoSig::parse(&bad).is_err());
    }

    #[test]
    fn bare_solid_automorphisms_rejected() {
        let t = single_solid(3, 3, 6);
        assert!(automorphisms(&t).is_err());
    }

    #[test]
    fn dual_requires_self_dual_type() {
        let t = single_solid(4, 3, 6);
        match dual(&t) {
            Err(CanonicalError::PartialTriangulation) => {}
            other => panic!("expected partial rejection, got {other:?}"),
        }
    }
}
