//! The recursive, deduplicated, parallel search producing all Platonic
//! tessellations of a given type up to a solid bound.
//!
//! The search starts with a single solid and at each level picks one open
//! polygon face and tries gluing it to a fresh solid or to every admissible
//! existing face in every alignment. Edges that already have full order are
//! closed up eagerly by [`fix_edges`], and branches whose specialized
//! isomorphism signature has been seen before are skipped; the seen-set
//! test-and-insert is one atomic step, so the result set is identical for
//! every thread count.
//!
//! In orientable mode the parity convention restricts gluings to
//! odd-to-even simplex pairs, which forces a consistent orientation. A
//! non-orientable run searches without the parity restriction and keeps
//! only the non-orientable results.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use thiserror::Error;

use crate::canonical::{dual, specialized_iso_sig, SpecializedIsoSig};
use crate::pool;
use crate::schlafli::SchlafliType;
use crate::trig::{Triangulation, UNGLUED};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("memory budget exceeded after {nodes} nodes, {seen_entries} seen signatures (~{seen_bytes} bytes)")]
    BudgetExceeded {
        nodes: u64,
        seen_entries: usize,
        seen_bytes: usize,
    },
    #[error("enumerate_parallel requires threads >= 2, got {0}")]
    NotParallel(usize),
    #[error("threads must be >= 1")]
    NoThreads,
    #[error("max_solids must be >= 1")]
    NoSolids,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub schlafli: SchlafliType,
    pub max_solids: usize,
    pub orientable: bool,
    pub threads: usize,
    /// Rough cap on seen-set bytes; the search aborts when exceeded.
    pub memory_budget: Option<usize>,
}

impl SearchConfig {
    pub fn new(schlafli: SchlafliType, max_solids: usize, orientable: bool) -> Self {
        SearchConfig {
            schlafli,
            max_solids,
            orientable,
            threads: 1,
            memory_budget: None,
        }
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchStats {
    /// Signatures admitted to the seen-set (search tree nodes).
    pub nodes: u64,
    pub peak_seen_entries: usize,
    pub seen_bytes: usize,
}

#[derive(Debug)]
pub struct CensusResult {
    pub schlafli: SchlafliType,
    pub max_solids: usize,
    pub orientable: bool,
    pub sigs: BTreeSet<SpecializedIsoSig>,
    pub stats: SearchStats,
}

impl CensusResult {
    /// Result counts keyed by solid count.
    pub fn tally(&self) -> BTreeMap<usize, usize> {
        let mut map = BTreeMap::new();
        for sig in &self.sigs {
            *map.entry(sig.num_solids()).or_insert(0) += 1;
        }
        map
    }

    pub fn count_at(&self, solids: usize) -> usize {
        self.sigs.iter().filter(|s| s.num_solids() == solids).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixVerdict {
    Valid,
    Invalid,
}

/// Closes every open 01-edge that already has full order `2r` by gluing its
/// two boundary simplices, then checks that every closed 01-edge has order
/// exactly `2r`, every open one less, and that no closed label-1 vertex
/// link is a projective plane. The triangulation is modified in place and
/// not rolled back on an invalid verdict; callers branch on copies.
pub fn fix_edges(t: &mut Triangulation, p: u32, r: u32) -> FixVerdict {
    let full = 2 * r as usize;
    loop {
        let (class, count) = t.edge01_classes();
        let mut size = vec![0usize; count];
        for s in 0..t.len() {
            size[class[s] as usize] += 1;
        }
        // two open boundary simplices per open class
        let mut ends: Vec<[i32; 2]> = vec![[UNGLUED; 2]; count];
        for s in 0..t.len() {
            if t.neighbor(s, 3) == UNGLUED {
                let e = &mut ends[class[s] as usize];
                if e[0] == UNGLUED {
                    e[0] = s as i32;
                } else {
                    debug_assert_eq!(e[1], UNGLUED);
                    e[1] = s as i32;
                }
            }
        }
        let target = (0..count).find(|&c| size[c] == full && ends[c][0] != UNGLUED);
        match target {
            None => break,
            Some(c) => {
                debug_assert_ne!(ends[c][1], UNGLUED, "open 01-edge with one boundary simplex");
                if !t.glue_faces(ends[c][0] as usize, ends[c][1] as usize, p) {
                    return FixVerdict::Invalid;
                }
            }
        }
    }

    let (class, count) = t.edge01_classes();
    let mut size = vec![0usize; count];
    let mut open = vec![false; count];
    for s in 0..t.len() {
        size[class[s] as usize] += 1;
        if t.neighbor(s, 3) == UNGLUED {
            open[class[s] as usize] = true;
        }
    }
    for c in 0..count {
        let ok = if open[c] { size[c] < full } else { size[c] == full };
        if !ok {
            return FixVerdict::Invalid;
        }
    }

    if t.has_projective_label1_link() {
        return FixVerdict::Invalid;
    }
    FixVerdict::Valid
}

const SEEN_SHARDS: usize = 64;

/// Insert-only set of signature tuples; membership test and insert are one
/// atomic step per signature. Entries are stored as fixed-width 16-bit
/// tuples since the seen-set dominates the search's memory use.
struct SeenSet {
    shards: Vec<Mutex<HashSet<Box<[i16]>>>>,
    entries: AtomicUsize,
    bytes: AtomicUsize,
}

impl SeenSet {
    fn new() -> Self {
        SeenSet {
            shards: (0..SEEN_SHARDS).map(|_| Mutex::new(HashSet::new())).collect(),
            entries: AtomicUsize::new(0),
            bytes: AtomicUsize::new(0),
        }
    }

    /// True if the signature was new.
    fn insert(&self, sig: &SpecializedIsoSig) -> bool {
        debug_assert!(sig.len() < i16::MAX as usize);
        let key: Vec<i16> = sig.entries().iter().map(|&e| e as i16).collect();
        let mut h = DefaultHasher::new();
        key.hash(&mut h);
        let shard = (h.finish() as usize) % SEEN_SHARDS;
        let mut set = self.shards[shard].lock().unwrap();
        if set.contains(key.as_slice()) {
            return false;
        }
        self.bytes
            .fetch_add(key.len() * 2 + 48, Ordering::Relaxed);
        set.insert(key.into_boxed_slice());
        self.entries.fetch_add(1, Ordering::Relaxed);
        true
    }
}

struct Search {
    cfg: SearchConfig,
    seen: SeenSet,
    results: Mutex<BTreeSet<SpecializedIsoSig>>,
    nodes: AtomicU64,
    budget_hit: AtomicBool,
}

impl Search {
    /// Filters applied to a fully glued candidate before it is recorded.
    fn admit(&self, t: &Triangulation) -> bool {
        if self.cfg.schlafli.is_closed() {
            // finite vertices need sphere links; the search guarantees this
            // for labels 1-3 but not for label 0
            if !t.vertex_links_for_label(0).iter().all(|l| l.is_sphere()) {
                return false;
            }
        }
        if self.cfg.orientable {
            debug_assert!(t.is_orientable());
            true
        } else {
            !t.is_orientable()
        }
    }

    /// Census entry for a finished tessellation. For the self-dual types the
    /// census counts dual pairs once, keyed by the smaller signature.
    fn representative(&self, t: &Triangulation, sig: SpecializedIsoSig) -> SpecializedIsoSig {
        if !self.cfg.schlafli.is_self_dual_type() {
            return sig;
        }
        let d = dual(t).expect("census tessellations dualize");
        let dsig = specialized_iso_sig(&d).expect("dual signature");
        sig.min(dsig)
    }

    fn over_budget(&self) -> bool {
        match self.cfg.memory_budget {
            Some(limit) => self.seen.bytes.load(Ordering::Relaxed) > limit,
            None => false,
        }
    }

    fn recursive_find(&self, mut t: Triangulation, pool: Option<&pool::Pool<Triangulation>>) {
        if self.budget_hit.load(Ordering::Relaxed) {
            return;
        }
        let (p, q, r) = (
            self.cfg.schlafli.p(),
            self.cfg.schlafli.q(),
            self.cfg.schlafli.r(),
        );
        if fix_edges(&mut t, p, r) == FixVerdict::Invalid {
            return;
        }
        let sig = specialized_iso_sig(&t).expect("search triangulations are connected");
        if !self.seen.insert(&sig) {
            return;
        }
        self.nodes.fetch_add(1, Ordering::Relaxed);
        if self.over_budget() {
            self.budget_hit.store(true, Ordering::Relaxed);
            return;
        }

        if !t.has_open_faces() {
            if self.admit(&t) {
                let rep = self.representative(&t, sig);
                self.results.lock().unwrap().insert(rep);
            }
            return;
        }

        // pick an open simplex with odd index whose 01-edge has order as
        // high as possible; ties to the lowest index
        let (class, count) = t.edge01_classes();
        let mut size = vec![0usize; count];
        for s in 0..t.len() {
            size[class[s] as usize] += 1;
        }
        let simp0 = (1..t.len())
            .step_by(2)
            .filter(|&s| t.neighbor(s, 3) == UNGLUED)
            .max_by_key(|&s| (size[class[s] as usize], std::cmp::Reverse(s)))
            .expect("open faces always contain odd-index simplices");

        let mut children = Vec::new();
        if t.num_solids() < self.cfg.max_solids {
            let mut t1 = t.clone();
            let simp1 = t1.add_platonic_solid(p, q).unwrap();
            let ok = t1.glue_faces(simp0, simp1, p);
            debug_assert!(ok);
            children.push(t1);
        }
        for simp1 in 0..t.len() {
            if self.cfg.orientable && simp1 % 2 != 0 {
                continue;
            }
            if t.neighbor(simp1, 3) != UNGLUED {
                continue;
            }
            if !t.glue_faces_check(simp0, simp1, p) {
                continue;
            }
            let mut t1 = t.clone();
            let ok = t1.glue_faces(simp0, simp1, p);
            debug_assert!(ok);
            children.push(t1);
        }

        for child in children {
            match pool {
                Some(pl) => {
                    if let Some(c) = pl.offer(child) {
                        self.recursive_find(c, pool);
                    }
                }
                None => self.recursive_find(child, None),
            }
        }
    }

    fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes.load(Ordering::Relaxed),
            peak_seen_entries: self.seen.entries.load(Ordering::Relaxed),
            seen_bytes: self.seen.bytes.load(Ordering::Relaxed),
        }
    }
}

/// Enumerates all tessellations of the configured type with at most
/// `max_solids` solids, orientable or non-orientable per the flag.
pub fn enumerate(cfg: SearchConfig) -> Result<CensusResult, SearchError> {
    if cfg.threads == 0 {
        return Err(SearchError::NoThreads);
    }
    if cfg.max_solids == 0 {
        return Err(SearchError::NoSolids);
    }
    let search = Search {
        cfg,
        seen: SeenSet::new(),
        results: Mutex::new(BTreeSet::new()),
        nodes: AtomicU64::new(0),
        budget_hit: AtomicBool::new(false),
    };

    let mut root = Triangulation::new(cfg.schlafli, cfg.orientable);
    root.add_platonic_solid(cfg.schlafli.p(), cfg.schlafli.q())
        .unwrap();

    if cfg.threads == 1 {
        search.recursive_find(root, None);
    } else {
        pool::run(cfg.threads, root, |t, pl| search.recursive_find(t, Some(pl)));
    }

    let stats = search.stats();
    if search.budget_hit.load(Ordering::Relaxed) {
        return Err(SearchError::BudgetExceeded {
            nodes: stats.nodes,
            seen_entries: stats.peak_seen_entries,
            seen_bytes: stats.seen_bytes,
        });
    }
    Ok(CensusResult {
        schlafli: cfg.schlafli,
        max_solids: cfg.max_solids,
        orientable: cfg.orientable,
        sigs: search.results.into_inner().unwrap(),
        stats,
    })
}

/// Same contract as [`enumerate`]; requires at least two worker threads.
pub fn enumerate_parallel(cfg: SearchConfig) -> Result<CensusResult, SearchError> {
    if cfg.threads < 2 {
        return Err(SearchError::NotParallel(cfg.threads));
    }
    enumerate(cfg)
}

/// Census file: header comments, then one serialized signature per line in
/// sorted order.
pub fn census_file_string(result: &CensusResult) -> String {
    use std::fmt::Write;
    let s = result.schlafli;
    let mut out = String::new();
    writeln!(out, "# schlafli {},{},{}", s.p(), s.q(), s.r()).unwrap();
    writeln!(out, "# max_solids {}", result.max_solids).unwrap();
    writeln!(
        out,
        "# orientable {}",
        if result.orientable { "yes" } else { "no" }
    )
    .unwrap();
    writeln!(out, "# count {}", result.sigs.len()).unwrap();
    for sig in &result.sigs {
        writeln!(out, "{sig}").unwrap();
    }
    out
}

/// Reads the signatures of a census file, ignoring header comments.
pub fn parse_census_file(text: &str) -> Result<Vec<SpecializedIsoSig>, crate::SigParseError> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(SpecializedIsoSig::parse)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(p: u32, q: u32, r: u32, max: usize, orientable: bool) -> SearchConfig {
        SearchConfig::new(SchlafliType::new(p, q, r).unwrap(), max, orientable)
    }

    #[test]
    fn fix_edges_single_solid_valid() {
        for (p, q, r) in [(3, 3, 6), (3, 4, 4), (4, 3, 6), (5, 3, 6), (4, 3, 5)] {
            let mut t = Triangulation::new(SchlafliType::new(p, q, r).unwrap(), true);
            t.add_platonic_solid(p, q).unwrap();
            assert_eq!(fix_edges(&mut t, p, r), FixVerdict::Valid);
        }
    }

    /// Exhaustive search over unrestricted 2-tetrahedron gluing sequences
    /// finds a state where an over-full 01-edge forces an invalid verdict.
    #[test]
    fn fix_edges_overfull_edge_invalid() {
        let schlafli = SchlafliType::new(3, 3, 6).unwrap();
        let mut base = Triangulation::new(schlafli, false);
        base.add_platonic_solid(3, 3).unwrap();
        base.add_platonic_solid(3, 3).unwrap();

        let mut stack = vec![base];
        let mut found_invalid = false;
        let mut states = 0;
        while let Some(t) = stack.pop() {
            states += 1;
            if states > 200_000 || found_invalid {
                break;
            }
            let Some(s0) = (0..t.len()).find(|&s| t.neighbor(s, 3) == UNGLUED) else {
                continue;
            };
            for s1 in 0..t.len() {
                if t.neighbor(s1, 3) != UNGLUED {
                    continue;
                }
                let mut t1 = t.clone();
                if !t1.glue_faces(s0, s1, 3) {
                    continue;
                }
                let mut probe = t1.clone();
                match fix_edges(&mut probe, 3, 6) {
                    FixVerdict::Invalid => {
                        // confirm an over-full edge exists somewhere
                        let (class, count) = t1.edge01_classes();
                        let mut size = vec![0usize; count];
                        for s in 0..t1.len() {
                            size[class[s] as usize] += 1;
                        }
                        if size.iter().any(|&s| s > 12) {
                            found_invalid = true;
                        }
                    }
                    FixVerdict::Valid => stack.push(probe),
                }
            }
        }
        assert!(found_invalid);
    }

    #[test]
    fn octahedral_one_solid_orientable() {
        let result = enumerate(cfg(3, 4, 4, 1, true)).unwrap();
        assert_eq!(result.sigs.len(), 2);
        let sigs: Vec<_> = result.sigs.iter().collect();
        assert_ne!(sigs[0], sigs[1]);
    }

    #[test]
    fn tetrahedral_one_solid() {
        let o = enumerate(cfg(3, 3, 6, 1, true)).unwrap();
        assert_eq!(o.sigs.len(), 0);
        let n = enumerate(cfg(3, 3, 6, 1, false)).unwrap();
        assert_eq!(n.sigs.len(), 1);
        assert!(n.sigs.iter().all(|s| s.num_solids() == 1));
    }

    #[test]
    fn tetrahedral_two_solids_orientable() {
        let result = enumerate(cfg(3, 3, 6, 2, true)).unwrap();
        assert_eq!(result.count_at(1), 0);
        assert_eq!(result.count_at(2), 2);
    }

    #[test]
    fn results_fully_glued_and_reparse() {
        let result = enumerate(cfg(3, 3, 6, 2, false)).unwrap();
        for sig in &result.sigs {
            let s = sig.to_string();
            let back = SpecializedIsoSig::parse(&s).unwrap();
            assert_eq!(&back, sig);
            assert!(sig.entries().iter().all(|&e| e != UNGLUED));
        }
    }

    #[test]
    fn parallel_matches_single_threaded() {
        let single = enumerate(cfg(3, 4, 4, 2, true)).unwrap();
        assert_eq!(single.count_at(2), 27);
        for threads in [2, 8] {
            let multi = enumerate_parallel(cfg(3, 4, 4, 2, true).threads(threads)).unwrap();
            assert_eq!(single.sigs, multi.sigs, "threads = {threads}");
        }
    }

    #[test]
    fn budget_abort() {
        let mut c = cfg(3, 4, 4, 2, true);
        c.memory_budget = Some(1024);
        match enumerate(c) {
            Err(SearchError::BudgetExceeded { seen_bytes, .. }) => assert!(seen_bytes > 1024),
            other => panic!("expected budget abort, got {other:?}"),
        }
    }

    #[test]
    fn census_file_round_trip() {
        let result = enumerate(cfg(3, 3, 6, 2, true)).unwrap();
        let text = census_file_string(&result);
        assert!(text.starts_with("# schlafli 3,3,6\n"));
        let sigs = parse_census_file(&text).unwrap();
        assert_eq!(sigs.len(), result.sigs.len());
        let mut sorted = sigs.clone();
        sorted.sort();
        assert_eq!(sigs, sorted);
    }
}
