//! Enumeration of hyperbolic Platonic tessellations and their combinatorial
//! invariants.
//!
//! The crate builds censuses of tessellations of the seven hyperbolic
//! Platonic types by a deduplicated parallel backtracking search over glued
//! solids, working throughout with barycentric subdivisions. On top of the
//! census it provides first homology and covering-space invariants for
//! grouping tessellations into manifold candidates, two subdivision
//! algorithms for cubical tessellations, and an enumerator for augmented
//! knotted trivalent graph diagrams with PD-code export.

pub mod augktg;
pub mod canonical;
pub mod cosets;
pub mod cubulation;
pub mod enumerate;
pub mod fundamental;
pub mod gtrig;
pub mod homology;
pub mod invariants;
pub(crate) mod pool;
pub mod schlafli;
pub(crate) mod solid;
pub mod trig;

pub use augktg::{
    a_move, belt_count, enumerate_augktg, fatgraph_sig, k4, mirror, num_components, pd_export,
    simplify_r1, u_move, x_move, x_move_mirrored, AugKtgDiagram, AugktgError, FatGraph,
    FatGraphSig, PdCode,
};
pub use canonical::{
    automorphisms, canonical_reindex, dual, specialized_iso_sig, triangulation_from_sig,
    AutomorphismReport, CanonicalError, SigParseError, SpecializedIsoSig,
};
pub use gtrig::{GeneralLink, GeneralTriangulation, Gluing, GtrigError, Perm4, ValidityReport};
pub use cubulation::{
    choose_diagonals, face_cycles, subdivide_appendix, subdivide_two_coloring, CubeComplex,
    CubulationError, DiagonalChoice, FaceCycleDecomposition,
};
pub use homology::AbelianGroup;
pub use invariants::{
    covers, default_escalation_rules, first_homology, first_homology_general, group_by_profile,
    is_homology_link, num_cusps, profile, CoverRecord, CoverType, EscalationRule,
    InvariantError, InvariantProfile,
};
pub use enumerate::{
    census_file_string, enumerate, enumerate_parallel, fix_edges, parse_census_file,
    CensusResult, FixVerdict, SearchConfig, SearchError, SearchStats,
};
pub use schlafli::{SchlafliError, SchlafliType};
pub use trig::{LinkSurface, Triangulation, TrigError, UNGLUED};
