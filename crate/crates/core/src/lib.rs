//! Free-group words, Brooks counting, quasimorphisms and their defects,
//! decompositions, free products and overlap graphs.

pub mod brooks;
pub mod combinatorics;
pub mod decomposition;
pub mod error;
pub mod free_product;
pub mod overlap_graphs;
pub mod quasimorphism;
pub mod word;
pub mod wordset;

#[cfg(test)]
mod proptests;

pub use brooks::{
    count_big, count_small, eval_brooks, eval_homogenized_brooks, occurrences, BrooksKind,
    CyclicWord, OccurrenceList,
};
pub use combinatorics::{
    cyclic_analysis, generate_fundamental_set, is_conjugate, is_lyndon, is_self_overlapping,
    juncture_family, overlap_report, CyclicReport, LetterOrder, OverlapReport, ReducedExpression,
};
pub use decomposition::{
    continuity_profile, delta_triangle, estimate_decomposition_defect, eval_decomposable,
    make_decomposition, n_delta, validate_axioms, AxiomReport, ContinuityProfile, DeltaTriangle,
    Decomposition, DecompositionKind, PieceRule, PieceWeights, Steps, TriangleScratch,
};
pub use error::{Error, Result};
pub use free_product::{
    block_decompose, free_product_decomposition, free_product_eval, iota, pullback_eval, r_star,
    ulam_violation_witness, BlockStructure, StarData, UlamWitness,
};
pub use overlap_graphs::{
    build_overlap_graphs, graph_metrics, kappa_of_set, sigma_ind_certificate,
    transitive_tournament_line_graph, Digraph, GraphMetrics, Metric, OverlapGraphBundle,
    SigmaIndCertificate,
};
pub use quasimorphism::{
    alternating_part, coboundary, estimate_defect, grigorchuk_expand, homogenize_sequence,
    kappa_alpha, CoefficientMap, DefectEstimate, KappaReport, PairMode, QuasimorphismSpec,
    RolliTable, RolliTables, ValueTable,
};
pub use word::{enumerate_ball, Letter, Word};
pub use wordset::{parse_word_set, WordSet};
