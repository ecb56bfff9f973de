//! Nodal sets, cube partitions, simplex geometry and the bound ledger.

pub mod bound;
pub mod fit;
pub mod marching;
pub mod partition;
pub mod simplex;

pub use bound::{assemble_global_bound, growth_exponent, nodal_bound_recursion, BoundLedger, RecursionReport};
pub use fit::{log_log_fit, refinement_rate, scaling_exponent_fit, SlopeFit};
pub use marching::{
    extract_nodal_set, hausdorff_length, segments_length, EdgeKey, NodalSet, SaddleRule, Segment,
    ZERO_NUDGE,
};
pub use partition::{bad_cube_count, hyperplane_lemma_check, partition, PartitionReport, Scheme, SubcubeRow};
pub use simplex::{
    disk_samples, random_simplex, simplex_covering_check, simplex_lemma_check, simplex_metrics,
    CoveringReport, SimplexGeometry, SimplexLemmaParams, SimplexLemmaReport, SimplexVerdict,
};
