//! Exact total relative displacement of vertex permutations, minimum
//! positive displacement by branch and bound, and brute-force checks of
//! the near-automorphism characterisation for complements of cycles.
//!
//! Vertices are `0..n` in the API and `1..=n` in every textual form.

pub mod cli;
pub mod displacement;
pub mod error;
pub mod graph;
pub mod perm;
pub mod sample;
pub mod solver;

pub use displacement::{
    build_multigraph, delta_pair, delta_subset, delta_total, delta_value, delta_vertex, find_positive_edge,
    sandwich_pattern_holds, DisplacedPair, DisplacementMultigraph, DisplacementReport,
};
pub use error::{Error, ParseError, Result};
pub use graph::{build_complete, build_cycle, build_path, complement, distance_matrix, parse_edge_list, Family, Graph};
pub use perm::{all_sigma_candidates, dihedral, reflection, rotation, sigma_lk, Permutation, SigmaSpec};
pub use solver::{
    automorphisms, check_balance, check_min_displacement, check_positive_edge, check_sandwich_bound,
    constructed_near_automorphisms, near_automorphisms, permutations_with_displacement, pi_exact, pi_exact_with,
    verify_theorem, verify_theorem_with, LemmaReport, Objective, PiResult, Population, SolverOptions, TheoremReport,
};
