//! Metric dimension variants of connected graphs.
//!
//! Classic (`beta`), fault-tolerant (`beta'`), local (`lmd`) and strong
//! (`sdim`) dimensions: resolvability predicates, exact solvers, the
//! fault-tolerant and local 0/1 programs with a built-in branch-and-bound,
//! and the convex polytope families `S_n` and `U_n`.

pub mod coverage;
pub mod distance;
pub mod edgelist;
pub mod exact;
pub mod families;
pub mod generators;
pub mod graph;
pub mod ilp;
pub mod matching;
pub mod resolvers;

pub use coverage::SearchBudget;
pub use distance::{all_pairs_distances, DistanceMatrix};
pub use exact::{exact_dimension, exact_dimension_with_seed, ExactError, ExactSolution};
pub use families::{formula_dimension, generate, verify_theorem, witness_set, Family, PolytopeInstance, TheoremKind};
pub use ilp::{build_ftmd_model, build_lmd_model, export_lp, parse_lp, solve_binary_program, BinaryProgram};
pub use graph::{Graph, GraphError, Vertex, VertexSet};
pub use resolvers::{Certificate, VariantKind, Verdict};
