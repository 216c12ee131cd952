//! Free associative algebra on matrix generators, rewriting systems and the
//! defining relations of the algebras built from a Hecke symmetry.

mod poly;
mod relations;
mod rewrite;

pub use poly::{Generator, NCPoly, Word, MAX_N};
pub use relations::{
    generator_matrix, relation_rank, relations_re, relations_reqh, relations_ugl, Algebra,
};
pub use rewrite::{CompletionStatus, RewriteSystem, Rule, Strategy, default_degree_bound};
