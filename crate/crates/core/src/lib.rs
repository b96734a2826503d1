//! Exact computation in Leavitt path algebras of finite directed graphs.
//!
//! Elements are reduced to normal form by a confluent rewriting system, and
//! derivations are built, validated and compared through their action on
//! generators.

pub mod catalog;
pub mod coeff;
pub mod deriv;
pub mod graph;
pub mod linsolve;
pub mod render;
pub mod rewrite;

pub use coeff::{rat, ratio, Coefficient, Rational};
pub use graph::{EdgeId, Graph, GraphError, Path, SpecialSelection, VertexId, Walk};
pub use rewrite::{Algebra, Element, Letter, NormalWord, RewriteError, Strategy};
