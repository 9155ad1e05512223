//! Exact analyzer for tropical (min-plus) rational maps `ℝⁿ → ℝⁿ`.
//!
//! A tropical rational function is a difference of two minima of finitely
//! many affine forms with rational coefficients. Such a map is piecewise
//! affine: the space decomposes into finitely many closed full-dimensional
//! polyhedral cells, with one affine map per cell. This crate parses a
//! textual description of such a map, enumerates its linear pieces with an
//! exact rational simplex solver, and decides whether the map is a global
//! isomorphism: the piece Jacobians must share a sign and the fiber of a
//! certified regular value must be a singleton. When the map is an
//! isomorphism the piecewise-affine inverse is constructed; otherwise a
//! non-injectivity witness or a sign obstruction is reported. A separate
//! diagnostic tests whether the convex hull of the differentials at a point
//! contains a singular matrix.
//!
//! All arithmetic is exact (arbitrary-precision rationals); no floating
//! point is used anywhere in a verdict.

pub mod analysis;
pub mod error;
pub mod exactgeom;
pub mod json;
pub mod linform;
pub mod pieces;
pub mod rat;
pub mod syntax;

pub use analysis::{
    clarke_at, decide_isomorphism, degree, find_regular_value, invert, jacobian_signs,
    plane_fast_path, preimage, AnalysisReport, AnalyzeOptions, ClarkeSet, ClarkeVerdict, Fiber,
    Reason, RegularValueCertificate, SignSummary, Verdict,
};
pub use error::Error;
pub use exactgeom::lp::{interior_point, lp_solve, LpResult, LpStatus, Sense};
pub use exactgeom::matrix::{solve_affine, AffineSolution, MatrixQ};
pub use exactgeom::polyhedron::{Constraint, Polyhedron, Relation};
pub use linform::LinearForm;
pub use pieces::{enumerate_pieces, facets_of, pieces_at, Decomposition, LinearPiece, Selection};
pub use rat::Rat;
pub use syntax::{normalize, parse_map, prune_redundant, NormalForm, TropicalMap};
