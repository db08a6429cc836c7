//! Exact solver for linear equations in Lucas sequence terms.
//!
//! Finds every solution of
//!
//! ```text
//! A·U_n + B·U_m = C·U_{n1} + D·U_{m1},   n > m ≥ 0,  n1 > m1 ≥ 0,  A·U_n ≠ C·U_{n1}
//! ```
//!
//! where `U` runs over all Lucas sequences `U_0 = 0, U_1 = 1, U_{k+2} = r·U_{k+1} + U_k`
//! with `r ≥ 1` unknown. Solutions split into finitely many sporadic ones, found by a
//! bounded exhaustive search ([`sporadic`]), and parametric families coming from lacunary
//! polynomials divisible by `X² − rX − 1` ([`parametric`]).
//!
//! All arithmetic is exact. The roots of `X² − rX − 1` are never evaluated numerically.
//!
//! The runnable programs under `examples/` walk through each capability.

pub mod bounds;
pub mod cli;
mod error;
pub mod lucas;
pub mod normalize;
pub mod oracle;
pub mod parametric;
pub mod report;
pub mod solve;
pub mod sporadic;

pub use bounds::{cd_zero_bound, parametric_bounds, sporadic_bounds, BoundSet};
pub use error::{Error, Result};
pub use lucas::{lucas_gcd, lucas_prefix, lucas_term, LucasParams, LucasTable};
pub use normalize::{canonicalize, denormalize, CanonicalEquation, OriginalSolution, ProblemSpec};
pub use parametric::{
    find_families, is_multiple, reduce_power, verify_family, CoeffDomain, FamilyKind, LacunaryPoly,
    ParametricFamily,
};
pub use solve::{solve, SolveOptions, SolveReport};
pub use sporadic::{
    search_paper_example, search_sporadic, verify_solution, Convention, PaperExperiment,
    SearchReport, SporadicSolution,
};
