//! Functions valued in `[0, +inf) x [0, +inf]` and their integrals with
//! respect to an h-measure.

mod certificate;
mod evaluate;
mod expr;
mod function;
mod minorants;

pub use certificate::{lower_bound_holds, verify_certificate, T4Certificate, Witness};
pub use evaluate::{
    ess_sup, graded_integral, indefinite, integrate, integrate_ordinary, integrate_piecewise, integrate_simple,
    integrate_value, pointwise_add_fn, sublevel_set, Indefinite, RealFunction,
};
pub use expr::{DimExpr, Exact, MassExpr, Monotone};
pub use function::{intersect_sets, render_set, ExactPair, HFunction, Piece, PiecewiseFn, SimpleFn};
pub use minorants::{approx_gap_witness, isimple_sup_gap, isimple_sup_gap_with, GapWitness, SupGapReport};
