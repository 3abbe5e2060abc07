//! Exact coefficient arithmetic: rationals, polynomials and rational
//! functions in one variable `t`, and truncated power series.

mod kronecker;
pub mod poly;
pub mod ratfunc;
pub mod ring;
pub mod series;

pub use poly::{poly_gcd, Poly};
pub use ratfunc::{rf_eval, RationalFunction};
pub use ring::{parse_rat, rat, rat_to_string, ratio, ExactDiv, Rat, Ring};
pub use series::{series_divide, TruncSeries};
