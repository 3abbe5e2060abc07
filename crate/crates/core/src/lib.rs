//! Exact computation of the ring structure on `Λⁿ` induced by tensor products
//! of bundles on the Hilbert scheme of points in the plane.

pub mod characters;
pub mod emit;
pub mod error;
pub mod exactring;
pub mod heisenberg;
pub mod linalg;
pub mod macdonald;
pub mod operators;
pub mod partitions;
pub mod product;
pub mod symfunc;
pub mod verify;

pub use characters::{character_table, class_constants, CharacterTable, CupProduct, Normalization};
pub use emit::{display_order, parse_terms, Format};
pub use error::{Error, Result};
pub use exactring::{parse_rat, rat, rat_to_string, ratio, ExactDiv, Poly, Rat, RationalFunction, Ring, TruncSeries};
pub use linalg::{LinOperator, Matrix};
pub use macdonald::{delta_matrix, macdonald_basis, MacdonaldBasis, Specialization};
pub use operators::{
    bkr_transport, graded_component, nabla_f, op_d, op_e, op_gamma, op_pi, transport, FixedPointWeights,
};
pub use partitions::{b_weight, partitions_of, Partition};
pub use product::{
    adams_conjecture_check, adams_operator, calibrate_cup, gamma_transfer_check, odot_table, OdotRing, ProductTable,
};
pub use symfunc::{Basis, OmegaConvention, SymFunc};
pub use verify::{run as run_verify, CheckResult, Report, Severity, VerifyConfig};
