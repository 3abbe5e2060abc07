use thiserror::Error;

use crate::partitions::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("pole: {0}")]
    PoleError(String),
    #[error("division by zero")]
    ZeroDivision,
    #[error("series valuation: {0}")]
    Valuation(String),
    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(usize, usize),
    #[error("basis mismatch")]
    BasisMismatch,
    #[error("no cup-product calibration for n = {0}")]
    CalibrationMissing(usize),
    #[error("specialization q = t^{a} is invalid for n = {n} (need A > n)")]
    InvalidSpecialization { n: usize, a: u32 },
    #[error("degenerate specialization q = t^{a}: {reason}")]
    DegenerateSpecialization { a: u32, reason: String },
    #[error("Δ-eigenvalues of {0} and {1} coincide")]
    DegenerateEigenvalue(Partition, Partition),
    #[error("eigenspace of {mu} has dimension {dim}, expected 1")]
    KernelDimension { mu: Partition, dim: usize },
    #[error("q,t-Kostka entry ({lambda}, {mu}) is not a polynomial")]
    NonPolynomialKostka { lambda: Partition, mu: Partition },
    #[error("Kostka matrix is singular")]
    SingularK,
    #[error("entry ({row}, {col}) has a pole at t = 1")]
    PoleAtOne { row: Partition, col: Partition },
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
