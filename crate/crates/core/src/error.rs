use thiserror::Error;

use crate::partitions::Partition;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition {0} has an odd number of even parts and is not an alternating-group class")]
    OddParity(Partition),

    #[error("partition {0} does not split in the alternating group")]
    NotSplit(Partition),

    #[error("exponent {exp} is not coprime to the class order {order}")]
    NotCoprime { exp: i64, order: u64 },

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("group order {order} exceeds the configured bound {bound}")]
    BoundExceeded { order: u128, bound: u128 },

    #[error("oracle search space {size} exceeds the guard {guard}")]
    GuardExceeded { size: u128, guard: u128 },

    #[error("element {0} does not belong to this group")]
    InvalidElement(String),

    #[error("map is not a group homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("group orders {0} and {1} are not coprime")]
    NotCoprimeOrders(u128, u128),

    #[error("class function does not match the group: {0}")]
    ClassFunctionMismatch(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("alternating closed form needs n >= 3, got {0}")]
    AlternatingTooSmall(u32),

    #[error("|t| = {0} lies outside the open unit disk")]
    OutsideDisk(f64),

    #[error("Hurwitz-like series needs |u| < 1 and alpha > 0 (got |u| = {abs_u}, alpha = {alpha})")]
    HurwitzDomain { abs_u: f64, alpha: f64 },

    #[error("path invalid: {0}")]
    InvalidPath(String),

    #[error("Psi_t is undefined at t = 0 (its limit is f(c_j) = {limit})")]
    PsiAtZero { limit: num_complex::Complex64 },

    #[error("quadrature did not converge within {0} panels")]
    Quadrature(usize),
}
