//! Exact arithmetic over F_q(t) for prime q, the valuations at t and at
//! infinity, Bruhat–Tits tree vertices and the matrix action on them.

mod bt;
mod laurent;
mod mat;
mod poly;
mod rational;

use thiserror::Error;

pub use bt::{bt_distance, bt_neighbors, bt_tree, BTVertex, BtOracle};
pub use laurent::{expand_quotient, laurent_expand, Laurent};
pub use mat::{iwasawa_reduce, Mat2, MatrixMap};
pub use poly::{is_prime, PolyFq};
pub use rational::{RatFq, Uniformizer};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FfError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular matrix")]
    Singular,
    #[error("field size {0} is not a prime")]
    NotPrime(u32),
    #[error("cannot parse {0:?} as an element of F_q(t)")]
    Parse(String),
    #[error("key {0} is not a tree vertex for these parameters")]
    BadVertex(String),
}
