//! Exact finite-scale computation with group actions on locally finite
//! hyperbolic graphs and their l2 products.

pub mod ff;
pub mod space;
pub mod action;
pub mod induction;
pub mod axis;
pub mod gallery;
pub mod distortion;
pub mod io;
