//! Exact verification of the correspondence between the K3 family
//! `X_t: y^2 = xz(x+1)(z+1)(x+zt)` and Kummer surfaces of products of
//! elliptic curves.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod catalog;
pub mod counting;
pub mod error;
pub mod lattice;
pub mod report;
pub mod surface;

pub use error::{Error, Result};
