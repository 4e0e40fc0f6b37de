//! Bound states, critical depths and compact variational states of particles
//! in Gaussian wells.
//!
//! The radial problem is parameterized by `nu = d + 2ℓ` and solved on
//! Laguerre-type Lagrange meshes. On top of that sit threshold analysis
//! ([`critical`]), a three-parameter trial function ([`ansatz`]) and two
//! applications: a Gaussian two-nucleon model ([`deuteron`]) and a
//! two-electron Gaussian quantum dot ([`qdot`]).
//!
//! The crate is `no_std` with `alloc` when the default `std` feature is off.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod ansatz;
pub mod critical;
pub mod deuteron;
pub mod error;
pub mod linalg;
mod math;
pub mod mesh;
pub mod optimize;
pub mod qdot;
pub mod quadrature;
pub mod spectrum;

pub use error::{Error, Result};
