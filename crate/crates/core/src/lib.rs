//! Intrinsic volumes of the quantum state space `S_d` and of the
//! complementarity polytope `P_d`.
//!
//! The closed forms live in [`statespace`] and [`cpolytope`], the
//! Selberg-integral machinery behind the state-space derivatives in
//! [`selberg`], Monte-Carlo Steiner-coefficient estimation in
//! [`montecarlo`], and the Gram-matrix and spherical-cone tests in
//! [`feasibility`]. Every Gamma-heavy value is carried as a
//! [`LogReal`](mathkernel::LogReal).

pub mod cli;
pub mod cpolytope;
pub mod error;
pub mod feasibility;
pub mod linalg;
pub mod mathkernel;
pub mod montecarlo;
pub mod selberg;
pub mod statespace;

pub use error::{Error, Result};
pub use mathkernel::{Body, BodyDims, IntrinsicVolumeTable, LogReal};
