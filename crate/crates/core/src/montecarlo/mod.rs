//! Monte-Carlo verification of the closed forms: distance oracles, a
//! hit-or-miss estimator of `vol(K_ε)` and a least-squares fit of the
//! Steiner coefficients.

pub mod estimate;
pub mod fit;
pub mod projection;

pub use estimate::{estimate_neighborhood_volume, MCEstimate};
pub use fit::{default_eps_grid, fit_polynomial, fit_steiner_coefficients, geometric_eps_grid, SteinerFit};
pub use projection::{
    distance_to_cpolytope, distance_to_spherical_cone, distance_to_statespace,
    project_to_probability_simplex, HermitianBasis, OracleBody, ProjectionOracle,
};
