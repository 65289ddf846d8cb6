//! Computational workbench for twisted convolution algebras on Z^n — the
//! dense polynomial model of the noncommutative torus and its order-two
//! symmetrization.
//!
//! A skew-symmetric matrix Θ induces the unimodular cocycle
//! σ_ℏ(p,q) = exp(−πiℏγ(p,q)) with γ(p,q) = Σ θ_jk p_j q_k, and with it a
//! family of associative products on finitely supported coefficient maps.
//! The crate provides:
//!
//! - [`theta`]: Θ, lattice points, γ and σ_ℏ;
//! - [`algebra`]: elements with deformed product, involution, coordinate
//!   flip, Poisson bracket, symmetrization, and commutator quotients;
//! - [`norm`]: windowed regular representation with certified lower and
//!   ℓ¹ upper bounds for the operator norm, plus the classical grid
//!   sup-norm;
//! - [`crossed`]: the order-two crossed product with its involution;
//! - [`morita`]: the bimodule between the crossed product and the even
//!   subalgebra, both inner products, and the explicit invertibility
//!   certificate;
//! - [`suites`]: seeded law suites, semiclassical sweeps, and batch
//!   certificates with machine-readable reports;
//! - [`io`]: JSON/CSV readers and writers used by the CLI.

pub mod algebra;
pub mod crossed;
pub mod error;
pub mod io;
pub mod morita;
pub mod norm;
pub mod rng;
pub mod suites;
pub mod theta;

pub use algebra::{Hbar, LatticeElement, PRUNE_REL_TOL};
pub use crossed::{AlgebraContext, CrossedElement, CrossedParts};
pub use error::{Error, Result};
pub use morita::{
    compatibility_check, inner_c, inner_d, left_action, morita_certificate, right_action,
    BimoduleVector, MoritaCertificate, DEGENERACY_TOL,
};
pub use norm::{
    build_rep, interior_indices, interior_min_eigenvalue, norm_lower, norm_lower_detailed,
    norm_sweep, norm_upper_l1, sup_norm_grid, NormEstimate, NormSweepRow, TruncatedRep, Window,
    DEFAULT_POWER_TOL, DEFAULT_WINDOW_CAP, POWER_ITER_CAP,
};
pub use rng::SplitMix64;
pub use suites::{
    random_element, random_theta, run_axiom_suite, run_morita_suite, semiclassical_sweep,
    semiclassical_window, LawResult, Parity, Report, ScaleMode, SemiclassicalPoint, SuiteConfig,
};
pub use theta::{gamma, sigma, LatticePoint, ThetaMatrix};
