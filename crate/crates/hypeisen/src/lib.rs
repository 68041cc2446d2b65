//! Eisenstein series and resolvent kernels for Fuchsian groups of the second
//! kind, with numerical verification of the identities tying them together.
//!
//! The crate builds explicit free, discrete subgroups of PSL(2, ℝ) acting on
//! the upper half-plane — groups whose quotient surfaces have infinite area
//! (funnels, and optionally cusps) — and evaluates, inside their half-planes
//! of absolute convergence:
//!
//! * **hyperbolic Eisenstein series** `Ω_c(s, z)`: real 1-forms attached to a
//!   closed geodesic `c`, normalized so that a geodesic cycle crossing `c`
//!   once picks up total mass 1 (`series::hyperbolic_eisenstein`);
//! * **weight-q families** `A_{l,q}(s, z)` and their normalized companions
//!   `Ξ_{l,q} = A_{l,q} / b_q(s)` (`series::weight_q_series`);
//! * **parabolic Eisenstein series** `E_A(z, s)`, their weight-q lifts
//!   `E_{A,q}` and the 1-form `ℰ_A` (`series::parabolic_eisenstein`);
//! * **boundary-point (Patterson) series** `E_b(z, s, k)` for `b` on the
//!   boundary circle (`series::patterson_eisenstein`);
//! * **series along an infinite geodesic** `θ^s` and `η̂^s = Im θ^s`
//!   (`series::infinite_geodesic_series`);
//! * **resolvent kernels** of the weight-2 Laplacian: the free kernel
//!   `g_s(z, w, 1)` and its automorphic average `G_s(z, w, 1)`
//!   ([`resolvent`]).
//!
//! The [`analysis`] module provides the verification instruments: weighted
//! finite-difference Laplacians and Maass operators on grids, functional-
//! equation residuals in the spectral parameter, geodesic cycle integration
//! and intersection numbers (duality between the 1-form families and
//! geodesic cycles), collar/counting estimates, L² mass on funnel domains,
//! and the degeneration of the hyperbolic family to the parabolic one as a
//! geodesic pinches.
//!
//! [`cli`] exposes the same capabilities as four commands (`group`, `eval`,
//! `verify`, `degenerate`) behind a single TOML job config; the thin binary
//! target `hypeisen` just parses arguments and dispatches there. The
//! `examples/` directory demonstrates each capability end to end.
//!
//! Conventions, fixed once across the crate:
//!
//! ```text
//!   z = x + iy ∈ H,  γ = (a b; c d) ∈ SL(2,ℝ),  γz = (az+b)/(cz+d),
//!   γ'(z) = (cz+d)^{-2},     j_γ(z) = (cz+d)/(c z̄ + d)  (weight-2 cocycle),
//!   sin θ(z) = y/|z|          (angle seen from the geodesic iℝ₊),
//!   Fermi coordinates across iℝ₊:  x₁ = log|z|, sinh x₂ = x/y.
//! ```
//!
//! All evaluators are truncation-aware: they sum the group by word-length
//! shells, report the last shell's magnitude as a tail estimate, and fail
//! with a non-convergence error (never a silent wrong answer) when the shell
//! budget runs out before the stopping rule fires.

pub mod analysis;
pub mod checks;
pub mod cli;
pub mod error;
pub mod group;
pub mod hypgeom;
pub mod resolvent;
pub mod series;
pub mod specfun;

pub use error::{Error, Result};
pub use specfun::C;
