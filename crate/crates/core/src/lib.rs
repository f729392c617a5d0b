//! Horizontal curvature toolkit for surfaces in 3D contact sub-Riemannian Lie groups.
//!
//! The library computes the horizontal mean curvature `H^h`, the horizontal Gauss
//! curvature `K^h` and the symplectic distortion `Q^h` of an implicit surface
//! `u = 0` in a contact Lie group carrying a left-invariant frame `{X, Y, T}`
//! with `[X,T] = a1 X + b1 Y`, `[Y,T] = a2 X + b2 Y` and
//! `[X,Y] = a3 X + b3 Y + c T`.  Two concrete models are built in: the
//! Heisenberg group and the affine-additive group.
//!
//! Modules:
//! - [`groups`]: structure constants, concrete group models, ambient sectional
//!   curvatures of the Riemannian approximation `g_eps`.
//! - [`jets`]: second-order jets of scalar fields and exact frame derivatives.
//! - [`expr`]: a small expression language for defining surfaces, evaluated by
//!   forward-mode differentiation to second order.
//! - [`surface`]: horizontal data, adapted frames, the three curvature
//!   invariants, isometry transport and dilation scaling.
//! - [`approx`]: the `g_eps` moving-frame coefficients, second fundamental
//!   form, `H^eps`/`K^eps` and their convergence to the horizontal limits.
//! - [`revolution`]: model surfaces and the constant-curvature classification
//!   families for surfaces of revolution in both groups.
//! - [`verify`]: the built-in verification suite used by tests and the CLI.

pub mod approx;
pub mod expr;
pub mod groups;
pub mod jets;
pub mod numeric;
pub mod revolution;
pub mod surface;
pub mod verify;

/// A point of a three-dimensional coordinate chart.
pub type Point = [f64; 3];
