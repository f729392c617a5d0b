//! The flask: the surface of the affine-additive group foliated by lifts of
//! hyperbolic circles.  The horizontal frame induces the hyperbolic metric of
//! curvature `-4` on the half-plane, in which the generating circles have
//! geodesic curvature `2 coth R`; the horizontal mean curvature of the flask
//! has that magnitude, with a sign depending on which side of the flask's
//! characteristic circles the point lies (the surface is a torus-like tube).
//!
//! The patch is
//!
//! ```text
//! a      = s - cosh R * arctan(e^{-R} tan s)          (continuous branch)
//! lambda = (cosh R + cos(phi) sinh R)(cosh R + cos(2s) sinh R)
//! t      = sinh R (sin(phi) + (cosh R + cos(phi) sinh R) sin(2s))
//! ```
//!
//! on `(s, phi) in (-pi, pi) x (0, 2 pi)`.  An implicit defining function is
//! built near a patch point by inverting `a(s)` with a guarded Newton
//! iteration and eliminating `phi` through `cos^2 + sin^2 = 1`; its jets are
//! taken by one layer of central differences.

use super::RevolutionError;
use crate::groups::{builtin_model, BuiltinModel};
use crate::jets::{FieldError, Jet2, ScalarField};
use crate::numeric::newton_bisect;
use crate::surface::{curvatures_off_surface, SurfaceError};
use crate::Point;
use std::f64::consts::PI;

/// Continuous branch of `arctan(m tan s)` (increasing in `s` for `m > 0`).
fn cont_atan(m: f64, s: f64) -> f64 {
    if s.cos().abs() < 1e-9 {
        // odd multiples of pi/2 are fixed points of the continued branch
        return s;
    }
    let n = ((s + PI / 2.0) / PI).floor();
    (m * s.tan()).atan() + n * PI
}

/// First patch coordinate `a(s)`.
pub fn profile_a(radius: f64, s: f64) -> f64 {
    s - radius.cosh() * cont_atan((-radius).exp(), s)
}

/// `da/ds`; vanishes at the fold parameters `s = pi/4 + m pi/2`.
pub fn profile_a_prime(radius: f64, s: f64) -> f64 {
    let c = s.cos();
    let e = (-2.0 * radius).exp();
    1.0 - radius.cosh() * (-radius).exp() / (c * c + e * (1.0 - c * c))
}

/// The flask patch point at `(s, phi)`.
pub fn patch_point(radius: f64, s: f64, phi: f64) -> Point {
    let (ch, sh) = (radius.cosh(), radius.sinh());
    let mu = ch + phi.cos() * sh;
    let lam = mu * (ch + (2.0 * s).cos() * sh);
    let t = sh * (phi.sin() + mu * (2.0 * s).sin());
    [profile_a(radius, s), lam, t]
}

/// Monotone interval of `a(s)` containing `seed`, bounded by fold parameters.
fn monotone_interval(seed: f64) -> (f64, f64) {
    let k = ((seed + PI / 4.0) / (PI / 2.0)).floor();
    let lo = -PI / 4.0 + k * PI / 2.0;
    (lo, lo + PI / 2.0)
}

/// Implicit defining function of the flask near the leaf through `seed_s`.
///
/// Deterministic: every evaluation re-solves `a(s) = a` with the same seed,
/// so repeated evaluation at a point is bit-identical.
pub fn flask_field(radius: f64, seed_s: f64) -> ScalarField {
    flask_field_with_step(radius, seed_s, 1e-5)
}

/// As [`flask_field`], with an explicit base step for the difference stencil.
pub fn flask_field_with_step(radius: f64, seed_s: f64, step: f64) -> ScalarField {
    let (ch, sh) = (radius.cosh(), radius.sinh());
    let (lo, hi) = monotone_interval(seed_s);
    let inset = 1e-7;
    let value = move |p: Point| -> Result<f64, FieldError> {
        let s = newton_bisect(
            |s| profile_a(radius, s) - p[0],
            |s| profile_a_prime(radius, s),
            lo + inset,
            hi - inset,
            seed_s,
            1e-15,
            50,
        )
        .map_err(|e| FieldError::Numeric(format!("leaf-parameter inversion failed: {e}")))?;
        let denom = ch + (2.0 * s).cos() * sh;
        let mu = p[1] / denom;
        let cphi = (mu - ch) / sh;
        let sphi = p[2] / sh - mu * (2.0 * s).sin();
        Ok(cphi * cphi + sphi * sphi - 1.0)
    };
    ScalarField::new(["a", "l", "t"], move |p| {
        let mut h = [0.0; 3];
        for i in 0..3 {
            h[i] = step * (1.0 + p[i].abs());
        }
        let at = |dx: f64, dy: f64, dz: f64| value([p[0] + dx, p[1] + dy, p[2] + dz]);
        let f0 = at(0.0, 0.0, 0.0)?;
        let mut grad = [0.0; 3];
        let mut hess = [0.0; 6];
        let mut slot = 0;
        for i in 0..3 {
            let mut dp = [0.0; 3];
            dp[i] = h[i];
            let fp = at(dp[0], dp[1], dp[2])?;
            let fm = at(-dp[0], -dp[1], -dp[2])?;
            grad[i] = (fp - fm) / (2.0 * h[i]);
            for j in i..3 {
                hess[slot] = if i == j {
                    (fp - 2.0 * f0 + fm) / (h[i] * h[i])
                } else {
                    let mut dq = [0.0; 3];
                    dq[j] = h[j];
                    let fpp = at(dp[0] + dq[0], dp[1] + dq[1], dp[2] + dq[2])?;
                    let fpm = at(dp[0] - dq[0], dp[1] - dq[1], dp[2] - dq[2])?;
                    let fmp = at(-dp[0] + dq[0], -dp[1] + dq[1], -dp[2] + dq[2])?;
                    let fmm = at(-dp[0] - dq[0], -dp[1] - dq[1], -dp[2] - dq[2])?;
                    (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j])
                };
                slot += 1;
            }
        }
        Ok(Jet2::new(f0, grad, hess))
    })
}

const FOLD_MARGIN: f64 = 0.02;

/// Horizontal mean curvature of the flask at the patch point `(s, phi)`,
/// computed through the implicit construction with finite-difference jets.
pub fn flask_mean_curvature_fd(radius: f64, s: f64, phi: f64) -> Result<f64, RevolutionError> {
    if !(radius > 0.0) {
        return Err(RevolutionError::InvalidParams(format!(
            "flask radius must be positive, got {radius}"
        )));
    }
    if s.abs() >= PI - FOLD_MARGIN {
        return Err(RevolutionError::Degenerate(format!(
            "s = {s} at the patch boundary"
        )));
    }
    for fold in [-3.0 * PI / 4.0, -PI / 4.0, PI / 4.0, 3.0 * PI / 4.0] {
        if (s - fold).abs() < FOLD_MARGIN {
            return Err(RevolutionError::Degenerate(format!(
                "s = {s} too close to the fold at {fold}"
            )));
        }
    }
    let p = patch_point(radius, s, phi);
    let model = builtin_model(BuiltinModel::AffineAdditive);
    let at_step = |step: f64| -> Result<f64, RevolutionError> {
        let field = flask_field_with_step(radius, s, step);
        match curvatures_off_surface(&model, &field, p) {
            Ok(report) => Ok(report.h_h),
            Err(SurfaceError::Characteristic { .. }) => Err(RevolutionError::Degenerate(format!(
                "characteristic point at (s, phi) = ({s}, {phi})"
            ))),
            Err(e) => Err(RevolutionError::Degenerate(e.to_string())),
        }
    };
    let h1 = at_step(1e-5)?;
    // self-check with a doubled stencil: near the characteristic circles the
    // difference quotients lose the accuracy this check is specified at
    let h2 = at_step(2e-5)?;
    if (h1 - h2).abs() > 1e-4 * (1.0 + h1.abs()) {
        return Err(RevolutionError::Degenerate(format!(
            "(s, phi) = ({s}, {phi}) is too close to the characteristic set for the stencil"
        )));
    }
    Ok(h1)
}
