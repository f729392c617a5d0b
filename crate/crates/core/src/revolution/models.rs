//! Built-in model surfaces of both groups: planes, cylinders, the gauge
//! (Koranyi) sphere, the constant-mean-curvature bubble, the geodesic spheres
//! and the flask, with implicit fields, parametric patches, profile jets and
//! the closed-form curvature expressions they satisfy.

use super::{flask, ProfileParams, RevolutionError};
use crate::jets::{FieldError, Jet2, ScalarField};
use crate::Point;
use std::f64::consts::PI;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ModelFamily {
    /// `t = 0`
    HeisPlaneNonvertical,
    /// `x = 0`
    HeisPlaneVertical,
    /// `t = 2xy`
    HeisQuadric2xy,
    /// `x^2 + y^2 = R^2`
    HeisCylinder { radius: f64 },
    /// `(x^2+y^2)^2 + t^2 = R^4`
    Koranyi { radius: f64 },
    /// the constant-mean-curvature sphere of radius `R` (`H = 1/R`)
    Bubble { radius: f64 },
    /// geodesic sphere of radius `R`, profile parameterised by the curvature
    /// parameter `k` of the generating circles
    CcSphereHeis { radius: f64 },
    /// `A a + B lambda + C t + D = 0`
    AaPlane { a: f64, b: f64, c: f64, d: f64 },
    /// `a = 0`
    AaHyperbolicPlane,
    /// `(lambda - l0)^2 + (t - t0)^2 = R^2`
    AaCylinderCircle { l0: f64, t0: f64, radius: f64 },
    /// `A lambda + B t + D = 0`
    AaCylinderLine { a: f64, b: f64, d: f64 },
    /// flask of radius `R` (`H = coth R`), patch only
    FlaskPatch { radius: f64 },
    /// geodesic sphere of the affine-additive group, patch only
    CcSphereAaPatch { radius: f64 },
}

/// Closed-form invariants where the family has them.
#[derive(Clone, Copy, Debug, Default)]
pub struct ClosedCurvatures {
    pub k: Option<f64>,
    pub h: Option<f64>,
    pub q: Option<f64>,
}

/// Profile data `(f, f', f'')` at one parameter value, together with the
/// revolution radius there (for profiles parameterised by something other
/// than the radius itself).
#[derive(Clone, Copy, Debug)]
pub struct ProfileJet {
    pub radius: f64,
    pub f: f64,
    pub fprime: f64,
    pub fsecond: f64,
}

type PatchFn = Arc<dyn Fn(f64, f64) -> Point + Send + Sync>;
type ProfileFn = Arc<dyn Fn(f64) -> Result<ProfileJet, RevolutionError> + Send + Sync>;
type ClosedFn = Arc<dyn Fn(Point) -> ClosedCurvatures + Send + Sync>;

/// A parametric patch `(s, phi) -> point`.
#[derive(Clone)]
pub struct SurfacePatch {
    eval: PatchFn,
    pub s_range: (f64, f64),
    pub phi_range: (f64, f64),
}

impl SurfacePatch {
    pub fn at(&self, s: f64, phi: f64) -> Point {
        (self.eval)(s, phi)
    }
}

/// One model surface: implicit field and/or patch, optional profile jets and
/// closed-form curvature evaluators.
#[derive(Clone)]
pub struct ModelSurface {
    pub family: ModelFamily,
    pub implicit: Option<ScalarField>,
    pub patch: Option<SurfacePatch>,
    profile: Option<ProfileFn>,
    /// Parameter range of `profile`.
    pub profile_range: Option<(f64, f64)>,
    closed: Option<ClosedFn>,
}

impl ModelSurface {
    pub fn profile_at(&self, s: f64) -> Option<Result<ProfileJet, RevolutionError>> {
        self.profile.as_ref().map(|p| p(s))
    }

    pub fn closed_at(&self, point: Point) -> ClosedCurvatures {
        match &self.closed {
            Some(f) => f(point),
            None => ClosedCurvatures::default(),
        }
    }
}

const XYT: [&str; 3] = ["x", "y", "t"];
const ALT: [&str; 3] = ["a", "l", "t"];

fn require_positive(name: &str, v: f64) -> Result<f64, RevolutionError> {
    if v > 0.0 {
        Ok(v)
    } else {
        Err(RevolutionError::InvalidParams(format!(
            "{name} must be positive, got {v}"
        )))
    }
}

/// Builds a model surface by family name (`koranyi`, `bubble`, ...), taking
/// parameters such as `R`, `A`, `B`, `C`, `D`, `l0`, `t0` from `params`.
pub fn model_surface_by_name(
    name: &str,
    params: &ProfileParams,
) -> Result<ModelSurface, RevolutionError> {
    let family = match name {
        "heis_plane_nonvertical" => ModelFamily::HeisPlaneNonvertical,
        "heis_plane_vertical" => ModelFamily::HeisPlaneVertical,
        "heis_quadric_2xy" => ModelFamily::HeisQuadric2xy,
        "heis_cylinder" => ModelFamily::HeisCylinder {
            radius: params.require("R")?,
        },
        "koranyi" => ModelFamily::Koranyi {
            radius: params.require("R")?,
        },
        "bubble" => ModelFamily::Bubble {
            radius: params.require("R")?,
        },
        "cc_sphere_heis" => ModelFamily::CcSphereHeis {
            radius: params.require("R")?,
        },
        "aa_plane" => ModelFamily::AaPlane {
            a: params.require("A")?,
            b: params.require("B")?,
            c: params.require("C")?,
            d: params.get_or("D", 0.0),
        },
        "aa_hyperbolic_plane" => ModelFamily::AaHyperbolicPlane,
        "aa_cylinder_circle" => ModelFamily::AaCylinderCircle {
            l0: params.require("l0")?,
            t0: params.get_or("t0", 0.0),
            radius: params.require("R")?,
        },
        "aa_cylinder_line" => ModelFamily::AaCylinderLine {
            a: params.require("A")?,
            b: params.require("B")?,
            d: params.get_or("D", 0.0),
        },
        "flask_patch" => ModelFamily::FlaskPatch {
            radius: params.require("R")?,
        },
        "cc_sphere_aa_patch" => ModelFamily::CcSphereAaPatch {
            radius: params.require("R")?,
        },
        _ => return Err(RevolutionError::UnknownFamily(name.to_string())),
    };
    model_surface(family)
}

/// Builds a model surface from a typed family description.
pub fn model_surface(family: ModelFamily) -> Result<ModelSurface, RevolutionError> {
    let mut surface = ModelSurface {
        family,
        implicit: None,
        patch: None,
        profile: None,
        profile_range: None,
        closed: None,
    };
    match family {
        ModelFamily::HeisPlaneNonvertical => {
            surface.implicit = Some(ScalarField::from_fn(XYT, |p| Jet2::variable(2, p[2])));
            surface.closed = Some(Arc::new(|p: Point| {
                let r2 = p[0] * p[0] + p[1] * p[1];
                ClosedCurvatures {
                    k: Some(-2.0 / r2),
                    h: Some(0.0),
                    q: Some(-1.0 / r2.sqrt()),
                }
            }));
        }
        ModelFamily::HeisPlaneVertical => {
            surface.implicit = Some(ScalarField::from_fn(XYT, |p| Jet2::variable(0, p[0])));
            surface.closed = Some(Arc::new(|_| ClosedCurvatures {
                k: Some(0.0),
                h: Some(0.0),
                q: Some(0.0),
            }));
        }
        ModelFamily::HeisQuadric2xy => {
            surface.implicit = Some(ScalarField::from_fn(XYT, |p| {
                let x = Jet2::variable(0, p[0]);
                let y = Jet2::variable(1, p[1]);
                let t = Jet2::variable(2, p[2]);
                t - x * y * Jet2::constant(2.0)
            }));
            surface.closed = Some(Arc::new(|_| ClosedCurvatures {
                k: Some(0.0),
                h: Some(0.0),
                q: Some(0.0),
            }));
        }
        ModelFamily::HeisCylinder { radius } => {
            let radius = require_positive("R", radius)?;
            surface.implicit = Some(ScalarField::from_fn(XYT, move |p| {
                let x = Jet2::variable(0, p[0]);
                let y = Jet2::variable(1, p[1]);
                x * x + y * y - Jet2::constant(radius * radius)
            }));
            surface.patch = Some(SurfacePatch {
                eval: Arc::new(move |s, phi| [radius * phi.cos(), radius * phi.sin(), s]),
                s_range: (-2.0 * radius, 2.0 * radius),
                phi_range: (0.0, 2.0 * PI),
            });
            surface.closed = Some(Arc::new(move |_| ClosedCurvatures {
                k: Some(0.0),
                h: Some(1.0 / radius),
                q: None,
            }));
        }
        ModelFamily::Koranyi { radius } => {
            let radius = require_positive("R", radius)?;
            let r4 = radius.powi(4);
            surface.implicit = Some(ScalarField::from_fn(XYT, move |p| {
                let x = Jet2::variable(0, p[0]);
                let y = Jet2::variable(1, p[1]);
                let t = Jet2::variable(2, p[2]);
                let s = x * x + y * y;
                s * s + t * t - Jet2::constant(r4)
            }));
            surface.profile = Some(Arc::new(move |r: f64| {
                if !(r > 0.0 && r < radius) {
                    return Err(RevolutionError::InvalidParams(format!(
                        "profile radius must lie in (0, {radius}), got {r}"
                    )));
                }
                let root = (r4 - r.powi(4)).sqrt();
                Ok(ProfileJet {
                    radius: r,
                    f: root,
                    fprime: -2.0 * r.powi(3) / root,
                    fsecond: -6.0 * r * r / root - 4.0 * r.powi(6) / root.powi(3),
                })
            }));
            surface.profile_range = Some((0.0, radius));
            surface.closed = Some(Arc::new(move |p: Point| {
                let r2 = p[0] * p[0] + p[1] * p[1];
                let rr = r2.sqrt();
                ClosedCurvatures {
                    k: Some((6.0 * r2 * r2 - 2.0 * r4) / (r2 * r4)),
                    h: Some(3.0 * rr / (radius * radius)),
                    // distortion in the graph normalisation Tu = 1 (the
                    // quartic defining function normalises differently)
                    q: Some((3.0 * r2 * r2 - r4) / (rr * radius * radius * (r4 - r2 * r2).sqrt())),
                }
            }));
        }
        ModelFamily::Bubble { radius } => {
            let radius = require_positive("R", radius)?;
            surface.implicit = Some(ScalarField::new(XYT, move |p| {
                let x = Jet2::variable(0, p[0]);
                let y = Jet2::variable(1, p[1]);
                let t = Jet2::variable(2, p[2]);
                let r2 = x * x + y * y;
                if r2.value <= 0.0 || r2.value >= 4.0 * radius * radius {
                    return Err(FieldError::Domain(format!(
                        "profile radius out of (0, 2R) at ({}, {}, {})",
                        p[0], p[1], p[2]
                    )));
                }
                let r = r2.sqrt();
                let four_r2 = Jet2::constant(4.0 * radius * radius);
                let arg = r.scale(1.0 / (2.0 * radius));
                let f = r * (four_r2 - r2).sqrt()
                    - Jet2::constant(4.0 * radius * radius) * arg.asin()
                    + Jet2::constant(2.0 * PI * radius * radius);
                Ok(t - f)
            }));
            surface.profile = Some(Arc::new(move |r: f64| {
                if !(r > 0.0 && r < 2.0 * radius) {
                    return Err(RevolutionError::InvalidParams(format!(
                        "profile radius must lie in (0, {}), got {r}",
                        2.0 * radius
                    )));
                }
                let root = (4.0 * radius * radius - r * r).sqrt();
                Ok(ProfileJet {
                    radius: r,
                    f: r * root - 4.0 * radius * radius * (r / (2.0 * radius)).asin()
                        + 2.0 * PI * radius * radius,
                    fprime: -2.0 * r * r / root,
                    fsecond: (2.0 * r.powi(3) - 16.0 * radius * radius * r) / root.powi(3),
                })
            }));
            surface.profile_range = Some((0.0, 2.0 * radius));
            surface.closed = Some(Arc::new(move |p: Point| {
                let r2 = p[0] * p[0] + p[1] * p[1];
                let rr = r2.sqrt();
                let kk = 1.0 / (radius * radius) - 2.0 / r2;
                ClosedCurvatures {
                    k: Some(kk),
                    h: Some(1.0 / radius),
                    q: Some(radius * rr * kk / (4.0 * radius * radius - r2).sqrt()),
                }
            }));
        }
        ModelFamily::CcSphereHeis { radius } => {
            let radius = require_positive("R", radius)?;
            surface.patch = Some(SurfacePatch {
                eval: Arc::new(move |k, phi| {
                    let (a, b) = cc_sphere_heis_rt(radius, k);
                    [a * phi.cos(), a * phi.sin(), b]
                }),
                s_range: (-2.0 * PI / radius, 2.0 * PI / radius),
                phi_range: (0.0, 2.0 * PI),
            });
            surface.profile = Some(Arc::new(move |k: f64| cc_sphere_heis_profile(radius, k)));
            surface.profile_range = Some((-2.0 * PI / radius, 2.0 * PI / radius));
        }
        ModelFamily::AaPlane { a, b, c, d } => {
            surface.implicit = Some(ScalarField::from_fn(ALT, move |p| {
                Jet2::variable(0, p[0]).scale(a)
                    + Jet2::variable(1, p[1]).scale(b)
                    + Jet2::variable(2, p[2]).scale(c)
                    + Jet2::constant(d)
            }));
            surface.closed = Some(Arc::new(move |p: Point| {
                let l = p[1];
                let den = (a + 2.0 * c * l) * (a + 2.0 * c * l) + 4.0 * b * b * l * l;
                let core = a.powi(3)
                    + 6.0 * a * a * c * l
                    + 4.0 * a * l * l * (2.0 * b * b + 3.0 * c * c)
                    + 8.0 * c * l.powi(3) * (b * b + c * c);
                ClosedCurvatures {
                    k: Some(-4.0 * a * core / (den * den)),
                    h: Some(-8.0 * b * l * l * (a * c + 2.0 * l * (b * b + c * c)) / den.powf(1.5)),
                    q: Some(-2.0 * core / den.powf(1.5)),
                }
            }));
        }
        ModelFamily::AaHyperbolicPlane => {
            surface.implicit = Some(ScalarField::from_fn(ALT, |p| Jet2::variable(0, p[0])));
            surface.closed = Some(Arc::new(|_| ClosedCurvatures {
                k: Some(-4.0),
                h: Some(0.0),
                q: Some(-2.0),
            }));
        }
        ModelFamily::AaCylinderCircle { l0, t0, radius } => {
            let radius = require_positive("R", radius)?;
            require_positive("l0", l0)?;
            surface.implicit = Some(ScalarField::from_fn(ALT, move |p| {
                let l = Jet2::variable(1, p[1]) - Jet2::constant(l0);
                let t = Jet2::variable(2, p[2]) - Jet2::constant(t0);
                l * l + t * t - Jet2::constant(radius * radius)
            }));
            surface.closed = Some(Arc::new(move |p: Point| ClosedCurvatures {
                k: Some(0.0),
                h: Some(2.0 * l0 / radius),
                q: Some(-2.0 * (p[2] - t0) / radius),
            }));
        }
        ModelFamily::AaCylinderLine { a, b, d } => {
            surface.implicit = Some(ScalarField::from_fn(ALT, move |p| {
                Jet2::variable(1, p[1]).scale(a)
                    + Jet2::variable(2, p[2]).scale(b)
                    + Jet2::constant(d)
            }));
            let norm = a.hypot(b);
            surface.closed = Some(Arc::new(move |_| ClosedCurvatures {
                k: Some(0.0),
                h: Some(-2.0 * a / norm),
                q: Some(-2.0 * b / norm),
            }));
        }
        ModelFamily::FlaskPatch { radius } => {
            let radius = require_positive("R", radius)?;
            surface.patch = Some(SurfacePatch {
                eval: Arc::new(move |s, phi| flask::patch_point(radius, s, phi)),
                s_range: (-PI, PI),
                phi_range: (0.0, 2.0 * PI),
            });
        }
        ModelFamily::CcSphereAaPatch { radius } => {
            let radius = require_positive("R", radius)?;
            surface.patch = Some(SurfacePatch {
                eval: Arc::new(move |k, phi| cc_sphere_aa_point(radius, k, phi)),
                s_range: (-PI / radius.sinh(), PI / radius.sinh()),
                phi_range: (0.0, 2.0 * PI),
            });
        }
    }
    Ok(surface)
}

/// `(r, t)` of the Heisenberg geodesic-sphere profile at parameter `k`.
fn cc_sphere_heis_rt(radius: f64, k: f64) -> (f64, f64) {
    if (k * radius).abs() < 1e-4 {
        // series around k = 0
        let kr = k * radius;
        let a = radius * (1.0 - kr * kr / 24.0);
        let b = -k * radius.powi(3) / 3.0 * (1.0 - kr * kr / 20.0);
        (a, b)
    } else {
        (
            2.0 * (k * radius / 2.0).sin() / k,
            2.0 * ((k * radius).sin() - k * radius) / (k * k),
        )
    }
}

/// Profile jets of the Heisenberg geodesic sphere at parameter `k`:
/// `r(k) = 2 sin(kR/2)/k`, `f'(r(k)) = (4/k) cos(kR/2)`, and `f''` by the
/// chain rule through `dr/dk`.  The identity `f'^2 + 4 r^2 = 16/k^2` holds.
pub fn cc_sphere_heis_profile(radius: f64, k: f64) -> Result<ProfileJet, RevolutionError> {
    if k == 0.0 || k.abs() >= 2.0 * PI / radius {
        return Err(RevolutionError::InvalidParams(format!(
            "parameter must lie in (-2 pi/R, 2 pi/R) \\ {{0}}, got {k}"
        )));
    }
    let th = k * radius / 2.0;
    let (s, c) = th.sin_cos();
    let (r, t) = cc_sphere_heis_rt(radius, k);
    let denom = k * radius * c - 2.0 * s; // k^2 dr/dk
    if denom.abs() < 1e-12 {
        return Err(RevolutionError::Degenerate(format!(
            "profile radius is stationary at k = {k}"
        )));
    }
    Ok(ProfileJet {
        radius: r,
        f: t,
        fprime: 4.0 / k * c,
        fsecond: -2.0 * (k * radius * s + 2.0 * c) / denom,
    })
}

/// Closed-form `K` and `H` of the Heisenberg geodesic sphere as functions of
/// the profile parameter `k`.
pub fn cc_sphere_heis_closed(radius: f64, k: f64) -> (f64, f64) {
    let th = k * radius / 2.0;
    let (s, c) = th.sin_cos();
    let kk = -k * k * (k * radius * c - s) / (k * radius * c - 2.0 * s);
    let (s2, c2) = (2.0 * th).sin_cos();
    let h = -k.abs() * (2.0 * th * c2 - s2) / (4.0 * s * (th * c - s));
    (kk, h)
}

/// The affine-additive geodesic-sphere patch.
fn cc_sphere_aa_point(radius: f64, k: f64, phi: f64) -> Point {
    let k = if k.abs() < 1e-9 { 1e-9 } else { k };
    let root = (k * k + 1.0).sqrt();
    let a = k * radius - root / k * ((k / (root + 1.0)) * (k * radius).tan()).atan();
    // continuous in k, not in kR over tan branch cuts; patch ranges keep |kR| < pi/2 .. handled by caller grids
    let lam = (root + phi.cos()) * (root + (2.0 * k * radius).cos()) / (k * k);
    let t = phi.sin() / k + (root + phi.cos()) * (2.0 * k * radius).sin() / (k * k);
    [a, lam, t]
}
