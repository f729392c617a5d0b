//! Horizontal geometry of an implicit surface `u = 0`.
//!
//! Away from characteristic points (where the horizontal gradient
//! `(Xu, Yu)` vanishes) the surface carries three invariants:
//!
//! ```text
//! H^h = X(p/l) + Y(q/l) + (a3 q - b3 p)/l            horizontal mean curvature
//! K^h = E1(c Tu/l) - (c Tu/l)^2                      horizontal Gauss curvature
//! Q^h = X(q/l) - Y(p/l) - a3 p/l - b3 q/l            symplectic distortion
//! ```
//!
//! with `p = Xu`, `q = Yu`, `l = |(p,q)|` and `E1 = -(q/l) X + (p/l) Y`.
//! All three are evaluated through exact second-order frame derivatives; the
//! `E1`-derivative in `K^h` is expanded analytically.

use crate::groups::{FrameIndex, GroupModel, StructureConstants};
use crate::jets::{
    fd_directional, frame_derivatives_2, third_order_step, FieldError, FrameDerivTable, Jet2,
    JetsError, ScalarField,
};
use crate::numeric::ls_slope;
use crate::Point;
use std::fmt;

/// Absolute tolerance of the on-surface check `|u(point)| < SURFACE_TOL`.
pub const SURFACE_TOL: f64 = 1e-9;

/// A point counts as characteristic when `l < 1e-9 * (1 + |Tu|)`.
pub fn characteristic_tol(tu: f64) -> f64 {
    1e-9 * (1.0 + tu.abs())
}

/// First-order horizontal data of `u` at a point.
#[derive(Clone, Copy, Debug)]
pub struct HorizontalFrameData {
    /// `Xu`
    pub p: f64,
    /// `Yu`
    pub q: f64,
    /// `Tu`
    pub tu: f64,
    /// `|(Xu, Yu)|`
    pub l: f64,
    pub pbar: f64,
    pub qbar: f64,
    pub characteristic: bool,
}

/// The three invariants together with the intermediate horizontal data.
#[derive(Clone, Copy, Debug)]
pub struct CurvatureReport {
    pub k_h: f64,
    pub h_h: f64,
    pub q_h: f64,
    /// `H^H = X(p/l) + Y(q/l)`
    pub hh: f64,
    /// `Q^H = X(q/l) - Y(p/l)`
    pub qh: f64,
    pub horizontal: HorizontalFrameData,
}

/// Orthonormal frame `{E1, E2, n}` of `(G, g_eps)` adapted to the surface,
/// as coordinate vectors.
#[derive(Clone, Copy, Debug)]
pub struct AdaptedFrame {
    pub e1: [f64; 3],
    pub e2: [f64; 3],
    pub n: [f64; 3],
    pub eps: f64,
}

#[derive(Debug, Clone)]
pub enum SurfaceError {
    Characteristic { point: Point, l: f64 },
    OffSurface { point: Point, value: f64 },
    TuNotOne { point: Point, tu: f64 },
    QuantityVanishes { quantity: &'static str },
    BadParameter(String),
    Jets(JetsError),
    Field(FieldError),
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceError::Characteristic { point, l } => write!(
                f,
                "characteristic point at ({},{},{}) (horizontal gradient norm {l:.3e})",
                point[0], point[1], point[2]
            ),
            SurfaceError::OffSurface { point, value } => write!(
                f,
                "point ({},{},{}) is not on the surface (u = {value:.6e})",
                point[0], point[1], point[2]
            ),
            SurfaceError::TuNotOne { point, tu } => write!(
                f,
                "relation requires Tu = 1, got Tu = {tu} at ({},{},{})",
                point[0], point[1], point[2]
            ),
            SurfaceError::QuantityVanishes { quantity } => {
                write!(
                    f,
                    "{quantity} vanishes at the base point; exponent undefined"
                )
            }
            SurfaceError::BadParameter(s) => write!(f, "{s}"),
            SurfaceError::Jets(e) => e.fmt(f),
            SurfaceError::Field(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for SurfaceError {}

impl From<JetsError> for SurfaceError {
    fn from(e: JetsError) -> Self {
        match e {
            JetsError::Field(fe) => SurfaceError::Field(fe),
            other => SurfaceError::Jets(other),
        }
    }
}

impl From<FieldError> for SurfaceError {
    fn from(e: FieldError) -> Self {
        SurfaceError::Field(e)
    }
}

fn on_surface_check(u: &ScalarField, point: Point) -> Result<(), SurfaceError> {
    let v = u.value(point)?;
    if v.abs() >= SURFACE_TOL {
        return Err(SurfaceError::OffSurface { point, value: v });
    }
    Ok(())
}

pub(crate) fn horizontal_from_table(tab: &FrameDerivTable) -> HorizontalFrameData {
    let l = tab.xu.hypot(tab.yu);
    let characteristic = l < characteristic_tol(tab.tu);
    let (pbar, qbar) = if characteristic {
        (0.0, 0.0)
    } else {
        (tab.xu / l, tab.yu / l)
    };
    HorizontalFrameData {
        p: tab.xu,
        q: tab.yu,
        tu: tab.tu,
        l,
        pbar,
        qbar,
        characteristic,
    }
}

/// Horizontal data of `u` at `point` (which must lie on the surface).
pub fn horizontal_data(
    model: &GroupModel,
    u: &ScalarField,
    point: Point,
) -> Result<HorizontalFrameData, SurfaceError> {
    on_surface_check(u, point)?;
    let tab = frame_derivatives_2(model, u, point)?;
    Ok(horizontal_from_table(&tab))
}

/// Curvature invariants from an already-computed derivative table.
pub(crate) fn report_from_table(
    sc: &StructureConstants,
    tab: &FrameDerivTable,
    point: Point,
) -> Result<CurvatureReport, SurfaceError> {
    let hd = horizontal_from_table(tab);
    if hd.characteristic {
        return Err(SurfaceError::Characteristic { point, l: hd.l });
    }
    let (p, q, tu, l) = (hd.p, hd.q, hd.tu, hd.l);
    let xl = (p * tab.xxu + q * tab.xyu) / l;
    let yl = (p * tab.yxu + q * tab.yyu) / l;
    let hh = (tab.xxu + tab.yyu) / l - (p * xl + q * yl) / (l * l);
    let qh = (tab.xyu - tab.yxu) / l - (q * xl - p * yl) / (l * l);
    let h_h = hh + (sc.a3 * hd.qbar - sc.b3 * hd.pbar);
    let q_h = qh - sc.a3 * hd.pbar - sc.b3 * hd.qbar;
    // K^h = c E1(Tu)/l - c Tu E1(l)/l^2 - c^2 (Tu/l)^2
    let e1_tu = (-q * tab.xtu + p * tab.ytu) / l;
    let e1_l = (-q * xl + p * yl) / l;
    let k_h = sc.c * e1_tu / l - sc.c * tu * e1_l / (l * l) - (sc.c * tu / l) * (sc.c * tu / l);
    Ok(CurvatureReport {
        k_h,
        h_h,
        q_h,
        hh,
        qh,
        horizontal: hd,
    })
}

/// `K^h`, `H^h`, `Q^h` of the surface `u = 0` at an on-surface,
/// non-characteristic point.
pub fn curvatures(
    model: &GroupModel,
    u: &ScalarField,
    point: Point,
) -> Result<CurvatureReport, SurfaceError> {
    on_surface_check(u, point)?;
    curvatures_off_surface(model, u, point)
}

/// Same as [`curvatures`] without the on-surface check; the formulas are
/// defined wherever the horizontal gradient does not vanish, which lets the
/// invariants be evaluated as ambient fields on grids.
pub fn curvatures_off_surface(
    model: &GroupModel,
    u: &ScalarField,
    point: Point,
) -> Result<CurvatureReport, SurfaceError> {
    let tab = frame_derivatives_2(model, u, point)?;
    report_from_table(&model.constants, &tab, point)
}

/// `E1(l)` expanded through second-order frame derivatives.
pub fn e1_of_horizontal_norm(
    model: &GroupModel,
    u: &ScalarField,
    point: Point,
) -> Result<f64, SurfaceError> {
    let tab = frame_derivatives_2(model, u, point)?;
    let hd = horizontal_from_table(&tab);
    if hd.characteristic {
        return Err(SurfaceError::Characteristic { point, l: hd.l });
    }
    let xl = (hd.p * tab.xxu + hd.q * tab.xyu) / hd.l;
    let yl = (hd.p * tab.yxu + hd.q * tab.yyu) / hd.l;
    Ok(-hd.qbar * xl + hd.pbar * yl)
}

/// Coordinate components of `E1 = -(q/l) X + (p/l) Y` at `point`.
pub fn e1_vector(
    model: &GroupModel,
    u: &ScalarField,
    point: Point,
) -> Result<[f64; 3], SurfaceError> {
    let tab = frame_derivatives_2(model, u, point)?;
    let hd = horizontal_from_table(&tab);
    if hd.characteristic {
        return Err(SurfaceError::Characteristic { point, l: hd.l });
    }
    let xv = model.frame(FrameIndex::X).vector(point);
    let yv = model.frame(FrameIndex::Y).vector(point);
    Ok([
        -hd.qbar * xv[0] + hd.pbar * yv[0],
        -hd.qbar * xv[1] + hd.pbar * yv[1],
        -hd.qbar * xv[2] + hd.pbar * yv[2],
    ])
}

/// Adapted orthonormal frame `{E1, E2, n}` of `(G, g_eps)` along the surface.
pub fn adapted_frame(
    model: &GroupModel,
    u: &ScalarField,
    point: Point,
    eps: f64,
) -> Result<AdaptedFrame, SurfaceError> {
    if !(eps > 0.0) {
        return Err(SurfaceError::BadParameter(format!(
            "approximation parameter must be positive, got {eps}"
        )));
    }
    let tab = frame_derivatives_2(model, u, point)?;
    let hd = horizontal_from_table(&tab);
    if hd.characteristic {
        return Err(SurfaceError::Characteristic { point, l: hd.l });
    }
    let r = eps * hd.tu;
    let l_eps = hd.l.hypot(r);
    let rbar = r / hd.l;
    let xv = model.frame(FrameIndex::X).vector(point);
    let yv = model.frame(FrameIndex::Y).vector(point);
    let tv = model.frame(FrameIndex::T).vector(point);
    let lin = |cx: f64, cy: f64, ct: f64| {
        [
            cx * xv[0] + cy * yv[0] + ct * tv[0],
            cx * xv[1] + cy * yv[1] + ct * tv[1],
            cx * xv[2] + cy * yv[2] + ct * tv[2],
        ]
    };
    let s = hd.l / l_eps;
    Ok(AdaptedFrame {
        e1: lin(-hd.qbar, hd.pbar, 0.0),
        e2: lin(s * rbar * hd.pbar, s * rbar * hd.qbar, -s * eps),
        n: lin(hd.p / l_eps, hd.q / l_eps, eps * eps * hd.tu / l_eps),
        eps,
    })
}

/// Residual of the intrinsic identity
/// `K^h = E1(Q^h) - E1E1(log l) - (Q^h - E1(log l))^2`,
/// with the outer `E1`-derivatives taken by central differences over the
/// analytic inner quantities.
pub fn egregium_residual(
    model: &GroupModel,
    u: &ScalarField,
    point: Point,
) -> Result<f64, SurfaceError> {
    let report = curvatures_off_surface(model, u, point)?;
    let h = third_order_step(point);

    let m1 = model.clone();
    let u1 = u.clone();
    let q_functional = move |pt: Point| -> Result<f64, JetsError> {
        curvatures_off_surface(&m1, &u1, pt)
            .map(|r| r.q_h)
            .map_err(surface_to_jets)
    };
    let m2 = model.clone();
    let u2 = u.clone();
    let e1_logl = move |pt: Point| -> Result<f64, JetsError> {
        let tab = frame_derivatives_2(&m2, &u2, pt)?;
        let hd = horizontal_from_table(&tab);
        if hd.characteristic {
            return Err(JetsError::Field(FieldError::Numeric(
                "characteristic point inside finite-difference stencil".into(),
            )));
        }
        let xl = (hd.p * tab.xxu + hd.q * tab.xyu) / hd.l;
        let yl = (hd.p * tab.yxu + hd.q * tab.yyu) / hd.l;
        Ok((-hd.qbar * xl + hd.pbar * yl) / hd.l)
    };
    let m3 = model.clone();
    let u3 = u.clone();
    let dir = move |pt: Point| e1_vector(&m3, &u3, pt).map_err(surface_to_jets);

    let e1_q = fd_directional(model, q_functional, &dir, point, h)?;
    let e1e1_logl = fd_directional(model, e1_logl.clone(), &dir, point, h)?;
    let g0 = e1_logl(point)?;
    let rhs = e1_q - e1e1_logl - (report.q_h - g0) * (report.q_h - g0);
    Ok((report.k_h - rhs).abs())
}

fn surface_to_jets(e: SurfaceError) -> JetsError {
    match e {
        SurfaceError::Jets(j) => j,
        SurfaceError::Field(f) => JetsError::Field(f),
        other => JetsError::Field(FieldError::Numeric(other.to_string())),
    }
}

/// Residual of `K^h + (c/l) Q^h` on surfaces normalised to `Tu = 1`.
pub fn tu1_relation_residual(
    model: &GroupModel,
    u: &ScalarField,
    point: Point,
) -> Result<f64, SurfaceError> {
    let report = curvatures_off_surface(model, u, point)?;
    if (report.horizontal.tu - 1.0).abs() >= 1e-12 {
        return Err(SurfaceError::TuNotOne {
            point,
            tu: report.horizontal.tu,
        });
    }
    Ok((report.k_h + model.constants.c / report.horizontal.l * report.q_h).abs())
}

/// Concrete isometries (and Heisenberg dilations) used as test
/// transformations; each one acts by an affine chart map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Isometry {
    HeisTranslation {
        x0: f64,
        y0: f64,
        t0: f64,
    },
    HeisRotation {
        theta: f64,
    },
    HeisConjugation,
    /// Not an isometry: scales the metric by `delta`.
    HeisDilation {
        delta: f64,
    },
    AaTranslation {
        a0: f64,
        l0: f64,
        t0: f64,
    },
    AaConjugation,
}

/// An affine chart map `p -> L p + b`.
#[derive(Clone, Copy, Debug)]
pub struct AffineMap {
    /// Rows are the component maps.
    pub linear: [[f64; 3]; 3],
    pub offset: [f64; 3],
}

impl AffineMap {
    pub fn apply(&self, p: Point) -> Point {
        let l = &self.linear;
        [
            l[0][0] * p[0] + l[0][1] * p[1] + l[0][2] * p[2] + self.offset[0],
            l[1][0] * p[0] + l[1][1] * p[1] + l[1][2] * p[2] + self.offset[1],
            l[2][0] * p[0] + l[2][1] * p[1] + l[2][2] * p[2] + self.offset[2],
        ]
    }

    /// Pullback of a jet through this affine map: the jet of `u ∘ φ` at `p`
    /// from the jet of `u` at `φ(p)`.
    pub fn pull_back(&self, jet: &Jet2) -> Jet2 {
        let l = &self.linear;
        let mut grad = [0.0; 3];
        for i in 0..3 {
            for j in 0..3 {
                grad[i] += l[j][i] * jet.grad[j];
            }
        }
        let mut hess6 = [0.0; 6];
        let mut slot = 0;
        for i in 0..3 {
            for m in i..3 {
                let mut acc = 0.0;
                for j in 0..3 {
                    for k in 0..3 {
                        acc += l[j][i] * l[k][m] * jet.hess(j, k);
                    }
                }
                hess6[slot] = acc;
                slot += 1;
            }
        }
        Jet2::new(jet.value, grad, hess6)
    }
}

impl Isometry {
    pub fn chart(&self) -> [&'static str; 3] {
        match self {
            Isometry::HeisTranslation { .. }
            | Isometry::HeisRotation { .. }
            | Isometry::HeisConjugation
            | Isometry::HeisDilation { .. } => ["x", "y", "t"],
            Isometry::AaTranslation { .. } | Isometry::AaConjugation => ["a", "l", "t"],
        }
    }

    fn validate(&self) -> Result<(), SurfaceError> {
        match self {
            Isometry::HeisDilation { delta } if !(*delta > 0.0) => Err(SurfaceError::BadParameter(
                format!("dilation factor must be positive, got {delta}"),
            )),
            Isometry::AaTranslation { l0, .. } if !(*l0 > 0.0) => Err(SurfaceError::BadParameter(
                format!("translation requires l0 > 0, got {l0}"),
            )),
            _ => Ok(()),
        }
    }

    /// The transformation itself.
    pub fn forward(&self) -> AffineMap {
        match *self {
            Isometry::HeisTranslation { x0, y0, t0 } => AffineMap {
                linear: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [2.0 * y0, -2.0 * x0, 1.0]],
                offset: [x0, y0, t0],
            },
            Isometry::HeisRotation { theta } => {
                let (s, c) = theta.sin_cos();
                AffineMap {
                    linear: [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]],
                    offset: [0.0; 3],
                }
            }
            Isometry::HeisConjugation => AffineMap {
                linear: [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]],
                offset: [0.0; 3],
            },
            Isometry::HeisDilation { delta } => AffineMap {
                linear: [
                    [delta, 0.0, 0.0],
                    [0.0, delta, 0.0],
                    [0.0, 0.0, delta * delta],
                ],
                offset: [0.0; 3],
            },
            Isometry::AaTranslation { a0, l0, t0 } => AffineMap {
                linear: [[1.0, 0.0, 0.0], [0.0, l0, 0.0], [0.0, 0.0, l0]],
                offset: [a0, 0.0, t0],
            },
            Isometry::AaConjugation => AffineMap {
                linear: [[-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]],
                offset: [0.0; 3],
            },
        }
    }

    /// The inverse transformation.
    pub fn inverse(&self) -> AffineMap {
        match *self {
            Isometry::HeisTranslation { x0, y0, t0 } => AffineMap {
                linear: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [-2.0 * y0, 2.0 * x0, 1.0]],
                offset: [-x0, -y0, -t0],
            },
            Isometry::HeisRotation { theta } => Isometry::HeisRotation { theta: -theta }.forward(),
            Isometry::HeisConjugation => self.forward(),
            Isometry::HeisDilation { delta } => {
                Isometry::HeisDilation { delta: 1.0 / delta }.forward()
            }
            Isometry::AaTranslation { a0, l0, t0 } => AffineMap {
                linear: [[1.0, 0.0, 0.0], [0.0, 1.0 / l0, 0.0], [0.0, 0.0, 1.0 / l0]],
                offset: [-a0, 0.0, -t0 / l0],
            },
            Isometry::AaConjugation => self.forward(),
        }
    }

    pub fn apply(&self, p: Point) -> Point {
        self.forward().apply(p)
    }
}

/// Transports `u` along `iso`: the returned field is `u' = u ∘ iso^{-1}`,
/// whose zero set is the image of the original surface, with exact jet
/// transport through the affine inverse map.
pub fn pushforward_isometry(u: &ScalarField, iso: &Isometry) -> Result<ScalarField, SurfaceError> {
    iso.validate()?;
    if u.chart() != iso.chart() {
        return Err(SurfaceError::BadParameter(format!(
            "isometry acts on chart ({:?}), field lives on ({:?})",
            iso.chart(),
            u.chart()
        )));
    }
    let inv = iso.inverse();
    let base = u.clone();
    Ok(ScalarField::new(u.chart(), move |p| {
        let q = inv.apply(p);
        let jet = base.jet(q)?;
        Ok(inv.pull_back(&jet))
    }))
}

/// Quantity measured by [`scaling_exponent`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalingQuantity {
    K,
    H,
    Q,
}

/// Measured dilation exponent on the Heisenberg group: the least-squares
/// slope of `log |quantity|` at the dilated points against `log(1/delta)`.
pub fn scaling_exponent(
    u: &ScalarField,
    quantity: ScalingQuantity,
    point: Point,
    deltas: &[f64],
) -> Result<f64, SurfaceError> {
    let model = crate::groups::builtin_model(crate::groups::BuiltinModel::Heisenberg);
    if u.chart() != model.chart() {
        return Err(SurfaceError::BadParameter(
            "dilation scaling is a Heisenberg-chart operation".into(),
        ));
    }
    if deltas.len() < 2 {
        return Err(SurfaceError::BadParameter(
            "need at least two dilation factors".into(),
        ));
    }
    let pick = |r: &CurvatureReport| match quantity {
        ScalingQuantity::K => r.k_h,
        ScalingQuantity::H => r.h_h,
        ScalingQuantity::Q => r.q_h,
    };
    let base = curvatures(&model, u, point)?;
    let name = match quantity {
        ScalingQuantity::K => "K^h",
        ScalingQuantity::H => "H^h",
        ScalingQuantity::Q => "Q^h",
    };
    if pick(&base).abs() < 1e-13 {
        return Err(SurfaceError::QuantityVanishes { quantity: name });
    }
    let mut xs = Vec::with_capacity(deltas.len());
    let mut ys = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let iso = Isometry::HeisDilation { delta };
        iso.validate()?;
        let pushed = pushforward_isometry(u, &iso)?;
        let report = curvatures(&model, &pushed, iso.apply(point))?;
        xs.push((1.0 / delta).ln());
        ys.push(pick(&report).abs().ln());
    }
    ls_slope(&xs, &ys).ok_or(SurfaceError::BadParameter(
        "degenerate dilation list".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::field_from_text;
    use crate::groups::{builtin_model, BuiltinModel};
    use crate::numeric::SplitMix64;

    fn heis() -> GroupModel {
        builtin_model(BuiltinModel::Heisenberg)
    }

    fn aa() -> GroupModel {
        builtin_model(BuiltinModel::AffineAdditive)
    }

    #[test]
    fn horizontal_data_on_flat_plane() {
        let m = heis();
        let u = field_from_text("t", m.chart()).unwrap();
        let hd = horizontal_data(&m, &u, [1.0, 0.0, 0.0]).unwrap();
        assert_eq!((hd.p, hd.q, hd.l, hd.tu), (0.0, -2.0, 2.0, 1.0));
        assert_eq!((hd.pbar, hd.qbar), (0.0, -1.0));
        assert!(!hd.characteristic);
        assert!((hd.l * hd.l - (hd.p * hd.p + hd.q * hd.q)).abs() < 1e-14 * hd.l * hd.l);
        assert!((hd.pbar * hd.pbar + hd.qbar * hd.qbar - 1.0).abs() < 1e-12);
    }

    #[test]
    fn origin_of_flat_plane_is_characteristic() {
        let m = heis();
        let u = field_from_text("t", m.chart()).unwrap();
        let hd = horizontal_data(&m, &u, [0.0, 0.0, 0.0]).unwrap();
        assert!(hd.characteristic);
        let e = curvatures(&m, &u, [0.0, 0.0, 0.0]).unwrap_err();
        assert!(matches!(e, SurfaceError::Characteristic { .. }));
        assert!(e.to_string().contains("characteristic point at (0,0,0)"));
    }

    #[test]
    fn horizontal_data_aa_plane() {
        let m = aa();
        let u = field_from_text("a", m.chart()).unwrap();
        let hd = horizontal_data(&m, &u, [0.0, 1.0, 0.0]).unwrap();
        assert_eq!((hd.p, hd.q, hd.l, hd.tu), (0.0, 1.0, 1.0, -1.0));
    }

    #[test]
    fn off_surface_points_are_rejected() {
        let m = heis();
        let u = field_from_text("t", m.chart()).unwrap();
        let e = horizontal_data(&m, &u, [1.0, 0.0, 0.5]).unwrap_err();
        assert!(matches!(e, SurfaceError::OffSurface { .. }));
    }

    #[test]
    fn vertical_plane_is_flat() {
        let m = heis();
        let u = field_from_text("x", m.chart()).unwrap();
        let r = curvatures(&m, &u, [0.0, 2.0, 5.0]).unwrap();
        assert!(r.k_h.abs() < 1e-14);
        assert!(r.h_h.abs() < 1e-14);
        assert!(r.q_h.abs() < 1e-14);
    }

    #[test]
    fn horizontal_plane_curvatures() {
        let m = heis();
        let u = field_from_text("t", m.chart()).unwrap();
        let r = curvatures(&m, &u, [1.0, 0.0, 0.0]).unwrap();
        assert!(r.h_h.abs() < 1e-14);
        assert!((r.k_h + 2.0).abs() < 1e-12);
        assert!((r.q_h + 1.0).abs() < 1e-12);
        // report invariants
        let hd = &r.horizontal;
        let sc = &m.constants;
        assert!((r.q_h - (r.qh - sc.a3 * hd.pbar - sc.b3 * hd.qbar)).abs() < 1e-12);
        assert!((r.h_h - (r.hh + sc.a3 * hd.qbar - sc.b3 * hd.pbar)).abs() < 1e-12);
    }

    #[test]
    fn aa_vertical_plane_curvatures() {
        let m = aa();
        let u = field_from_text("a", m.chart()).unwrap();
        let r = curvatures(&m, &u, [0.0, 3.0, 1.0]).unwrap();
        assert!((r.k_h + 4.0).abs() < 1e-12);
        assert!(r.h_h.abs() < 1e-14);
        assert!((r.q_h + 2.0).abs() < 1e-12);
    }

    #[test]
    fn quadric_graph_is_flat() {
        let m = heis();
        let u = field_from_text("t - 2*x*y", m.chart()).unwrap();
        let r = curvatures(&m, &u, [1.0, 1.0, 2.0]).unwrap();
        assert!(r.k_h.abs() < 1e-13);
        assert!(r.h_h.abs() < 1e-13);
        assert!(r.q_h.abs() < 1e-13);
    }

    #[test]
    fn cylindrical_fields_have_zero_gauss_curvature() {
        // Tu = 0 forces K^h = 0
        let m = heis();
        let u = field_from_text("x^2 + y^2 - 4", m.chart()).unwrap();
        let p = [2.0, 0.0, 7.0];
        let r = curvatures(&m, &u, p).unwrap();
        assert!(r.k_h.abs() < 1e-12);
        assert!((r.h_h - 0.5).abs() < 1e-12); // circular cylinder of radius 2

        let g = field_from_text("x*y - 1", m.chart()).unwrap();
        let r = curvatures(&m, &g, [1.0, 1.0, 3.0]).unwrap();
        assert!(r.k_h.abs() < 1e-12);
    }

    #[test]
    fn invariants_are_scale_free_in_u() {
        let m = heis();
        let u = field_from_text("(x^2+y^2)^2 + t^2 - 1", m.chart()).unwrap();
        let su = u.scaled(7.25);
        let r0 = 0.5f64.sqrt();
        let p = [r0 * 0.6f64.cos(), r0 * 0.6f64.sin(), (0.75f64).sqrt()];
        let a = curvatures(&m, &u, p).unwrap();
        let b = curvatures_off_surface(&m, &su, p).unwrap();
        assert!((a.k_h - b.k_h).abs() < 1e-12 * (1.0 + a.k_h.abs()));
        assert!((a.h_h - b.h_h).abs() < 1e-12 * (1.0 + a.h_h.abs()));
        assert!((a.q_h - b.q_h).abs() < 1e-12 * (1.0 + a.q_h.abs()));
    }

    #[test]
    fn adapted_frame_is_g_eps_orthonormal() {
        let m = heis();
        let u = field_from_text("(x^2+y^2)^2 + t^2 - 1", m.chart()).unwrap();
        let r0 = 0.5f64.sqrt();
        let p = [r0, 0.0, (0.75f64).sqrt()];
        for eps in [1.0, 0.1, 0.01] {
            let fr = adapted_frame(&m, &u, p, eps).unwrap();
            // expand coordinate vectors back in the frame (X, Y, T)
            let xv = m.frame(FrameIndex::X).vector(p);
            let yv = m.frame(FrameIndex::Y).vector(p);
            let tv = m.frame(FrameIndex::T).vector(p);
            let to_frame = |v: [f64; 3]| {
                // solve [xv yv tv] c = v; frames here are unitriangular enough
                // to solve directly via 3x3 inversion
                let a = [
                    [xv[0], yv[0], tv[0]],
                    [xv[1], yv[1], tv[1]],
                    [xv[2], yv[2], tv[2]],
                ];
                solve3(a, v)
            };
            let ge = |u: [f64; 3], v: [f64; 3]| {
                let cu = to_frame(u);
                let cv = to_frame(v);
                cu[0] * cv[0] + cu[1] * cv[1] + cu[2] * cv[2] / (eps * eps)
            };
            assert!((ge(fr.e1, fr.e1) - 1.0).abs() < 1e-10);
            assert!((ge(fr.e2, fr.e2) - 1.0).abs() < 1e-10);
            assert!((ge(fr.n, fr.n) - 1.0).abs() < 1e-10);
            assert!(ge(fr.e1, fr.e2).abs() < 1e-10);
            assert!(ge(fr.e1, fr.n).abs() < 1e-10);
            assert!(ge(fr.e2, fr.n).abs() < 1e-10);
        }
    }

    fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> [f64; 3] {
        let det = |m: [[f64; 3]; 3]| {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        };
        let d = det(a);
        let mut out = [0.0; 3];
        for k in 0..3 {
            let mut m = a;
            for row in 0..3 {
                m[row][k] = b[row];
            }
            out[k] = det(m) / d;
        }
        out
    }

    #[test]
    fn egregium_residual_examples() {
        let m = heis();
        let u = field_from_text("t", m.chart()).unwrap();
        let r = egregium_residual(&m, &u, [1.0, 0.0, 0.0]).unwrap();
        assert!(r < 1e-5, "flat plane residual {r}");

        let k = field_from_text("(x^2+y^2)^2 + t^2 - 1", m.chart()).unwrap();
        let r0 = 0.5f64.sqrt();
        let p = [r0 * 0.4f64.cos(), r0 * 0.4f64.sin(), (0.75f64).sqrt()];
        let r = egregium_residual(&m, &k, p).unwrap();
        assert!(r < 1e-5, "gauge sphere residual {r}");

        let m = aa();
        let u = field_from_text("a", m.chart()).unwrap();
        let r = egregium_residual(&m, &u, [0.0, 1.0, 0.0]).unwrap();
        assert!(r < 1e-5, "hyperbolic plane residual {r}");
    }

    #[test]
    fn tu1_relation_examples() {
        let m = heis();
        let u = field_from_text("t", m.chart()).unwrap();
        let r = tu1_relation_residual(&m, &u, [1.0, 0.0, 0.0]).unwrap();
        assert!(r < 1e-10, "residual {r}");

        let q = field_from_text("t - 2*x*y", m.chart()).unwrap();
        let r = tu1_relation_residual(&m, &q, [1.0, 1.0, 2.0]).unwrap();
        assert!(r < 1e-10, "residual {r}");

        let two_t = field_from_text("2*t", m.chart()).unwrap();
        let e = tu1_relation_residual(&m, &two_t, [1.0, 0.0, 0.0]).unwrap_err();
        assert!(matches!(e, SurfaceError::TuNotOne { .. }));
    }

    #[test]
    fn rotation_fixes_flat_plane() {
        let m = heis();
        let u = field_from_text("t", m.chart()).unwrap();
        let pushed = pushforward_isometry(
            &u,
            &Isometry::HeisRotation {
                theta: std::f64::consts::FRAC_PI_3,
            },
        )
        .unwrap();
        let mut rng = SplitMix64::new(5);
        for _ in 0..10 {
            let p = [
                rng.uniform(-2.0, 2.0),
                rng.uniform(-2.0, 2.0),
                rng.uniform(-2.0, 2.0),
            ];
            let a = u.jet(p).unwrap();
            let b = pushed.jet(p).unwrap();
            assert!((a.value - b.value).abs() < 1e-14);
            for i in 0..3 {
                assert!((a.grad[i] - b.grad[i]).abs() < 1e-14);
            }
        }
        let _ = m;
    }

    #[test]
    fn conjugation_negates_aa_height() {
        let u = field_from_text("a", ["a", "l", "t"]).unwrap();
        let pushed = pushforward_isometry(&u, &Isometry::AaConjugation).unwrap();
        let p = [0.7, 2.0, -1.0];
        assert!((pushed.value(p).unwrap() + 0.7).abs() < 1e-15);
    }

    #[test]
    fn curvatures_transport_along_isometries() {
        let m = heis();
        let u = field_from_text("(x^2+y^2)^2 + t^2 - 1", m.chart()).unwrap();
        let r0 = 0.5f64.sqrt();
        let p = [r0 * 0.9f64.cos(), r0 * 0.9f64.sin(), (0.75f64).sqrt()];
        let base = curvatures(&m, &u, p).unwrap();
        let mut rng = SplitMix64::new(99);
        for _ in 0..20 {
            let iso = match rng.next_u64() % 3 {
                0 => Isometry::HeisTranslation {
                    x0: rng.uniform(-1.0, 1.0),
                    y0: rng.uniform(-1.0, 1.0),
                    t0: rng.uniform(-1.0, 1.0),
                },
                1 => Isometry::HeisRotation {
                    theta: rng.uniform(0.0, std::f64::consts::TAU),
                },
                _ => Isometry::HeisConjugation,
            };
            let pushed = pushforward_isometry(&u, &iso).unwrap();
            let moved = curvatures(&m, &pushed, iso.apply(p)).unwrap();
            assert!((moved.k_h - base.k_h).abs() < 1e-8 * (1.0 + base.k_h.abs()));
            assert!((moved.h_h - base.h_h).abs() < 1e-8 * (1.0 + base.h_h.abs()));
            // conjugation reverses the horizontal orientation and with it the
            // sign of the distortion
            let expected_q = if iso == Isometry::HeisConjugation {
                -base.q_h
            } else {
                base.q_h
            };
            assert!((moved.q_h - expected_q).abs() < 1e-8 * (1.0 + base.q_h.abs()));
        }
    }

    #[test]
    fn dilation_scaling_exponents_on_gauge_sphere() {
        let u = field_from_text("(x^2+y^2)^2 + t^2 - 1", ["x", "y", "t"]).unwrap();
        let r0 = 0.5f64.sqrt();
        let p = [r0, 0.0, (0.75f64).sqrt()];
        let deltas = [2.0, 4.0, 8.0];
        let eh = scaling_exponent(&u, ScalingQuantity::H, p, &deltas).unwrap();
        assert!((eh - 1.0).abs() < 1e-6, "H exponent {eh}");
        let eq = scaling_exponent(&u, ScalingQuantity::Q, p, &deltas).unwrap();
        assert!((eq - 1.0).abs() < 1e-6, "Q exponent {eq}");
        let ek = scaling_exponent(&u, ScalingQuantity::K, p, &deltas).unwrap();
        assert!((ek - 2.0).abs() < 1e-6, "K exponent {ek}");
    }

    #[test]
    fn scaling_exponent_rejects_vanishing_quantity() {
        let u = field_from_text("t", ["x", "y", "t"]).unwrap();
        let e = scaling_exponent(&u, ScalingQuantity::H, [1.0, 0.0, 0.0], &[2.0, 4.0]).unwrap_err();
        assert!(matches!(e, SurfaceError::QuantityVanishes { .. }));
    }

    #[test]
    fn bad_isometry_parameters() {
        let u = field_from_text("t", ["x", "y", "t"]).unwrap();
        assert!(pushforward_isometry(&u, &Isometry::HeisDilation { delta: 0.0 }).is_err());
        let v = field_from_text("a", ["a", "l", "t"]).unwrap();
        assert!(pushforward_isometry(
            &v,
            &Isometry::AaTranslation {
                a0: 0.0,
                l0: -1.0,
                t0: 0.0
            }
        )
        .is_err());
        // chart mismatch
        assert!(pushforward_isometry(&v, &Isometry::HeisConjugation).is_err());
    }
}
