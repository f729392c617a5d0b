//! Riemannian approximation of the horizontal invariants.
//!
//! For `eps > 0` the metric `g_eps` makes `{X, Y, eps T}` orthonormal.  In
//! the adapted surface frame `{E1, E2, n}` the exterior derivatives of the
//! dual coframe carry eight coefficient functions `A1..A3`, `B1..B3`, `C1`,
//! `C2`; the second fundamental form, the mean curvature
//! `H^eps = A1 + B2` and the Gauss curvature
//! `K^eps = -E1(B3) + E2(A3) - A3^2 - B3^2` are assembled from them.  As
//! `eps -> 0+` these converge to the horizontal invariants `H^h` and `K^h`.
//!
//! All eight coefficients are analytic in the second-order frame derivatives
//! of `u`; only the genuinely third-order terms (`E1(B3)`, `E2(A3)` and the
//! ambient sectional-curvature terms) take one central-difference layer.

use crate::groups::{FrameIndex, GroupModel};
use crate::jets::{fd_directional, frame_derivatives_2, third_order_step, JetsError, ScalarField};
use crate::numeric::loglog_slope;
use crate::surface::{curvatures_off_surface, horizontal_from_table, SurfaceError};
use crate::Point;

/// Geometric spacing used by convergence studies.
pub const DEFAULT_EPS_LIST: [f64; 7] = [1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4];

/// Coframe coefficients, second fundamental form and curvatures of
/// `(Sigma, g_eps)` at a point.
#[derive(Clone, Copy, Debug)]
pub struct EpsilonGeometry {
    pub eps: f64,
    /// `|(Xu, Yu)|`
    pub l: f64,
    /// `sqrt(l^2 + (eps Tu)^2)`
    pub l_eps: f64,
    /// `eps Tu / l_eps`
    pub rbar_eps: f64,
    /// `Tu / l_eps^2 = rbar_eps / (eps l_eps)`
    pub rbar_over_eps_leps: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub c1: f64,
    pub c2: f64,
    /// Second fundamental form in the basis `{E1, E2}`.
    pub ii: [[f64; 2]; 2],
    /// `A1 + B2`
    pub h_eps: f64,
    /// `-E1(B3) + E2(A3) - A3^2 - B3^2`
    pub k_eps_sigma: f64,
    /// Ambient sectional curvatures of the planes spanned by the adapted frame.
    pub sec_e1e2: f64,
    pub sec_e1n: f64,
    pub sec_e2n: f64,
}

/// Analytic coefficient data at one point.
struct Abc {
    a1: f64,
    a2: f64,
    a3: f64,
    b1: f64,
    b2: f64,
    b3: f64,
    c1: f64,
    c2: f64,
    l: f64,
    l_eps: f64,
    tu: f64,
    e1_coords: [f64; 3],
    e2_coords: [f64; 3],
    n_coords: [f64; 3],
}

fn abc_at(model: &GroupModel, u: &ScalarField, eps: f64, pt: Point) -> Result<Abc, SurfaceError> {
    let sc = &model.constants;
    let tab = frame_derivatives_2(model, u, pt)?;
    let hd = horizontal_from_table(&tab);
    if hd.characteristic {
        return Err(SurfaceError::Characteristic { point: pt, l: hd.l });
    }
    let (p, q, tau, l) = (hd.p, hd.q, hd.tu, hd.l);
    let (pbar, qbar) = (hd.pbar, hd.qbar);
    let r = eps * tau;
    let l_eps = l.hypot(r);
    let rbar = r / l;

    // first derivatives of p, q, Tu along X, Y, T
    let dp = [tab.xxu, tab.yxu, tab.txu(sc)];
    let dq = [tab.xyu, tab.yyu, tab.tyu(sc)];
    let dtau = [tab.xtu, tab.ytu, tab.ttu];

    let mut dl = [0.0; 3];
    let mut dleps = [0.0; 3];
    let mut dpbar = [0.0; 3];
    let mut dqbar = [0.0; 3];
    let mut drbar = [0.0; 3];
    let mut dloglol = [0.0; 3];
    let mut dlogleps = [0.0; 3];
    for d in 0..3 {
        dl[d] = (p * dp[d] + q * dq[d]) / l;
        dleps[d] = (p * dp[d] + q * dq[d] + eps * eps * tau * dtau[d]) / l_eps;
        dpbar[d] = dp[d] / l - p * dl[d] / (l * l);
        dqbar[d] = dq[d] / l - q * dl[d] / (l * l);
        drbar[d] = eps * (dtau[d] * l - tau * dl[d]) / (l * l);
        dloglol[d] = dleps[d] / l_eps - dl[d] / l;
        dlogleps[d] = dleps[d] / l_eps;
    }

    // adapted frame in frame components (X, Y, T)
    let s = l / l_eps;
    let e1f = [-qbar, pbar, 0.0];
    let e2f = [s * rbar * pbar, s * rbar * qbar, -s * eps];
    let nf = [p / l_eps, q / l_eps, eps * eps * tau / l_eps];
    let apply = |vf: [f64; 3], dv: [f64; 3]| vf[0] * dv[0] + vf[1] * dv[1] + vf[2] * dv[2];

    let hh = dpbar[0] + dqbar[1];
    let rot = sc.a3 * qbar - sc.b3 * pbar;
    let a1 = s
        * (hh
            + rot
            + eps
                * rbar
                * (sc.b2 * pbar * pbar + sc.a1 * qbar * qbar - (sc.a2 + sc.b1) * pbar * qbar));
    let a2 = qbar * eps * dpbar[2] - pbar * eps * dqbar[2]
        + eps * ((sc.b2 - sc.a1) * pbar * qbar + sc.b1 * pbar * pbar - sc.a2 * qbar * qbar);
    let a3 = s
        * (-rbar * (hh + rot)
            + eps
                * rbar
                * (sc.b2 * pbar * pbar + sc.a1 * qbar * qbar - (sc.b1 + sc.a2) * pbar * qbar));
    let b1 = rbar * apply(e1f, dloglol) - apply(e1f, drbar) + sc.c / eps;
    let b2 = apply(nf, dloglol) - rbar * apply(e2f, dloglol) - apply(e2f, drbar);
    let b3 = apply(e1f, dloglol) - rbar * sc.c / eps;
    let c1 = apply(e1f, dlogleps);
    let c2 = apply(e2f, dlogleps);

    let xv = model.frame(FrameIndex::X).vector(pt);
    let yv = model.frame(FrameIndex::Y).vector(pt);
    let tv = model.frame(FrameIndex::T).vector(pt);
    let coords = |vf: [f64; 3]| {
        [
            vf[0] * xv[0] + vf[1] * yv[0] + vf[2] * tv[0],
            vf[0] * xv[1] + vf[1] * yv[1] + vf[2] * tv[1],
            vf[0] * xv[2] + vf[1] * yv[2] + vf[2] * tv[2],
        ]
    };

    Ok(Abc {
        a1,
        a2,
        a3,
        b1,
        b2,
        b3,
        c1,
        c2,
        l,
        l_eps,
        tu: tau,
        e1_coords: coords(e1f),
        e2_coords: coords(e2f),
        n_coords: coords(nf),
    })
}

fn eps_check(eps: f64) -> Result<(), SurfaceError> {
    if eps > 0.0 {
        Ok(())
    } else {
        Err(SurfaceError::BadParameter(format!(
            "approximation parameter must be positive, got {eps}"
        )))
    }
}

fn to_jets(e: SurfaceError) -> JetsError {
    match e {
        SurfaceError::Jets(j) => j,
        SurfaceError::Field(f) => JetsError::Field(f),
        other => JetsError::Field(crate::jets::FieldError::Numeric(other.to_string())),
    }
}

/// Full `g_eps` data of the surface at a point.
pub fn epsilon_geometry(
    model: &GroupModel,
    u: &ScalarField,
    point: Point,
    eps: f64,
) -> Result<EpsilonGeometry, SurfaceError> {
    eps_check(eps)?;
    let at = abc_at(model, u, eps, point)?;
    let h = third_order_step(point);

    let fd = |pick: fn(&Abc) -> f64, dir: [f64; 3]| -> Result<f64, SurfaceError> {
        let m = model.clone();
        let f = u.clone();
        Ok(fd_directional(
            model,
            move |pt: Point| abc_at(&m, &f, eps, pt).map(|a| pick(&a)).map_err(to_jets),
            move |_| Ok(dir),
            point,
            h,
        )?)
    };

    let e1_b3 = fd(|a| a.b3, at.e1_coords)?;
    let e2_a3 = fd(|a| a.a3, at.e2_coords)?;
    let e1_c1 = fd(|a| a.c1, at.e1_coords)?;
    let n_a1 = fd(|a| a.a1, at.n_coords)?;
    let e2_c2 = fd(|a| a.c2, at.e2_coords)?;
    let n_b2 = fd(|a| a.b2, at.n_coords)?;

    let k_eps_sigma = -e1_b3 + e2_a3 - at.a3 * at.a3 - at.b3 * at.b3;
    let half_sum = 0.25 * (at.a2 + at.b1) * (at.a2 + at.b1);
    let sec_e1e2 = k_eps_sigma + half_sum - at.a1 * at.b2;
    let sec_e1n = e1_c1 - n_a1 - at.a1 * at.a1 - at.c1 * at.c1 + half_sum + at.c2 * at.a3;
    let sec_e2n = e2_c2 - n_b2 - at.b2 * at.b2 - at.c2 * at.c2 + half_sum + at.c1 * at.b3;

    Ok(EpsilonGeometry {
        eps,
        l: at.l,
        l_eps: at.l_eps,
        rbar_eps: eps * at.tu / at.l_eps,
        rbar_over_eps_leps: at.tu / (at.l_eps * at.l_eps),
        a1: at.a1,
        a2: at.a2,
        a3: at.a3,
        b1: at.b1,
        b2: at.b2,
        b3: at.b3,
        c1: at.c1,
        c2: at.c2,
        ii: [
            [-at.a1, -0.5 * (at.a2 + at.b1)],
            [-0.5 * (at.a2 + at.b1), -at.b2],
        ],
        h_eps: at.a1 + at.b2,
        k_eps_sigma,
        sec_e1e2,
        sec_e1n,
        sec_e2n,
    })
}

/// One row of a [`ConvergenceTable`].
#[derive(Clone, Copy, Debug)]
pub struct EpsRow {
    pub eps: f64,
    pub h_eps: f64,
    pub k_eps_sigma: f64,
    pub a1: f64,
    pub a3: f64,
    pub l_eps: f64,
    pub rbar_eps: f64,
    pub rbar_over_eps_leps: f64,
}

/// `H^eps`, `K^eps` over a decreasing eps list, with the horizontal limits
/// and least-squares log-log convergence rates of the errors.
#[derive(Clone, Debug)]
pub struct ConvergenceTable {
    pub rows: Vec<EpsRow>,
    pub h_limit: f64,
    pub k_limit: f64,
    pub h_slope: f64,
    pub k_slope: f64,
}

pub fn limit_table(
    model: &GroupModel,
    u: &ScalarField,
    point: Point,
    eps_list: &[f64],
) -> Result<ConvergenceTable, SurfaceError> {
    if eps_list.is_empty() {
        return Err(SurfaceError::BadParameter("empty eps list".into()));
    }
    let mut sorted = eps_list.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let limits = curvatures_off_surface(model, u, point)?;
    let mut rows = Vec::with_capacity(sorted.len());
    for &eps in &sorted {
        let g = epsilon_geometry(model, u, point, eps)?;
        rows.push(EpsRow {
            eps,
            h_eps: g.h_eps,
            k_eps_sigma: g.k_eps_sigma,
            a1: g.a1,
            a3: g.a3,
            l_eps: g.l_eps,
            rbar_eps: g.rbar_eps,
            rbar_over_eps_leps: g.rbar_over_eps_leps,
        });
    }
    let h_errs: Vec<f64> = rows.iter().map(|r| (r.h_eps - limits.h_h).abs()).collect();
    let k_errs: Vec<f64> = rows
        .iter()
        .map(|r| (r.k_eps_sigma - limits.k_h).abs())
        .collect();
    Ok(ConvergenceTable {
        h_slope: loglog_slope(&sorted, &h_errs, 1e-13),
        k_slope: loglog_slope(&sorted, &k_errs, 1e-12),
        rows,
        h_limit: limits.h_h,
        k_limit: limits.k_h,
    })
}

/// One small-eps residual together with its expected leading order in eps.
#[derive(Clone, Copy, Debug)]
pub struct LemmaResidual {
    pub name: &'static str,
    pub residual: f64,
    pub expected_order: f64,
}

/// Residuals of the elementary `eps -> 0+` limits of the normalisation
/// quantities `l_eps`, `rbar_eps`, `rbar_eps/l_eps`, `rbar_eps/(eps l_eps)`
/// and `(rbar_eps/eps)^2`.
pub fn lemma_limits_residuals(
    model: &GroupModel,
    u: &ScalarField,
    point: Point,
    eps: f64,
) -> Result<[LemmaResidual; 5], SurfaceError> {
    eps_check(eps)?;
    let tab = frame_derivatives_2(model, u, point)?;
    let hd = horizontal_from_table(&tab);
    if hd.characteristic {
        return Err(SurfaceError::Characteristic { point, l: hd.l });
    }
    let (l, tau) = (hd.l, hd.tu);
    let l_eps = l.hypot(eps * tau);
    let rbar_eps = eps * tau / l_eps;
    Ok([
        LemmaResidual {
            name: "l_eps -> l",
            residual: (l_eps - l).abs(),
            expected_order: 2.0,
        },
        LemmaResidual {
            name: "rbar_eps -> 0",
            residual: rbar_eps.abs(),
            expected_order: 1.0,
        },
        LemmaResidual {
            name: "rbar_eps/l_eps -> 0",
            residual: (rbar_eps / l_eps).abs(),
            expected_order: 1.0,
        },
        LemmaResidual {
            name: "rbar_eps/(eps l_eps) -> Tu/l^2",
            residual: (tau / (l_eps * l_eps) - tau / (l * l)).abs(),
            expected_order: 2.0,
        },
        LemmaResidual {
            name: "(rbar_eps/eps)^2 -> (Tu/l)^2",
            residual: ((tau / l_eps) * (tau / l_eps) - (tau / l) * (tau / l)).abs(),
            expected_order: 2.0,
        },
    ])
}

/// Componentwise residual of `[E1, E2] + A3 E1 + B3 E2 = 0`, with the bracket
/// of the coordinate fields formed by central differences.
pub fn frame_bracket_residual(
    model: &GroupModel,
    u: &ScalarField,
    point: Point,
    eps: f64,
) -> Result<f64, SurfaceError> {
    eps_check(eps)?;
    let at = abc_at(model, u, eps, point)?;
    let e1 = |pt: Point| abc_at(model, u, eps, pt).map(|a| a.e1_coords);
    let e2 = |pt: Point| abc_at(model, u, eps, pt).map(|a| a.e2_coords);
    let mut bracket = [0.0f64; 3];
    for i in 0..3 {
        let h = 1e-5 * (1.0 + point[i].abs());
        let mut pp = point;
        let mut pm = point;
        pp[i] += h;
        pm[i] -= h;
        let e2p = e2(pp)?;
        let e2m = e2(pm)?;
        let e1p = e1(pp)?;
        let e1m = e1(pm)?;
        for j in 0..3 {
            let d2 = (e2p[j] - e2m[j]) / (2.0 * h);
            let d1 = (e1p[j] - e1m[j]) / (2.0 * h);
            bracket[j] += at.e1_coords[i] * d2 - at.e2_coords[i] * d1;
        }
    }
    let mut worst = 0.0f64;
    for j in 0..3 {
        let v = bracket[j] + at.a3 * at.e1_coords[j] + at.b3 * at.e2_coords[j];
        worst = worst.max(v.abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::field_from_text;
    use crate::groups::{builtin_model, BuiltinModel};

    fn heis() -> GroupModel {
        builtin_model(BuiltinModel::Heisenberg)
    }

    fn aa() -> GroupModel {
        builtin_model(BuiltinModel::AffineAdditive)
    }

    #[test]
    fn flat_plane_small_eps() {
        let m = heis();
        let u = field_from_text("t", m.chart()).unwrap();
        let p = [1.0, 0.0, 0.0];
        let g = epsilon_geometry(&m, &u, p, 1e-3).unwrap();
        assert!(g.h_eps.abs() < 1e-5, "H_eps = {}", g.h_eps);
        assert!(
            (g.k_eps_sigma + 2.0).abs() < 1e-3,
            "K_eps = {}",
            g.k_eps_sigma
        );
        // Tu/l_eps^2 with Tu = 1, l = 2
        assert!((g.rbar_over_eps_leps - 0.25).abs() < 1e-6);
        // trace relation and symmetry of the second fundamental form
        assert!((g.h_eps + g.ii[0][0] + g.ii[1][1]).abs() < 1e-12);
        assert_eq!(g.ii[0][1], g.ii[1][0]);
        // Gauss equation consistency
        let det = g.ii[0][0] * g.ii[1][1] - g.ii[0][1] * g.ii[1][0];
        assert!((g.k_eps_sigma - (g.sec_e1e2 + det)).abs() < 1e-9);
    }

    #[test]
    fn l_eps_decreases_to_l() {
        let m = heis();
        let u = field_from_text("t", m.chart()).unwrap();
        let p = [1.0, 0.0, 0.0];
        let mut last = f64::INFINITY;
        for eps in DEFAULT_EPS_LIST {
            let g = epsilon_geometry(&m, &u, p, eps).unwrap();
            assert!(g.l_eps >= g.l);
            assert!(g.l_eps <= last);
            last = g.l_eps;
        }
    }

    #[test]
    fn limit_table_flat_plane() {
        let m = heis();
        let u = field_from_text("t", m.chart()).unwrap();
        let t = limit_table(&m, &u, [1.0, 0.0, 0.0], &DEFAULT_EPS_LIST).unwrap();
        assert_eq!(t.rows.len(), 7);
        assert!(t.rows.windows(2).all(|w| w[0].eps > w[1].eps));
        assert!((t.h_limit - 0.0).abs() < 1e-14);
        assert!((t.k_limit + 2.0).abs() < 1e-12);
        // errors decrease and converge at least linearly
        let last = t.rows.last().unwrap();
        assert!((last.h_eps - t.h_limit).abs() < 1e-6);
        assert!(t.h_slope >= 1.0, "h slope {}", t.h_slope);
        assert!(t.k_slope >= 1.0, "k slope {}", t.k_slope);
        // the leading coframe coefficients carry the limits: A1 -> H^h = 0
        // and A3 -> 0 (here exactly, since X(p/l) + Y(q/l) vanishes)
        for row in &t.rows {
            assert_eq!(row.a1, 0.0);
            assert_eq!(row.a3, 0.0);
        }
    }

    #[test]
    fn limit_table_aa_plane() {
        let m = aa();
        let u = field_from_text("a", m.chart()).unwrap();
        let t = limit_table(&m, &u, [0.0, 1.0, 0.0], &DEFAULT_EPS_LIST).unwrap();
        assert!((t.k_limit + 4.0).abs() < 1e-12);
        assert!((t.h_limit - 0.0).abs() < 1e-14);
        let last = t.rows.last().unwrap();
        assert!((last.k_eps_sigma + 4.0).abs() < 1e-2);
        assert!((last.h_eps - 0.0).abs() < 1e-6);
        assert!(t.k_slope >= 1.0, "k slope {}", t.k_slope);
    }

    #[test]
    fn limit_table_gauge_sphere_mean_curvature() {
        let m = heis();
        let u = field_from_text("(x^2+y^2)^2 + t^2 - 1", m.chart()).unwrap();
        let r0 = 0.5f64.sqrt();
        let p = [r0, 0.0, 0.75f64.sqrt()];
        let t = limit_table(&m, &u, p, &DEFAULT_EPS_LIST).unwrap();
        // H^h = 3 r / R^2 at r = 1/sqrt(2), R = 1
        let expected = 3.0 * r0;
        assert!((t.h_limit - expected).abs() < 1e-12);
        let last = t.rows.last().unwrap();
        assert!((last.h_eps - expected).abs() < 1e-6 * (1.0 + expected));
    }

    #[test]
    fn a_coefficients_converge_to_horizontal_data() {
        let m = heis();
        let u = field_from_text("(x^2+y^2)^2 + t^2 - 1", m.chart()).unwrap();
        let r0 = 0.5f64.sqrt();
        let p = [r0, 0.0, 0.75f64.sqrt()];
        let h_h = curvatures_off_surface(&m, &u, p).unwrap().h_h;
        let eps_list = DEFAULT_EPS_LIST;
        let mut a1_err = Vec::new();
        let mut a3_abs = Vec::new();
        for eps in eps_list {
            let g = epsilon_geometry(&m, &u, p, eps).unwrap();
            a1_err.push((g.a1 - h_h).abs());
            a3_abs.push(g.a3.abs());
        }
        // first-order sequences measure slightly under 1 on a finite list
        let s1 = loglog_slope(&eps_list, &a1_err, 1e-13);
        let s3 = loglog_slope(&eps_list, &a3_abs, 1e-13);
        assert!(s1 >= 0.95, "A1 order {s1}");
        assert!(s3 >= 0.95, "A3 order {s3}");
    }

    #[test]
    fn lemma_residual_magnitudes() {
        let m = heis();
        let u = field_from_text("t", m.chart()).unwrap();
        let res = lemma_limits_residuals(&m, &u, [1.0, 0.0, 0.0], 1e-2).unwrap();
        // Tu/l_eps^2 vs Tu/l^2 with Tu = 1, l = 2
        assert!(res[3].residual < 1e-4);
        // l_eps -> 2 at second order
        assert!(res[0].residual < 1e-4);
        let res_half = lemma_limits_residuals(&m, &u, [1.0, 0.0, 0.0], 5e-3).unwrap();
        let ratio = res[0].residual / res_half[0].residual;
        assert!((ratio - 4.0).abs() < 0.1, "order-2 halving ratio {ratio}");

        let m = aa();
        let u = field_from_text("a", m.chart()).unwrap();
        let res = lemma_limits_residuals(&m, &u, [0.0, 1.0, 0.0], 1e-2).unwrap();
        // (rbar/eps)^2 -> (Tu/l)^2 = 1
        let sq = (res[4].residual - 0.0).abs();
        assert!(sq < 1e-3, "residual {sq}");
    }

    #[test]
    fn lemma_orders_measured() {
        let m = heis();
        let u = field_from_text("(x^2+y^2)^2 + t^2 - 1", m.chart()).unwrap();
        let r0 = 0.5f64.sqrt();
        let p = [r0, 0.0, 0.75f64.sqrt()];
        let eps_list = [1e-1, 3e-2, 1e-2, 3e-3, 1e-3];
        for slot in 0..5 {
            let mut residuals = Vec::new();
            for eps in eps_list {
                residuals.push(lemma_limits_residuals(&m, &u, p, eps).unwrap()[slot].residual);
            }
            let expect = lemma_limits_residuals(&m, &u, p, 1e-2).unwrap()[slot].expected_order;
            let slope = loglog_slope(&eps_list, &residuals, 1e-14);
            assert!(
                slope > expect - 0.1,
                "slot {slot}: measured order {slope}, expected {expect}"
            );
        }
    }

    #[test]
    fn frame_bracket_closes() {
        let m = heis();
        let u = field_from_text("(x^2+y^2)^2 + t^2 - 1", m.chart()).unwrap();
        let r0 = 0.5f64.sqrt();
        let p = [r0, 0.0, 0.75f64.sqrt()];
        let r = frame_bracket_residual(&m, &u, p, 1e-2).unwrap();
        assert!(r < 1e-6, "bracket residual {r}");

        let m = aa();
        let u = field_from_text("a", m.chart()).unwrap();
        let r = frame_bracket_residual(&m, &u, [0.0, 1.0, 0.0], 1e-2).unwrap();
        assert!(r < 1e-6, "bracket residual {r}");
    }

    #[test]
    fn eps_must_be_positive() {
        let m = heis();
        let u = field_from_text("t", m.chart()).unwrap();
        assert!(epsilon_geometry(&m, &u, [1.0, 0.0, 0.0], 0.0).is_err());
        assert!(epsilon_geometry(&m, &u, [1.0, 0.0, 0.0], -1.0).is_err());
    }

    #[test]
    fn characteristic_points_rejected() {
        let m = heis();
        let u = field_from_text("t", m.chart()).unwrap();
        let e = epsilon_geometry(&m, &u, [0.0, 0.0, 0.0], 0.1).unwrap_err();
        assert!(matches!(e, SurfaceError::Characteristic { .. }));
    }
}
