//! Second-order jet calculus.
//!
//! [`Jet2`] carries value, coordinate gradient and symmetric Hessian of a
//! scalar field at a point and propagates them through arithmetic and
//! elementary functions (forward mode).  [`frame_derivatives_2`] turns the
//! jet of `u` into the frame derivatives `Xu, Yu, Tu` and all second-order
//! combinations via the chain rule
//!
//! ```text
//! (VWu)(p) = sum_ij V^i (d_i W^j) d_j u + V^i W^j d_i d_j u,
//! ```
//!
//! exactly (no nested finite differences).  [`fd_directional`] provides the
//! one finite-difference layer used for third-order quantities.

use crate::groups::{FrameIndex, GroupError, GroupModel};
use crate::Point;
use std::fmt;
use std::sync::Arc;

/// Value, gradient and symmetric Hessian of a scalar field at a point.
///
/// The Hessian is stored as its six independent entries, so symmetry is exact
/// by construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub grad: [f64; 3],
    hess: [f64; 6], // order: (0,0) (0,1) (0,2) (1,1) (1,2) (2,2)
}

#[inline]
fn hidx(i: usize, j: usize) -> usize {
    const IDX: [[usize; 3]; 3] = [[0, 1, 2], [1, 3, 4], [2, 4, 5]];
    IDX[i][j]
}

impl Jet2 {
    pub const fn new(value: f64, grad: [f64; 3], hess6: [f64; 6]) -> Self {
        Self {
            value,
            grad,
            hess: hess6,
        }
    }

    pub const fn constant(value: f64) -> Self {
        Self {
            value,
            grad: [0.0; 3],
            hess: [0.0; 6],
        }
    }

    /// Jet of the coordinate function on `axis`, seeded at `value`.
    pub fn variable(axis: usize, value: f64) -> Self {
        let mut grad = [0.0; 3];
        grad[axis] = 1.0;
        Self {
            value,
            grad,
            hess: [0.0; 6],
        }
    }

    /// Hessian entry `d_i d_j`.
    #[inline]
    pub fn hess(&self, i: usize, j: usize) -> f64 {
        self.hess[hidx(i, j)]
    }

    pub fn hess6(&self) -> [f64; 6] {
        self.hess
    }

    /// Largest absolute component across value, gradient and Hessian.
    pub fn max_abs(&self) -> f64 {
        let mut m = self.value.abs();
        for g in self.grad {
            m = m.max(g.abs());
        }
        for h in self.hess {
            m = m.max(h.abs());
        }
        m
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
            && self.grad.iter().all(|g| g.is_finite())
            && self.hess.iter().all(|h| h.is_finite())
    }

    /// Chain rule through a scalar function with derivatives `dg`, `d2g` at
    /// `self.value`.
    pub fn apply_unary(self, g: f64, dg: f64, d2g: f64) -> Self {
        let mut hess = [0.0; 6];
        for i in 0..3 {
            for j in i..3 {
                hess[hidx(i, j)] = dg * self.hess(i, j) + d2g * self.grad[i] * self.grad[j];
            }
        }
        let grad = [dg * self.grad[0], dg * self.grad[1], dg * self.grad[2]];
        Self {
            value: g,
            grad,
            hess,
        }
    }

    pub fn scale(self, s: f64) -> Self {
        self.apply_unary(s * self.value, s, 0.0)
    }

    pub fn recip(self) -> Self {
        let v = self.value;
        self.apply_unary(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))
    }

    pub fn sqrt(self) -> Self {
        let s = self.value.sqrt();
        self.apply_unary(s, 0.5 / s, -0.25 / (s * self.value))
    }

    pub fn exp(self) -> Self {
        let e = self.value.exp();
        self.apply_unary(e, e, e)
    }

    pub fn ln(self) -> Self {
        let v = self.value;
        self.apply_unary(v.ln(), 1.0 / v, -1.0 / (v * v))
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.apply_unary(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.apply_unary(c, -s, -c)
    }

    pub fn tan(self) -> Self {
        let t = self.value.tan();
        let sec2 = 1.0 + t * t;
        self.apply_unary(t, sec2, 2.0 * t * sec2)
    }

    pub fn asin(self) -> Self {
        let v = self.value;
        let w = 1.0 - v * v;
        self.apply_unary(v.asin(), 1.0 / w.sqrt(), v / (w * w.sqrt()))
    }

    pub fn acos(self) -> Self {
        let v = self.value;
        let w = 1.0 - v * v;
        self.apply_unary(v.acos(), -1.0 / w.sqrt(), -v / (w * w.sqrt()))
    }

    pub fn atan(self) -> Self {
        let v = self.value;
        let w = 1.0 + v * v;
        self.apply_unary(v.atan(), 1.0 / w, -2.0 * v / (w * w))
    }

    pub fn sinh(self) -> Self {
        let v = self.value;
        self.apply_unary(v.sinh(), v.cosh(), v.sinh())
    }

    pub fn cosh(self) -> Self {
        let v = self.value;
        self.apply_unary(v.cosh(), v.sinh(), v.cosh())
    }

    pub fn tanh(self) -> Self {
        let t = self.value.tanh();
        let sech2 = 1.0 - t * t;
        self.apply_unary(t, sech2, -2.0 * t * sech2)
    }

    pub fn abs(self) -> Self {
        let s = if self.value >= 0.0 { 1.0 } else { -1.0 };
        self.apply_unary(self.value.abs(), s, 0.0)
    }

    /// Integer power (any base).
    pub fn powi(self, n: i32) -> Self {
        let v = self.value;
        match n {
            0 => Jet2::constant(1.0),
            1 => self,
            _ => {
                let g = v.powi(n);
                let dg = f64::from(n) * v.powi(n - 1);
                let d2g = f64::from(n) * f64::from(n - 1) * v.powi(n - 2);
                self.apply_unary(g, dg, d2g)
            }
        }
    }

    /// Real power of a positive base.
    pub fn powf(self, e: f64) -> Self {
        let v = self.value;
        let g = v.powf(e);
        self.apply_unary(g, e * v.powf(e - 1.0), e * (e - 1.0) * v.powf(e - 2.0))
    }
}

impl std::ops::Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        let mut hess = [0.0; 6];
        for k in 0..6 {
            hess[k] = self.hess[k] + rhs.hess[k];
        }
        Jet2 {
            value: self.value + rhs.value,
            grad: [
                self.grad[0] + rhs.grad[0],
                self.grad[1] + rhs.grad[1],
                self.grad[2] + rhs.grad[2],
            ],
            hess,
        }
    }
}

impl std::ops::Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        let mut hess = [0.0; 6];
        for k in 0..6 {
            hess[k] = self.hess[k] - rhs.hess[k];
        }
        Jet2 {
            value: self.value - rhs.value,
            grad: [
                self.grad[0] - rhs.grad[0],
                self.grad[1] - rhs.grad[1],
                self.grad[2] - rhs.grad[2],
            ],
            hess,
        }
    }
}

impl std::ops::Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

impl std::ops::Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        let mut hess = [0.0; 6];
        for i in 0..3 {
            for j in i..3 {
                hess[hidx(i, j)] = self.hess(i, j) * rhs.value
                    + self.value * rhs.hess(i, j)
                    + self.grad[i] * rhs.grad[j]
                    + self.grad[j] * rhs.grad[i];
            }
        }
        Jet2 {
            value: self.value * rhs.value,
            grad: [
                self.grad[0] * rhs.value + self.value * rhs.grad[0],
                self.grad[1] * rhs.value + self.value * rhs.grad[1],
                self.grad[2] * rhs.value + self.value * rhs.grad[2],
            ],
            hess,
        }
    }
}

impl std::ops::Div for Jet2 {
    type Output = Jet2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Jet2) -> Jet2 {
        self * rhs.recip()
    }
}

/// Evaluation failure of a scalar field.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldError {
    /// Outside the real domain of an elementary function.
    Domain(String),
    /// A numeric procedure inside the evaluator failed (e.g. an implicit
    /// construction did not converge).
    Numeric(String),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::Domain(s) => write!(f, "domain error: {s}"),
            FieldError::Numeric(s) => write!(f, "evaluation error: {s}"),
        }
    }
}

impl std::error::Error for FieldError {}

type FieldFn = Arc<dyn Fn(Point) -> Result<Jet2, FieldError> + Send + Sync>;

/// A scalar field `u` on a chart, evaluable to a [`Jet2`] at any point.
#[derive(Clone)]
pub struct ScalarField {
    chart: [&'static str; 3],
    eval: FieldFn,
}

impl ScalarField {
    pub fn new(
        chart: [&'static str; 3],
        eval: impl Fn(Point) -> Result<Jet2, FieldError> + Send + Sync + 'static,
    ) -> Self {
        Self {
            chart,
            eval: Arc::new(eval),
        }
    }

    /// Field from an infallible jet evaluator.
    pub fn from_fn(
        chart: [&'static str; 3],
        eval: impl Fn(Point) -> Jet2 + Send + Sync + 'static,
    ) -> Self {
        Self::new(chart, move |p| Ok(eval(p)))
    }

    pub fn chart(&self) -> [&'static str; 3] {
        self.chart
    }

    pub fn jet(&self, p: Point) -> Result<Jet2, FieldError> {
        (self.eval)(p)
    }

    pub fn value(&self, p: Point) -> Result<f64, FieldError> {
        Ok(self.jet(p)?.value)
    }

    /// `alpha * self + beta * other` (charts must agree).
    pub fn linear_combination(alpha: f64, u: &ScalarField, beta: f64, v: &ScalarField) -> Self {
        assert_eq!(u.chart, v.chart, "linear combination across charts");
        let (ue, ve) = (u.eval.clone(), v.eval.clone());
        Self::new(u.chart, move |p| {
            Ok(ue(p)?.scale(alpha) + ve(p)?.scale(beta))
        })
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        let e = self.eval.clone();
        Self::new(self.chart, move |p| Ok(e(p)?.scale(alpha)))
    }
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("chart", &self.chart)
            .finish()
    }
}

/// First and second frame derivatives of `u` at a point, in frame units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameDerivTable {
    pub xu: f64,
    pub yu: f64,
    pub tu: f64,
    pub xxu: f64,
    pub xyu: f64,
    pub yxu: f64,
    pub yyu: f64,
    pub xtu: f64,
    pub ytu: f64,
    pub ttu: f64,
}

impl FrameDerivTable {
    /// `TXu` recovered from `[X,T]u = a1 Xu + b1 Yu`.
    pub fn txu(&self, sc: &crate::groups::StructureConstants) -> f64 {
        self.xtu - sc.a1 * self.xu - sc.b1 * self.yu
    }

    /// `TYu` recovered from `[Y,T]u = a2 Xu + b2 Yu`.
    pub fn tyu(&self, sc: &crate::groups::StructureConstants) -> f64 {
        self.ytu - sc.a2 * self.xu - sc.b2 * self.yu
    }

    /// Residual of `XYu - YXu = a3 Xu + b3 Yu + c Tu`.
    pub fn bracket_defect(&self, sc: &crate::groups::StructureConstants) -> f64 {
        self.xyu - self.yxu - (sc.a3 * self.xu + sc.b3 * self.yu + sc.c * self.tu)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum JetsError {
    ChartMismatch {
        field: [&'static str; 3],
        model: [&'static str; 3],
    },
    Group(GroupError),
    Field(FieldError),
    StepLeavesDomain {
        point: Point,
        domain: &'static str,
    },
}

impl fmt::Display for JetsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JetsError::ChartMismatch { field, model } => write!(
                f,
                "field chart ({},{},{}) does not match model chart ({},{},{})",
                field[0], field[1], field[2], model[0], model[1], model[2]
            ),
            JetsError::Group(e) => e.fmt(f),
            JetsError::Field(e) => e.fmt(f),
            JetsError::StepLeavesDomain { point, domain } => write!(
                f,
                "finite-difference step around ({}, {}, {}) leaves chart domain ({domain})",
                point[0], point[1], point[2]
            ),
        }
    }
}

impl std::error::Error for JetsError {}

impl From<GroupError> for JetsError {
    fn from(e: GroupError) -> Self {
        JetsError::Group(e)
    }
}

impl From<FieldError> for JetsError {
    fn from(e: FieldError) -> Self {
        JetsError::Field(e)
    }
}

fn check_compat(model: &GroupModel, u: &ScalarField, point: Point) -> Result<(), JetsError> {
    if u.chart() != model.chart() {
        return Err(JetsError::ChartMismatch {
            field: u.chart(),
            model: model.chart(),
        });
    }
    model.check_domain(point)?;
    Ok(())
}

/// First frame derivative `(Wu)(p) = sum_i w_i(p) d_i u(p)`.
pub fn frame_derivative_1(
    model: &GroupModel,
    field: FrameIndex,
    u: &ScalarField,
    point: Point,
) -> Result<f64, JetsError> {
    check_compat(model, u, point)?;
    let jet = u.jet(point)?;
    let c = model.frame(field).coeffs(point);
    Ok(c[0].value * jet.grad[0] + c[1].value * jet.grad[1] + c[2].value * jet.grad[2])
}

/// All first- and second-order frame derivatives of `u` at `point`, exact via
/// the chain rule on the jet of `u` and the frame-coefficient gradients.
pub fn frame_derivatives_2(
    model: &GroupModel,
    u: &ScalarField,
    point: Point,
) -> Result<FrameDerivTable, JetsError> {
    check_compat(model, u, point)?;
    let jet = u.jet(point)?;
    let cx = model.frame(FrameIndex::X).coeffs(point);
    let cy = model.frame(FrameIndex::Y).coeffs(point);
    let ct = model.frame(FrameIndex::T).coeffs(point);

    let first = |c: &[Coeff3]| {
        c[0].value * jet.grad[0] + c[1].value * jet.grad[1] + c[2].value * jet.grad[2]
    };
    let xu = first(&cx);
    let yu = first(&cy);
    let tu = first(&ct);

    let second = |v: &[Coeff3], w: &[Coeff3]| second_frame_derivative(&jet, v, w);
    Ok(FrameDerivTable {
        xu,
        yu,
        tu,
        xxu: second(&cx, &cx),
        xyu: second(&cx, &cy),
        yxu: second(&cy, &cx),
        yyu: second(&cy, &cy),
        xtu: second(&cx, &ct),
        ytu: second(&cy, &ct),
        ttu: second(&ct, &ct),
    })
}

type Coeff3 = crate::groups::Coeff;

/// `(VWu)(p)` from the jet of `u` and the coefficient jets of `V`, `W`.
fn second_frame_derivative(jet: &Jet2, v: &[Coeff3], w: &[Coeff3]) -> f64 {
    let mut acc = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            acc += v[i].value * w[j].grad[i] * jet.grad[j];
            acc += v[i].value * w[j].value * jet.hess(i, j);
        }
    }
    acc
}

/// Central-difference directional derivative of a scalar functional along a
/// direction field: `(F(p + h d(p)) - F(p - h d(p))) / (2h)`.
///
/// The single finite-difference layer used for third-order quantities; `F`
/// itself should be analytic (built from exact jets).
pub fn fd_directional<F, D>(
    model: &GroupModel,
    functional: F,
    direction: D,
    point: Point,
    step: f64,
) -> Result<f64, JetsError>
where
    F: Fn(Point) -> Result<f64, JetsError>,
    D: Fn(Point) -> Result<[f64; 3], JetsError>,
{
    model.check_domain(point)?;
    let d = direction(point)?;
    let plus = [
        point[0] + step * d[0],
        point[1] + step * d[1],
        point[2] + step * d[2],
    ];
    let minus = [
        point[0] - step * d[0],
        point[1] - step * d[1],
        point[2] - step * d[2],
    ];
    if !model.in_domain(plus) || !model.in_domain(minus) {
        return Err(JetsError::StepLeavesDomain {
            point,
            domain: model.domain_desc,
        });
    }
    Ok((functional(plus)? - functional(minus)?) / (2.0 * step))
}

/// Step size for the finite-difference layer over analytic second-order data.
pub fn third_order_step(point: Point) -> f64 {
    let m = point[0].abs().max(point[1].abs()).max(point[2].abs());
    1e-4 * (1.0 + m)
}
