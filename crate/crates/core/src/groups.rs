//! Contact sub-Riemannian Lie group models.
//!
//! A group model is a coordinate chart together with a left-invariant frame
//! `{X, Y, T}` (horizontal fields `X`, `Y` and Reeb field `T`), its dual
//! coframe, and the structure constants of the bracket relations
//!
//! ```text
//! [X,T] = a1 X + b1 Y,   [Y,T] = a2 X + b2 Y,   [X,Y] = a3 X + b3 Y + c T.
//! ```
//!
//! Frame coefficients are stored with analytic gradients so that second-order
//! frame derivatives of scalar fields can be evaluated exactly.

use crate::Point;
use std::fmt;
use std::sync::Arc;

/// The seven bracket coefficients of a 3D contact Lie group.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StructureConstants {
    pub a1: f64,
    pub b1: f64,
    pub a2: f64,
    pub b2: f64,
    pub a3: f64,
    pub b3: f64,
    /// Contact coefficient; never zero for a contact structure.
    pub c: f64,
}

impl StructureConstants {
    pub const fn new(a1: f64, b1: f64, a2: f64, b2: f64, a3: f64, b3: f64, c: f64) -> Self {
        Self {
            a1,
            b1,
            a2,
            b2,
            a3,
            b3,
            c,
        }
    }

    /// Heisenberg group: only `[X,Y] = -4T` survives.
    pub const fn heisenberg() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -4.0)
    }

    /// Affine-additive group: `[X,Y] = 2Y + 2T`.
    pub const fn affine_additive() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0, 0.0, 2.0, 2.0)
    }
}

/// One violated constraint, with the residual of the defining equation.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintViolation {
    pub equation: &'static str,
    pub residual: f64,
}

/// Result of [`validate_structure_constants`].
#[derive(Clone, Debug, PartialEq)]
pub struct StructureValidation {
    pub violations: Vec<ConstraintViolation>,
}

impl StructureValidation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

const CONSTRAINT_TOL: f64 = 1e-12;

/// Checks the Jacobi-identity constraints on candidate structure constants:
/// `a1*b3 - a3*b1 = 0`, `a2*b3 - a3*b2 = 0`, `a1 + b2 = 0` and `c != 0`.
pub fn validate_structure_constants(sc: &StructureConstants) -> StructureValidation {
    let mut violations = Vec::new();
    let d1 = sc.a1 * sc.b3 - sc.a3 * sc.b1;
    if d1.abs() > CONSTRAINT_TOL {
        violations.push(ConstraintViolation {
            equation: "a1*b3 - a3*b1 = 0",
            residual: d1.abs(),
        });
    }
    let d2 = sc.a2 * sc.b3 - sc.a3 * sc.b2;
    if d2.abs() > CONSTRAINT_TOL {
        violations.push(ConstraintViolation {
            equation: "a2*b3 - a3*b2 = 0",
            residual: d2.abs(),
        });
    }
    let tr = sc.a1 + sc.b2;
    if tr.abs() > CONSTRAINT_TOL {
        violations.push(ConstraintViolation {
            equation: "a1 + b2 = 0",
            residual: tr.abs(),
        });
    }
    if sc.c == 0.0 || !sc.c.is_finite() {
        violations.push(ConstraintViolation {
            equation: "c != 0",
            residual: 0.0,
        });
    }
    StructureValidation { violations }
}

/// Value and coordinate gradient of one frame coefficient at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coeff {
    pub value: f64,
    pub grad: [f64; 3],
}

impl Coeff {
    pub const fn constant(value: f64) -> Self {
        Self {
            value,
            grad: [0.0; 3],
        }
    }
}

type CoeffFn = Arc<dyn Fn(Point) -> [Coeff; 3] + Send + Sync>;
type FormFn = Arc<dyn Fn(Point) -> [f64; 3] + Send + Sync>;
type DomainFn = Arc<dyn Fn(Point) -> bool + Send + Sync>;

/// A left-invariant vector field given by its coefficients in the coordinate
/// partials, each evaluable with its gradient.
#[derive(Clone)]
pub struct FrameField {
    pub name: &'static str,
    coeffs: CoeffFn,
}

impl FrameField {
    pub fn new(
        name: &'static str,
        coeffs: impl Fn(Point) -> [Coeff; 3] + Send + Sync + 'static,
    ) -> Self {
        Self {
            name,
            coeffs: Arc::new(coeffs),
        }
    }

    /// Coefficients (with gradients) at `p`.
    pub fn coeffs(&self, p: Point) -> [Coeff; 3] {
        (self.coeffs)(p)
    }

    /// Coefficient values at `p`, as a coordinate vector.
    pub fn vector(&self, p: Point) -> [f64; 3] {
        let c = self.coeffs(p);
        [c[0].value, c[1].value, c[2].value]
    }
}

/// A 1-form given by its components in the coordinate differentials.
#[derive(Clone)]
pub struct CoframeForm {
    pub name: &'static str,
    comps: FormFn,
}

impl CoframeForm {
    pub fn new(
        name: &'static str,
        comps: impl Fn(Point) -> [f64; 3] + Send + Sync + 'static,
    ) -> Self {
        Self {
            name,
            comps: Arc::new(comps),
        }
    }

    pub fn components(&self, p: Point) -> [f64; 3] {
        (self.comps)(p)
    }

    /// Pairing with a coordinate vector.
    pub fn apply(&self, p: Point, v: [f64; 3]) -> f64 {
        let w = self.components(p);
        w[0] * v[0] + w[1] * v[1] + w[2] * v[2]
    }
}

/// Index of a frame field; displayed names follow the model (`X,Y,T` on the
/// Heisenberg group, `V,U,W` on the affine-additive group).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameIndex {
    X = 0,
    Y = 1,
    T = 2,
}

/// A concrete group model: chart, frame, coframe, constants, chart domain.
#[derive(Clone)]
pub struct GroupModel {
    pub name: &'static str,
    chart: [&'static str; 3],
    frame: [FrameField; 3],
    coframe: [CoframeForm; 3],
    pub constants: StructureConstants,
    domain: DomainFn,
    pub domain_desc: &'static str,
}

impl GroupModel {
    pub fn chart(&self) -> [&'static str; 3] {
        self.chart
    }

    pub fn frame(&self, idx: FrameIndex) -> &FrameField {
        &self.frame[idx as usize]
    }

    pub fn frames(&self) -> &[FrameField; 3] {
        &self.frame
    }

    pub fn coframe(&self) -> &[CoframeForm; 3] {
        &self.coframe
    }

    pub fn in_domain(&self, p: Point) -> bool {
        p.iter().all(|x| x.is_finite()) && (self.domain)(p)
    }

    pub fn check_domain(&self, p: Point) -> Result<(), GroupError> {
        if self.in_domain(p) {
            Ok(())
        } else {
            Err(GroupError::OutsideChartDomain {
                point: p,
                domain: self.domain_desc,
            })
        }
    }
}

impl fmt::Debug for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupModel")
            .field("name", &self.name)
            .field("chart", &self.chart)
            .field("constants", &self.constants)
            .finish()
    }
}

/// Names of the built-in models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinModel {
    Heisenberg,
    AffineAdditive,
    /// Affine-additive group in the chart `(a, lambda, rho)`, `rho = t/lambda`,
    /// adapted to the scaling symmetry `(a, lambda, t) -> (a, d*lambda, d*t)`.
    AffineAdditiveRho,
}

impl BuiltinModel {
    pub fn from_name(name: &str) -> Result<Self, GroupError> {
        match name {
            "heisenberg" | "heis" | "h" => Ok(Self::Heisenberg),
            "affine_additive" | "aa" => Ok(Self::AffineAdditive),
            "affine_additive_rho" | "aa_rho" => Ok(Self::AffineAdditiveRho),
            _ => Err(GroupError::UnknownModel {
                name: name.to_string(),
            }),
        }
    }
}

/// Builds one of the built-in models with exact frame coefficients.
pub fn builtin_model(which: BuiltinModel) -> GroupModel {
    match which {
        BuiltinModel::Heisenberg => heisenberg_model(),
        BuiltinModel::AffineAdditive => affine_additive_model(),
        BuiltinModel::AffineAdditiveRho => affine_additive_rho_model(),
    }
}

/// Heisenberg group on the chart `(x, y, t)`:
/// `X = dx + 2y dt`, `Y = dy - 2x dt`, `T = dt`, contact form
/// `theta = dt + 2x dy - 2y dx`.
fn heisenberg_model() -> GroupModel {
    let x = FrameField::new("X", |p: Point| {
        [
            Coeff::constant(1.0),
            Coeff::constant(0.0),
            Coeff {
                value: 2.0 * p[1],
                grad: [0.0, 2.0, 0.0],
            },
        ]
    });
    let y = FrameField::new("Y", |p: Point| {
        [
            Coeff::constant(0.0),
            Coeff::constant(1.0),
            Coeff {
                value: -2.0 * p[0],
                grad: [-2.0, 0.0, 0.0],
            },
        ]
    });
    let t = FrameField::new("T", |_p: Point| {
        [
            Coeff::constant(0.0),
            Coeff::constant(0.0),
            Coeff::constant(1.0),
        ]
    });
    let w1 = CoframeForm::new("omega1", |_p| [1.0, 0.0, 0.0]);
    let w2 = CoframeForm::new("omega2", |_p| [0.0, 1.0, 0.0]);
    let th = CoframeForm::new("theta", |p: Point| [-2.0 * p[1], 2.0 * p[0], 1.0]);
    GroupModel {
        name: "heisenberg",
        chart: ["x", "y", "t"],
        frame: [x, y, t],
        coframe: [w1, w2, th],
        constants: StructureConstants::heisenberg(),
        domain: Arc::new(|_| true),
        domain_desc: "all of R^3",
    }
}

/// Affine-additive group on the chart `(a, lambda, t)`, `lambda > 0`:
/// `V = 2 lambda d_lambda`, `U = da + 2 lambda dt`, `W = -da`, with
/// `(X, Y, T) = (V, U, W)` and contact form `theta = dt/(2 lambda) - da`.
fn affine_additive_model() -> GroupModel {
    let v = FrameField::new("V", |p: Point| {
        [
            Coeff::constant(0.0),
            Coeff {
                value: 2.0 * p[1],
                grad: [0.0, 2.0, 0.0],
            },
            Coeff::constant(0.0),
        ]
    });
    let u = FrameField::new("U", |p: Point| {
        [
            Coeff::constant(1.0),
            Coeff::constant(0.0),
            Coeff {
                value: 2.0 * p[1],
                grad: [0.0, 2.0, 0.0],
            },
        ]
    });
    let w = FrameField::new("W", |_p: Point| {
        [
            Coeff::constant(-1.0),
            Coeff::constant(0.0),
            Coeff::constant(0.0),
        ]
    });
    // duals of (V, U, W)
    let w1 = CoframeForm::new("omega1", |p: Point| [0.0, 0.5 / p[1], 0.0]);
    let w2 = CoframeForm::new("omega2", |p: Point| [0.0, 0.0, 0.5 / p[1]]);
    let th = CoframeForm::new("theta", |p: Point| [-1.0, 0.0, 0.5 / p[1]]);
    GroupModel {
        name: "affine_additive",
        chart: ["a", "l", "t"],
        frame: [v, u, w],
        coframe: [w1, w2, th],
        constants: StructureConstants::affine_additive(),
        domain: Arc::new(|p: Point| p[1] > 0.0),
        domain_desc: "l > 0",
    }
}

/// Affine-additive group in the scaling chart `(a, lambda, rho)` with
/// `rho = t/lambda`: `V = -2 rho d_rho + 2 lambda d_lambda`,
/// `U = 2 d_rho + da`, `W = -da`.
fn affine_additive_rho_model() -> GroupModel {
    let v = FrameField::new("V", |p: Point| {
        [
            Coeff::constant(0.0),
            Coeff {
                value: 2.0 * p[1],
                grad: [0.0, 2.0, 0.0],
            },
            Coeff {
                value: -2.0 * p[2],
                grad: [0.0, 0.0, -2.0],
            },
        ]
    });
    let u = FrameField::new("U", |_p: Point| {
        [
            Coeff::constant(1.0),
            Coeff::constant(0.0),
            Coeff::constant(2.0),
        ]
    });
    let w = FrameField::new("W", |_p: Point| {
        [
            Coeff::constant(-1.0),
            Coeff::constant(0.0),
            Coeff::constant(0.0),
        ]
    });
    // duals of (V, U, W) in (a, lambda, rho)
    let w1 = CoframeForm::new("omega1", |p: Point| [0.0, 0.5 / p[1], 0.0]);
    let w2 = CoframeForm::new("omega2", |p: Point| [0.0, 0.5 * p[2] / p[1], 0.5]);
    let th = CoframeForm::new("theta", |p: Point| [-1.0, 0.5 * p[2] / p[1], 0.5]);
    GroupModel {
        name: "affine_additive_rho",
        chart: ["a", "l", "rho"],
        frame: [v, u, w],
        coframe: [w1, w2, th],
        constants: StructureConstants::affine_additive(),
        domain: Arc::new(|p: Point| p[1] > 0.0),
        domain_desc: "l > 0",
    }
}

/// Max residual of the three bracket identities at `point`, with the brackets
/// of the frame fields formed by central differences of the raw coefficient
/// functions.  Validates both the stored constants and the analytic gradients.
pub fn bracket_residual(model: &GroupModel, point: Point) -> Result<f64, GroupError> {
    model.check_domain(point)?;
    let sc = &model.constants;
    let x = model.frame(FrameIndex::X);
    let y = model.frame(FrameIndex::Y);
    let t = model.frame(FrameIndex::T);

    let xv = x.vector(point);
    let yv = y.vector(point);
    let tv = t.vector(point);

    let cases: [(&FrameField, &FrameField, [f64; 3]); 3] = [
        // [X,T] = a1 X + b1 Y
        (x, t, combine3(sc.a1, xv, sc.b1, yv, 0.0, tv)),
        // [Y,T] = a2 X + b2 Y
        (y, t, combine3(sc.a2, xv, sc.b2, yv, 0.0, tv)),
        // [X,Y] = a3 X + b3 Y + c T
        (x, y, combine3(sc.a3, xv, sc.b3, yv, sc.c, tv)),
    ];

    let mut worst = 0.0f64;
    for (v, w, expected) in cases {
        let br = fd_bracket(v, w, point);
        for j in 0..3 {
            worst = worst.max((br[j] - expected[j]).abs());
        }
    }
    Ok(worst)
}

fn combine3(a: f64, u: [f64; 3], b: f64, v: [f64; 3], c: f64, w: [f64; 3]) -> [f64; 3] {
    [
        a * u[0] + b * v[0] + c * w[0],
        a * u[1] + b * v[1] + c * w[1],
        a * u[2] + b * v[2] + c * w[2],
    ]
}

/// `[V, W]^j = sum_i V^i d_i W^j - W^i d_i V^j`, partials by central
/// differences with step `1e-5 * (1 + |coordinate|)` per axis.
fn fd_bracket(v: &FrameField, w: &FrameField, p: Point) -> [f64; 3] {
    let vv = v.vector(p);
    let wv = w.vector(p);
    let mut out = [0.0f64; 3];
    for i in 0..3 {
        let h = 1e-5 * (1.0 + p[i].abs());
        let mut pp = p;
        let mut pm = p;
        pp[i] += h;
        pm[i] -= h;
        let wp = w.vector(pp);
        let wm = w.vector(pm);
        let vp = v.vector(pp);
        let vm = v.vector(pm);
        for j in 0..3 {
            let dw = (wp[j] - wm[j]) / (2.0 * h);
            let dv = (vp[j] - vm[j]) / (2.0 * h);
            out[j] += vv[i] * dw - wv[i] * dv;
        }
    }
    out
}

/// Sectional curvatures of the characteristic planes of `(G, g_eps)`:
/// `K_eps(X,Y)`, `K_eps(X,T_eps)`, `K_eps(Y,T_eps)` in closed form.
pub fn sectional_curvatures_eps(
    sc: &StructureConstants,
    eps: f64,
) -> Result<(f64, f64, f64), GroupError> {
    if !(eps > 0.0) {
        return Err(GroupError::NonPositiveEps { eps });
    }
    let e2 = eps * eps;
    let s = sc.a2 + sc.b1;
    let kxy = -sc.a3 * sc.a3 - sc.b3 * sc.b3
        + 0.5 * sc.c * (sc.a2 - sc.b1)
        + e2 * (s * s / 4.0 + sc.a1 * sc.a1)
        - 3.0 * sc.c * sc.c / (4.0 * e2);
    let kxt = sc.c * sc.c / (4.0 * e2)
        + e2 / 4.0 * (s * (sc.a2 - 3.0 * sc.b1) - 4.0 * sc.a1 * sc.a1)
        - 0.5 * sc.c * s;
    let kyt = sc.c * sc.c / (4.0 * e2)
        - e2 / 4.0 * (s * (3.0 * sc.a2 - sc.b1) + 4.0 * sc.a1 * sc.a1)
        + 0.5 * sc.c * s;
    Ok((kxy, kxt, kyt))
}

#[derive(Debug, Clone, PartialEq)]
pub enum GroupError {
    UnknownModel { name: String },
    OutsideChartDomain { point: Point, domain: &'static str },
    NonPositiveEps { eps: f64 },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::UnknownModel { name } => write!(f, "unknown group model `{name}`"),
            GroupError::OutsideChartDomain { point, domain } => write!(
                f,
                "point ({}, {}, {}) outside chart domain ({domain})",
                point[0], point[1], point[2]
            ),
            GroupError::NonPositiveEps { eps } => {
                write!(f, "approximation parameter must be positive, got {eps}")
            }
        }
    }
}

impl std::error::Error for GroupError {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::SplitMix64;

    #[test]
    fn builtin_constants_validate() {
        assert!(validate_structure_constants(&StructureConstants::heisenberg()).is_ok());
        assert!(validate_structure_constants(&StructureConstants::affine_additive()).is_ok());
    }

    #[test]
    fn unit_perturbations_are_rejected() {
        // any single-field bump of magnitude 1 that breaks a constraint
        let base = StructureConstants::affine_additive();
        let mut bad = base;
        bad.a1 += 1.0; // breaks a1 + b2 = 0 and a1*b3 - a3*b1 = 0
        let v = validate_structure_constants(&bad);
        assert!(!v.is_ok());
        assert!(v.violations.iter().any(|x| x.equation == "a1 + b2 = 0"));
        assert!((v.violations[1].residual - 1.0).abs() < 1e-15);

        let mut zero_c = StructureConstants::heisenberg();
        zero_c.c = 0.0;
        assert!(!validate_structure_constants(&zero_c).is_ok());
    }

    #[test]
    fn violation_reports_equation_and_residual() {
        let sc = StructureConstants::new(1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0);
        let v = validate_structure_constants(&sc);
        assert!(!v.is_ok());
        let hit = v
            .violations
            .iter()
            .find(|x| x.equation == "a1 + b2 = 0")
            .expect("trace constraint must be reported");
        assert!((hit.residual - 1.0).abs() < 1e-15);
    }

    #[test]
    fn builtin_models_have_expected_constants_and_frames() {
        let h = builtin_model(BuiltinModel::Heisenberg);
        assert_eq!(h.constants, StructureConstants::heisenberg());
        assert_eq!(
            h.frame(FrameIndex::X).vector([1.0, 2.0, 3.0]),
            [1.0, 0.0, 4.0]
        );
        assert_eq!(
            h.frame(FrameIndex::Y).vector([1.0, 2.0, 3.0]),
            [0.0, 1.0, -2.0]
        );

        let aa = builtin_model(BuiltinModel::AffineAdditive);
        assert_eq!(aa.constants, StructureConstants::affine_additive());
        assert_eq!(
            aa.frame(FrameIndex::X).vector([0.0, 3.0, 1.0]),
            [0.0, 6.0, 0.0]
        );
        assert_eq!(
            aa.frame(FrameIndex::Y).vector([0.0, 3.0, 1.0]),
            [1.0, 0.0, 6.0]
        );
        assert_eq!(
            aa.frame(FrameIndex::T).vector([0.0, 3.0, 1.0]),
            [-1.0, 0.0, 0.0]
        );

        let rho = builtin_model(BuiltinModel::AffineAdditiveRho);
        assert_eq!(
            rho.frame(FrameIndex::X).vector([0.0, 2.0, 3.0]),
            [0.0, 4.0, -6.0]
        );
        assert_eq!(
            rho.frame(FrameIndex::Y).vector([0.0, 2.0, 3.0]),
            [1.0, 0.0, 2.0]
        );
    }

    #[test]
    fn coframe_is_dual_to_frame() {
        for which in [
            BuiltinModel::Heisenberg,
            BuiltinModel::AffineAdditive,
            BuiltinModel::AffineAdditiveRho,
        ] {
            let m = builtin_model(which);
            let mut rng = SplitMix64::new(11);
            for _ in 0..20 {
                let p = [
                    rng.uniform(-2.0, 2.0),
                    rng.uniform(0.2, 3.0),
                    rng.uniform(-2.0, 2.0),
                ];
                for (i, form) in m.coframe().iter().enumerate() {
                    for j in 0..3 {
                        let v = m.frames()[j].vector(p);
                        let want = if i == j { 1.0 } else { 0.0 };
                        assert!(
                            (form.apply(p, v) - want).abs() < 1e-12,
                            "{}: {}({}) != {}",
                            m.name,
                            form.name,
                            m.frames()[j].name,
                            want
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn bracket_residual_heisenberg_point() {
        let m = builtin_model(BuiltinModel::Heisenberg);
        let r = bracket_residual(&m, [1.0, 2.0, 3.0]).unwrap();
        assert!(r < 1e-8, "residual {r}");
    }

    #[test]
    fn bracket_residual_affine_additive_point() {
        let m = builtin_model(BuiltinModel::AffineAdditive);
        let r = bracket_residual(&m, [0.0, 1.0, 0.0]).unwrap();
        assert!(r < 1e-8, "residual {r}");
    }

    #[test]
    fn bracket_residual_random_points() {
        let mut rng = SplitMix64::new(42);
        for which in [
            BuiltinModel::Heisenberg,
            BuiltinModel::AffineAdditive,
            BuiltinModel::AffineAdditiveRho,
        ] {
            let m = builtin_model(which);
            for _ in 0..100 {
                let p = [
                    rng.uniform(-3.0, 3.0),
                    if which == BuiltinModel::Heisenberg {
                        rng.uniform(-3.0, 3.0)
                    } else {
                        rng.uniform(0.1, 4.0)
                    },
                    rng.uniform(-3.0, 3.0),
                ];
                let r = bracket_residual(&m, p).unwrap();
                assert!(r < 1e-8, "{}: residual {r} at {p:?}", m.name);
            }
        }
    }

    #[test]
    fn bracket_residual_outside_domain_errors() {
        let m = builtin_model(BuiltinModel::AffineAdditive);
        let e = bracket_residual(&m, [0.0, -1.0, 0.0]).unwrap_err();
        assert!(matches!(e, GroupError::OutsideChartDomain { .. }));
    }

    #[test]
    fn sectional_curvatures_match_closed_forms() {
        let heis = StructureConstants::heisenberg();
        let aa = StructureConstants::affine_additive();
        for eps in [1.0, 0.5, 0.1, 0.01] {
            let (kxy, kxt, kyt) = sectional_curvatures_eps(&heis, eps).unwrap();
            assert_eq!(kxy, -12.0 / (eps * eps));
            assert_eq!(kxt, 4.0 / (eps * eps));
            assert_eq!(kyt, 4.0 / (eps * eps));

            let (kxy, kxt, kyt) = sectional_curvatures_eps(&aa, eps).unwrap();
            assert_eq!(kxy, -4.0 - 3.0 / (eps * eps));
            assert_eq!(kxt, 1.0 / (eps * eps));
            assert_eq!(kyt, 1.0 / (eps * eps));
        }
    }

    #[test]
    fn sectional_curvature_values_at_unit_eps() {
        let (kxy, kxt, kyt) =
            sectional_curvatures_eps(&StructureConstants::heisenberg(), 1.0).unwrap();
        assert_eq!((kxy, kxt, kyt), (-12.0, 4.0, 4.0));
        let (kxy, kxt, kyt) =
            sectional_curvatures_eps(&StructureConstants::affine_additive(), 1.0).unwrap();
        assert_eq!((kxy, kxt, kyt), (-7.0, 1.0, 1.0));
        let (kxy, kxt, kyt) =
            sectional_curvatures_eps(&StructureConstants::heisenberg(), 0.5).unwrap();
        assert_eq!((kxy, kxt, kyt), (-48.0, 16.0, 16.0));
    }

    #[test]
    fn unknown_model_name_is_an_error() {
        assert!(matches!(
            BuiltinModel::from_name("simple"),
            Err(GroupError::UnknownModel { .. })
        ));
        assert_eq!(
            BuiltinModel::from_name("aa"),
            Ok(BuiltinModel::AffineAdditive)
        );
    }

    #[test]
    fn eps_must_be_positive() {
        let e = sectional_curvatures_eps(&StructureConstants::heisenberg(), 0.0).unwrap_err();
        assert!(matches!(e, GroupError::NonPositiveEps { .. }));
    }
}
