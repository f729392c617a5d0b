//! The individual constant-curvature branches.
//!
//! Every branch exposes an analytic `f'` (and `f''` by differentiating it),
//! the named validity inequalities of its domain, and a closed form for `f`
//! where one exists; the remaining branches are integrated by quadrature of
//! `f'`.  Branch and sub-case selection is always an explicit caller choice.

use super::{BranchSel, CurvKind, ProfileParams, RevolutionError, RevolutionGroup};

/// Sub-case of the constant-mean-curvature family in the affine-additive
/// group, fixed by the signs of `alpha = 1 - h^2/4` and
/// `Delta = (1 - c1^2) - (c1 h)^2 / (4 alpha)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AaHCase {
    /// `h = 2` (`alpha = 0`)
    SqrtPos,
    /// `h = -2` (`alpha = 0`)
    SqrtNeg,
    /// `alpha > 0`, `Delta > 0`
    Arcsinh,
    /// `alpha > 0`, `Delta < 0` (needs `|rho + beta/(2 alpha)|` above the gap)
    Arccosh,
    /// `alpha > 0`, `Delta = 0`
    Log,
    /// `alpha < 0`, `Delta > 0`
    Arcsin,
}

impl AaHCase {
    pub fn from_name(name: &str) -> Result<Self, RevolutionError> {
        match name {
            "arcsinh" | "arsinh" => Ok(AaHCase::Arcsinh),
            "arccosh" | "arcosh" => Ok(AaHCase::Arccosh),
            "log" | "ln" => Ok(AaHCase::Log),
            "arcsin" | "asin" => Ok(AaHCase::Arcsin),
            _ => Err(RevolutionError::InvalidParams(format!(
                "unknown sub-case `{name}` (expected arcsinh, arccosh, log or arcsin)"
            ))),
        }
    }
}

/// One selected branch with its parameters baked in.
#[derive(Clone, Debug)]
pub enum Branch {
    /// Zero Gauss curvature: `f' = s r sqrt(C r^2 - 4)`.
    HeisK0 { c: f64, sign: f64 },
    /// `K = +-1`: `f' = s 2r sqrt((k r^4 + 4 r^2 - C)/(C - k r^4))`, quadrature.
    HeisKPm { k: f64, c: f64, sign: f64 },
    /// `K = -1`, `C = 0`: `f' = s 2 sqrt(4 - r^2)`.
    HeisKNegC0 { sign: f64 },
    /// Zero mean curvature: `f' = s 2 C r / sqrt(16 r^2 - C^2)`.
    HeisH0 { c: f64, sign: f64 },
    /// Constant mean curvature: `f' = s 2 r (2 h r^2 + C)/sqrt(16 r^2 - (2 h r^2 + C)^2)`;
    /// the surface realises `H = -s h`.
    HeisH {
        h: f64,
        c: f64,
        sign: f64,
        /// `sqrt(16/h^2 - 8C/h)`
        d: f64,
        /// anchor value of the antiderivative at the lower domain endpoint
        g_lo: f64,
    },
    /// Constant distortion: `f' = s 2 r sqrt(1 - w^2)/w`, `w = -q r/2 - c1/r`,
    /// quadrature.  Requires `0 < w < 1`.
    HeisQ { q: f64, c1: f64, sign: f64 },
    /// Zero Gauss curvature: `f' = (1 + s rho sqrt(c (rho^2+1) - 1))/(2 (rho^2+1))`.
    AaK0 { c: f64, sign: f64 },
    /// `K = -4`: `f' = (1 + s rho sqrt((1-c)/(rho^2+c)))/(2 (rho^2+1))`.
    AaKm4 { c: f64, sign: f64 },
    /// `K = -4` partial solution: `f = arctan(rho)/2 + C`.
    AaKm4Partial,
    /// General constant Gauss curvature (`k != 0, -4`, `c != -k/4`).
    AaKGen { k: f64, c: f64, sign: f64, c1k: f64 },
    /// `c = -k/4`, `k` in `(-4, 0)`: `f' = (1 + s rho sqrt(-(k+4)/k))/(2 (rho^2+1))`.
    AaKPart { root: f64, sign: f64 },
    /// Constant mean curvature (`H = s h` on `rho > 0`, `-s h` on `rho < 0`).
    AaH {
        h: f64,
        c1: f64,
        sign: f64,
        case: AaHCase,
        alpha: f64,
        beta: f64,
        delta: f64,
    },
    /// Constant distortion: two `g`-roots over `v = c1/rho - q/2 > 0`, quadrature.
    AaQ { q: f64, c1: f64, sign: f64 },
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-12
}

impl Branch {
    pub(super) fn select(
        group: RevolutionGroup,
        kind: CurvKind,
        target: f64,
        params: &ProfileParams,
    ) -> Result<Branch, RevolutionError> {
        let sign = params.branch.sign();
        match (group, kind) {
            (RevolutionGroup::Heisenberg, CurvKind::K) => {
                if near(target, 0.0) {
                    let c = params.require("C")?;
                    if c <= 0.0 {
                        return Err(RevolutionError::EmptyDomain {
                            inequality: "C r^2 - 4 > 0 (requires C > 0)".into(),
                        });
                    }
                    Ok(Branch::HeisK0 { c, sign })
                } else if near(target, 1.0) {
                    Ok(Branch::HeisKPm {
                        k: 1.0,
                        c: params.require("C")?,
                        sign,
                    })
                } else if near(target, -1.0) {
                    let c = params.require("C")?;
                    if c == 0.0 {
                        Ok(Branch::HeisKNegC0 { sign })
                    } else {
                        Ok(Branch::HeisKPm { k: -1.0, c, sign })
                    }
                } else {
                    Err(RevolutionError::InvalidParams(format!(
                        "constant Gauss curvature is classified for k in {{-1, 0, 1}} \
                         (rescale by a dilation); got {target}"
                    )))
                }
            }
            (RevolutionGroup::Heisenberg, CurvKind::H) => {
                if near(target, 0.0) {
                    Ok(Branch::HeisH0 {
                        c: params.require("C")?,
                        sign,
                    })
                } else {
                    // the branch with sign s realises H = -s h
                    let h = -sign * target;
                    let c = params.require("C")?;
                    let dsq = 16.0 / (h * h) - 8.0 * c / h;
                    if dsq <= 0.0 {
                        return Err(RevolutionError::EmptyDomain {
                            inequality: "16/h^2 - 8 C/h > 0".into(),
                        });
                    }
                    let d = dsq.sqrt();
                    // lower endpoint of the single admissible radius interval
                    let disc = 4.0 - 2.0 * h * c; // = h^2 dsq / 8 * 2 ... > 0 here
                    let x_lo = (4.0 - h * c - 2.0 * disc.sqrt()) / (2.0 * h * h);
                    let r_lo = x_lo.max(0.0).sqrt();
                    let s_lo = 2.0 * h * r_lo * r_lo + c;
                    let g_lo = 2.0 / (h * h) * ((s_lo - 4.0 / h) / d).clamp(-1.0, 1.0).asin();
                    Ok(Branch::HeisH {
                        h,
                        c,
                        sign,
                        d,
                        g_lo,
                    })
                }
            }
            (RevolutionGroup::Heisenberg, CurvKind::Q) => {
                if near(target, 0.0) {
                    // zero distortion coincides with the zero-Gauss-curvature family
                    let c = params.require("C")?;
                    if c <= 0.0 {
                        return Err(RevolutionError::EmptyDomain {
                            inequality: "C r^2 - 4 > 0 (requires C > 0)".into(),
                        });
                    }
                    Ok(Branch::HeisK0 { c, sign })
                } else {
                    Ok(Branch::HeisQ {
                        q: target,
                        c1: params.require("c1")?,
                        sign,
                    })
                }
            }
            (RevolutionGroup::AffineAdditive, CurvKind::K) => {
                if near(target, 0.0) {
                    let c = params.require("c")?;
                    if c <= 0.0 {
                        return Err(RevolutionError::EmptyDomain {
                            inequality: "c (rho^2 + 1) - 1 > 0 (requires c > 0)".into(),
                        });
                    }
                    Ok(Branch::AaK0 { c, sign })
                } else if near(target, -4.0) {
                    if params.branch == BranchSel::Partial {
                        Ok(Branch::AaKm4Partial)
                    } else {
                        let c = params.require("c")?;
                        if !(c > 0.0 && c < 1.0) {
                            return Err(RevolutionError::InvalidParams(format!(
                                "branch requires c in (0, 1), got {c}"
                            )));
                        }
                        Ok(Branch::AaKm4 { c, sign })
                    }
                } else {
                    let k = target;
                    let c = params.require("c")?;
                    if near(c, k / 4.0) {
                        return Err(RevolutionError::InvalidParams(format!(
                            "c = k/4 is excluded (got c = {c}, k = {k})"
                        )));
                    }
                    if near(c, -k / 4.0) {
                        if !(k > -4.0 && k < 0.0) {
                            return Err(RevolutionError::EmptyDomain {
                                inequality: "c = -k/4 needs k in (-4, 0)".into(),
                            });
                        }
                        Ok(Branch::AaKPart {
                            root: (-(k + 4.0) / k).sqrt(),
                            sign,
                        })
                    } else {
                        Ok(Branch::AaKGen {
                            k,
                            c,
                            sign,
                            c1k: (k + 4.0) / k,
                        })
                    }
                }
            }
            (RevolutionGroup::AffineAdditive, CurvKind::H) => {
                if near(target, 0.0) {
                    // minimal surfaces coincide with the K = -4 families
                    if params.branch == BranchSel::Partial {
                        Ok(Branch::AaKm4Partial)
                    } else {
                        let c = params.require("c")?;
                        if !(c > 0.0 && c < 1.0) {
                            return Err(RevolutionError::InvalidParams(format!(
                                "branch requires c in (0, 1), got {c}"
                            )));
                        }
                        Ok(Branch::AaKm4 { c, sign })
                    }
                } else {
                    let h = target;
                    let c1 = params.require("c1")?;
                    let alpha = 1.0 - h * h / 4.0;
                    let beta = c1 * h;
                    let gamma = 1.0 - c1 * c1;
                    if near(h, 2.0) || near(h, -2.0) {
                        if c1 == 0.0 {
                            return Err(RevolutionError::InvalidParams(
                                "h = +-2 needs c1 != 0".into(),
                            ));
                        }
                        let case = if h > 0.0 {
                            AaHCase::SqrtPos
                        } else {
                            AaHCase::SqrtNeg
                        };
                        return Ok(Branch::AaH {
                            h,
                            c1,
                            sign,
                            case,
                            alpha: 0.0,
                            beta,
                            delta: gamma,
                        });
                    }
                    let delta = gamma - beta * beta / (4.0 * alpha);
                    if alpha < 0.0 && delta <= 0.0 {
                        return Err(RevolutionError::EmptyDomain {
                            inequality: "alpha < 0 with Delta <= 0 admits no rho".into(),
                        });
                    }
                    let case = params.case.ok_or_else(|| {
                        RevolutionError::InvalidParams(format!(
                            "sub-case must be chosen explicitly via case=arcsinh|arccosh|log|arcsin \
                             (here alpha = {alpha}, Delta = {delta})"
                        ))
                    })?;
                    let consistent = match case {
                        AaHCase::Arcsinh => alpha > 0.0 && delta > 0.0,
                        AaHCase::Arccosh => alpha > 0.0 && delta < 0.0,
                        AaHCase::Log => alpha > 0.0 && delta.abs() < 1e-12,
                        AaHCase::Arcsin => alpha < 0.0 && delta > 0.0,
                        AaHCase::SqrtPos | AaHCase::SqrtNeg => false,
                    };
                    if !consistent {
                        return Err(RevolutionError::InvalidParams(format!(
                            "sub-case {case:?} is inconsistent with alpha = {alpha}, Delta = {delta}"
                        )));
                    }
                    Ok(Branch::AaH {
                        h,
                        c1,
                        sign,
                        case,
                        alpha,
                        beta,
                        delta,
                    })
                }
            }
            (RevolutionGroup::AffineAdditive, CurvKind::Q) => {
                if near(target, 0.0) {
                    let c = params.require("c")?;
                    if c <= 0.0 {
                        return Err(RevolutionError::EmptyDomain {
                            inequality: "c (rho^2 + 1) - 1 > 0 (requires c > 0)".into(),
                        });
                    }
                    Ok(Branch::AaK0 { c, sign })
                } else {
                    Ok(Branch::AaQ {
                        q: target,
                        c1: params.require("c1")?,
                        sign,
                    })
                }
            }
        }
    }

    pub fn is_quadrature(&self) -> bool {
        matches!(
            self,
            Branch::HeisKPm { .. } | Branch::HeisQ { .. } | Branch::AaQ { .. }
        )
    }

    /// First violated validity inequality at `s`, if any.
    pub fn check_validity(&self, s: f64) -> Result<(), &'static str> {
        match self {
            Branch::HeisK0 { c, .. } => {
                if s <= 0.0 {
                    return Err("r > 0");
                }
                if c * s * s - 4.0 <= 0.0 {
                    return Err("C r^2 - 4 > 0");
                }
                Ok(())
            }
            Branch::HeisKPm { k, c, .. } => {
                if s <= 0.0 {
                    return Err("r > 0");
                }
                let r4 = s.powi(4);
                if *k > 0.0 {
                    if c - r4 <= 0.0 {
                        return Err("C - r^4 > 0");
                    }
                    if r4 + 4.0 * s * s - c <= 0.0 {
                        return Err("r^4 + 4 r^2 - C > 0");
                    }
                } else {
                    if c + r4 <= 0.0 {
                        return Err("C + r^4 > 0");
                    }
                    if 4.0 * s * s - r4 - c <= 0.0 {
                        return Err("4 r^2 - r^4 - C > 0");
                    }
                }
                Ok(())
            }
            Branch::HeisKNegC0 { .. } => {
                if s <= 0.0 {
                    return Err("r > 0");
                }
                if 4.0 - s * s <= 0.0 {
                    return Err("4 - r^2 > 0");
                }
                Ok(())
            }
            Branch::HeisH0 { c, .. } => {
                if s <= 0.0 {
                    return Err("r > 0");
                }
                if 16.0 * s * s - c * c <= 0.0 {
                    return Err("16 r^2 - C^2 > 0");
                }
                Ok(())
            }
            Branch::HeisH { h, c, .. } => {
                if s <= 0.0 {
                    return Err("r > 0");
                }
                let w = 2.0 * h * s * s + c;
                if 16.0 * s * s - w * w <= 0.0 {
                    return Err("16 r^2 - (2 h r^2 + C)^2 > 0");
                }
                Ok(())
            }
            Branch::HeisQ { q, c1, .. } => {
                if s <= 0.0 {
                    return Err("r > 0");
                }
                let w = -q * s / 2.0 - c1 / s;
                if w <= 0.0 {
                    return Err("-q r/2 - c1/r > 0");
                }
                if w >= 1.0 {
                    return Err("-q r/2 - c1/r < 1");
                }
                Ok(())
            }
            Branch::AaK0 { c, .. } => {
                if c * (s * s + 1.0) - 1.0 <= 0.0 {
                    return Err("c (rho^2 + 1) - 1 > 0");
                }
                Ok(())
            }
            Branch::AaKm4 { .. } | Branch::AaKm4Partial | Branch::AaKPart { .. } => Ok(()),
            Branch::AaKGen { k, c, .. } => {
                if c - k / 4.0 * s * s <= 0.0 {
                    return Err("c - (k/4) rho^2 > 0");
                }
                if (1.0 + k / 4.0) * s * s + 1.0 - c <= 0.0 {
                    return Err("(1 + k/4) rho^2 + 1 - c > 0");
                }
                Ok(())
            }
            Branch::AaH { h, c1, .. } => {
                let a = c1 - h / 2.0 * s;
                if s * s + 1.0 - a * a <= 0.0 {
                    return Err("rho^2 + 1 - (c1 - (h/2) rho)^2 > 0");
                }
                Ok(())
            }
            Branch::AaQ { q, c1, .. } => {
                if s == 0.0 {
                    return Err("rho != 0");
                }
                let v = c1 / s - q / 2.0;
                if v <= 0.0 {
                    return Err("c1/rho - q/2 > 0");
                }
                if s * s * (1.0 - v * v) + 1.0 <= 0.0 {
                    return Err("rho^2 (1 - v^2) + 1 > 0");
                }
                Ok(())
            }
        }
    }

    /// Analytic `f'`.
    pub fn fprime(&self, s: f64) -> f64 {
        match self {
            Branch::HeisK0 { c, sign } => sign * s * (c * s * s - 4.0).sqrt(),
            Branch::HeisKPm { k, c, sign } => {
                let r4 = s.powi(4);
                let n = k * r4 + 4.0 * s * s - c;
                let d = c - k * r4;
                sign * 2.0 * s * (n / d).sqrt()
            }
            Branch::HeisKNegC0 { sign } => sign * 2.0 * (4.0 - s * s).sqrt(),
            Branch::HeisH0 { c, sign } => sign * 2.0 * c * s / (16.0 * s * s - c * c).sqrt(),
            Branch::HeisH { h, c, sign, .. } => {
                let w = 2.0 * h * s * s + c;
                sign * 2.0 * s * w / (16.0 * s * s - w * w).sqrt()
            }
            Branch::HeisQ { q, c1, sign } => {
                let w = -q * s / 2.0 - c1 / s;
                sign * 2.0 * s * (1.0 - w * w).sqrt() / w
            }
            _ => aa_g(self.aa_m(s), s),
        }
    }

    /// Analytic `f''` (derivative of [`Branch::fprime`]).
    pub fn fsecond(&self, s: f64) -> f64 {
        match self {
            Branch::HeisK0 { c, sign } => sign * (2.0 * c * s * s - 4.0) / (c * s * s - 4.0).sqrt(),
            Branch::HeisKPm { k, c, sign } => {
                let r4 = s.powi(4);
                let n = k * r4 + 4.0 * s * s - c;
                let d = c - k * r4;
                let np = 4.0 * k * s * s * s + 8.0 * s;
                let dp = -4.0 * k * s * s * s;
                sign * 2.0 * (n / d).sqrt() * (1.0 + s * (np * d - n * dp) / (2.0 * n * d))
            }
            Branch::HeisKNegC0 { sign } => -sign * 2.0 * s / (4.0 - s * s).sqrt(),
            Branch::HeisH0 { c, sign } => {
                -sign * 2.0 * c * c * c / (16.0 * s * s - c * c).powf(1.5)
            }
            Branch::HeisH { h, c, sign, .. } => {
                let w = 2.0 * h * s * s + c;
                let v = 16.0 * s * s - w * w;
                sign * 2.0
                    * ((w + 4.0 * h * s * s) / v.sqrt()
                        - (16.0 * s * s * w - 4.0 * h * s * s * w * w) / v.powf(1.5))
            }
            Branch::HeisQ { q, c1, sign } => {
                let w = -q * s / 2.0 - c1 / s;
                let wp = -q / 2.0 + c1 / (s * s);
                let root = (1.0 - w * w).sqrt();
                sign * 2.0 * (root / w - s * wp / (w * w * root))
            }
            _ => {
                let (m, mp) = (self.aa_m(s), self.aa_mprime(s));
                aa_gprime(m, mp, s)
            }
        }
    }

    /// Closed form for `f` (without the additive constant).  Quadrature
    /// branches have none.
    pub fn f_closed(&self, s: f64) -> f64 {
        match self {
            Branch::HeisK0 { c, sign } => sign * (c * s * s - 4.0).powf(1.5) / (3.0 * c),
            Branch::HeisKNegC0 { sign } => {
                sign * (s * (4.0 - s * s).sqrt() + 4.0 * (s / 2.0).asin())
            }
            Branch::HeisH0 { c, sign } => sign * c / 8.0 * (16.0 * s * s - c * c).sqrt(),
            Branch::HeisH {
                h,
                c,
                sign,
                d,
                g_lo,
                ..
            } => {
                let w = 2.0 * h * s * s + c;
                let p = (16.0 * s * s - w * w).max(0.0);
                let g = -p.sqrt() / (2.0 * h)
                    + 2.0 / (h * h) * ((w - 4.0 / h) / d).clamp(-1.0, 1.0).asin();
                sign * (g - g_lo)
            }
            Branch::AaK0 { c, sign } => {
                let e = (c * (s * s + 1.0) - 1.0).max(0.0).sqrt();
                0.5 * (sign * e - sign * e.atan() + s.atan())
            }
            Branch::AaKm4 { c, sign } => {
                let w = ((s * s + c) / (1.0 - c)).sqrt();
                0.5 * (sign * w.atan() + s.atan())
            }
            Branch::AaKm4Partial => 0.5 * s.atan(),
            Branch::AaKGen { k, c, sign, c1k } => {
                let w = (((1.0 + k / 4.0) * s * s + 1.0 - c) / (c - k / 4.0 * s * s)).sqrt();
                let i1 = if *c1k > 0.0 {
                    let b = c1k.sqrt();
                    b / 2.0 * (w / b).atan()
                } else {
                    let b = (-c1k).sqrt();
                    -b / 4.0 * (((w - b) / (w + b)).abs()).ln()
                };
                0.5 * s.atan() + sign * (-0.5 * w.atan() + i1)
            }
            Branch::AaKPart { root, sign } => {
                sign * root / 4.0 * (s * s + 1.0).ln() + 0.5 * s.atan()
            }
            Branch::AaH {
                h,
                c1,
                sign,
                case,
                alpha,
                beta,
                delta,
            } => {
                let a = c1 - h / 2.0 * s;
                let acos_part = (a / (s * s + 1.0).sqrt()).clamp(-1.0, 1.0).acos();
                let g = match case {
                    AaHCase::SqrtPos | AaHCase::SqrtNeg => {
                        // alpha = 0: radicand is beta rho + gamma = rho^2+1-A^2
                        let rad = (s * s + 1.0 - a * a).max(0.0);
                        -sign * rad.sqrt() / (2.0 * c1)
                    }
                    AaHCase::Arcsinh => {
                        let sig = s + beta / (2.0 * alpha);
                        let b = (delta / alpha).sqrt();
                        -sign * h / (4.0 * alpha.sqrt()) * (sig / b).asinh()
                    }
                    AaHCase::Arccosh => {
                        let sig = s + beta / (2.0 * alpha);
                        let b = (-delta / alpha).sqrt();
                        -sign * h / (4.0 * alpha.sqrt())
                            * sig.signum()
                            * (sig.abs() / b).max(1.0).acosh()
                    }
                    AaHCase::Log => {
                        let sig = s + beta / (2.0 * alpha);
                        -sign * h / (4.0 * alpha.sqrt()) * sig.signum() * sig.abs().ln()
                    }
                    AaHCase::Arcsin => {
                        let sig = s + beta / (2.0 * alpha);
                        let arg = (sig * (-alpha).sqrt() / delta.sqrt()).clamp(-1.0, 1.0);
                        -sign * h / (4.0 * (-alpha).sqrt()) * arg.asin()
                    }
                };
                0.5 * s.atan() + sign * 0.5 * acos_part + g
            }
            Branch::HeisKPm { .. } | Branch::HeisQ { .. } | Branch::AaQ { .. } => {
                unreachable!("quadrature branch has no closed form")
            }
        }
    }

    /// The deviation `m = 2 (rho^2 + 1) f' - 1` of the affine-additive
    /// branches; `f' = (1 + m)/(2 (rho^2 + 1))`.
    fn aa_m(&self, s: f64) -> f64 {
        match self {
            Branch::AaK0 { c, sign } => sign * s * (c * (s * s + 1.0) - 1.0).sqrt(),
            Branch::AaKm4 { c, sign } => sign * s * ((1.0 - c) / (s * s + c)).sqrt(),
            Branch::AaKm4Partial => 0.0,
            Branch::AaKGen { k, c, sign, .. } => {
                let w = (((1.0 + k / 4.0) * s * s + 1.0 - c) / (c - k / 4.0 * s * s)).sqrt();
                sign * s * w
            }
            Branch::AaKPart { root, sign } => sign * s * root,
            Branch::AaH { h, c1, sign, .. } => {
                let a = c1 - h / 2.0 * s;
                sign * s * a / (s * s + 1.0 - a * a).sqrt()
            }
            Branch::AaQ { q, c1, sign } => {
                let v = c1 / s - q / 2.0;
                let x = s * s * (1.0 - v * v) + 1.0;
                sign * x.sqrt() / v
            }
            _ => unreachable!("Heisenberg branch"),
        }
    }

    fn aa_mprime(&self, s: f64) -> f64 {
        match self {
            Branch::AaK0 { c, sign } => {
                let e = c * (s * s + 1.0) - 1.0;
                sign * (c * (2.0 * s * s + 1.0) - 1.0) / e.sqrt()
            }
            Branch::AaKm4 { c, sign } => sign * (1.0 - c).sqrt() * c / (s * s + c).powf(1.5),
            Branch::AaKm4Partial => 0.0,
            Branch::AaKGen { k, c, sign, .. } => {
                let dm = c - k / 4.0 * s * s;
                let w = (((1.0 + k / 4.0) * s * s + 1.0 - c) / dm).sqrt();
                let wp = s * (c + k / 4.0) / (w * dm * dm);
                sign * (w + s * wp)
            }
            Branch::AaKPart { root, sign } => sign * root,
            Branch::AaH { h, c1, sign, .. } => {
                let a = c1 - h / 2.0 * s;
                let big = s * s + 1.0 - a * a;
                let bigp = 2.0 * s + h * a;
                sign * ((c1 - h * s) / big.sqrt() - s * a * bigp / (2.0 * big.powf(1.5)))
            }
            Branch::AaQ { q, c1, sign } => {
                let v = c1 / s - q / 2.0;
                let vp = -c1 / (s * s);
                let x = s * s * (1.0 - v * v) + 1.0;
                let xp = 2.0 * s * (1.0 - v * v) - 2.0 * s * s * v * vp;
                sign * (xp / (2.0 * v * x.sqrt()) - x.sqrt() * vp / (v * v))
            }
            _ => unreachable!("Heisenberg branch"),
        }
    }
}

fn aa_g(m: f64, s: f64) -> f64 {
    (1.0 + m) / (2.0 * (s * s + 1.0))
}

fn aa_gprime(m: f64, mp: f64, s: f64) -> f64 {
    let d = s * s + 1.0;
    (mp * d - 2.0 * s * (1.0 + m)) / (2.0 * d * d)
}
