//! Shared numerical helpers: adaptive quadrature, least-squares slopes,
//! guarded root finding and a small deterministic RNG for sampling-based
//! checks.

/// Adaptive Simpson quadrature on `[a, b]`.
///
/// Bisection recursion with the usual 1/15 Richardson error estimate,
/// depth-capped; `tol` is an absolute tolerance on the whole interval.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
) -> Result<f64, QuadError> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(QuadError::BadInterval { a, b });
    }
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    if !(fa.is_finite() && fb.is_finite() && fm.is_finite()) {
        return Err(QuadError::NonFiniteIntegrand { at: m });
    }
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64, QuadError> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    if !(flm.is_finite() && frm.is_finite()) {
        return Err(QuadError::NonFiniteIntegrand { at: lm });
    }
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 {
        return Err(QuadError::DepthExceeded);
    }
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    let lv = simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let rv = simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Ok(lv + rv)
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuadError {
    BadInterval { a: f64, b: f64 },
    NonFiniteIntegrand { at: f64 },
    DepthExceeded,
}

impl std::fmt::Display for QuadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuadError::BadInterval { a, b } => write!(f, "bad integration interval [{a}, {b}]"),
            QuadError::NonFiniteIntegrand { at } => {
                write!(f, "integrand not finite near {at}")
            }
            QuadError::DepthExceeded => write!(f, "quadrature bisection depth exceeded"),
        }
    }
}

impl std::error::Error for QuadError {}

/// Least-squares slope of `y` against `x`.
pub fn ls_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
    }
    if sxx == 0.0 {
        return None;
    }
    Some(sxy / sxx)
}

/// Log-log convergence rate of `errs` against `eps`.
///
/// Rows whose error sits below `floor` are treated as exactly converged and
/// dropped; if fewer than two informative rows remain the sequence is reported
/// as converged at infinite order.
pub fn loglog_slope(eps: &[f64], errs: &[f64], floor: f64) -> f64 {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&e, &r) in eps.iter().zip(errs) {
        if r.abs() > floor && e > 0.0 {
            xs.push(e.ln());
            ys.push(r.abs().ln());
        }
    }
    if xs.len() < 2 {
        return f64::INFINITY;
    }
    ls_slope(&xs, &ys).unwrap_or(f64::INFINITY)
}

/// Newton iteration on a bracketed root with bisection fallback.
///
/// `lo < hi` must bracket a sign change of `f`; `x0` seeds Newton.  Iterates
/// to machine-level convergence (or `max_iter`), falling back to bisection
/// whenever a Newton step leaves the bracket or the derivative degenerates.
pub fn newton_bisect<F, D>(
    f: F,
    df: D,
    mut lo: f64,
    mut hi: f64,
    x0: f64,
    tol: f64,
    max_iter: usize,
) -> Result<f64, RootError>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(RootError::NoBracket { lo, hi });
    }
    let mut x = x0.clamp(lo, hi);
    for _ in 0..max_iter {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        // shrink the bracket
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        let d = df(x);
        let newton = if d != 0.0 { x - fx / d } else { f64::NAN };
        let next = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - x).abs();
        x = next;
        if step <= tol * (1.0 + x.abs()) {
            return Ok(x);
        }
    }
    // bracket is tiny by now for well-behaved inputs
    if (hi - lo).abs() <= 64.0 * tol * (1.0 + x.abs()) {
        return Ok(x);
    }
    Err(RootError::NoConvergence { last: x })
}

#[derive(Debug, Clone, PartialEq)]
pub enum RootError {
    NoBracket { lo: f64, hi: f64 },
    NoConvergence { last: f64 },
}

impl std::fmt::Display for RootError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootError::NoBracket { lo, hi } => {
                write!(f, "no sign change on [{lo}, {hi}]")
            }
            RootError::NoConvergence { last } => {
                write!(f, "root iteration failed to converge (last iterate {last})")
            }
        }
    }
}

impl std::error::Error for RootError {}

/// SplitMix64: tiny deterministic RNG for reproducible sampling in checks.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[a, b)`.
    pub fn uniform(&mut self, a: f64, b: f64) -> f64 {
        a + (b - a) * self.next_f64()
    }

    /// Uniform over `{-1, +1}`.
    pub fn sign(&mut self) -> f64 {
        if self.next_u64() & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[(self.next_u64() % items.len() as u64) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_exact_on_cubics() {
        let v = adaptive_simpson(&|x: f64| x * x * x - 2.0 * x, 0.0, 2.0, 1e-12, 20).unwrap();
        assert!((v - 0.0).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn simpson_smooth() {
        let v = adaptive_simpson(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-12, 40).unwrap();
        assert!((v - 2.0).abs() < 1e-10, "got {v}");
    }

    #[test]
    fn simpson_near_singular_endpoint() {
        // integral of 1/sqrt(x) on [1e-12, 1] is 2 - 2e-6
        let v = adaptive_simpson(&|x: f64| x.powf(-0.5), 1e-12, 1.0, 1e-10, 60).unwrap();
        assert!((v - (2.0 - 2e-6)).abs() < 1e-6, "got {v}");
    }

    #[test]
    fn slope_recovers_order() {
        let eps = [1e-1, 1e-2, 1e-3, 1e-4];
        let errs: Vec<f64> = eps.iter().map(|e| 3.0 * e * e).collect();
        let s = loglog_slope(&eps, &errs, 1e-14);
        assert!((s - 2.0).abs() < 1e-12);
    }

    #[test]
    fn slope_of_exact_sequence_is_infinite() {
        let eps = [1e-1, 1e-2];
        let errs = [0.0, 0.0];
        assert!(loglog_slope(&eps, &errs, 1e-14).is_infinite());
    }

    #[test]
    fn newton_with_fallback() {
        let r = newton_bisect(|x| x * x - 2.0, |x| 2.0 * x, 0.0, 2.0, 1.0, 1e-15, 60).unwrap();
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn rng_is_deterministic() {
        let mut a = SplitMix64::new(7);
        let mut b = SplitMix64::new(7);
        for _ in 0..10 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }
}
