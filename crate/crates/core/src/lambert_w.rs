//! All branches of the Lambert W function on the complex plane.
//!
//! `W_k(z)` is the `k`-th solution `w` of `w·exp(w) = z`. Branch ranges are the
//! usual horizontal strips: `W_0` is real on `[-1/e, ∞)`, `W_{-1}` is real on
//! `[-1/e, 0)`, and every other branch is complex off its cut. Cuts run along
//! `(-∞, -1/e]` for `W_0` and `(-∞, 0]` for `k != 0`; values on a cut are the limit
//! from above (counter-clockwise continuity), so a `-0.0` imaginary part is
//! treated as `+0.0`.
//!
//! Evaluation seeds Halley's iteration from one of three approximations: a
//! rational approximation near the origin (`k = 0`), the series in
//! `p = sqrt(2(e·z + 1))` near the branch point, and the asymptotic expansion
//! `L1 - L2 + L2/L1` with `L1 = log z + 2πik`, `L2 = log L1` elsewhere. Every
//! result is checked against `w·exp(w) = z` and against the branch it landed on.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ComplexValue;

const INV_E: f64 = 1.0 / E;
const TWO_PI: f64 = 2.0 * PI;
const MAX_ITERATIONS: u32 = 64;
const STEP_TOLERANCE: f64 = 1e-15;
/// Upper bound on `|w·exp(w) - z| / (1 + |z|)` for an accepted evaluation.
pub const RESIDUAL_TOLERANCE: f64 = 1e-12;
/// Largest number of terms accepted by [`w_series`].
pub const MAX_SERIES_TERMS: usize = 170;

/// Index `k` selecting the branch `W_k`; `0` is the principal branch.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct BranchIndex(pub i64);

impl BranchIndex {
    pub const PRINCIPAL: BranchIndex = BranchIndex(0);

    pub fn get(self) -> i64 {
        self.0
    }
}

impl From<i64> for BranchIndex {
    fn from(k: i64) -> Self {
        BranchIndex(k)
    }
}

impl From<i32> for BranchIndex {
    fn from(k: i32) -> Self {
        BranchIndex(i64::from(k))
    }
}

impl std::fmt::Display for BranchIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A converged value of `W_k(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WEvaluation {
    pub value: ComplexValue,
    pub branch: BranchIndex,
    /// `|w·exp(w) - z| / (1 + |z|)`.
    pub residual: f64,
    pub iterations: u32,
}

fn is_finite(z: ComplexValue) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Relative residual of `w` as a root of `w·exp(w) = z`.
pub fn residual(w: ComplexValue, z: ComplexValue) -> f64 {
    (w * w.exp() - z).norm() / (1.0 + z.norm())
}

/// Evaluate `W_k(z)`.
///
/// Real arguments on the real segments of `W_0` and `W_{-1}` are routed through
/// [`lambert_w_real`]. Fails with `BranchSingularity` for `k != 0` at `z = 0`.
pub fn lambert_w(k: impl Into<BranchIndex>, z: ComplexValue) -> Result<WEvaluation> {
    let branch = k.into();
    let k = branch.0;
    if !is_finite(z) {
        return Err(Error::NonFinite("z"));
    }
    // Signed zeros: values on a cut come from above.
    let z = ComplexValue::new(z.re + 0.0, z.im + 0.0);

    if z.re == 0.0 && z.im == 0.0 {
        if k == 0 {
            return Ok(WEvaluation {
                value: ComplexValue::new(0.0, 0.0),
                branch,
                residual: 0.0,
                iterations: 0,
            });
        }
        return Err(Error::BranchSingularity { k });
    }

    if z.im == 0.0 && on_real_segment(k, z.re) {
        let (w, iterations) = real_branch(k, z.re)?;
        let value = ComplexValue::new(w, 0.0);
        return Ok(WEvaluation {
            value,
            branch,
            residual: residual(value, z),
            iterations,
        });
    }

    for seed in seeds(k, z) {
        let Some((w, iterations)) = halley(z, seed) else {
            continue;
        };
        let res = residual(w, z);
        if res <= RESIDUAL_TOLERANCE && lands_on_branch(k, w, z) {
            return Ok(WEvaluation {
                value: w,
                branch,
                residual: res,
                iterations,
            });
        }
    }
    Err(Error::NoConvergence { k, z })
}

fn on_real_segment(k: i64, x: f64) -> bool {
    match k {
        0 => x.mul_add(E, 1.0) >= -BRANCH_POINT_SNAP,
        -1 => x < 0.0 && x.mul_add(E, 1.0) >= -BRANCH_POINT_SNAP,
        _ => false,
    }
}

/// `ln w + w = ln z + 2πik` holds on branch `k` away from the cuts; the integer
/// it implies identifies the branch a Halley run converged to.
fn lands_on_branch(k: i64, w: ComplexValue, z: ComplexValue) -> bool {
    // On the negative real w axis arg(w) flips with the sign of a rounding error.
    if w.re < 0.0 && w.im.abs() <= 1e-8 * w.norm() {
        return true;
    }
    let winding = (w.arg() + w.im - z.arg()) / TWO_PI;
    winding.round() as i64 == k
}

fn seeds(k: i64, z: ComplexValue) -> Vec<ComplexValue> {
    let mut out = Vec::with_capacity(5);
    let near_branch_point = (z + INV_E).norm() < 0.3;
    match k {
        0 if near_branch_point => out.push(branch_point_seed(z, 1.0)),
        0 if z.norm() <= 1.5 => out.push(pade_seed(z)),
        -1 if near_branch_point && z.im >= 0.0 => out.push(branch_point_seed(z, -1.0)),
        1 if near_branch_point && z.im < 0.0 => out.push(branch_point_seed(z, -1.0)),
        _ => {}
    }
    out.push(asymptotic_seed(z, k));
    // Fallbacks for the rare point where the preferred seed lands elsewhere.
    out.push(z.ln() + ComplexValue::new(0.0, TWO_PI * k as f64));
    if k == 0 {
        out.push(pade_seed(z));
        out.push(branch_point_seed(z, 1.0));
    } else if k.abs() == 1 {
        out.push(branch_point_seed(z, -1.0));
    }
    out
}

/// Series about `z = -1/e` in `p = sqrt(2(e·z + 1))`; `sign = -1` selects the
/// side of the branch point shared by `W_{-1}` (above the axis) and `W_1` (below).
fn branch_point_seed(z: ComplexValue, sign: f64) -> ComplexValue {
    let p = (2.0 * (E * z + 1.0)).sqrt() * sign;
    let p2 = p * p;
    -1.0 + p - p2 / 3.0 + 11.0 / 72.0 * p2 * p - 43.0 / 540.0 * p2 * p2
}

/// [1/1] Padé approximant of the principal branch at the origin.
fn pade_seed(z: ComplexValue) -> ComplexValue {
    z * (1.0 + 0.5 * z) / (1.0 + 1.5 * z)
}

fn asymptotic_seed(z: ComplexValue, k: i64) -> ComplexValue {
    let l1 = z.ln() + ComplexValue::new(0.0, TWO_PI * k as f64);
    if l1.norm() < 1e-3 {
        return l1;
    }
    let l2 = l1.ln();
    l1 - l2 + l2 / l1
}

fn halley(z: ComplexValue, mut w: ComplexValue) -> Option<(ComplexValue, u32)> {
    for iteration in 1..=MAX_ITERATIONS {
        let ew = w.exp();
        if !is_finite(ew) {
            return None;
        }
        let f = w * ew - z;
        if f.re == 0.0 && f.im == 0.0 {
            return Some((w, iteration));
        }
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        if !is_finite(step) {
            return None;
        }
        w -= step;
        if step.norm() <= STEP_TOLERANCE * (1.0 + w.norm()) {
            return Some((w, iteration));
        }
    }
    is_finite(w).then_some((w, MAX_ITERATIONS))
}

/// `e·x + 1` within this distance of zero is treated as the branch point.
const BRANCH_POINT_SNAP: f64 = 1e-15;

/// Real `W_0(x)` for `x >= -1/e`, or `W_{-1}(x)` for `-1/e <= x < 0`.
pub fn lambert_w_real(k: impl Into<BranchIndex>, x: f64) -> Result<f64> {
    real_branch(k.into().0, x).map(|(w, _)| w)
}

fn real_branch(k: i64, x: f64) -> Result<(f64, u32)> {
    if !x.is_finite() {
        return Err(Error::NonFinite("x"));
    }
    let t = x.mul_add(E, 1.0);
    let in_domain = match k {
        0 => t >= -BRANCH_POINT_SNAP,
        -1 => t >= -BRANCH_POINT_SNAP && x < 0.0,
        _ => false,
    };
    if !in_domain {
        return Err(Error::DomainError { k, x });
    }
    if t.abs() <= BRANCH_POINT_SNAP {
        return Ok((-1.0, 0));
    }
    if x == 0.0 {
        return Ok((0.0, 0));
    }

    let seed = if x < -0.3 {
        let p = (2.0 * t).sqrt() * if k == 0 { 1.0 } else { -1.0 };
        let p2 = p * p;
        -1.0 + p - p2 / 3.0 + 11.0 / 72.0 * p2 * p - 43.0 / 540.0 * p2 * p2
            + 769.0 / 17280.0 * p2 * p2 * p
    } else if k == 0 {
        // Winitzki's global approximation.
        let l = x.ln_1p();
        l * (1.0 - l.ln_1p() / (2.0 + l))
    } else {
        let l1 = (-x).ln();
        let l2 = (-l1).ln();
        l1 - l2 + l2 / l1
    };

    let mut w = seed;
    let mut iterations = 0;
    for iteration in 1..=MAX_ITERATIONS {
        iterations = iteration;
        let ew = w.exp();
        let f = w * ew - x;
        if f == 0.0 {
            break;
        }
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        if !step.is_finite() {
            break;
        }
        w -= step;
        if step.abs() <= STEP_TOLERANCE * (1.0 + w.abs()) {
            break;
        }
    }
    let res = (w * w.exp() - x).abs() / (1.0 + x.abs());
    if !w.is_finite() || res > RESIDUAL_TOLERANCE {
        return Err(Error::NoConvergence {
            k,
            z: ComplexValue::new(x, 0.0),
        });
    }
    Ok((w, iterations))
}

/// `dW_k/dz = 1 / (z + exp(W_k(z)))`.
pub fn w_derivative(k: impl Into<BranchIndex>, z: ComplexValue) -> Result<ComplexValue> {
    if !is_finite(z) {
        return Err(Error::NonFinite("z"));
    }
    if (z + INV_E).norm() < 1e-12 {
        return Err(Error::BranchPointSingularity);
    }
    let w = lambert_w(k, z)?.value;
    Ok(1.0 / (z + w.exp()))
}

/// Partial sum of the principal-branch Taylor series `Σ (-n)^(n-1)/n! · zⁿ`.
///
/// Converges for `|z| < 1/e`.
pub fn w_series(z: ComplexValue, n_terms: usize) -> Result<ComplexValue> {
    if n_terms == 0 || n_terms > MAX_SERIES_TERMS {
        return Err(Error::TermLimitExceeded(n_terms));
    }
    if !is_finite(z) {
        return Err(Error::NonFinite("z"));
    }
    let mut sum = ComplexValue::new(0.0, 0.0);
    let mut z_pow = ComplexValue::new(1.0, 0.0);
    for n in 1..=n_terms {
        z_pow *= z;
        sum += z_pow * series_coefficient(n);
    }
    Ok(sum)
}

/// `(-n)^(n-1) / n!`, accumulated as a product of ratios so it stays finite.
fn series_coefficient(n: usize) -> f64 {
    let nf = n as f64;
    let magnitude = (1..n).fold(1.0 / nf, |acc, i| acc * nf / i as f64);
    if n.is_multiple_of(2) {
        -magnitude
    } else {
        magnitude
    }
}
