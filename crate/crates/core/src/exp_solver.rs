//! Closed-form roots of `z = A + B·exp(C·z)` and the fixed-point equations for a
//! unit ε built on top of it.
//!
//! For `B·C != 0` every root is `z = A - W_k(-B·C·exp(A·C)) / C` for some branch
//! `k`. Two fixed-point problems reduce to this form:
//!
//! * complex case: `i·α = exp(2πi·α)·log ε`, solved with `A = β`,
//!   `B = log ε·exp(-2πβ)`, `C = 2π`, where the auxiliary real `β` cancels;
//! * real case: `α = cos(2π·α)·log ε`, split into `α = log ε·exp(±2πi·α)` whose
//!   roots are summed.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambert_w::{lambert_w, BranchIndex};
use crate::ComplexValue;

const TWO_PI: f64 = 2.0 * PI;

fn i() -> ComplexValue {
    ComplexValue::new(0.0, 1.0)
}

fn is_finite(z: ComplexValue) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// The equation `z = A + B·exp(C·z)` with `B·C != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpLinearEquation {
    a: ComplexValue,
    b: ComplexValue,
    c: ComplexValue,
}

impl ExpLinearEquation {
    pub fn new(a: ComplexValue, b: ComplexValue, c: ComplexValue) -> Result<Self> {
        if !(is_finite(a) && is_finite(b) && is_finite(c)) {
            return Err(Error::NonFinite("coefficients"));
        }
        let bc = b * c;
        if bc.re == 0.0 && bc.im == 0.0 {
            return Err(Error::DegenerateCoefficients);
        }
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> ComplexValue {
        self.a
    }

    pub fn b(&self) -> ComplexValue {
        self.b
    }

    pub fn c(&self) -> ComplexValue {
        self.c
    }

    /// `|z - A - B·exp(C·z)|`.
    pub fn residual(&self, z: ComplexValue) -> f64 {
        (z - self.a - self.b * (self.c * z).exp()).norm()
    }

    pub fn solve(&self, k: impl Into<BranchIndex>) -> Result<ComplexValue> {
        solve_exp_linear(self, k)
    }
}

/// Root of `z = A + B·exp(C·z)` on branch `k`: `A - W_k(-B·C·exp(A·C)) / C`.
pub fn solve_exp_linear(eq: &ExpLinearEquation, k: impl Into<BranchIndex>) -> Result<ComplexValue> {
    let arg = -eq.b * eq.c * (eq.a * eq.c).exp();
    if !is_finite(arg) {
        return Err(Error::NonFinite("-B·C·exp(A·C)"));
    }
    let w = lambert_w(k, arg)?.value;
    Ok(eq.a - w / eq.c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    ComplexCase,
    RealCase,
}

/// Which branch the second split root of the real case is taken on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum BranchPairing {
    /// Both split roots on `W_j`.
    SameBranch,
    /// Second root on `W_{-j}`, which makes it the conjugate of the first.
    #[default]
    ConjugateBranch,
}

/// A unit ε together with the logarithm convention used for `log ε`.
///
/// `log ε = ln|ε| + i·(arg ε + 2π·log_branch)` with `arg ε ∈ (-π, π]`.
/// Real-case units are real and `> 1`, and always use the real logarithm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitInput {
    epsilon: Option<ComplexValue>,
    log_epsilon: ComplexValue,
    log_branch: i64,
    case: CaseTag,
}

impl UnitInput {
    pub fn new(epsilon: ComplexValue, log_branch: i64, case: CaseTag) -> Result<Self> {
        match case {
            CaseTag::ComplexCase => Self::complex(epsilon, log_branch),
            CaseTag::RealCase => {
                if epsilon.im != 0.0 {
                    return Err(Error::InvalidUnit("a real-case unit must be real"));
                }
                if log_branch != 0 {
                    return Err(Error::InvalidUnit(
                        "a real-case unit uses the real logarithm",
                    ));
                }
                Self::real(epsilon.re)
            }
        }
    }

    pub fn complex(epsilon: ComplexValue, log_branch: i64) -> Result<Self> {
        if !is_finite(epsilon) {
            return Err(Error::NonFinite("epsilon"));
        }
        let epsilon = ComplexValue::new(epsilon.re + 0.0, epsilon.im + 0.0);
        if epsilon.norm() == 0.0 {
            return Err(Error::InvalidUnit("ε must be nonzero"));
        }
        let log_epsilon = ComplexValue::new(
            epsilon.norm().ln(),
            epsilon.arg() + TWO_PI * log_branch as f64,
        );
        Ok(Self {
            epsilon: Some(epsilon),
            log_epsilon,
            log_branch,
            case: CaseTag::ComplexCase,
        })
    }

    pub fn real(epsilon: f64) -> Result<Self> {
        if !epsilon.is_finite() {
            return Err(Error::NonFinite("epsilon"));
        }
        if epsilon == 1.0 {
            return Err(Error::ZeroLogUnit);
        }
        if epsilon < 1.0 {
            return Err(Error::InvalidUnit("a real-case unit must exceed 1"));
        }
        Ok(Self {
            epsilon: Some(ComplexValue::new(epsilon, 0.0)),
            log_epsilon: ComplexValue::new(epsilon.ln(), 0.0),
            log_branch: 0,
            case: CaseTag::RealCase,
        })
    }

    /// Real-case unit given by its regulator `log ε`, for units too large to
    /// hold as a float.
    pub fn real_from_log(log_epsilon: f64) -> Result<Self> {
        if !log_epsilon.is_finite() {
            return Err(Error::NonFinite("log epsilon"));
        }
        if log_epsilon == 0.0 {
            return Err(Error::ZeroLogUnit);
        }
        if log_epsilon < 0.0 {
            return Err(Error::InvalidUnit("a real-case unit must exceed 1"));
        }
        let epsilon = log_epsilon.exp();
        Ok(Self {
            epsilon: epsilon.is_finite().then(|| ComplexValue::new(epsilon, 0.0)),
            log_epsilon: ComplexValue::new(log_epsilon, 0.0),
            log_branch: 0,
            case: CaseTag::RealCase,
        })
    }

    /// `None` when ε overflows a float.
    pub fn epsilon(&self) -> Option<ComplexValue> {
        self.epsilon
    }

    pub fn log_epsilon(&self) -> ComplexValue {
        self.log_epsilon
    }

    pub fn log_branch(&self) -> i64 {
        self.log_branch
    }

    pub fn case(&self) -> CaseTag {
        self.case
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Conventions {
    pub log_branch: i64,
    /// Set for real-case reports only.
    pub pairing: Option<BranchPairing>,
}

/// A fixed-point root α with the residuals of every equation it relates to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FixedPointReport {
    pub alpha: ComplexValue,
    pub branch: BranchIndex,
    pub beta: f64,
    pub case: CaseTag,
    pub log_epsilon: ComplexValue,
    /// Residual of the case's defining equation, see [`verify_fixed_point`].
    pub residual_defining: f64,
    /// `|α₁ - log ε·exp(2πi·α₁)|`; real case only.
    pub residual_split_1: Option<f64>,
    /// `|α₂ - log ε·exp(-2πi·α₂)|`; real case only.
    pub residual_split_2: Option<f64>,
    /// `|2α - log ε·exp(2πi·α) - log ε·exp(-2πi·α)|`. Measured, not guaranteed.
    pub residual_sum_equation: f64,
    /// The two split roots `(α₁, α₂)` in the real case.
    pub split_roots: Option<(ComplexValue, ComplexValue)>,
    pub conventions: Conventions,
}

fn sum_equation_residual(alpha: ComplexValue, log_eps: ComplexValue) -> f64 {
    let phase = TWO_PI * i() * alpha;
    (2.0 * alpha - log_eps * phase.exp() - log_eps * (-phase).exp()).norm()
}

/// `α_j = -W_j(-2π·log ε) / (2πi)`, derived through the `β`-shifted equation.
pub fn alpha_complex_case(
    u: &UnitInput,
    j: impl Into<BranchIndex>,
    beta: f64,
) -> Result<FixedPointReport> {
    let branch = j.into();
    if u.case != CaseTag::ComplexCase {
        return Err(Error::InvalidUnit("expected a complex-case unit"));
    }
    if !beta.is_finite() {
        return Err(Error::NonFinite("beta"));
    }
    let log_eps = u.log_epsilon;
    if log_eps.re == 0.0 && log_eps.im == 0.0 {
        return Err(Error::ZeroLogUnit);
    }
    let a = ComplexValue::new(beta, 0.0);
    let b = log_eps * (-TWO_PI * beta).exp();
    let eq = ExpLinearEquation::new(a, b, ComplexValue::new(TWO_PI, 0.0))?;
    let z = solve_exp_linear(&eq, branch)?;
    let alpha = -i() * (z - a);
    Ok(FixedPointReport {
        alpha,
        branch,
        beta,
        case: CaseTag::ComplexCase,
        log_epsilon: log_eps,
        residual_defining: verify_fixed_point(alpha, u),
        residual_split_1: None,
        residual_split_2: None,
        residual_sum_equation: sum_equation_residual(alpha, log_eps),
        split_roots: None,
        conventions: Conventions {
            log_branch: u.log_branch,
            pairing: None,
        },
    })
}

/// `α = α₁ + α₂` with `α₁ = -W_j(-2πi·log ε)/(2πi)` and `α₂ = W_m(2πi·log ε)/(2πi)`,
/// where `m = j` or `m = -j` according to `pairing`.
pub fn alpha_real_case(
    u: &UnitInput,
    j: impl Into<BranchIndex>,
    pairing: BranchPairing,
) -> Result<FixedPointReport> {
    let branch = j.into();
    if u.case != CaseTag::RealCase {
        return Err(Error::InvalidUnit("expected a real-case unit"));
    }
    let log_eps = u.log_epsilon;
    if log_eps.re == 0.0 {
        return Err(Error::ZeroLogUnit);
    }
    let zero = ComplexValue::new(0.0, 0.0);
    let first = ExpLinearEquation::new(zero, log_eps, ComplexValue::new(0.0, TWO_PI))?;
    let second = ExpLinearEquation::new(zero, log_eps, ComplexValue::new(0.0, -TWO_PI))?;
    let second_branch = match pairing {
        BranchPairing::SameBranch => branch,
        BranchPairing::ConjugateBranch => BranchIndex(-branch.0),
    };
    let alpha_1 = solve_exp_linear(&first, branch)?;
    let alpha_2 = solve_exp_linear(&second, second_branch)?;
    let alpha = alpha_1 + alpha_2;
    Ok(FixedPointReport {
        alpha,
        branch,
        beta: 0.0,
        case: CaseTag::RealCase,
        log_epsilon: log_eps,
        residual_defining: verify_fixed_point(alpha, u),
        residual_split_1: Some(first.residual(alpha_1)),
        residual_split_2: Some(second.residual(alpha_2)),
        residual_sum_equation: sum_equation_residual(alpha, log_eps),
        split_roots: Some((alpha_1, alpha_2)),
        conventions: Conventions {
            log_branch: u.log_branch,
            pairing: Some(pairing),
        },
    })
}

/// Residual of the defining equation for `u`'s case:
/// `|i·α - exp(2πi·α)·log ε|` (complex) or `|α - cos(2π·α)·log ε|` (real).
pub fn verify_fixed_point(alpha: ComplexValue, u: &UnitInput) -> f64 {
    let log_eps = u.log_epsilon;
    match u.case {
        CaseTag::ComplexCase => (i() * alpha - (TWO_PI * i() * alpha).exp() * log_eps).norm(),
        CaseTag::RealCase => (alpha - (TWO_PI * alpha).cos() * log_eps).norm(),
    }
}

/// Pairwise separation of real-case roots over a set of regulators.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InjectivityProbe {
    pub alphas: Vec<ComplexValue>,
    /// `None` with fewer than two inputs.
    pub min_separation: Option<f64>,
    /// Index pairs closer than the threshold.
    pub collisions: Vec<(usize, usize)>,
}

/// Evaluate the real-case root for each `log ε` and measure how well the map
/// separates them. Collisions are findings, not errors.
pub fn injectivity_probe(
    log_epsilons: &[f64],
    j: impl Into<BranchIndex>,
    pairing: BranchPairing,
    threshold: f64,
) -> Result<InjectivityProbe> {
    let branch = j.into();
    let alphas = log_epsilons
        .iter()
        .map(|&l| {
            let u = UnitInput::real_from_log(l)?;
            alpha_real_case(&u, branch, pairing).map(|r| r.alpha)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut min_separation: Option<f64> = None;
    let mut collisions = Vec::new();
    for p in 0..alphas.len() {
        for q in p + 1..alphas.len() {
            let sep = (alphas[p] - alphas[q]).norm();
            min_separation = Some(min_separation.map_or(sep, |m| m.min(sep)));
            if sep <= threshold {
                collisions.push((p, q));
            }
        }
    }
    Ok(InjectivityProbe {
        alphas,
        min_separation,
        collisions,
    })
}
