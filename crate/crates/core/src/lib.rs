//! Multi-branch Lambert W, closed-form solutions of `z = A + B·exp(C·z)` and the
//! fixed-point roots built on them, plus exact quadratic-field arithmetic
//! (fundamental units, class numbers, roots of unity) and a survey harness that
//! ties the two together.
//!
//! Branches follow the standard indexing in which `W_0` is the principal branch,
//! real on `[-1/e, ∞)`. Literature that calls the principal branch `W_1` shifts
//! every index by one: its `W_j` is `W_{j-1}` here.

pub mod cli;
pub mod error;
pub mod exp_solver;
pub mod lambert_w;
pub mod quadratic_fields;
pub mod survey;

pub use error::{Error, Result};
pub use exp_solver::{
    alpha_complex_case, alpha_real_case, solve_exp_linear, verify_fixed_point, BranchPairing,
    CaseTag, Conventions, ExpLinearEquation, FixedPointReport, UnitInput,
};
pub use lambert_w::{lambert_w, lambert_w_real, w_derivative, w_series, BranchIndex, WEvaluation};
pub use quadratic_fields::{
    class_number, class_number_analytic, describe_field, fundamental_unit, roots_of_unity,
    unit_rank, BinaryQuadraticForm, FundamentalUnit, QuadraticFieldDescriptor, RootsOfUnity,
};

/// Complex numbers used throughout the W and solver layers.
pub type ComplexValue = num_complex::Complex64;
