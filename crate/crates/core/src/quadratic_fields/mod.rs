//! Quadratic fields `Q(√d)`: signatures and unit ranks, roots of unity,
//! fundamental units, and class numbers.
//!
//! Fields are keyed internally by their fundamental discriminant `D`
//! (`D = d` when `d ≡ 1 mod 4`, else `D = 4d`).

mod analytic;
mod forms;
mod units;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ComplexValue;

pub use analytic::{class_number_analytic, kronecker};
pub use forms::{class_number, class_number_narrow, BinaryQuadraticForm};
pub use units::{fundamental_unit, FundamentalUnit};

/// Largest `|D|` accepted by the class-number routines.
pub const MAX_ABS_DISCRIMINANT: i64 = 1_000_000;

pub fn is_squarefree(n: i64) -> bool {
    let n = n.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

pub fn is_fundamental_discriminant(disc: i64) -> bool {
    if disc == 0 || disc == 1 {
        return false;
    }
    match disc.rem_euclid(4) {
        1 => is_squarefree(disc),
        0 => {
            let m = disc / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m)
        }
        _ => false,
    }
}

/// Squarefree radicand `d` of a fundamental discriminant.
pub fn radicand(disc: i64) -> i64 {
    if disc.rem_euclid(4) == 1 {
        disc
    } else {
        disc / 4
    }
}

/// Fundamental discriminant of `Q(√d)` for squarefree `d`.
pub fn discriminant_of(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

pub(crate) fn is_perfect_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = isqrt(n as u64);
    r * r == n as u64
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Check that `disc` can carry a class number.
pub(crate) fn check_discriminant(disc: i64) -> Result<()> {
    if disc.abs() > MAX_ABS_DISCRIMINANT {
        return Err(Error::OutOfRange(disc));
    }
    if disc > 0 && is_perfect_square(disc) {
        return Err(Error::SquareDiscriminant(disc));
    }
    if !is_fundamental_discriminant(disc) {
        return Err(Error::NotFundamental(disc));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadraticFieldDescriptor {
    pub d: i64,
    #[serde(rename = "D")]
    pub discriminant: i64,
    /// Real embeddings.
    pub sigma1: u32,
    /// Pairs of complex embeddings.
    pub sigma2: u32,
    pub unit_rank: u32,
}

pub fn describe_field(d: i64) -> Result<QuadraticFieldDescriptor> {
    if d == 0 || d == 1 {
        return Err(Error::DegenerateD(d));
    }
    if !is_squarefree(d) {
        return Err(Error::NotSquarefree(d));
    }
    let (sigma1, sigma2) = if d < 0 { (0, 1) } else { (2, 0) };
    Ok(QuadraticFieldDescriptor {
        d,
        discriminant: discriminant_of(d),
        sigma1,
        sigma2,
        unit_rank: sigma1 + sigma2 - 1,
    })
}

/// Signature and unit rank of a Galois field of degree `two_r`, which is
/// either totally real or totally imaginary: `(σ₁, σ₂, σ₁ + σ₂ - 1)`.
pub fn unit_rank(two_r: i64, totally_real: bool) -> Result<(i64, i64, i64)> {
    if two_r < 2 || two_r % 2 != 0 {
        return Err(Error::OddDegree(two_r));
    }
    let (sigma1, sigma2) = if totally_real {
        (two_r, 0)
    } else {
        (0, two_r / 2)
    };
    Ok((sigma1, sigma2, sigma1 + sigma2 - 1))
}

/// The torsion units `μ(k)` of an imaginary quadratic field.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootsOfUnity {
    pub n: u32,
    /// `ζ_n^m` for `m = 0..n`.
    pub elements: Vec<ComplexValue>,
}

pub fn roots_of_unity(disc: i64) -> Result<RootsOfUnity> {
    if disc > 0 {
        return Err(Error::NotImaginary(disc));
    }
    if !is_fundamental_discriminant(disc) {
        return Err(Error::NotFundamental(disc));
    }
    let c = ComplexValue::new;
    let h = 3f64.sqrt() / 2.0;
    let (n, elements) = match disc {
        -4 => (
            4,
            vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)],
        ),
        -3 => (
            6,
            vec![
                c(1.0, 0.0),
                c(0.5, h),
                c(-0.5, h),
                c(-1.0, 0.0),
                c(-0.5, -h),
                c(0.5, -h),
            ],
        ),
        _ => (2, vec![c(1.0, 0.0), c(-1.0, 0.0)]),
    };
    Ok(RootsOfUnity { n, elements })
}

impl RootsOfUnity {
    /// Exact textual form of each element, aligned with `elements`.
    pub fn labels(&self) -> Vec<&'static str> {
        match self.n {
            4 => vec!["1", "i", "-1", "-i"],
            6 => vec![
                "1",
                "(1+i*sqrt(3))/2",
                "(-1+i*sqrt(3))/2",
                "-1",
                "(-1-i*sqrt(3))/2",
                "(1-i*sqrt(3))/2",
            ],
            _ => vec!["1", "-1"],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_and_fundamental() {
        assert!(is_squarefree(-1));
        assert!(is_squarefree(30));
        assert!(!is_squarefree(12));
        assert!(!is_squarefree(0));
        assert!(!is_squarefree(-18));
        for disc in [-3, -4, -7, -8, 5, 8, 12, 13, 40, -163] {
            assert!(is_fundamental_discriminant(disc), "{disc}");
        }
        for disc in [0, 1, 4, 9, -12, -16, 2, 3, 6, 20, 16] {
            assert!(!is_fundamental_discriminant(disc), "{disc}");
        }
    }

    #[test]
    fn describe() {
        let f = describe_field(-1).unwrap();
        assert_eq!(
            (f.discriminant, f.sigma1, f.sigma2, f.unit_rank),
            (-4, 0, 1, 0)
        );
        let f = describe_field(2).unwrap();
        assert_eq!(
            (f.discriminant, f.sigma1, f.sigma2, f.unit_rank),
            (8, 2, 0, 1)
        );
        assert_eq!(describe_field(5).unwrap().discriminant, 5);
        assert_eq!(describe_field(-3).unwrap().discriminant, -3);
        assert_eq!(describe_field(12), Err(Error::NotSquarefree(12)));
        assert_eq!(describe_field(0), Err(Error::DegenerateD(0)));
        assert_eq!(describe_field(1), Err(Error::DegenerateD(1)));
    }

    #[test]
    fn ranks() {
        assert_eq!(unit_rank(2, false).unwrap(), (0, 1, 0));
        assert_eq!(unit_rank(4, true).unwrap(), (4, 0, 3));
        assert_eq!(unit_rank(4, false).unwrap(), (0, 2, 1));
        assert_eq!(unit_rank(3, true), Err(Error::OddDegree(3)));
        assert_eq!(unit_rank(0, false), Err(Error::OddDegree(0)));
    }

    #[test]
    fn torsion() {
        let c = ComplexValue::new;
        assert_eq!(
            roots_of_unity(-4).unwrap().elements,
            vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]
        );
        let r = roots_of_unity(-3).unwrap();
        assert_eq!(r.n, 6);
        for z in &r.elements {
            assert!((z.powi(6) - c(1.0, 0.0)).norm() <= 1e-14);
            assert!((z.norm() - 1.0).abs() <= 1e-15);
        }
        assert_eq!(
            roots_of_unity(-7).unwrap().elements,
            vec![c(1.0, 0.0), c(-1.0, 0.0)]
        );
        assert_eq!(roots_of_unity(5), Err(Error::NotImaginary(5)));
        assert_eq!(roots_of_unity(-12), Err(Error::NotFundamental(-12)));
    }
}
