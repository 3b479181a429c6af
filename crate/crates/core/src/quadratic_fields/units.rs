//! Fundamental units of real quadratic fields via continued fractions.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::{is_squarefree, isqrt};
use crate::error::{Error, Result};

/// Abort the expansion after this many partial quotients.
pub const MAX_PERIOD_STEPS: u64 = 10_000_000;

fn as_decimal<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// The smallest unit `ε > 1` of the ring of integers of `Q(√d)`:
/// `ε = (x + y√d)/2` when `half_integral`, else `ε = x + y√d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FundamentalUnit {
    pub d: i64,
    #[serde(serialize_with = "as_decimal")]
    pub x: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub y: BigInt,
    pub half_integral: bool,
    /// `N(ε) = ±1`.
    pub norm: i64,
    /// `log ε`.
    pub regulator: f64,
}

impl FundamentalUnit {
    /// `(X, Y)` with `ε = (X + Y√d)/2`.
    pub fn half_form(&self) -> (BigInt, BigInt) {
        if self.half_integral {
            (self.x.clone(), self.y.clone())
        } else {
            (&self.x * 2, &self.y * 2)
        }
    }

    /// Exact check of `x² - d·y² = norm` (times 4 when half-integral).
    pub fn satisfies_pell(&self) -> bool {
        let lhs = &self.x * &self.x - BigInt::from(self.d) * &self.y * &self.y;
        let scale = if self.half_integral { 4 } else { 1 };
        lhs == BigInt::from(self.norm * scale)
    }

    /// `ε` as a float; infinite once the unit exceeds the float range.
    pub fn value(&self) -> f64 {
        self.regulator.exp()
    }

    /// `ε^n` in half form `(X, Y)` with `ε^n = (X + Y√d)/2`, exactly.
    pub fn power_half_form(&self, n: u32) -> (BigInt, BigInt) {
        let (x, y) = self.half_form();
        let d = BigInt::from(self.d);
        let mut acc = (BigInt::from(2), BigInt::zero());
        for _ in 0..n {
            // (a + b√d)/2 · (x + y√d)/2 = ((ax + dby) + (ay + bx)√d)/4
            let a = (&acc.0 * &x + &d * &acc.1 * &y) / 2;
            let b = (&acc.0 * &y + &acc.1 * &x) / 2;
            acc = (a, b);
        }
        acc
    }
}

impl std::fmt::Display for FundamentalUnit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.half_integral {
            write!(f, "({}+{}*sqrt({}))/2", self.x, self.y, self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.x, self.y, self.d)
        }
    }
}

/// Natural logarithm of a positive big integer.
pub(crate) fn big_ln(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `log((X + Y√d)/2)` where `X² - d·Y² = 4·norm`, without forming `Y√d`.
fn regulator(x_half: &BigInt, norm: i64) -> f64 {
    let ln_x = big_ln(x_half);
    // 4·norm / X², small once X is large.
    let ratio = (4.0 * norm as f64).signum() * ((4.0f64).ln() - 2.0 * ln_x).exp();
    ln_x + (1.0 + (1.0 - ratio).sqrt()).ln() - std::f64::consts::LN_2
}

/// Fundamental unit of `Q(√d)` for squarefree `d > 1`.
///
/// Walks the continued fraction of `√d` (or of `(1 + √d)/2` when `d ≡ 1 mod 4`)
/// and stops at the first convergent whose associated element has norm `±1`.
pub fn fundamental_unit(d: i64) -> Result<FundamentalUnit> {
    if d == 0 || d == 1 {
        return Err(Error::DegenerateD(d));
    }
    if d < 0 {
        return Err(Error::NotRealQuadratic(d));
    }
    if !is_squarefree(d) {
        return Err(Error::NotSquarefree(d));
    }
    let root = isqrt(d as u64) as i64;
    let half = d % 4 == 1;
    let big_d = BigInt::from(d);

    // Complete quotient (P + √d)/Q.
    let (mut p_num, mut q_den) = if half { (1i64, 2i64) } else { (0, 1) };
    let (mut p_prev, mut p_cur) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q_cur) = (BigInt::one(), BigInt::zero());

    for _ in 0..MAX_PERIOD_STEPS {
        let a = (p_num + root) / q_den;
        let p_next = &p_cur * a + &p_prev;
        let q_next = &q_cur * a + &q_prev;
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);

        let (x_half, y_half) = if half {
            // p - q·conj(ω) = (2p - q + q√d)/2
            (&p_cur * 2 - &q_cur, q_cur.clone())
        } else {
            (&p_cur * 2, &q_cur * 2)
        };
        let n4: BigInt = &x_half * &x_half - &big_d * &y_half * &y_half;
        let found = if n4.abs() == BigInt::from(4) {
            Some((x_half, y_half, n4.signum()))
        } else if half && n4.abs() == BigInt::one() {
            // p/q was the reduced form of an integral unit X' + Y'√d.
            Some((&x_half * 2, &y_half * 2, n4.signum()))
        } else {
            None
        };
        if let Some((xh, yh, sign)) = found {
            let norm = sign.to_i64().unwrap_or(0);
            let reg = regulator(&xh, norm);
            let integral = (&xh % 2u32).is_zero() && (&yh % 2u32).is_zero();
            let (x, y) = if integral { (xh / 2, yh / 2) } else { (xh, yh) };
            return Ok(FundamentalUnit {
                d,
                x,
                y,
                half_integral: !integral,
                norm,
                regulator: reg,
            });
        }

        p_num = a * q_den - p_num;
        q_den = (d - p_num * p_num) / q_den;
    }
    Err(Error::PeriodTooLong(MAX_PERIOD_STEPS))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn small_units() {
        let u = fundamental_unit(2).unwrap();
        assert_eq!(
            (u.x.clone(), u.y.clone(), u.half_integral, u.norm),
            (big(1), big(1), false, -1)
        );
        assert!((u.regulator - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-15);

        let u = fundamental_unit(5).unwrap();
        assert_eq!(
            (u.x.clone(), u.y.clone(), u.half_integral, u.norm),
            (big(1), big(1), true, -1)
        );
        assert!((u.regulator - ((1.0 + 5f64.sqrt()) / 2.0).ln()).abs() < 1e-15);

        let u = fundamental_unit(3).unwrap();
        assert_eq!((u.x.clone(), u.y.clone(), u.norm), (big(2), big(1), 1));

        // (3 + √13)/2
        let u = fundamental_unit(13).unwrap();
        assert_eq!(
            (u.x.clone(), u.y.clone(), u.half_integral, u.norm),
            (big(3), big(1), true, -1)
        );

        // (5 + √21)/2 has norm +1.
        let u = fundamental_unit(21).unwrap();
        assert_eq!(
            (u.x.clone(), u.y.clone(), u.half_integral, u.norm),
            (big(5), big(1), true, 1)
        );
    }

    #[test]
    fn integral_unit_when_d_is_one_mod_eight() {
        // d = 33: 23 + 4√33, no half-integral unit exists.
        let u = fundamental_unit(33).unwrap();
        assert_eq!(
            (u.x.clone(), u.y.clone(), u.half_integral, u.norm),
            (big(23), big(4), false, 1)
        );
        assert!(u.satisfies_pell());
    }

    #[test]
    fn d_94() {
        let u = fundamental_unit(94).unwrap();
        assert_eq!(u.x, big(2_143_295));
        assert_eq!(u.y, big(221_064));
        assert!(!u.half_integral);
        assert_eq!(u.norm, 1);
        let value = 2_143_295f64 + 221_064f64 * 94f64.sqrt();
        assert!((u.regulator - value.ln()).abs() <= 1e-12 * value.ln());
    }

    #[test]
    fn huge_unit_stays_exact() {
        // d = 331 has a 15-digit y.
        let u = fundamental_unit(331).unwrap();
        assert!(u.satisfies_pell());
        assert_eq!(u.y.to_string(), "153109862634573");
        let expected = big_ln(&u.x) + (2.0f64).ln();
        assert!((u.regulator - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn powers_are_units() {
        let u = fundamental_unit(7).unwrap();
        let d = big(7);
        for n in 0..6 {
            let (x, y) = u.power_half_form(n);
            assert_eq!(&x * &x - &d * &y * &y, big(4 * u.norm.pow(n)));
        }
        let (x, y) = u.power_half_form(2);
        // (8 + 3√7)² = 127 + 48√7
        assert_eq!((x, y), (big(254), big(96)));
    }

    #[test]
    fn bad_inputs() {
        assert_eq!(fundamental_unit(12), Err(Error::NotSquarefree(12)));
        assert_eq!(fundamental_unit(1), Err(Error::DegenerateD(1)));
        assert_eq!(fundamental_unit(-5), Err(Error::NotRealQuadratic(-5)));
    }

    #[test]
    fn display() {
        assert_eq!(fundamental_unit(2).unwrap().to_string(), "1+1*sqrt(2)");
        assert_eq!(fundamental_unit(5).unwrap().to_string(), "(1+1*sqrt(5))/2");
    }
}
