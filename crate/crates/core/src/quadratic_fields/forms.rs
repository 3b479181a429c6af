//! Binary quadratic forms `a·x² + b·xy + c·y²` and class numbers from reduced
//! forms.
//!
//! Negative discriminants: a positive definite form is reduced when
//! `|b| <= a <= c` with `b >= 0` whenever `|b| = a` or `a = c`; each class holds
//! exactly one reduced form.
//!
//! Positive discriminants: a form is reduced when `0 < b < √D` and
//! `√D - b < 2|a| < √D + b`. The reduction operator `ρ(a, b, c) = (c, b', ·)`
//! permutes reduced forms, and its cycles are the proper (narrow) classes.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::{check_discriminant, fundamental_unit, isqrt, radicand};
use crate::error::{Error, Result};

fn as_decimal<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BinaryQuadraticForm {
    #[serde(serialize_with = "as_decimal")]
    pub a: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub b: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub c: BigInt,
}

impl BinaryQuadraticForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    /// The form `(a, b, (b² - D)/4a)`, if that quotient is an integer.
    pub fn from_discriminant(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        disc: impl Into<BigInt>,
    ) -> Option<Self> {
        let (a, b, disc) = (a.into(), b.into(), disc.into());
        if a.is_zero() {
            return None;
        }
        let num = &b * &b - disc;
        let den = &a * 4;
        let (c, r) = num.div_rem(&den);
        r.is_zero().then_some(Self { a, b, c })
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - &self.a * &self.c * 4
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == BigInt::from(1)
    }

    pub fn is_reduced(&self) -> bool {
        let disc = self.discriminant();
        if disc.is_negative() {
            let abs_b = self.b.abs();
            abs_b <= self.a
                && self.a <= self.c
                && (!(abs_b == self.a || self.a == self.c) || !self.b.is_negative())
        } else {
            let s = disc.sqrt();
            let two_a = self.a.abs() * 2;
            // With √D irrational: b < √D ⇔ b <= s, and x > √D ⇔ x > s.
            self.b.is_positive() && self.b <= s && &two_a + &self.b > s && &two_a - &self.b <= s
        }
    }

    /// Reduced form properly equivalent to `self`, and the number of steps taken.
    ///
    /// Positive definite forms use Gauss reduction; indefinite forms (non-square
    /// discriminant) apply [`rho`](Self::rho) until reduced.
    pub fn reduce(&self) -> Result<(Self, usize)> {
        let disc = self.discriminant();
        if disc.is_negative() {
            if !self.a.is_positive() {
                return Err(Error::InvalidForm("definite reduction needs a > 0"));
            }
            Ok(self.reduce_definite(&disc))
        } else {
            self.reduce_indefinite(&disc)
        }
    }

    fn reduce_definite(&self, disc: &BigInt) -> (Self, usize) {
        let (mut a, mut b, mut c) = (self.a.clone(), self.b.clone(), self.c.clone());
        let mut steps = 0;
        loop {
            if !(b > -&a && b <= a) {
                let two_a = &a * 2;
                let mut r = b.mod_floor(&two_a);
                if r > a {
                    r -= &two_a;
                }
                b = r;
                c = (&b * &b - disc) / (&a * 4);
                steps += 1;
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                steps += 1;
                continue;
            }
            if a == c && b.is_negative() {
                b = -b;
            }
            break;
        }
        (Self { a, b, c }, steps)
    }

    fn reduce_indefinite(&self, disc: &BigInt) -> Result<(Self, usize)> {
        if disc.is_zero() || disc.is_positive() && is_square(disc) {
            return Err(Error::InvalidForm(
                "indefinite reduction needs a non-square discriminant",
            ));
        }
        let limit = 64 + 16 * (self.a.bits().max(self.c.bits()) as usize);
        let mut form = self.clone();
        for steps in 0..=limit {
            if form.is_reduced() {
                return Ok((form, steps));
            }
            form = form.rho();
        }
        Err(Error::InvalidForm("indefinite reduction did not terminate"))
    }

    /// `ρ(a, b, c) = (c, b', (b'² - D)/4c)` with `b' ≡ -b (mod 2c)` taken in
    /// `(√D - 2|c|, √D)` when `|c| < √D`, else in `(-|c|, |c|]`.
    ///
    /// Only meaningful for indefinite forms with `c != 0`.
    pub fn rho(&self) -> Self {
        let disc = self.discriminant();
        let s = disc.sqrt();
        let a = self.c.clone();
        let two_abs = a.abs() * 2;
        let minus_b = -&self.b;
        let b = if a.abs() <= s {
            // Largest value <= s congruent to -b mod 2|a|.
            &s - (&s - &minus_b).mod_floor(&two_abs)
        } else {
            let mut r = minus_b.mod_floor(&two_abs);
            if r > a.abs() {
                r -= &two_abs;
            }
            r
        };
        let c = (&b * &b - &disc) / (&a * 4);
        Self { a, b, c }
    }
}

impl std::fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn is_square(n: &BigInt) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    a.gcd(&b).gcd(&c)
}

/// Number of reduced primitive positive definite forms of discriminant `disc < 0`.
fn count_reduced_definite(disc: i64) -> u64 {
    let abs = -disc;
    let b_max = isqrt((abs / 3) as u64) as i64;
    let mut count = 0;
    let mut b = disc.rem_euclid(2);
    while b <= b_max {
        let m = (b * b + abs) / 4;
        let mut a = b.max(1);
        while a * a <= m {
            if m % a == 0 {
                let c = m / a;
                if gcd3(a, b, c) == 1 {
                    count += if b == 0 || a == b || a == c { 1 } else { 2 };
                }
            }
            a += 1;
        }
        b += 2;
    }
    count
}

/// All reduced primitive forms of discriminant `disc > 0` (non-square).
pub(crate) fn reduced_indefinite_forms(disc: i64) -> Vec<(i64, i64, i64)> {
    let s = isqrt(disc as u64) as i64;
    let mut out = Vec::new();
    let mut b = if disc % 2 == 0 { 2 } else { 1 };
    while b <= s {
        let m = (disc - b * b) / 4;
        let mut divisor = 1;
        while divisor * divisor <= m {
            if m % divisor == 0 {
                let pair = [divisor, m / divisor];
                let distinct = if pair[0] == pair[1] { 1 } else { 2 };
                for &abs_a in &pair[..distinct] {
                    if 2 * abs_a + b > s && 2 * abs_a - b <= s {
                        for a in [abs_a, -abs_a] {
                            let c = -m / a;
                            if gcd3(a, b, c) == 1 {
                                out.push((a, b, c));
                            }
                        }
                    }
                }
            }
            divisor += 1;
        }
        b += 2;
    }
    out.sort_unstable();
    out
}

fn to_triple(f: &BinaryQuadraticForm) -> (i64, i64, i64) {
    (
        f.a.to_i64().expect("reduced coefficients are bounded by D"),
        f.b.to_i64().expect("reduced coefficients are bounded by D"),
        f.c.to_i64().expect("reduced coefficients are bounded by D"),
    )
}

/// Number of ρ-cycles of reduced forms, i.e. the narrow class number.
fn count_cycles(disc: i64) -> u64 {
    let forms = reduced_indefinite_forms(disc);
    let mut seen: HashSet<(i64, i64, i64)> = HashSet::with_capacity(forms.len());
    let mut cycles = 0;
    for &start in &forms {
        if seen.contains(&start) {
            continue;
        }
        cycles += 1;
        let mut form = BinaryQuadraticForm::new(start.0, start.1, start.2);
        loop {
            let key = to_triple(&form);
            if !seen.insert(key) {
                break;
            }
            form = form.rho();
        }
    }
    cycles
}

/// Narrow class number `h⁺`; equal to `h` for negative discriminants.
pub fn class_number_narrow(disc: i64) -> Result<u64> {
    check_discriminant(disc)?;
    Ok(if disc < 0 {
        count_reduced_definite(disc)
    } else {
        count_cycles(disc)
    })
}

/// Class number `h` of the field with fundamental discriminant `disc`.
///
/// For `disc > 0` this is the wide class number: `h⁺` when the fundamental unit
/// has norm `-1`, `h⁺/2` otherwise.
pub fn class_number(disc: i64) -> Result<u64> {
    let narrow = class_number_narrow(disc)?;
    if disc < 0 {
        return Ok(narrow);
    }
    let unit = fundamental_unit(radicand(disc))?;
    Ok(if unit.norm == -1 { narrow } else { narrow / 2 })
}
