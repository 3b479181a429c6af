//! Class numbers from the finite Dirichlet class-number formula.
//!
//! With `χ(a) = (D/a)` the Kronecker symbol:
//!
//! * `D < 0`: `h = -(w / 2|D|) · Σ_{0<a<|D|} χ(a)·a`, `w` the number of roots of unity;
//! * `D > 0`: `h = -(1 / 2·log ε) · Σ_{0<a<D} χ(a)·log sin(πa/D)`.

use std::f64::consts::PI;

use super::{check_discriminant, fundamental_unit, radicand};
use crate::error::{Error, Result};

/// Kronecker symbol `(a/n)`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return i32::from(a == 1 || a == -1);
    }
    let mut result = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    n >>= twos;
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    // Jacobi symbol (a/n), n odd and positive.
    let mut a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Class number from the character sum, rounded to the nearest integer.
///
/// `precision_terms` caps the number of summands; `None` uses all `|D| - 1`
/// of them. A rounding residue above `0.25` is reported as `PrecisionLoss`.
pub fn class_number_analytic(disc: i64, precision_terms: Option<usize>) -> Result<u64> {
    check_discriminant(disc)?;
    let value = analytic_value(disc, precision_terms)?;
    let rounded = value.round();
    if !value.is_finite() || (value - rounded).abs() > 0.25 || rounded < 1.0 {
        return Err(Error::PrecisionLoss { value });
    }
    Ok(rounded as u64)
}

/// Unrounded value of the class-number formula.
pub fn analytic_value(disc: i64, precision_terms: Option<usize>) -> Result<f64> {
    let abs = disc.unsigned_abs();
    let terms = precision_terms.map_or(abs - 1, |t| (t as u64).min(abs - 1));
    if disc < 0 {
        let roots = match disc {
            -3 => 6.0,
            -4 => 4.0,
            _ => 2.0,
        };
        let sum: i64 = (1..=terms as i64)
            .map(|a| i64::from(kronecker(disc, a)) * a)
            .sum();
        Ok(-roots * sum as f64 / (2.0 * abs as f64))
    } else {
        let reg = fundamental_unit(radicand(disc))?.regulator;
        let n = disc as f64;
        let sum: f64 = (1..=terms as i64)
            .map(|a| {
                let chi = kronecker(disc, a);
                if chi == 0 {
                    return 0.0;
                }
                // sin(πa/D) = sin(π(D-a)/D); use the smaller angle.
                let folded = a.min(disc - a) as f64;
                f64::from(chi) * (PI * folded / n).sin().ln()
            })
            .sum();
        Ok(-sum / (2.0 * reg))
    }
}
