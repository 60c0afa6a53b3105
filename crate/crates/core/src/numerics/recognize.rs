use rug::{Float, Integer, Rational};

use crate::error::{invalid, Error, Result};
use crate::quadratic::is_squarefree;

/// Smallest precision at which recognition is attempted.
pub const RECOGNIZE_MIN_BITS: u32 = 192;

fn numer_ok(q: &Rational, height: u64) -> bool {
    q.numer().significant_bits() <= 64 && q.numer().clone().abs() <= height
}

/// Finds the unique `(a, b)` with denominators dividing 2, numerators at
/// most `height` in absolute value, and `|v - (a + b sqrt d)| < 2^(-bits/2)`.
///
/// Scans `b` linearly with an `f64` prefilter and confirms each survivor at
/// full precision.
pub fn recognize_quadratic(v: &Float, d: u64, height: u64) -> Result<Option<(Rational, Rational)>> {
    let bits = v.prec();
    if bits < RECOGNIZE_MIN_BITS {
        return invalid(format!("recognition needs at least {RECOGNIZE_MIN_BITS} bits, got {bits}"));
    }
    if d < 2 || !is_squarefree(d as i64) {
        return invalid(format!("{d} is not a squarefree integer > 1"));
    }
    if !v.is_finite() {
        return invalid("cannot recognize a non-finite value");
    }
    let tol = Float::with_val(bits, Float::i_exp(1, -(bits as i32) / 2));
    let root = Float::with_val(bits + 64, d).sqrt();
    let vf = v.to_f64();
    let rf = (d as f64).sqrt();
    let h = height as i64;
    // slack for f64 rounding of v and of nb * sqrt(d) / 2
    let slack = 1e-3 + (vf.abs() + 2.0 * height as f64 * rf) * 1e-14;

    let mut found: Option<(Rational, Rational)> = None;
    for nb in -2 * h..=2 * h {
        let twice_a = 2.0 * vf - nb as f64 * rf;
        let na = twice_a.round();
        if (twice_a - na).abs() > slack {
            continue;
        }
        let b = Rational::from((nb, 2));
        if !numer_ok(&b, height) {
            continue;
        }
        // exact nearest 2a at full precision
        let twice_a_exact = Float::with_val(bits + 64, v * 2u32) - Float::with_val(bits + 64, &root * nb);
        let na_exact = match twice_a_exact.to_integer() {
            Some(n) => n,
            None => continue,
        };
        let a = Rational::from((na_exact, Integer::from(2)));
        if !numer_ok(&a, height) {
            continue;
        }
        let cand = Float::with_val(bits + 64, &root * &b) + &a;
        let err = Float::with_val(bits, cand - v).abs();
        if err >= tol {
            continue;
        }
        if let Some((a0, b0)) = &found {
            if *a0 != a || *b0 != b {
                return Err(Error::Ambiguity(format!(
                    "{a0} + {b0} sqrt {d} and {a} + {b} sqrt {d} both match at {bits} bits"
                )));
            }
        }
        found = Some((a, b));
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognize_examples() {
        let bits = 256;
        let s79 = Float::with_val(bits, 79).sqrt();
        let v = Float::with_val(bits, 1431) - s79 * 161u32;
        assert_eq!(
            recognize_quadratic(&v, 79, 10_000).unwrap(),
            Some((Rational::from(1431), Rational::from(-161)))
        );

        let half = Float::with_val(bits, 0.5);
        assert_eq!(
            recognize_quadratic(&half, 5, 100).unwrap(),
            Some((Rational::from((1, 2)), Rational::new()))
        );

        let v = (Float::with_val(bits, 5) - Float::with_val(bits, 5).sqrt()) / 2u32;
        assert_eq!(
            recognize_quadratic(&v, 5, 100).unwrap(),
            Some((Rational::from((5, 2)), Rational::from((-1, 2))))
        );
    }

    #[test]
    fn unrecognizable_value() {
        let v = Float::with_val(256, rug::float::Constant::Pi);
        assert_eq!(recognize_quadratic(&v, 3, 1000).unwrap(), None);
    }

    #[test]
    fn argument_checks() {
        let low = Float::with_val(128, 1);
        assert!(recognize_quadratic(&low, 5, 10).is_err());
        let v = Float::with_val(256, 1);
        assert!(recognize_quadratic(&v, 4, 10).is_err());
        assert!(recognize_quadratic(&v, 1, 10).is_err());
    }
}
