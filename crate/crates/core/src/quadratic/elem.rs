use std::fmt;

use rug::{Complex, Float, Integer, Rational};

use crate::error::{invalid, Error, Result};

/// `true` when `d` has no repeated prime factor.
pub fn is_squarefree(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    let mut m = d.unsigned_abs();
    let mut q = 2u64;
    while q * q <= m {
        if m % q == 0 {
            m /= q;
            if m % q == 0 {
                return false;
            }
        }
        q += 1;
    }
    true
}

/// An exact element `a + b*sqrt(d)` of the quadratic field `Q(sqrt d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    d: i64,
    a: Rational,
    b: Rational,
}

impl QuadElem {
    pub fn new(d: i64, a: Rational, b: Rational) -> Result<QuadElem> {
        if d == 1 || !is_squarefree(d) {
            return invalid(format!("radicand {d} is not a squarefree integer other than 0, 1"));
        }
        Ok(QuadElem { d, a, b })
    }

    pub fn from_ints(d: i64, a: i64, b: i64) -> Result<QuadElem> {
        QuadElem::new(d, Rational::from(a), Rational::from(b))
    }

    pub(crate) fn new_unchecked(d: i64, a: Rational, b: Rational) -> QuadElem {
        QuadElem { d, a, b }
    }

    pub fn one(d: i64) -> Result<QuadElem> {
        QuadElem::from_ints(d, 1, 0)
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// `a^2 - d b^2`
    pub fn norm(&self) -> Rational {
        let a2 = Rational::from(self.a.square_ref());
        let b2 = Rational::from(self.b.square_ref());
        a2 - b2 * self.d
    }

    pub fn trace(&self) -> Rational {
        Rational::from(&self.a * 2u32)
    }

    pub fn conj(&self) -> QuadElem {
        QuadElem::new_unchecked(self.d, self.a.clone(), Rational::from(-&self.b))
    }

    pub fn neg(&self) -> QuadElem {
        QuadElem::new_unchecked(self.d, Rational::from(-&self.a), Rational::from(-&self.b))
    }

    pub fn scale(&self, k: &Rational) -> QuadElem {
        QuadElem::new_unchecked(
            self.d,
            Rational::from(&self.a * k),
            Rational::from(&self.b * k),
        )
    }

    pub fn checked_add(&self, other: &QuadElem) -> Result<QuadElem> {
        self.same_field(other)?;
        Ok(QuadElem::new_unchecked(
            self.d,
            Rational::from(&self.a + &other.a),
            Rational::from(&self.b + &other.b),
        ))
    }

    pub fn checked_mul(&self, other: &QuadElem) -> Result<QuadElem> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &QuadElem) -> QuadElem {
        let aa = Rational::from(&self.a * &other.a);
        let bb = Rational::from(&self.b * &other.b) * self.d;
        let ab = Rational::from(&self.a * &other.b);
        let ba = Rational::from(&self.b * &other.a);
        QuadElem::new_unchecked(self.d, aa + bb, ab + ba)
    }

    fn same_field(&self, other: &QuadElem) -> Result<()> {
        if self.d != other.d {
            return invalid(format!(
                "elements of Q(sqrt {}) and Q(sqrt {}) cannot be combined",
                self.d, other.d
            ));
        }
        Ok(())
    }

    pub fn inv(&self) -> Result<QuadElem> {
        let n = self.norm();
        if n == 0 {
            return Err(Error::InvalidArgument("zero has no inverse".into()));
        }
        let inv_n = n.recip();
        Ok(self.conj().scale(&inv_n))
    }

    /// `self^n` by binary powering.
    pub fn pow(&self, mut n: u64) -> QuadElem {
        let mut acc = QuadElem::new_unchecked(self.d, Rational::from(1), Rational::new());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `self^n` for any integer `n`; negative powers need a nonzero element.
    pub fn pow_signed(&self, n: i64) -> Result<QuadElem> {
        if n >= 0 {
            Ok(self.pow(n as u64))
        } else {
            Ok(self.inv()?.pow(n.unsigned_abs()))
        }
    }

    /// Both coordinates are integers.
    pub fn has_integer_coords(&self) -> bool {
        *self.a.denom() == 1 && *self.b.denom() == 1
    }

    fn magnitude_bits(&self) -> u32 {
        let bits = |q: &Rational| -> u32 {
            let n = q.numer().significant_bits();
            let d = q.denom().significant_bits();
            n.saturating_sub(d) + 2
        };
        let root = (64 - self.d.unsigned_abs().leading_zeros()) / 2 + 1;
        bits(&self.a).max(bits(&self.b) + root)
    }

    /// Real value for `d > 0`, correct to `bits` even when `a` and `b sqrt d`
    /// nearly cancel (as in `eps^-h`).
    pub fn to_float(&self, bits: u32) -> Result<Float> {
        if self.d < 0 {
            return invalid(format!("element of Q(sqrt {}) is not real", self.d));
        }
        let work = bits + 2 * self.magnitude_bits() + 64;
        let root = Float::with_val(work, self.d).sqrt();
        let v = Float::with_val(work, &self.a) + root * &self.b;
        Ok(Float::with_val(bits, v))
    }

    /// Complex value; for `d < 0` the square root is `i sqrt|d|`.
    pub fn to_complex(&self, bits: u32) -> Complex {
        if self.d > 0 {
            let re = self.to_float(bits).expect("real field");
            Complex::with_val(bits, (re, 0))
        } else {
            let work = bits + 64;
            let root = Float::with_val(work, -self.d).sqrt();
            let im = root * &self.b;
            Complex::with_val(bits, (&self.a, im))
        }
    }

    /// Integer coordinates when the element lies in `Z[sqrt d]`.
    pub fn integer_coords(&self) -> Option<(Integer, Integer)> {
        if self.has_integer_coords() {
            Some((self.a.numer().clone(), self.b.numer().clone()))
        } else {
            None
        }
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("√{}", self.d);
        if self.b == 0 {
            return write!(f, "{}", self.a);
        }
        let babs = Rational::from(self.b.abs_ref());
        let coeff = if babs == 1 {
            root
        } else {
            format!("{babs}{root}")
        };
        if self.a == 0 {
            if self.b < 0 {
                write!(f, "-{coeff}")
            } else {
                write!(f, "{coeff}")
            }
        } else {
            let sign = if self.b < 0 { '-' } else { '+' };
            write!(f, "{}{sign}{coeff}", self.a)
        }
    }
}

/// Exact product in `Q(sqrt d)`; the operands must share `d`.
pub fn quad_mul(x: &QuadElem, y: &QuadElem) -> Result<QuadElem> {
    x.checked_mul(y)
}

/// Exact `x^n`; `x^0` is one.
pub fn quad_pow(x: &QuadElem, n: u64) -> QuadElem {
    x.pow(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(d: i64, a: (i64, i64), b: (i64, i64)) -> QuadElem {
        QuadElem::new(d, Rational::from(a), Rational::from(b)).unwrap()
    }

    #[test]
    fn product_examples() {
        let u = QuadElem::from_ints(3, 2, 1).unwrap();
        assert_eq!(quad_mul(&u, &u.conj()).unwrap(), QuadElem::one(3).unwrap());

        let phi = q(5, (1, 2), (1, 2));
        assert_eq!(quad_mul(&phi, &phi).unwrap(), q(5, (3, 2), (1, 2)));

        let e = QuadElem::from_ints(79, 80, 9).unwrap();
        assert_eq!(quad_mul(&e, &e).unwrap(), QuadElem::from_ints(79, 12799, 1440).unwrap());
    }

    #[test]
    fn power_examples() {
        let e = QuadElem::from_ints(79, 80, 9).unwrap();
        assert_eq!(quad_pow(&e, 3), QuadElem::from_ints(79, 2047760, 230391).unwrap());
        assert_eq!(quad_pow(&e, 0), QuadElem::one(79).unwrap());
        let phi = q(5, (1, 2), (1, 2));
        assert_eq!(quad_pow(&phi, 2), q(5, (3, 2), (1, 2)));
    }

    #[test]
    fn mismatched_fields_rejected() {
        let x = QuadElem::from_ints(3, 1, 1).unwrap();
        let y = QuadElem::from_ints(5, 1, 1).unwrap();
        assert!(quad_mul(&x, &y).is_err());
    }

    #[test]
    fn radicand_validation() {
        assert!(QuadElem::from_ints(12, 1, 1).is_err());
        assert!(QuadElem::from_ints(0, 1, 1).is_err());
        assert!(QuadElem::from_ints(1, 1, 1).is_err());
        assert!(QuadElem::from_ints(-3, 1, 1).is_ok());
    }

    #[test]
    fn negative_power_is_inverse() {
        let e = QuadElem::from_ints(79, 80, 9).unwrap();
        let inv3 = e.pow_signed(-3).unwrap();
        assert_eq!(inv3.checked_mul(&e.pow(3)).unwrap(), QuadElem::one(79).unwrap());
        assert_eq!(inv3, QuadElem::from_ints(79, 2047760, -230391).unwrap());
    }

    #[test]
    fn float_value_survives_cancellation() {
        // eps^-30 for eps = 80 + 9 sqrt 79 is about 1e-66
        let e = QuadElem::from_ints(79, 80, 9).unwrap();
        let tiny = e.pow_signed(-30).unwrap().to_float(128).unwrap();
        let big = e.pow(30).to_float(128).unwrap();
        let one = Float::with_val(128, &tiny * &big);
        assert!((one - 1u32).abs() < Float::with_val(128, Float::i_exp(1, -120)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(QuadElem::from_ints(79, 80, 9).unwrap().to_string(), "80+9√79");
        assert_eq!(q(5, (1, 2), (1, 2)).to_string(), "1/2+1/2√5");
        assert_eq!(QuadElem::from_ints(79, 1431, -161).unwrap().to_string(), "1431-161√79");
        assert_eq!(QuadElem::from_ints(3, 0, -1).unwrap().to_string(), "-√3");
    }
}
