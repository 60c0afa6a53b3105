use std::fmt;

use rug::{Complex, Float, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub type BigReal = Float;
pub type BigComplex = Complex;

/// Lowest precision any evaluation accepts.
pub const MIN_BITS: u32 = 64;

pub(crate) fn check_bits(bits: u32) -> Result<()> {
    if bits < MIN_BITS {
        return invalid(format!("precision must be at least {MIN_BITS} bits, got {bits}"));
    }
    Ok(())
}

/// The angle `pi * q`, with `q` kept exactly and reduced into `[0, 2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiRational {
    q: Rational,
}

impl PiRational {
    pub fn new(q: Rational) -> PiRational {
        // q - 2 floor(q/2)
        let half = Rational::from(&q / 2u32);
        let fl = half.floor();
        PiRational { q: q - fl * 2u32 }
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<PiRational> {
        if den == 0 {
            return invalid("zero denominator in angle");
        }
        Ok(PiRational::new(Rational::from((num, den))))
    }

    /// Reduced multiplier in `[0, 2)`.
    pub fn q(&self) -> &Rational {
        &self.q
    }

    fn is_integer(&self) -> bool {
        *self.q.denom() == 1
    }

    fn is_half_odd(&self) -> bool {
        *self.q.denom() == 2
    }
}

impl fmt::Display for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pi*{}", self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrigKind {
    Sin,
    Cos,
    Tan,
    Cot,
    Sec,
    Csc,
}

impl fmt::Display for TrigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TrigKind::Sin => "sin",
            TrigKind::Cos => "cos",
            TrigKind::Tan => "tan",
            TrigKind::Cot => "cot",
            TrigKind::Sec => "sec",
            TrigKind::Csc => "csc",
        };
        f.write_str(s)
    }
}

/// `(sin pi q, cos pi q)` with exact zeros at multiples of `pi/2`.
fn sin_cos_pi(q: &PiRational, bits: u32) -> (Float, Float) {
    if q.is_integer() {
        let c = if *q.q() == 0 { 1 } else { -1 };
        return (Float::with_val(bits, 0), Float::with_val(bits, c));
    }
    if q.is_half_odd() {
        let s = if *q.q() < 1 { 1 } else { -1 };
        return (Float::with_val(bits, s), Float::with_val(bits, 0));
    }
    let work = bits + q.q().denom().significant_bits() + 16;
    let x = Float::with_val(work, q.q());
    let s = Float::with_val(bits, x.sin_pi_ref());
    let c = Float::with_val(bits, x.cos_pi_ref());
    (s, c)
}

/// A trigonometric function of `pi q`; poles are reported, never rounded.
pub fn trig_pi(q: &PiRational, kind: TrigKind, bits: u32) -> Result<BigReal> {
    check_bits(bits)?;
    let (s, c) = sin_cos_pi(q, bits + 8);
    let pole = |what: &str| Err(Error::Pole(format!("{kind} has a pole at {q} ({what} = 0)")));
    let v = match kind {
        TrigKind::Sin => s,
        TrigKind::Cos => c,
        TrigKind::Tan => {
            if c.is_zero() {
                return pole("cos");
            }
            s / c
        }
        TrigKind::Cot => {
            if s.is_zero() {
                return pole("sin");
            }
            c / s
        }
        TrigKind::Sec => {
            if c.is_zero() {
                return pole("cos");
            }
            c.recip()
        }
        TrigKind::Csc => {
            if s.is_zero() {
                return pole("sin");
            }
            s.recip()
        }
    };
    Ok(Float::with_val(bits, v))
}

/// A trigonometric function of `pi (re + i im)` with both parts exact.
///
/// The real part goes through exact reduction; the imaginary part through
/// `cosh`/`sinh`.
pub fn trig_pi_complex(re: &Rational, im: &Rational, kind: TrigKind, bits: u32) -> Result<BigComplex> {
    check_bits(bits)?;
    if *im == 0 {
        let v = trig_pi(&PiRational::new(re.clone()), kind, bits)?;
        return Ok(Complex::with_val(bits, (v, 0)));
    }
    let work = bits + 16;
    let (s, c) = sin_cos_pi(&PiRational::new(re.clone()), work);
    let y = Float::with_val(work + im.denom().significant_bits(), im) * Float::with_val(work, rug::float::Constant::Pi);
    let (sh, ch) = y.sinh_cosh(Float::new(work));
    // sin(a + ib) = sin a cosh b + i cos a sinh b
    // cos(a + ib) = cos a cosh b - i sin a sinh b
    let sin_z = Complex::with_val(work, (Float::with_val(work, &s * &ch), Float::with_val(work, &c * &sh)));
    let cos_z = Complex::with_val(work, (Float::with_val(work, &c * &ch), -Float::with_val(work, &s * &sh)));
    let v = match kind {
        TrigKind::Sin => sin_z,
        TrigKind::Cos => cos_z,
        TrigKind::Tan => sin_z / cos_z,
        TrigKind::Cot => cos_z / sin_z,
        TrigKind::Sec => cos_z.recip(),
        TrigKind::Csc => sin_z.recip(),
    };
    Ok(Complex::with_val(bits, v))
}

/// `sin z` or `cos z` for a complex argument.
pub fn trig_complex(z: &BigComplex, kind: TrigKind, bits: u32) -> Result<BigComplex> {
    check_bits(bits)?;
    let work = Complex::with_val(bits + 16, z);
    let v = match kind {
        TrigKind::Sin => work.sin(),
        TrigKind::Cos => work.cos(),
        other => return invalid(format!("trig_complex supports sin and cos, not {other}")),
    };
    Ok(Complex::with_val(bits, v))
}

/// `e^{2 pi i j / m}` with `j` reduced mod `m` exactly.
pub fn root_of_unity(j: i64, m: u64, bits: u32) -> Result<BigComplex> {
    check_bits(bits)?;
    if m == 0 {
        return invalid("root of unity needs m >= 1");
    }
    let r = j.rem_euclid(m as i64);
    let q = PiRational::new(Rational::from((2 * r, m as i64)));
    let (s, c) = sin_cos_pi(&q, bits);
    Ok(Complex::with_val(bits, (c, s)))
}

/// Relative distance `|u - v| / max(1, |u|, |v|)`.
pub fn residual(u: &BigComplex, v: &BigComplex) -> BigReal {
    let bits = u.prec().0.max(v.prec().0);
    let diff = Complex::with_val(bits, u - v);
    let num = Float::with_val(bits, diff.abs_ref());
    let au = Float::with_val(bits, u.abs_ref());
    let av = Float::with_val(bits, v.abs_ref());
    let mut scale = Float::with_val(bits, 1);
    if au > scale {
        scale = au;
    }
    if av > scale {
        scale = av;
    }
    num / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Float, b: f64) -> bool {
        (Float::with_val(a.prec(), a - b)).abs() < 1e-15
    }

    #[test]
    fn angle_reduction() {
        let q = PiRational::from_ratio(-1, 3).unwrap();
        assert_eq!(*q.q(), Rational::from((5, 3)));
        let q = PiRational::from_ratio(7, 2).unwrap();
        assert_eq!(*q.q(), Rational::from((3, 2)));
        assert_eq!(*PiRational::from_ratio(4, 1).unwrap().q(), 0);
    }

    #[test]
    fn trig_examples() {
        let half = PiRational::from_ratio(1, 2).unwrap();
        assert_eq!(trig_pi(&half, TrigKind::Sin, 256).unwrap(), 1);
        let third = PiRational::from_ratio(1, 3).unwrap();
        let c = trig_pi(&third, TrigKind::Cos, 256).unwrap();
        assert!(Float::with_val(256, &c - 0.5f64).abs() < Float::with_val(256, Float::i_exp(1, -250)));
        let c = trig_pi(&PiRational::from_ratio(2, 5).unwrap(), TrigKind::Cos, 256).unwrap();
        let exact = (Float::with_val(256, 5).sqrt() - 1u32) / 4u32;
        assert!(Float::with_val(256, &c - &exact).abs() < Float::with_val(256, Float::i_exp(1, -250)));
    }

    #[test]
    fn poles_reported() {
        let half = PiRational::from_ratio(1, 2).unwrap();
        assert!(matches!(trig_pi(&half, TrigKind::Tan, 128), Err(Error::Pole(_))));
        assert!(matches!(trig_pi(&half, TrigKind::Sec, 128), Err(Error::Pole(_))));
        let zero = PiRational::from_ratio(0, 1).unwrap();
        assert!(matches!(trig_pi(&zero, TrigKind::Cot, 128), Err(Error::Pole(_))));
        assert!(matches!(trig_pi(&zero, TrigKind::Csc, 128), Err(Error::Pole(_))));
        assert!(trig_pi(&zero, TrigKind::Tan, 128).unwrap().is_zero());
        assert!(trig_pi(&half, TrigKind::Cot, 128).unwrap().is_zero());
    }

    #[test]
    fn complex_examples() {
        let zero = Complex::with_val(128, (0, 0));
        assert!(trig_complex(&zero, TrigKind::Sin, 128).unwrap().real().is_zero());
        assert_eq!(*trig_complex(&zero, TrigKind::Cos, 128).unwrap().real(), 1);
        let i = Complex::with_val(128, (0, 1));
        let v = trig_complex(&i, TrigKind::Cos, 128).unwrap();
        assert!(close(v.real(), 1.5430806348152437));
        assert!(v.imag().is_zero());
        assert!(trig_complex(&i, TrigKind::Tan, 128).is_err());
    }

    #[test]
    fn complex_pi_matches_generic() {
        let re = Rational::from((3, 7));
        let im = Rational::from((-2, 5));
        for kind in [TrigKind::Sin, TrigKind::Cos] {
            let a = trig_pi_complex(&re, &im, kind, 200).unwrap();
            let pi = Float::with_val(220, rug::float::Constant::Pi);
            let z = Complex::with_val(220, (Float::with_val(220, &re), Float::with_val(220, &im))) * pi;
            let b = trig_complex(&z, kind, 200).unwrap();
            assert!(residual(&a, &b) < Float::i_exp(1, -190));
        }
    }

    #[test]
    fn roots_of_unity() {
        let i = root_of_unity(1, 4, 128).unwrap();
        assert!(i.real().is_zero());
        assert_eq!(*i.imag(), 1);
        let w = root_of_unity(1, 3, 128).unwrap();
        let expect = Complex::with_val(128, (-0.5f64, Float::with_val(128, 3).sqrt() / 2u32));
        assert!(residual(&w, &expect) < Float::i_exp(1, -120));
        let one = root_of_unity(5, 5, 128).unwrap();
        assert_eq!(one, Complex::with_val(128, (1, 0)));
        assert_eq!(root_of_unity(-1, 4, 128).unwrap(), Complex::with_val(128, (0, -1)));
    }
}
