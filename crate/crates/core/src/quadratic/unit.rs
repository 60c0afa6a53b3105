//! Fundamental units of real quadratic fields and the derived `(a_p, b_p)`,
//! `(s_p, t_p)` data.

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::arith::require_odd_prime;
use crate::error::{invalid, Error, Result};
use crate::quadratic::elem::{is_squarefree, QuadElem};
use crate::quadratic::forms::class_number_real;

fn isqrt_u64(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Fundamental unit of `Q(sqrt d)` for squarefree `d > 1`, with its norm.
///
/// Expands `sqrt d` (or `(1 + sqrt d)/2` when `d = 1 mod 4`) as a continued
/// fraction; the convergent at the end of the first period gives the unit.
pub fn field_unit(d: u64) -> Result<(QuadElem, i8)> {
    if d < 2 || !is_squarefree(d as i64) {
        return invalid(format!("{d} is not a squarefree integer > 1"));
    }
    let half = d % 4 == 1;
    let s = isqrt_u64(d) as i128;
    let di = d as i128;
    let (mut pp, mut qq): (i128, i128) = if half { (1, 2) } else { (0, 1) };
    let q0 = qq;
    // convergents h/k of the expansion
    let (mut h1, mut h2) = (Integer::from(1), Integer::from(0));
    let (mut k1, mut k2) = (Integer::from(0), Integer::from(1));
    loop {
        let a = (pp + s) / qq;
        let h = Integer::from(&h1 * a) + &h2;
        let k = Integer::from(&k1 * a) + &k2;
        h2 = std::mem::replace(&mut h1, h);
        k2 = std::mem::replace(&mut k1, k);
        pp = a * qq - pp;
        qq = (di - pp * pp) / qq;
        if qq == q0 {
            break;
        }
    }
    // unit = h - k * conj(omega)
    let unit = if half {
        let a = Rational::from((Integer::from(&h1 * 2u32) - &k1, 2));
        let b = Rational::from((k1, 2));
        QuadElem::new_unchecked(d as i64, a, b)
    } else {
        QuadElem::new_unchecked(d as i64, Rational::from(h1), Rational::from(k1))
    };
    let norm = unit.norm();
    let sign = if norm == 1 {
        1
    } else if norm == -1 {
        -1
    } else {
        return Err(Error::Integrity(format!("continued fraction for {d} produced norm {norm}")));
    };
    Ok((unit, sign))
}

/// `eps_p`, its norm, `h(p)` and `eps_p^h(p) = a_p + b_p sqrt p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitData {
    pub p: u64,
    pub unit: QuadElem,
    pub norm: i8,
    pub h_real: u64,
    pub power_coeffs: (Rational, Rational),
}

impl UnitData {
    pub fn a_p(&self) -> &Rational {
        &self.power_coeffs.0
    }

    pub fn b_p(&self) -> &Rational {
        &self.power_coeffs.1
    }

    /// `eps_p^h(p)` as a field element.
    pub fn unit_power(&self) -> QuadElem {
        QuadElem::new_unchecked(
            self.p as i64,
            self.power_coeffs.0.clone(),
            self.power_coeffs.1.clone(),
        )
    }
}

/// Fundamental unit data for an odd prime.
pub fn fundamental_unit(p: u64) -> Result<UnitData> {
    require_odd_prime(p)?;
    let (unit, norm) = field_unit(p)?;
    let h_real = class_number_real(p)?;
    let power = unit.pow(h_real);
    Ok(UnitData {
        p,
        unit,
        norm,
        h_real,
        power_coeffs: (power.a().clone(), power.b().clone()),
    })
}

/// `s_p = sqrt(a_p + (-1)^((p+1)/4))` and `t_p = b_p / s_p` for `p = 3 (mod 4)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StData {
    pub p: u64,
    #[serde(with = "integer_string")]
    pub s: Integer,
    #[serde(with = "integer_string")]
    pub t: Integer,
}

mod integer_string {
    use rug::Integer;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Integer, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Integer, D::Error> {
        let s = String::deserialize(d)?;
        Integer::from_str_radix(&s, 10).map_err(D::Error::custom)
    }
}

pub fn st_values(p: u64) -> Result<StData> {
    require_odd_prime(p)?;
    if p % 4 != 3 {
        return invalid(format!("s_p and t_p are defined for p = 3 (mod 4), got {p}"));
    }
    st_from_unit(&fundamental_unit(p)?)
}

/// [`st_values`] from already computed unit data.
pub fn st_from_unit(data: &UnitData) -> Result<StData> {
    let p = data.p;
    if p % 4 != 3 {
        return invalid(format!("s_p and t_p are defined for p = 3 (mod 4), got {p}"));
    }
    let (a, b) = data
        .unit_power()
        .integer_coords()
        .ok_or_else(|| Error::Integrity(format!("a_p, b_p not integral for p={p}")))?;
    let sign: i32 = if ((p + 1) / 4) % 2 == 0 { 1 } else { -1 };
    let target = a + sign;
    if target < 0 || !target.is_perfect_square() {
        return Err(Error::Integrity(format!(
            "a_p + (-1)^((p+1)/4) = {target} is not a perfect square for p={p}"
        )));
    }
    let s = target.sqrt();
    let (t, r) = b.div_rem(s.clone());
    if r != 0 || t <= 0 {
        return Err(Error::Integrity(format!("b_p is not a positive multiple of s_p for p={p}")));
    }
    Ok(StData { p, s, t })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_examples() {
        let u = fundamental_unit(79).unwrap();
        assert_eq!(u.unit, QuadElem::from_ints(79, 80, 9).unwrap());
        assert_eq!(u.norm, 1);
        assert_eq!(u.h_real, 3);
        assert_eq!(u.power_coeffs, (Rational::from(2047760), Rational::from(230391)));

        let u = fundamental_unit(5).unwrap();
        assert_eq!(u.unit, QuadElem::new(5, Rational::from((1, 2)), Rational::from((1, 2))).unwrap());
        assert_eq!(u.norm, -1);

        let u = fundamental_unit(13).unwrap();
        assert_eq!(u.unit, QuadElem::new(13, Rational::from((3, 2)), Rational::from((1, 2))).unwrap());
        assert_eq!(u.norm, -1);

        assert_eq!(fundamental_unit(3).unwrap().unit, QuadElem::from_ints(3, 2, 1).unwrap());
        assert!(fundamental_unit(9).is_err());
    }

    #[test]
    fn composite_radicands() {
        let (u, n) = field_unit(6).unwrap();
        assert_eq!((u, n), (QuadElem::from_ints(6, 5, 2).unwrap(), 1));
        let (u, n) = field_unit(21).unwrap();
        assert_eq!(u, QuadElem::new(21, Rational::from((5, 2)), Rational::from((1, 2))).unwrap());
        assert_eq!(n, 1);
        let (u, _) = field_unit(3 * 79).unwrap();
        assert_eq!(u.norm(), 1);
    }

    #[test]
    fn st_examples() {
        let st = st_values(79).unwrap();
        assert_eq!((st.s, st.t), (Integer::from(1431), Integer::from(161)));
        let st = st_values(7).unwrap();
        assert_eq!((st.s, st.t), (Integer::from(3), Integer::from(1)));
        let st = st_values(3).unwrap();
        assert_eq!((st.s, st.t), (Integer::from(1), Integer::from(1)));
        assert!(st_values(13).is_err());
    }
}
