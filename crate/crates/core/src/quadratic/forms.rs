//! Binary quadratic forms and the class numbers they count.

use std::collections::BTreeSet;
use std::fmt;

use crate::arith::require_odd_prime;
use crate::error::{invalid, Result};
use crate::quadratic::elem::is_squarefree;
use crate::quadratic::unit::field_unit;

/// The form `a x^2 + b x y + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

impl BinaryForm {
    pub fn new(a: i64, b: i64, c: i64) -> BinaryForm {
        BinaryForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        gcd(gcd(self.a, self.b), self.c) == 1
    }

    /// Reduced positive definite: `|b| <= a <= c`, and `b >= 0` if
    /// `|b| = a` or `a = c`.
    pub fn is_reduced_definite(&self) -> bool {
        let BinaryForm { a, b, c } = *self;
        if self.discriminant() >= 0 || a <= 0 {
            return false;
        }
        b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
    }

    /// Reduced indefinite: `0 < b < sqrt D` and `sqrt D - b < 2|a| < sqrt D + b`.
    pub fn is_reduced_indefinite(&self) -> bool {
        let disc = self.discriminant();
        if disc <= 0 {
            return false;
        }
        let s = isqrt(disc as u64) as i64;
        reduced_indefinite_with_floor(self.a, self.b, s)
    }

    /// One step of the reduction cycle of a reduced indefinite form.
    fn rho(&self, s: i64) -> BinaryForm {
        let disc = self.discriminant();
        let m = 2 * self.c.abs();
        let b2 = s - (s + self.b).rem_euclid(m);
        BinaryForm::new(self.c, b2, (b2 * b2 - disc) / (4 * self.c))
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

// For non-square D with s = floor(sqrt D) the real inequalities become
// 0 < b <= s, s < 2|a| + b, 2|a| - b <= s.
fn reduced_indefinite_with_floor(a: i64, b: i64, s: i64) -> bool {
    a != 0 && 0 < b && b <= s && 2 * a.abs() + b > s && 2 * a.abs() - b <= s
}

/// `true` for discriminants of quadratic fields.
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

/// All primitive reduced positive definite forms of discriminant `disc < 0`.
pub fn reduced_forms_definite(disc: i64) -> Vec<BinaryForm> {
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -disc {
        for b in (-a + 1)..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = BinaryForm::new(a, b, num / (4 * a));
            if f.is_reduced_definite() && f.is_primitive() {
                out.push(f);
            }
        }
        a += 1;
    }
    out
}

/// Class number of the imaginary quadratic field of discriminant `disc`.
pub fn class_number_imag(disc: i64) -> Result<u64> {
    if disc >= 0 || !is_fundamental_discriminant(disc) {
        return invalid(format!("{disc} is not a negative fundamental discriminant"));
    }
    Ok(reduced_forms_definite(disc).len() as u64)
}

/// All primitive reduced indefinite forms of a non-square discriminant.
pub fn reduced_forms_indefinite(disc: i64) -> Vec<BinaryForm> {
    let s = isqrt(disc as u64) as i64;
    let mut out = Vec::new();
    for b in 1..=s {
        if (b * b - disc) % 4 != 0 {
            continue;
        }
        let n = (b * b - disc) / 4;
        for a in -s..=s {
            if a == 0 || n % a != 0 || !reduced_indefinite_with_floor(a, b, s) {
                continue;
            }
            let f = BinaryForm::new(a, b, n / a);
            if f.is_primitive() {
                out.push(f);
            }
        }
    }
    out
}

/// Cycles of reduced indefinite forms, each listed from its smallest member.
pub fn form_cycles(disc: i64) -> Vec<Vec<BinaryForm>> {
    let s = isqrt(disc as u64) as i64;
    let mut remaining: BTreeSet<BinaryForm> = reduced_forms_indefinite(disc).into_iter().collect();
    let mut cycles = Vec::new();
    while let Some(&start) = remaining.iter().next() {
        let mut cycle = Vec::new();
        let mut f = start;
        loop {
            remaining.remove(&f);
            cycle.push(f);
            f = f.rho(s);
            if f == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    cycles
}

/// Narrow class number of the real field of discriminant `disc`.
pub fn narrow_class_number(disc: i64) -> Result<u64> {
    if disc <= 0 || !is_fundamental_discriminant(disc) {
        return invalid(format!("{disc} is not a positive fundamental discriminant"));
    }
    Ok(form_cycles(disc).len() as u64)
}

/// Discriminant of `Q(sqrt d)` for squarefree `d`.
pub fn field_discriminant(d: i64) -> Result<i64> {
    if d == 1 || !is_squarefree(d) {
        return invalid(format!("{d} is not a squarefree integer other than 0, 1"));
    }
    Ok(if d.rem_euclid(4) == 1 { d } else { 4 * d })
}

/// Class number of `Q(sqrt d)` for squarefree `d > 1`.
pub fn class_number_real_field(d: u64) -> Result<u64> {
    let disc = field_discriminant(d as i64)?;
    let narrow = narrow_class_number(disc)?;
    let (_, norm) = field_unit(d)?;
    Ok(if norm == 1 { narrow / 2 } else { narrow })
}

/// Class number `h(p)` of `Q(sqrt p)`.
pub fn class_number_real(p: u64) -> Result<u64> {
    require_odd_prime(p)?;
    class_number_real_field(p)
}

/// Discriminant of `Q(sqrt -p)`.
pub fn disc_imag(p: u64) -> Result<i64> {
    require_odd_prime(p)?;
    field_discriminant(-(p as i64))
}

/// Discriminant of `Q(sqrt p)`.
pub fn disc_real(p: u64) -> Result<i64> {
    require_odd_prime(p)?;
    field_discriminant(p as i64)
}

/// Discriminant `-3p` of `Q(sqrt -3p)` for `p = 1 (mod 4)`.
pub fn disc_minus_3p(p: u64) -> Result<i64> {
    require_odd_prime(p)?;
    if p % 4 != 1 || p == 3 {
        return invalid(format!("-3p is a field discriminant only for p = 1 (mod 4), got {p}"));
    }
    field_discriminant(-3 * p as i64)
}

/// `h(-p)`.
pub fn class_number_minus_p(p: u64) -> Result<u64> {
    class_number_imag(disc_imag(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn imaginary_examples() {
        assert_eq!(class_number_imag(-79).unwrap(), 5);
        assert_eq!(class_number_imag(-4).unwrap(), 1);
        assert_eq!(class_number_imag(-52).unwrap(), 2);
        assert_eq!(
            reduced_forms_definite(-52),
            vec![BinaryForm::new(1, 0, 13), BinaryForm::new(2, 2, 7)]
        );
    }

    #[test]
    fn imaginary_rejects_non_fundamental() {
        assert!(class_number_imag(-12).is_err());
        assert!(class_number_imag(-16).is_err());
        assert!(class_number_imag(5).is_err());
        assert!(class_number_imag(-7 * 4).is_err());
    }

    #[test]
    fn known_imaginary_class_numbers() {
        // Heegner discriminants and a few classical values
        for d in [-3, -4, -7, -8, -11, -19, -43, -67, -163] {
            assert_eq!(class_number_imag(d).unwrap(), 1, "D={d}");
        }
        assert_eq!(class_number_imag(-23).unwrap(), 3);
        assert_eq!(class_number_imag(-47).unwrap(), 5);
        assert_eq!(class_number_imag(-71).unwrap(), 7);
        assert_eq!(class_number_imag(-20).unwrap(), 2);
    }

    #[test]
    fn real_examples() {
        assert_eq!(class_number_real(79).unwrap(), 3);
        assert_eq!(class_number_real(5).unwrap(), 1);
        assert_eq!(class_number_real(13).unwrap(), 1);
        assert!(class_number_real(15).is_err());
    }

    #[test]
    fn known_real_class_numbers() {
        // h(p) = 1 for small primes except 79 below 100
        for p in [3u64, 7, 11, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 83, 89, 97] {
            assert_eq!(class_number_real(p).unwrap(), 1, "p={p}");
        }
        assert_eq!(class_number_real(229).unwrap(), 3);
        assert_eq!(class_number_real_field(10).unwrap(), 2);
        assert_eq!(class_number_real_field(15).unwrap(), 2);
        assert_eq!(class_number_real_field(6).unwrap(), 1);
    }

    #[test]
    fn discriminants() {
        assert_eq!(disc_imag(79).unwrap(), -79);
        assert_eq!(disc_imag(13).unwrap(), -52);
        assert_eq!(disc_real(13).unwrap(), 13);
        assert_eq!(disc_real(7).unwrap(), 28);
        assert_eq!(disc_minus_3p(13).unwrap(), -39);
        assert!(disc_minus_3p(7).is_err());
    }

    #[test]
    fn cycles_close() {
        for f in reduced_forms_indefinite(316) {
            assert_eq!(f.discriminant(), 316);
            assert!(f.is_reduced_indefinite());
        }
        // 79: narrow class number 6 (norm of the unit is +1)
        assert_eq!(narrow_class_number(316).unwrap(), 6);
    }
}
