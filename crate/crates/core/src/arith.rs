//! Integer-level primitives: primality, Jacobi symbols, residue tables and
//! the character sums that class-number formulas are built from.
//!
//! Primes are `u64` throughout. Every intermediate product is formed in
//! `u128` or in [`rug::Integer`], so nothing here can overflow.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;

use rug::{Integer, Rational};

use crate::error::{invalid, Result};

/// A value of the Jacobi symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolValue {
    MinusOne,
    Zero,
    One,
}

impl SymbolValue {
    pub fn value(self) -> i64 {
        match self {
            SymbolValue::MinusOne => -1,
            SymbolValue::Zero => 0,
            SymbolValue::One => 1,
        }
    }

    pub fn from_sign(s: i64) -> SymbolValue {
        match s.signum() {
            -1 => SymbolValue::MinusOne,
            0 => SymbolValue::Zero,
            _ => SymbolValue::One,
        }
    }
}

impl Mul for SymbolValue {
    type Output = SymbolValue;
    fn mul(self, rhs: SymbolValue) -> SymbolValue {
        SymbolValue::from_sign(self.value() * rhs.value())
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Interval convention for counts such as `|{1 <= k < p/4 : (k/p) = 1}|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// `1 <= k < p * frac`
    Strict,
    /// `1 <= k <= floor(p * frac)`
    Closed,
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in the closed range `[lo, hi]`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&n| is_prime(n)).collect()
}

pub(crate) fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return invalid(format!("{p} is not an odd prime"));
    }
    Ok(())
}

/// Jacobi symbol `(a/n)` for arbitrary-size `a` and odd positive `n`.
///
/// `(a/1) = 1` for every `a`.
pub fn jacobi(a: &Integer, n: &Integer) -> Result<SymbolValue> {
    if *n <= 0 || n.is_even() {
        return invalid(format!("Jacobi symbol needs an odd positive modulus, got {n}"));
    }
    let mut a = Integer::from(a.modulo_ref(n));
    let mut n = n.clone();
    let mut t = 1i64;
    while a != 0 {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_u(8);
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_u(4) == 3 && n.mod_u(4) == 3 {
            t = -t;
        }
        a = Integer::from(a.modulo_ref(&n));
    }
    Ok(if n == 1 {
        SymbolValue::from_sign(t)
    } else {
        SymbolValue::Zero
    })
}

/// Jacobi symbol for machine-size arguments.
pub fn jacobi_i64(a: i64, n: u64) -> Result<SymbolValue> {
    if n == 0 || n % 2 == 0 {
        return invalid(format!("Jacobi symbol needs an odd positive modulus, got {n}"));
    }
    Ok(SymbolValue::from_sign(jacobi_unchecked(a, n)))
}

/// Jacobi symbol as `-1/0/1`; `n` must be odd and positive.
pub(crate) fn jacobi_unchecked(a: i64, n: u64) -> i64 {
    debug_assert!(n % 2 == 1);
    let mut a = (a as i128).rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut t = 1i64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// `((p-1)/2)! mod p`.
pub fn half_factorial_mod(p: u64) -> Result<u64> {
    require_odd_prime(p)?;
    let mut acc = 1u64;
    for k in 2..=(p - 1) / 2 {
        acc = mul_mod(acc, k, p);
    }
    Ok(acc % p)
}

/// The quadratic residues of an odd prime, with O(1) symbol lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueTable {
    p: u64,
    qr_set: BTreeSet<u64>,
    // symbols[k] = (k/p) for 0 <= k < p
    symbols: Vec<i8>,
}

impl ResidueTable {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn qr_set(&self) -> &BTreeSet<u64> {
        &self.qr_set
    }

    /// Legendre symbol `(k/p)` for any integer `k`.
    pub fn symbol(&self, k: i64) -> i64 {
        let r = k.rem_euclid(self.p as i64) as usize;
        self.symbols[r] as i64
    }

    pub fn is_residue(&self, k: i64) -> bool {
        self.symbol(k) == 1
    }
}

/// Builds the residue table `{k^2 mod p : 1 <= k <= (p-1)/2}`.
pub fn residue_table(p: u64) -> Result<ResidueTable> {
    require_odd_prime(p)?;
    let mut symbols = vec![-1i8; p as usize];
    symbols[0] = 0;
    let mut qr_set = BTreeSet::new();
    for k in 1..=(p - 1) / 2 {
        let r = mul_mod(k, k, p);
        symbols[r as usize] = 1;
        qr_set.insert(r);
    }
    Ok(ResidueTable { p, qr_set, symbols })
}

fn interval_limit(p: u64, frac: &Rational, bound: Bound) -> u64 {
    // largest k admitted by the bound
    let scaled = Integer::from(frac.numer() * p);
    let den = frac.denom();
    let (q, r) = scaled.div_rem_euc(den.clone());
    let q = q.to_u64().unwrap_or(u64::MAX);
    match bound {
        Bound::Closed => q,
        Bound::Strict if r == 0 => q.saturating_sub(1),
        Bound::Strict => q,
    }
}

/// `|{1 <= k < p*frac : (k/p) = sign}|`, or the closed variant
/// `k <= floor(p*frac)` when `bound` is [`Bound::Closed`].
pub fn qr_count_interval(p: u64, frac: &Rational, sign: SymbolValue, bound: Bound) -> Result<u64> {
    let table = residue_table(p)?;
    count_in_interval(&table, frac, sign, bound)
}

/// Same as [`qr_count_interval`] against a prebuilt table.
pub fn count_in_interval(
    table: &ResidueTable,
    frac: &Rational,
    sign: SymbolValue,
    bound: Bound,
) -> Result<u64> {
    if *frac <= 0 || *frac > 1 {
        return invalid(format!("interval fraction must lie in (0,1], got {frac}"));
    }
    let limit = interval_limit(table.p, frac, bound).min(table.p - 1);
    let s = sign.value();
    Ok((1..=limit).filter(|&k| table.symbol(k as i64) == s).count() as u64)
}

/// `sum_{k=1}^{(p-1)/2} (-1)^k (k/p)` for any odd prime.
pub fn alternating_symbol_sum(table: &ResidueTable) -> i64 {
    (1..=(table.p - 1) / 2)
        .map(|k| {
            let s = table.symbol(k as i64);
            if k % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .sum()
}

/// The alternating character sum `sum_{k=1}^{(p-1)/2} (-1)^k (k/p)` for
/// `p = 1 (mod 4)`, equal to `(2/p) h(-p)`.
pub fn char_sum_alternating(p: u64) -> Result<i64> {
    require_odd_prime(p)?;
    if p % 4 != 1 {
        return invalid(format!("alternating character sum needs p = 1 (mod 4), got {p}"));
    }
    Ok(alternating_symbol_sum(&residue_table(p)?))
}

/// `sum_{0 < k < p*frac} (k/p)`.
pub fn char_sum_interval(p: u64, frac: &Rational) -> Result<i64> {
    let table = residue_table(p)?;
    symbol_sum_below(&table, frac)
}

pub fn symbol_sum_below(table: &ResidueTable, frac: &Rational) -> Result<i64> {
    if *frac <= 0 || *frac >= 1 {
        return invalid(format!("interval fraction must lie in (0,1), got {frac}"));
    }
    let limit = interval_limit(table.p, frac, Bound::Strict);
    Ok((1..=limit).map(|k| table.symbol(k as i64)).sum())
}

/// Exact `b^e mod p` for a possibly negative base.
pub(crate) fn signed_pow_mod(base: i64, exp: u64, p: u64) -> u64 {
    let b = base.rem_euclid(p as i64) as u64;
    pow_mod(b, exp, p)
}

#[cfg(test)]
mod tests {
    use rug::ops::Pow;
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn jacobi_examples() {
        let j = |a: i64, n: i64| jacobi(&Integer::from(a), &Integer::from(n)).unwrap().value();
        assert_eq!(j(2, 15), 1);
        assert_eq!(j(6, 15), 0);
        assert_eq!(j(3, 5), -1);
        assert_eq!(j(-1, 7), -1);
        assert_eq!(j(12345, 1), 1);
    }

    #[test]
    fn jacobi_rejects_even_or_nonpositive() {
        assert!(jacobi(&Integer::from(3), &Integer::from(10)).is_err());
        assert!(jacobi(&Integer::from(3), &Integer::from(0)).is_err());
        assert!(jacobi(&Integer::from(3), &Integer::from(-7)).is_err());
        assert!(jacobi_i64(3, 4).is_err());
    }

    #[test]
    fn jacobi_closed_forms() {
        for n in (1..200u64).step_by(2) {
            let minus_one = if (n - 1) / 2 % 2 == 0 { 1 } else { -1 };
            let two = if (n * n - 1) / 8 % 2 == 0 { 1 } else { -1 };
            assert_eq!(jacobi_unchecked(-1, n), minus_one, "n={n}");
            assert_eq!(jacobi_unchecked(2, n), two, "n={n}");
        }
    }

    #[test]
    fn jacobi_matches_big_integer_route() {
        let big = Integer::from(10).pow(40) + 7;
        for n in (1..60u64).step_by(2) {
            let a = jacobi(&big, &Integer::from(n)).unwrap().value();
            let small = Integer::from(big.mod_u(n as u32));
            assert_eq!(a, jacobi_unchecked(small.to_i64().unwrap(), n));
            assert_eq!(a, big.jacobi(&Integer::from(n)) as i64);
        }
    }

    #[test]
    fn half_factorial_examples() {
        assert_eq!(half_factorial_mod(13).unwrap(), 5);
        assert_eq!(half_factorial_mod(5).unwrap(), 2);
        assert_eq!(half_factorial_mod(3).unwrap(), 1);
        assert!(half_factorial_mod(15).is_err());
        assert!(half_factorial_mod(2).is_err());
    }

    #[test]
    fn residue_table_examples() {
        let set = |p| residue_table(p).unwrap().qr_set().iter().copied().collect::<Vec<_>>();
        assert_eq!(set(5), vec![1, 4]);
        assert_eq!(set(3), vec![1]);
        assert_eq!(set(13), vec![1, 3, 4, 9, 10, 12]);
        assert!(residue_table(9).is_err());
    }

    #[test]
    fn qr_count_examples() {
        use SymbolValue::*;
        assert_eq!(qr_count_interval(13, &r(1, 4), One, Bound::Strict).unwrap(), 2);
        assert_eq!(qr_count_interval(13, &r(1, 4), MinusOne, Bound::Strict).unwrap(), 1);
        assert_eq!(qr_count_interval(5, &r(1, 4), One, Bound::Strict).unwrap(), 1);
        // closed bound: k <= floor(14/3) = 4 for p = 13
        assert_eq!(qr_count_interval(13, &r(14, 39), MinusOne, Bound::Closed).unwrap(), 1);
        assert!(qr_count_interval(13, &r(0, 1), One, Bound::Strict).is_err());
        assert!(qr_count_interval(13, &r(5, 4), One, Bound::Strict).is_err());
    }

    #[test]
    fn strict_bound_excludes_exact_endpoint() {
        // p = 13, frac = 4/13: strict gives k < 4, closed gives k <= 4
        use SymbolValue::*;
        assert_eq!(qr_count_interval(13, &r(4, 13), One, Bound::Strict).unwrap(), 2);
        assert_eq!(qr_count_interval(13, &r(4, 13), One, Bound::Closed).unwrap(), 3);
    }

    #[test]
    fn char_sum_examples() {
        assert_eq!(char_sum_alternating(13).unwrap(), -2);
        assert_eq!(char_sum_alternating(5).unwrap(), -2);
        assert_eq!(char_sum_alternating(17).unwrap(), 4);
        assert!(char_sum_alternating(7).is_err());
        assert_eq!(char_sum_interval(13, &r(1, 4)).unwrap(), 1);
        assert_eq!(char_sum_interval(5, &r(1, 3)).unwrap(), 1);
        assert_eq!(char_sum_interval(7, &r(1, 2)).unwrap(), 1);
        assert!(char_sum_interval(7, &r(1, 1)).is_err());
    }

    #[test]
    fn primality_agrees_with_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "n={n}");
        }
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751));
    }
}
