//! Gauss sums and the residue polynomials `S_p` and `S_p^-`.

use rug::{Complex, Integer};

use crate::arith::{require_odd_prime, residue_table};
use crate::error::{invalid, Result};
use crate::numerics::trig::{check_bits, root_of_unity, BigComplex};

fn coprime(p: u64, a: i64) -> Result<()> {
    if a.rem_euclid(p as i64) == 0 {
        return invalid(format!("{p} divides a = {a}"));
    }
    Ok(())
}

/// `sum_{x=0}^{p-1} e^{2 pi i a x^2 / p}` by direct summation.
pub fn gauss_sum(p: u64, a: i64, bits: u32) -> Result<BigComplex> {
    require_odd_prime(p)?;
    coprime(p, a)?;
    check_bits(bits)?;
    let work = bits + 32;
    let mut acc = Complex::with_val(work, (1, 0));
    for x in 1..p {
        let e = Integer::from(a) * x * x;
        let r = e.mod_u(p as u32) as i64;
        acc += root_of_unity(r, p, work)?;
    }
    Ok(Complex::with_val(bits, acc))
}

/// `prod (x - e^{2 pi i a e / p})` over the given exponents.
fn product_over(p: u64, a: i64, exps: impl Iterator<Item = u64>, x: &BigComplex, bits: u32) -> Result<BigComplex> {
    check_bits(bits)?;
    let work = bits + 32;
    let xw = Complex::with_val(work, x);
    let mut acc = Complex::with_val(work, (1, 0));
    let am = a.rem_euclid(p as i64) as u64;
    for e in exps {
        let r = ((am as u128 * e as u128) % p as u128) as i64;
        let z = root_of_unity(r, p, work)?;
        acc *= Complex::with_val(work, &xw - z);
    }
    Ok(Complex::with_val(bits, acc))
}

/// `S_p` twisted by `a`: `prod_{k=1}^{(p-1)/2} (x - e^{2 pi i a k^2 / p})`.
pub fn s_poly_eval(p: u64, a: i64, x: &BigComplex, bits: u32) -> Result<BigComplex> {
    require_odd_prime(p)?;
    coprime(p, a)?;
    let half = (p - 1) / 2;
    product_over(p, a, (1..=half).map(|k| (k * k) % p), x, bits)
}

/// The complementary product over non-residues `n`: `prod (x - e^{2 pi i a n / p})`.
pub fn s_poly_minus_eval(p: u64, a: i64, x: &BigComplex, bits: u32) -> Result<BigComplex> {
    coprime(p, a)?;
    let table = residue_table(p)?;
    let nonres: Vec<u64> = (1..p).filter(|&k| table.symbol(k as i64) == -1).collect();
    product_over(p, a, nonres.into_iter(), x, bits)
}

/// `S_p(e^{2 pi i j / m})`.
pub fn s_poly_at_root(p: u64, j: i64, m: u64, bits: u32) -> Result<BigComplex> {
    let x = root_of_unity(j, m, bits + 32)?;
    s_poly_eval(p, 1, &x, bits)
}
