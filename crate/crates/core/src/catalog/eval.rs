//! Left- and right-hand side evaluators for every catalog entry.

use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

use crate::arith::{
    alternating_symbol_sum, count_in_interval, signed_pow_mod, half_factorial_mod, jacobi_unchecked,
    residue_table, symbol_sum_below, Bound, ResidueTable, SymbolValue,
};
use crate::catalog::params::{CRational, CheckParams};
use crate::error::{Error, Result};
use crate::numerics::{root_of_unity, s_poly_eval, trig_pi, trig_pi_complex, PiRational, TrigKind};
use crate::quadratic::{
    class_number_imag, class_number_minus_p, disc_minus_3p, fundamental_unit, st_from_unit,
    UnitData,
};

/// One side of an identity.
#[derive(Debug, Clone, PartialEq)]
pub enum Side {
    /// A numerically evaluated value.
    Numeric(Complex),
    /// An exact rational value.
    Exact(Rational),
    /// A residue class `value mod modulus`.
    Residue { value: u64, modulus: u64 },
}

impl Side {
    pub fn to_complex(&self, bits: u32) -> Option<Complex> {
        match self {
            Side::Numeric(z) => Some(Complex::with_val(bits, z)),
            Side::Exact(q) => Some(Complex::with_val(bits, (q, 0))),
            Side::Residue { .. } => None,
        }
    }
}

/// Raw output of an evaluator.
#[derive(Debug, Clone)]
pub(crate) struct Eval {
    pub lhs: Side,
    pub rhs: Side,
    /// Further expressions that must agree with `rhs`.
    pub extra: Vec<(String, Side)>,
    /// Exact side conditions, all of which must hold.
    pub conditions: Vec<(String, bool)>,
    pub notes: Vec<String>,
}

impl Eval {
    fn new(lhs: Side, rhs: Side) -> Eval {
        Eval {
            lhs,
            rhs,
            extra: Vec::new(),
            conditions: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn numeric(lhs: Complex, rhs: Complex) -> Eval {
        Eval::new(Side::Numeric(lhs), Side::Numeric(rhs))
    }
}

pub(crate) type EvalFn = fn(&CheckParams, u32) -> Result<Eval>;

// ---------------------------------------------------------------- helpers

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn eps_n(n: u64) -> i64 {
    jacobi_unchecked(-1, n)
}

fn c_int(w: u32, v: i64) -> Complex {
    Complex::with_val(w, (v, 0))
}

fn c_real(w: u32, v: Float) -> Complex {
    Complex::with_val(w, (v, 0))
}

fn c_i(w: u32) -> Complex {
    Complex::with_val(w, (0, 1))
}

fn sqrt_u(w: u32, v: u64) -> Float {
    Float::with_val(w, v).sqrt()
}

fn pow2(w: u32, e: i64) -> Float {
    Float::with_val(w, Float::i_exp(1, e as i32))
}

fn omega(w: u32) -> Result<Complex> {
    root_of_unity(1, 3, w)
}

/// `trig(m * pi * (x + r) / n)`
fn trig_shift(x: &CRational, r: i64, n: u64, m: i64, kind: TrigKind, w: u32) -> Result<Complex> {
    let nn = n as i64;
    let re = (Rational::from(&x.re + r) * m) / nn;
    let im = Rational::from(&x.im * m) / nn;
    trig_pi_complex(&re, &im, kind, w)
}

/// `trig(pi * num / den)` as a complex value.
fn trig_frac(num: i64, den: i64, kind: TrigKind, w: u32) -> Result<Complex> {
    let v = trig_pi(&PiRational::from_ratio(num, den)?, kind, w)?;
    Ok(c_real(w, v))
}

fn x_of(p: &CheckParams) -> Result<&CRational> {
    p.x.as_ref().ok_or_else(|| Error::InvalidArgument("missing x".into()))
}

fn y_of(p: &CheckParams) -> Result<&CRational> {
    p.y.as_ref().ok_or_else(|| Error::InvalidArgument("missing y".into()))
}

fn n_of(p: &CheckParams) -> Result<u64> {
    p.n.ok_or_else(|| Error::InvalidArgument("missing n".into()))
}

fn p_of(p: &CheckParams) -> Result<u64> {
    p.p.ok_or_else(|| Error::InvalidArgument("missing p".into()))
}

fn a_of(p: &CheckParams) -> i64 {
    p.a.unwrap_or(1)
}

fn sum(terms: impl Iterator<Item = Result<Complex>>, w: u32) -> Result<Complex> {
    let mut acc = c_int(w, 0);
    for t in terms {
        acc += t?;
    }
    Ok(acc)
}

fn product(terms: impl Iterator<Item = Result<Complex>>, w: u32) -> Result<Complex> {
    let mut acc = c_int(w, 1);
    for t in terms {
        acc *= t?;
    }
    Ok(acc)
}

fn recip(z: Complex) -> Result<Complex> {
    if z.real().is_zero() && z.imag().is_zero() {
        return Err(Error::Pole("division by an exact zero".into()));
    }
    Ok(z.recip())
}

/// `eps_p^k` as a complex number.
fn unit_pow(u: &UnitData, k: i64, w: u32) -> Result<Complex> {
    let v = u.unit.pow_signed(k)?.to_float(w)?;
    Ok(c_real(w, v))
}

/// `|{1 <= k < p*num/den : (k/p) = s}|` (or `<=` with [`Bound::Closed`]).
fn count(t: &ResidueTable, num: i64, den: i64, s: i64, bound: Bound) -> Result<i64> {
    let frac = Rational::from((num, den));
    Ok(count_in_interval(t, &frac, SymbolValue::from_sign(s), bound)? as i64)
}

/// `S_p` twisted by `a` at `x`.
fn sp(p: u64, a: i64, x: &Complex, w: u32) -> Result<Complex> {
    s_poly_eval(p, a, x, w)
}

// ---------------------------------------------------------- single sums

pub(crate) fn csc2(pr: &CheckParams, w: u32) -> Result<Eval> {
    let (n, x) = (n_of(pr)?, x_of(pr)?);
    let terms = (0..n as i64).map(|r| {
        let c = trig_shift(x, r, n, 1, TrigKind::Csc, w)?;
        Ok(Complex::with_val(w, c.square_ref()))
    });
    let lhs = sum(terms, w)? / (n * n);
    let c = trig_shift(x, 0, 1, 1, TrigKind::Csc, w)?;
    Ok(Eval::numeric(lhs, c.square()))
}

pub(crate) fn sin_product(pr: &CheckParams, w: u32) -> Result<Eval> {
    let (n, x) = (n_of(pr)?, x_of(pr)?);
    let terms = (0..n as i64).map(|r| Ok(trig_shift(x, r, n, 1, TrigKind::Sin, w)? * 2u32));
    let lhs = product(terms, w)?;
    let rhs = trig_shift(x, 0, 1, 1, TrigKind::Sin, w)? * 2u32;
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn cot_sum(pr: &CheckParams, w: u32) -> Result<Eval> {
    let (n, x) = (n_of(pr)?, x_of(pr)?);
    let terms = (0..n as i64).map(|r| trig_shift(x, r, n, 1, TrigKind::Cot, w));
    let lhs = sum(terms, w)? / n;
    Ok(Eval::numeric(lhs, trig_shift(x, 0, 1, 1, TrigKind::Cot, w)?))
}

fn cot_power_sum(n: u64, power: u32, w: u32) -> Result<Complex> {
    let terms = (1..n as i64).map(|r| {
        let c = trig_frac(r, n as i64, TrigKind::Cot, w)?;
        Ok(c.pow(power))
    });
    sum(terms, w)
}

pub(crate) fn cot2_sum(pr: &CheckParams, w: u32) -> Result<Eval> {
    let n = n_of(pr)? as i64;
    let lhs = cot_power_sum(n as u64, 2, w)?;
    let rhs = Rational::from(((n - 1) * (n - 2), 3));
    Ok(Eval::new(Side::Numeric(lhs), Side::Exact(rhs)))
}

pub(crate) fn cot4_sum(pr: &CheckParams, w: u32) -> Result<Eval> {
    let n = n_of(pr)? as i64;
    let lhs = cot_power_sum(n as u64, 4, w)?;
    let rhs = Rational::from(((n - 1) * (n - 2) * (n * n + 3 * n - 13), 45));
    Ok(Eval::new(Side::Numeric(lhs), Side::Exact(rhs)))
}

pub(crate) fn secant(pr: &CheckParams, w: u32) -> Result<Eval> {
    let n = n_of(pr)? as i64;
    let terms = (0..n).map(|r| Ok(trig_frac(r, n, TrigKind::Sec, w)?.square()));
    let lhs = sum(terms, w)?;
    Ok(Eval::new(Side::Numeric(lhs), Side::Exact(Rational::from(n * n))))
}

/// `1 / (1 + sin t + s * cos t)`
fn sincos_term(sin: Complex, cos: Complex, s: i64) -> Result<Complex> {
    let w = sin.prec().0;
    let d = Complex::with_val(w, 1) + sin + cos * s;
    recip(d)
}

fn sincos_generic(pr: &CheckParams, w: u32, s: i64) -> Result<Eval> {
    let (n, x) = (n_of(pr)?, x_of(pr)?);
    let e = eps_n(n);
    let terms = (0..n as i64).map(|r| {
        sincos_term(
            trig_shift(x, r, n, 2, TrigKind::Sin, w)?,
            trig_shift(x, r, n, 2, TrigKind::Cos, w)?,
            s,
        )
    });
    let lhs = sum(terms, w)?;
    let sx = trig_shift(x, 0, 1, 2, TrigKind::Sin, w)?;
    let cx = trig_shift(x, 0, 1, 2, TrigKind::Cos, w)?;
    let den = Complex::with_val(w, 1) + sx * e + cx * s;
    let rhs = recip(den)? * (e * n as i64);
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn sincos(pr: &CheckParams, w: u32) -> Result<Eval> {
    sincos_generic(pr, w, 1)
}

pub(crate) fn minus_sincos(pr: &CheckParams, w: u32) -> Result<Eval> {
    sincos_generic(pr, w, -1)
}

pub(crate) fn csc(pr: &CheckParams, w: u32) -> Result<Eval> {
    let (n, x) = (n_of(pr)?, x_of(pr)?);
    let terms = (0..n as i64).map(|r| trig_shift(x, r, n, 2, TrigKind::Csc, w));
    let lhs = sum(terms, w)? / n;
    Ok(Eval::numeric(lhs, trig_shift(x, 0, 1, 2, TrigKind::Csc, w)?))
}

pub(crate) fn sec(pr: &CheckParams, w: u32) -> Result<Eval> {
    let (n, x) = (n_of(pr)?, x_of(pr)?);
    let terms = (0..n as i64).map(|r| trig_shift(x, r, n, 2, TrigKind::Sec, w));
    let lhs = sum(terms, w)? / n;
    let rhs = trig_shift(x, 0, 1, 2, TrigKind::Sec, w)? * eps_n(n);
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn sincos0(pr: &CheckParams, w: u32) -> Result<Eval> {
    let n = n_of(pr)? as i64;
    let terms = (0..n).map(|r| {
        sincos_term(
            trig_frac(2 * r, n, TrigKind::Sin, w)?,
            trig_frac(2 * r, n, TrigKind::Cos, w)?,
            1,
        )
    });
    let lhs = sum(terms, w)?;
    let rhs = Rational::from((eps_n(n as u64) * n, 2));
    Ok(Eval::new(Side::Numeric(lhs), Side::Exact(rhs)))
}

pub(crate) fn minus_sincos0(pr: &CheckParams, w: u32) -> Result<Eval> {
    let n = n_of(pr)? as i64;
    let terms = (0..n).map(|r| {
        sincos_term(
            trig_frac(2 * r + 1, n, TrigKind::Sin, w)?,
            trig_frac(2 * r + 1, n, TrigKind::Cos, w)?,
            -1,
        )
    });
    let lhs = sum(terms, w)?;
    let rhs = Rational::from((eps_n(n as u64) * n, 2));
    Ok(Eval::new(Side::Numeric(lhs), Side::Exact(rhs)))
}

pub(crate) fn sec0a(pr: &CheckParams, w: u32) -> Result<Eval> {
    let n = n_of(pr)? as i64;
    let lhs = sum((0..n).map(|r| trig_frac(2 * r, n, TrigKind::Sec, w)), w)?;
    let rhs = Rational::from(eps_n(n as u64) * n);
    Ok(Eval::new(Side::Numeric(lhs), Side::Exact(rhs)))
}

pub(crate) fn sec0b(pr: &CheckParams, w: u32) -> Result<Eval> {
    let n = n_of(pr)? as i64;
    let lhs = sum((0..n).map(|r| trig_frac(2 * r + 1, n, TrigKind::Sec, w)), w)?;
    let rhs = Rational::from(-eps_n(n as u64) * n);
    Ok(Eval::new(Side::Numeric(lhs), Side::Exact(rhs)))
}

// ---------------------------------------------------------- double sums

/// `sum_{j,k} 1 / (u_j + v_k)`
fn double_sum(us: &[Complex], vs: &[Complex], w: u32) -> Result<Complex> {
    let mut acc = c_int(w, 0);
    for u in us {
        for v in vs {
            let d = Complex::with_val(w, u + v);
            if d.real().is_zero() && d.imag().is_zero() {
                return Err(Error::Pole("double sum denominator vanished".into()));
            }
            acc += d.recip();
        }
    }
    Ok(acc)
}

fn shifted_values(x: &CRational, n: u64, kind: TrigKind, w: u32) -> Result<Vec<Complex>> {
    (0..n as i64).map(|j| trig_shift(x, j, n, 2, kind, w)).collect()
}

fn frac_values(n: u64, odd: bool, kind: TrigKind, w: u32) -> Result<Vec<Complex>> {
    let n = n as i64;
    (0..n)
        .map(|j| {
            let num = if odd { 2 * j + 1 } else { 2 * j };
            trig_frac(num, n, kind, w)
        })
        .collect()
}

pub(crate) fn sin2d(pr: &CheckParams, w: u32) -> Result<Eval> {
    let (n, x, y) = (n_of(pr)?, x_of(pr)?, y_of(pr)?);
    let lhs = double_sum(
        &shifted_values(x, n, TrigKind::Sin, w)?,
        &shifted_values(y, n, TrigKind::Sin, w)?,
        w,
    )?;
    let den = trig_shift(x, 0, 1, 2, TrigKind::Sin, w)? + trig_shift(y, 0, 1, 2, TrigKind::Sin, w)?;
    let rhs = recip(den)? * (eps_n(n) * (n * n) as i64);
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn cos2d(pr: &CheckParams, w: u32) -> Result<Eval> {
    let (n, x, y) = (n_of(pr)?, x_of(pr)?, y_of(pr)?);
    let lhs = double_sum(
        &shifted_values(x, n, TrigKind::Cos, w)?,
        &shifted_values(y, n, TrigKind::Cos, w)?,
        w,
    )?;
    let den = trig_shift(x, 0, 1, 2, TrigKind::Cos, w)? + trig_shift(y, 0, 1, 2, TrigKind::Cos, w)?;
    let rhs = recip(den)? * (n * n);
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn mix2d(pr: &CheckParams, w: u32) -> Result<Eval> {
    let (n, x, y) = (n_of(pr)?, x_of(pr)?, y_of(pr)?);
    let lhs = double_sum(
        &shifted_values(x, n, TrigKind::Sin, w)?,
        &shifted_values(y, n, TrigKind::Cos, w)?,
        w,
    )?;
    let den = trig_shift(x, 0, 1, 2, TrigKind::Sin, w)? * eps_n(n)
        + trig_shift(y, 0, 1, 2, TrigKind::Cos, w)?;
    let rhs = recip(den)? * (n * n);
    Ok(Eval::numeric(lhs, rhs))
}

fn double_exact(n: u64, odd: bool, first: TrigKind, second: TrigKind, num: i64, den: i64, w: u32) -> Result<Eval> {
    let lhs = double_sum(&frac_values(n, odd, first, w)?, &frac_values(n, odd, second, w)?, w)?;
    let nn = (n * n) as i64;
    Ok(Eval::new(Side::Numeric(lhs), Side::Exact(Rational::from((num * nn, den)))))
}

pub(crate) fn mix0(pr: &CheckParams, w: u32) -> Result<Eval> {
    double_exact(n_of(pr)?, false, TrigKind::Sin, TrigKind::Cos, 1, 1, w)
}

pub(crate) fn mix1(pr: &CheckParams, w: u32) -> Result<Eval> {
    double_exact(n_of(pr)?, true, TrigKind::Sin, TrigKind::Cos, -1, 1, w)
}

pub(crate) fn cos0(pr: &CheckParams, w: u32) -> Result<Eval> {
    double_exact(n_of(pr)?, false, TrigKind::Cos, TrigKind::Cos, 1, 2, w)
}

pub(crate) fn cos1(pr: &CheckParams, w: u32) -> Result<Eval> {
    double_exact(n_of(pr)?, true, TrigKind::Cos, TrigKind::Cos, -1, 2, w)
}

pub(crate) fn cosp(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)? as i64;
    let half = (p - 1) / 2;
    let cs: Vec<Complex> = (1..=half)
        .map(|k| trig_frac(2 * k * k, p, TrigKind::Cos, w))
        .collect::<Result<_>>()?;
    let mut acc = c_int(w, 0);
    for j in 0..cs.len() {
        for k in j + 1..cs.len() {
            acc += recip(Complex::with_val(w, &cs[j] + &cs[k]))?;
        }
    }
    let rhs = -Rational::from(((p + 1) * (p - 3), 16));
    Ok(Eval::new(Side::Numeric(acc), Side::Exact(rhs)))
}

// ------------------------------------------------------------- products

fn one_plus_prod(pr: &CheckParams, w: u32, kind: TrigKind) -> Result<Eval> {
    let (n, x) = (n_of(pr)?, x_of(pr)?);
    let terms = (0..n as i64).map(|r| Ok(trig_shift(x, r, n, 1, kind, w)? + 1u32));
    let lhs = product(terms, w)?;
    let e = eps_n(n);
    let lead = pow2(w, (n as i64 - 1) / 2) * jacobi_unchecked(2, n);
    let rhs = (trig_shift(x, 0, 1, 1, kind, w)? * e + 1u32) * lead;
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn cot_prod(pr: &CheckParams, w: u32) -> Result<Eval> {
    one_plus_prod(pr, w, TrigKind::Cot)
}

pub(crate) fn tan_prod(pr: &CheckParams, w: u32) -> Result<Eval> {
    one_plus_prod(pr, w, TrigKind::Tan)
}

// -------------------------------------------------- residue-class items

/// `trig(pi a k^2 / p)` for `k = 1..=(p-1)/2`.
fn angle_values(p: i64, a: i64, kind: TrigKind, w: u32) -> Result<Vec<Complex>> {
    (1..=(p - 1) / 2)
        .map(|k| {
            let num = (a as i128 * (k * k) as i128).rem_euclid(2 * p as i128) as i64;
            trig_frac(num, p, kind, w)
        })
        .collect()
}

pub(crate) fn tancot(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let a = a_of(pr);
    let pi = p as i64;
    let table = residue_table(p)?;
    let cot_side = sum(
        angle_values(pi, a, TrigKind::Cot, w)?
            .into_iter()
            .map(|c| recip(c - 1u32)),
        w,
    )?;
    let tan_side = sum(
        angle_values(pi, a, TrigKind::Tan, w)?
            .into_iter()
            .map(|t| recip(Complex::with_val(w, 1) - t)),
        w,
    )? - Complex::with_val(w, ((pi - 1) / 2, 0));
    let alt = alternating_symbol_sum(&table);
    let first = Float::with_val(w, pi) / 4u32 * (jacobi_unchecked(-1, p) - 1);
    let second = sqrt_u(w, p) / 2u32 * (jacobi_unchecked(-2 * a, p) * alt);
    let closed = c_real(w, first + second);
    let mut ev = Eval::numeric(cot_side, closed);
    ev.extra.push(("tan-side".into(), Side::Numeric(tan_side)));
    ev.notes.push(format!("alternating symbol sum = {alt}"));
    Ok(ev)
}

pub(crate) fn h_minus_p(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let s = sum(
        angle_values(p as i64, 1, TrigKind::Cot, w)?
            .into_iter()
            .map(|c| recip(c - 1u32)),
        w,
    )?;
    let lhs = s * 2u32 / sqrt_u(w, p);
    let h = class_number_minus_p(p)?;
    Ok(Eval::new(Side::Numeric(lhs), Side::Exact(Rational::from(h))))
}

fn residue(v: i64, p: u64) -> Side {
    Side::Residue {
        value: v.rem_euclid(p as i64) as u64,
        modulus: p,
    }
}

pub(crate) fn wc(pr: &CheckParams, _w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let table = residue_table(p)?;
    let c = count(&table, 1, 4, -1, Bound::Strict)?;
    let lhs = sign(c) * signed_pow_mod(2, (p - 1) / 4, p) as i64;
    let rhs = if p % 8 == 1 { 1 } else { half_factorial_mod(p)? as i64 };
    let mut ev = Eval::new(residue(lhs, p), residue(rhs, p));
    ev.notes.push(format!("non-residues below p/4: {c}"));
    Ok(ev)
}

pub(crate) fn p14(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let a = a_of(pr);
    let u = fundamental_unit(p)?;
    let lhs = sp(p, a, &c_int(w, 1), w)?;
    let k = -jacobi_unchecked(a, p) * u.h_real as i64;
    let rhs = unit_pow(&u, k, w)? * sqrt_u(w, p);
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn cos14(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let a = a_of(pr);
    let u = fundamental_unit(p)?;
    let lhs = product(angle_values(p as i64, a, TrigKind::Cos, w)?.into_iter().map(Ok), w)?
        * pow2(w, (p as i64 - 1) / 2);
    let k = (1 - jacobi_unchecked(2, p)) * jacobi_unchecked(a, p) * u.h_real as i64;
    let rhs = unit_pow(&u, k, w)? * sign(a * (p as i64 - 1) / 4);
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn re(pr: &CheckParams, _w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let u = fundamental_unit(p)?;
    let twice = Rational::from(u.a_p() * 2u32);
    if *twice.denom() != 1 {
        return Err(Error::Integrity(format!("2 a_p is not an integer for p={p}")));
    }
    let lhs = twice.numer().mod_u(p as u32) as i64;
    let rhs = -2 * half_factorial_mod(p)? as i64;
    let mut ev = Eval::new(residue(lhs, p), residue(rhs, p));
    ev.notes.push(format!("h(p) = {}, eps_p = {}", u.h_real, u.unit));
    Ok(ev)
}

pub(crate) fn prod_4k3(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let a = a_of(pr);
    let h = class_number_minus_p(p)? as i64;
    let lhs = sp(p, a, &c_int(w, 1), w)?;
    let rhs = c_i(w) * sqrt_u(w, p) * (sign((h + 1) / 2) * jacobi_unchecked(a, p));
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn root1(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let a = a_of(pr);
    let table = residue_table(p)?;
    let lhs = sp(p, a, &c_i(w), w)?;
    let c = count(&table, 1, 4, 1, Bound::Strict)?;
    let rhs = c_int(w, sign((p as i64 - 1) / 8 + c));
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn root5(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let a = a_of(pr);
    let table = residue_table(p)?;
    let u = fundamental_unit(p)?;
    let lhs = sp(p, a, &c_i(w), w)?;
    let c = count(&table, 1, 4, 1, Bound::Strict)?;
    let al = jacobi_unchecked(a, p);
    let rhs = c_i(w) * unit_pow(&u, -al * u.h_real as i64, w)? * (sign((p as i64 - 5) / 8 + c) * al);
    Ok(Eval::numeric(lhs, rhs))
}

/// `s_p - t_p sqrt p` style values for `p = 3 (mod 4)`.
fn st_parts(p: u64) -> Result<(UnitData, Integer, Integer)> {
    let u = fundamental_unit(p)?;
    let st = st_from_unit(&u)?;
    Ok((u, st.s, st.t))
}

pub(crate) fn s_i(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let pi = p as i64;
    let h = class_number_minus_p(p)? as i64;
    let (_, s, t) = st_parts(p)?;
    let factor = c_i(w) - sign((pi + 1) / 4);
    let lhs = factor * sp(p, 1, &c_i(w), w)?;
    let val = Float::with_val(w, &s) - sqrt_u(w, p) * &t;
    let rhs = c_real(w, val) * sign(((h + 1) / 2) * ((pi + 1) / 4));
    let mut ev = Eval::numeric(lhs, rhs);
    ev.notes.push(format!("s_p = {s}, t_p = {t}"));
    Ok(ev)
}

pub(crate) fn st(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let (u, s, t) = st_parts(p)?;
    let (ap, bp) = u
        .unit_power()
        .integer_coords()
        .ok_or_else(|| Error::Integrity(format!("a_p, b_p not integral for p={p}")))?;
    let pell = Integer::from(ap.square_ref()) - Integer::from(bp.square_ref()) * p;
    let st_form = Integer::from(s.square_ref()) - Integer::from(t.square_ref()) * p;
    let two = jacobi_unchecked(2, p);
    let lhs = sp(p, 1, &c_i(w), w)? * sp(p, 1, &-c_i(w), w)?;
    let mut ev = Eval::new(Side::Numeric(lhs), Side::Exact(Rational::from(two)));
    ev.conditions.push(("a_p^2 - p b_p^2 = 1".into(), pell == 1));
    ev.conditions.push(("(s_p^2 - p t_p^2)/2 = (2/p)".into(), st_form == 2 * two));
    ev.notes.push(format!("s_p = {s}, t_p = {t}"));
    Ok(ev)
}

fn one_plus_residue_prod(p: u64, a: i64, kind: TrigKind, w: u32) -> Result<Complex> {
    let vals = angle_values(p as i64, a, kind, w)?;
    product(vals.into_iter().map(|v| Ok(v + 1u32)), w)
}

pub(crate) fn tan1(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let a = a_of(pr);
    let table = residue_table(p)?;
    let lhs = one_plus_residue_prod(p, a, TrigKind::Tan, w)?;
    let c = count(&table, 1, 4, 1, Bound::Strict)?;
    let rhs = c_real(w, pow2(w, (p as i64 - 1) / 4) * sign(c));
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn cot1(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let a = a_of(pr);
    let table = residue_table(p)?;
    let u = fundamental_unit(p)?;
    let lhs = one_plus_residue_prod(p, a, TrigKind::Cot, w)?;
    let c = count(&table, 1, 4, 1, Bound::Strict)?;
    let k = jacobi_unchecked(a, p) * u.h_real as i64;
    let rhs = unit_pow(&u, k, w)? * pow2(w, (p as i64 - 1) / 4) / sqrt_u(w, p) * sign(c);
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn tan5(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let a = a_of(pr);
    let table = residue_table(p)?;
    let u = fundamental_unit(p)?;
    let lhs = one_plus_residue_prod(p, a, TrigKind::Tan, w)?;
    let c = count(&table, 1, 4, -1, Bound::Strict)?;
    let al = jacobi_unchecked(a, p);
    let rhs = unit_pow(&u, -3 * al * u.h_real as i64, w)? * pow2(w, (p as i64 - 1) / 4) * (sign(c) * al);
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn cot5(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let a = a_of(pr);
    let table = residue_table(p)?;
    let lhs = one_plus_residue_prod(p, a, TrigKind::Cot, w)?;
    let c = count(&table, 1, 4, 1, Bound::Strict)?;
    let al = jacobi_unchecked(a, p);
    let rhs = c_real(w, pow2(w, (p as i64 - 1) / 4) / sqrt_u(w, p) * (sign(c) * al));
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn tan43(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let a = a_of(pr);
    let pi = p as i64;
    let h = class_number_minus_p(p)? as i64;
    let (_, s, t) = st_parts(p)?;
    let lhs = one_plus_residue_prod(p, a, TrigKind::Tan, w)?;
    let delta = i64::from(p == 3);
    let e = delta + (pi + 1) / 8 + ((h + 1) / 2) * ((pi + 1) / 4);
    let al = jacobi_unchecked(a, p);
    let inner = Float::with_val(w, &s) + sqrt_u(w, p) * &t * al;
    let rhs = c_real(w, inner * pow2(w, (pi - 3) / 4) * sign(e));
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn cot43(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let a = a_of(pr);
    let pi = p as i64;
    let h = class_number_minus_p(p)? as i64;
    let (_, s, t) = st_parts(p)?;
    let lhs = one_plus_residue_prod(p, a, TrigKind::Cot, w)?;
    let e = (pi - 3) / 8 + ((h - 1) / 2) * ((pi - 3) / 4);
    let al = jacobi_unchecked(a, p);
    let inner = Float::with_val(w, &t) + Float::with_val(w, &s) / sqrt_u(w, p) * al;
    let rhs = c_real(w, inner * pow2(w, (pi - 3) / 4) * sign(e));
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn lerch(pr: &CheckParams, _w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let table = residue_table(p)?;
    let c = count(&table, 1, 3, -1, Bound::Strict)?;
    let lhs = sign(c) * signed_pow_mod(-3, (p - 1) / 4, p) as i64;
    let rhs = if p % 12 == 1 { 1 } else { half_factorial_mod(p)? as i64 };
    let mut ev = Eval::new(residue(lhs, p), residue(rhs, p));
    let h = class_number_imag(disc_minus_3p(p)?)? as i64;
    let s = symbol_sum_below(&table, &Rational::from((1, 3)))?;
    ev.conditions.push(("h(-3p) = 2 sum_{k<p/3} (k/p)".into(), h == 2 * s));
    ev.notes.push(format!("h(-3p) = {h}, non-residues below p/3: {c}"));
    Ok(ev)
}

pub(crate) fn relation(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let om = omega(w)?;
    let s = sp(p, 1, &om, w)?;
    let lhs = sp(p, 1, &Complex::with_val(w, -&om), w)?;
    let sbar = Complex::with_val(w, s.conj_ref());
    let rhs = if matches!(p % 8, 1 | 3) {
        sbar / &s * jacobi_unchecked(-1, p)
    } else {
        let p3 = jacobi_unchecked(p as i64, 3);
        // omega^((p/3) - 1) is 1 or omega^-2 = omega
        let wpow = if p3 == 1 { c_int(w, 1) } else { om.clone() };
        wpow * jacobi_unchecked(3, p) / (s * sbar)
    };
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn omega_id(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let table = residue_table(p)?;
    let om = omega(w)?;
    let c = count(&table, p as i64 + 1, 3 * p as i64, -1, Bound::Closed)?;
    let lhs = sp(p, 1, &om, w)? * sign(c);
    let rhs = if p % 12 == 1 {
        c_int(w, 1)
    } else {
        let u = fundamental_unit(p)?;
        om * unit_pow(&u, u.h_real as i64, w)?
    };
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn minus_omega41(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let om = omega(w)?;
    let lhs = sp(p, 1, &Complex::with_val(w, -&om), w)?;
    let rhs = match p % 24 {
        1 | 13 => c_int(w, 1),
        5 => {
            let u = fundamental_unit(p)?;
            -om * unit_pow(&u, -2 * u.h_real as i64, w)?
        }
        _ => om,
    };
    Ok(Eval::numeric(lhs, rhs))
}

pub(crate) fn oomega(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let s = sp(p, 1, &omega(w)?, w)?;
    let lhs = Complex::with_val(w, s.conj_ref()) * &s;
    let u = fundamental_unit(p)?;
    let k = (1 - jacobi_unchecked(p as i64, 3)) * u.h_real as i64;
    Ok(Eval::numeric(lhs, unit_pow(&u, k, w)?))
}

pub(crate) fn zeta6_relation(pr: &CheckParams, w: u32) -> Result<Eval> {
    let p = p_of(pr)?;
    let om = omega(w)?;
    let lhs = sp(p, 1, &root_of_unity(1, 6, w)?, w)?;
    let m = sp(p, 1, &Complex::with_val(w, -&om), w)?;
    let mbar = Complex::with_val(w, m.conj_ref());
    let rhs = if p % 4 == 1 {
        mbar
    } else if p % 12 == 7 {
        recip(mbar)?
    } else {
        om / mbar
    };
    Ok(Eval::numeric(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(ev: &Eval, bits: u32) -> bool {
        let l = ev.lhs.to_complex(bits).unwrap();
        let r = ev.rhs.to_complex(bits).unwrap();
        crate::numerics::residual(&l, &r) < Float::i_exp(1, -(bits as i32) / 2)
    }

    #[test]
    fn worked_values() {
        let ev = secant(&CheckParams::with_n(3), 256).unwrap();
        assert_eq!(ev.rhs, Side::Exact(Rational::from(9)));
        assert!(close(&ev, 256));

        let ev = sincos0(&CheckParams::with_n(5), 256).unwrap();
        assert_eq!(ev.rhs, Side::Exact(Rational::from((5, 2))));
        assert!(close(&ev, 256));

        let ev = cosp(&CheckParams::with_p(7), 256).unwrap();
        assert_eq!(ev.rhs, Side::Exact(Rational::from(-2)));
        assert!(close(&ev, 256));

        let ev = cot2_sum(&CheckParams::with_n(5), 256).unwrap();
        assert_eq!(ev.rhs, Side::Exact(Rational::from(4)));
        assert!(close(&ev, 256));
    }

    #[test]
    fn prime_items() {
        let ev = tan43(&CheckParams::with_pa(7, 1), 256).unwrap();
        let v = ev.lhs.to_complex(64).unwrap();
        assert!((v.real().to_f64() + 11.2915).abs() < 1e-3);
        assert!(close(&ev, 256));

        let ev = tan1(&CheckParams::with_pa(17, 1), 256).unwrap();
        assert_eq!(ev.rhs.to_complex(64).unwrap().real().to_f64(), -16.0);
        assert!(close(&ev, 256));

        let ev = omega_id(&CheckParams::with_p(13), 256).unwrap();
        assert!(close(&ev, 256));
        let s = sp(13, 1, &omega(256).unwrap(), 256).unwrap();
        assert!((s.real().to_f64() + 1.0).abs() < 1e-12);

        let ev = wc(&CheckParams::with_p(13), 0).unwrap();
        assert_eq!(ev.lhs, Side::Residue { value: 5, modulus: 13 });
        assert_eq!(ev.lhs, ev.rhs);
    }
}
