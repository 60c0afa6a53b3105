use rayon::prelude::*;
use rug::{Complex, Float, Rational};

use crate::arith::{is_prime, jacobi_unchecked};
use crate::catalog::CheckKind;
use crate::error::{invalid, Result};
use crate::lab::conjectures::{check_filter, scan_primes, Hypothesis};
use crate::lab::report::{ConjectureReport, Prediction, ScanRange, Verdict};
use crate::numerics::{near_equal, recognize_quadratic, s_poly_at_root, trig_pi, PiRational, PrecisionPolicy, TrigKind};
use crate::quadratic::{class_number_minus_p, is_squarefree};

/// Height bound used when recognizing explored values.
pub const EXPLORE_HEIGHT: u64 = 1_000_000;

const H_CSC: Hypothesis = Hypothesis {
    min: 11,
    modulus: 8,
    residues: &[3],
};

const EQ43: Hypothesis = Hypothesis {
    min: 7,
    modulus: 8,
    residues: &[7],
};

fn angle_values(p: u64, num_mul: u64, kind: TrigKind, bits: u32) -> Result<Vec<Float>> {
    (1..=(p - 1) / 2)
        .map(|k| trig_pi(&PiRational::from_ratio((num_mul * k * k % (2 * p)) as i64, p as i64)?, kind, bits))
        .collect()
}

fn h_csc_at(p: u64, policy: &PrecisionPolicy) -> Result<ConjectureReport> {
    let bits = policy.bits;
    let work = bits + 32;
    let mut sum = Float::with_val(work, 0);
    for c in angle_values(p, 2, TrigKind::Csc, work)? {
        sum += c;
    }
    let v = sum / (Float::with_val(work, p).sqrt() * 2u32);
    let h = class_number_minus_p(p)?;
    let nearest = v.to_integer().and_then(|n| n.to_u64());
    let gap = Float::with_val(work, &v - h).abs();
    let pass = nearest == Some(h) && gap < 0.25;
    Ok(ConjectureReport {
        conjecture_id: "h_csc".into(),
        p,
        variant: String::new(),
        kind: CheckKind::ExactInteger,
        predicted: Prediction::Rational(Rational::from(h)),
        observed: Some(Complex::with_val(bits, (&v, 0))),
        residual: Some(Float::with_val(bits, gap)),
        bits_used: bits,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        notes: vec![format!("h(-p) = {h}")],
    })
}

/// `(1/(2 sqrt p)) sum_{k=1}^{(p-1)/2} csc(2 pi k^2/p)` against `h(-p)` for
/// primes `p = 3 (mod 8)`, `p > 3`: the rounded sum must equal the class
/// number with a gap below 1/4.
pub fn scan_h_csc(range: &ScanRange, policy: &PrecisionPolicy) -> Result<Vec<ConjectureReport>> {
    check_filter(range, &H_CSC, "h_csc")?;
    let primes = scan_primes(range, &H_CSC);
    primes.par_iter().map(|&p| h_csc_at(p, policy)).collect()
}

fn eq43_at(p: u64, policy: &PrecisionPolicy) -> Result<Vec<ConjectureReport>> {
    let bits = policy.bits;
    let work = bits + 32;
    let sins = angle_values(p, 2, TrigKind::Sin, work)?;
    let coss = angle_values(p, 2, TrigKind::Cos, work)?;
    let rhs = Rational::from((-(p as i64 + 1), 4));
    let rhs_c = Complex::with_val(work, (&rhs, 0));
    [1i64, -1]
        .into_iter()
        .map(|delta| {
            let mut sum = Float::with_val(work, 0);
            for (s, c) in sins.iter().zip(&coss) {
                let den = Float::with_val(work, s * delta) + c + 1u32;
                sum += den.recip();
            }
            let obs = Complex::with_val(work, (&sum, 0));
            let (ok, res) = near_equal(&obs, &rhs_c, policy);
            Ok(ConjectureReport {
                conjecture_id: "eq43".into(),
                p,
                variant: format!("delta={delta}"),
                kind: CheckKind::ExactInteger,
                predicted: Prediction::Rational(rhs.clone()),
                observed: Some(Complex::with_val(bits, obs)),
                residual: Some(res),
                bits_used: bits,
                verdict: if ok { Verdict::Pass } else { Verdict::Fail },
                notes: Vec::new(),
            })
        })
        .collect()
}

/// `sum_{k=1}^{(p-1)/2} 1/(1 + d sin(2 pi k^2/p) + cos(2 pi k^2/p)) = -(p+1)/4`
/// for primes `p = 7 (mod 8)` and both `d = 1` and `d = -1`.
pub fn scan_eq43(range: &ScanRange, policy: &PrecisionPolicy) -> Result<Vec<ConjectureReport>> {
    check_filter(range, &EQ43, "eq43")?;
    let primes = scan_primes(range, &EQ43);
    let per: Vec<Result<Vec<ConjectureReport>>> = primes.par_iter().map(|&p| eq43_at(p, policy)).collect();
    let mut out = Vec::new();
    for r in per {
        out.extend(r?);
    }
    Ok(out)
}

fn fmt_quad(a: &Rational, b: &Rational, d: u64) -> String {
    match (*a == 0, *b == 0) {
        (_, true) => a.to_string(),
        (true, false) => format!("{b}*sqrt{d}"),
        (false, false) if *b < 0 => format!("{a} - {}*sqrt{d}", Rational::from(-b)),
        (false, false) => format!("{a} + {b}*sqrt{d}"),
    }
}

/// Tries `re + i im` with both parts in `Q(sqrt d)` for each candidate `d`.
fn recognize_complex(z: &Complex, ds: &[u64]) -> Result<Option<String>> {
    for &d in ds {
        let re = recognize_quadratic(z.real(), d, EXPLORE_HEIGHT)?;
        let im = recognize_quadratic(z.imag(), d, EXPLORE_HEIGHT)?;
        if let (Some((ra, rb)), Some((ia, ib))) = (re, im) {
            let re_s = fmt_quad(&ra, &rb, d);
            let im_s = fmt_quad(&ia, &ib, d);
            return Ok(Some(match (ia == 0 && ib == 0, ra == 0 && rb == 0) {
                (true, _) => re_s,
                (false, true) => format!("({im_s}) i"),
                (false, false) => format!("{re_s} + ({im_s}) i"),
            }));
        }
    }
    Ok(None)
}

/// Evaluates `S_p(e^{2 pi i j/m})` and records any recognizable form of
/// `S` or `(i - 1) S` with coordinates in `Q(sqrt d)`, `d` in
/// `{p, 2p, 3p, 3, 2}`. The record is never a pass or a fail.
pub fn explore_s_poly(p: u64, root: (i64, u64), policy: &PrecisionPolicy) -> Result<ConjectureReport> {
    if p <= 3 || !is_prime(p) {
        return invalid(format!("exploration needs a prime p > 3, got {p}"));
    }
    let (j, m) = root;
    if m == 0 {
        return invalid("root of unity needs m >= 1");
    }
    let bits = policy.bits;
    let work = bits.max(crate::numerics::RECOGNIZE_MIN_BITS);
    let s = s_poly_at_root(p, j, m, work)?;
    let ds: Vec<u64> = [p, 2 * p, 3 * p, 3, 2]
        .into_iter()
        .filter(|&d| is_squarefree(d as i64))
        .collect();
    let mut notes = Vec::new();
    if let Some(form) = recognize_complex(&s, &ds)? {
        notes.push(format!("recognized: S = {form}"));
    }
    let shifted = Complex::with_val(work, (-1, 1)) * &s;
    if let Some(form) = recognize_complex(&shifted, &ds)? {
        notes.push(format!("recognized: (i-1)*S = {form}"));
    }
    if notes.is_empty() {
        notes.push("recognized: none".into());
    }
    notes.push(format!("(-1/p) = {}", jacobi_unchecked(-1, p)));
    Ok(ConjectureReport {
        conjecture_id: "explore".into(),
        p,
        variant: format!("e^(2pi i {}/{})", j, m),
        kind: CheckKind::NumericComplex,
        predicted: Prediction::None,
        observed: Some(s),
        residual: None,
        bits_used: work,
        verdict: Verdict::Inconclusive,
        notes,
    })
}
