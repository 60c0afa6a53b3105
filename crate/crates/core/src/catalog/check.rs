use rand::Rng;
use rug::{Complex, Float};
use serde::Serialize;

use crate::arith::primes_in;
use crate::catalog::eval::{Eval, Side};
use crate::catalog::params::{rng_for, sample_vars, CheckParams, Index};
use crate::catalog::registry::{lookup, CheckKind, IdentityDescriptor};
use crate::error::{invalid, Error, Result};
use crate::numerics::{near_equal, PrecisionPolicy};

/// Guard bits added on top of the policy precision while evaluating.
const GUARD_BITS: u32 = 32;

/// Largest prime drawn by [`sample_params`].
pub const SAMPLE_PRIME_MAX: u64 = 499;

/// Outcome of checking one identity at one parameter point.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: String,
    pub kind: CheckKind,
    pub params: CheckParams,
    pub lhs: Side,
    pub rhs: Side,
    /// Scaled residual for numeric kinds; `None` for exact comparisons.
    pub residual: Option<Float>,
    pub bits_used: u32,
    pub pass: bool,
    pub notes: Vec<String>,
}

/// Decimal digits that are meaningful at `bits` of precision.
pub fn digits_for(bits: u32) -> usize {
    ((bits as f64) * std::f64::consts::LOG10_2).floor().max(8.0) as usize
}

pub fn format_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix(10, Some(digits))
}

impl Side {
    /// Decimal rendering with `digits` significant digits.
    pub fn render(&self, digits: usize) -> String {
        match self {
            Side::Exact(q) => q.to_string(),
            Side::Residue { value, modulus } => format!("{value} mod {modulus}"),
            Side::Numeric(z) => {
                let re = format_float(z.real(), digits);
                if z.imag().is_zero() {
                    re
                } else if z.imag().is_sign_negative() {
                    let im = Float::with_val(z.prec().1, -z.imag());
                    format!("{re}-{}i", format_float(&im, digits))
                } else {
                    format!("{re}+{}i", format_float(z.imag(), digits))
                }
            }
        }
    }
}

/// Serializable view of a [`CheckResult`].
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub kind: CheckKind,
    pub params: CheckParams,
    pub lhs: String,
    pub rhs: String,
    pub residual: Option<String>,
    pub bits: u32,
    pub pass: bool,
    pub notes: Vec<String>,
}

impl CheckResult {
    pub fn record(&self) -> CheckRecord {
        let digits = digits_for(self.bits_used);
        CheckRecord {
            id: self.id.clone(),
            kind: self.kind,
            params: self.params.clone(),
            lhs: self.lhs.render(digits),
            rhs: self.rhs.render(digits),
            residual: self.residual.as_ref().map(|r| format_float(r, 6)),
            bits: self.bits_used,
            pass: self.pass,
            notes: self.notes.clone(),
        }
    }
}

fn run(d: &IdentityDescriptor, params: &CheckParams, policy: &PrecisionPolicy) -> Result<CheckResult> {
    let work = policy.bits + GUARD_BITS;
    let Eval {
        lhs,
        rhs,
        extra,
        conditions,
        mut notes,
    } = (d.eval)(params, work)?;

    let (mut pass, residual) = match (&lhs, &rhs) {
        (Side::Residue { value: l, modulus: m }, Side::Residue { value: r, modulus: n }) => {
            (l == r && m == n, None)
        }
        _ => {
            let to_c = |s: &Side| {
                s.to_complex(work)
                    .ok_or_else(|| Error::Integrity(format!("{}: mixed residue and numeric sides", d.id)))
            };
            let l = to_c(&lhs)?;
            let r = to_c(&rhs)?;
            let (mut ok, mut worst) = near_equal(&l, &r, policy);
            for (name, side) in &extra {
                let e: Complex = to_c(side)?;
                let (ok_e, res_e) = near_equal(&e, &r, policy);
                if !ok_e {
                    notes.push(format!("{name} differs from the right side"));
                }
                ok &= ok_e;
                if res_e > worst {
                    worst = res_e;
                }
            }
            (ok, Some(worst))
        }
    };
    for (name, holds) in &conditions {
        if !holds {
            notes.push(format!("side condition failed: {name}"));
        }
        pass &= holds;
    }
    Ok(CheckResult {
        id: d.id.to_string(),
        kind: d.kind,
        params: params.clone(),
        lhs,
        rhs,
        residual,
        bits_used: policy.bits,
        pass,
        notes,
    })
}

/// Checks `id` at `params`.
///
/// Numeric comparisons that fail are retried once at the escalated policy
/// when `policy.escalate` is set; congruences are exact and never retried.
pub fn check(id: &str, params: &CheckParams, policy: &PrecisionPolicy) -> Result<CheckResult> {
    let d = lookup(id)?;
    d.schema.validate(params)?;
    let first = run(d, params, policy)?;
    if first.pass || !policy.escalate || d.kind == CheckKind::Congruence {
        return Ok(first);
    }
    let esc = policy.escalated();
    let mut second = run(d, params, &esc)?;
    second
        .notes
        .push(format!("retried at {} bits after failing at {}", esc.bits, policy.bits));
    Ok(second)
}

fn sample_index(d: &IdentityDescriptor, rng: &mut impl Rng) -> u64 {
    match d.schema.index {
        Index::OddN => 2 * rng.gen_range(0..50u64) + 1,
        Index::AnyN => rng.gen_range(1..=60u64),
        idx @ Index::Prime { min, .. } => {
            let pool: Vec<u64> = primes_in(min, SAMPLE_PRIME_MAX)
                .into_iter()
                .filter(|&p| idx.admits(p))
                .collect();
            pool[rng.gen_range(0..pool.len())]
        }
    }
}

fn base_params(d: &IdentityDescriptor, k: u64, rng: &mut impl Rng) -> CheckParams {
    let mut base = if d.schema.index.is_prime_index() {
        CheckParams::with_p(k)
    } else {
        CheckParams::with_n(k)
    };
    if d.schema.uses_a {
        let a = loop {
            let a = rng.gen_range(1..2 * k as i64);
            if a % k as i64 != 0 {
                break a;
            }
        };
        base.a = Some(a);
    }
    base
}

/// Deterministic pseudorandom parameters for `id`.
///
/// Odd `n` is uniform in `[1, 99]`, unrestricted `n` in `[1, 60]` and
/// primes are drawn from the admissible ones up to [`SAMPLE_PRIME_MAX`].
/// Complex variables keep a distance of at least 1/100 from every
/// excluded set.
pub fn sample_params(id: &str, seed: u64, count: usize) -> Result<Vec<CheckParams>> {
    let d = lookup(id)?;
    if count == 0 {
        return invalid("sample count must be at least 1");
    }
    let mut rng = rng_for(id, seed, 0);
    Ok((0..count)
        .map(|_| {
            let k = sample_index(d, &mut rng);
            let base = base_params(d, k, &mut rng);
            sample_vars(&d.schema, k, &mut rng, base)
        })
        .collect())
}

/// Like [`sample_params`] with the index held at `k`.
pub fn sample_params_for_index(id: &str, k: u64, seed: u64, count: usize) -> Result<Vec<CheckParams>> {
    let d = lookup(id)?;
    if !d.schema.index.admits(k) {
        return invalid(format!("{k} violates the index constraint of {id}: {}", d.schema.index.describe()));
    }
    let mut rng = rng_for(id, seed, k);
    Ok((0..count)
        .map(|_| {
            let base = base_params(d, k, &mut rng);
            sample_vars(&d.schema, k, &mut rng, base)
        })
        .collect())
}

/// Theorem families and their members.
pub const FAMILIES: &[(&str, &[&str])] = &[
    ("1.3", &["tancot", "h_minus_p"]),
    ("1.4", &["tan1", "cot1", "tan5", "cot5", "tan43", "cot43"]),
    ("1.5", &["omega", "minus_omega41", "oomega"]),
    ("4.1", &["wc"]),
    ("4.2", &["p14", "cos14", "re"]),
    ("4.3", &["prod_4k3"]),
    ("4.4", &["relation"]),
    ("lerch", &["lerch"]),
    ("sp_i", &["root1", "root5", "S_i", "st"]),
];

fn family_members(family: &str) -> Result<Vec<&'static str>> {
    if let Some((_, members)) = FAMILIES.iter().find(|(f, _)| *f == family) {
        return Ok(members.to_vec());
    }
    if let Some((f, member)) = family.split_once('-') {
        if let Some((_, members)) = FAMILIES.iter().find(|(name, _)| *name == f) {
            if let Some(m) = members.iter().find(|m| **m == member) {
                return Ok(vec![*m]);
            }
            return invalid(format!("family {f} has no member `{member}`; members: {}", members.join(", ")));
        }
    }
    // a bare identity id is a family of one
    Ok(vec![lookup(family)?.id])
}

/// Checks every member of a theorem family that applies to `p`.
///
/// `family` is a family name (`"1.4"`), a family-member pair
/// (`"1.4-tan43"`) or a bare identity id (`"wc"`). Members whose residue
/// class excludes `p` are skipped; if none remain the call fails.
pub fn check_theorem_family(family: &str, p: u64, a: i64, policy: &PrecisionPolicy) -> Result<Vec<CheckResult>> {
    let members = family_members(family)?;
    let mut applicable = Vec::new();
    for id in &members {
        let d = lookup(id)?;
        if d.schema.index.admits(p) {
            applicable.push(d);
        }
    }
    if applicable.is_empty() {
        let classes: Vec<String> = members
            .iter()
            .map(|id| format!("{id}: {}", lookup(id).map(|d| d.schema.index.describe()).unwrap_or_default()))
            .collect();
        return invalid(format!("p = {p} is outside every class of {family} ({})", classes.join("; ")));
    }
    if a.rem_euclid(p as i64) == 0 {
        return invalid(format!("p = {p} divides a = {a}"));
    }
    applicable
        .into_iter()
        .map(|d| {
            let mut params = CheckParams::with_p(p);
            if d.schema.uses_a {
                params.a = Some(a);
            }
            check(d.id, &params, policy)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    fn pol() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn worked_checks() {
        let r = check("secant", &CheckParams::with_n(3), &pol()).unwrap();
        assert!(r.pass);
        assert_eq!(r.rhs, Side::Exact(Rational::from(9)));

        let r = check("cosp", &CheckParams::with_p(7), &pol()).unwrap();
        assert!(r.pass);
        assert_eq!(r.rhs.render(10), "-2");
    }

    #[test]
    fn families() {
        let rs = check_theorem_family("1.4-tan43", 7, 1, &pol()).unwrap();
        assert_eq!(rs.len(), 1);
        assert!(rs[0].pass);

        let rs = check_theorem_family("1.4", 17, 2, &pol()).unwrap();
        let ids: Vec<&str> = rs.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, ["tan1", "cot1"]);
        assert!(rs.iter().all(|r| r.pass));

        let rs = check_theorem_family("wc", 13, 1, &pol()).unwrap();
        assert!(rs[0].pass);

        assert!(check_theorem_family("1.5", 7, 1, &pol()).is_err());
        assert!(check_theorem_family("1.4", 17, 34, &pol()).is_err());
    }

    #[test]
    fn schema_violations() {
        assert!(check("secant", &CheckParams::with_n(4), &pol()).is_err());
        assert!(check("csc", &CheckParams::with_n(3), &pol()).is_err());
        let half: crate::catalog::CRational = "1/2".parse().unwrap();
        assert!(check("csc", &CheckParams::with_n(3).x(half), &pol()).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_params("csc", 1, 10).unwrap();
        let b = sample_params("csc", 1, 10).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        let d = lookup("csc").unwrap();
        assert!(a.iter().all(|p| d.schema.validate(p).is_ok()));
    }
}
