use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Complex, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{is_prime, jacobi_unchecked};
use crate::error::{invalid, Error, Result};

/// A complex number with rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CRational {
    pub re: Rational,
    pub im: Rational,
}

impl CRational {
    pub fn new(re: Rational, im: Rational) -> CRational {
        CRational { re, im }
    }

    pub fn real(re: Rational) -> CRational {
        CRational { re, im: Rational::new() }
    }

    pub fn to_complex(&self, bits: u32) -> Complex {
        Complex::with_val(bits, (&self.re, &self.im))
    }

    /// `k * self + c`
    pub fn affine(&self, k: i64, c: &Rational) -> CRational {
        CRational {
            re: Rational::from(&self.re * k) + c,
            im: Rational::from(&self.im * k),
        }
    }
}

impl fmt::Display for CRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0 {
            write!(f, "{}", self.re)
        } else if self.im < 0 {
            write!(f, "{}-{}i", self.re, Rational::from(-&self.im))
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl FromStr for CRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<CRational> {
        let bad = || Error::InvalidArgument(format!("cannot parse complex rational `{s}`"));
        let parse_q = |t: &str| Rational::from_str(t).map_err(|_| bad());
        let Some(body) = s.strip_suffix('i') else {
            return Ok(CRational::real(parse_q(s)?));
        };
        // split at the sign that starts the imaginary part (not a leading sign)
        let idx = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let re = parse_q(&body[..idx])?;
        let im_str = &body[idx..];
        let im = parse_q(im_str.strip_prefix('+').unwrap_or(im_str))?;
        Ok(CRational::new(re, im))
    }
}

impl Serialize for CRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<CRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parameters for one check. Which fields are required depends on the
/// identity's [`Schema`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct CheckParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x: Option<CRational>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub y: Option<CRational>,
}

impl CheckParams {
    pub fn with_n(n: u64) -> CheckParams {
        CheckParams {
            n: Some(n),
            ..CheckParams::default()
        }
    }

    pub fn with_p(p: u64) -> CheckParams {
        CheckParams {
            p: Some(p),
            ..CheckParams::default()
        }
    }

    pub fn with_pa(p: u64, a: i64) -> CheckParams {
        CheckParams {
            p: Some(p),
            a: Some(a),
            ..CheckParams::default()
        }
    }

    pub fn x(mut self, x: CRational) -> CheckParams {
        self.x = Some(x);
        self
    }

    pub fn y(mut self, y: CRational) -> CheckParams {
        self.y = Some(y);
        self
    }

    /// `n` or `p`, whichever is set.
    pub fn index(&self) -> u64 {
        self.n.or(self.p).unwrap_or(0)
    }

    pub fn to_map(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        if let Some(n) = self.n {
            m.insert("n".into(), n.to_string());
        }
        if let Some(p) = self.p {
            m.insert("p".into(), p.to_string());
        }
        if let Some(a) = self.a {
            m.insert("a".into(), a.to_string());
        }
        if let Some(x) = &self.x {
            m.insert("x".into(), x.to_string());
        }
        if let Some(y) = &self.y {
            m.insert("y".into(), y.to_string());
        }
        m
    }
}

impl fmt::Display for CheckParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_map().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Constant term of an excluded set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Offset {
    /// `num / den`
    Rat(i64, i64),
    /// `(-1/n) / 4`
    EpsQuarter,
}

/// The excluded set `{ cx*x + cy*y + offset in Z }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exclusion {
    pub cx: i64,
    pub cy: i64,
    pub offset: Offset,
}

/// Minimum distance a sampled parameter keeps from every excluded set.
pub const EXCLUSION_MARGIN: f64 = 0.01;

impl Exclusion {
    pub const fn x(cx: i64, offset: Offset) -> Exclusion {
        Exclusion { cx, cy: 0, offset }
    }

    pub const fn xy(cx: i64, cy: i64, offset: Offset) -> Exclusion {
        Exclusion { cx, cy, offset }
    }

    fn offset_value(&self, n: u64) -> Rational {
        match self.offset {
            Offset::Rat(a, b) => Rational::from((a, b)),
            Offset::EpsQuarter => Rational::from((jacobi_unchecked(-1, n), 4)),
        }
    }

    /// Distance in `C^2` from `(x, y)` to the excluded set.
    pub fn distance(&self, x: &CRational, y: Option<&CRational>, n: u64) -> f64 {
        let mut z = x.affine(self.cx, &self.offset_value(n));
        if let (Some(y), true) = (y, self.cy != 0) {
            let w = y.affine(self.cy, &Rational::new());
            z.re += w.re;
            z.im += w.im;
        }
        let frac = &z.re - Rational::from(z.re.floor_ref());
        let re_d = frac.to_f64().min(1.0 - frac.to_f64());
        let im_d = z.im.to_f64();
        let norm = ((self.cx * self.cx + self.cy * self.cy) as f64).sqrt();
        re_d.hypot(im_d) / norm
    }

    pub fn describe(&self) -> String {
        let mut s = String::new();
        let term = |c: i64, v: &str| match c {
            1 => v.to_string(),
            -1 => format!("-{v}"),
            c => format!("{c}{v}"),
        };
        if self.cx != 0 {
            s.push_str(&term(self.cx, "x"));
        }
        if self.cy != 0 {
            if self.cy > 0 && !s.is_empty() {
                s.push('+');
            }
            s.push_str(&term(self.cy, "y"));
        }
        match self.offset {
            Offset::Rat(0, _) => {}
            Offset::Rat(a, b) if a < 0 => s.push_str(&format!("-{}/{}", -a, b)),
            Offset::Rat(a, b) => s.push_str(&format!("+{a}/{b}")),
            Offset::EpsQuarter => s.push_str("+(-1/n)/4"),
        }
        format!("{s} not in Z")
    }
}

/// How the integer index of an identity is constrained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Index {
    /// Odd `n >= 1`.
    OddN,
    /// Any `n >= 1`.
    AnyN,
    /// A prime `p >= min` with `p mod modulus` in `residues`.
    Prime {
        min: u64,
        modulus: u64,
        residues: &'static [u64],
    },
}

impl Index {
    pub fn admits(&self, k: u64) -> bool {
        match *self {
            Index::OddN => k % 2 == 1,
            Index::AnyN => k >= 1,
            Index::Prime { min, modulus, residues } => {
                k >= min && is_prime(k) && residues.contains(&(k % modulus))
            }
        }
    }

    pub fn is_prime_index(&self) -> bool {
        matches!(self, Index::Prime { .. })
    }

    pub fn describe(&self) -> String {
        match *self {
            Index::OddN => "odd n >= 1".into(),
            Index::AnyN => "n >= 1".into(),
            Index::Prime { min, modulus: 1, .. } => format!("prime p >= {min}"),
            Index::Prime { min, modulus, residues } => {
                let r: Vec<String> = residues.iter().map(|r| r.to_string()).collect();
                format!("prime p >= {min}, p = {} (mod {modulus})", r.join(","))
            }
        }
    }
}

/// Parameter schema of an identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Schema {
    pub index: Index,
    pub uses_a: bool,
    /// Number of complex variables (0, 1 or 2).
    pub vars: u8,
    pub exclusions: &'static [Exclusion],
}

impl Schema {
    pub fn validate(&self, params: &CheckParams) -> Result<()> {
        let k = if self.index.is_prime_index() {
            if params.n.is_some() {
                return invalid("this identity takes a prime p, not n");
            }
            params.p.ok_or_else(|| Error::InvalidArgument("missing prime p".into()))?
        } else {
            if params.p.is_some() {
                return invalid("this identity takes n, not a prime p");
            }
            params.n.ok_or_else(|| Error::InvalidArgument("missing n".into()))?
        };
        if !self.index.admits(k) {
            return invalid(format!("{k} violates the index constraint: {}", self.index.describe()));
        }
        match (self.uses_a, params.a) {
            (true, None) => return invalid("missing integer a"),
            (false, Some(_)) => return invalid("this identity takes no parameter a"),
            (true, Some(a)) if a.rem_euclid(k as i64) == 0 => {
                return invalid(format!("p = {k} divides a = {a}"))
            }
            _ => {}
        }
        let want_x = self.vars >= 1;
        let want_y = self.vars >= 2;
        if want_x != params.x.is_some() || want_y != params.y.is_some() {
            return invalid(format!("this identity takes {} complex variable(s)", self.vars));
        }
        if let Some(x) = &params.x {
            for e in self.exclusions {
                let d = e.distance(x, params.y.as_ref(), k);
                if d < EXCLUSION_MARGIN {
                    return invalid(format!(
                        "parameters lie within {d:.4} of the excluded set {}",
                        e.describe()
                    ));
                }
            }
        }
        Ok(())
    }
}

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

pub(crate) fn rng_for(id: &str, seed: u64, salt: u64) -> ChaCha8Rng {
    let mixed = seed ^ fnv1a(id) ^ salt.wrapping_mul(0x9e3779b97f4a7c15);
    ChaCha8Rng::seed_from_u64(mixed)
}

/// A random `u/v + i w/v` with `v <= 1000`, `|Re| <= 1`, `|Im| <= 2`;
/// one draw in five is real.
pub(crate) fn random_point(rng: &mut ChaCha8Rng) -> CRational {
    let v: i64 = rng.gen_range(1..=1000);
    let u: i64 = rng.gen_range(-v..=v);
    let w: i64 = if rng.gen_range(0..5) == 0 {
        0
    } else {
        rng.gen_range(-2 * v..=2 * v)
    };
    CRational::new(Rational::from((u, v)), Rational::from((w, v)))
}

pub(crate) fn sample_vars(schema: &Schema, k: u64, rng: &mut ChaCha8Rng, base: CheckParams) -> CheckParams {
    loop {
        let mut cand = base.clone();
        if schema.vars >= 1 {
            cand.x = Some(random_point(rng));
        }
        if schema.vars >= 2 {
            cand.y = Some(random_point(rng));
        }
        let ok = match &cand.x {
            None => true,
            Some(x) => schema
                .exclusions
                .iter()
                .all(|e| e.distance(x, cand.y.as_ref(), k) >= EXCLUSION_MARGIN),
        };
        if ok {
            return cand;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_rational_round_trip() {
        for s in ["3/7", "-1/2+3/4i", "0-2i", "5/3-1/9i", "-4"] {
            let z: CRational = s.parse().unwrap();
            let again: CRational = z.to_string().parse().unwrap();
            assert_eq!(z, again);
        }
        let z: CRational = "-1/2+3/4i".parse().unwrap();
        assert_eq!(z.re, Rational::from((-1, 2)));
        assert_eq!(z.im, Rational::from((3, 4)));
        assert!("abc".parse::<CRational>().is_err());
    }

    #[test]
    fn exclusion_distance() {
        let e = Exclusion::x(2, Offset::Rat(0, 1));
        let x = CRational::real(Rational::from((1, 2)));
        assert!(e.distance(&x, None, 1) < 1e-12);
        let x = CRational::real(Rational::from((1, 4)));
        assert!((e.distance(&x, None, 1) - 0.25).abs() < 1e-12);
        let e = Exclusion::x(1, Offset::EpsQuarter);
        // n = 3: excluded x - 1/4 in Z
        let x = CRational::real(Rational::from((1, 4)));
        assert!(e.distance(&x, None, 3) < 1e-12);
        assert!(e.distance(&x, None, 5) > 0.4);
    }

    #[test]
    fn params_display() {
        let p = CheckParams::with_n(3).x("1/3+1/2i".parse().unwrap());
        assert_eq!(p.to_string(), "n=3 x=1/3+1/2i");
    }
}
