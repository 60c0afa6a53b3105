use std::fmt;

use rug::{Complex, Float, Rational};
use serde::{Deserialize, Serialize};

use crate::catalog::{format_float, CheckKind};
use crate::error::{invalid, Result};
use crate::numerics::root_of_unity;

/// `e^{2 pi i t} * sum c_k sqrt(d_k)`, with `t` in `[0, 1)` and `d_k`
/// squarefree (`d_k = 1` for rational terms).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictedForm {
    pub root: Rational,
    pub terms: Vec<(Rational, u64)>,
}

impl PredictedForm {
    pub fn new(root: Rational, terms: Vec<(Rational, u64)>) -> PredictedForm {
        let fl = Rational::from(root.floor_ref());
        PredictedForm {
            root: root - fl,
            terms: terms.into_iter().filter(|(c, _)| *c != 0).collect(),
        }
    }

    pub fn value(&self, bits: u32) -> Result<Complex> {
        let work = bits + 32;
        let mut sum = Float::with_val(work, 0);
        for (c, d) in &self.terms {
            sum += Float::with_val(work, c) * Float::with_val(work, *d).sqrt();
        }
        let (num, den) = (self.root.numer().to_i64(), self.root.denom().to_u64());
        let (Some(num), Some(den)) = (num, den) else {
            return invalid("root-of-unity exponent out of range");
        };
        let z = root_of_unity(num, den, work)? * sum;
        Ok(Complex::with_val(bits, z))
    }
}

impl fmt::Display for PredictedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root != 0 {
            write!(f, "e^(2pi i {})*", self.root)?;
        }
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str("(")?;
        for (k, (c, d)) in self.terms.iter().enumerate() {
            let neg = *c < 0;
            let abs = Rational::from(c.abs_ref());
            if k > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            match (*d, abs == 1) {
                (1, _) => write!(f, "{abs}")?,
                (d, true) => write!(f, "sqrt{d}")?,
                (d, false) => write!(f, "{abs}*sqrt{d}")?,
            }
        }
        f.write_str(")")
    }
}

/// What a report compares the observed value against.
#[derive(Debug, Clone, PartialEq)]
pub enum Prediction {
    Exact(PredictedForm),
    /// `quantity` is real with the given sign.
    Sign { quantity: String, positive: bool },
    /// The closed form is a rational number.
    Rational(Rational),
    /// Exploration records carry no prediction.
    None,
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prediction::Exact(form) => write!(f, "{form}"),
            Prediction::Sign { quantity, positive } => {
                write!(f, "{quantity} {} 0", if *positive { ">" } else { "<" })
            }
            Prediction::Rational(q) => write!(f, "{q}"),
            Prediction::None => f.write_str(""),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// One conjecture instance at one prime.
#[derive(Debug, Clone)]
pub struct ConjectureReport {
    pub conjecture_id: String,
    pub p: u64,
    /// Which instance at this prime (e.g. the root of unity).
    pub variant: String,
    pub kind: CheckKind,
    pub predicted: Prediction,
    pub observed: Option<Complex>,
    pub residual: Option<Float>,
    pub bits_used: u32,
    pub verdict: Verdict,
    /// Ingredients and diagnostics, enough to recompute the prediction.
    pub notes: Vec<String>,
}

impl ConjectureReport {
    pub fn pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn observed_string(&self, digits: usize) -> String {
        match &self.observed {
            None => String::new(),
            Some(z) => {
                let re = format_float(z.real(), digits);
                if z.imag().is_zero() {
                    return re;
                }
                let im = Float::with_val(z.prec().1, z.imag().abs_ref());
                let sign = if z.imag().is_sign_negative() { '-' } else { '+' };
                format!("{re}{sign}{}i", format_float(&im, digits))
            }
        }
    }
}

/// Primes `p_min..=p_max`, optionally restricted to residue classes, and
/// the search bound for Pell-type equations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRange {
    pub p_min: u64,
    pub p_max: u64,
    pub residue_filter: Option<(u64, Vec<u64>)>,
    pub pell_bound: u64,
}

pub const DEFAULT_PELL_BOUND: u64 = 20_000_000;

impl ScanRange {
    pub fn new(p_min: u64, p_max: u64) -> Result<ScanRange> {
        if p_min > p_max {
            return invalid(format!("empty prime range {p_min}..{p_max}"));
        }
        Ok(ScanRange {
            p_min,
            p_max,
            residue_filter: None,
            pell_bound: DEFAULT_PELL_BOUND,
        })
    }

    pub fn with_filter(mut self, modulus: u64, residues: Vec<u64>) -> Result<ScanRange> {
        if modulus == 0 || residues.is_empty() || residues.iter().any(|&r| r >= modulus) {
            return invalid(format!("bad residue filter {residues:?} mod {modulus}"));
        }
        self.residue_filter = Some((modulus, residues));
        Ok(self)
    }

    pub fn with_pell_bound(mut self, bound: u64) -> ScanRange {
        self.pell_bound = bound;
        self
    }

    pub(crate) fn admits(&self, p: u64) -> bool {
        match &self.residue_filter {
            None => true,
            Some((m, rs)) => rs.contains(&(p % m)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_display_and_value() {
        let f = PredictedForm::new(
            Rational::from((1, 4)),
            vec![(Rational::from((-5, 2)), 3), (Rational::from((1, 2)), 79)],
        );
        assert_eq!(f.to_string(), "e^(2pi i 1/4)*(-5/2*sqrt3 + 1/2*sqrt79)");
        let v = f.value(128).unwrap();
        let expect = (79f64.sqrt() - 5.0 * 3f64.sqrt()) / 2.0;
        assert!(v.real().to_f64().abs() < 1e-30);
        assert!((v.imag().to_f64() - expect).abs() < 1e-12);

        let g = PredictedForm::new(Rational::from((3, 2)), vec![(Rational::from(1), 1)]);
        assert_eq!(g.root, Rational::from((1, 2)));
        assert_eq!(g.to_string(), "e^(2pi i 1/2)*(1)");
    }

    #[test]
    fn range_checks() {
        assert!(ScanRange::new(10, 5).is_err());
        let r = ScanRange::new(5, 50).unwrap().with_filter(4, vec![3]).unwrap();
        assert!(r.admits(7) && !r.admits(13));
        assert!(ScanRange::new(5, 50).unwrap().with_filter(4, vec![5]).is_err());
    }
}
