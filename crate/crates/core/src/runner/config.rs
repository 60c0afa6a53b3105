use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lab::DEFAULT_PELL_BOUND;
use crate::numerics::{DEFAULT_BITS, MIN_BITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Verify,
    Scan,
    Invariants,
    Explore,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Config(format!("unknown format `{other}`; expected json or csv"))),
        }
    }
}

/// An inclusive range `lo..hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub lo: u64,
    pub hi: u64,
}

impl Range {
    pub fn new(lo: u64, hi: u64) -> Result<Range> {
        if lo > hi {
            return Err(Error::Config(format!("empty range {lo}..{hi}")));
        }
        Ok(Range { lo, hi })
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for Range {
    type Err = Error;

    fn from_str(s: &str) -> Result<Range> {
        let bad = || Error::Config(format!("cannot parse range `{s}`; expected A..B"));
        let (a, b) = s.split_once("..").ok_or_else(bad)?;
        let lo = a.trim().parse().map_err(|_| bad())?;
        let hi = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        Range::new(lo, hi)
    }
}

impl Serialize for Range {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Range {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Range, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `m:r1,r2,...`
pub fn parse_residues(s: &str) -> Result<(u64, Vec<u64>)> {
    let bad = || Error::Config(format!("cannot parse residue filter `{s}`; expected M:R1,R2"));
    let (m, rs) = s.split_once(':').ok_or_else(bad)?;
    let m: u64 = m.trim().parse().map_err(|_| bad())?;
    let rs = rs
        .split(',')
        .map(|r| r.trim().parse::<u64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    Ok((m, rs))
}

/// `j/m`
pub fn parse_root(s: &str) -> Result<(i64, u64)> {
    let bad = || Error::Config(format!("cannot parse root `{s}`; expected J/M"));
    let (j, m) = s.split_once('/').ok_or_else(bad)?;
    let j = j.trim().parse().map_err(|_| bad())?;
    let m: u64 = m.trim().parse().map_err(|_| bad())?;
    if m == 0 {
        return Err(bad());
    }
    Ok((j, m))
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    /// Identity ids for `verify`; `["all"]` selects the whole catalog.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub identities: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub conjecture: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub primes: Option<Range>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<Range>,
    pub bits: u32,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    /// Values of `a` tried for identities that take one.
    pub a_values: Vec<i64>,
    pub pell_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residues: Option<(u64, Vec<u64>)>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub roots: Vec<(i64, u64)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tolerance_log2: Option<i64>,
    pub escalate: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: Command) -> RunConfig {
        RunConfig {
            command,
            identities: Vec::new(),
            conjecture: None,
            primes: None,
            n: None,
            bits: DEFAULT_BITS,
            samples: 25,
            seed: None,
            a_values: vec![1, 2, 3],
            pell_bound: DEFAULT_PELL_BOUND,
            residues: None,
            roots: Vec::new(),
            tolerance_log2: None,
            escalate: true,
            out: None,
            format: Format::Json,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.bits < MIN_BITS {
            return Err(Error::Config(format!("--bits must be at least {MIN_BITS}, got {}", self.bits)));
        }
        if self.samples == 0 {
            return Err(Error::Config("--samples must be at least 1".into()));
        }
        if self.a_values.is_empty() {
            return Err(Error::Config("--a needs at least one value".into()));
        }
        match self.command {
            Command::Verify if self.identities.is_empty() => {
                Err(Error::Config("verify needs --identities <csv|all>".into()))
            }
            Command::Scan if self.conjecture.is_none() => Err(Error::Config("scan needs --conjecture <id>".into())),
            _ => Ok(()),
        }
    }
}

/// Settings read from a TOML config file; flags given on the command line
/// take precedence over every key here.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ConfigFile {
    pub identities: Option<String>,
    pub conjecture: Option<String>,
    pub primes: Option<String>,
    pub n: Option<String>,
    pub bits: Option<u32>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub a: Option<String>,
    pub pell_bound: Option<u64>,
    pub residues: Option<String>,
    pub roots: Option<String>,
    pub tolerance_log2: Option<i64>,
    pub no_escalate: Option<bool>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub timestamp: Option<String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<ConfigFile> {
        toml::from_str(text).map_err(|e| Error::Config(format!("config file: {e}")))
    }

    pub fn load(path: &std::path::Path) -> Result<ConfigFile> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        ConfigFile::parse(&text)
    }
}

pub(crate) fn split_csv(s: &str) -> Vec<String> {
    s.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!("7..400".parse::<Range>().unwrap(), Range { lo: 7, hi: 400 });
        assert_eq!("7..=9".parse::<Range>().unwrap(), Range { lo: 7, hi: 9 });
        assert!("9..7".parse::<Range>().is_err());
        assert!("7-9".parse::<Range>().is_err());
        assert_eq!(parse_residues("24:1,7").unwrap(), (24, vec![1, 7]));
        assert_eq!(parse_root("-1/12").unwrap(), (-1, 12));
        assert!(parse_root("1/0").is_err());
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
    }

    #[test]
    fn config_file() {
        let f = ConfigFile::parse("primes = \"7..60\"\nbits = 320\n").unwrap();
        assert_eq!(f.primes.as_deref(), Some("7..60"));
        assert_eq!(f.bits, Some(320));
        assert!(ConfigFile::parse("bogus = 1").is_err());
    }
}
