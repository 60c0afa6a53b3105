#![allow(dead_code)]

use rug::Rational;
use trigres::runner::{run, Command, Range, ReportFile, RunConfig};

/// Smallest unit `(x + y sqrt p)/2 > 1` of the ring of integers of
/// `Q(sqrt p)`, by scanning `y` upward. Returns the coordinates of
/// `x/2 + (y/2) sqrt p`.
pub fn brute_force_unit(p: u64, height: u64) -> Option<(Rational, Rational)> {
    let p = p as u128;
    for y in 1..=height as u128 {
        for sign in [-4i128, 4] {
            let x2 = (p * y * y) as i128 + sign;
            if x2 <= 0 {
                continue;
            }
            let x = (x2 as f64).sqrt() as u128;
            let x = (x.saturating_sub(2)..=x + 2).find(|&c| (c * c) as i128 == x2);
            let Some(x) = x else { continue };
            let integral = if p % 4 == 1 { x % 2 == y % 2 } else { x % 2 == 0 && y % 2 == 0 };
            if integral {
                return Some((
                    Rational::from((x as u64, 2u64)),
                    Rational::from((y as u64, 2u64)),
                ));
            }
        }
    }
    None
}

pub fn verify(ids: &[&str], n: Option<(u64, u64)>, primes: Option<(u64, u64)>) -> RunConfig {
    let mut cfg = RunConfig::new(Command::Verify);
    cfg.identities = ids.iter().map(|s| s.to_string()).collect();
    cfg.n = n.map(|(lo, hi)| Range::new(lo, hi).unwrap());
    cfg.primes = primes.map(|(lo, hi)| Range::new(lo, hi).unwrap());
    cfg
}

pub const STAMP: &str = "2000-01-01T00:00:00Z";

pub fn run_ok(cfg: &RunConfig) -> (i32, ReportFile) {
    let o = run(cfg, STAMP).expect("run");
    (o.exit_code, o.report)
}
