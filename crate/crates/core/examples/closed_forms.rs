//! Two closed forms confirmed numerically: the cosecant sum for `h(-p)`
//! when p = 3 (mod 8) and the reciprocal sum equal to -(p+1)/4 when
//! p = 7 (mod 8).
use trigres::lab::{scan_eq43, scan_h_csc, ScanRange};
use trigres::numerics::PrecisionPolicy;

fn main() -> trigres::Result<()> {
    let policy = PrecisionPolicy::default();
    let range = ScanRange::new(5, 200)?;
    for r in scan_h_csc(&range, &policy)? {
        println!("h_csc p={:<4} h(-p)={:<3} pass {}", r.p, r.predicted, r.pass());
    }
    for r in scan_eq43(&range, &policy)? {
        println!("eq43  p={:<4} {:<9} rhs {:<5} pass {}", r.p, r.variant, r.predicted, r.pass());
    }
    Ok(())
}
