//! Scans a conjecture on `S_p` over a prime range and prints the verdicts.
//! Pass a conjecture id and an upper bound, e.g. `5.3i 200`.
use trigres::lab::{scan_conjecture, ScanRange, Verdict, CONJECTURE_IDS};
use trigres::numerics::PrecisionPolicy;

fn main() -> trigres::Result<()> {
    let mut args = std::env::args().skip(1);
    let id = args.next().unwrap_or_else(|| "5.2".into());
    let hi: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(150);
    println!("known conjectures: {}", CONJECTURE_IDS.join(", "));

    let reports = scan_conjecture(&id, &ScanRange::new(5, hi)?, &PrecisionPolicy::default())?;
    for r in &reports {
        let mark = match r.verdict {
            Verdict::Pass => "ok",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "??",
        };
        println!("{:>4} {:<10} {:<5} {}", r.p, r.variant, mark, r.predicted);
        if r.verdict == Verdict::Fail {
            for n in &r.notes {
                println!("       {n}");
            }
        }
    }
    Ok(())
}
