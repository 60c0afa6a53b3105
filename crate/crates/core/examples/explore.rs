//! Evaluates `S_p` at a root of unity for a handful of primes and prints
//! whatever closed forms turn up.
use trigres::lab::explore_s_poly;
use trigres::numerics::PrecisionPolicy;

fn main() -> trigres::Result<()> {
    let policy = PrecisionPolicy::default();
    for (p, root) in [(79, (1, 4)), (13, (1, 3)), (31, (1, 12)), (43, (1, 10))] {
        let r = explore_s_poly(p, root, &policy)?;
        println!("p={p} x={}: {}", r.variant, r.observed_string(15));
        for n in &r.notes {
            println!("    {n}");
        }
    }
    Ok(())
}
