//! Runs every member of a family of prime-indexed identities for a few
//! primes; members outside their residue class are skipped.
use trigres::catalog::{check_theorem_family, FAMILIES};
use trigres::numerics::PrecisionPolicy;

fn main() -> trigres::Result<()> {
    let policy = PrecisionPolicy::default();
    let families: Vec<&str> = FAMILIES.iter().map(|(f, _)| *f).collect();
    println!("families: {}", families.join(", "));
    for p in [17, 41, 43, 73] {
        for r in check_theorem_family("1.4", p, 1, &policy)? {
            println!("p={p:<3} {:<6} pass {} ({})", r.id, r.pass, r.rhs.render(12));
        }
    }
    // the congruence of 4.1 only covers p = 1 (mod 4)
    if let Err(e) = check_theorem_family("4.1", 19, 1, &policy) {
        println!("p=19: {e}");
    }
    Ok(())
}
