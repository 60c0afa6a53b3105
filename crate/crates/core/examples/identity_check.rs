//! Checks one catalog identity at a fixed point and at seeded random
//! points, then prints the catalog.
use trigres::catalog::{check, list_identities, sample_params, CheckParams};
use trigres::numerics::PrecisionPolicy;

fn main() -> trigres::Result<()> {
    let policy = PrecisionPolicy::default();
    let r = check("secant", &CheckParams::with_n(7), &policy)?;
    println!("secant n=7: lhs {} rhs {} pass {}", r.lhs.render(20), r.rhs.render(20), r.pass);

    for params in sample_params("csc2", 11, 5)? {
        let r = check("csc2", &params, &policy)?;
        let res = r.residual.as_ref().map(|x| x.to_f64()).unwrap_or(0.0);
        println!("csc2 {params}: residual {res:.3e} pass {}", r.pass);
    }

    println!();
    for d in list_identities() {
        println!("{:<14} {:<16} {}", d.id, d.kind.to_string(), d.anchor);
    }
    Ok(())
}
