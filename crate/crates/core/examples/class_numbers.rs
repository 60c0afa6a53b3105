//! Class numbers from reduced forms and fundamental units from continued
//! fractions.
use trigres::arith::primes_in;
use trigres::quadratic::{class_number_minus_p, class_number_real, fundamental_unit, reduced_forms_definite};

fn main() -> trigres::Result<()> {
    println!("reduced forms of discriminant -84:");
    for f in reduced_forms_definite(-84) {
        println!("  ({}, {}, {})", f.a, f.b, f.c);
    }
    println!("{:>4} {:>6} {:>5} {:>5}  eps", "p", "h(-p)", "h(p)", "N");
    for p in primes_in(3, 60) {
        let u = fundamental_unit(p)?;
        println!(
            "{p:>4} {:>6} {:>5} {:>5}  {}",
            class_number_minus_p(p)?,
            class_number_real(p)?,
            u.norm,
            u.unit
        );
    }
    Ok(())
}
