//! Legendre/Jacobi symbols, residue tables and character sums.
use rug::{Integer, Rational};
use trigres::arith::{char_sum_alternating, char_sum_interval, jacobi, jacobi_i64, residue_table};

fn main() -> trigres::Result<()> {
    let p = 29;
    let table = residue_table(p)?;
    println!("quadratic residues mod {p}: {:?}", table.qr_set());
    println!("(2/29) = {}", jacobi_i64(2, p)?.value());
    println!("(1001/9907) = {}", jacobi(&Integer::from(1001), &Integer::from(9907))?.value());

    // h(-p) = 2 * sum_{k < p/4} (k/p) for p = 1 mod 4
    let quarter = char_sum_interval(p, &Rational::from((1, 4)))?;
    println!("sum_(k<p/4) (k/p) = {quarter}, so h(-29) = {}", 2 * quarter);
    println!("alternating sum (-1)^k (k/p) = {}", char_sum_alternating(p)?);
    Ok(())
}
