//! `S_p` at roots of unity and quadratic Gauss sums.
use trigres::numerics::{gauss_sum, s_poly_at_root};

fn main() -> trigres::Result<()> {
    let bits = 128;
    for p in [5, 7, 11, 13] {
        let g = gauss_sum(p, 1, bits)?;
        println!("G({p}) = {:.20}", g);
    }
    for (j, m) in [(1, 4), (1, 3), (1, 6), (1, 1)] {
        let s = s_poly_at_root(13, j, m, bits)?;
        println!("S_13(e^(2pi i {j}/{m})) = {s:.20}");
    }
    Ok(())
}
