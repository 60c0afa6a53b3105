//! Everything the library knows about p = 79: class numbers, the unit and
//! its class-number power, s_p, t_p, and S_79(i).
use rug::Complex;
use trigres::numerics::{recognize_quadratic, s_poly_at_root};
use trigres::quadratic::{class_number_minus_p, fundamental_unit, st_from_unit};

fn main() -> trigres::Result<()> {
    let p = 79;
    let u = fundamental_unit(p)?;
    let st = st_from_unit(&u)?;
    println!("h(-79) = {}", class_number_minus_p(p)?);
    println!("h(79)  = {}", u.h_real);
    println!("eps    = {}", u.unit);
    println!("eps^h  = {}", u.unit_power());
    println!("s = {}, t = {}", st.s, st.t);

    let s = s_poly_at_root(p, 1, 4, 256)?;
    let z = Complex::with_val(256, (-1, 1)) * &s;
    println!("(i-1) S_79(i) = {z:.30}");
    if let Some((a, b)) = recognize_quadratic(z.real(), p, 1_000_000)? {
        println!("recognized as {a} + ({b}) sqrt79");
    }
    Ok(())
}
