use crate::error::{invalid, Error, Result};

fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Least positive `(x, y)` with `A x^2 + B = p y^2`, minimal in `y` and then
/// `x`, searching `1 <= y <= y_bound`. `None` if the bound is exhausted.
pub fn pell_like_solve(a: u64, b: i64, p: u64, y_bound: u64) -> Option<(u64, u64)> {
    if a == 0 {
        return None;
    }
    let (a, b, p) = (a as i128, b as i128, p as i128);
    for y in 1..=y_bound as i128 {
        let rhs = p * y * y - b;
        if rhs <= 0 || rhs % a != 0 {
            continue;
        }
        let x2 = (rhs / a) as u128;
        let x = isqrt_u128(x2);
        if x > 0 && x * x == x2 {
            return Some((x as u64, y as u64));
        }
    }
    None
}

/// The unique positive `(x, y)` with `16 x^2 + 3 y^2 = p`, verified by
/// enumerating every candidate.
pub fn represent_16x2_3y2(p: u64) -> Result<(u64, u64)> {
    if p % 24 != 19 {
        return invalid(format!("expected p = 19 (mod 24), got {p}"));
    }
    let mut found = Vec::new();
    let mut x = 1u64;
    while 16 * x * x < p {
        let rest = p - 16 * x * x;
        if rest % 3 == 0 {
            let y2 = rest / 3;
            let y = isqrt_u128(y2 as u128) as u64;
            if y > 0 && y * y == y2 {
                found.push((x, y));
            }
        }
        x += 1;
    }
    match found.as_slice() {
        [one] => Ok(*one),
        [] => Err(Error::Integrity(format!("{p} is not of the form 16x^2 + 3y^2"))),
        _ => Err(Error::Integrity(format!(
            "{p} has {} representations as 16x^2 + 3y^2",
            found.len()
        ))),
    }
}
