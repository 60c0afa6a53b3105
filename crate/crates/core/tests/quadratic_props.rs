mod common;

use proptest::prelude::*;
use rug::{Integer, Rational};
use trigres::arith::{char_sum_interval, half_factorial_mod, jacobi_i64, primes_in};
use trigres::quadratic::{
    class_number_imag, disc_imag, disc_minus_3p, fundamental_unit, quad_mul, st_from_unit, QuadElem,
};

use common::brute_force_unit;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-200i64..200, 1i64..12).prop_map(|(n, d)| Rational::from((n, d)))
}

proptest! {
    #[test]
    fn norm_is_multiplicative(
        d in prop::sample::select(vec![-23i64, -3, -1, 2, 3, 5, 7, 79, 997]),
        a in small_rational(), b in small_rational(), c in small_rational(), e in small_rational(),
    ) {
        let x = QuadElem::new(d, a, b).unwrap();
        let y = QuadElem::new(d, c, e).unwrap();
        let xy = quad_mul(&x, &y).unwrap();
        prop_assert_eq!(xy.norm(), x.norm() * y.norm());
    }
}

#[test]
fn unit_is_minimal() {
    for p in primes_in(3, 50) {
        let u = fundamental_unit(p).unwrap();
        let brute = brute_force_unit(p, 1_000_000).expect("unit within height");
        assert_eq!((u.unit.a().clone(), u.unit.b().clone()), brute, "p={p}");
    }
    let u = fundamental_unit(5).unwrap();
    assert_eq!(u.unit.a(), &Rational::from((1, 2)));
    assert_eq!(u.norm, -1);
    assert_eq!(u.h_real, 1);
}

#[test]
fn norm_law_for_one_mod_four() {
    for p in primes_in(5, 500).into_iter().filter(|p| p % 4 == 1) {
        let u = fundamental_unit(p).unwrap();
        assert_eq!(u.norm, -1, "p={p}");
        if u.h_real % 2 == 1 {
            let n = Rational::from(u.a_p() * u.a_p()) - Rational::from(u.b_p() * u.b_p()) * p;
            assert_eq!(n, -1, "p={p}");
        }
    }
}

#[test]
fn st_relation() {
    for p in primes_in(3, 500).into_iter().filter(|p| p % 4 == 3) {
        let u = fundamental_unit(p).unwrap();
        let (a, b) = u.unit_power().integer_coords().unwrap();
        assert_eq!(Integer::from(&a * &a) - Integer::from(&b * &b) * p, 1, "p={p}");
        let st = st_from_unit(&u).unwrap();
        let lhs = Integer::from(&st.s * &st.s) - Integer::from(&st.t * &st.t) * p;
        assert_eq!(lhs, 2 * jacobi_i64(2, p).unwrap().value(), "p={p}");
    }
}

#[test]
fn class_number_cross_oracle() {
    let third = Rational::from((1, 3));
    let quarter = Rational::from((1, 4));
    for p in primes_in(5, 2000).into_iter().filter(|p| p % 4 == 1) {
        let h = class_number_imag(disc_imag(p).unwrap()).unwrap() as i64;
        assert_eq!(h, 2 * char_sum_interval(p, &quarter).unwrap(), "p={p}");
        let h3 = class_number_imag(disc_minus_3p(p).unwrap()).unwrap() as i64;
        assert_eq!(h3, 2 * char_sum_interval(p, &third).unwrap(), "p={p}");
    }
}

#[test]
fn twice_a_p_congruence() {
    for p in primes_in(5, 2000).into_iter().filter(|p| p % 4 == 1) {
        let u = fundamental_unit(p).unwrap();
        let two_a = Rational::from(u.a_p() * 2u32);
        assert_eq!(two_a.denom(), &1, "p={p}");
        let lhs = Integer::from(two_a.numer()).modulo(&Integer::from(p));
        let rhs = Integer::from(-2 * half_factorial_mod(p).unwrap() as i64).modulo(&Integer::from(p));
        assert_eq!(lhs, rhs, "p={p}");
    }
}

#[test]
fn p79_example() {
    let u = fundamental_unit(79).unwrap();
    assert_eq!(u.unit.to_string(), "80+9√79");
    assert_eq!(u.h_real, 3);
    let st = st_from_unit(&u).unwrap();
    assert_eq!((st.s.to_u32(), st.t.to_u32()), (Some(1431), Some(161)));
    assert_eq!(class_number_imag(disc_imag(79).unwrap()).unwrap(), 5);
}
