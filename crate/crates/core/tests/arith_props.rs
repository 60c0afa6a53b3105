use proptest::prelude::*;
use rug::{Integer, Rational};
use trigres::arith::{
    char_sum_alternating, half_factorial_mod, jacobi, jacobi_i64, primes_in, qr_count_interval, Bound, SymbolValue,
};
use trigres::quadratic::{class_number_imag, disc_imag};

fn odd_n() -> impl Strategy<Value = u64> {
    (0u64..50).prop_map(|k| 2 * k + 1)
}

proptest! {
    #[test]
    fn jacobi_is_multiplicative(a in -50i64..=50, b in -50i64..=50, n in odd_n()) {
        let ab = jacobi_i64(a * b, n).unwrap().value();
        let prod = jacobi_i64(a, n).unwrap().value() * jacobi_i64(b, n).unwrap().value();
        prop_assert_eq!(ab, prod);
    }

    #[test]
    fn big_and_small_jacobi_agree(a in -10_000i64..10_000, n in odd_n()) {
        let big = jacobi(&Integer::from(a), &Integer::from(n)).unwrap();
        prop_assert_eq!(big, jacobi_i64(a, n).unwrap());
    }
}

#[test]
fn euler_criterion() {
    for p in primes_in(3, 997) {
        for a in 1..p {
            let e = Integer::from(a).pow_mod(&Integer::from((p - 1) / 2), &Integer::from(p)).unwrap();
            let expect = match jacobi_i64(a as i64, p).unwrap() {
                SymbolValue::One => Integer::from(1),
                _ => Integer::from(p - 1),
            };
            assert_eq!(e, expect, "a={a} p={p}");
        }
    }
}

#[test]
fn jacobi_at_one_is_one() {
    for a in -5..=5 {
        assert_eq!(jacobi_i64(a, 1).unwrap(), SymbolValue::One);
    }
}

#[test]
fn wilson_square() {
    for p in primes_in(5, 997).into_iter().filter(|p| p % 4 == 1) {
        let h = half_factorial_mod(p).unwrap();
        assert_eq!(h * h % p, p - 1, "p={p}");
    }
}

#[test]
fn residues_and_nonresidues_partition() {
    let one = Rational::from(1);
    for p in primes_in(3, 400) {
        let plus = qr_count_interval(p, &one, SymbolValue::One, Bound::Closed).unwrap();
        let minus = qr_count_interval(p, &one, SymbolValue::MinusOne, Bound::Closed).unwrap();
        assert_eq!(plus + minus, p - 1);
        assert_eq!(plus, (p - 1) / 2);
    }
}

#[test]
fn alternating_sum_is_class_number() {
    for p in primes_in(5, 997).into_iter().filter(|p| p % 4 == 1) {
        let h = class_number_imag(disc_imag(p).unwrap()).unwrap() as i64;
        assert_eq!(char_sum_alternating(p).unwrap(), jacobi_i64(2, p).unwrap().value() * h, "p={p}");
    }
}

#[test]
fn rejects_composites_and_even_moduli() {
    assert!(half_factorial_mod(15).is_err());
    assert!(jacobi_i64(3, 8).is_err());
    assert!(char_sum_alternating(7).is_err());
}
