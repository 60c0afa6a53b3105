use proptest::prelude::*;
use rug::{Complex, Float};
use trigres::arith::primes_in;
use trigres::catalog::{
    check, check_theorem_family, identity_ids, list_identities, lookup, sample_params, CRational, CheckKind,
    CheckParams, Index,
};
use trigres::numerics::PrecisionPolicy;
use trigres::Error;

const NUMERIC: &[&str] = &[
    "csc2", "sin_product", "cot_sum", "sincos", "minus_sincos", "csc", "sec", "sin2d", "cos2d", "mix2d", "cot_prod",
    "tan_prod",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn seeded_samples_pass(idx in 0..NUMERIC.len(), seed in any::<u64>()) {
        let id = NUMERIC[idx];
        let policy = PrecisionPolicy::default();
        for params in sample_params(id, seed, 3).unwrap() {
            let r = check(id, &params, &policy).unwrap();
            prop_assert!(r.pass, "{} at {}: {:?}", id, params, r.notes);
        }
    }

    #[test]
    fn sampling_is_deterministic(idx in 0..NUMERIC.len(), seed in any::<u64>()) {
        let id = NUMERIC[idx];
        prop_assert_eq!(sample_params(id, seed, 5).unwrap(), sample_params(id, seed, 5).unwrap());
    }
}

#[test]
fn sec0_pair_cancels() {
    let policy = PrecisionPolicy::default();
    for n in (1..=99).step_by(2) {
        let a = check("sec0a", &CheckParams::with_n(n), &policy).unwrap();
        let b = check("sec0b", &CheckParams::with_n(n), &policy).unwrap();
        let bits = policy.bits;
        let total = Complex::with_val(bits, a.lhs.to_complex(bits).unwrap() + b.lhs.to_complex(bits).unwrap());
        assert!(Float::with_val(bits, total.abs_ref()) < 1e-60, "n={n}");
    }
}

#[test]
fn degenerate_n_equals_one() {
    let policy = PrecisionPolicy::default();
    let x = CRational::real("1/7".parse().unwrap());
    for id in ["csc2", "sin_product", "cot_sum", "sincos", "csc", "sec", "cot_prod", "tan_prod"] {
        let r = check(id, &CheckParams::with_n(1).x(x.clone()), &policy).unwrap();
        assert!(r.pass, "{id}");
    }
}

#[test]
fn tancot_sides_agree() {
    let policy = PrecisionPolicy::default();
    for p in primes_in(5, 199) {
        for a in [1, 2] {
            let r = check("tancot", &CheckParams::with_pa(p, a), &policy).unwrap();
            assert!(r.pass, "p={p} a={a}: {:?}", r.notes);
        }
    }
}

#[test]
fn tan43_at_three() {
    let policy = PrecisionPolicy::default();
    for a in [1, 2] {
        assert!(check("tan43", &CheckParams::with_pa(3, a), &policy).unwrap().pass);
    }
}

#[test]
fn congruences_are_exact() {
    let policy = PrecisionPolicy::default();
    for id in ["wc", "re", "lerch"] {
        let d = lookup(id).unwrap();
        assert_eq!(d.kind, CheckKind::Congruence);
        let r = check(id, &CheckParams::with_p(10_009), &policy).unwrap();
        assert!(r.pass && r.residual.is_none(), "{id}");
    }
}

#[test]
fn rejects_bad_parameters() {
    let policy = PrecisionPolicy::default();
    let at_pole = CheckParams::with_n(3).x(CRational::real(2.into()));
    assert!(check("csc2", &at_pole, &policy).is_err());
    assert!(check("secant", &CheckParams::with_n(4), &policy).is_err());
    assert!(check("cosp", &CheckParams::with_p(13), &policy).is_err());
    assert!(check("tan1", &CheckParams::with_pa(17, 17), &policy).is_err());
    match check("no-such", &CheckParams::with_n(3), &policy) {
        Err(Error::UnknownIdentity { valid, .. }) => assert!(valid.contains("csc2")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn catalog_is_sorted_and_complete() {
    let ids = identity_ids();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for id in NUMERIC.iter().chain(&["secant", "cot2_sum", "cot4_sum", "cosp", "zeta6_relation", "st"]) {
        assert!(ids.contains(id), "{id}");
    }
    for d in list_identities() {
        assert!(!d.anchor.is_empty());
        if let Index::Prime { modulus, residues, .. } = d.schema.index {
            assert!(residues.iter().all(|r| r < &modulus));
        }
    }
}

#[test]
fn families_skip_other_classes() {
    let policy = PrecisionPolicy::default();
    let r = check_theorem_family("1.4", 41, 3, &policy).unwrap();
    let ids: Vec<&str> = r.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, ["tan1", "cot1"]);
    assert!(r.iter().all(|r| r.pass));
    assert!(check_theorem_family("4.1", 19, 1, &policy).is_err());
    assert!(check_theorem_family("1.4", 41, 41, &policy).is_err());
}
