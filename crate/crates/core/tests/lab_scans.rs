use trigres::lab::{
    explore_s_poly, hypothesis, scan_conjecture, scan_eq43, scan_h_csc, Prediction, ScanRange, Verdict,
    CONJECTURE_IDS,
};
use trigres::numerics::PrecisionPolicy;
use trigres::Error;

fn scan(id: &str, lo: u64, hi: u64) -> Vec<trigres::lab::ConjectureReport> {
    scan_conjecture(id, &ScanRange::new(lo, hi).unwrap(), &PrecisionPolicy::default()).unwrap()
}

#[test]
fn scans_stay_inside_hypotheses() {
    for id in CONJECTURE_IDS {
        let h = hypothesis(id).unwrap();
        for r in scan(id, 5, 300) {
            assert!(r.p >= h.min && h.residues.contains(&(r.p % h.modulus)), "{id} p={}", r.p);
        }
    }
}

#[test]
fn tenth_roots() {
    let r = scan("5.5", 5, 500);
    assert!(r.iter().all(|r| r.pass()));
    assert!(r.iter().all(|r| r.p % 40 == 21 || r.p % 40 == 29));
    assert_eq!(r.len() % 4, 0);
}

#[test]
fn sign_conditions() {
    for id in ["5.3iii", "5.3iv"] {
        let r = scan(id, 5, 500);
        assert!(!r.is_empty());
        for rep in &r {
            assert!(matches!(rep.predicted, Prediction::Sign { .. }));
            assert_eq!(rep.verdict, Verdict::Pass, "{id} p={}", rep.p);
        }
    }
}

#[test]
fn pell_representation_forms() {
    assert!(scan("5.3ii", 5, 500).iter().all(|r| r.pass()));
    let r = scan("5.3i", 13, 13);
    assert!(r[0].notes.iter().any(|n| n.contains("x = 2, y = 1")));
    assert_eq!(r[0].predicted.to_string(), "e^(2pi i 1/4)*(2*sqrt3 - sqrt13)");
}

#[test]
fn least_solution_failures_carry_orbit_note() {
    let r = scan("5.2", 107, 107);
    assert!(r.iter().all(|r| r.verdict == Verdict::Fail));
    assert!(r[0].notes.iter().any(|n| n.contains("^3")), "{:?}", r[0].notes);
}

#[test]
fn closed_forms() {
    let policy = PrecisionPolicy::default();
    let h = scan_h_csc(&ScanRange::new(5, 499).unwrap(), &policy).unwrap();
    assert_eq!(h.len(), 24);
    assert!(h.iter().all(|r| r.pass()));
    let e = scan_eq43(&ScanRange::new(5, 499).unwrap(), &policy).unwrap();
    assert!(e.iter().all(|r| r.pass()));
    let p31: Vec<String> = e.iter().filter(|r| r.p == 31).map(|r| r.predicted.to_string()).collect();
    assert_eq!(p31, ["-8", "-8"]);
}

#[test]
fn deterministic_order() {
    let a = scan("5.2", 7, 200);
    let b = scan("5.2", 7, 200);
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
    assert!(a.windows(2).all(|w| w[0].p <= w[1].p));
}

#[test]
fn filters_and_errors() {
    let policy = PrecisionPolicy::default();
    let r = ScanRange::new(5, 400).unwrap().with_filter(24, vec![13]).unwrap();
    let out = scan_conjecture("5.3i", &r, &policy).unwrap();
    assert!(out.iter().all(|x| x.p % 24 == 13));
    let bad = ScanRange::new(5, 400).unwrap().with_filter(8, vec![1, 5]).unwrap();
    assert!(scan_conjecture("5.2", &bad, &policy).is_err());
    assert!(matches!(
        scan_conjecture("5.7", &r, &policy),
        Err(Error::UnknownConjecture { .. })
    ));
    assert!(ScanRange::new(9, 3).is_err());
}

#[test]
fn exploration_never_decides() {
    let policy = PrecisionPolicy::default();
    for p in [13, 17, 79] {
        let r = explore_s_poly(p, (1, 10), &policy).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.predicted, Prediction::None);
    }
    assert!(explore_s_poly(3, (1, 4), &policy).is_err());
}
