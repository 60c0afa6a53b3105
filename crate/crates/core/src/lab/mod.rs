//! Scanners for the open conjectures on `S_p` at roots of unity, two
//! numerically confirmed closed forms and free exploration of `S_p` values.

mod conjectures;
mod extra;
mod report;

pub use conjectures::{hypothesis, scan_conjecture, Hypothesis, CONJECTURE_IDS};
pub use extra::{explore_s_poly, scan_eq43, scan_h_csc, EXPLORE_HEIGHT};
pub use report::{ConjectureReport, PredictedForm, Prediction, ScanRange, Verdict, DEFAULT_PELL_BOUND};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::PrecisionPolicy;

    fn one(id: &str, p: u64) -> Vec<ConjectureReport> {
        scan_conjecture(id, &ScanRange::new(p, p).unwrap(), &PrecisionPolicy::default()).unwrap()
    }

    #[test]
    fn worked_examples() {
        let r = one("5.2", 79);
        assert_eq!(r[0].variant, "omega");
        assert!(r.iter().all(|r| r.pass()), "{r:?}");
        // i (sqrt79 - 5 sqrt3)/2
        assert_eq!(r[0].predicted.to_string(), "e^(2pi i 3/4)*(5/2*sqrt3 - 1/2*sqrt79)");

        let r = one("5.2", 227);
        assert!(r.iter().all(|r| r.pass()));
        let r = one("5.5", 29);
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|r| r.pass()));
        let r = one("5.3i", 13);
        assert!(r.iter().all(|r| r.pass()));
        assert!(r[0].notes.iter().any(|n| n.contains("x = 2, y = 1")));
    }

    #[test]
    fn unknown_and_inconsistent() {
        let range = ScanRange::new(5, 50).unwrap();
        assert!(scan_conjecture("5.9", &range, &PrecisionPolicy::default()).is_err());
        let bad = range.with_filter(4, vec![1]).unwrap();
        assert!(scan_conjecture("5.2", &bad, &PrecisionPolicy::default()).is_err());
    }

    #[test]
    fn missing_pell_is_inconclusive() {
        let range = ScanRange::new(997, 997).unwrap().with_pell_bound(10);
        let r = scan_conjecture("5.3i", &range, &PrecisionPolicy::default()).unwrap();
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|r| r.verdict == Verdict::Inconclusive));
    }
}
