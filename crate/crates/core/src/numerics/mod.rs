//! Arbitrary-precision evaluation: exact-angle trigonometry, roots of
//! unity, Gauss sums, `S_p(x)`, tolerance policy and quadratic recognition.

mod policy;
mod recognize;
mod spoly;
mod trig;

pub use policy::{near_equal, PrecisionPolicy, DEFAULT_BITS};
pub use recognize::{recognize_quadratic, RECOGNIZE_MIN_BITS};
pub use spoly::{gauss_sum, s_poly_at_root, s_poly_eval, s_poly_minus_eval};
pub use trig::{
    residual, root_of_unity, trig_complex, trig_pi, trig_pi_complex, BigComplex, BigReal,
    PiRational, TrigKind, MIN_BITS,
};
