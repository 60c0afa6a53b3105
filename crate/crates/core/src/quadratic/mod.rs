//! Exact arithmetic in quadratic fields, units, class numbers and the
//! Pell-type equations used by the conjecture scanners.

mod elem;
mod forms;
mod pell;
mod unit;

pub use elem::{is_squarefree, quad_mul, quad_pow, QuadElem};
pub use forms::{
    class_number_imag, class_number_minus_p, class_number_real, class_number_real_field,
    disc_imag, disc_minus_3p, disc_real, field_discriminant, form_cycles,
    is_fundamental_discriminant, narrow_class_number, reduced_forms_definite,
    reduced_forms_indefinite, BinaryForm,
};
pub use pell::{pell_like_solve, represent_16x2_3y2};
pub use unit::{field_unit, fundamental_unit, st_from_unit, st_values, StData, UnitData};
