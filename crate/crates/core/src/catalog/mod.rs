//! The registry of checkable identities, their parameter schemas and the
//! uniform check protocol.

mod check;
mod eval;
mod params;
mod registry;

pub use check::{
    check, check_theorem_family, digits_for, format_float, sample_params, sample_params_for_index,
    CheckRecord, CheckResult, FAMILIES, SAMPLE_PRIME_MAX,
};
pub use eval::Side;
pub use params::{CRational, CheckParams, Exclusion, Index, Offset, Schema, EXCLUSION_MARGIN};
pub use registry::{identity_ids, list_identities, lookup, CheckKind, IdentityDescriptor};

