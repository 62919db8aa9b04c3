//! Branches of plane curves as fractional power series, integer relations
//! between series, and the homothety test built on them.

mod field;
mod homothety;
mod newton;
mod relation;
mod series;

pub use field::{FieldElement, NumberField};
pub use homothety::{homothety_check, homothety_scan, HomothetyOutcome, HomothetyScan, MAX_SCAN_BOUND};
pub use newton::{puiseux_expand, PuiseuxBranch};
pub use relation::find_integer_relation;
pub use series::{series_power_twist, FractionalSeries, DEFAULT_RELATIVE_PRECISION};
