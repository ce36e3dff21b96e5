//! Shared fixtures for the criterion benches.

use pjop_core::{PrecisionConfig, RecurrenceTable, WeightParams};

/// `(1, 1, 0.01)`, the reference parameters of the benches.
pub fn reference_params() -> WeightParams {
    WeightParams::new(1.0, 1.0, 0.01).expect("valid parameters")
}

pub fn reference_table(n_max: usize) -> RecurrenceTable {
    RecurrenceTable::compute(&reference_params(), n_max, PrecisionConfig::default())
        .expect("table build")
        .0
}
