//! Enumeration budgets.

/// Caps on the size of brute-force work the library will attempt.
///
/// The defaults keep every operation at desk scale: full group enumeration up
/// to a million elements, conjugation-orbit sweeps up to a hundred thousand,
/// and polynomial enumerations up to a million coefficient tuples.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Maximum group order for element-by-element enumeration.
    pub max_group_order: u64,
    /// Maximum group order for full conjugation-orbit class computation.
    pub max_orbit_group_order: u64,
    /// Maximum number of coefficient tuples scanned when enumerating polynomials.
    pub max_poly_scan: u64,
    /// Maximum field size accepted when constructing a [`crate::Field`].
    pub max_field_size: u64,
    /// Work-step cap for symbolic class enumeration.
    pub max_class_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_group_order: 1_000_000,
            max_orbit_group_order: 100_000,
            max_poly_scan: 1_000_000,
            max_field_size: 1 << 16,
            max_class_steps: 10_000_000,
        }
    }
}
