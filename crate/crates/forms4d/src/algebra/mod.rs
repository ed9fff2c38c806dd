//! The pointwise 16-dimensional algebra of nonhomogeneous differential
//! forms over a 4D chart, parameterized by a metric at a point.

mod blade;
mod metric;
mod multivector;
mod oracle;
mod product;

pub use blade::{
    blade_label, blades_of_grade, bivector_index, covector_index, mask_indices, perm_sign,
    tuple_to_blade, wedge_blades, BLADE_COUNT, BLADE_GRADES, BLADE_MASKS, DIM, MASK_TO_INDEX,
    PERMUTATIONS4,
};
pub use metric::Metric;
pub use multivector::Multivector;
pub use oracle::clifford_mul_oracle;
pub use product::{
    clifford_mul, com, commutator, conjugate, exp_bivector, inverse, is_spin,
    INVERSE_RCOND_MIN, UNIT_BIVECTOR_TOL,
};
