//! Floating-point evaluation: special functions, symbolic expressions,
//! the iterated-residue oracle for `ω^{G/P}` and a critical-line zero scan.

pub mod dd;
pub mod eval;
pub mod fe;
pub mod residue;
pub mod scan;
pub mod special;

pub use eval::{eval_expression, eval_value, ComplexVal, EvalReport, KahanSum};
pub use fe::{normalized_reflection, sample_symmetry, z_reflection, FeSample};
pub use residue::{
    residue_oracle, residue_oracle_batch, residue_oracle_ordered, sample_points,
    with_generic_point, ResidueReport,
};
pub use scan::{scan_zeros, OffLineMinimum, ScanReport, ZeroBracket};
pub use special::{gamma, ln_gamma, xi_completed, zeta};
