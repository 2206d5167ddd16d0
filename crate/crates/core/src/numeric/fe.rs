//! Numeric functional-equation checks on seeded random points.

use num_complex::Complex64;

use super::eval::eval_expression;
use super::residue::with_generic_point;
use crate::error::Result;
use crate::symexpr::ZetaExpression;
use crate::zeta::ZetaBundle;

/// Worst relative defect over a sample and where it occurred.
#[derive(Debug, Clone, PartialEq)]
pub struct FeSample {
    pub points: usize,
    pub worst: f64,
    pub worst_at: Complex64,
}

impl FeSample {
    pub fn passed(&self, tolerance: f64) -> bool {
        self.worst < tolerance
    }
}

/// `max |f(σ(s)) − f(s)| / |f(s)|` over `count` seeded points with
/// `|s| ≤ radius`; points near a pole of either side are redrawn.
pub fn sample_symmetry(
    e: &ZetaExpression,
    sigma: impl Fn(Complex64) -> Complex64,
    seed: u64,
    count: usize,
    radius: f64,
) -> Result<FeSample> {
    let mut worst = 0.0f64;
    let mut worst_at = Complex64::new(0.0, 0.0);
    for i in 0..count as u64 {
        let (s, (a, b)) =
            with_generic_point(seed.wrapping_mul(1_000_003).wrapping_add(i), radius, |s| {
                Ok((
                    eval_expression(e, s, None)?.value,
                    eval_expression(e, sigma(s), None)?.value,
                ))
            })?;
        let rel = (b - a).norm() / a.norm();
        if i == 0 || rel.is_nan() || rel > worst {
            worst = rel;
            worst_at = s;
        }
    }
    Ok(FeSample {
        points: count,
        worst,
        worst_at,
    })
}

/// `Z_p(−c_p − s)` against `Z_p(s)`.
pub fn z_reflection(bundle: &ZetaBundle, seed: u64, count: usize, radius: f64) -> Result<FeSample> {
    let c = bundle.c as f64;
    sample_symmetry(&bundle.z, |s| -s - c, seed, count, radius)
}

/// `ξ^{G/P}(1 − s)` against `ξ^{G/P}(s)` for the normalized zeta.
pub fn normalized_reflection(
    normalized: &ZetaExpression,
    seed: u64,
    count: usize,
    radius: f64,
) -> Result<FeSample> {
    sample_symmetry(normalized, |s| 1.0 - s, seed, count, radius)
}
