//! Complex `ζ`, `Γ` and the completed `ξ`.
//!
//! `ζ` uses Euler–Maclaurin summation for `Re s ≥ 1/2` and the functional
//! equation below that line; `ln Γ` uses a Lanczos approximation
//! (`g = 7`, nine coefficients) with reflection for `Re z < 1/2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Distance from 0 or 1 below which `ξ` reports its pole.
pub const XI_POLE_RADIUS: f64 = 1e-8;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `B_{2k} / (2k)!` for `k = 1..=15`.
const BERNOULLI_OVER_FACTORIAL: [f64; 15] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
    854_513.0 / 138.0 / 1.124_000_727_777_607_7e21,
    -236_364_091.0 / 2730.0 / 6.204_484_017_332_394e23,
    8_553_103.0 / 6.0 / 4.032_914_611_266_056_5e26,
    -23_749_461_029.0 / 870.0 / 3.048_883_446_117_138_5e29,
    8_615_841_276_005.0 / 14_322.0 / 2.652_528_598_121_910_3e32,
];

/// `ln Γ(z)` on the principal sheet for `Re z ≥ 1/2`; any branch of the
/// logarithm for `Re z < 1/2` (only its exponential is meaningful there).
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

/// Maximum Bernoulli correction depth supported.
pub const MAX_DEPTH: usize = BERNOULLI_OVER_FACTORIAL.len();

/// Truncation point and correction depth used by [`zeta`]: `N = 20 + ⌈|s|⌉`,
/// full depth.
pub fn default_truncation(s: Complex64) -> (usize, usize) {
    (20 + s.norm().ceil() as usize, MAX_DEPTH)
}

/// `ζ(s)` by Euler–Maclaurin summation with the default truncation.
/// Valid for `Re s > −29`, `s ≠ 1`, with cancellation growing like
/// `N^{1−Re s}` on the left half-plane.
pub fn zeta_euler_maclaurin(s: Complex64) -> Complex64 {
    let (n, depth) = default_truncation(s);
    zeta_euler_maclaurin_with(s, n, depth)
}

/// Euler–Maclaurin with `n − 1` explicit terms and `depth` Bernoulli
/// corrections (clamped to [`MAX_DEPTH`]).
pub fn zeta_euler_maclaurin_with(s: Complex64, n: usize, depth: usize) -> Complex64 {
    let n = n.max(1);
    let nf = n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..n {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_pow = (-s * nf.ln()).exp();
    sum += n_pow * nf / (s - 1.0) + 0.5 * n_pow;
    let mut poch = s;
    let mut np = n_pow / nf;
    for (k, b) in BERNOULLI_OVER_FACTORIAL.iter().take(depth).enumerate() {
        sum += *b * poch * np;
        let m = 2.0 * (k as f64 + 1.0);
        poch *= (s + m - 1.0) * (s + m);
        np /= nf * nf;
    }
    sum
}

/// `ζ(s)` for `s ≠ 1`.
pub fn zeta(s: Complex64) -> Complex64 {
    if s.re >= 0.5 {
        return zeta_euler_maclaurin(s);
    }
    let one = Complex64::new(1.0, 0.0);
    let log_factor = s * 2f64.ln() + (s - 1.0) * PI.ln() + ln_gamma(one - s);
    log_factor.exp() * (s * (PI / 2.0)).sin() * zeta_euler_maclaurin(one - s)
}

/// `π^{−s/2} Γ(s/2) ζ(s)` evaluated as written, without using `ξ(s) = ξ(1−s)`.
pub fn xi_via_zeta(s: Complex64) -> Complex64 {
    (ln_gamma(s / 2.0) - s / 2.0 * PI.ln()).exp() * zeta(s)
}

/// The completed zeta function `ξ(s) = π^{−s/2} Γ(s/2) ζ(s)`.
///
/// Evaluated on `Re s ≥ 1/2` directly and elsewhere through `ξ(1 − s)`.
/// Within [`XI_POLE_RADIUS`] of `0` or `1` returns [`Error::XiPole`] with
/// the residue there (`−1` at 0, `+1` at 1).
pub fn xi_completed(s: Complex64) -> Result<Complex64> {
    if s.norm() < XI_POLE_RADIUS {
        return Err(Error::XiPole { at: 0, residue: -1 });
    }
    if (s - 1.0).norm() < XI_POLE_RADIUS {
        return Err(Error::XiPole { at: 1, residue: 1 });
    }
    let s = if s.re < 0.5 {
        Complex64::new(1.0, 0.0) - s
    } else {
        s
    };
    Ok(xi_via_zeta(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn classical_values() {
        assert!(rel(zeta(c(2.0, 0.0)), c(PI * PI / 6.0, 0.0)) < 1e-13);
        assert!(rel(zeta(c(4.0, 0.0)), c(PI.powi(4) / 90.0, 0.0)) < 1e-13);
        assert!(rel(zeta(c(-1.0, 0.0)), c(-1.0 / 12.0, 0.0)) < 1e-12);
        assert!(rel(xi_completed(c(2.0, 0.0)).unwrap(), c(PI / 6.0, 0.0)) < 1e-13);
        assert!(rel(gamma(c(5.0, 0.0)), c(24.0, 0.0)) < 1e-13);
        assert!(rel(gamma(c(0.5, 0.0)), c(PI.sqrt(), 0.0)) < 1e-13);
        assert!(rel(gamma(c(-0.5, 0.0)), c(-2.0 * PI.sqrt(), 0.0)) < 1e-13);
    }

    #[test]
    fn first_nontrivial_zero() {
        assert!(zeta(c(0.5, 14.134_725_141_734_693)).norm() < 1e-10);
    }

    #[test]
    fn gamma_recurrence() {
        for z in [c(0.3, 7.0), c(12.5, -20.0), c(-3.7, 2.0)] {
            let lhs = gamma(z + 1.0);
            let rhs = z * gamma(z);
            assert!(rel(lhs, rhs) < 1e-12, "{z}");
        }
    }

    #[test]
    fn reflection_matches_direct_summation() {
        for s in [c(-2.5, 3.0), c(0.2, 30.0), c(-0.7, -12.0), c(0.45, 0.1)] {
            let reflected = zeta(s);
            let direct = zeta_euler_maclaurin(s);
            assert!(
                rel(reflected, direct) < 1e-9,
                "{s}: {reflected} vs {direct}"
            );
        }
    }

    #[test]
    fn truncation_converges() {
        let s = c(3.0, 10.0);
        let a = zeta_euler_maclaurin_with(s, 15, 8);
        let b = zeta_euler_maclaurin_with(s, 60, MAX_DEPTH);
        assert!(rel(a, b) < 1e-8);
    }

    #[test]
    fn poles_are_reported() {
        assert_eq!(
            xi_completed(c(1e-10, 0.0)),
            Err(Error::XiPole { at: 0, residue: -1 })
        );
        assert_eq!(
            xi_completed(c(1.0, 1e-9)),
            Err(Error::XiPole { at: 1, residue: 1 })
        );
    }

    #[test]
    fn residues_by_contour() {
        for (center, expected) in [(0.0, -1.0), (1.0, 1.0)] {
            let n = 64;
            let r = 1e-3;
            let mut acc = c(0.0, 0.0);
            for j in 0..n {
                let e = Complex64::from_polar(r, 2.0 * PI * j as f64 / n as f64);
                acc += xi_completed(c(center, 0.0) + e).unwrap() * e;
            }
            let res = acc / n as f64;
            assert!((res - c(expected, 0.0)).norm() < 1e-10, "{res}");
        }
    }
}
