//! Sign-change scan of a normalized zeta along `Re s = 1/2`.
//!
//! A normalized expression `f` satisfies `f(1 − s) = f(s)` and has real
//! coefficients, so `f(1/2 + it)` is real and its zeros on the line show up
//! as sign changes of the real part.

use num_complex::Complex64;

use super::eval::eval_expression;
use crate::error::{Error, Result};
use crate::symexpr::ZetaExpression;

/// Abscissae of the off-line grid.
pub const OFF_LINE_SIGMAS: [f64; 3] = [0.75, 1.0, 1.5];

const BISECTION_STEPS: usize = 60;
const BISECTION_WIDTH: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroBracket {
    pub t_lo: f64,
    pub t_hi: f64,
    pub t_mid: f64,
    /// `|f(1/2 + i t_mid)|`.
    pub value_abs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OffLineMinimum {
    pub sigma: f64,
    pub t: f64,
    pub min_abs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub t_max: f64,
    pub step: f64,
    pub zeros: Vec<ZeroBracket>,
    /// Grid points skipped because of a nearby pole.
    pub skipped: Vec<f64>,
    /// `max |Im f| / max |f|` over the sampled line.
    pub imag_ratio: f64,
    pub off_line: Vec<OffLineMinimum>,
}

fn on_line(e: &ZetaExpression, t: f64) -> Result<Complex64> {
    eval_expression(e, Complex64::new(0.5, t), None).map(|r| r.value)
}

fn is_pole(e: &Error) -> bool {
    matches!(e, Error::PoleProximity { .. } | Error::XiPole { .. })
}

fn bisect(e: &ZetaExpression, mut lo: f64, mut hi: f64, mut f_lo: f64) -> Result<ZeroBracket> {
    for _ in 0..BISECTION_STEPS {
        if hi - lo <= BISECTION_WIDTH {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = on_line(e, mid)?.re;
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let t_mid = 0.5 * (lo + hi);
    Ok(ZeroBracket {
        t_lo: lo,
        t_hi: hi,
        t_mid,
        value_abs: on_line(e, t_mid)?.norm(),
    })
}

/// Scans `t ∈ [0, t_max]` with the given step.
pub fn scan_zeros(e: &ZetaExpression, t_max: f64, step: f64) -> Result<ScanReport> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "step must be positive, got {step}"
        )));
    }
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    let n = (t_max / step).floor() as usize;
    let grid: Vec<f64> = (0..=n).map(|i| i as f64 * step).collect();

    let mut samples: Vec<(f64, f64)> = Vec::with_capacity(grid.len());
    let mut skipped = Vec::new();
    let mut max_abs = 0.0f64;
    let mut max_imag = 0.0f64;
    for &t in &grid {
        match on_line(e, t) {
            Ok(v) => {
                max_abs = max_abs.max(v.norm());
                max_imag = max_imag.max(v.im.abs());
                samples.push((t, v.re));
            }
            Err(err) if is_pole(&err) => skipped.push(t),
            Err(err) => return Err(err),
        }
    }

    let mut zeros = Vec::new();
    for pair in samples.windows(2) {
        let ((t0, f0), (t1, f1)) = (pair[0], pair[1]);
        if (t1 - t0) > 1.5 * step {
            continue;
        }
        if f0 == 0.0 {
            zeros.push(ZeroBracket {
                t_lo: t0,
                t_hi: t0,
                t_mid: t0,
                value_abs: 0.0,
            });
        } else if (f0 < 0.0) != (f1 < 0.0) && f1 != 0.0 {
            zeros.push(bisect(e, t0, t1, f0)?);
        }
    }

    let mut off_line = Vec::new();
    for sigma in OFF_LINE_SIGMAS {
        let mut best: Option<OffLineMinimum> = None;
        for &t in &grid {
            match eval_expression(e, Complex64::new(sigma, t), None) {
                Ok(r) => {
                    let a = r.value.norm();
                    if best.as_ref().is_none_or(|b| a < b.min_abs) {
                        best = Some(OffLineMinimum {
                            sigma,
                            t,
                            min_abs: a,
                        });
                    }
                }
                Err(err) if is_pole(&err) => {}
                Err(err) => return Err(err),
            }
        }
        off_line.extend(best);
    }

    Ok(ScanReport {
        t_max,
        step,
        zeros,
        skipped,
        imag_ratio: if max_abs > 0.0 {
            max_imag / max_abs
        } else {
            0.0
        },
        off_line,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_grid() {
        let e = ZetaExpression::zero();
        assert!(matches!(
            scan_zeros(&e, 10.0, 0.0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            scan_zeros(&e, 0.0, 0.1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            scan_zeros(&e, 10.0, f64::NAN),
            Err(Error::InvalidArgument(_))
        ));
    }
}
