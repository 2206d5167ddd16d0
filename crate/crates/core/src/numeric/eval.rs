//! Numeric evaluation of symbolic zeta expressions.
//!
//! Terms are evaluated and summed in double-double arithmetic and the
//! total is rounded to double precision.

use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::dd::{xi_dd, Cdd, Dd};
use crate::error::{Error, Result};
use crate::symexpr::{XiLinear, ZetaExpression, ZetaTerm, Q};

/// Minimum distance in the `s`-plane to a pole of any factor.
pub const POLE_GUARD: f64 = 1e-6;

/// Relative accuracy assumed for one double-double `ξ` evaluation.
pub const XI_RELATIVE_ERROR: f64 = 1e-28;

/// Unit roundoff of double-double arithmetic, `2^{−104}`.
pub const DD_EPSILON: f64 = 4.930_380_657_631_324e-32;

pub type ComplexVal = Complex64;

/// Value of an expression at a point with a first-order error estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub value: ComplexVal,
    pub est_error: f64,
    /// Closest factor to a pole and its distance, when within ten times
    /// [`POLE_GUARD`].
    pub pole_proximity: Option<(String, f64)>,
}

/// Compensated (Neumaier) summation of complex numbers.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier(acc: &mut (f64, f64), x: f64) {
    let (sum, c) = *acc;
    let t = sum + x;
    let c = if sum.abs() >= x.abs() {
        c + ((sum - t) + x)
    } else {
        c + ((x - t) + sum)
    };
    *acc = (t, c);
}

impl KahanSum {
    pub fn new() -> Self {
        KahanSum::default()
    }

    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, z.re);
        neumaier(&mut self.im, z.im);
    }

    pub fn total(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

fn qdd(q: Q) -> Dd {
    Dd::ratio(*q.numer(), *q.denom())
}

fn qf(q: Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Distance from `s` to the zero of `k s + b` given its value `v`.
fn lin_distance(k: i64, v: Complex64) -> f64 {
    if k == 0 {
        v.norm()
    } else {
        v.norm() / k.unsigned_abs() as f64
    }
}

struct Evaluator {
    s: Complex64,
    sd: Cdd,
    xi: HashMap<XiLinear, Cdd>,
    closest: Option<(String, f64)>,
}

impl Evaluator {
    fn note(&mut self, name: impl FnOnce() -> String, d: f64) -> Result<()> {
        if d <= POLE_GUARD {
            return Err(Error::PoleProximity {
                factor: name(),
                distance: d,
            });
        }
        if d <= 10.0 * POLE_GUARD && self.closest.as_ref().is_none_or(|c| d < c.1) {
            self.closest = Some((name(), d));
        }
        Ok(())
    }

    fn affine(&self, k: i64, b: Q) -> Cdd {
        self.sd.scale(Dd::from_i64(k)) + Cdd::real(qdd(b))
    }

    fn xi(&mut self, x: &XiLinear) -> Result<Cdd> {
        if let Some(v) = self.xi.get(x) {
            return Ok(*v);
        }
        let z = self.s * x.k() as f64 + qf(x.h());
        let d = lin_distance(x.k(), z).min(lin_distance(x.k(), z - 1.0));
        self.note(|| format!("ξ({})", x.to_text()), d)?;
        let v = xi_dd(self.affine(x.k(), x.h()))?;
        self.xi.insert(*x, v);
        Ok(v)
    }

    fn term(&mut self, t: &ZetaTerm, weight: &[f64]) -> Result<(Cdd, f64)> {
        let mut v = Cdd::real(qdd(t.coeff));
        let mut rel = 4.0 * DD_EPSILON;
        if !t.expd.is_zero() && !weight.is_empty() {
            let mut e = Cdd::ZERO;
            for (j, tj) in weight.iter().enumerate() {
                e = e
                    + (self.sd.scale(qdd(t.expd.mu1[j])) + Cdd::real(qdd(t.expd.mu0[j])))
                        .scale(Dd::new(*tj));
            }
            v = v * e.exp();
            rel += DD_EPSILON * (8.0 + e.abs_f64());
        }
        for f in &t.den {
            let l = self.affine(f.k(), f.b());
            self.note(|| f.to_text(), lin_distance(f.k(), l.to_c64()))?;
            v = v / l;
            rel += 4.0 * DD_EPSILON;
        }
        for (x, e) in t.xi.iter() {
            let xv = self.xi(x)?;
            v = v * xv.powi(*e);
            rel += XI_RELATIVE_ERROR * e.unsigned_abs() as f64;
        }
        let a = v.abs_f64();
        if !a.is_finite() {
            return Err(Error::Inconsistency(format!(
                "non-finite value of term with ξ-content {}",
                t.xi.to_text()
            )));
        }
        Ok((v, rel * a))
    }
}

/// Evaluates `e` at `s` with `T` given in simple-coroot coordinates
/// (`None` means `T = 0`).
pub fn eval_expression(e: &ZetaExpression, s: ComplexVal, t: Option<&[f64]>) -> Result<EvalReport> {
    let zero_t = [];
    let weight = t.unwrap_or(&zero_t);
    let mut ev = Evaluator {
        s,
        sd: Cdd::from(s),
        xi: HashMap::new(),
        closest: None,
    };
    let mut sum = Cdd::ZERO;
    let mut err = 0.0;
    for term in e.terms() {
        if !weight.is_empty() && weight.len() != term.expd.mu0.len() {
            return Err(Error::InvalidArgument(format!(
                "T has {} coordinates, expected {}",
                weight.len(),
                term.expd.mu0.len()
            )));
        }
        let (v, de) = ev.term(term, weight)?;
        sum = sum + v;
        err += de + DD_EPSILON * sum.abs_f64();
    }
    let value = sum.to_c64();
    Ok(EvalReport {
        value,
        est_error: err + f64::EPSILON * value.norm(),
        pole_proximity: ev.closest,
    })
}

/// Value only.
pub fn eval_value(e: &ZetaExpression, s: ComplexVal) -> Result<ComplexVal> {
    eval_expression(e, s, None).map(|r| r.value)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::symexpr::{ExpDatum, LinFactor, XiProduct};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn empty_expression_is_zero() {
        let r = eval_expression(&ZetaExpression::zero(), c(0.3, 0.1), None).unwrap();
        assert_eq!(r.value, c(0.0, 0.0));
        assert!(r.est_error >= 0.0);
    }

    #[test]
    fn single_term() {
        // ξ(2)/(s − 1) at s = 3
        let xi = XiProduct::single(XiLinear::int(0, 2), 1);
        let term = ZetaTerm::new(
            Q::from_integer(1),
            None,
            ExpDatum::zero(1),
            vec![LinFactor::int(1, -1)],
            xi,
        );
        let e = ZetaExpression::new(vec![term]);
        let v = eval_value(&e, c(3.0, 0.0)).unwrap();
        assert!((v - c(PI / 12.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn pole_proximity_names_factor() {
        let term = ZetaTerm::new(
            Q::from_integer(1),
            None,
            ExpDatum::zero(1),
            vec![LinFactor::int(2, -1)],
            XiProduct::new(),
        );
        let e = ZetaExpression::new(vec![term]);
        match eval_expression(&e, c(0.5 + 1e-8, 0.0), None) {
            Err(Error::PoleProximity { factor, distance }) => {
                assert_eq!(factor, "(2s-1)");
                assert!(distance < 1e-6);
            }
            other => panic!("{other:?}"),
        }
        let r = eval_expression(&e, c(0.5 + 3e-6, 0.0), None).unwrap();
        assert!(r.pole_proximity.is_some());
    }

    #[test]
    fn compensated_sum() {
        let mut s = KahanSum::new();
        for x in [1e16, 1.0, -1e16] {
            s.add(c(x, 0.0));
        }
        assert_eq!(s.total(), c(1.0, 0.0));
    }
}
