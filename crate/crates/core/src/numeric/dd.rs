//! Double-double arithmetic (about 32 significant digits) and the completed
//! zeta function evaluated in it.
//!
//! Zeta expressions cancel heavily: for the larger groups the terms of
//! `Z_p(s)` can exceed the sum by ten orders of magnitude, so expressions
//! are evaluated in this representation and rounded at the end.

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::special::XI_POLE_RADIUS;
use crate::error::{Error, Result};

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };
    pub const LN2: Dd = Dd {
        hi: std::f64::consts::LN_2,
        lo: 2.319_046_813_846_299_6e-17,
    };

    pub const fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn norm(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// `n / d`, correctly rounded to double-double.
    pub fn ratio(n: i64, d: i64) -> Dd {
        Dd::from_i64(n) / Dd::from_i64(d)
    }

    pub fn from_i64(n: i64) -> Dd {
        let hi = n as f64;
        let lo = (n - hi as i64) as f64;
        Dd::norm(hi, lo)
    }

    pub fn from_big_rational(r: &BigRational) -> Dd {
        let hi = r.to_f64().unwrap_or(0.0);
        let rest = r - BigRational::from_float(hi).unwrap_or_else(BigRational::zero);
        Dd::norm(hi, rest.to_f64().unwrap_or(0.0))
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        Dd::norm(p, e + self.lo * b)
    }

    /// Multiplication by `2^k`, exact barring overflow.
    pub fn ldexp(self, k: i32) -> Dd {
        let f = 2f64.powi(k);
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    pub fn sqr(self) -> Dd {
        self * self
    }

    /// `e^x − 1` for `|x| ≤ ln 2 / 2`.
    fn expm1_reduced(x: Dd) -> Dd {
        const SQUARINGS: i32 = 8;
        let r = x.ldexp(-SQUARINGS);
        let mut term = r;
        let mut sum = r;
        for i in 2..=12 {
            term = term * r / Dd::new(i as f64);
            sum = sum + term;
        }
        for _ in 0..SQUARINGS {
            sum = sum * (sum + Dd::new(2.0));
        }
        sum
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::new(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / Dd::LN2.hi).round();
        let r = self - Dd::LN2.mul_f64(k);
        (Dd::expm1_reduced(r) + Dd::ONE).ldexp(k as i32)
    }

    /// Natural logarithm of a positive number.
    pub fn ln(self) -> Dd {
        let mut y = Dd::new(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Dd::ONE;
        }
        y
    }

    /// `(sin x, cos x)`.
    pub fn sin_cos(self) -> (Dd, Dd) {
        let half_pi = Dd::PI.ldexp(-1);
        let k = (self.hi / half_pi.hi).round();
        let r = self - half_pi.mul_f64(k);
        let r2 = r.sqr();
        let mut s = r;
        let mut c = Dd::ONE;
        let mut ts = r;
        let mut tc = Dd::ONE;
        for n in 1..=14 {
            let a = (2 * n) as f64;
            ts = -(ts * r2) / Dd::new(a * (a + 1.0));
            tc = -(tc * r2) / Dd::new((a - 1.0) * a);
            s = s + ts;
            c = c + tc;
        }
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    /// `atan2(y, x)` refined from the double-precision angle.
    pub fn atan2(y: Dd, x: Dd) -> Dd {
        let t = Dd::new(y.hi.atan2(x.hi));
        let (s, c) = t.sin_cos();
        t + (y * c - x * s) / (x * c + y * s)
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::new(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Dd::norm(s, e + f)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        Dd::norm(p, e + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Dd { hi: q1, lo: q2 } + Dd::new(q3)
    }
}

/// Complex double-double.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: Cdd = Cdd {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    pub fn new(re: Dd, im: Dd) -> Cdd {
        Cdd { re, im }
    }

    pub fn real(re: Dd) -> Cdd {
        Cdd { re, im: Dd::ZERO }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn norm_sqr(self) -> Dd {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs_f64(self) -> f64 {
        self.to_c64().norm()
    }

    pub fn scale(self, k: Dd) -> Cdd {
        Cdd::new(self.re * k, self.im * k)
    }

    pub fn recip(self) -> Cdd {
        let d = self.norm_sqr();
        Cdd::new(self.re / d, -self.im / d)
    }

    pub fn exp(self) -> Cdd {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        Cdd::new(m * c, m * s)
    }

    /// Principal logarithm.
    pub fn ln(self) -> Cdd {
        Cdd::new(self.norm_sqr().ln().ldexp(-1), Dd::atan2(self.im, self.re))
    }

    pub fn powi(self, n: i64) -> Cdd {
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Cdd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl From<Complex64> for Cdd {
    fn from(z: Complex64) -> Cdd {
        Cdd::new(Dd::new(z.re), Dd::new(z.im))
    }
}

impl Neg for Cdd {
    type Output = Cdd;
    fn neg(self) -> Cdd {
        Cdd::new(-self.re, -self.im)
    }
}

impl Add for Cdd {
    type Output = Cdd;
    fn add(self, b: Cdd) -> Cdd {
        Cdd::new(self.re + b.re, self.im + b.im)
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    fn sub(self, b: Cdd) -> Cdd {
        Cdd::new(self.re - b.re, self.im - b.im)
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    fn mul(self, b: Cdd) -> Cdd {
        Cdd::new(
            self.re * b.re - self.im * b.im,
            self.re * b.im + self.im * b.re,
        )
    }
}

impl Div for Cdd {
    type Output = Cdd;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, b: Cdd) -> Cdd {
        self * b.recip()
    }
}

/// Bernoulli correction depth of the double-double evaluators.
const DEPTH: usize = 20;

struct Tables {
    /// `B_{2k} / (2k)!`, `k = 1..=DEPTH`.
    em: Vec<Dd>,
    /// `B_{2k} / (2k (2k − 1))`.
    stirling: Vec<Dd>,
    ln_pi: Dd,
    half_ln_2pi: Dd,
}

/// `B_0, …, B_n` by the Akiyama–Tanigawa algorithm.
fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            a[j - 1] = BigRational::from_integer(BigInt::from(j)) * (&a[j - 1] - &a[j]);
        }
        out.push(a[0].clone());
    }
    // The algorithm yields B_1 = +1/2; only even indices are used.
    out
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let b = bernoulli(2 * DEPTH);
        let mut fact = BigRational::one();
        let mut em = Vec::with_capacity(DEPTH);
        let mut stirling = Vec::with_capacity(DEPTH);
        for k in 1..=DEPTH {
            let n = 2 * k;
            fact *= BigRational::from_integer(BigInt::from(n * (n - 1)));
            em.push(Dd::from_big_rational(&(&b[n] / &fact)));
            stirling.push(Dd::from_big_rational(
                &(&b[n] / BigRational::from_integer(BigInt::from(n * (n - 1)))),
            ));
        }
        Tables {
            em,
            stirling,
            ln_pi: Dd::PI.ln(),
            half_ln_2pi: Dd::PI.ldexp(1).ln().ldexp(-1),
        }
    })
}

fn smallest_prime_factor(n: usize) -> usize {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

/// `ζ(s)` by Euler–Maclaurin in double-double; intended for `Re s ≥ 1/2`.
pub fn zeta_dd(s: Cdd) -> Cdd {
    let t = tables();
    let n = 40 + s.abs_f64().ceil() as usize;
    let neg = -s;
    // n^{−s} for 1 ≤ n ≤ N, multiplicative in n.
    let mut pw = vec![Cdd::ONE; n + 1];
    for k in 2..=n {
        let p = smallest_prime_factor(k);
        pw[k] = if p == k {
            neg.scale(Dd::new(k as f64).ln()).exp()
        } else {
            pw[p] * pw[k / p]
        };
    }
    let mut sum = Cdd::ZERO;
    for v in pw.iter().take(n).skip(1) {
        sum = sum + *v;
    }
    let nf = Dd::new(n as f64);
    let n_pow = pw[n];
    sum = sum + n_pow.scale(nf) / (s - Cdd::ONE) + n_pow.scale(Dd::new(0.5));
    let mut poch = s;
    let inv_n = Dd::ONE / nf;
    let inv_n2 = inv_n.sqr();
    let mut np = n_pow.scale(inv_n);
    for (k, b) in t.em.iter().enumerate() {
        sum = sum + (poch * np).scale(*b);
        let m = Dd::new(2.0 * (k as f64 + 1.0));
        poch = poch * (s + Cdd::real(m - Dd::ONE)) * (s + Cdd::real(m));
        np = np.scale(inv_n2);
    }
    sum
}

/// `(ln Γ(z + K) by Stirling, ∏_{j<K} (z + j))` with `K` chosen so that
/// `|z + K| ≥ 20`; `Γ(z)` is the exponential of the first over the second.
fn gamma_parts(z: Cdd) -> (Cdd, Cdd) {
    let t = tables();
    let mut w = z;
    let mut prod = Cdd::ONE;
    while w.abs_f64() < 20.0 || w.re.hi < 10.0 {
        prod = prod * w;
        w = w + Cdd::ONE;
    }
    let lw = w.ln();
    let mut l = (w - Cdd::real(Dd::new(0.5))) * lw - w + Cdd::real(t.half_ln_2pi);
    let inv = w.recip();
    let inv2 = inv * inv;
    let mut p = inv;
    for c in &t.stirling {
        l = l + p.scale(*c);
        p = p * inv2;
    }
    (l, prod)
}

pub fn gamma_dd(z: Cdd) -> Cdd {
    let (l, prod) = gamma_parts(z);
    l.exp() / prod
}

/// `ξ(s) = π^{−s/2} Γ(s/2) ζ(s)` in double-double, using `ξ(s) = ξ(1 − s)`
/// on `Re s < 1/2`. Pole behaviour matches [`super::xi_completed`].
pub fn xi_dd(s: Cdd) -> Result<Cdd> {
    let z = s.to_c64();
    if z.norm() < XI_POLE_RADIUS {
        return Err(Error::XiPole { at: 0, residue: -1 });
    }
    if (z - 1.0).norm() < XI_POLE_RADIUS {
        return Err(Error::XiPole { at: 1, residue: 1 });
    }
    let s = if z.re < 0.5 { Cdd::ONE - s } else { s };
    Ok(xi_dd_unreflected(s))
}

/// `π^{−s/2} Γ(s/2) ζ(s)` as written; accurate for `Re s ≥ 1/2`.
pub fn xi_dd_unreflected(s: Cdd) -> Cdd {
    let half = s.scale(Dd::new(0.5));
    let (l, prod) = gamma_parts(half);
    (l - half.scale(tables().ln_pi)).exp() / prod * zeta_dd(s)
}

/// `ξ` rounded to double precision.
pub fn xi_dd_c64(s: Complex64) -> Result<Complex64> {
    xi_dd(Cdd::from(s)).map(Cdd::to_c64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::special::xi_completed;

    fn close(a: Dd, b: Dd, tol: f64) -> bool {
        ((a - b).to_f64()).abs() <= tol * b.to_f64().abs().max(1e-300)
    }

    #[test]
    fn arithmetic_identities() {
        let third = Dd::ONE / Dd::new(3.0);
        assert!(close(third * Dd::new(3.0), Dd::ONE, 1e-31));
        let x = Dd::ratio(7, 10);
        assert!(close(x.exp().ln(), x, 1e-30));
        assert!(close(Dd::new(2.0).ln(), Dd::LN2, 1e-31));
        let (s, c) = Dd::ratio(123, 7).sin_cos();
        assert!(close(s.sqr() + c.sqr(), Dd::ONE, 1e-30));
        let (s6, c6) = (Dd::PI / Dd::new(6.0)).sin_cos();
        assert!(close(s6, Dd::new(0.5), 1e-30));
        assert!(close(c6.sqr(), Dd::ratio(3, 4), 1e-30));
        let a = Dd::atan2(Dd::ONE, Dd::ONE);
        assert!(close(a, Dd::PI.ldexp(-2), 1e-30));
    }

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli(12);
        assert_eq!(b[2], BigRational::new(1.into(), 6.into()));
        assert_eq!(b[4], BigRational::new((-1).into(), 30.into()));
        assert_eq!(b[12], BigRational::new((-691).into(), 2730.into()));
    }

    #[test]
    fn classical_values() {
        let pi = Dd::PI;
        let z2 = zeta_dd(Cdd::real(Dd::new(2.0)));
        assert!(close(z2.re, pi.sqr() / Dd::new(6.0), 1e-29), "{z2:?}");
        let z4 = zeta_dd(Cdd::real(Dd::new(4.0)));
        assert!(close(z4.re, pi.sqr().sqr() / Dd::new(90.0), 1e-29));
        let xi2 = xi_dd(Cdd::real(Dd::new(2.0))).unwrap();
        assert!(close(xi2.re, pi / Dd::new(6.0), 1e-29));
        let g = gamma_dd(Cdd::real(Dd::new(0.5)));
        assert!(close(g.re.sqr(), pi, 1e-29));
    }

    #[test]
    fn functional_equation_inside_strip() {
        for (re, im) in [(0.3, 7.0), (0.1, -20.0), (0.45, 40.0), (0.9, 3.0)] {
            let s = Cdd::from(Complex64::new(re, im));
            let a = xi_dd_unreflected(s);
            let b = xi_dd_unreflected(Cdd::ONE - s);
            let rel = (a - b).abs_f64() / a.abs_f64();
            assert!(rel < 1e-28, "{re}+{im}i: {rel:e}");
        }
    }

    #[test]
    fn agrees_with_double_precision() {
        for (re, im) in [(2.5, 1.0), (-3.2, 4.0), (10.0, -30.0), (0.5, 14.0)] {
            let s = Complex64::new(re, im);
            let a = xi_dd_c64(s).unwrap();
            let b = xi_completed(s).unwrap();
            assert!((a - b).norm() < 1e-12 * a.norm(), "{s}");
        }
    }
}
