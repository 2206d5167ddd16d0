//! Canonical symbolic sums of terms
//! `c · exp⟨μ₀ + s μ₁, T⟩ · ∏ 1/(k s + b) · ∏ ξ(k s + h)^e`.
//!
//! Every `ξ` argument is stored in canonical form (k > 0, or k = 0 and
//! h ≥ 1/2) by applying `ξ(x) = ξ(1 − x)` eagerly, and every linear factor
//! has a positive leading coefficient with its sign moved into the term's
//! rational coefficient. Structural equality of canonical forms is then
//! equality of the underlying values as formal expressions.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::weyl::{DiagramAutomorphism, WeylElement};

/// Exact rational used throughout the symbolic layer.
pub type Q = Rational64;

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn half() -> Q {
    Q::new(1, 2)
}

/// An argument `k s + h` of `ξ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XiLinear {
    k: i64,
    h: Q,
}

impl XiLinear {
    /// Builds `ξ(k s + h)` in canonical form.
    pub fn new(k: i64, h: Q) -> Self {
        XiLinear { k, h }.canonical()
    }

    pub fn int(k: i64, h: i64) -> Self {
        XiLinear::new(k, q(h))
    }

    /// Builds the argument without canonicalizing.
    pub fn raw(k: i64, h: Q) -> Self {
        XiLinear { k, h }
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn h(&self) -> Q {
        self.h
    }

    pub fn is_canonical(&self) -> bool {
        self.k > 0 || (self.k == 0 && self.h >= half())
    }

    /// Applies `ξ(x) = ξ(1 − x)` if needed.
    pub fn canonical(self) -> Self {
        if self.is_canonical() {
            self
        } else {
            XiLinear {
                k: -self.k,
                h: Q::one() - self.h,
            }
        }
    }

    /// Substitutes `s → −c − s`.
    pub fn reflect(self, c: Q) -> Self {
        XiLinear {
            k: -self.k,
            h: self.h - c * self.k,
        }
        .canonical()
    }

    /// Substitutes `s → s + d`.
    pub fn shift(self, d: Q) -> Self {
        XiLinear {
            k: self.k,
            h: self.h + d * self.k,
        }
        .canonical()
    }

    pub fn to_text(&self) -> String {
        format!("ξ({})", affine_text(self.k, self.h))
    }

    pub fn to_latex(&self) -> String {
        format!("\\xi({})", affine_latex(self.k, self.h))
    }
}

impl fmt::Display for XiLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Canonical form of a `ξ` argument.
pub fn xi_canonicalize(x: XiLinear) -> XiLinear {
    x.canonical()
}

/// `ξ(k s + h)` under `s → −c − s`, canonicalized.
pub fn reflect(x: XiLinear, c: Q) -> XiLinear {
    x.reflect(c)
}

/// A finite product `∏ ξ(k s + h)^e` with nonzero integer exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XiProduct {
    factors: BTreeMap<XiLinear, i64>,
}

impl XiProduct {
    pub fn new() -> Self {
        XiProduct::default()
    }

    pub fn single(x: XiLinear, e: i64) -> Self {
        let mut p = XiProduct::new();
        p.insert(x, e);
        p
    }

    /// Multiplies in `ξ(x)^e`.
    pub fn insert(&mut self, x: XiLinear, e: i64) {
        if e == 0 {
            return;
        }
        let x = x.canonical();
        let slot = self.factors.entry(x).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&x);
        }
    }

    pub fn exponent(&self, x: &XiLinear) -> i64 {
        self.factors.get(&x.canonical()).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&XiLinear, &i64)> {
        self.factors.iter()
    }

    pub fn mul(&self, other: &XiProduct) -> XiProduct {
        let mut out = self.clone();
        for (x, e) in &other.factors {
            out.insert(*x, *e);
        }
        out
    }

    pub fn inverse(&self) -> XiProduct {
        XiProduct {
            factors: self.factors.iter().map(|(x, e)| (*x, -e)).collect(),
        }
    }

    pub fn div(&self, other: &XiProduct) -> XiProduct {
        self.mul(&other.inverse())
    }

    pub fn numerator(&self) -> XiProduct {
        XiProduct {
            factors: self
                .factors
                .iter()
                .filter(|(_, e)| **e > 0)
                .map(|(x, e)| (*x, *e))
                .collect(),
        }
    }

    /// Factors with negative exponent, returned with positive exponents.
    pub fn denominator(&self) -> XiProduct {
        XiProduct {
            factors: self
                .factors
                .iter()
                .filter(|(_, e)| **e < 0)
                .map(|(x, e)| (*x, -e))
                .collect(),
        }
    }

    pub fn has_denominator(&self) -> bool {
        self.factors.values().any(|e| *e < 0)
    }

    /// Factors with `k = 0` (constants `ξ(h)`).
    pub fn constant_part(&self) -> XiProduct {
        XiProduct {
            factors: self
                .factors
                .iter()
                .filter(|(x, _)| x.k == 0)
                .map(|(x, e)| (*x, *e))
                .collect(),
        }
    }

    pub fn reflect(&self, c: Q) -> XiProduct {
        let mut out = XiProduct::new();
        for (x, e) in &self.factors {
            out.insert(x.reflect(c), *e);
        }
        out
    }

    pub fn shift(&self, d: Q) -> XiProduct {
        let mut out = XiProduct::new();
        for (x, e) in &self.factors {
            out.insert(x.shift(d), *e);
        }
        out
    }

    pub fn to_text(&self) -> String {
        let (num, den) = self.text_parts();
        fraction_text(num, den)
    }

    pub fn to_latex(&self) -> String {
        let (num, den) = self.latex_parts();
        fraction_latex(num, den)
    }

    fn text_parts(&self) -> (Vec<String>, Vec<String>) {
        let render = |x: &XiLinear, e: i64| {
            if e == 1 {
                x.to_text()
            } else {
                format!("{}^{}", x.to_text(), e)
            }
        };
        let num = self
            .numerator()
            .iter()
            .map(|(x, e)| render(x, *e))
            .collect();
        let den = self
            .denominator()
            .iter()
            .map(|(x, e)| render(x, *e))
            .collect();
        (num, den)
    }

    fn latex_parts(&self) -> (Vec<String>, Vec<String>) {
        let render = |x: &XiLinear, e: i64| {
            if e == 1 {
                x.to_latex()
            } else {
                format!("{}^{{{}}}", x.to_latex(), e)
            }
        };
        let num = self
            .numerator()
            .iter()
            .map(|(x, e)| render(x, *e))
            .collect();
        let den = self
            .denominator()
            .iter()
            .map(|(x, e)| render(x, *e))
            .collect();
        (num, den)
    }

    /// `[[k, "h", e], ...]`.
    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.factors
                .iter()
                .map(|(x, e)| json!([x.k, fmt_q(x.h), e]))
                .collect(),
        )
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("xi: expected array".into()))?;
        let mut out = XiProduct::new();
        for item in arr {
            let t = item
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| Error::Parse("xi factor: expected [k, \"h\", e]".into()))?;
            let k = json_i64(&t[0], "xi k")?;
            let h = json_q(&t[1], "xi h")?;
            let e = json_i64(&t[2], "xi exponent")?;
            out.insert(XiLinear::new(k, h), e);
        }
        Ok(out)
    }
}

impl fmt::Display for XiProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromIterator<(XiLinear, i64)> for XiProduct {
    fn from_iter<I: IntoIterator<Item = (XiLinear, i64)>>(iter: I) -> Self {
        let mut p = XiProduct::new();
        for (x, e) in iter {
            p.insert(x, e);
        }
        p
    }
}

/// A denominator factor `k s + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinFactor {
    k: i64,
    b: Q,
}

impl LinFactor {
    pub fn raw(k: i64, b: Q) -> Self {
        LinFactor { k, b }
    }

    pub fn int(k: i64, b: i64) -> Self {
        LinFactor { k, b: q(b) }
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn b(&self) -> Q {
        self.b
    }

    pub fn is_canonical(&self) -> bool {
        self.k > 0 || (self.k == 0 && self.b > Q::zero())
    }

    /// Returns the sign pulled out and the factor with positive leading
    /// coefficient.
    pub fn canonical(self) -> (i64, LinFactor) {
        if self.k < 0 || (self.k == 0 && self.b < Q::zero()) {
            (
                -1,
                LinFactor {
                    k: -self.k,
                    b: -self.b,
                },
            )
        } else {
            (1, self)
        }
    }

    pub fn shift(self, d: Q) -> Self {
        LinFactor {
            k: self.k,
            b: self.b + d * self.k,
        }
    }

    pub fn to_text(&self) -> String {
        let body = affine_text(self.k, self.b);
        if self.k != 0 && !self.b.is_zero() {
            format!("({body})")
        } else {
            body
        }
    }

    pub fn to_latex(&self) -> String {
        let body = affine_latex(self.k, self.b);
        if self.k != 0 && !self.b.is_zero() {
            format!("({body})")
        } else {
            body
        }
    }
}

/// `k s + b` under `s → −c − s`: the sign extracted and the canonical factor.
pub fn reflect_linfactor(f: LinFactor, c: Q) -> (i64, LinFactor) {
    LinFactor {
        k: -f.k,
        b: f.b - c * f.k,
    }
    .canonical()
}

/// The exponential `exp⟨μ₀ + s μ₁, T⟩`, with `μ₀, μ₁` in the
/// fundamental-weight basis and `T` paired in coroot coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExpDatum {
    pub mu0: Vec<Q>,
    pub mu1: Vec<Q>,
}

impl ExpDatum {
    pub fn new(mu0: Vec<Q>, mu1: Vec<Q>) -> Self {
        ExpDatum { mu0, mu1 }
    }

    pub fn zero(rank: usize) -> Self {
        ExpDatum {
            mu0: vec![Q::zero(); rank],
            mu1: vec![Q::zero(); rank],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mu0.iter().chain(&self.mu1).all(|x| x.is_zero())
    }

    /// `s → −c − s`.
    pub fn reflect(&self, c: Q) -> Self {
        ExpDatum {
            mu0: self
                .mu0
                .iter()
                .zip(&self.mu1)
                .map(|(a, b)| a - c * b)
                .collect(),
            mu1: self.mu1.iter().map(|b| -b).collect(),
        }
    }

    pub fn shift(&self, d: Q) -> Self {
        ExpDatum {
            mu0: self
                .mu0
                .iter()
                .zip(&self.mu1)
                .map(|(a, b)| a + d * b)
                .collect(),
            mu1: self.mu1.clone(),
        }
    }

    /// Moves coordinate `i` to `ϖ(i)`.
    pub fn transport(&self, varpi: &DiagramAutomorphism) -> Self {
        ExpDatum {
            mu0: varpi.permute(&self.mu0),
            mu1: varpi.permute(&self.mu1),
        }
    }
}

/// Identifies the Weyl element a term came from (row-major matrix entries).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylTag(pub Vec<i8>);

impl WeylTag {
    pub fn parse(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Ok(WeylTag(Vec::new()));
        }
        s.split(',')
            .map(|x| {
                x.trim()
                    .parse::<i8>()
                    .map_err(|e| Error::Parse(format!("weyl tag {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(WeylTag)
    }
}

impl From<&WeylElement> for WeylTag {
    fn from(w: &WeylElement) -> Self {
        WeylTag(w.matrix().to_vec())
    }
}

impl fmt::Display for WeylTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// One summand. Field order fixes the canonical term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZetaTerm {
    pub weyl: Option<WeylTag>,
    pub expd: ExpDatum,
    pub den: Vec<LinFactor>,
    pub xi: XiProduct,
    pub coeff: Q,
}

/// Untagged structural signature of a term.
pub type TermSignature = (ExpDatum, Vec<LinFactor>, XiProduct, Q);

impl ZetaTerm {
    /// Builds a term, normalizing the signs of the linear factors.
    pub fn new(
        coeff: Q,
        weyl: Option<WeylTag>,
        expd: ExpDatum,
        den: Vec<LinFactor>,
        xi: XiProduct,
    ) -> Self {
        let mut coeff = coeff;
        let mut canon: Vec<LinFactor> = den
            .into_iter()
            .map(|f| {
                let (sign, g) = f.canonical();
                if sign < 0 {
                    coeff = -coeff;
                }
                g
            })
            .collect();
        canon.sort();
        ZetaTerm {
            weyl,
            expd,
            den: canon,
            xi,
            coeff,
        }
    }

    pub fn signature(&self) -> TermSignature {
        (
            self.expd.clone(),
            self.den.clone(),
            self.xi.clone(),
            self.coeff,
        )
    }

    /// `s → −c − s` applied to every part of the term.
    pub fn reflect(&self, c: Q) -> ZetaTerm {
        let mut coeff = self.coeff;
        let mut den: Vec<LinFactor> = self
            .den
            .iter()
            .map(|f| {
                let (sign, g) = reflect_linfactor(*f, c);
                if sign < 0 {
                    coeff = -coeff;
                }
                g
            })
            .collect();
        den.sort();
        ZetaTerm {
            weyl: self.weyl.clone(),
            expd: self.expd.reflect(c),
            den,
            xi: self.xi.reflect(c),
            coeff,
        }
    }

    /// `s → s + d`.
    pub fn shift(&self, d: Q) -> ZetaTerm {
        ZetaTerm::new(
            self.coeff,
            self.weyl.clone(),
            self.expd.shift(d),
            self.den.iter().map(|f| f.shift(d)).collect(),
            self.xi.shift(d),
        )
    }

    pub fn transport(&self, varpi: &DiagramAutomorphism) -> ZetaTerm {
        ZetaTerm {
            expd: self.expd.transport(varpi),
            ..self.clone()
        }
    }

    pub fn mul_xi(&self, p: &XiProduct) -> ZetaTerm {
        ZetaTerm {
            xi: self.xi.mul(p),
            ..self.clone()
        }
    }

    pub fn with_tag(&self, tag: Option<WeylTag>) -> ZetaTerm {
        ZetaTerm {
            weyl: tag,
            ..self.clone()
        }
    }

    fn text_parts(&self) -> (Vec<String>, Vec<String>) {
        let (xn, xd) = self.xi.text_parts();
        let numer = self.coeff.numer().abs();
        let denom = *self.coeff.denom();
        let mut num = Vec::new();
        if numer != 1 {
            num.push(numer.to_string());
        }
        num.extend(xn);
        let mut den = Vec::new();
        if denom != 1 {
            den.push(denom.to_string());
        }
        den.extend(self.den.iter().map(|f| f.to_text()));
        den.extend(xd);
        (num, den)
    }

    fn latex_parts(&self) -> (Vec<String>, Vec<String>) {
        let (xn, xd) = self.xi.latex_parts();
        let numer = self.coeff.numer().abs();
        let denom = *self.coeff.denom();
        let mut num = Vec::new();
        if numer != 1 {
            num.push(numer.to_string());
        }
        num.extend(xn);
        let mut den = Vec::new();
        if denom != 1 {
            den.push(denom.to_string());
        }
        den.extend(self.den.iter().map(|f| f.to_latex()));
        den.extend(xd);
        (num, den)
    }

    pub fn to_json_value(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("coeff".into(), Value::String(fmt_q(self.coeff)));
        obj.insert(
            "weyl".into(),
            match &self.weyl {
                Some(t) => Value::String(t.to_string()),
                None => Value::Null,
            },
        );
        obj.insert(
            "exp".into(),
            json!({
                "mu0": self.expd.mu0.iter().map(|x| fmt_q(*x)).collect::<Vec<_>>(),
                "mu1": self.expd.mu1.iter().map(|x| fmt_q(*x)).collect::<Vec<_>>(),
            }),
        );
        obj.insert(
            "den".into(),
            Value::Array(self.den.iter().map(|f| json!([f.k, fmt_q(f.b)])).collect()),
        );
        obj.insert("xi".into(), self.xi.to_json_value());
        Value::Object(obj)
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let coeff = json_q(field(v, "coeff")?, "coeff")?;
        if coeff.is_zero() {
            return Err(Error::Parse("term coefficient must be nonzero".into()));
        }
        let weyl = match v.get("weyl") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(WeylTag::parse(s)?),
            Some(_) => return Err(Error::Parse("weyl: expected string".into())),
        };
        let exp = field(v, "exp")?;
        let vec_q = |name: &str| -> Result<Vec<Q>> {
            field(exp, name)?
                .as_array()
                .ok_or_else(|| Error::Parse(format!("{name}: expected array")))?
                .iter()
                .map(|x| json_q(x, name))
                .collect()
        };
        let expd = ExpDatum::new(vec_q("mu0")?, vec_q("mu1")?);
        let den = field(v, "den")?
            .as_array()
            .ok_or_else(|| Error::Parse("den: expected array".into()))?
            .iter()
            .map(|item| {
                let t = item
                    .as_array()
                    .filter(|t| t.len() == 2)
                    .ok_or_else(|| Error::Parse("den factor: expected [k, \"b\"]".into()))?;
                Ok(LinFactor::raw(
                    json_i64(&t[0], "den k")?,
                    json_q(&t[1], "den b")?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let xi = XiProduct::from_json_value(field(v, "xi")?)?;
        Ok(ZetaTerm::new(coeff, weyl, expd, den, xi))
    }
}

/// A canonical sum of terms, sorted by Weyl tag and then by structure.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ZetaExpression {
    terms: Vec<ZetaTerm>,
}

impl ZetaExpression {
    pub fn new(mut terms: Vec<ZetaTerm>) -> Self {
        terms.retain(|t| !t.coeff.is_zero());
        terms.sort();
        ZetaExpression { terms }
    }

    pub fn zero() -> Self {
        ZetaExpression::default()
    }

    pub fn terms(&self) -> &[ZetaTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_for(&self, tag: &WeylTag) -> Option<&ZetaTerm> {
        self.terms
            .binary_search_by(|t| t.weyl.as_ref().cmp(&Some(tag)))
            .ok()
            .map(|i| &self.terms[i])
    }

    pub fn map_terms(&self, f: impl Fn(&ZetaTerm) -> ZetaTerm) -> Self {
        ZetaExpression::new(self.terms.iter().map(f).collect())
    }

    /// Multiplies every term by the same `ξ`-product.
    pub fn mul_xi(&self, p: &XiProduct) -> Self {
        self.map_terms(|t| t.mul_xi(p))
    }

    pub fn reflect(&self, c: Q) -> Self {
        self.map_terms(|t| t.reflect(c))
    }

    pub fn shift(&self, d: Q) -> Self {
        self.map_terms(|t| t.shift(d))
    }

    pub fn transport(&self, varpi: &DiagramAutomorphism) -> Self {
        self.map_terms(|t| t.transport(varpi))
    }

    /// Specializes to `T = 0`.
    pub fn at_t_zero(&self) -> Self {
        self.map_terms(|t| ZetaTerm {
            expd: ExpDatum::zero(t.expd.mu0.len()),
            ..t.clone()
        })
    }

    pub fn untagged(&self) -> Self {
        self.map_terms(|t| t.with_tag(None))
    }

    pub fn signatures(&self) -> Vec<TermSignature> {
        let mut sigs: Vec<TermSignature> = self.terms.iter().map(|t| t.signature()).collect();
        sigs.sort();
        sigs
    }

    pub fn to_text(&self) -> String {
        join_terms(self.terms.iter().map(|t| {
            let (num, den) = t.text_parts();
            (t.coeff.is_negative(), fraction_text(num, den))
        }))
    }

    pub fn to_latex(&self) -> String {
        join_terms(self.terms.iter().map(|t| {
            let (num, den) = t.latex_parts();
            (t.coeff.is_negative(), fraction_latex(num, den))
        }))
    }

    pub fn to_json_value(&self) -> Value {
        json!({ "terms": self.terms.iter().map(|t| t.to_json_value()).collect::<Vec<_>>() })
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let terms = field(v, "terms")?
            .as_array()
            .ok_or_else(|| Error::Parse("terms: expected array".into()))?
            .iter()
            .map(ZetaTerm::from_json_value)
            .collect::<Result<Vec<_>>>()?;
        Ok(ZetaExpression::new(terms))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        ZetaExpression::from_json_value(&v)
    }

    pub fn serialize(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Latex => self.to_latex(),
            Format::Text => self.to_text(),
        }
    }
}

impl fmt::Display for ZetaExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Output formats for expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    Json,
}

/// Equality of canonical forms, ignoring Weyl tags and term order.
pub fn expr_equal(a: &ZetaExpression, b: &ZetaExpression) -> bool {
    a.len() == b.len() && a.signatures() == b.signatures()
}

/// Renders a rational as `p/q`.
pub fn fmt_q(x: Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<i64>().map_err(|_| bad())?,
            d.trim().parse::<i64>().map_err(|_| bad())?,
        ),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if d == 0 {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| Error::Parse(format!("missing field {name:?}")))
}

fn json_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| Error::Parse(format!("{what}: expected integer")))
}

fn json_q(v: &Value, what: &str) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s),
        Value::Number(n) => n
            .as_i64()
            .map(q)
            .ok_or_else(|| Error::Parse(format!("{what}: expected integer"))),
        _ => Err(Error::Parse(format!("{what}: expected \"p/q\" string"))),
    }
}

fn plain_q(x: Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn latex_q(x: Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("\\tfrac{{{}}}{{{}}}", x.numer(), x.denom())
    }
}

fn affine(k: i64, h: Q, num: fn(Q) -> String) -> String {
    let mut out = match k {
        0 => return num(h),
        1 => "s".to_string(),
        -1 => "-s".to_string(),
        _ => format!("{k}s"),
    };
    if h.is_positive() {
        out.push('+');
        out.push_str(&num(h));
    } else if h.is_negative() {
        out.push('-');
        out.push_str(&num(-h));
    }
    out
}

fn affine_text(k: i64, h: Q) -> String {
    affine(k, h, plain_q)
}

fn affine_latex(k: i64, h: Q) -> String {
    affine(k, h, latex_q)
}

fn fraction_text(num: Vec<String>, den: Vec<String>) -> String {
    let n = if num.is_empty() {
        "1".to_string()
    } else {
        num.join("")
    };
    match den.len() {
        0 => n,
        1 => format!("{n}/{}", den[0]),
        _ => format!("{n}/({})", den.join("·")),
    }
}

fn fraction_latex(num: Vec<String>, den: Vec<String>) -> String {
    let n = if num.is_empty() {
        "1".to_string()
    } else {
        num.join("")
    };
    if den.is_empty() {
        n
    } else {
        format!("\\frac{{{n}}}{{{}}}", den.join("\\,"))
    }
}

fn join_terms(parts: impl Iterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in parts.enumerate() {
        match (i, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xi(k: i64, h: i64) -> XiLinear {
        XiLinear::int(k, h)
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(XiLinear::raw(-1, q(-1)).canonical(), xi(1, 2));
        assert_eq!(XiLinear::raw(0, q(-1)).canonical(), xi(0, 2));
        assert_eq!(XiLinear::raw(1, q(3)).canonical(), xi(1, 3));
        assert_eq!(
            XiLinear::raw(0, half()).canonical(),
            XiLinear::raw(0, half())
        );
        assert!(xi(0, 1).is_canonical());
        assert_eq!(xi(0, 0), xi(0, 1));
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(xi(1, 2).reflect(q(3)), xi(1, 2));
        assert_eq!(xi(1, 1).reflect(q(3)), xi(1, 3));
        assert_eq!(xi(0, 5).reflect(q(7)), xi(0, 5));
    }

    #[test]
    fn reflect_linfactor_examples() {
        assert_eq!(
            reflect_linfactor(LinFactor::int(1, 1), q(3)),
            (-1, LinFactor::int(1, 2))
        );
        assert_eq!(
            reflect_linfactor(LinFactor::int(0, 2), q(3)),
            (1, LinFactor::int(0, 2))
        );
    }

    #[test]
    fn term_sign_absorption() {
        let t = ZetaTerm::new(
            q(1),
            None,
            ExpDatum::zero(1),
            vec![LinFactor::int(-1, -2)],
            XiProduct::new(),
        );
        assert_eq!(t.coeff, q(-1));
        assert_eq!(t.den, vec![LinFactor::int(1, 2)]);
    }

    #[test]
    fn product_text_and_latex() {
        let f: XiProduct = [(xi(1, 2), 1), (xi(0, 2), 1), (xi(1, 3), 1)]
            .into_iter()
            .collect();
        assert_eq!(f.to_text(), "ξ(2)ξ(s+2)ξ(s+3)");
        assert_eq!(XiProduct::single(xi(1, 2), 1).to_latex(), "\\xi(s+2)");
        let r = XiProduct::single(xi(1, 1), 1).div(&XiProduct::single(xi(1, 2), 2));
        assert_eq!(r.to_text(), "ξ(s+1)/ξ(s+2)^2");
        assert_eq!(r.to_latex(), "\\frac{\\xi(s+1)}{\\xi(s+2)^{2}}");
    }

    #[test]
    fn expression_rendering() {
        let e = ZetaExpression::new(vec![
            ZetaTerm::new(
                q(1),
                None,
                ExpDatum::zero(1),
                vec![LinFactor::int(1, 0)],
                XiProduct::new(),
            ),
            ZetaTerm::new(
                q(1),
                None,
                ExpDatum::new(vec![q(-2)], vec![q(-1)]),
                vec![LinFactor::int(-1, -2)],
                XiProduct::single(xi(1, 1), 1).div(&XiProduct::single(xi(1, 2), 1)),
            ),
        ]);
        assert_eq!(e.to_text(), "-ξ(s+1)/((s+2)·ξ(s+2)) + 1/s");
        assert_eq!(ZetaExpression::zero().to_text(), "0");
        assert_eq!(ZetaExpression::zero().to_latex(), "0");
        let half_shift = XiProduct::single(xi(1, 2), 1).shift(Q::new(-3, 2));
        assert_eq!(half_shift.to_text(), "ξ(s+1/2)");
    }

    #[test]
    fn json_shape() {
        let t = ZetaTerm::new(
            Q::new(-1, 2),
            Some(WeylTag(vec![1, 0, 0, -1])),
            ExpDatum::new(vec![q(0), q(-2)], vec![q(1), q(-1)]),
            vec![LinFactor::int(1, 1)],
            XiProduct::single(xi(0, 2), -1),
        );
        let e = ZetaExpression::new(vec![t]);
        let s = e.to_json();
        assert_eq!(
            s,
            r#"{"terms":[{"coeff":"-1/2","den":[[1,"1/1"]],"exp":{"mu0":["0/1","-2/1"],"mu1":["1/1","-1/1"]},"weyl":"1,0,0,-1","xi":[[0,"2/1",-1]]}]}"#
        );
        assert_eq!(ZetaExpression::from_json(&s).unwrap(), e);
        assert!(ZetaExpression::from_json(r#"{"terms":[{"coeff":"1/0"}]}"#).is_err());
        assert!(ZetaExpression::from_json("[").is_err());
    }
}
