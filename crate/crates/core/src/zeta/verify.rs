//! Verification suites: structural identities among roots, count tables,
//! exponent tables and the functional equations of `Z_p` and `ξ^{G/P}`,
//! checked exactly, plus optional numeric spot checks. Every failing check
//! carries a witness.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{
    d_factor, degree_product, f_factor_from_counts, h_term, minimal_factor, n_table_w, normalize,
    z_and_weng, z_direct, GroupContext, ZetaBundle, ZetaContext,
};
use num_complex::Complex64;

use crate::error::Result;
use crate::numeric::{self, FeSample};
use crate::rootsys::{Rational, Weight};
use crate::symexpr::{expr_equal, WeylTag, XiLinear, Q};
use crate::weyl;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Informational checks are reported but do not decide the overall result.
    pub blocking: bool,
    /// Number of individual cases examined.
    pub cases: usize,
    /// Extra information: the failing case, or an observation.
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn pass(name: &str, cases: usize) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: true,
            blocking: true,
            cases,
            detail: None,
        }
    }

    pub fn fail(name: &str, cases: usize, witness: String) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: false,
            blocking: true,
            cases,
            detail: Some(witness),
        }
    }

    /// Pass iff `failures` yields nothing; the first failure is the witness.
    pub fn from_cases(name: &str, cases: usize, first_failure: Option<String>) -> Self {
        match first_failure {
            None => CheckResult::pass(name, cases),
            Some(w) => CheckResult::fail(name, cases, w),
        }
    }

    pub fn informational(mut self) -> Self {
        self.blocking = false;
        self
    }

    pub fn with_detail(mut self, detail: String) -> Self {
        if self.detail.is_none() {
            self.detail = Some(detail);
        }
        self
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "name": self.name,
            "passed": self.passed,
            "blocking": self.blocking,
            "cases": self.cases,
            "detail": self.detail,
        })
    }
}

/// All checks for one `(G, P)`.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub group: String,
    /// 0-based parabolic index.
    pub p: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.blocking)
    }

    /// Failed blocking checks.
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed && c.blocking)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "group": self.group,
            "p": self.p + 1,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| c.to_json_value()).collect::<Vec<_>>(),
        })
    }
}

/// Options for [`verify_group`].
#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Perturb `D_p` before checking (negative-test hook).
    pub corrupt_d: bool,
    /// Numeric spot checks; `None` runs the exact checks only.
    pub numeric: Option<NumericOptions>,
}

/// Parameters of the numeric spot checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericOptions {
    /// Relative tolerance of the functional-equation checks.
    pub tolerance: f64,
    pub seed: u64,
    /// Sample points per functional-equation check.
    pub points: usize,
    /// Sample points are drawn from `|s| ≤ radius`.
    pub radius: f64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions {
            tolerance: 1e-8,
            seed: 0,
            points: 20,
            radius: 5.0,
        }
    }
}

/// Relative agreement required between the residue oracle and the closed form.
pub const ORACLE_TOLERANCE: f64 = 1e-6;
/// Sample points for the residue oracle.
pub const ORACLE_POINTS: usize = 5;

/// Builds bundles for `ps` and their automorphism orbits and runs every
/// exact check for each `p` in `ps`.
pub fn verify_group(
    g: &Arc<GroupContext>,
    ps: &[usize],
    opts: VerifyOptions,
) -> Result<Vec<VerifyReport>> {
    let needed: BTreeSet<usize> = ps.iter().flat_map(|&p| g.orbit(p)).collect();
    let mut bundles = BTreeMap::new();
    for q in needed {
        let b = z_and_weng(&ZetaContext::new(g.clone(), q)?)?;
        bundles.insert(
            q,
            if opts.corrupt_d {
                b.with_corrupted_d()
            } else {
                b
            },
        );
    }
    Ok(ps
        .iter()
        .map(|p| {
            let mut r = verify_bundle(&bundles[p], &bundles);
            if let Some(n) = opts.numeric {
                r.checks.extend(numeric_checks(&bundles[p], &n));
            }
            r
        })
        .collect())
}

/// Runs every exact check for one bundle. `others` must contain a bundle
/// for every `q` in the automorphism orbit of `p`.
pub fn verify_bundle(b: &ZetaBundle, others: &BTreeMap<usize, ZetaBundle>) -> VerifyReport {
    let mut checks = lemma_suite(b, others);
    checks.extend(verify_fe_symbolic(b, others));
    checks.extend(consistency_checks(b));
    checks.extend(w0_form_checks(b));
    VerifyReport {
        group: b.rs().label(),
        p: b.p(),
        checks,
    }
}

fn tag_of(b: &ZetaBundle, i: usize) -> String {
    b.ctx.element(i).encoding()
}

fn first<I: ParallelIterator<Item = Option<String>>>(it: I) -> Option<String> {
    it.flatten().min()
}

/// Root-system, admissibility, count-table and exponent-table identities.
pub fn lemma_suite(b: &ZetaBundle, others: &BTreeMap<usize, ZetaBundle>) -> Vec<CheckResult> {
    let ctx = &b.ctx;
    let g = ctx.group_context();
    let rs = ctx.rs();
    let p = ctx.p();
    let c = ctx.center();
    let n_all = g.group().len();
    let mut out = Vec::new();

    // c_p λ_p − w_p ρ = ρ and w_p ρ = ρ − 2ρ_p.
    let rho = rs.rho();
    let wp_rho = ctx.wp().act_on_weight(rs, &rho);
    let lhs = rs
        .fundamental_weight(p)
        .scale(&Rational::from_integer(c.into()))
        .sub(&wp_rho);
    out.push(CheckResult::from_cases(
        "rho_identity",
        1,
        (lhs != rho).then(|| format!("c_p λ_p − w_p ρ = {:?}", lhs.coords())),
    ));
    let rho_p = rs.rho_p(p).expect("valid p");
    let expected: Weight = rho.sub(&rho_p.scale(&Rational::from_integer(2.into())));
    out.push(CheckResult::from_cases(
        "w_p_rho",
        1,
        (wp_rho != expected).then(|| format!("w_p ρ = {:?}", wp_rho.coords())),
    ));

    // Admissibility is preserved by ι and by conjugation with automorphisms.
    let witness = first((0..n_all).into_par_iter().map(|i| {
        let w = ctx.element(i);
        let j = ctx.iota_index(i);
        let back = ctx.iota_index(j);
        let ok = back == i && weyl::admissible(rs, p, w) == weyl::admissible(rs, p, ctx.element(j));
        (!ok).then(|| format!("w = [{}]", w.encoding()))
    }));
    out.push(CheckResult::from_cases(
        "admissible_involution",
        n_all,
        witness,
    ));

    let autos = g.automorphisms();
    let witness = first(autos.par_iter().map(|varpi| {
        let q = varpi.apply_index(p);
        (0..n_all).find_map(|i| {
            let w = ctx.element(i);
            let v = varpi.conjugate(w);
            (weyl::admissible(rs, p, w) != weyl::admissible(rs, q, &v))
                .then(|| format!("ϖ = {varpi}, w = [{}]", w.encoding()))
        })
    }));
    out.push(CheckResult::from_cases(
        "admissible_automorphism",
        n_all * autos.len(),
        witness,
    ));

    // N_p(k, kc − h) = N_p(k, h) and N_p = N_q.
    let n = &b.tables.n;
    let witness = n
        .support()
        .find(|&(k, h)| n.get(k, k * c - h) != n.get(k, h))
        .map(|(k, h)| format!("(k,h) = ({k},{h})"));
    out.push(CheckResult::from_cases(
        "n_reflection_symmetry",
        n.len(),
        witness,
    ));

    let orbit = g.orbit(p);
    let witness = orbit
        .iter()
        .find(|q| others[q].tables.n != *n)
        .map(|q| format!("q = {}", q + 1));
    out.push(CheckResult::from_cases(
        "n_automorphism_invariance",
        orbit.len(),
        witness,
    ));

    // N_p(k,h) − N_{p,ι(w)}(k, kc − h) = N_{p,w}(k,h) for every w.
    let witness = first((0..n_all).into_par_iter().map(|i| {
        let nw = n_table_w(g, p, i);
        let niota = n_table_w(g, p, ctx.iota_index(i));
        let keys: BTreeSet<(i64, i64)> = n
            .support()
            .chain(nw.support())
            .chain(niota.support().map(|(k, h)| (k, k * c - h)))
            .collect();
        keys.into_iter()
            .find(|&(k, h)| n.get(k, h) - niota.get(k, k * c - h) != nw.get(k, h))
            .map(|(k, h)| format!("w = [{}], (k,h) = ({k},{h})", tag_of(b, i)))
    }));
    out.push(CheckResult::from_cases(
        "nw_involution_identity",
        n_all,
        witness,
    ));

    // N_{p,w} = N_{q, ϖwϖ⁻¹}.
    let witness = first(autos.par_iter().map(|varpi| {
        let q = varpi.apply_index(p);
        (0..n_all).find_map(|i| {
            let v = varpi.conjugate(ctx.element(i));
            let j = g.group().index_of(&v).expect("conjugate lies in W");
            (n_table_w(g, p, i) != n_table_w(g, q, j))
                .then(|| format!("ϖ = {varpi}, w = [{}]", tag_of(b, i)))
        })
    }));
    out.push(CheckResult::from_cases(
        "nw_automorphism_identity",
        n_all * autos.len(),
        witness,
    ));

    // M = M̃ for h ≥ 1; the reflection identity of M; M_p = M_q.
    let t = &b.tables;
    let witness = t
        .window
        .iter()
        .filter(|(_, h)| *h >= 1)
        .find(|&&(k, h)| t.m.get(k, h) != t.m_tilde.get(k, h))
        .map(|(k, h)| {
            format!(
                "(k,h) = ({k},{h}): M = {}, M̃ = {}",
                t.m.get(*k, *h),
                t.m_tilde.get(*k, *h)
            )
        });
    out.push(CheckResult::from_cases(
        "m_equals_m_tilde",
        t.window.len(),
        witness,
    ));

    let mut keys = BTreeSet::new();
    for (k, h) in n.support() {
        keys.insert((k, h + 1));
        keys.insert((k, k * c - h));
    }
    for (k, h) in t.m.support() {
        keys.insert((k, h));
        keys.insert((k, k * c - h + 1));
    }
    let witness = keys
        .iter()
        .find(|&&(k, h)| {
            n.get(k, k * c - h) - t.m.get(k, k * c - h + 1) != n.get(k, h - 1) - t.m.get(k, h)
        })
        .map(|(k, h)| format!("(k,h) = ({k},{h})"));
    out.push(CheckResult::from_cases(
        "m_reflection_identity",
        keys.len(),
        witness,
    ));

    let witness = orbit
        .iter()
        .find(|q| others[q].tables.m != t.m)
        .map(|q| format!("q = {}", q + 1));
    out.push(CheckResult::from_cases(
        "m_automorphism_invariance",
        orbit.len(),
        witness,
    ));

    // D(−c − s) = D(s) and D_p = D_q.
    let cq = Q::from_integer(c);
    let reflected = b.d.reflect(cq);
    let witness = (reflected != b.d).then(|| {
        let bad =
            b.d.iter()
                .find(|(x, e)| reflected.exponent(x) != **e)
                .or_else(|| reflected.iter().find(|(x, e)| b.d.exponent(x) != **e))
                .map(|(x, e)| format!("{x}^{e}"))
                .unwrap_or_default();
        format!(
            "D = {}, D(−c−s) = {}, first differing factor {bad}",
            b.d, reflected
        )
    });
    out.push(CheckResult::from_cases(
        "d_reflection_symmetry",
        b.d.len().max(1),
        witness,
    ));

    let witness = orbit
        .iter()
        .find(|q| others[q].d != b.d)
        .map(|q| format!("q = {}: D_q = {}", q + 1, others[q].d));
    out.push(CheckResult::from_cases(
        "d_automorphism_invariance",
        orbit.len(),
        witness,
    ));

    out
}

type AffineMultiset = Vec<(i64, i64)>;

/// Affine functionals `(⟨λ_p, β^∨⟩, ht β^∨)` over `(w⁻¹A) ∖ Δ_p` for
/// `A = Δ` and `A = Φ_-`, as sorted multisets.
fn affine_multisets(ctx: &ZetaContext, i: usize) -> (AffineMultiset, AffineMultiset) {
    let g = ctx.group_context();
    let p = ctx.p();
    let w = ctx.element(i);
    let signed = |idx: usize, pos: bool| {
        let (k, h) = (g.k(idx, p), g.coroot_height(idx));
        if pos {
            (k, h)
        } else {
            (-k, -h)
        }
    };
    let mut s_delta: Vec<(i64, i64)> = g
        .preimages(w)
        .into_iter()
        .filter(|&(idx, pos)| !(pos && ctx.in_delta_p(idx)))
        .map(|(idx, pos)| signed(idx, pos))
        .collect();
    let mask = g.group().inversion_mask(i);
    let mut s_neg: Vec<(i64, i64)> = (0..g.num_positive())
        .filter_map(|a| {
            if mask >> a & 1 == 1 {
                (!ctx.in_delta_p(a)).then(|| signed(a, true))
            } else {
                Some(signed(a, false))
            }
        })
        .collect();
    s_delta.sort_unstable();
    s_neg.sort_unstable();
    (s_delta, s_neg)
}

/// The functional equations of `Z_p` and `ξ^{G/P}` as exact term
/// bijections under `ι` and under every diagram automorphism.
pub fn verify_fe_symbolic(
    b: &ZetaBundle,
    others: &BTreeMap<usize, ZetaBundle>,
) -> Vec<CheckResult> {
    let ctx = &b.ctx;
    let g = ctx.group_context();
    let c = ctx.center();
    let cq = Q::from_integer(c);
    let v0 = g.varpi0();
    let adm = ctx.admissible();
    let n_all = g.group().len();
    let mut out = Vec::new();

    // Raw affine multisets: S(A; −c − s; p, w) = S(A; s; p, ι(w)).
    let witness = first((0..n_all).into_par_iter().map(|i| {
        let (d, m) = affine_multisets(ctx, i);
        let (d2, m2) = affine_multisets(ctx, ctx.iota_index(i));
        let refl = |v: Vec<(i64, i64)>| {
            let mut r: Vec<(i64, i64)> = v.into_iter().map(|(k, h)| (-k, h - k * c)).collect();
            r.sort_unstable();
            r
        };
        let (rd, rm) = (refl(d), refl(m));
        if rd != d2 {
            Some(format!("A = Δ, w = [{}]", tag_of(b, i)))
        } else if rm != m2 {
            Some(format!("A = Φ_-, w = [{}]", tag_of(b, i)))
        } else {
            None
        }
    }));
    out.push(CheckResult::from_cases(
        "fe_affine_multisets",
        n_all,
        witness,
    ));

    // Term bijection under s → −c − s, T → ϖ₀T.
    for (name, expr) in [
        ("fe_reflection_terms_z", &b.z),
        ("fe_reflection_terms_weng", &b.xi_weng),
    ] {
        let witness = first(adm.par_iter().map(|&i| {
            let tag = WeylTag::from(ctx.element(i));
            let j = ctx.iota_index(i);
            let target = WeylTag::from(ctx.element(j));
            let t = expr.term_for(&tag)?;
            let reflected = t.reflect(cq).transport(v0);
            match expr.term_for(&target) {
                Some(u) if u.signature() == reflected.signature() => None,
                Some(u) => Some(format!(
                    "w = [{tag}] ↦ [{target}]: reflected {} vs {}",
                    single(&reflected),
                    single(u)
                )),
                None => Some(format!("w = [{tag}]: ι(w) = [{target}] has no term")),
            }
        }));
        let whole = expr.reflect(cq).transport(v0);
        let witness = witness
            .or_else(|| (!expr_equal(&whole, expr)).then(|| "whole-expression comparison".into()));
        out.push(CheckResult::from_cases(name, adm.len(), witness));
    }

    // Term bijection under diagram automorphisms: term_p(v) ↦ term_q(ϖvϖ⁻¹).
    let autos = g.automorphisms();
    for (name, pick) in [
        ("fe_automorphism_terms_z", 0usize),
        ("fe_automorphism_terms_weng", 1usize),
    ] {
        let expr_of = |bb: &'_ ZetaBundle| {
            if pick == 0 {
                bb.z.clone()
            } else {
                bb.xi_weng.clone()
            }
        };
        let mine = expr_of(b);
        let mut witness = None;
        for varpi in autos {
            let q = varpi.apply_index(ctx.p());
            let theirs = expr_of(&others[&q]);
            witness = first(adm.par_iter().map(|&i| {
                let v = ctx.element(i);
                let tag = WeylTag::from(v);
                let target = WeylTag::from(&varpi.conjugate(v));
                let t = mine.term_for(&tag)?.transport(varpi);
                match theirs.term_for(&target) {
                    Some(u) if u.signature() == t.signature() => None,
                    _ => Some(format!("ϖ = {varpi}, q = {}, w = [{tag}]", q + 1)),
                }
            }))
            .or_else(|| {
                (mine.len() != theirs.len()).then(|| format!("ϖ = {varpi}: term counts differ"))
            });
            if witness.is_some() {
                break;
            }
        }
        out.push(CheckResult::from_cases(
            name,
            adm.len() * autos.len(),
            witness,
        ));
    }

    // Normalized zeta: s ↔ 1 − s.
    let norm = normalize(b);
    let witness = first(adm.par_iter().map(|&i| {
        let tag = WeylTag::from(ctx.element(i));
        let target = WeylTag::from(ctx.element(ctx.iota_index(i)));
        let t = norm.term_for(&tag)?.reflect(Q::from_integer(-1));
        match norm.term_for(&target) {
            Some(u) if u.signature() == t.signature() => None,
            _ => Some(format!("w = [{tag}]")),
        }
    }));
    out.push(CheckResult::from_cases(
        "normalized_symmetry",
        adm.len(),
        witness,
    ));

    out
}

fn single(t: &crate::symexpr::ZetaTerm) -> String {
    crate::symexpr::ZetaExpression::new(vec![t.clone()]).to_text()
}

/// Identities tying `ω`, `F`, `D`, `Z` and `ξ^{G/P}` together.
pub fn consistency_checks(b: &ZetaBundle) -> Vec<CheckResult> {
    let ctx = &b.ctx;
    let rs = ctx.rs();
    let adm = ctx.admissible();
    let t = &b.tables;
    let mut out = Vec::new();

    let direct = z_direct(ctx);
    let witness = (direct != b.z).then(|| {
        b.z.terms()
            .iter()
            .zip(direct.terms())
            .find(|(x, y)| x != y)
            .map(|(x, _)| {
                format!(
                    "w = [{}]",
                    x.weyl.as_ref().map(|t| t.to_string()).unwrap_or_default()
                )
            })
            .unwrap_or_else(|| "term counts differ".into())
    });
    out.push(CheckResult::from_cases(
        "z_two_constructions",
        adm.len(),
        witness,
    ));

    let f_counts = f_factor_from_counts(&t.n);
    out.push(CheckResult::from_cases(
        "f_count_form",
        1,
        (f_counts != b.f).then(|| format!("F = {}, count form = {}", b.f, f_counts)),
    ));

    let d_tables = d_factor(t);
    out.push(CheckResult::from_cases(
        "d_from_tables",
        1,
        (d_tables != b.d).then(|| format!("D = {}, from tables = {}", b.d, d_tables)),
    ));

    let back = b.xi_weng.mul_xi(&b.d);
    out.push(CheckResult::from_cases(
        "weng_times_d_is_z",
        adm.len(),
        (back != b.z).then(|| "ξ^{G/P}·D differs from Z".to_string()),
    ));

    let minimal = minimal_factor(t);
    let via_m = b.omega.mul_xi(&minimal);
    let witness = (via_m != b.xi_weng).then(|| {
        format!(
            "ω·∏ξ^M differs from Z/D; ∏ξ^M = {}, F/D = {}",
            minimal,
            b.minimal_factor()
        )
    });
    out.push(CheckResult::from_cases(
        "weng_is_omega_times_minimal_factor",
        adm.len(),
        witness,
    ));

    let witness = b
        .xi_weng
        .terms()
        .iter()
        .find(|t| t.xi.has_denominator())
        .map(|t| {
            format!(
                "w = [{}]: {}",
                t.weyl.as_ref().map(|x| x.to_string()).unwrap_or_default(),
                single(t)
            )
        });
    out.push(CheckResult::from_cases(
        "weng_denominator_free",
        adm.len(),
        witness,
    ));

    let witness = first(adm.par_iter().map(|&i| {
        let w = ctx.element(i);
        let from_counts = h_term(ctx, w).ok()?;
        let term = b.omega.term_for(&WeylTag::from(w))?;
        (term.xi != from_counts)
            .then(|| format!("w = [{}]: {} vs {}", w.encoding(), term.xi, from_counts))
    }));
    out.push(CheckResult::from_cases(
        "h_term_count_form",
        adm.len(),
        witness,
    ));

    let positives: Vec<(i64, i64)> =
        t.m.iter()
            .filter(|((k, h), v)| *k >= 0 && *h >= 2 && **v > 0)
            .map(|(kh, _)| *kh)
            .collect();
    let witness = positives.iter().find_map(|&(k, h)| {
        let m = t.m.get(k, h);
        let w = t.witness[&(k, h)];
        let term = b.omega.term_for(&WeylTag::from(ctx.element(w)));
        let e = term.map(|t| t.xi.exponent(&XiLinear::int(k, h)));
        (e != Some(-m)).then(|| {
            format!(
                "(k,h) = ({k},{h}), M = {m}, w = [{}] carries {e:?}",
                tag_of(b, w)
            )
        })
    });
    out.push(CheckResult::from_cases(
        "minimal_factor_attained",
        positives.len(),
        witness,
    ));

    let degrees = rs.degrees_of_parabolic(ctx.p()).expect("valid p");
    let slice = minimal.constant_part();
    let expected = degree_product(&degrees);
    out.push(CheckResult::from_cases(
        "constant_slice_degrees",
        degrees.len(),
        (slice != expected).then(|| {
            format!(
                "k=0 slice {} vs ∏ξ(d_j) = {} (degrees {degrees:?})",
                slice, expected
            )
        }),
    ));

    out
}

/// Compares `M_p` with the `w₀` closed form `N_+(k,h−1) − N_+(k,h)` on
/// `k ≥ 0`, `h ≥ 2` (the range entering `F_p` and `D_p`), both literally and
/// clamped at zero. Both results are informational.
pub fn w0_form_checks(b: &ZetaBundle) -> Vec<CheckResult> {
    let t = &b.tables;
    let domain: Vec<(i64, i64)> = t
        .window
        .iter()
        .copied()
        .filter(|&(k, h)| k >= 0 && h >= 2)
        .collect();
    let mismatch = |clamp: bool| {
        domain
            .iter()
            .find(|&&(k, h)| {
                let w0 = t.m_w0.get(k, h);
                t.m.get(k, h) != if clamp { w0.max(0) } else { w0 }
            })
            .map(|(k, h)| {
                format!(
                    "(k,h) = ({k},{h}): admissible max {}, w0 form {}",
                    t.m.get(*k, *h),
                    t.m_w0.get(*k, *h)
                )
            })
    };
    let unrestricted_agrees = domain
        .iter()
        .all(|&(k, h)| t.m.get(k, h) == t.m_unrestricted.get(k, h));
    let note = format!(
        "unrestricted max over W {} the admissible max",
        if unrestricted_agrees {
            "equals"
        } else {
            "differs from"
        }
    );
    vec![
        CheckResult::from_cases("w0_closed_form", domain.len(), mismatch(false))
            .with_detail(note)
            .informational(),
        CheckResult::from_cases("w0_closed_form_clamped", domain.len(), mismatch(true))
            .informational(),
    ]
}

fn sample_check(name: &str, tolerance: f64, sample: Result<FeSample>) -> CheckResult {
    match sample {
        Ok(r) => {
            let detail = format!(
                "worst relative defect {:.3e} at s = {:.6}",
                r.worst, r.worst_at
            );
            if r.passed(tolerance) {
                CheckResult::pass(name, r.points).with_detail(detail)
            } else {
                CheckResult::fail(name, r.points, detail)
            }
        }
        Err(e) => CheckResult::fail(name, 0, e.to_string()),
    }
}

/// Seeded numeric spot checks: both functional equations at `opts.points`
/// points and, for rank ≤ 3, the residue oracle against the closed form.
pub fn numeric_checks(b: &ZetaBundle, opts: &NumericOptions) -> Vec<CheckResult> {
    let seed = opts.seed ^ ((b.p() as u64 + 1) << 32);
    let mut out = vec![
        sample_check(
            "numeric_fe_z",
            opts.tolerance,
            numeric::z_reflection(b, seed, opts.points, opts.radius),
        ),
        sample_check(
            "numeric_fe_normalized",
            opts.tolerance,
            numeric::normalized_reflection(&normalize(b), seed, opts.points, opts.radius),
        ),
    ];
    if b.rs().rank() <= numeric::residue::MAX_ORACLE_RANK {
        let mut worst: Option<(f64, Complex64)> = None;
        let mut failure = None;
        for i in 0..ORACLE_POINTS as u64 {
            let run = numeric::with_generic_point(seed.wrapping_add(7919 * (i + 1)), 2.5, |s| {
                let o = numeric::residue_oracle(&b.ctx, s, None)?;
                let c = numeric::eval_expression(&b.omega, s, None)?;
                Ok((o.value - c.value).norm() / c.value.norm())
            });
            match run {
                Ok((s, rel)) => {
                    if worst.is_none_or(|(w, _)| rel > w || rel.is_nan()) {
                        worst = Some((rel, s));
                    }
                }
                Err(e) => {
                    failure = Some(e.to_string());
                    break;
                }
            }
        }
        let check = match (failure, worst) {
            (Some(e), _) => CheckResult::fail("residue_oracle", ORACLE_POINTS, e),
            (None, Some((w, s))) => {
                let detail = format!("worst relative difference {w:.3e} at s = {s:.6}");
                if w < ORACLE_TOLERANCE {
                    CheckResult::pass("residue_oracle", ORACLE_POINTS).with_detail(detail)
                } else {
                    CheckResult::fail("residue_oracle", ORACLE_POINTS, detail)
                }
            }
            (None, None) => CheckResult::pass("residue_oracle", 0),
        };
        out.push(check);
    }
    out
}
