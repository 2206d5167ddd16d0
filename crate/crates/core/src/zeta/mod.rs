//! The period `ω^{G/P}`, the factors `F_p` and `D_p`, `Z_p`, the Weng zeta
//! function and its normalization.

pub mod tables;
pub mod verify;

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rootsys::RootSystemData;
use crate::symexpr::{
    ExpDatum, LinFactor, WeylTag, XiLinear, XiProduct, ZetaExpression, ZetaTerm, Q,
};
use crate::weyl::{self, DiagramAutomorphism, FeInvolution, GroupCap, WeylElement, WeylGroup};

pub use tables::{m_table, n_table, n_table_positive, n_table_w, CountTable, MTables};
pub use verify::{CheckResult, VerifyReport};

/// A root system together with its enumerated Weyl group and per-root
/// pairing data, shared by every parabolic.
#[derive(Debug)]
pub struct GroupContext {
    rs: RootSystemData,
    group: WeylGroup,
    w0: WeylElement,
    varpi0: DiagramAutomorphism,
    autos: Vec<DiagramAutomorphism>,
    ht: Vec<i64>,
    kcoef: Vec<Vec<i64>>,
    simple: Vec<Option<usize>>,
}

impl GroupContext {
    pub fn new(rs: RootSystemData, cap: GroupCap) -> Result<Arc<Self>> {
        let group = WeylGroup::enumerate(&rs, cap)?;
        let w0 = weyl::longest_element(&rs);
        let varpi0 = weyl::varpi0(&rs);
        let autos = weyl::diagram_automorphisms(&rs);
        let n = rs.num_positive();
        let ht = (0..n).map(|i| rs.coroot_height_at(i)).collect();
        let kcoef = (0..n)
            .map(|i| rs.coroot_coeffs(i).iter().map(|&c| c as i64).collect())
            .collect();
        let simple = rs
            .positive_roots()
            .iter()
            .map(|a| weyl::simple_index(a.coeffs()))
            .collect();
        Ok(Arc::new(GroupContext {
            rs,
            group,
            w0,
            varpi0,
            autos,
            ht,
            kcoef,
            simple,
        }))
    }

    pub fn rs(&self) -> &RootSystemData {
        &self.rs
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn w0(&self) -> &WeylElement {
        &self.w0
    }

    pub fn varpi0(&self) -> &DiagramAutomorphism {
        &self.varpi0
    }

    /// Every diagram automorphism, identity first.
    pub fn automorphisms(&self) -> &[DiagramAutomorphism] {
        &self.autos
    }

    pub fn num_positive(&self) -> usize {
        self.ht.len()
    }

    /// `ht α^∨` for the positive root with index `i`.
    pub fn coroot_height(&self, i: usize) -> i64 {
        self.ht[i]
    }

    /// `⟨λ_p, α^∨⟩` for the positive root with index `i`.
    pub fn k(&self, i: usize, p: usize) -> i64 {
        self.kcoef[i][p]
    }

    /// `Some(j)` if positive root `i` is the simple root `α_j`.
    pub fn simple_of(&self, i: usize) -> Option<usize> {
        self.simple[i]
    }

    /// `w⁻¹α_j` for each `j`, as (positive-root index, is positive).
    pub fn preimages(&self, w: &WeylElement) -> Vec<(usize, bool)> {
        let r = self.rs.rank();
        let mut out = vec![(usize::MAX, true); r];
        for (i, a) in self.rs.positive_roots().iter().enumerate() {
            let img = w.apply(a.coeffs());
            if let Some(j) = weyl::simple_index(&img) {
                out[j] = (i, true);
            } else {
                let neg: Vec<i32> = img.iter().map(|c| -c).collect();
                if let Some(j) = weyl::simple_index(&neg) {
                    out[j] = (i, false);
                }
            }
        }
        out
    }

    /// `{ϖ(p)}` over all diagram automorphisms, sorted.
    pub fn orbit(&self, p: usize) -> Vec<usize> {
        let mut qs: Vec<usize> = self.autos.iter().map(|a| a.apply_index(p)).collect();
        qs.sort_unstable();
        qs.dedup();
        qs
    }
}

/// A group context specialized to one maximal parabolic `p` (0-based).
#[derive(Debug, Clone)]
pub struct ZetaContext {
    g: Arc<GroupContext>,
    p: usize,
    c: i64,
    wp: WeylElement,
    iota: FeInvolution,
    admissible: Vec<usize>,
}

impl ZetaContext {
    pub fn new(g: Arc<GroupContext>, p: usize) -> Result<Self> {
        let rs = g.rs();
        rs.check_index(p)?;
        let c = rs.center(p)?;
        let wp = weyl::longest_parabolic(rs, p)?;
        let iota = FeInvolution {
            w0: g.w0.clone(),
            wp: wp.clone(),
        };
        let admissible = (0..g.group().len())
            .into_par_iter()
            .filter(|&i| weyl::admissible(rs, p, g.group().get(i)))
            .collect();
        Ok(ZetaContext {
            g,
            p,
            c,
            wp,
            iota,
            admissible,
        })
    }

    pub fn group_context(&self) -> &GroupContext {
        &self.g
    }

    pub fn shared(&self) -> Arc<GroupContext> {
        self.g.clone()
    }

    pub fn rs(&self) -> &RootSystemData {
        self.g.rs()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// `c_p`.
    pub fn center(&self) -> i64 {
        self.c
    }

    pub fn wp(&self) -> &WeylElement {
        &self.wp
    }

    pub fn involution(&self) -> &FeInvolution {
        &self.iota
    }

    /// Group indices of the admissible elements, increasing.
    pub fn admissible(&self) -> &[usize] {
        &self.admissible
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        self.g.group().get(i)
    }

    /// Group index of `w₀ w w_p`.
    pub fn iota_index(&self, i: usize) -> usize {
        let v = self.iota.apply(self.rs(), self.element(i));
        self.g.group().index_of(&v).expect("w0 w wp lies in W")
    }

    /// Whether positive root `i` belongs to `Δ_p`.
    pub fn in_delta_p(&self, i: usize) -> bool {
        matches!(self.g.simple_of(i), Some(j) if j != self.p)
    }

    /// `(⟨λ_p, β^∨⟩, ht β^∨)` for the signed root `β`.
    fn pairings(&self, (i, positive): (usize, bool)) -> (i64, i64) {
        let (k, h) = (self.g.k(i, self.p), self.g.coroot_height(i));
        if positive {
            (k, h)
        } else {
            (-k, -h)
        }
    }

    /// `(wρ − ρ, wλ_p)` in fundamental-weight coordinates:
    /// `⟨wρ − ρ, α_j^∨⟩ = ht (w⁻¹α_j)^∨ − 1` and `⟨wλ_p, α_j^∨⟩ = ⟨λ_p, (w⁻¹α_j)^∨⟩`.
    fn datum(&self, pre: &[(usize, bool)]) -> ExpDatum {
        let (mu0, mu1) = pre
            .iter()
            .map(|&b| {
                let (k, h) = self.pairings(b);
                (Q::from_integer(h - 1), Q::from_integer(k))
            })
            .unzip();
        ExpDatum::new(mu0, mu1)
    }

    /// Factors `⟨λ_p, β^∨⟩ s + ht β^∨ − 1` over `β ∈ w⁻¹Δ ∖ Δ_p`.
    fn lin_factors(&self, pre: &[(usize, bool)]) -> Vec<LinFactor> {
        pre.iter()
            .filter(|&&(i, pos)| !(pos && self.in_delta_p(i)))
            .map(|&b| {
                let (k, h) = self.pairings(b);
                LinFactor::raw(k, Q::from_integer(h - 1))
            })
            .collect()
    }

    /// The summand of `ω^{G/P}` for group element `i` (assumed admissible).
    pub fn omega_term(&self, i: usize) -> ZetaTerm {
        let w = self.element(i);
        let pre = self.g.preimages(w);
        let mask = self.g.group().inversion_mask(i);
        let mut xi = XiProduct::new();
        for a in 0..self.g.num_positive() {
            if mask >> a & 1 == 0 {
                continue;
            }
            let (k, h) = self.pairings((a, true));
            if !self.in_delta_p(a) {
                xi.insert(XiLinear::int(k, h), 1);
            }
            xi.insert(XiLinear::int(k, h + 1), -1);
        }
        ZetaTerm::new(
            Q::from_integer(1),
            Some(WeylTag::from(w)),
            self.datum(&pre),
            self.lin_factors(&pre),
            xi,
        )
    }

    /// The summand of `Z_p` built directly as `ξ` over `(w⁻¹Φ_-) ∖ Δ_p`.
    pub fn z_direct_term(&self, i: usize) -> ZetaTerm {
        let w = self.element(i);
        let pre = self.g.preimages(w);
        let mut xi = XiProduct::new();
        for a in 0..self.g.num_positive() {
            let (k, h) = self.pairings((a, true));
            let neg_image = !crate::rootsys::is_positive_vector(
                &w.apply(self.rs().positive_roots()[a].coeffs()),
            );
            if neg_image {
                if !self.in_delta_p(a) {
                    xi.insert(XiLinear::int(k, h), 1);
                }
            } else {
                xi.insert(XiLinear::int(-k, -h), 1);
            }
        }
        ZetaTerm::new(
            Q::from_integer(1),
            Some(WeylTag::from(w)),
            self.datum(&pre),
            self.lin_factors(&pre),
            xi,
        )
    }
}

/// `ω^{G/P}`: one term per admissible element.
pub fn omega_gp(ctx: &ZetaContext) -> ZetaExpression {
    ZetaExpression::new(
        ctx.admissible()
            .par_iter()
            .map(|&i| ctx.omega_term(i))
            .collect(),
    )
}

/// `Z_p` assembled from the explicit `ξ`-product over `(w⁻¹Φ_-) ∖ Δ_p`.
pub fn z_direct(ctx: &ZetaContext) -> ZetaExpression {
    ZetaExpression::new(
        ctx.admissible()
            .par_iter()
            .map(|&i| ctx.z_direct_term(i))
            .collect(),
    )
}

/// `F_p = ∏_{α∈Φ_-} ξ(⟨λ_p, α^∨⟩ s + ht α^∨)`.
pub fn f_factor(ctx: &ZetaContext) -> XiProduct {
    let g = ctx.group_context();
    (0..g.num_positive())
        .map(|i| (XiLinear::int(-g.k(i, ctx.p()), -g.coroot_height(i)), 1))
        .collect()
}

/// `∏_{k≥0, h≥2} ξ(ks+h)^{N_p(k,h−1)}`.
pub fn f_factor_from_counts(n: &CountTable) -> XiProduct {
    n.iter()
        .filter(|((k, h), _)| *k >= 0 && *h >= 1)
        .map(|((k, h), v)| (XiLinear::int(*k, h + 1), *v))
        .collect()
}

/// `D_p = ∏_{k≥0, h≥2} ξ(ks+h)^{N_p(k,h−1) − M̃_p(k,h)}`.
pub fn d_factor(t: &MTables) -> XiProduct {
    t.window
        .iter()
        .filter(|(k, h)| *k >= 0 && *h >= 2)
        .map(|&(k, h)| (XiLinear::int(k, h), t.n.get(k, h - 1) - t.m_tilde.get(k, h)))
        .collect()
}

/// `∏_{k≥0, h≥2} ξ(ks+h)^{M_p(k,h)}`.
pub fn minimal_factor(t: &MTables) -> XiProduct {
    t.m.iter()
        .filter(|((k, h), _)| *k >= 0 && *h >= 2)
        .map(|((k, h), v)| (XiLinear::int(*k, *h), *v))
        .collect()
}

/// `ξ`-content of `w`'s term of `ω^{G/P}` from the counts:
/// `ξ(s+1)^{N_{p,w}(1,1)} ∏_{k≥0,h≥2} ξ(ks+h)^{N_{p,w}(k,h) − N_{p,w}(k,h−1)}`.
pub fn h_term(ctx: &ZetaContext, w: &WeylElement) -> Result<XiProduct> {
    let g = ctx.group_context();
    if !weyl::admissible(ctx.rs(), ctx.p(), w) {
        return Err(Error::InvalidArgument(format!(
            "{w} is not admissible for p = {}",
            ctx.p()
        )));
    }
    let idx = g
        .group()
        .index_of(w)
        .ok_or_else(|| Error::InvalidArgument(format!("{w} is not in W")))?;
    let nw = n_table_w(g, ctx.p(), idx);
    let mut out = XiProduct::single(XiLinear::int(1, 1), nw.get(1, 1));
    let mut keys: Vec<(i64, i64)> = nw
        .support()
        .flat_map(|(k, h)| [(k, h), (k, h + 1)])
        .collect();
    keys.sort_unstable();
    keys.dedup();
    for (k, h) in keys {
        if k >= 0 && h >= 2 {
            out.insert(XiLinear::int(k, h), nw.get(k, h) - nw.get(k, h - 1));
        }
    }
    Ok(out)
}

/// Everything computed for one `(G, P)`.
#[derive(Debug, Clone)]
pub struct ZetaBundle {
    pub ctx: ZetaContext,
    pub c: i64,
    pub omega: ZetaExpression,
    pub f: XiProduct,
    pub d: XiProduct,
    pub z: ZetaExpression,
    pub xi_weng: ZetaExpression,
    pub tables: MTables,
}

impl ZetaBundle {
    pub fn p(&self) -> usize {
        self.ctx.p()
    }

    pub fn rs(&self) -> &RootSystemData {
        self.ctx.rs()
    }

    /// `F_p / D_p`.
    pub fn minimal_factor(&self) -> XiProduct {
        self.f.div(&self.d)
    }

    /// Test hook: bumps the exponent of one `D` factor that is not fixed by
    /// `s → −c_p − s` and recomputes `ξ^{G/P}` from the altered `D`.
    pub fn with_corrupted_d(&self) -> ZetaBundle {
        let c = Q::from_integer(self.c);
        let target = self
            .f
            .iter()
            .map(|(x, _)| *x)
            .find(|x| x.reflect(c) != *x)
            .unwrap_or_else(|| XiLinear::int(1, self.c + 2));
        let mut d = self.d.clone();
        d.insert(target, 1);
        let xi_weng = self.z.mul_xi(&d.inverse());
        ZetaBundle {
            d,
            xi_weng,
            ..self.clone()
        }
    }
}

/// Builds `ω`, `F`, `D`, `Z` (two ways) and `ξ^{G/P} = Z / D`.
///
/// Fails with [`Error::Inconsistency`] if the two constructions of `Z`
/// disagree.
pub fn z_and_weng(ctx: &ZetaContext) -> Result<ZetaBundle> {
    let omega = omega_gp(ctx);
    let f = f_factor(ctx);
    let tables = m_table(ctx);
    let d = d_factor(&tables);
    let z = omega.mul_xi(&f);
    let direct = z_direct(ctx);
    if z != direct {
        let witness = z
            .terms()
            .iter()
            .zip(direct.terms())
            .find(|(a, b)| a != b)
            .map(|(a, _)| a.weyl.as_ref().map(|t| t.to_string()).unwrap_or_default())
            .unwrap_or_else(|| "term count".into());
        return Err(Error::Inconsistency(format!(
            "{} p={}: F·ω and the direct construction of Z differ at w = [{witness}]",
            ctx.rs().label(),
            ctx.p()
        )));
    }
    let xi_weng = z.mul_xi(&d.inverse());
    Ok(ZetaBundle {
        c: ctx.center(),
        ctx: ctx.clone(),
        omega,
        f,
        d,
        z,
        xi_weng,
        tables,
    })
}

/// Convenience: builds the bundle for `(rs, p)` from scratch.
pub fn build_bundle(rs: RootSystemData, p: usize, cap: GroupCap) -> Result<ZetaBundle> {
    let g = GroupContext::new(rs, cap)?;
    z_and_weng(&ZetaContext::new(g, p)?)
}

/// `ξ^{G/P}(s) = ξ^{G/P}_o(s − (c_p+1)/2; 0)`.
pub fn normalize(bundle: &ZetaBundle) -> ZetaExpression {
    normalize_expression(&bundle.xi_weng, bundle.c)
}

pub fn normalize_expression(e: &ZetaExpression, c: i64) -> ZetaExpression {
    e.shift(-normal_shift(c)).at_t_zero()
}

/// `(c+1)/2`.
pub fn normal_shift(c: i64) -> Q {
    Q::new(c + 1, 2)
}

/// `∏_j ξ(d_j)`.
pub fn degree_product(degrees: &[u32]) -> XiProduct {
    degrees
        .iter()
        .map(|&d| (XiLinear::int(0, d as i64), 1))
        .collect()
}
