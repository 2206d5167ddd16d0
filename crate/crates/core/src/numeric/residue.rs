//! Iterated residues of the period `ω^G(λ; T)` computed by quadrature.
//!
//! With `λ = ρ + Σ_k s_k λ_k`, the period is a sum over all of `W` of
//! `e^{⟨wλ−ρ,T⟩} ∏_j 1/⟨wλ−ρ, α_j^∨⟩ ∏_{α∈Φ_w} ξ(⟨λ,α^∨⟩)/ξ(⟨λ,α^∨⟩+1)`.
//! Residues at `s_k = 0` for the simple roots of the Levi factor are taken
//! by the trapezoidal rule on circles of radius [`CIRCLE_RADIUS`], the last
//! root in the chosen ordering innermost. The remaining variable `s_p` is the
//! evaluation point.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::eval::KahanSum;
use super::special::xi_completed;
use crate::error::{Error, Result};
use crate::weyl::RootMask;
use crate::zeta::ZetaContext;

pub const CIRCLE_RADIUS: f64 = 1e-2;
pub const INITIAL_NODES: usize = 64;
pub const MAX_NODES: usize = 512;
/// Relative disagreement between successive node counts that triggers
/// another doubling.
pub const NODE_AGREEMENT: f64 = 1e-8;
/// Largest rank accepted by the oracle.
pub const MAX_ORACLE_RANK: usize = 3;
/// Number of fresh points tried after a pole collision.
pub const GENERIC_RETRIES: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct ResidueReport {
    pub value: Complex64,
    /// Nodes per circle in the accepted run.
    pub nodes: usize,
    /// Relative difference between the last two runs.
    pub agreement: f64,
}

/// Per-element data: `w⁻¹α_j` as (positive-root index, sign) and `Φ_w`.
struct PeriodTerm {
    pre: Vec<(usize, f64)>,
    mask: RootMask,
}

struct Period<'a> {
    ctx: &'a ZetaContext,
    terms: Vec<PeriodTerm>,
    coroots: Vec<Vec<f64>>,
    t: Vec<f64>,
}

impl<'a> Period<'a> {
    fn new(ctx: &'a ZetaContext, t: Option<&[f64]>) -> Result<Self> {
        let g = ctx.group_context();
        let rs = ctx.rs();
        let r = rs.rank();
        let t = match t {
            Some(t) if t.len() != r => {
                return Err(Error::InvalidArgument(format!(
                    "T has {} coordinates, expected {r}",
                    t.len()
                )))
            }
            Some(t) => t.to_vec(),
            None => vec![0.0; r],
        };
        let terms = g
            .group()
            .elements()
            .iter()
            .enumerate()
            .map(|(i, w)| PeriodTerm {
                pre: g
                    .preimages(w)
                    .into_iter()
                    .map(|(idx, pos)| (idx, if pos { 1.0 } else { -1.0 }))
                    .collect(),
                mask: g.group().inversion_mask(i),
            })
            .collect();
        let coroots = (0..rs.num_positive())
            .map(|i| rs.coroot_coeffs(i).iter().map(|&c| c as f64).collect())
            .collect();
        Ok(Period {
            ctx,
            terms,
            coroots,
            t,
        })
    }

    /// `⟨λ, α^∨⟩` for every positive root.
    fn pairings(&self, sv: &[Complex64]) -> Vec<Complex64> {
        self.coroots
            .iter()
            .map(|c| c.iter().zip(sv).map(|(a, s)| *a * (*s + 1.0)).sum())
            .collect()
    }

    fn value(&self, sv: &[Complex64]) -> Result<Complex64> {
        let x = self.pairings(sv);
        let mut ratio = Vec::with_capacity(x.len());
        for xa in &x {
            ratio.push(xi_completed(*xa)? / xi_completed(*xa + 1.0)?);
        }
        let mut sum = KahanSum::new();
        for term in &self.terms {
            let mut v = Complex64::new(1.0, 0.0);
            let mut e = Complex64::new(0.0, 0.0);
            for (j, &(idx, sign)) in term.pre.iter().enumerate() {
                let l = x[idx] * sign - 1.0;
                v /= l;
                e += l * self.t[j];
            }
            let mut m = term.mask;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                v *= ratio[i];
                m &= m - 1;
            }
            sum.add(v * e.exp());
        }
        Ok(sum.total())
    }

    /// Rejects `s` when a pole hyperplane other than `s_k = 0` comes within
    /// a few radii of the residue polydisc.
    fn check_generic(&self, s: Complex64, vars: &[usize]) -> Result<()> {
        let p = self.ctx.p();
        let guard = |c: &[f64], centre: Complex64, what: &str| -> Result<()> {
            if c[p] == 0.0 {
                return Ok(());
            }
            let spread: f64 = vars.iter().map(|&k| c[k].abs()).sum::<f64>().max(1.0);
            if centre.norm() <= 4.0 * CIRCLE_RADIUS * spread {
                return Err(Error::NonGenericPoint(format!(
                    "{s}: a pole of {what} lies within the residue circles"
                )));
            }
            Ok(())
        };
        let mut centre_sv = vec![Complex64::new(0.0, 0.0); self.coroots[0].len()];
        centre_sv[p] = s;
        let x = self.pairings(&centre_sv);
        for (i, c) in self.coroots.iter().enumerate() {
            guard(c, x[i], "ξ")?;
            guard(c, x[i] - 1.0, "ξ or a linear factor")?;
            guard(c, x[i] + 1.0, "a linear factor")?;
        }
        Ok(())
    }

    fn nested(&self, sv: &mut Vec<Complex64>, vars: &[usize], nodes: usize) -> Result<Complex64> {
        let Some((&k, rest)) = vars.split_first() else {
            return self.value(sv);
        };
        let mut acc = KahanSum::new();
        for j in 0..nodes {
            let z =
                Complex64::from_polar(CIRCLE_RADIUS, 2.0 * PI * (j as f64 + 0.5) / nodes as f64);
            sv[k] = z;
            acc.add(self.nested(sv, rest, nodes)? * z);
        }
        sv[k] = Complex64::new(0.0, 0.0);
        Ok(acc.total() / nodes as f64)
    }
}

/// Iterated residues with the Levi simple roots taken in `order`
/// (outermost first).
pub fn residue_oracle_ordered(
    ctx: &ZetaContext,
    s: Complex64,
    t: Option<&[f64]>,
    order: &[usize],
) -> Result<ResidueReport> {
    let rs = ctx.rs();
    let r = rs.rank();
    if r > MAX_ORACLE_RANK {
        return Err(Error::InvalidArgument(format!(
            "residue oracle supports rank ≤ {MAX_ORACLE_RANK}, got {}",
            rs.label()
        )));
    }
    let mut expected: Vec<usize> = (0..r).filter(|&k| k != ctx.p()).collect();
    let mut given = order.to_vec();
    given.sort_unstable();
    expected.sort_unstable();
    if given != expected {
        return Err(Error::InvalidArgument(format!(
            "ordering {order:?} is not a permutation of the Levi simple roots"
        )));
    }
    let period = Period::new(ctx, t)?;
    period.check_generic(s, order)?;
    let mut sv = vec![Complex64::new(0.0, 0.0); r];
    sv[ctx.p()] = s;
    if order.is_empty() {
        return Ok(ResidueReport {
            value: period.value(&sv)?,
            nodes: 0,
            agreement: 0.0,
        });
    }
    let mut nodes = INITIAL_NODES;
    let mut prev = period.nested(&mut sv, order, nodes)?;
    loop {
        let next = period.nested(&mut sv, order, 2 * nodes)?;
        let agreement = (next - prev).norm() / next.norm().max(f64::MIN_POSITIVE);
        nodes *= 2;
        if agreement <= NODE_AGREEMENT || nodes >= MAX_NODES {
            if !next.re.is_finite() || !next.im.is_finite() {
                return Err(Error::NonGenericPoint(format!(
                    "{s}: quadrature is not finite"
                )));
            }
            return Ok(ResidueReport {
                value: next,
                nodes,
                agreement,
            });
        }
        prev = next;
    }
}

/// Iterated residues in the standard ordering `β_1, …, β_{r−1}`.
pub fn residue_oracle(ctx: &ZetaContext, s: Complex64, t: Option<&[f64]>) -> Result<ResidueReport> {
    let order: Vec<usize> = (0..ctx.rs().rank()).filter(|&k| k != ctx.p()).collect();
    residue_oracle_ordered(ctx, s, t, &order)
}

/// Deterministic sample points, uniform in the disc `|s| ≤ radius` and at
/// least `0.05` from every half-integer on the real axis.
pub fn sample_points(seed: u64, count: usize, radius: f64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let z = Complex64::new(
            rng.gen_range(-radius..radius),
            rng.gen_range(-radius..radius),
        );
        let near_real = z.im.abs() < 0.05 && ((2.0 * z.re).round() / 2.0 - z.re).abs() < 0.05;
        if z.norm() <= radius && !near_real {
            out.push(z);
        }
    }
    out
}

/// Runs `f` at a seeded point, drawing a new point after a pole collision.
pub fn with_generic_point<T>(
    seed: u64,
    radius: f64,
    mut f: impl FnMut(Complex64) -> Result<T>,
) -> Result<(Complex64, T)> {
    let mut last = None;
    for attempt in 0..=GENERIC_RETRIES as u64 {
        let s = sample_points(
            seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9)),
            1,
            radius,
        )[0];
        match f(s) {
            Ok(v) => return Ok((s, v)),
            Err(
                e
                @ (Error::NonGenericPoint(_) | Error::PoleProximity { .. } | Error::XiPole { .. }),
            ) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Oracle values at several points, in parallel across points.
pub fn residue_oracle_batch(
    ctx: &ZetaContext,
    points: &[Complex64],
    t: Option<&[f64]>,
) -> Vec<Result<ResidueReport>> {
    points
        .par_iter()
        .map(|s| residue_oracle(ctx, *s, t))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::eval::eval_expression;
    use crate::rootsys::{build_root_system, Kind};
    use crate::weyl::GroupCap;
    use crate::zeta::{omega_gp, GroupContext};

    fn ctx(kind: Kind, rank: usize, p: usize) -> ZetaContext {
        let g =
            GroupContext::new(build_root_system(kind, rank).unwrap(), GroupCap::default()).unwrap();
        ZetaContext::new(g, p).unwrap()
    }

    #[test]
    fn a2_matches_closed_form() {
        for p in 0..2 {
            let c = ctx(Kind::A, 2, p);
            let s = Complex64::new(0.7, 0.3);
            let oracle = residue_oracle(&c, s, None).unwrap();
            let closed = eval_expression(&omega_gp(&c), s, None).unwrap().value;
            let rel = (oracle.value - closed).norm() / closed.norm();
            assert!(rel < 1e-6, "p={p}: {} vs {closed} ({rel})", oracle.value);
        }
    }

    #[test]
    fn a1_has_no_residue_stage() {
        let c = ctx(Kind::A, 1, 0);
        let s = Complex64::new(0.3, 1.1);
        let r = residue_oracle(&c, s, Some(&[0.4])).unwrap();
        assert_eq!(r.nodes, 0);
        let closed = eval_expression(&omega_gp(&c), s, Some(&[0.4]))
            .unwrap()
            .value;
        assert!((r.value - closed).norm() < 1e-12 * closed.norm());
    }

    #[test]
    fn rank_four_is_rejected() {
        let c = ctx(Kind::A, 4, 0);
        assert!(matches!(
            residue_oracle(&c, Complex64::new(0.3, 0.2), None),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn collision_is_reported() {
        // s = 0 makes ⟨λ,(α_1+α_2)^∨⟩ − 1 vanish at the centre.
        let c = ctx(Kind::A, 2, 0);
        assert!(matches!(
            residue_oracle(&c, Complex64::new(1e-4, 0.0), None),
            Err(Error::NonGenericPoint(_))
        ));
    }

    #[test]
    fn sample_points_are_deterministic() {
        assert_eq!(sample_points(7, 5, 2.0), sample_points(7, 5, 2.0));
        assert_ne!(sample_points(7, 5, 2.0), sample_points(8, 5, 2.0));
    }
}
