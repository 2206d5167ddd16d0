//! Simple root systems of types A–G with exact data.
//!
//! Roots are integer coefficient vectors over the simple roots `Δ`. The
//! Cartan matrix uses the convention `cartan[i][j] = ⟨α_j, α_i^∨⟩`, so the
//! simple reflection `σ_i` sends `α_j` to `α_j − cartan[i][j] α_i`. Weights
//! are stored in the fundamental-weight basis with arbitrary-precision
//! rational coordinates.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The standard test list: A₁–A₇, B₂–B₆, C₂–C₆, D₄–D₆, E₆, F₄, G₂.
pub fn all_types() -> Vec<(Kind, usize)> {
    let mut out = Vec::new();
    out.extend((1..=7).map(|r| (Kind::A, r)));
    out.extend((2..=6).map(|r| (Kind::B, r)));
    out.extend((2..=6).map(|r| (Kind::C, r)));
    out.extend((4..=6).map(|r| (Kind::D, r)));
    out.extend([(Kind::E, 6), (Kind::F, 4), (Kind::G, 2)]);
    out
}

/// Dynkin type letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Kind {
    pub fn letter(self) -> char {
        match self {
            Kind::A => 'A',
            Kind::B => 'B',
            Kind::C => 'C',
            Kind::D => 'D',
            Kind::E => 'E',
            Kind::F => 'F',
            Kind::G => 'G',
        }
    }

    /// Checks that `(self, rank)` names a simple root system.
    pub fn validate(self, rank: usize) -> Result<()> {
        let ok = match self {
            Kind::A => rank >= 1,
            Kind::B | Kind::C => rank >= 2,
            Kind::D => rank >= 3,
            Kind::E => (6..=8).contains(&rank),
            Kind::F => rank == 4,
            Kind::G => rank == 2,
        };
        if ok {
            return Ok(());
        }
        let reason = match self {
            Kind::A => "type A needs rank >= 1",
            Kind::B | Kind::C => "types B and C need rank >= 2",
            Kind::D => "type D needs rank >= 3",
            Kind::E => "type E exists only in ranks 6, 7, 8",
            Kind::F => "type F exists only in rank 4",
            Kind::G => "type G exists only in rank 2",
        };
        Err(Error::InvalidType {
            kind: self.letter(),
            rank,
            reason: reason.to_string(),
        })
    }

    /// Order of the Weyl group, from the classical formulas.
    pub fn weyl_order(self, rank: usize) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            Kind::A => fact(rank + 1),
            Kind::B | Kind::C => (1u128 << rank) * fact(rank),
            Kind::D => (1u128 << (rank - 1)) * fact(rank),
            Kind::E => match rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Kind::F => 1_152,
            Kind::G => 12,
        }
    }

    /// Number of positive roots, from the classical formulas.
    pub fn positive_root_count(self, rank: usize) -> usize {
        match self {
            Kind::A => rank * (rank + 1) / 2,
            Kind::B | Kind::C => rank * rank,
            Kind::D => rank * (rank - 1),
            Kind::E => match rank {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Kind::F => 24,
            Kind::G => 6,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Kind::A),
            "B" => Ok(Kind::B),
            "C" => Ok(Kind::C),
            "D" => Ok(Kind::D),
            "E" => Ok(Kind::E),
            "F" => Ok(Kind::F),
            "G" => Ok(Kind::G),
            other => Err(Error::Parse(format!("unknown root system type {other:?}"))),
        }
    }
}

/// A root, as its coefficient vector over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    coeffs: Vec<i32>,
}

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Self {
        Root { coeffs }
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i] = 1;
        Root { coeffs }
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.coeffs
    }

    pub fn is_positive(&self) -> bool {
        is_positive_vector(&self.coeffs)
    }

    pub fn neg(&self) -> Root {
        Root {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(i32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// True when the first nonzero entry is positive. For root vectors this is
/// equivalent to all entries being nonnegative.
pub(crate) fn is_positive_vector(v: &[i32]) -> bool {
    v.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

/// A weight in the fundamental-weight basis: `μ = Σ coords[j] λ_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    coords: Vec<Rational>,
}

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Self {
        Weight { coords }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Weight {
            coords: coords.iter().map(|&c| rat(c)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        Weight {
            coords: vec![Rational::zero(); rank],
        }
    }

    /// The fundamental weight `λ_p`.
    pub fn fundamental(rank: usize, p: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.coords[p] = Rational::one();
        w
    }

    /// The Weyl vector `ρ = Σ λ_j`.
    pub fn rho(rank: usize) -> Self {
        Weight {
            coords: vec![Rational::one(); rank],
        }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| a * factor).collect(),
        }
    }

    /// Converts to small rationals when every coordinate fits.
    pub fn to_ratio_i64(&self) -> Option<Vec<num_rational::Rational64>> {
        self.coords
            .iter()
            .map(|c| {
                Some(num_rational::Rational64::new(
                    c.numer().to_i64()?,
                    c.denom().to_i64()?,
                ))
            })
            .collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Exact data for a simple root system.
#[derive(Debug, Clone)]
pub struct RootSystemData {
    kind: Kind,
    rank: usize,
    cartan: Vec<Vec<i32>>,
    symmetrizer: Vec<i64>,
    inner: Vec<Vec<Rational>>,
    cartan_inv: Vec<Vec<Rational>>,
    positive: Vec<Root>,
    coroots: Vec<Vec<i32>>,
    index: HashMap<Vec<i32>, usize>,
}

/// Builds the root system of type `kind` and rank `rank`.
pub fn build_root_system(kind: Kind, rank: usize) -> Result<RootSystemData> {
    RootSystemData::new(kind, rank)
}

fn cartan_matrix(kind: Kind, rank: usize) -> Vec<Vec<i32>> {
    let mut c = vec![vec![0i32; rank]; rank];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match kind {
        Kind::A | Kind::B | Kind::C => {
            for i in 0..rank - 1 {
                link(i, i + 1);
            }
        }
        Kind::D => {
            for i in 0..rank - 2 {
                link(i, i + 1);
            }
            link(rank - 3, rank - 1);
        }
        Kind::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..rank - 1 {
                link(i, i + 1);
            }
        }
        Kind::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        Kind::G => link(0, 1),
    }
    // Multiple bonds: cartan[i][j] = -2 (-3 in G2) when α_i is the short end.
    match kind {
        Kind::B => c[rank - 1][rank - 2] = -2,
        Kind::C => c[rank - 2][rank - 1] = -2,
        Kind::F => c[2][1] = -2,
        Kind::G => c[0][1] = -3,
        _ => {}
    }
    c
}

fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pv = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &pv;
            inv[col][j] = &inv[col][j] / &pv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &a[col][j] * &f;
                    a[r][j] = &a[r][j] - t;
                    let t = &inv[col][j] * &f;
                    inv[r][j] = &inv[r][j] - t;
                }
            }
        }
    }
    Some(inv)
}

impl RootSystemData {
    pub fn new(kind: Kind, rank: usize) -> Result<Self> {
        kind.validate(rank)?;
        let cartan = cartan_matrix(kind, rank);
        let rs = Self::from_cartan(kind, cartan)?;
        if rs.positive.len() != kind.positive_root_count(rank) {
            return Err(Error::Inconsistency(format!(
                "{kind}{rank}: generated {} positive roots, expected {}",
                rs.positive.len(),
                kind.positive_root_count(rank)
            )));
        }
        Ok(rs)
    }

    fn from_cartan(kind: Kind, cartan: Vec<Vec<i32>>) -> Result<Self> {
        let rank = cartan.len();

        // d_i with d_i cartan[i][j] = d_j cartan[j][i], propagated along the
        // (connected) diagram and scaled to coprime integers.
        let mut d: Vec<Option<Rational>> = vec![None; rank];
        d[0] = Some(Rational::one());
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for j in 0..rank {
                if i != j && cartan[i][j] != 0 && d[j].is_none() {
                    let di = d[i].clone().unwrap();
                    d[j] = Some(di * rat(cartan[i][j] as i64) / rat(cartan[j][i] as i64));
                    queue.push_back(j);
                }
            }
        }
        let d: Vec<Rational> = d
            .into_iter()
            .map(|x| x.ok_or_else(|| Error::Inconsistency("disconnected Dynkin diagram".into())))
            .collect::<Result<_>>()?;
        let lcm_den = d.iter().fold(BigInt::one(), |acc, x| {
            num_integer::Integer::lcm(&acc, x.denom())
        });
        let symmetrizer: Vec<i64> = d
            .iter()
            .map(|x| {
                (x * Rational::from_integer(lcm_den.clone()))
                    .to_integer()
                    .to_i64()
                    .unwrap()
            })
            .collect();
        let dmax = *symmetrizer.iter().max().unwrap();

        // (α_i, α_j) = d_i cartan[i][j] / d_max, so long roots have length² 2.
        let inner: Vec<Vec<Rational>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        Rational::new(
                            BigInt::from(symmetrizer[i] * cartan[i][j] as i64),
                            BigInt::from(dmax),
                        )
                    })
                    .collect()
            })
            .collect();

        let cartan_q: Vec<Vec<Rational>> = cartan
            .iter()
            .map(|row| row.iter().map(|&x| rat(x as i64)).collect())
            .collect();
        let cartan_inv = invert(&cartan_q)
            .ok_or_else(|| Error::Inconsistency("singular Cartan matrix".into()))?;

        // Breadth-first closure of Δ under simple reflections, keeping the
        // positive images.
        let mut seen: HashSet<Vec<i32>> = HashSet::new();
        let mut queue: VecDeque<Vec<i32>> = VecDeque::new();
        for i in 0..rank {
            let r = Root::simple(rank, i).coeffs;
            seen.insert(r.clone());
            queue.push_back(r);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..rank {
                let pair: i32 = (0..rank).map(|j| beta[j] * cartan[i][j]).sum();
                if pair == 0 {
                    continue;
                }
                let mut img = beta.clone();
                img[i] -= pair;
                if img.iter().all(|&c| c >= 0)
                    && img.iter().any(|&c| c != 0)
                    && seen.insert(img.clone())
                {
                    queue.push_back(img);
                }
            }
        }
        let mut positive: Vec<Vec<i32>> = seen.into_iter().collect();
        positive.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });

        let mut coroots = Vec::with_capacity(positive.len());
        for a in &positive {
            // |α|² up to the common factor 2/d_max
            let norm: i64 = (0..rank)
                .flat_map(|i| (0..rank).map(move |j| (i, j)))
                .map(|(i, j)| a[i] as i64 * a[j] as i64 * symmetrizer[i] * cartan[i][j] as i64)
                .sum();
            let mut cv = Vec::with_capacity(rank);
            for j in 0..rank {
                let num = a[j] as i64 * 2 * symmetrizer[j];
                if num % norm != 0 {
                    return Err(Error::Inconsistency(format!(
                        "coroot of {a:?} has non-integral coefficient"
                    )));
                }
                cv.push((num / norm) as i32);
            }
            coroots.push(cv);
        }

        let index = positive
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();

        Ok(RootSystemData {
            kind,
            rank,
            cartan,
            symmetrizer,
            inner,
            cartan_inv,
            positive: positive.into_iter().map(Root::new).collect(),
            coroots,
            index,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `"A2"`, `"E6"`, ...
    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Integer symmetrizer `d` with `d_i cartan[i][j] = d_j cartan[j][i]`.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// Gram matrix of the simple roots, normalized so long roots have length² 2.
    pub fn inner_form(&self) -> &[Vec<Rational>] {
        &self.inner
    }

    /// Positive roots sorted by height (ties broken by coefficient vector).
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// Coefficients of `α^∨` over the simple coroots, for the positive root
    /// with index `idx`.
    pub fn coroot_coeffs(&self, idx: usize) -> &[i32] {
        &self.coroots[idx]
    }

    /// Looks a coefficient vector up: `(index of ±α in Φ_+, is_positive)`.
    pub fn lookup(&self, coeffs: &[i32]) -> Option<(usize, bool)> {
        if let Some(&i) = self.index.get(coeffs) {
            return Some((i, true));
        }
        let neg: Vec<i32> = coeffs.iter().map(|c| -c).collect();
        self.index.get(&neg).map(|&i| (i, false))
    }

    /// Simple coroot coefficients of `α^∨` for an arbitrary root.
    pub fn coroot_of(&self, alpha: &Root) -> Result<Vec<i32>> {
        let (i, pos) = self
            .lookup(alpha.coeffs())
            .ok_or_else(|| Error::NotARoot(alpha.coeffs().to_vec()))?;
        let sign = if pos { 1 } else { -1 };
        Ok(self.coroots[i].iter().map(|c| sign * c).collect())
    }

    /// Height of the coroot, `ht α^∨ = ⟨ρ, α^∨⟩`.
    pub fn height(&self, alpha: &Root) -> Result<i64> {
        Ok(self.coroot_of(alpha)?.iter().map(|&c| c as i64).sum())
    }

    /// `⟨λ_p, α^∨⟩`, the coefficient of `α_p^∨` in `α^∨`.
    pub fn pairing_lambda(&self, p: usize, alpha: &Root) -> Result<i64> {
        self.check_index(p)?;
        Ok(self.coroot_of(alpha)?[p] as i64)
    }

    /// `ht` of the positive root with index `idx`.
    pub fn coroot_height_at(&self, idx: usize) -> i64 {
        self.coroots[idx].iter().map(|&c| c as i64).sum()
    }

    pub fn check_index(&self, p: usize) -> Result<()> {
        if p < self.rank {
            Ok(())
        } else {
            Err(Error::InvalidParabolic { p, rank: self.rank })
        }
    }

    /// `⟨β, α_i^∨⟩` for a vector in root coordinates.
    pub fn pair_with_simple_coroot(&self, beta: &[i32], i: usize) -> i32 {
        (0..self.rank).map(|j| beta[j] * self.cartan[i][j]).sum()
    }

    /// `σ_i(β)` in root coordinates.
    pub fn reflect_simple(&self, i: usize, beta: &[i32]) -> Vec<i32> {
        let mut out = beta.to_vec();
        out[i] -= self.pair_with_simple_coroot(beta, i);
        out
    }

    /// Converts root coordinates to fundamental-weight coordinates.
    pub fn weight_from_root_coords(&self, x: &[Rational]) -> Weight {
        let coords = (0..self.rank)
            .map(|j| {
                (0..self.rank).fold(Rational::zero(), |acc, i| {
                    acc + &x[i] * rat(self.cartan[j][i] as i64)
                })
            })
            .collect();
        Weight::new(coords)
    }

    /// Converts fundamental-weight coordinates to root coordinates.
    pub fn weight_to_root_coords(&self, mu: &Weight) -> Vec<Rational> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank).fold(Rational::zero(), |acc, j| {
                    acc + &self.cartan_inv[i][j] * &mu.coords()[j]
                })
            })
            .collect()
    }

    pub fn root_as_weight(&self, alpha: &Root) -> Weight {
        let x: Vec<Rational> = alpha.coeffs().iter().map(|&c| rat(c as i64)).collect();
        self.weight_from_root_coords(&x)
    }

    /// `(μ, ν)` for vectors given in root coordinates.
    pub fn inner_root_coords(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (xi, row) in x.iter().zip(&self.inner) {
            for (yj, g) in y.iter().zip(row) {
                acc += xi * g * yj;
            }
        }
        acc
    }

    /// `⟨μ, α^∨⟩` for a weight and an arbitrary root.
    pub fn pair_weight_coroot(&self, mu: &Weight, alpha: &Root) -> Result<Rational> {
        let cv = self.coroot_of(alpha)?;
        Ok(cv
            .iter()
            .zip(mu.coords())
            .fold(Rational::zero(), |acc, (&c, m)| acc + m * rat(c as i64)))
    }

    pub fn fundamental_weight(&self, p: usize) -> Weight {
        Weight::fundamental(self.rank, p)
    }

    pub fn rho(&self) -> Weight {
        Weight::rho(self.rank)
    }

    /// Indices (into [`positive_roots`](Self::positive_roots)) of
    /// `Φ_{p+}`, the positive roots orthogonal to `λ_p`.
    pub fn parabolic_positive(&self, p: usize) -> Vec<usize> {
        (0..self.positive.len())
            .filter(|&i| self.positive[i].coeffs()[p] == 0)
            .collect()
    }

    /// `ρ_p = ½ Σ_{α∈Φ_{p+}} α`.
    pub fn rho_p(&self, p: usize) -> Result<Weight> {
        self.check_index(p)?;
        let mut sum = vec![Rational::zero(); self.rank];
        for i in self.parabolic_positive(p) {
            for (s, &c) in sum.iter_mut().zip(self.positive[i].coeffs()) {
                *s += rat(c as i64);
            }
        }
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let x: Vec<Rational> = sum.into_iter().map(|v| v * &half).collect();
        Ok(self.weight_from_root_coords(&x))
    }

    /// The center `c_p = 2⟨λ_p − ρ_p, α_p^∨⟩`.
    pub fn center(&self, p: usize) -> Result<i64> {
        let diff = self.fundamental_weight(p).sub(&self.rho_p(p)?);
        let c = &diff.coords()[p] * rat(2);
        if !c.is_integer() || !c.is_positive() {
            return Err(Error::Inconsistency(format!(
                "center of {} at p={p} is {c}, not a positive integer",
                self.label()
            )));
        }
        Ok(c.to_integer().to_i64().unwrap())
    }

    /// Degrees of the parabolic Weyl group `W_p`, read off from the
    /// coroot-height distribution of `Φ_{p+}`: the exponents form the
    /// partition conjugate to the height counts, and each degree is an
    /// exponent plus one. Returned in nondecreasing order.
    pub fn degrees_of_parabolic(&self, p: usize) -> Result<Vec<u32>> {
        self.check_index(p)?;
        let mut counts: Vec<usize> = Vec::new();
        for i in self.parabolic_positive(p) {
            let h = self.coroot_height_at(i) as usize;
            if counts.len() <= h {
                counts.resize(h + 1, 0);
            }
            counts[h] += 1;
        }
        let mut degrees = Vec::new();
        for h in 2..=counts.len() {
            let below = counts[h - 1];
            let here = counts.get(h).copied().unwrap_or(0);
            for _ in 0..below.saturating_sub(here) {
                degrees.push(h as u32);
            }
        }
        Ok(degrees)
    }

    /// Indices of the simple roots of `Δ_p = Δ ∖ {α_p}`.
    pub fn parabolic_simple(&self, p: usize) -> Vec<usize> {
        (0..self.rank).filter(|&j| j != p).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(kind: Kind, rank: usize) -> RootSystemData {
        build_root_system(kind, rank).unwrap()
    }

    #[test]
    fn a2_positive_roots() {
        let a2 = rs(Kind::A, 2);
        let roots: Vec<Vec<i32>> = a2
            .positive_roots()
            .iter()
            .map(|r| r.coeffs().to_vec())
            .collect();
        assert_eq!(roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(rs(Kind::A, 1).num_positive(), 1);
    }

    #[test]
    fn classical_root_counts() {
        for (k, r) in [
            (Kind::A, 5),
            (Kind::B, 4),
            (Kind::C, 5),
            (Kind::D, 4),
            (Kind::D, 6),
            (Kind::E, 6),
            (Kind::E, 7),
            (Kind::E, 8),
            (Kind::F, 4),
            (Kind::G, 2),
        ] {
            assert_eq!(rs(k, r).num_positive(), k.positive_root_count(r), "{k}{r}");
        }
        assert_eq!(rs(Kind::G, 2).num_positive(), 6);
        assert_eq!(rs(Kind::F, 4).num_positive(), 24);
    }

    #[test]
    fn invalid_types_are_rejected() {
        for (k, r) in [
            (Kind::A, 0),
            (Kind::B, 1),
            (Kind::E, 5),
            (Kind::F, 3),
            (Kind::G, 3),
            (Kind::D, 2),
        ] {
            assert!(
                matches!(build_root_system(k, r), Err(Error::InvalidType { .. })),
                "{k}{r}"
            );
        }
    }

    #[test]
    fn heights_and_pairings() {
        let a2 = rs(Kind::A, 2);
        assert_eq!(a2.height(&Root::new(vec![1, 1])).unwrap(), 2);
        assert_eq!(a2.height(&Root::new(vec![-1, -1])).unwrap(), -2);
        assert!(matches!(
            a2.height(&Root::new(vec![2, 1])),
            Err(Error::NotARoot(_))
        ));
        assert_eq!(a2.pairing_lambda(0, &Root::new(vec![1, 1])).unwrap(), 1);
        assert_eq!(a2.pairing_lambda(0, &Root::new(vec![0, 1])).unwrap(), 0);
        for k in [Kind::B, Kind::C] {
            let r = rs(k, 3);
            for p in 0..3 {
                assert_eq!(r.pairing_lambda(p, &Root::simple(3, p)).unwrap(), 1);
            }
        }
    }

    #[test]
    fn g2_highest_coroot_height() {
        // max over coroots, enumerated directly
        let g2 = rs(Kind::G, 2);
        let max = (0..g2.num_positive())
            .map(|i| g2.coroot_height_at(i))
            .max()
            .unwrap();
        assert_eq!(max, 5);
    }

    #[test]
    fn cartan_shape() {
        for (k, r) in [
            (Kind::B, 3),
            (Kind::C, 3),
            (Kind::F, 4),
            (Kind::G, 2),
            (Kind::E, 7),
        ] {
            let s = rs(k, r);
            for i in 0..r {
                assert_eq!(s.cartan()[i][i], 2);
                for j in 0..r {
                    if i != j {
                        assert!((-3..=0).contains(&s.cartan()[i][j]));
                    }
                }
            }
        }
    }

    #[test]
    fn fundamental_weights_are_dual_to_coroots() {
        for (k, r) in [
            (Kind::B, 3),
            (Kind::C, 4),
            (Kind::G, 2),
            (Kind::F, 4),
            (Kind::D, 5),
        ] {
            let s = rs(k, r);
            for j in 0..r {
                let lam = s.weight_to_root_coords(&s.fundamental_weight(j));
                for i in 0..r {
                    let ai: Vec<Rational> = (0..r).map(|t| rat((t == i) as i64)).collect();
                    // ⟨α_i^∨, λ_j⟩ = 2(α_i, λ_j)/(α_i, α_i)
                    let v = rat(2) * s.inner_root_coords(&ai, &lam) / s.inner_root_coords(&ai, &ai);
                    assert_eq!(v, rat((i == j) as i64));
                }
            }
        }
    }

    #[test]
    fn positive_roots_sum_to_two_rho() {
        for (k, r) in [
            (Kind::A, 4),
            (Kind::B, 3),
            (Kind::G, 2),
            (Kind::E, 6),
            (Kind::F, 4),
        ] {
            let s = rs(k, r);
            let mut sum = vec![Rational::zero(); r];
            for a in s.positive_roots() {
                for (acc, &c) in sum.iter_mut().zip(a.coeffs()) {
                    *acc += rat(c as i64);
                }
            }
            assert_eq!(s.weight_from_root_coords(&sum), s.rho().scale(&rat(2)));
        }
    }

    #[test]
    fn rho_p_examples() {
        let a2 = rs(Kind::A, 2);
        // 2ρ_1 = α_2
        let expected = a2
            .root_as_weight(&Root::new(vec![0, 1]))
            .scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(a2.rho_p(0).unwrap(), expected);
        assert_eq!(rs(Kind::A, 1).rho_p(0).unwrap(), Weight::zero(1));

        let b2 = rs(Kind::B, 2);
        let phi = b2.parabolic_positive(0);
        assert_eq!(phi.len(), 1);
        let half_alpha = b2
            .root_as_weight(&b2.positive_roots()[phi[0]])
            .scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(b2.rho_p(0).unwrap(), half_alpha);

        // ⟨ρ_p, α_k^∨⟩ = 1 for k ≠ p
        for (k, r) in [(Kind::E, 6), (Kind::C, 4), (Kind::F, 4)] {
            let s = rs(k, r);
            for p in 0..r {
                let rp = s.rho_p(p).unwrap();
                for j in 0..r {
                    if j != p {
                        assert_eq!(rp.coords()[j], Rational::one());
                    }
                }
            }
        }
    }

    #[test]
    fn centers() {
        assert_eq!(rs(Kind::A, 2).center(0).unwrap(), 3);
        assert_eq!(rs(Kind::A, 1).center(0).unwrap(), 2);
        for (k, r) in [
            (Kind::A, 6),
            (Kind::B, 6),
            (Kind::C, 6),
            (Kind::D, 6),
            (Kind::E, 6),
            (Kind::F, 4),
            (Kind::G, 2),
        ] {
            let s = rs(k, r);
            for p in 0..r {
                assert!(s.center(p).unwrap() > 0);
            }
        }
    }

    #[test]
    fn degrees() {
        assert_eq!(rs(Kind::A, 2).degrees_of_parabolic(0).unwrap(), vec![2]);
        assert_eq!(rs(Kind::A, 3).degrees_of_parabolic(1).unwrap(), vec![2, 2]);
        assert!(rs(Kind::A, 1).degrees_of_parabolic(0).unwrap().is_empty());
        // E6 with the branch node removed leaves A5: degrees 2..6
        assert_eq!(
            rs(Kind::E, 6).degrees_of_parabolic(1).unwrap(),
            vec![2, 3, 4, 5, 6]
        );
    }

    #[test]
    fn every_root_has_definite_sign() {
        let s = rs(Kind::F, 4);
        for a in s.positive_roots() {
            assert!(a.coeffs().iter().all(|&c| c >= 0));
            assert!(!a.neg().is_positive());
            assert!(a.is_positive());
            let sum: Vec<i32> = a
                .coeffs()
                .iter()
                .zip(a.neg().coeffs())
                .map(|(x, y)| x + y)
                .collect();
            assert!(sum.iter().all(|&c| c == 0));
        }
    }
}
