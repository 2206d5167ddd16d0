//! Weyl groups, longest elements, inversion sets, admissibility and
//! diagram automorphisms.
//!
//! A Weyl element is stored as the integer matrix of its action on
//! simple-root coordinates: column `j` is the image of `α_j`. Composition
//! is the matrix product and the action on a root is a matrix–vector
//! product.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rootsys::{is_positive_vector, Rational, Root, RootSystemData, Weight};

/// Bit `i` set iff the positive root with index `i` belongs to the set.
/// 128 bits cover every supported type (E8 has 120 positive roots).
pub type RootMask = u128;

#[derive(Debug, Clone)]
pub struct WeylElement {
    rank: usize,
    mat: Vec<i8>,
    length: usize,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.mat.cmp(&other.mat)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.encoding())
    }
}

fn count_inversions(rs: &RootSystemData, mat: &[i8]) -> usize {
    let r = rs.rank();
    rs.positive_roots()
        .iter()
        .filter(|a| !is_positive_vector(&mat_apply(r, mat, a.coeffs())))
        .count()
}

fn mat_apply(r: usize, mat: &[i8], v: &[i32]) -> Vec<i32> {
    (0..r)
        .map(|i| (0..r).map(|j| mat[i * r + j] as i32 * v[j]).sum())
        .collect()
}

fn mat_mul(r: usize, a: &[i8], b: &[i8]) -> Vec<i8> {
    let mut out = vec![0i8; r * r];
    for i in 0..r {
        for j in 0..r {
            let mut acc = 0i32;
            for k in 0..r {
                acc += a[i * r + k] as i32 * b[k * r + j] as i32;
            }
            out[i * r + j] = acc as i8;
        }
    }
    out
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut mat = vec![0i8; rank * rank];
        for i in 0..rank {
            mat[i * rank + i] = 1;
        }
        WeylElement {
            rank,
            mat,
            length: 0,
        }
    }

    /// Wraps a matrix, checking that it permutes the roots.
    pub fn from_matrix(rs: &RootSystemData, mat: Vec<i8>) -> Result<Self> {
        let r = rs.rank();
        if mat.len() != r * r {
            return Err(Error::InvalidArgument(format!(
                "matrix has {} entries, expected {}",
                mat.len(),
                r * r
            )));
        }
        for a in rs.positive_roots() {
            let img = mat_apply(r, &mat, a.coeffs());
            if rs.lookup(&img).is_none() {
                return Err(Error::InvalidArgument(format!(
                    "matrix sends root {a} to non-root {img:?}"
                )));
            }
        }
        let length = count_inversions(rs, &mat);
        Ok(WeylElement {
            rank: r,
            mat,
            length,
        })
    }

    fn from_trusted(rs: &RootSystemData, mat: Vec<i8>) -> Self {
        let length = count_inversions(rs, &mat);
        WeylElement {
            rank: rs.rank(),
            mat,
            length,
        }
    }

    /// The simple reflection `σ_i` (0-based).
    pub fn simple_reflection(rs: &RootSystemData, i: usize) -> Self {
        WeylElement::identity(rs.rank()).mul_simple(rs, i)
    }

    /// `σ_{word[0]} σ_{word[1]} ⋯` with 0-based indices.
    pub fn from_word(rs: &RootSystemData, word: &[usize]) -> Self {
        let mut w = WeylElement::identity(rs.rank());
        for &i in word {
            w = w.mul_simple(rs, i);
        }
        w
    }

    /// `w σ_j`. Column `k` becomes `w α_k − cartan[j][k] w α_j`.
    pub fn mul_simple(&self, rs: &RootSystemData, j: usize) -> Self {
        let r = self.rank;
        let mut mat = self.mat.clone();
        let cartan = rs.cartan();
        for k in 0..r {
            let c = cartan[j][k];
            if k == j {
                for i in 0..r {
                    mat[i * r + k] = -self.mat[i * r + j];
                }
            } else if c != 0 {
                for i in 0..r {
                    mat[i * r + k] =
                        (self.mat[i * r + k] as i32 - c * self.mat[i * r + j] as i32) as i8;
                }
            }
        }
        let up = is_positive_vector(&self.column(j));
        let length = if up { self.length + 1 } else { self.length - 1 };
        WeylElement {
            rank: r,
            mat,
            length,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Row-major matrix entries.
    pub fn matrix(&self) -> &[i8] {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> i8 {
        self.mat[i * self.rank + j]
    }

    /// `w α_j` in root coordinates.
    pub fn column(&self, j: usize) -> Vec<i32> {
        (0..self.rank).map(|i| self.entry(i, j) as i32).collect()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn apply(&self, v: &[i32]) -> Vec<i32> {
        mat_apply(self.rank, &self.mat, v)
    }

    pub fn apply_root(&self, alpha: &Root) -> Root {
        Root::new(self.apply(alpha.coeffs()))
    }

    /// `self · rhs`.
    pub fn compose(&self, rhs: &WeylElement, rs: &RootSystemData) -> WeylElement {
        WeylElement::from_trusted(rs, mat_mul(self.rank, &self.mat, &rhs.mat))
    }

    /// Column `j` of `w⁻¹` is the root sent to `α_j` by `w`.
    pub fn inverse(&self, rs: &RootSystemData) -> WeylElement {
        let r = self.rank;
        let mut mat = vec![0i8; r * r];
        for a in rs.positive_roots() {
            let img = self.apply(a.coeffs());
            if let Some(j) = simple_index(&img) {
                for i in 0..r {
                    mat[i * r + j] = a.coeffs()[i] as i8;
                }
            } else {
                let neg: Vec<i32> = img.iter().map(|c| -c).collect();
                if let Some(j) = simple_index(&neg) {
                    for i in 0..r {
                        mat[i * r + j] = -a.coeffs()[i] as i8;
                    }
                }
            }
        }
        WeylElement {
            rank: r,
            mat,
            length: self.length,
        }
    }

    /// Action on a weight given in the fundamental-weight basis.
    pub fn act_on_weight(&self, rs: &RootSystemData, mu: &Weight) -> Weight {
        let x = rs.weight_to_root_coords(mu);
        let r = self.rank;
        let y: Vec<Rational> = (0..r)
            .map(|i| {
                (0..r).fold(Rational::from_integer(0.into()), |acc, j| {
                    acc + &x[j] * Rational::from_integer((self.entry(i, j) as i64).into())
                })
            })
            .collect();
        rs.weight_from_root_coords(&y)
    }

    /// `Φ_w = Φ_+ ∩ w⁻¹Φ_-` as a bit mask over positive-root indices.
    pub fn inversion_mask(&self, rs: &RootSystemData) -> RootMask {
        let mut mask = 0u128;
        for (i, a) in rs.positive_roots().iter().enumerate() {
            if !is_positive_vector(&self.apply(a.coeffs())) {
                mask |= 1u128 << i;
            }
        }
        mask
    }

    /// Comma-separated row-major matrix entries.
    pub fn encoding(&self) -> String {
        let parts: Vec<String> = self.mat.iter().map(|x| x.to_string()).collect();
        parts.join(",")
    }
}

/// Index `j` if `v` is the simple root `α_j`.
pub(crate) fn simple_index(v: &[i32]) -> Option<usize> {
    let mut found = None;
    for (j, &c) in v.iter().enumerate() {
        match c {
            0 => {}
            1 if found.is_none() => found = Some(j),
            _ => return None,
        }
    }
    found
}

/// Upper bound on the order of groups the engine agrees to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupCap {
    pub max_order: u128,
}

impl GroupCap {
    /// |W(E7)|.
    pub const DEFAULT_MAX_ORDER: u128 = 2_903_040;

    /// Admits E8 (|W(E8)| = 696729600).
    pub fn with_e8() -> Self {
        GroupCap {
            max_order: 696_729_600,
        }
    }

    pub fn check(&self, order: u128) -> Result<()> {
        if order > self.max_order {
            Err(Error::CapExceeded {
                order,
                cap: self.max_order,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for GroupCap {
    fn default() -> Self {
        GroupCap {
            max_order: Self::DEFAULT_MAX_ORDER,
        }
    }
}

/// Enumerates the subgroup generated by the simple reflections in `gens`,
/// in order of increasing length (ties sorted by matrix).
///
/// Right multiplication by `σ_j` raises the length exactly when
/// `w α_j > 0`, so each length level is generated from the previous one
/// alone and only needs deduplication within itself.
pub fn enumerate_subgroup(
    rs: &RootSystemData,
    gens: &[usize],
    max_order: u128,
) -> Result<Vec<WeylElement>> {
    let mut all = vec![WeylElement::identity(rs.rank())];
    let mut level = all.clone();
    while !level.is_empty() {
        let candidates: Vec<WeylElement> = level
            .par_iter()
            .flat_map_iter(|w| {
                gens.iter()
                    .filter(move |&&j| is_positive_vector(&w.column(j)))
                    .map(move |&j| w.mul_simple(rs, j))
            })
            .collect();
        let mut seen: HashSet<&[i8]> = HashSet::with_capacity(candidates.len());
        let mut next = Vec::new();
        for c in &candidates {
            if seen.insert(c.matrix()) {
                next.push(c.clone());
            }
        }
        next.sort();
        all.extend(next.iter().cloned());
        if all.len() as u128 > max_order {
            return Err(Error::CapExceeded {
                order: all.len() as u128,
                cap: max_order,
            });
        }
        level = next;
    }
    Ok(all)
}

/// The full Weyl group with lookup tables.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    index: HashMap<Vec<i8>, usize>,
    inversions: Vec<RootMask>,
}

impl WeylGroup {
    /// Enumerates `W`, refusing when the classical order exceeds the cap.
    /// Elements are sorted by their matrix encoding.
    pub fn enumerate(rs: &RootSystemData, cap: GroupCap) -> Result<Self> {
        let order = rs.kind().weyl_order(rs.rank());
        cap.check(order)?;
        let gens: Vec<usize> = (0..rs.rank()).collect();
        let mut elements = enumerate_subgroup(rs, &gens, order)?;
        if elements.len() as u128 != order {
            return Err(Error::Inconsistency(format!(
                "{}: enumerated {} elements, expected {order}",
                rs.label(),
                elements.len()
            )));
        }
        elements.par_sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, w)| (w.mat.clone(), i))
            .collect();
        let inversions = elements.par_iter().map(|w| w.inversion_mask(rs)).collect();
        Ok(WeylGroup {
            elements,
            index,
            inversions,
        })
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&w.mat).copied()
    }

    pub fn inversion_mask(&self, i: usize) -> RootMask {
        self.inversions[i]
    }
}

/// Enumerates `W` with the given cap.
pub fn enumerate(rs: &RootSystemData, cap: GroupCap) -> Result<Vec<WeylElement>> {
    Ok(WeylGroup::enumerate(rs, cap)?.elements)
}

/// Longest element of the subgroup generated by `gens`: ascend greedily
/// until every generator's simple root is sent to a negative root.
pub fn longest_in(rs: &RootSystemData, gens: &[usize]) -> WeylElement {
    let mut w = WeylElement::identity(rs.rank());
    while let Some(&j) = gens.iter().find(|&&j| is_positive_vector(&w.column(j))) {
        w = w.mul_simple(rs, j);
    }
    w
}

/// `w₀`.
pub fn longest_element(rs: &RootSystemData) -> WeylElement {
    let gens: Vec<usize> = (0..rs.rank()).collect();
    longest_in(rs, &gens)
}

/// `w_p`, the longest element of `W_p`.
pub fn longest_parabolic(rs: &RootSystemData, p: usize) -> Result<WeylElement> {
    rs.check_index(p)?;
    Ok(longest_in(rs, &rs.parabolic_simple(p)))
}

/// `Φ_w` as a list of positive roots.
pub fn inversion_set(rs: &RootSystemData, w: &WeylElement) -> Vec<Root> {
    rs.positive_roots()
        .iter()
        .filter(|a| !is_positive_vector(&w.apply(a.coeffs())))
        .cloned()
        .collect()
}

/// `Δ_p ⊂ w⁻¹(Δ ∪ Φ_-)`: every `β ∈ Δ_p` has `wβ` simple or negative.
pub fn admissible(rs: &RootSystemData, p: usize, w: &WeylElement) -> bool {
    (0..rs.rank()).filter(|&j| j != p).all(|j| {
        let img = w.column(j);
        !is_positive_vector(&img) || simple_index(&img).is_some()
    })
}

/// The involution `ι(w) = w₀ w w_p` for a fixed parabolic.
#[derive(Debug, Clone)]
pub struct FeInvolution {
    pub w0: WeylElement,
    pub wp: WeylElement,
}

impl FeInvolution {
    pub fn new(rs: &RootSystemData, p: usize) -> Result<Self> {
        Ok(FeInvolution {
            w0: longest_element(rs),
            wp: longest_parabolic(rs, p)?,
        })
    }

    pub fn apply(&self, rs: &RootSystemData, w: &WeylElement) -> WeylElement {
        self.w0.compose(w, rs).compose(&self.wp, rs)
    }
}

/// `w ↦ w₀ w w_p`.
pub fn fe_involution(rs: &RootSystemData, p: usize, w: &WeylElement) -> Result<WeylElement> {
    Ok(FeInvolution::new(rs, p)?.apply(rs, w))
}

/// A permutation of the simple roots preserving the Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramAutomorphism {
    perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn identity(rank: usize) -> Self {
        DiagramAutomorphism {
            perm: (0..rank).collect(),
        }
    }

    /// Wraps `perm` (0-based, `perm[i] = ϖ(i)`), checking it preserves the
    /// Cartan matrix.
    pub fn new(rs: &RootSystemData, perm: Vec<usize>) -> Result<Self> {
        let r = rs.rank();
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (0..r).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument(format!(
                "{perm:?} is not a permutation of 0..{r}"
            )));
        }
        let c = rs.cartan();
        for i in 0..r {
            for j in 0..r {
                if c[perm[i]][perm[j]] != c[i][j] {
                    return Err(Error::InvalidArgument(format!(
                        "{perm:?} does not preserve the Cartan matrix"
                    )));
                }
            }
        }
        Ok(DiagramAutomorphism { perm })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        DiagramAutomorphism { perm: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        DiagramAutomorphism {
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
        }
    }

    /// Moves coordinate `i` to position `ϖ(i)`. Valid for root coordinates,
    /// coroot coordinates and fundamental-weight coordinates alike.
    pub fn permute<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.perm[i]] = x.clone();
        }
        out
    }

    pub fn apply_root(&self, alpha: &Root) -> Root {
        Root::new(self.permute(alpha.coeffs()))
    }

    pub fn apply_weight(&self, mu: &Weight) -> Weight {
        Weight::new(self.permute(mu.coords()))
    }

    /// `ϖ w ϖ⁻¹`.
    pub fn conjugate(&self, w: &WeylElement) -> WeylElement {
        let r = w.rank;
        let mut mat = vec![0i8; r * r];
        for i in 0..r {
            for j in 0..r {
                mat[self.perm[i] * r + self.perm[j]] = w.mat[i * r + j];
            }
        }
        WeylElement {
            rank: r,
            mat,
            length: w.length,
        }
    }
}

impl fmt::Display for DiagramAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.perm.iter().map(|p| (p + 1).to_string()).collect();
        write!(f, "({})", parts.join(" "))
    }
}

/// All Cartan-preserving permutations, identity first.
pub fn diagram_automorphisms(rs: &RootSystemData) -> Vec<DiagramAutomorphism> {
    fn extend(
        c: &[Vec<i32>],
        perm: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<DiagramAutomorphism>,
    ) {
        let i = perm.len();
        let r = c.len();
        if i == r {
            out.push(DiagramAutomorphism { perm: perm.clone() });
            return;
        }
        for t in 0..r {
            if used[t] || c[t][t] != c[i][i] {
                continue;
            }
            let consistent = (0..i).all(|j| c[t][perm[j]] == c[i][j] && c[perm[j]][t] == c[j][i]);
            if consistent {
                used[t] = true;
                perm.push(t);
                extend(c, perm, used, out);
                perm.pop();
                used[t] = false;
            }
        }
    }
    let mut out = Vec::new();
    let r = rs.rank();
    extend(
        rs.cartan(),
        &mut Vec::with_capacity(r),
        &mut vec![false; r],
        &mut out,
    );
    out.sort();
    out
}

/// `ϖ₀` with `ϖ₀ w₀ = −Id`, read off from `−w₀` on the simple roots.
pub fn varpi0(rs: &RootSystemData) -> DiagramAutomorphism {
    let w0 = longest_element(rs);
    let perm = (0..rs.rank())
        .map(|i| {
            let neg: Vec<i32> = w0.column(i).iter().map(|c| -c).collect();
            simple_index(&neg).expect("w0 maps simple roots to negative simple roots")
        })
        .collect();
    DiagramAutomorphism { perm }
}
