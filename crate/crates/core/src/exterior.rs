//! Exterior algebra over `Q^n` for small `n`: graded elements, wedge,
//! interior products and the top-form trivialization pairing.
//!
//! Basis `g`-vectors are indexed by strictly increasing tuples of 1-based
//! indices, stored internally as bitmasks. The lexicographic enumeration of
//! those tuples ([`basis_masks`]) fixes the row and column order of every
//! matrix built downstream, and the single global trivialization is
//! `e_{1..n} ↦ 1`; every duality in the crate routes through it.
//!
//! Sign conventions are pinned here once:
//! * wedge signs come from the parity of the merge permutation,
//! * `contract(e*_i, e_{i1..ig}) = Σ_k (-1)^(k-1) [i = i_k] e_{..î_k..}`,
//!   iterated right-to-left over the indices of a higher-grade dual key.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::exactla::{rat, Matrix, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtError {
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(u32, u32),
    #[error("grades {0} + {1} do not fill the ambient dimension {2}")]
    GradeMismatch(u32, u32, u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Element of `Λ^g(V_n)`, sparse over bitmask keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElement {
    dim: u32,
    grade: u32,
    coeffs: BTreeMap<u32, Rat>,
}

/// Element of `Λ^g(V_n*)`, same shape as [`ExtElement`] but acting on it by
/// contraction rather than by wedge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtDualElement(pub(crate) ExtElement);

fn tuple_to_mask(indices: &[u32]) -> u32 {
    let mut mask = 0u32;
    for &i in indices {
        assert!(i >= 1 && i <= 32, "indices are 1-based");
        assert!(mask & (1 << (i - 1)) == 0, "indices must be distinct");
        mask |= 1 << (i - 1);
    }
    mask
}

fn mask_to_tuple(mask: u32) -> Vec<u32> {
    (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

/// Parity sign of merging the (sorted) index sets `a` and `b` into one
/// sorted tuple: `(-1)^inversions` where an inversion is a pair `i ∈ a`,
/// `j ∈ b` with `j < i`.
fn merge_sign(a: u32, b: u32) -> i32 {
    let mut inversions = 0u32;
    let mut bits = a;
    while bits != 0 {
        let low = bits & bits.wrapping_neg();
        inversions += (b & (low - 1)).count_ones();
        bits ^= low;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl ExtElement {
    pub fn zero(dim: u32, grade: u32) -> Self {
        assert!(grade <= dim, "grade must not exceed ambient dimension");
        ExtElement {
            dim,
            grade,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis vector `e_{i1..ig}` for a strictly increasing 1-based tuple.
    pub fn basis(dim: u32, indices: &[u32]) -> Self {
        Self::term(dim, indices, rat(1))
    }

    /// `c · e_{i1..ig}`. Unsorted tuples are sorted with the permutation sign
    /// absorbed into the coefficient.
    pub fn term(dim: u32, indices: &[u32], coeff: Rat) -> Self {
        assert!(indices.iter().all(|&i| 1 <= i && i <= dim));
        let mut sorted = indices.to_vec();
        let mut sign = 1i32;
        // insertion sort, counting transpositions
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        let mut el = ExtElement::zero(dim, indices.len() as u32);
        let c = if sign > 0 { coeff } else { -coeff };
        if !c.is_zero() {
            el.coeffs.insert(tuple_to_mask(&sorted), c);
        }
        el
    }

    pub fn from_terms(dim: u32, grade: u32, terms: &[(&[u32], Rat)]) -> Self {
        let mut acc = ExtElement::zero(dim, grade);
        for (indices, coeff) in terms {
            assert_eq!(indices.len() as u32, grade);
            acc = acc.add(&ExtElement::term(dim, indices, coeff.clone()));
        }
        acc
    }

    /// Builds a grade-`g` element from dense coefficients in lexicographic
    /// basis order.
    pub fn from_dense(dim: u32, grade: u32, coeffs: &[Rat]) -> Self {
        let masks = basis_masks(dim, grade);
        assert_eq!(coeffs.len(), masks.len());
        let mut el = ExtElement::zero(dim, grade);
        for (mask, c) in masks.iter().zip(coeffs) {
            if !c.is_zero() {
                el.coeffs.insert(*mask, c.clone());
            }
        }
        el
    }

    /// Dense coefficient vector in lexicographic basis order.
    pub fn to_dense(&self) -> Vec<Rat> {
        basis_masks(self.dim, self.grade)
            .iter()
            .map(|m| self.coeffs.get(m).cloned().unwrap_or_else(Rat::zero))
            .collect()
    }

    pub fn ambient_dim(&self) -> u32 {
        self.dim
    }

    pub fn grade(&self) -> u32 {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of the basis vector given by a strictly increasing tuple.
    pub fn coeff(&self, indices: &[u32]) -> Rat {
        self.coeffs
            .get(&tuple_to_mask(indices))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Terms as (increasing 1-based tuple, coefficient), in lex order.
    pub fn terms(&self) -> Vec<(Vec<u32>, Rat)> {
        let masks = basis_masks(self.dim, self.grade);
        masks
            .iter()
            .filter_map(|m| self.coeffs.get(m).map(|c| (mask_to_tuple(*m), c.clone())))
            .collect()
    }

    pub fn add(&self, other: &ExtElement) -> ExtElement {
        assert_eq!(self.dim, other.dim);
        assert_eq!(self.grade, other.grade);
        let mut coeffs = self.coeffs.clone();
        for (k, v) in &other.coeffs {
            let e = coeffs.entry(*k).or_insert_with(Rat::zero);
            *e += v;
            if e.is_zero() {
                coeffs.remove(k);
            }
        }
        ExtElement {
            dim: self.dim,
            grade: self.grade,
            coeffs,
        }
    }

    pub fn sub(&self, other: &ExtElement) -> ExtElement {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, s: &Rat) -> ExtElement {
        if s.is_zero() {
            return ExtElement::zero(self.dim, self.grade);
        }
        ExtElement {
            dim: self.dim,
            grade: self.grade,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * s)).collect(),
        }
    }

    /// Exterior product. Grades above the ambient dimension wedge to the zero
    /// element of the clamped grade.
    pub fn wedge(&self, other: &ExtElement) -> Result<ExtElement, ExtError> {
        if self.dim != other.dim {
            return Err(ExtError::AmbientMismatch(self.dim, other.dim));
        }
        let grade = (self.grade + other.grade).min(self.dim);
        if self.grade + other.grade > self.dim {
            return Ok(ExtElement::zero(self.dim, grade));
        }
        let mut out = ExtElement::zero(self.dim, grade);
        for (ka, va) in &self.coeffs {
            for (kb, vb) in &other.coeffs {
                if ka & kb != 0 {
                    continue;
                }
                let sign = merge_sign(*ka, *kb);
                let c = va * vb;
                let c = if sign > 0 { c } else { -c };
                let e = out.coeffs.entry(ka | kb).or_insert_with(Rat::zero);
                *e += c;
                if e.is_zero() {
                    out.coeffs.remove(&(ka | kb));
                }
            }
        }
        Ok(out)
    }

    /// Coefficient of `e_{1..n}` in `self ∧ other`.
    pub fn top_pair(&self, other: &ExtElement) -> Result<Rat, ExtError> {
        if self.dim != other.dim {
            return Err(ExtError::AmbientMismatch(self.dim, other.dim));
        }
        if self.grade + other.grade != self.dim {
            return Err(ExtError::GradeMismatch(self.grade, other.grade, self.dim));
        }
        let full = (1u32 << self.dim) - 1;
        let mut acc = Rat::zero();
        for (ka, va) in &self.coeffs {
            let kb = full ^ ka;
            if let Some(vb) = other.coeffs.get(&kb) {
                let sign = merge_sign(*ka, kb);
                let c = va * vb;
                acc += if sign > 0 { c } else { -c };
            }
        }
        Ok(acc)
    }

    /// The image of `self` under `Λ^g` of the linear map `g_matrix` on `V`.
    pub fn lambda_power_action(&self, g_matrix: &Matrix) -> Result<ExtElement, ExtError> {
        if g_matrix.rows() != self.dim as usize || g_matrix.cols() != self.dim as usize {
            return Err(ExtError::DimensionMismatch(format!(
                "expected a {0}x{0} matrix on the ambient space",
                self.dim
            )));
        }
        let mut out = ExtElement::zero(self.dim, self.grade);
        for (k, v) in &self.coeffs {
            // wedge of the image columns g(e_{i1}) ∧ ... ∧ g(e_{ig})
            let mut acc = ExtElement::term(self.dim, &[], rat(1));
            for i in mask_to_tuple(*k) {
                let col = ExtElement::from_dense(
                    self.dim,
                    1,
                    &(0..self.dim as usize)
                        .map(|r| g_matrix.at(r, (i - 1) as usize).clone())
                        .collect::<Vec<_>>(),
                );
                acc = acc.wedge(&col)?;
            }
            out = out.add(&acc.scale(v));
        }
        Ok(out)
    }

    /// Dual element representing `⟨self ∧ · ⟩` under the `e_{1..n} ↦ 1`
    /// trivialization: a grade-`(n-g)` functional on `Λ^(n-g)(V)`.
    pub fn dualize(&self) -> ExtDualElement {
        let co_grade = self.dim - self.grade;
        let full = (1u32 << self.dim) - 1;
        let mut el = ExtElement::zero(self.dim, co_grade);
        for (k, v) in &self.coeffs {
            let kc = full ^ k;
            let sign = merge_sign(*k, kc);
            let c = if sign > 0 { v.clone() } else { -v.clone() };
            el.coeffs.insert(kc, c);
        }
        ExtDualElement(el)
    }
}

impl ExtDualElement {
    pub fn zero(dim: u32, grade: u32) -> Self {
        ExtDualElement(ExtElement::zero(dim, grade))
    }

    pub fn basis(dim: u32, indices: &[u32]) -> Self {
        ExtDualElement(ExtElement::basis(dim, indices))
    }

    pub fn term(dim: u32, indices: &[u32], coeff: Rat) -> Self {
        ExtDualElement(ExtElement::term(dim, indices, coeff))
    }

    pub fn ambient_dim(&self) -> u32 {
        self.0.ambient_dim()
    }

    pub fn grade(&self) -> u32 {
        self.0.grade()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn coeff(&self, indices: &[u32]) -> Rat {
        self.0.coeff(indices)
    }

    pub fn to_dense(&self) -> Vec<Rat> {
        self.0.to_dense()
    }

    pub fn add(&self, other: &ExtDualElement) -> ExtDualElement {
        ExtDualElement(self.0.add(&other.0))
    }

    pub fn scale(&self, s: &Rat) -> ExtDualElement {
        ExtDualElement(self.0.scale(s))
    }

    /// Interior product: lowers the grade of `b` by the grade of `self`.
    /// A dual key contracts index by index, rightmost index first.
    pub fn contract(&self, b: &ExtElement) -> Result<ExtElement, ExtError> {
        if self.0.dim != b.dim {
            return Err(ExtError::AmbientMismatch(self.0.dim, b.dim));
        }
        if self.0.grade > b.grade {
            return Ok(ExtElement::zero(b.dim, 0));
        }
        let out_grade = b.grade - self.0.grade;
        let mut out = ExtElement::zero(b.dim, out_grade);
        for (kd, vd) in &self.0.coeffs {
            for (kb, vb) in &b.coeffs {
                if kd & !kb != 0 {
                    continue; // some contracted index is absent
                }
                let mut sign = 1i32;
                let mut rem = *kb;
                // iterate dual indices from highest to lowest
                for i in mask_to_tuple(*kd).into_iter().rev() {
                    let bit = 1u32 << (i - 1);
                    let pos_below = (rem & (bit - 1)).count_ones();
                    if pos_below % 2 == 1 {
                        sign = -sign;
                    }
                    rem ^= bit;
                }
                let c = vd * vb;
                let c = if sign > 0 { c } else { -c };
                let e = out.coeffs.entry(rem).or_insert_with(Rat::zero);
                *e += c;
                if e.is_zero() {
                    out.coeffs.remove(&rem);
                }
            }
        }
        Ok(out)
    }
}

/// Bitmasks of the grade-`g` basis of `Λ^g(V_n)` in lexicographic order of
/// the increasing index tuples. This ordering is the row/column convention
/// for every matrix in the crate.
pub fn basis_masks(dim: u32, grade: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut tuple: Vec<u32> = (1..=grade).collect();
    if grade == 0 {
        return vec![0];
    }
    if grade > dim {
        return out;
    }
    loop {
        out.push(tuple_to_mask(&tuple));
        // next lexicographic combination
        let mut i = grade as usize;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if tuple[i] < dim - (grade - 1 - i as u32) {
                tuple[i] += 1;
                for j in i + 1..grade as usize {
                    tuple[j] = tuple[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Lexicographic index tuples of the grade-`g` basis.
pub fn basis_tuples(dim: u32, grade: u32) -> Vec<Vec<u32>> {
    basis_masks(dim, grade)
        .into_iter()
        .map(mask_to_tuple)
        .collect()
}

/// Matrix of `Λ^grade(g)` in the lexicographic basis.
pub fn lambda_matrix(g: &Matrix, dim: u32, grade: u32) -> Matrix {
    let tuples = basis_tuples(dim, grade);
    let n = tuples.len();
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for t in &tuples {
        let image = ExtElement::basis(dim, t)
            .lambda_power_action(g)
            .expect("dimensions agree");
        cols.push(image.to_dense());
    }
    Matrix::from_fn(n, n, |r, c| cols[c][r].clone())
}

/// Position of a basis mask in the lexicographic enumeration.
pub fn basis_index(dim: u32, grade: u32, indices: &[u32]) -> usize {
    let mask = tuple_to_mask(indices);
    basis_masks(dim, grade)
        .iter()
        .position(|&m| m == mask)
        .expect("valid basis tuple")
}
