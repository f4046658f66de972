//! Exact rational scalars and dense matrices: rank, kernel bases,
//! determinants and linear solves, all over `Q` and all fraction-free.
//!
//! Scalars are arbitrary-precision rationals kept in lowest terms with a
//! positive denominator. Elimination clears denominators row by row and then
//! runs Bareiss-style fraction-free reduction on the integer matrix, so the
//! intermediate entries stay divisor-bounded instead of exploding into deep
//! fraction trees. Matrices are immutable values; every operation returns a
//! fresh result, which keeps concurrent trial loops free of shared state.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational scalar. `BigRational` already maintains the invariants we
/// need: lowest terms, positive denominator, canonical zero `0/1`.
pub type Rat = BigRational;

/// Arbitrary-precision integer, the substrate of fraction-free elimination.
pub type Int = BigInt;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn ratq(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Renders `x` as `"p"` or `"p/q"` in lowest terms; the inverse of [`parse_rat`].
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.parse().ok()?;
            let d: Int = d.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Immutable dense matrix over `Q`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { Rat::one() } else { Rat::zero() })
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        Matrix {
            rows: n,
            cols: m,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..r).all(|c| self.at(r, c) == self.at(c, r)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Rat) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        Matrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = Rat::zero();
            for k in 0..self.cols {
                let a = self.at(r, k);
                if !a.is_zero() {
                    acc += a * other.at(k, c);
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "vector length must equal cols");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += self.at(r, c) * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks `other` below `self`. Used for span-equality tests.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Appends `col` as an extra column.
    pub fn hstack_col(&self, col: &[Rat]) -> Matrix {
        assert_eq!(self.rows, col.len());
        Matrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                col[r].clone()
            }
        })
    }

    pub fn trace(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "trace needs a square matrix");
        (0..self.rows).map(|i| self.at(i, i).clone()).sum()
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivot_cols.len()
    }

    /// Indices of a maximal independent set of columns (the pivot columns).
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.echelon().pivot_cols
    }

    /// Basis of the column space, as the pivot columns of the matrix.
    pub fn column_space_basis(&self) -> Vec<Vec<Rat>> {
        self.pivot_columns()
            .into_iter()
            .map(|c| (0..self.rows).map(|r| self.at(r, c).clone()).collect())
            .collect()
    }

    pub fn corank(&self) -> usize {
        self.cols - self.rank()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Rat, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(Rat::one());
        }
        let ech = self.echelon();
        if ech.pivot_cols.len() < self.rows {
            return Ok(Rat::zero());
        }
        // Bareiss leaves det(M_int) in the last pivot entry.
        let last = ech.mat[(self.rows - 1) * self.cols + self.cols - 1].clone();
        let mut det = Rat::new(last, Int::one());
        if ech.swaps % 2 == 1 {
            det = -det;
        }
        Ok(det / &ech.row_scale)
    }

    /// Basis of the right kernel `{x : Mx = 0}`; empty iff `rank == cols`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let ech = self.echelon();
        let pivots = &ech.pivot_cols;
        let rank = pivots.len();
        let mut is_pivot = vec![false; self.cols];
        for &c in pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut x = vec![Rat::zero(); self.cols];
            x[fc] = Rat::one();
            // Back-substitution on the integer echelon form, bottom pivot up.
            for i in (0..rank).rev() {
                let pc = pivots[i];
                let mut acc = Rat::zero();
                for c in pc + 1..self.cols {
                    let m = &ech.mat[i * self.cols + c];
                    if !m.is_zero() && !x[c].is_zero() {
                        acc += Rat::from_integer(m.clone()) * &x[c];
                    }
                }
                let piv = &ech.mat[i * self.cols + pc];
                x[pc] = -acc / Rat::from_integer(piv.clone());
            }
            basis.push(x);
        }
        basis
    }

    /// Any exact solution of `Mx = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Result<Option<Vec<Rat>>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "rhs has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = self.hstack_col(b);
        let ech = aug.echelon();
        // A pivot in the last column means the system is inconsistent.
        if ech.pivot_cols.iter().any(|&c| c == self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rat::zero(); self.cols];
        for i in (0..ech.pivot_cols.len()).rev() {
            let pc = ech.pivot_cols[i];
            let width = self.cols + 1;
            let mut acc = Rat::from_integer(ech.mat[i * width + self.cols].clone());
            for c in pc + 1..self.cols {
                let m = &ech.mat[i * width + c];
                if !m.is_zero() && !x[c].is_zero() {
                    acc -= Rat::from_integer(m.clone()) * &x[c];
                }
            }
            x[pc] = acc / Rat::from_integer(ech.mat[i * width + pc].clone());
        }
        Ok(Some(x))
    }

    /// Column-space membership: does `v` lie in the span of the columns?
    pub fn contains_in_column_span(&self, v: &[Rat]) -> bool {
        let r = self.rank();
        self.hstack_col(v).rank() == r
    }

    /// Fraction-free row echelon form. Rows are first scaled to integers
    /// (`row_scale` collects the product of the scalings so determinants can
    /// be recovered), then reduced with the two-term Bareiss recurrence with
    /// pivots chosen as the first nonzero entry in column order.
    fn echelon(&self) -> Echelon {
        let mut mat: Vec<Int> = Vec::with_capacity(self.rows * self.cols);
        let mut row_scale = Rat::one();
        for r in 0..self.rows {
            let mut lcm = Int::one();
            for c in 0..self.cols {
                lcm = lcm.lcm(self.at(r, c).denom());
            }
            if !lcm.is_one() {
                row_scale *= Rat::from_integer(lcm.clone());
            }
            for c in 0..self.cols {
                let e = self.at(r, c);
                mat.push(e.numer() * (&lcm / e.denom()));
            }
        }

        let (rows, cols) = (self.rows, self.cols);
        let mut pivot_cols = Vec::new();
        let mut swaps = 0usize;
        let mut prev_pivot = Int::one();
        let mut pr = 0usize; // next pivot row
        for pc in 0..cols {
            let Some(hit) = (pr..rows).find(|&r| !mat[r * cols + pc].is_zero()) else {
                continue;
            };
            if hit != pr {
                for c in 0..cols {
                    mat.swap(hit * cols + c, pr * cols + c);
                }
                swaps += 1;
            }
            let pivot = mat[pr * cols + pc].clone();
            for r in pr + 1..rows {
                let head = mat[r * cols + pc].clone();
                for c in pc + 1..cols {
                    let val = &pivot * &mat[r * cols + c] - &head * &mat[pr * cols + c];
                    // exact by the Bareiss identity
                    debug_assert!((&val % &prev_pivot).is_zero());
                    mat[r * cols + c] = val / &prev_pivot;
                }
                mat[r * cols + pc] = Int::zero();
            }
            prev_pivot = pivot;
            pivot_cols.push(pc);
            pr += 1;
            if pr == rows {
                break;
            }
        }
        Echelon {
            mat,
            pivot_cols,
            swaps,
            row_scale,
        }
    }
}

struct Echelon {
    mat: Vec<Int>,
    pivot_cols: Vec<usize>,
    swaps: usize,
    row_scale: Rat,
}

/// Rank of the space spanned by a set of row vectors.
pub fn span_rank(vectors: &[Vec<Rat>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank()
}

/// Do two sets of vectors span the same subspace? Checked by stacking and
/// comparing ranks, which is exact.
pub fn same_span(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> bool {
    let ra = span_rank(a);
    let rb = span_rank(b);
    if ra != rb {
        return false;
    }
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    span_rank(&all) == ra
}
