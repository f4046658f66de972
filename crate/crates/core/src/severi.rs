//! The four cubic secant-variety cases on spaces of dimension 6, 9, 15
//! and 27: symmetric matrices, square matrices, alternating forms, and the
//! exceptional Jordan algebra. Each carries a cubic invariant `h` whose
//! polarization yields a symmetric pencil `φ(v) : V → V*` with
//! `det(φ) = c·h^(a+1)`; on secants of the rank-1 cone the pencil drops
//! rank by exactly `a+1`.

use num_traits::Zero;
use once_cell::sync::OnceCell;
use rand::Rng;
use thiserror::Error;

use crate::exactla::{rat, ratq, Matrix, Rat};
use crate::octjordan::{self, JordanElement};
use crate::rngutil;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeveriError {
    #[error("coordinate vector has length {got}, case needs {want}")]
    DimensionMismatch { want: usize, got: usize },
    #[error("secant sampler kept landing in a deeper stratum")]
    DegenerateSample,
    #[error(transparent)]
    Jordan(#[from] octjordan::JordanError),
}

/// One of the four cubic cases, indexed by `a ∈ {1, 2, 4, 8}`;
/// `dim V = 3a + 3` and the expected corank on the hypersurface is `a + 1`.
#[derive(Debug)]
pub struct SeveriCase {
    pub a: u32,
    trilinear: OnceCell<Trilinear>,
}

pub const SEVERI_AS: [u32; 4] = [1, 2, 4, 8];

impl SeveriCase {
    pub fn new(a: u32) -> Self {
        assert!(SEVERI_AS.contains(&a), "a must be one of 1, 2, 4, 8");
        SeveriCase {
            a,
            trilinear: OnceCell::new(),
        }
    }

    pub fn dim_v(&self) -> usize {
        (3 * self.a + 3) as usize
    }

    pub fn expected_corank(&self) -> usize {
        (self.a + 1) as usize
    }

    /// The cubic invariant: determinant of the symmetric matrix (`a = 1`),
    /// determinant (`a = 2`), Pfaffian (`a = 4`) or the Jordan cubic norm
    /// (`a = 8`).
    pub fn invariant(&self, v: &[Rat]) -> Result<Rat, SeveriError> {
        self.check_len(v)?;
        Ok(match self.a {
            1 => sym3_from_coords(v).det().unwrap(),
            2 => mat3_from_coords(v).det().unwrap(),
            4 => pfaffian6(&skew6_from_coords(v)),
            8 => octjordan::cubic_norm(&JordanElement::from_coords(v)),
            _ => unreachable!(),
        })
    }

    /// The symmetric pencil: matrix of the bilinear form `T(v, ·, ·)` where
    /// `T` is the symmetric trilinear polarization of the invariant,
    /// normalized by `T(v, v, v) = h(v)`.
    pub fn phi(&self, v: &[Rat]) -> Result<Matrix, SeveriError> {
        self.check_len(v)?;
        let tri = self.trilinear();
        let n = self.dim_v();
        Ok(Matrix::from_fn(n, n, |i, j| {
            let (i, j) = if i <= j { (i, j) } else { (j, i) };
            let mut acc = Rat::zero();
            for (k, c) in &tri.pair_rows[i * n + j] {
                if !v[*k].is_zero() {
                    acc += c * &v[*k];
                }
            }
            acc
        }))
    }

    /// A random point of the rank-1 cone in coordinates.
    pub fn sample_rank1(&self, rng: &mut impl Rng) -> Result<Vec<Rat>, SeveriError> {
        Ok(match self.a {
            1 => {
                let u = rngutil::small_rat_vec(rng, 3);
                sym3_coords_of_outer(&u)
            }
            2 => {
                let u = rngutil::small_rat_vec(rng, 3);
                let w = rngutil::small_rat_vec(rng, 3);
                (0..3)
                    .flat_map(|i| (0..3).map(move |j| (i, j)))
                    .map(|(i, j)| &u[i] * &w[j])
                    .collect()
            }
            4 => {
                let u = rngutil::small_rat_vec(rng, 6);
                let w = rngutil::small_rat_vec(rng, 6);
                let mut coords = Vec::with_capacity(15);
                for i in 0..6 {
                    for j in i + 1..6 {
                        coords.push(&u[i] * &w[j] - &u[j] * &w[i]);
                    }
                }
                coords
            }
            8 => {
                let seed = rng.gen::<u64>();
                octjordan::rank1_sample(seed)?.to_coords()
            }
            _ => unreachable!(),
        })
    }

    /// A point of the cubic hypersurface: the sum of two independent rank-1
    /// points, redrawn while the pencil sits in a deeper stratum. The
    /// invariant is asserted to vanish on every sample.
    pub fn sample_hypersurface(&self, seed: u64) -> Result<Vec<Rat>, SeveriError> {
        let mut rng = rngutil::rng_from_seed(seed);
        for _ in 0..64 {
            let x = self.sample_rank1(&mut rng)?;
            let y = self.sample_rank1(&mut rng)?;
            let v: Vec<Rat> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
            assert!(
                self.invariant(&v)?.is_zero(),
                "secant point escaped the cubic"
            );
            if self.phi(&v)?.corank() == self.expected_corank() {
                return Ok(v);
            }
        }
        Err(SeveriError::DegenerateSample)
    }

    /// A random point off the hypersurface.
    pub fn sample_generic(&self, seed: u64) -> Result<Vec<Rat>, SeveriError> {
        let mut rng = rngutil::rng_from_seed(seed);
        for _ in 0..64 {
            let v = rngutil::small_rat_vec(&mut rng, self.dim_v());
            if !self.invariant(&v)?.is_zero() {
                return Ok(v);
            }
        }
        Err(SeveriError::DegenerateSample)
    }

    /// A fixed representative with `h ≠ 0`.
    pub fn generic_rep(&self) -> Vec<Rat> {
        match self.a {
            1 => sym3_coords(&[(0, 0), (1, 1), (2, 2)]),
            2 => vec![
                rat(1),
                rat(0),
                rat(0),
                rat(0),
                rat(1),
                rat(0),
                rat(0),
                rat(0),
                rat(1),
            ],
            4 => {
                // e12 + e34 + e56
                let mut v = vec![Rat::zero(); 15];
                v[pair_index6(0, 1)] = rat(1);
                v[pair_index6(2, 3)] = rat(1);
                v[pair_index6(4, 5)] = rat(1);
                v
            }
            8 => JordanElement::identity().to_coords(),
            _ => unreachable!(),
        }
    }

    /// A fixed secant representative: the sum of two orthogonal rank-1
    /// elements, with corank exactly `a + 1`.
    pub fn secant_rep(&self) -> Vec<Rat> {
        match self.a {
            1 => sym3_coords(&[(0, 0), (1, 1)]),
            2 => {
                let mut v = vec![Rat::zero(); 9];
                v[0] = rat(1); // E11
                v[4] = rat(1); // E22
                v
            }
            4 => {
                let mut v = vec![Rat::zero(); 15];
                v[pair_index6(0, 1)] = rat(1);
                v[pair_index6(2, 3)] = rat(1);
                v
            }
            8 => JordanElement::diag(rat(1), rat(1), rat(0)).to_coords(),
            _ => unreachable!(),
        }
    }

    /// Corank survey: full rank at `trials` generic points, corank `a + 1`
    /// at `trials` secant points. Returns `(generic hits, secant hits)`.
    pub fn corank_suite(&self, trials: usize, seed: u64) -> Result<(usize, usize), SeveriError> {
        assert!(trials >= 1);
        let mut generic_hits = 0;
        let mut secant_hits = 0;
        for t in 0..trials {
            let sub = seed.wrapping_add(t as u64);
            let v = self.sample_generic(sub.wrapping_mul(2))?;
            if self.phi(&v)?.rank() == self.dim_v() {
                generic_hits += 1;
            }
            let w = self.sample_hypersurface(sub.wrapping_mul(2) + 1)?;
            if self.phi(&w)?.corank() == self.expected_corank() {
                secant_hits += 1;
            }
        }
        Ok((generic_hits, secant_hits))
    }

    fn check_len(&self, v: &[Rat]) -> Result<(), SeveriError> {
        if v.len() != self.dim_v() {
            return Err(SeveriError::DimensionMismatch {
                want: self.dim_v(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Sparse rows of the trilinear form: `pair_rows[i*n+j]` (for `i ≤ j`)
    /// lists the nonzero `T(E_i, E_j, E_k)`, extracted once per case by
    /// exact finite differencing of the invariant.
    fn trilinear(&self) -> &Trilinear {
        self.trilinear.get_or_init(|| {
            let n = self.dim_v();
            let h = |v: &[Rat]| self.invariant(v).expect("length is fixed");
            let eval_sum = |idxs: &[usize]| {
                let mut v = vec![Rat::zero(); n];
                for &i in idxs {
                    v[i] += rat(1);
                }
                h(&v)
            };
            let singles: Vec<Rat> = (0..n).map(|i| eval_sum(&[i])).collect();
            let mut pairs = vec![Rat::zero(); n * n];
            for i in 0..n {
                for j in i..n {
                    pairs[i * n + j] = eval_sum(&[i, j]);
                }
            }
            let pair = |i: usize, j: usize| {
                let (i, j) = if i <= j { (i, j) } else { (j, i) };
                pairs[i * n + j].clone()
            };
            let mut pair_rows = vec![Vec::new(); n * n];
            for i in 0..n {
                for j in i..n {
                    for k in 0..n {
                        // T(x,y,z) = (h(x+y+z) - h(x+y) - h(x+z) - h(y+z)
                        //             + h(x) + h(y) + h(z)) / 6
                        let t = (eval_sum(&[i, j, k]) - pair(i, j) - pair(i, k) - pair(j, k)
                            + &singles[i]
                            + &singles[j]
                            + &singles[k])
                            * ratq(1, 6);
                        if !t.is_zero() {
                            pair_rows[i * n + j].push((k, t));
                        }
                    }
                }
            }
            Trilinear { pair_rows }
        })
    }
}

#[derive(Debug)]
struct Trilinear {
    pair_rows: Vec<Vec<(usize, Rat)>>,
}

// Coordinates of Sym²C³: (x11, x12, x13, x22, x23, x33), lexicographic.
fn sym3_from_coords(v: &[Rat]) -> Matrix {
    Matrix::from_rows(vec![
        vec![v[0].clone(), v[1].clone(), v[2].clone()],
        vec![v[1].clone(), v[3].clone(), v[4].clone()],
        vec![v[2].clone(), v[4].clone(), v[5].clone()],
    ])
}

fn sym3_index(i: usize, j: usize) -> usize {
    match (i.min(j), i.max(j)) {
        (0, 0) => 0,
        (0, 1) => 1,
        (0, 2) => 2,
        (1, 1) => 3,
        (1, 2) => 4,
        (2, 2) => 5,
        _ => unreachable!(),
    }
}

fn sym3_coords(ones: &[(usize, usize)]) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); 6];
    for &(i, j) in ones {
        v[sym3_index(i, j)] = rat(1);
    }
    v
}

/// Coordinates of `u·uᵀ`.
fn sym3_coords_of_outer(u: &[Rat]) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); 6];
    for i in 0..3 {
        for j in i..3 {
            v[sym3_index(i, j)] = &u[i] * &u[j];
        }
    }
    v
}

// Coordinates of C³⊗C³: row-major m11..m33.
fn mat3_from_coords(v: &[Rat]) -> Matrix {
    Matrix::from_fn(3, 3, |r, c| v[3 * r + c].clone())
}

/// Lexicographic position of the pair `(i, j)`, `0 ≤ i < j < 6`.
fn pair_index6(i: usize, j: usize) -> usize {
    let mut idx = 0;
    for p in 0..6 {
        for q in p + 1..6 {
            if (p, q) == (i, j) {
                return idx;
            }
            idx += 1;
        }
    }
    unreachable!()
}

fn skew6_from_coords(v: &[Rat]) -> Matrix {
    let mut entries: Vec<Rat> = vec![Rat::zero(); 36];
    let mut idx = 0;
    for i in 0..6 {
        for j in i + 1..6 {
            entries[i * 6 + j] = v[idx].clone();
            entries[j * 6 + i] = -v[idx].clone();
            idx += 1;
        }
    }
    Matrix::new(6, 6, entries)
}

/// Pfaffian by recursive expansion along the first row; for the sizes here
/// (`n ≤ 6`) this is exact and fast. `Pf(e12 + e34 + e56) = 1`.
fn pfaffian6(m: &Matrix) -> Rat {
    fn pf(rows: &[usize], m: &Matrix) -> Rat {
        if rows.is_empty() {
            return rat(1);
        }
        let first = rows[0];
        let mut acc = Rat::zero();
        for (pos, &j) in rows.iter().enumerate().skip(1) {
            let a = m.at(first, j);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = rows
                .iter()
                .copied()
                .filter(|&r| r != first && r != j)
                .collect();
            let term = a * pf(&rest, m);
            if pos % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
    pf(&(0..6).collect::<Vec<_>>(), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::octjordan::JORDAN_DIM;

    #[test]
    fn invariant_values_at_simple_points() {
        let a1 = SeveriCase::new(1);
        // diag(1,2,3) has determinant 6
        let mut v = sym3_coords(&[]);
        v[sym3_index(0, 0)] = rat(1);
        v[sym3_index(1, 1)] = rat(2);
        v[sym3_index(2, 2)] = rat(3);
        assert_eq!(a1.invariant(&v).unwrap(), rat(6));

        let a2 = SeveriCase::new(2);
        assert_eq!(a2.invariant(&a2.generic_rep()).unwrap(), rat(1));

        let a4 = SeveriCase::new(4);
        assert_eq!(a4.invariant(&a4.generic_rep()).unwrap(), rat(1));
        assert_eq!(a4.invariant(&a4.secant_rep()).unwrap(), rat(0));

        let a8 = SeveriCase::new(8);
        assert_eq!(a8.invariant(&a8.generic_rep()).unwrap(), rat(1));
    }

    #[test]
    fn invariant_rejects_wrong_length() {
        let case = SeveriCase::new(1);
        assert!(matches!(
            case.invariant(&[rat(1)]),
            Err(SeveriError::DimensionMismatch { want: 6, got: 1 })
        ));
    }

    #[test]
    fn phi_is_symmetric_and_recovers_invariant() {
        for a in SEVERI_AS {
            let case = SeveriCase::new(a);
            let mut rng = rngutil::rng_from_seed(11 + a as u64);
            for _ in 0..3 {
                let v = rngutil::small_rat_vec(&mut rng, case.dim_v());
                let phi = case.phi(&v).unwrap();
                assert!(phi.is_symmetric(), "a={a}");
                // T(v,v,v) = h(v): contract phi(v) with v twice
                let pv = phi.mul_vec(&v);
                let hv: Rat = pv.iter().zip(&v).map(|(p, q)| p * q).sum();
                assert_eq!(hv, case.invariant(&v).unwrap(), "a={a}");
            }
        }
    }

    #[test]
    fn phi_full_rank_at_generic_reps() {
        for a in SEVERI_AS {
            let case = SeveriCase::new(a);
            let phi = case.phi(&case.generic_rep()).unwrap();
            assert_eq!(phi.rank(), case.dim_v(), "a={a}");
        }
    }

    #[test]
    fn corank_at_secant_reps() {
        for a in SEVERI_AS {
            let case = SeveriCase::new(a);
            let phi = case.phi(&case.secant_rep()).unwrap();
            assert_eq!(phi.corank(), case.expected_corank(), "a={a}");
        }
    }

    #[test]
    fn rank1_samples_kill_the_invariant() {
        for a in SEVERI_AS {
            let case = SeveriCase::new(a);
            let mut rng = rngutil::rng_from_seed(23 + a as u64);
            for _ in 0..5 {
                let v = case.sample_rank1(&mut rng).unwrap();
                assert_eq!(case.invariant(&v).unwrap(), rat(0), "a={a}");
            }
        }
    }

    #[test]
    fn secant_samples_have_expected_corank() {
        for a in SEVERI_AS {
            let case = SeveriCase::new(a);
            for s in 0..3u64 {
                let v = case.sample_hypersurface(100 + s).unwrap();
                assert_eq!(case.invariant(&v).unwrap(), rat(0));
                assert_eq!(case.phi(&v).unwrap().corank(), case.expected_corank());
            }
        }
    }

    #[test]
    fn det_of_phi_is_calibrated_power_of_invariant() {
        for a in SEVERI_AS {
            let case = SeveriCase::new(a);
            let rep = case.generic_rep();
            let h0 = case.invariant(&rep).unwrap();
            let c =
                case.phi(&rep).unwrap().det().unwrap() / power(&h0, case.expected_corank() as u32);
            let mut rng = rngutil::rng_from_seed(37 + a as u64);
            let trials = if a == 8 { 3 } else { 5 };
            for _ in 0..trials {
                let v = rngutil::small_rat_vec(&mut rng, case.dim_v());
                let lhs = case.phi(&v).unwrap().det().unwrap();
                let rhs = &c * power(&case.invariant(&v).unwrap(), case.expected_corank() as u32);
                assert_eq!(lhs, rhs, "a={a}");
            }
        }
    }

    #[test]
    fn phi_of_a8_matches_cross_product_pairing() {
        // T(sharp(x), ·) = 3·N_tri(x, x, ·), so polarizing in x gives
        // T(v × u, ·) = 6·N_tri(v, u, ·) = 6·(φ(v)·u under the pairing).
        let case = SeveriCase::new(8);
        let mut rng = rngutil::rng_from_seed(41);
        let v = JordanElement::random(&mut rng);
        let u = JordanElement::random(&mut rng);
        let phi_v_u = case.phi(&v.to_coords()).unwrap().mul_vec(&u.to_coords());
        let cross = octjordan::cross(&v, &u);
        for (k, entry) in phi_v_u.iter().enumerate() {
            let mut basis = vec![Rat::zero(); JORDAN_DIM];
            basis[k] = rat(1);
            let e = JordanElement::from_coords(&basis);
            assert_eq!(
                entry * rat(6),
                octjordan::trace_pairing(&cross, &e),
                "coordinate {k}"
            );
        }
    }

    #[test]
    fn kernel_vectors_of_secant_rep_map_to_zero() {
        let case = SeveriCase::new(1);
        let phi = case.phi(&case.secant_rep()).unwrap();
        let k = phi.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(phi.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    fn power(x: &Rat, e: u32) -> Rat {
        let mut acc = rat(1);
        for _ in 0..e {
            acc *= x;
        }
        acc
    }
}
